from fractions import Fraction
from pathlib import Path

import pytest

from gasylv import (
    FLOAT64,
    RATIONAL,
    METHODS,
    Multivector,
    Signature,
    SignatureMismatchError,
    SingularProblemError,
    SylvesterProblem,
    adjugate,
    determinant,
    load_coeff_lines,
    parse_multivector,
    build_D_general,
    build_F_general,
    reduce_two_term,
    solve,
    solve_closed,
    solve_general,
    solve_general_odd,
    verify_residual,
)
from gasylv.sylvester import _CLOSED_FOR_DIM, CLOSED_N4_V1, CLOSED_N4_V2
from conftest import all_signatures, random_mv
from oracles import brute_force_sylvester

FIXTURES = Path(__file__).parent / "fixtures"


def planted_problem(sig, rng, lo=-4, hi=4):
    """A problem with a known planted solution (may not be the unique one)."""
    a = random_mv(sig, rng, lo, hi)
    b = random_mv(sig, rng, lo, hi)
    x = random_mv(sig, rng, lo, hi)
    return SylvesterProblem(a, b, a * x - x * b), x


def solvable_problem(sig, rng, lo=-4, hi=4):
    """Keep sampling until the default solver accepts the problem."""
    while True:
        prob, _ = planted_problem(sig, rng, lo, hi)
        try:
            solve(prob)
        except SingularProblemError:
            continue
        return prob


class TestSolveBasics:
    def test_trivial_solution(self, rng):
        # C = A - B forces X = e whenever the problem is non-singular.
        for sig in all_signatures(5):
            a = random_mv(sig, rng, -3, 3)
            b = random_mv(sig, rng, -3, 3)
            e = Multivector.scalar(sig, 1)
            try:
                sol = solve(SylvesterProblem(a, b, a - b))
            except SingularProblemError:
                continue
            assert sol.x == e
            assert sol.residual == 0

    def test_default_method_per_dimension(self, rng):
        expected = {1: "closed_n1", 2: "closed_n2", 3: "closed_n3",
                    4: "closed_n4_v2", 5: "closed_n5",
                    6: "general", 7: "general_odd"}
        for n, method in expected.items():
            sig = Signature(n, 0)
            prob = solvable_problem(sig, rng, -2, 2)
            assert solve(prob).method == method

    def test_solution_satisfies_equation(self, rng):
        for sig in all_signatures(5):
            for _ in range(5):
                prob, _ = planted_problem(sig, rng)
                try:
                    sol = solve(prob)
                except SingularProblemError:
                    continue
                assert prob.a * sol.x - sol.x * prob.b == prob.c

    def test_singular_central_problem(self):
        # A = B = 2e makes AX - XB identically zero.
        sig = Signature(2, 1)
        two = Multivector.scalar(sig, 2)
        prob = SylvesterProblem(two, two, Multivector.scalar(sig, 1))
        with pytest.raises(SingularProblemError) as err:
            solve(prob)
        assert err.value.q == 0

    def test_unknown_method(self, rng):
        prob, _ = planted_problem(Signature(2, 0), rng)
        with pytest.raises(ValueError):
            solve(prob, method="closed_n7")

    def test_variant_dimension_mismatch(self, rng):
        prob, _ = planted_problem(Signature(2, 0), rng)
        with pytest.raises(ValueError):
            solve_closed(prob, "closed_n3")
        with pytest.raises(ValueError):
            solve(prob, method="closed_n5")

    def test_odd_solver_rejects_even_n(self, rng):
        prob, _ = planted_problem(Signature(2, 2), rng)
        with pytest.raises(ValueError):
            solve_general_odd(prob)

    def test_operand_compat_enforced(self):
        a = Multivector.scalar(Signature(1, 1), 1)
        b = Multivector.scalar(Signature(2, 0), 1)
        with pytest.raises(SignatureMismatchError):
            SylvesterProblem(a, b, a)

    def test_scaling_covariance(self, rng):
        sig = Signature(1, 2)
        prob = solvable_problem(sig, rng)
        lam = Fraction(7, 3)
        scaled = SylvesterProblem(prob.a, prob.b, prob.c.scale(lam))
        assert solve(scaled).x == solve(prob).x.scale(lam)


class TestMethodAgreement:
    def test_all_applicable_methods_agree(self, rng):
        for sig in all_signatures(6):
            n = sig.dim
            methods = [m for m in ("general",) ]
            if n % 2:
                methods.append("general_odd")
            if n in _CLOSED_FOR_DIM:
                methods.append(_CLOSED_FOR_DIM[n])
            if n == 4:
                methods.append(CLOSED_N4_V1)
            for _ in range(3):
                prob = solvable_problem(sig, rng, -3, 3)
                xs = {}
                for m in methods:
                    # Each method assembles its own D, which can be
                    # singular even when another method's is not.
                    try:
                        xs[m] = solve(prob, method=m).x
                    except SingularProblemError:
                        continue
                assert xs, sig
                first = next(iter(xs.values()))
                assert all(x == first for x in xs.values()), sig

    def test_brute_force_agreement(self, rng):
        for sig in all_signatures(3):
            for _ in range(5):
                prob = solvable_problem(sig, rng)
                oracle = brute_force_sylvester(prob)
                assert oracle is not None
                assert solve(prob).x == oracle


class TestGeneralAssembly:
    def test_d_with_zero_b(self, rng):
        # phi_0(A) = A**N.
        sig = Signature(2, 1)
        a = random_mv(sig, rng, -3, 3)
        zero = Multivector.zero(sig)
        assert build_D_general(a, zero) == a ** sig.charpoly_degree

    def test_f_with_zero_b(self, rng):
        sig = Signature(2, 1)
        a = random_mv(sig, rng, -3, 3)
        c = random_mv(sig, rng, -3, 3)
        zero = Multivector.zero(sig)
        assert build_F_general(a, zero, c) == a ** (sig.charpoly_degree - 1) * c

    def test_zero_a_reduces_to_adjugate(self, rng):
        # With A = 0: D = Det(B) e and F = -C Adj(B).
        for sig in [Signature(1, 1), Signature(2, 1), Signature(1, 3)]:
            b = random_mv(sig, rng, -3, 3)
            c = random_mv(sig, rng, -3, 3)
            zero = Multivector.zero(sig)
            assert build_D_general(zero, b) == Multivector.scalar(sig, determinant(b))
            assert build_F_general(zero, b, c) == -(c * adjugate(b))

    def test_d_annihilates_b_side(self, rng):
        # D X - X' pattern: phi_B(B) = 0 by Cayley-Hamilton.
        sig = Signature(1, 2)
        b = random_mv(sig, rng, -3, 3)
        assert build_D_general(b, b).is_zero()


class TestRegressionFixtures:
    @pytest.mark.parametrize("name", ["example1", "example2"])
    def test_frozen_solutions(self, name):
        meta = dict(
            line.split()
            for line in (FIXTURES / name / "meta.txt").read_text().splitlines()
            if line.strip()
        )
        p, q_dim = (int(v) for v in meta["signature"].split(","))
        method = meta["method"]
        sig = Signature(p, q_dim)

        def load(part):
            return load_coeff_lines(
                (FIXTURES / name / f"{part}.txt").read_text(), sig, RATIONAL
            )

        prob = SylvesterProblem(load("a"), load("b"), load("c"))
        sol = solve(prob, method=method)
        assert sol.method == method
        assert sol.q == int((FIXTURES / name / "q.txt").read_text())
        assert sol.d == load("d")
        assert sol.f == load("f")
        assert sol.x.scale(sol.q) == load("x_num")
        assert sol.residual == 0
        # The general recursion reaches the same X independently.
        assert solve(prob, method="general").x == sol.x


class TestResidual:
    def test_zero_for_exact_solution(self, rng):
        sig = Signature(2, 1)
        prob = solvable_problem(sig, rng)
        assert verify_residual(prob, solve(prob).x) == 0

    def test_detects_perturbation(self, rng):
        sig = Signature(2, 0)
        a = parse_multivector("2 + e1", sig, RATIONAL)
        b = parse_multivector("1 + e1", sig, RATIONAL)
        prob = SylvesterProblem(a, b, a - b)
        x = solve(prob).x
        bumped = x + Multivector.scalar(sig, 1)
        # A e - e B = A - B = e, so the residual is exactly 1.
        assert verify_residual(prob, bumped) == 1


class TestFloatMode:
    def _to_float(self, u):
        return Multivector(u.sig, [float(c) for c in u.coeffs], FLOAT64)

    def test_matches_exact_solution(self, rng):
        sig = Signature(1, 3)
        prob = solvable_problem(sig, rng, -3, 3)
        exact = solve(prob).x
        fprob = SylvesterProblem(
            self._to_float(prob.a), self._to_float(prob.b), self._to_float(prob.c)
        )
        fsol = solve(fprob)
        assert not fsol.low_confidence
        for got, want in zip(fsol.x.coeffs, exact.coeffs):
            assert got == pytest.approx(float(want), rel=1e-9, abs=1e-9)

    def test_float_singular_detection(self):
        sig = Signature(1, 2)
        two = Multivector.scalar(sig, 2.0, FLOAT64)
        prob = SylvesterProblem(two, two, Multivector.scalar(sig, 1.0, FLOAT64))
        with pytest.raises(SingularProblemError):
            solve(prob)


class TestReduceTwoTerm:
    def test_scalar_example(self):
        # 2 X + X (-1)... K=2e, L=e, M=e, Nq=-e, P=3e gives X = 3e.
        sig = Signature(0, 2)
        e = Multivector.scalar(sig, 1)
        prob = reduce_two_term(e.scale(2), e, e, -e, e.scale(3))
        assert solve(prob).x == e.scale(3)

    def test_quaternion_substitution(self, rng):
        # Cl(0,2) is the quaternions; verify K X L + M X Nq = P directly.
        sig = Signature(0, 2)
        for _ in range(10):
            k = random_mv(sig, rng, -4, 4)
            l = random_mv(sig, rng, 1, 4)
            m = random_mv(sig, rng, 1, 4)
            nq = random_mv(sig, rng, -4, 4)
            p = random_mv(sig, rng, -4, 4)
            try:
                prob = reduce_two_term(k, l, m, nq, p)
                x = solve(prob).x
            except SingularProblemError:
                continue
            assert k * x * l + m * x * nq == p

    def test_higher_dimension(self, rng):
        sig = Signature(1, 3)
        for _ in range(3):
            k = random_mv(sig, rng, -3, 3)
            l = random_mv(sig, rng, 1, 3)
            m = random_mv(sig, rng, 1, 3)
            nq = random_mv(sig, rng, -3, 3)
            p = random_mv(sig, rng, -3, 3)
            try:
                prob = reduce_two_term(k, l, m, nq, p)
                x = solve(prob).x
            except SingularProblemError:
                continue
            assert k * x * l + m * x * nq == p


def test_method_constants_exposed():
    assert set(METHODS) == {
        "closed_n1", "closed_n2", "closed_n3", "closed_n4_v1",
        "closed_n4_v2", "closed_n5", "general", "general_odd",
    }
