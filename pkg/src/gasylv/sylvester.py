"""Basis-free solvers for the Sylvester equation AX - XB = C in Cl(p,q).

Closed forms exist for n = 1..5; arbitrary n is handled by assembling
D = phi_B(A) (the characteristic polynomial of B evaluated at A) and a
matching right-hand combination F, so that D X = F, then inverting D by
its own characteristic-polynomial recursion.  For odd n a half-length
variant builds D and F from the N/2 generalized central coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import RATIONAL, Multivector, conjugate, sharp
from .charpoly import (
    DEFAULT_ZERO_TOL,
    _as_scalar,
    char_poly,
    generalized_coeffs,
    inverse,
    is_zero_scalar,
)
from .errors import ResidualCheckFailedError, SingularProblemError

DEFAULT_RESIDUAL_TOL = 1e-8

CLOSED_N1 = "closed_n1"
CLOSED_N2 = "closed_n2"
CLOSED_N3 = "closed_n3"
CLOSED_N4_V1 = "closed_n4_v1"
CLOSED_N4_V2 = "closed_n4_v2"
CLOSED_N5 = "closed_n5"
GENERAL = "general"
GENERAL_ODD = "general_odd"

METHODS = (
    CLOSED_N1,
    CLOSED_N2,
    CLOSED_N3,
    CLOSED_N4_V1,
    CLOSED_N4_V2,
    CLOSED_N5,
    GENERAL,
    GENERAL_ODD,
)

_CLOSED_FOR_DIM = {
    1: CLOSED_N1,
    2: CLOSED_N2,
    3: CLOSED_N3,
    4: CLOSED_N4_V2,
    5: CLOSED_N5,
}


@dataclass(frozen=True)
class SylvesterProblem:
    a: Multivector
    b: Multivector
    c: Multivector

    def __post_init__(self):
        self.a._check_compat(self.b)
        self.a._check_compat(self.c)

    @property
    def sig(self):
        return self.a.sig

    @property
    def ring(self):
        return self.a.ring


@dataclass(frozen=True)
class SylvesterSolution:
    x: Multivector
    q: object
    d: Multivector
    f: Multivector
    method: str
    residual: object
    low_confidence: bool = False


def verify_residual(prob, x):
    """Max-norm of A X - X B - C; exactly zero for exact solutions."""
    return (prob.a * x - x * prob.b - prob.c).max_abs_coeff()


def _powers(a, top):
    """[e, A, A**2, ..., A**top] with one product per entry."""
    pw = [Multivector.scalar(a.sig, 1, a.ring)]
    for _ in range(top):
        pw.append(pw[-1] * a)
    return pw


def _finish(prob, x, q, d, f, method, res_tol):
    residual = verify_residual(prob, x)
    if prob.ring == RATIONAL:
        if residual != 0:
            raise ResidualCheckFailedError(
                f"exact residual {residual} for method {method}"
            )
        return SylvesterSolution(x, q, d, f, method, residual)
    norm_x = x.max_abs_coeff()
    bound = res_tol * (
        1.0
        + prob.a.max_abs_coeff() * norm_x
        + norm_x * prob.b.max_abs_coeff()
    )
    return SylvesterSolution(
        x, q, d, f, method, residual, low_confidence=residual > bound
    )


def build_D_general(a, b):
    """D = A**N - b_(1) A**(N-1) - ... - b_(N) with the b_(k) taken from
    the characteristic polynomial of b."""
    data = char_poly(b)
    big_n = data.degree
    pw = _powers(a, big_n)
    return _assemble_d(pw, data.coeffs, a)


def _assemble_d(pw, coeffs, a):
    big_n = len(coeffs)
    d = pw[big_n]
    for j, bj in enumerate(coeffs, start=1):
        if isinstance(bj, Multivector):
            d = d - pw[big_n - j] * bj
        else:
            d = d - pw[big_n - j].scale(bj)
    return d


def build_F_general(a, b, c):
    """F = sum_j A**(N-j) C (B_(j-1) - b_(j-1)); the j = 1 term is
    A**(N-1) C."""
    data = char_poly(b)
    pw = _powers(a, data.degree)
    return _assemble_f(pw, data.iterates, data.coeffs, c)


def _assemble_f(pw, iterates, coeffs, c):
    big_n = len(coeffs)
    sig = c.sig
    f = pw[big_n - 1] * c
    for j in range(2, big_n + 1):
        prev_it = iterates[j - 2]
        prev_co = coeffs[j - 2]
        if isinstance(prev_co, Multivector):
            factor = prev_it - prev_co
        else:
            factor = prev_it - Multivector.scalar(sig, prev_co, c.ring)
        f = f + pw[big_n - j] * c * factor
    return f


def _invert_d(prob, d, f, method, tol, res_tol):
    data = char_poly(d, tol)
    q = data.coeffs[-1]
    if is_zero_scalar(q, d, tol):
        raise SingularProblemError(q, d)
    adj_like = data.iterates[-2] - Multivector.scalar(
        d.sig, data.coeffs[-2], d.ring
    )
    x = (adj_like * f) / q
    return _finish(prob, x, q, d, f, method, res_tol)


def solve_general(prob, tol=DEFAULT_ZERO_TOL, res_tol=DEFAULT_RESIDUAL_TOL):
    """Recursive solver valid for any n."""
    data = char_poly(prob.b, tol)
    pw = _powers(prob.a, data.degree)
    d = _assemble_d(pw, data.coeffs, prob.a)
    f = _assemble_f(pw, data.iterates, data.coeffs, prob.c)
    return _invert_d(prob, d, f, GENERAL, tol, res_tol)


def solve_general_odd(prob, tol=DEFAULT_ZERO_TOL, res_tol=DEFAULT_RESIDUAL_TOL):
    """Half-length variant for odd n: D and F come from the N/2
    generalized central coefficients of B."""
    if prob.sig.dim % 2 == 0:
        raise ValueError("the odd-n solver requires odd n")
    data = generalized_coeffs(prob.b)
    pw = _powers(prob.a, len(data.coeffs))
    d = _assemble_d(pw, data.coeffs, prob.a)
    f = _assemble_f(pw, data.iterates, data.coeffs, prob.c)
    return _invert_d(prob, d, f, GENERAL_ODD, tol, res_tol)


def _quartic_d_f(a, b, c, use_sharp):
    """Shared degree-4 assembly of D and F for n = 4 and n = 5.

    use_sharp selects the tilde/sharp coefficient list; otherwise the
    hat-tilde/natural list is used.
    """
    if use_sharp:
        t1 = b.tilde()
        t2 = conjugate(b.hat(), "triangle")
        t3 = conjugate(b.hat().tilde(), "triangle")
        top = sharp(b)
    else:
        t1 = b.tilde().hat()
        t2 = conjugate(b.hat(), "triangle")
        t3 = conjugate(b.tilde(), "triangle")
        top = conjugate(b.hat() * b.tilde(), "triangle")
    pw = _powers(a, 4)
    comb1 = b + t1 + t2 + t3
    comb2 = b * t1 + b * t2 + b * t3 + t1 * t2 + t1 * t3 + top
    comb3 = b * t1 * t2 + b * t1 * t3 + b * top + t1 * top
    comb4 = b * t1 * top
    d = pw[4] - pw[3] * comb1 + pw[2] * comb2 - pw[1] * comb3 + comb4
    f = (
        pw[3] * c
        - pw[2] * c * (t1 + t2 + t3)
        + pw[1] * c * (t1 * t2 + t1 * t3 + top)
        - c * t1 * top
    )
    return d, f


def solve_closed(prob, variant, tol=DEFAULT_ZERO_TOL, res_tol=DEFAULT_RESIDUAL_TOL):
    """Dispatch the per-dimension closed-form solutions."""
    n = prob.sig.dim
    a, b, c = prob.a, prob.b, prob.c
    sig = prob.sig

    if variant == CLOSED_N1:
        if n != 1:
            raise ValueError(f"{variant} requires n = 1, got n = {n}")
        d = a - b
        adj = d.hat()
        q = _as_scalar(d * adj, d, tol)
        rhs = c
    elif variant in (CLOSED_N2, CLOSED_N3):
        if n != (2 if variant == CLOSED_N2 else 3):
            raise ValueError(f"{variant} does not match n = {n}")
        bth = b.tilde().hat()
        d = a * a - (b + bth) * a + b * bth
        dth = d.tilde().hat()
        if variant == CLOSED_N2:
            adj = dth
        else:
            adj = d.hat() * d.tilde() * dth
        q = _as_scalar(d * adj, d, tol)
        rhs = a * c - c * bth
    elif variant in (CLOSED_N4_V1, CLOSED_N4_V2, CLOSED_N5):
        if variant == CLOSED_N5:
            if n != 5:
                raise ValueError(f"{variant} requires n = 5, got n = {n}")
        elif n != 4:
            raise ValueError(f"{variant} requires n = 4, got n = {n}")
        use_sharp = variant != CLOSED_N4_V1
        d, rhs = _quartic_d_f(a, b, c, use_sharp)
        if variant == CLOSED_N4_V1:
            adj = d.tilde().hat() * conjugate(d.hat() * d.tilde(), "triangle")
        elif variant == CLOSED_N4_V2:
            adj = d.tilde() * sharp(d)
        else:
            core = d * d.tilde() * sharp(d)
            adj = d.tilde() * sharp(d) * core.triangle()
        q = _as_scalar(d * adj, d, tol)
    else:
        raise ValueError(f"unknown closed-form variant {variant!r}")

    if is_zero_scalar(q, d, tol):
        raise SingularProblemError(q, d)
    x = (adj * rhs) / q
    return _finish(prob, x, q, d, rhs, variant, res_tol)


def solve(prob, method=None, tol=DEFAULT_ZERO_TOL, res_tol=DEFAULT_RESIDUAL_TOL):
    """Solve AX - XB = C, picking the default method for the dimension:
    closed forms for n <= 5 (n = 4 defaults to the tilde/sharp variant),
    the odd-n recursion for odd n >= 7, the general recursion otherwise.
    """
    n = prob.sig.dim
    if method is None:
        method = _CLOSED_FOR_DIM.get(n)
        if method is None:
            method = GENERAL_ODD if n % 2 else GENERAL
    if method == GENERAL:
        return solve_general(prob, tol, res_tol)
    if method == GENERAL_ODD:
        return solve_general_odd(prob, tol, res_tol)
    if method in _CLOSED_FOR_DIM.values() or method in (CLOSED_N4_V1,):
        return solve_closed(prob, method, tol, res_tol)
    raise ValueError(f"unknown method {method!r}")


def reduce_two_term(k, l, m, nq, p, tol=DEFAULT_ZERO_TOL):
    """Reduce K X L + M X Nq = P to a Sylvester problem:
    A = M**-1 K, B = -Nq L**-1, C = M**-1 P L**-1.

    Requires M and L invertible; any solution X of the reduced problem
    also solves the two-term equation.
    """
    m_inv = inverse(m, tol)
    l_inv = inverse(l, tol)
    return SylvesterProblem(m_inv * k, -(nq * l_inv), m_inv * p * l_inv)
