"""Bott-Chern forms of the metric relative Euler sequence at a point.

Everything here is evaluated at the center ``(x0, [a0*])`` of a normal frame.
The reference route is the transgression integral of the deformed
determinant (:func:`phi`, :func:`tilde_c_oracle`); the closed forms built
from harmonic numbers, partitions, ``c'_d`` and the cycle forms
``Omega_{b,1}`` are checked against it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Dict, List, Sequence

from .combinatorics import (
    binomial,
    enumerate_compositions,
    enumerate_partitions,
    harmonic,
)
from .curvature import (
    CurvatureData,
    CurvatureMatrix,
    c_prime,
    chern_dual,
    det_d,
    matrix_power,
    theta_power_point,
)
from .grassmann import GrassmannElement, UPoly, u_transgress
from .report import CheckResult, compare

__all__ = [
    "fiber_part",
    "fiber_pair_matrix",
    "phi",
    "tilde_c_oracle",
    "omega_pQ",
    "omega_ps",
    "omega_b1",
    "omega_ps_partition",
    "signed_cycle_products",
    "bott_chern_form",
    "phi_by_compositions",
    "phi_by_partitions",
    "GSeries",
    "generating_core_check",
    "full_degree_lhs",
    "full_degree_rhs",
    "full_degree_check",
    "alpha_center",
    "ddbar_theta1_center",
    "high_degree_parts",
    "first_forms",
    "curve_formula",
    "surface_formula",
    "special_cases",
    "special_cases_check",
]


def _matrix(C) -> CurvatureMatrix:
    return C.matrix if isinstance(C, CurvatureData) else C


def fiber_part(a: GrassmannElement, f: int) -> GrassmannElement:
    """Terms with exactly ``2f`` fiber generators (any base degree)."""
    fm = a.universe.fiber_mask
    return GrassmannElement(a.universe, {m: c for m, c in a.terms.items() if (m & fm).bit_count() == 2 * f})


def fiber_pair_matrix(C) -> List[List[GrassmannElement]]:
    """The block ``(zeta_j zetab_k)_{j,k >= 2}``."""
    C = _matrix(C)
    u = C.universe
    return [[u.fiber_pair(j, k) for k in range(2, C.r + 1)] for j in range(2, C.r + 1)]


# -- the transgression oracle -------------------------------------------------


def phi(d: int, C) -> UPoly:
    """``det_d`` of ``c_jk + (1-u) zeta_j zetab_k`` over ``2 <= j, k <= r``."""
    C = _matrix(C)
    u = C.universe
    if d < 0:
        raise ValueError(f"phi needs d >= 0, got {d}")
    if d == 0 or C.r == 1:
        return UPoly.constant(u.one() if d == 0 else u.zero())
    Z = fiber_pair_matrix(C)
    M = [
        [UPoly(u, [C.lower_block[a][b] + Z[a][b], -Z[a][b]]) for b in range(C.r - 1)]
        for a in range(C.r - 1)
    ]
    return det_d(M, d)


def tilde_c_oracle(d: int, C) -> GrassmannElement:
    """The Bott-Chern form of degree ``d+1`` by direct transgression."""
    return u_transgress(phi(d, C))


# -- cycle forms ----------------------------------------------------------------


def _trace_of_product(mats) -> GrassmannElement:
    size = len(mats[0])
    u = mats[0][0][0].universe
    acc = mats[0]
    for M in mats[1:]:
        acc = [
            [sum((acc[i][t] * M[t][j] for t in range(size) if acc[i][t] and M[t][j]), u.zero()) for j in range(size)]
            for i in range(size)
        ]
    return sum((acc[i][i] for i in range(size)), u.zero())


def omega_pQ(p: int, Q, C) -> GrassmannElement:
    """Cyclic sum over ``2 <= i_1..i_p <= r``; position ``a`` carries
    ``zeta_{i_a} zetab_{i_{a+1}}`` when ``a in Q`` and ``c_{i_a i_{a+1}}``
    otherwise (indices mod ``p``)."""
    C = _matrix(C)
    Q = set(Q)
    if p < 1 or not Q <= set(range(1, p + 1)):
        raise ValueError(f"Q={sorted(Q)} must be a subset of 1..{p}")
    if C.r == 1:
        return C.universe.zero()
    Z = fiber_pair_matrix(C)
    return _trace_of_product([Z if a in Q else C.lower_block for a in range(1, p + 1)])


def omega_ps(p: int, s: int, C) -> GrassmannElement:
    """``(1/p) * sum of omega_pQ over |Q| = s``."""
    if not 1 <= s <= p:
        raise ValueError(f"omega_ps needs 1 <= s <= p, got p={p}, s={s}")
    C = _matrix(C)
    total = C.universe.zero()
    for Q in combinations(range(1, p + 1), s):
        total = total + omega_pQ(p, Q, C)
    return total * Fraction(1, p)


def omega_b1(b: int, C) -> GrassmannElement:
    """``Omega_{b,1} = sum c_{i1 i2} ... c_{i_{b-1} i_b} zeta_{i_b} zetab_{i_1}``."""
    if b < 1:
        raise ValueError(f"omega_b1 needs b >= 1, got {b}")
    C = _matrix(C)
    u = C.universe
    if C.r == 1:
        return u.zero()
    P = matrix_power(C.lower_block, b - 1)
    out = u.zero()
    for a in range(C.r - 1):
        for e in range(C.r - 1):
            if P[a][e]:
                out = out + P[a][e] * u.fiber_pair(e + 2, a + 2)
    return out


def _product(factors, u) -> GrassmannElement:
    out = u.one()
    for f in factors:
        out = out * f
        if not out:
            break
    return out


class _Cache:
    """Per-call memo of ``c'_k`` and ``Omega_{b,1}``."""

    def __init__(self, C: CurvatureMatrix):
        self.C = C
        self._cp: Dict[int, GrassmannElement] = {}
        self._ob: Dict[int, GrassmannElement] = {}
        self._ops: Dict[tuple, GrassmannElement] = {}

    def cp(self, k):
        if k not in self._cp:
            self._cp[k] = c_prime(k, self.C)
        return self._cp[k]

    def ob(self, b):
        if b not in self._ob:
            self._ob[b] = omega_b1(b, self.C)
        return self._ob[b]

    def ops(self, p, s):
        if (p, s) not in self._ops:
            self._ops[(p, s)] = omega_ps(p, s, self.C)
        return self._ops[(p, s)]

    def omega_product(self, parts):
        return _product((self.ob(b) for b in parts), self.C.universe)


def omega_ps_partition(p: int, s: int, C) -> GrassmannElement:
    """``Omega_{p,s}`` rebuilt from ``Omega_{b,1}`` over partitions of ``p``
    with ``s`` parts, weight ``(-1)^(s-1) (s-1)! / h(B)!``."""
    C = _matrix(C)
    cache = _Cache(C)
    u = C.universe
    out = u.zero()
    for B in enumerate_partitions(p):
        if B.length != s:
            continue
        coef = Fraction((-1) ** (s - 1) * factorial(s - 1), B.height_factorial)
        out = out + cache.omega_product(B.parts) * coef
    return out


def signed_cycle_products(d: int, C) -> GrassmannElement:
    """Sum over ``S <= P`` (compositions, equal length) with ``|P| <= d`` and
    ``|S| = d`` of ``(-1)^(|P|+l(P)) / l(P)! * prod Omega_{p_i, s_i}``."""
    C = _matrix(C)
    cache = _Cache(C)
    u = C.universe
    out = u.zero()
    for w in range(1, d + 1):
        for P in enumerate_compositions(w):
            for S in _dominated(P.parts):
                if sum(S) != d:
                    continue
                coef = Fraction((-1) ** (w + P.length), factorial(P.length))
                term = _product((cache.ops(p, s) for p, s in zip(P.parts, S)), u)
                out = out + term * coef
    return out


def _dominated(parts):
    """All sequences ``S`` with ``1 <= s_m <= p_m``."""
    if not parts:
        yield ()
        return
    for first in range(1, parts[0] + 1):
        for rest in _dominated(parts[1:]):
            yield (first,) + rest


# -- closed forms ---------------------------------------------------------------


def bott_chern_form(d: int, C) -> GrassmannElement:
    """Closed form of the Bott-Chern form of degree ``d+1``:

        - sum_{1<=s<=p<=d} sum_{B |- p, l(B)=s}
              H_s (-1)^(p+s) s!/h(B)! c'_{d-p} Omega_{b_1,1} ... Omega_{b_s,1}
    """
    C = _matrix(C)
    cache = _Cache(C)
    u = C.universe
    out = u.zero()
    for p in range(1, d + 1):
        cp = cache.cp(d - p)
        if not cp:
            continue
        for B in enumerate_partitions(p):
            s = B.length
            coef = -harmonic(s) * Fraction((-1) ** (p + s) * factorial(s), B.height_factorial)
            term = cache.omega_product(B.parts)
            if term:
                out = out + cp * term * coef
    return out


def phi_by_compositions(d: int, C) -> UPoly:
    """``Phi_{d+1}(u)`` expanded over compositions ``P`` and dominated ``S``
    with the cycle forms ``Omega_{p,s}`` taken from their definition."""
    C = _matrix(C)
    cache = _Cache(C)
    u = C.universe
    out = UPoly.constant(cache.cp(d))
    for w in range(1, d + 1):
        cp = cache.cp(d - w)
        if not cp:
            continue
        for P in enumerate_compositions(w):
            sign = Fraction((-1) ** (w + P.length), factorial(P.length))
            for S in _dominated(P.parts):
                term = _product((cache.ops(p, s) for p, s in zip(P.parts, S)), u)
                if term:
                    out = out + UPoly.one_minus_u_power(u, sum(S), cp * term * sign)
    return out


def phi_by_partitions(d: int, C) -> UPoly:
    """``Phi_{d+1}(u)`` as a sum over partitions ``B`` of the products of
    ``Omega_{b,1}``."""
    C = _matrix(C)
    cache = _Cache(C)
    u = C.universe
    out = UPoly.constant(cache.cp(d))
    for p in range(1, d + 1):
        cp = cache.cp(d - p)
        if not cp:
            continue
        for B in enumerate_partitions(p):
            s = B.length
            coef = Fraction((-1) ** (p + s) * factorial(s), B.height_factorial)
            term = cache.omega_product(B.parts)
            if term:
                out = out + UPoly.one_minus_u_power(u, s, cp * term * coef)
    return out


# -- generating series ---------------------------------------------------------


class GSeries:
    """Truncated series in ``t`` with algebra coefficients (orders ``0..N``)."""

    __slots__ = ("universe", "N", "coeffs")

    def __init__(self, universe, N: int, coeffs: Sequence[GrassmannElement] = ()):
        cs = list(coeffs)[: N + 1]
        cs += [universe.zero()] * (N + 1 - len(cs))
        self.universe = universe
        self.N = N
        self.coeffs = cs

    def __getitem__(self, k):
        return self.coeffs[k]

    def __add__(self, other):
        return GSeries(self.universe, self.N, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return GSeries(self.universe, self.N, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, GSeries):
            out = [self.universe.zero() for _ in range(self.N + 1)]
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j in range(self.N + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] = out[i + j] + a * b
            return GSeries(self.universe, self.N, out)
        return GSeries(self.universe, self.N, [a * other for a in self.coeffs])

    __rmul__ = __mul__

    def __bool__(self):
        return any(self.coeffs)

    def witness(self) -> str:
        for k, c in enumerate(self.coeffs):
            if c:
                return f"t^{k}: {c.witness()}"
        return ""

    def exp(self) -> "GSeries":
        """``exp(X)`` for a series without constant term."""
        if self.coeffs[0]:
            raise ValueError("exp needs a series with zero constant term")
        out = GSeries(self.universe, self.N, [self.universe.one()])
        power = GSeries(self.universe, self.N, [self.universe.one()])
        for k in range(1, self.N + 1):
            power = power * self * Fraction(1, k)
            if not power:
                break
            out = out + power
        return out

    def compose_harmonic(self) -> "GSeries":
        """``H(X) = sum_{s>=1} H_s X^s`` applied to a series without constant term."""
        if self.coeffs[0]:
            raise ValueError("H(X) needs a series with zero constant term")
        out = GSeries(self.universe, self.N)
        power = GSeries(self.universe, self.N, [self.universe.one()])
        for s in range(1, self.N + 1):
            power = power * self
            if not power:
                break
            out = out + power * harmonic(s)
        return out


def generating_core_check(order: int, C) -> List[CheckResult]:
    """Series identities at the center, truncated at ``t^order``:

    * ``c~_t = -H(-Omega_t) c'_t`` with ``Omega_t = sum_b (-t)^b Omega_{b,1}``;
    * ``c'_t = Theta_t * c_t(E*)`` with ``Theta_t = sum_q (-t)^q Theta^q a*``.
    """
    C = _matrix(C)
    u = C.universe
    cache = _Cache(C)
    params = {"r": C.r, "n": C.data.n, "order": order}
    c_tilde = GSeries(u, order, [bott_chern_form(d, C) for d in range(order + 1)])
    cp_t = GSeries(u, order, [cache.cp(d) for d in range(order + 1)])
    omega_t = GSeries(u, order, [u.zero()] + [cache.ob(b) * ((-1) ** b) for b in range(1, order + 1)])
    rhs = -((-omega_t).compose_harmonic() * cp_t)
    first = compare("generating series: c~_t = -H(-Omega_t) c'_t", params, c_tilde, rhs)

    theta_t = GSeries(u, order, [theta_power_point(q, C) * ((-1) ** q) for q in range(order + 1)])
    chern_t = GSeries(u, order, [chern_dual(m, C) for m in range(order + 1)])
    second = compare("generating series: c'_t = Theta_t c_t(E*)", params, cp_t, theta_t * chern_t)
    return [first, second]


# -- terms of full relative degree ---------------------------------------------


def full_degree_lhs(d: int, f: int, C) -> GrassmannElement:
    """``(c~_{d+1})_f * Omega^(r-1-f)`` from the oracle."""
    C = _matrix(C)
    om = C.universe.omega()
    return fiber_part(tilde_c_oracle(d, C), f) * om ** (C.r - 1 - f)


def full_degree_coefficient(d: int, f: int, r: int) -> Fraction:
    """``-H_f C(r-1-d+f, f) / C(r-1, f)``."""
    if f < 0 or f > r - 1:
        return Fraction(0)
    return -harmonic(f) * Fraction(binomial(r - 1 - d + f, f), binomial(r - 1, f))


def full_degree_rhs(d: int, f: int, C) -> GrassmannElement:
    """``-H_f C(r-1,f)^-1 C(r-1-d+f,f) sum_{a+b=d-f} c_a(E*) (-1)^b Theta^b a* Omega^(r-1)``
    evaluated at the center."""
    C = _matrix(C)
    u = C.universe
    coef = full_degree_coefficient(d, f, C.r)
    if not coef or d - f < 0:
        return u.zero()
    s = u.zero()
    for a in range(d - f + 1):
        b = d - f - a
        s = s + chern_dual(a, C) * theta_power_point(b, C) * ((-1) ** b)
    return s * u.omega() ** (C.r - 1) * coef


def full_degree_check(d: int, f: int, C) -> CheckResult:
    C = _matrix(C)
    return compare(
        "full relative degree part",
        {"r": C.r, "n": C.data.n, "d": d, "f": f},
        full_degree_lhs(d, f, C),
        full_degree_rhs(d, f, C),
    )


# -- special cases -------------------------------------------------------------


def alpha_center(C) -> GrassmannElement:
    """Curvature of ``O(1)`` at the center: ``Omega - c_11``."""
    C = _matrix(C)
    return C.universe.omega() - C.entry(1, 1)


def ddbar_theta1_center(C) -> GrassmannElement:
    """``(i/2pi) d'd'' Theta^1 a*`` at the center, read off from
    ``Omega_{2,1} = (i/2pi) d'd'' Theta^1 a* + Theta^2 a* + alpha Theta^1 a*``."""
    C = _matrix(C)
    t1 = theta_power_point(1, C)
    return omega_b1(2, C) - theta_power_point(2, C) - alpha_center(C) * t1


def _h(k: int):
    return harmonic(k) if k >= 0 else 0


def _pow(x: GrassmannElement, k: int) -> GrassmannElement:
    if k < 0:
        return x.universe.zero()
    return x ** k


def high_degree_parts(d: int, C) -> Dict[int, GrassmannElement]:
    """Components of fiber degree ``2d``, ``2(d-1)``, ``2(d-2)`` of ``c~_{d+1}``
    from their explicit expressions in ``Omega``, ``c'`` and ``Omega_{b,1}``."""
    C = _matrix(C)
    u = C.universe
    om = u.omega()
    cache = _Cache(C)
    o2, o3 = cache.ob(2), cache.ob(3)
    out = {d: om ** d * (-harmonic(d))}
    if d - 1 >= 1:
        inner = cache.cp(1) * om ** (d - 1) - o2 * _pow(om, d - 2) * (d - 1)
        out[d - 1] = inner * (-harmonic(d - 1))
    if d - 2 >= 1:
        inner = (
            cache.cp(2) * om ** (d - 2)
            - cache.cp(1) * o2 * _pow(om, d - 3) * (d - 2)
            + o3 * _pow(om, d - 3) * (d - 2)
            + o2 * o2 * _pow(om, d - 4) * Fraction((d - 2) * (d - 3), 2)
        )
        out[d - 2] = inner * (-harmonic(d - 2))
    return out


@dataclass
class FormulaComparison:
    """A formula valid up to ``d'``- and ``d''``-exact forms, compared with
    the oracle at the center.  ``residual = oracle - formula``."""

    formula: GrassmannElement
    oracle: GrassmannElement
    residual: GrassmannElement
    exact_term: GrassmannElement = None

    def residual_bidegrees(self):
        return sorted(self.residual.bidegrees())


def first_forms(C) -> Dict[int, FormulaComparison]:
    """``c~_2`` and ``c~_3`` in terms of ``alpha``, ``c_1(E*)`` and ``Theta^q a*``."""
    C = _matrix(C)
    al = alpha_center(C)
    t1, t2 = theta_power_point(1, C), theta_power_point(2, C)
    c1 = chern_dual(1, C)
    out = {}
    f2 = -al * harmonic(1) - t1
    o2 = tilde_c_oracle(1, C)
    out[2] = FormulaComparison(f2, o2, o2 - f2, C.universe.zero())
    f3 = -(al * al * harmonic(2) + c1 * al) - (al + c1) * t1 - (t1 * t1 * Fraction(1, 2) - t2)
    o3 = tilde_c_oracle(2, C)
    out[3] = FormulaComparison(f3, o3, o3 - f3, ddbar_theta1_center(C))
    return out


def curve_formula(d: int, C) -> FormulaComparison:
    """``-[H_d a^d + H_{d-1} c_1 a^{d-1}] - [a^{d-1}] Theta^1 a*`` on a curve."""
    C = _matrix(C)
    if C.data.n != 1:
        raise ValueError("the curve formula needs a one-dimensional base")
    if d < 1:
        raise ValueError(f"curve formula needs d >= 1, got {d}")
    al = alpha_center(C)
    t1 = theta_power_point(1, C)
    c1 = chern_dual(1, C)
    formula = -(al ** d * harmonic(d) + c1 * _pow(al, d - 1) * _h(d - 1)) - _pow(al, d - 1) * t1
    oracle = tilde_c_oracle(d, C)
    exact = _pow(al, d - 2) * ddbar_theta1_center(C) * (_h(d - 1) * (d - 1))
    return FormulaComparison(formula, oracle, oracle - formula, exact)


def surface_formula(d: int, C) -> FormulaComparison:
    """The surface analogue, with ``c_2(E*)`` and ``Theta^2 a*`` terms."""
    C = _matrix(C)
    if C.data.n != 2:
        raise ValueError("the surface formula needs a two-dimensional base")
    if d < 1:
        raise ValueError(f"surface formula needs d >= 1, got {d}")
    al = alpha_center(C)
    t1, t2 = theta_power_point(1, C), theta_power_point(2, C)
    c1, c2 = chern_dual(1, C), chern_dual(2, C)
    dd1 = ddbar_theta1_center(C)
    closed = -(
        al ** d * harmonic(d)
        + c1 * _pow(al, d - 1) * _h(d - 1)
        + c2 * _pow(al, d - 2) * _h(d - 2)
    )
    second = -(_pow(al, d - 1) + c1 * _pow(al, d - 2) - _pow(al, d - 3) * dd1 * (d - 2)) * t1
    third = -_pow(al, d - 2) * (t1 * t1 * Fraction(1, 2) - t2)
    formula = closed + second + third
    oracle = tilde_c_oracle(d, C)
    return FormulaComparison(formula, oracle, oracle - formula)


def special_cases(d: int, C) -> Dict[str, object]:
    """All explicit low-dimensional and high-relative-degree expressions."""
    C = _matrix(C)
    out: Dict[str, object] = {"high_degree_parts": high_degree_parts(d, C)}
    if d in (1, 2):
        out["first_form"] = first_forms(C)[d + 1]
    if C.data.n == 1:
        out["curve"] = curve_formula(d, C)
    elif C.data.n == 2:
        out["surface"] = surface_formula(d, C)
    return out


def special_cases_check(d: int, C) -> List[CheckResult]:
    C = _matrix(C)
    params = {"r": C.r, "n": C.data.n, "d": d}
    oracle = tilde_c_oracle(d, C)
    results = []
    for f, value in high_degree_parts(d, C).items():
        if f < 1:
            continue
        results.append(
            compare("high relative degree part", dict(params, f=f), fiber_part(oracle, f), value)
        )
    sc = special_cases(d, C)
    if "first_form" in sc:
        fc = sc["first_form"]
        results.append(
            compare("first Bott-Chern forms modulo exact terms", params, fc.residual, fc.exact_term)
        )
    if "curve" in sc:
        fc = sc["curve"]
        results.append(compare("curve formula modulo exact terms", params, fc.residual, fc.exact_term))
    if "surface" in sc:
        fc = sc["surface"]
        results.append(
            CheckResult(
                "surface formula residual (reported)",
                params,
                True,
                detail="residual bidegrees " + str(fc.residual_bidegrees()),
            )
        )
    return results
