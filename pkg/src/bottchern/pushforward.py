"""Integration over the fiber ``P^{r-1}`` of the projective bundle.

Over the center ``x0`` every integrand is a function of the homogeneous
coordinate ``a`` times a power of the Fubini-Study form ``Omega``.  Functions
are kept as sums of ``a^alpha abar^beta / |a|^(2|alpha|)`` with base-form
coefficients, and the integral is the exact functional

    int a^alpha abar^beta / |a|^(2m) Omega^(r-1) = delta_{alpha,beta} (r-1)! prod alpha_i! / (r-1+m)!.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, prod
from typing import Dict, List, Tuple

from .combinatorics import binomial, curly_h
from .curvature import CurvatureData, CurvatureMatrix, chern_dual, matrix_power, theta_trace
from .grassmann import GrassmannElement, conjugate
from .report import CheckResult, compare
from .transgression import GSeries, full_degree_coefficient

__all__ = [
    "monomial_integral",
    "FiberRational",
    "pushforward",
    "theta_on_fiber",
    "alpha_on_fiber",
    "alpha_power",
    "segre_direct",
    "segre_binomial",
    "segre_closed",
    "chern_closed",
    "theta_trace",
    "chern_dual",
    "segre_inversion_check",
    "s_bc_direct",
    "s_bc_generating_check",
    "S_formula",
    "S_direct",
    "R_direct",
    "reality_check",
]

Key = Tuple[int, Tuple[int, ...], Tuple[int, ...]]


def _matrix(C) -> CurvatureMatrix:
    return C.matrix if isinstance(C, CurvatureData) else C


def monomial_integral(ms) -> Fraction:
    """``int prod |a_i|^(2 m_i) / |a|^(2m) Omega^(r-1)`` with ``r = len(ms)``."""
    ms = tuple(ms)
    if any(m < 0 for m in ms):
        raise ValueError(f"exponents must be non-negative: {ms}")
    r = len(ms)
    return Fraction(factorial(r - 1) * prod(factorial(m) for m in ms), factorial(r - 1 + sum(ms)))


class FiberRational:
    """Sum of ``coeff * Omega^k * a^alpha abar^beta / |a|^(2|alpha|)``.

    Coefficients are base forms (no fiber generators).  Terms with
    ``k >= r`` vanish and are dropped.
    """

    __slots__ = ("universe", "r", "terms")

    def __init__(self, universe, terms: Dict[Key, GrassmannElement] = None):
        self.universe = universe
        self.r = universe.r
        out = {}
        for (k, alpha, beta), c in (terms or {}).items():
            if len(alpha) != self.r or len(beta) != self.r:
                raise ValueError(f"exponent vectors must have length {self.r}")
            if sum(alpha) != sum(beta):
                raise ValueError(f"unbalanced bidegree {alpha} / {beta}")
            if k < self.r and c:
                out[(k, tuple(alpha), tuple(beta))] = c
        self.terms = out

    @classmethod
    def constant(cls, g: GrassmannElement) -> "FiberRational":
        zero = (0,) * g.universe.r
        return cls(g.universe, {(0, zero, zero): g})

    @classmethod
    def omega(cls, universe, k: int = 1) -> "FiberRational":
        zero = (0,) * universe.r
        return cls(universe, {(k, zero, zero): universe.one()})

    def __add__(self, other):
        if isinstance(other, GrassmannElement):
            other = FiberRational.constant(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, self.universe.zero()) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return FiberRational(self.universe, out)

    __radd__ = __add__

    def __neg__(self):
        return FiberRational(self.universe, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FiberRational):
            out: Dict[Key, GrassmannElement] = {}
            for (k1, a1, b1), c1 in self.terms.items():
                for (k2, a2, b2), c2 in other.terms.items():
                    k = k1 + k2
                    if k >= self.r:
                        continue
                    c = c1 * c2
                    if not c:
                        continue
                    key = (k, tuple(x + y for x, y in zip(a1, a2)), tuple(x + y for x, y in zip(b1, b2)))
                    s = out.get(key)
                    out[key] = c if s is None else s + c
            return FiberRational(self.universe, out)
        if isinstance(other, GrassmannElement):
            return self * FiberRational.constant(other)
        return FiberRational(self.universe, {k: c * other for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = FiberRational.constant(self.universe.one())
        for _ in range(e):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.terms)


def pushforward(f: FiberRational) -> GrassmannElement:
    """Exact fiber integral; only ``Omega^(r-1)`` terms with ``alpha = beta`` survive."""
    out = f.universe.zero()
    for (k, alpha, beta), c in f.terms.items():
        if k != f.r - 1 or alpha != beta:
            continue
        out = out + c * monomial_integral(alpha)
    return out


def _memo(C: CurvatureMatrix) -> dict:
    # fiber functions are reused by many integrals; they live on the matrix
    return C.memo

def theta_on_fiber(q: int, C) -> FiberRational:
    """``Theta^q a* = sum_jk (c^q)_jk a_k abar_j / |a|^2`` on the fiber over ``x0``."""
    C = _matrix(C)
    memo = _memo(C)
    key = ("theta", q)
    if key not in memo:
        memo[key] = _theta_on_fiber(q, C)
    return memo[key]


def _theta_on_fiber(q: int, C: CurvatureMatrix) -> FiberRational:
    u = C.universe
    if q == 0:
        return FiberRational.constant(u.one())
    P = matrix_power(C.full, q)
    terms = {}
    for j in range(C.r):
        for k in range(C.r):
            if P[j][k]:
                a = tuple(int(i == k) for i in range(C.r))
                b = tuple(int(i == j) for i in range(C.r))
                terms[(0, a, b)] = P[j][k]
    return FiberRational(u, terms)


def alpha_on_fiber(C) -> FiberRational:
    """``alpha = Omega - Theta^1 a*``."""
    C = _matrix(C)
    return FiberRational.omega(C.universe) - theta_on_fiber(1, C)


def alpha_power(k: int, C) -> FiberRational:
    """``alpha^k`` on the fiber, built incrementally and memoized."""
    C = _matrix(C)
    powers = _memo(C).setdefault("alpha", [FiberRational.constant(C.universe.one())])
    while len(powers) <= k:
        powers.append(powers[-1] * alpha_on_fiber(C))
    return powers[k]


# -- Segre and Chern forms -------------------------------------------------


def segre_direct(m: int, C) -> GrassmannElement:
    """``s'_m = pi_*(alpha^(r-1+m))``."""
    C = _matrix(C)
    return pushforward(alpha_power(C.r - 1 + m, C))


def segre_binomial(m: int, C) -> GrassmannElement:
    """``C(r-1+m, m) pi_*(Omega^(r-1) (-Theta^1 a*)^m)``."""
    C = _matrix(C)
    f = FiberRational.omega(C.universe, C.r - 1) * (-theta_on_fiber(1, C)) ** m
    return pushforward(f) * binomial(C.r - 1 + m, m)


def _theta_series(C, order: int, sign: int) -> GSeries:
    u = C.universe
    coeffs = [u.zero()] + [theta_trace(p, C) * Fraction(sign, p) for p in range(1, order + 1)]
    return GSeries(u, order, coeffs).exp()


def segre_closed(m: int, C) -> GrassmannElement:
    """Coefficient of ``t^m`` in ``exp(sum_p t^p theta_p / p)``."""
    C = _matrix(C)
    return _theta_series(C, m, 1)[m]


def chern_closed(m: int, C) -> GrassmannElement:
    """Coefficient of ``t^m`` in ``exp(-sum_p t^p theta_p / p)``."""
    C = _matrix(C)
    return _theta_series(C, m, -1)[m]


def segre_inversion_check(C, order: int = None) -> List[CheckResult]:
    """``c_t(E*) s'_t = 1`` with each factor computed two ways."""
    C = _matrix(C)
    u = C.universe
    N = C.data.n if order is None else order
    params = {"r": C.r, "n": C.data.n, "order": N}
    segre = GSeries(u, N, [segre_direct(m, C) for m in range(N + 1)])
    chern = GSeries(u, N, [chern_dual(m, C) for m in range(N + 1)])
    one = GSeries(u, N, [u.one()])
    results = [
        compare("Segre forms: fiber integral vs trace exponential", params, segre,
                GSeries(u, N, [segre_closed(m, C) for m in range(N + 1)])),
        compare("Chern forms: determinant vs trace exponential", params, chern,
                GSeries(u, N, [chern_closed(m, C) for m in range(N + 1)])),
        compare("Segre forms: fiber integral vs binomial collapse", params, segre,
                GSeries(u, N, [segre_binomial(m, C) for m in range(N + 1)])),
        compare("Chern-Segre inversion c_t(E*) s'_t = 1", params, chern * segre, one),
    ]
    return results


# -- generalized Segre forms and the secondary class S ----------------------------


def s_bc_direct(b: int, c: int, C) -> GrassmannElement:
    """``s^b_c = pi_*((-1)^b Theta^b a* alpha^(r-1+c))``."""
    C = _matrix(C)
    if b < 0 or c < 0:
        raise ValueError(f"s_bc needs b, c >= 0, got b={b}, c={c}")
    f = theta_on_fiber(b, C) * alpha_power(C.r - 1 + c, C)
    return pushforward(f) * ((-1) ** b)


def s_bc_generating_check(b: int, C, order: int = None) -> CheckResult:
    """``sum_c t^(b+c) (r+c) s^b_c = s'_t * sum_(q>=b) t^q theta_q`` with ``theta_0 = r``."""
    C = _matrix(C)
    u = C.universe
    N = C.data.n if order is None else order
    lhs = [u.zero() for _ in range(N + 1)]
    for k in range(b, N + 1):
        lhs[k] = s_bc_direct(b, k - b, C) * (C.r + k - b)
    theta = [u.scalar(C.r)] + [theta_trace(p, C) for p in range(1, N + 1)]
    rhs_theta = GSeries(u, N, [theta[q] if q >= b else u.zero() for q in range(N + 1)])
    segre = GSeries(u, N, [segre_direct(m, C) for m in range(N + 1)])
    return compare(
        "generalized Segre generating identity",
        {"r": C.r, "n": C.data.n, "b": b},
        GSeries(u, N, lhs),
        segre * rhs_theta,
    )


def S_formula(m: int, C) -> GrassmannElement:
    """``S_{m+1} = -sum_{a+b+c=m} curly_h(r-1-a-b, r-1+c) c_a(E*) s^b_c``."""
    C = _matrix(C)
    r = C.r
    out = C.universe.zero()
    for a in range(m + 1):
        ca = chern_dual(a, C)
        if not ca:
            continue
        for b in range(m - a + 1):
            c = m - a - b
            top = r - 1 - a - b
            if top <= 0:
                continue
            out = out - ca * s_bc_direct(b, c, C) * curly_h(top, r - 1 + c)
    return out


def _full_degree_on_fiber(d: int, f: int, C) -> FiberRational:
    """``(c~_{d+1})_f Omega^(r-1-f)`` on the whole fiber."""
    coef = full_degree_coefficient(d, f, C.r)
    u = C.universe
    if not coef or d < f:
        return FiberRational(u)
    acc = FiberRational(u)
    for a in range(d - f + 1):
        b = d - f - a
        acc = acc + theta_on_fiber(b, C) * chern_dual(a, C) * ((-1) ** b)
    return acc * FiberRational.omega(u, C.r - 1) * coef


def S_direct(m: int, C) -> GrassmannElement:
    """``S_{m+1} = sum_{i+c+j=r+m} C(i+c, c) pi_*((c~_j)_{r-1-i} Omega^i (-Theta^1 a*)^c)``."""
    C = _matrix(C)
    r = C.r
    out = C.universe.zero()
    minus_t1 = -theta_on_fiber(1, C)
    for j in range(2, r + 1):
        for i in range(r):
            c = m + r - j - i
            if c < 0:
                continue
            f = r - 1 - i
            if f < 1:
                continue
            piece = _full_degree_on_fiber(j - 1, f, C) * minus_t1 ** c
            out = out + pushforward(piece) * binomial(i + c, c)
    return out


def R_direct(m: int, C, S=S_formula) -> GrassmannElement:
    """``R_{m+1} = sum_{p+q=m} s'_p S_{q+1}``."""
    C = _matrix(C)
    out = C.universe.zero()
    for p in range(m + 1):
        out = out + segre_direct(p, C) * S(m - p, C)
    return out


def reality_check(C, order: int = None) -> List[CheckResult]:
    """Segre, trace and ``S`` forms are fixed by conjugation (hermitian data)."""
    C = _matrix(C)
    N = C.data.n if order is None else order
    params = {"r": C.r, "n": C.data.n}
    out = []
    for m in range(1, N + 1):
        for name, fn in (("Segre", segre_direct), ("trace", theta_trace), ("secondary S", S_formula)):
            x = fn(m, C)
            out.append(compare(f"{name} form is real", dict(params, m=m), conjugate(x), x))
    return out
