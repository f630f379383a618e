"""Universal characteristic series in the Segre generators, and heights.

A :class:`ClassSeries` is a polynomial in graded generators truncated at a
weighted degree ``N``.  Since every series used here has its ``t^m``
coefficient homogeneous of degree ``m``, the power of ``t`` is implicit in
the grading: ``part(m)`` is the coefficient of ``t^m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import prod
from typing import Dict, List, Sequence, Tuple

from .combinatorics import curly_h

__all__ = [
    "ClassSeries",
    "segre_series",
    "chern_from_segre",
    "theta_from_segre",
    "universal_S",
    "universal_R",
    "SCHUR_BASIS_DEG3",
    "schur_expansion",
    "third_schur_coefficient",
    "SplitBundleSpec",
    "split_segre_values",
    "analytic_height",
    "height_secondary_term",
    "complete_homogeneous",
]

Exps = Tuple[int, ...]


class ClassSeries:
    """Truncated graded polynomial ``{exponent vector: rational}``."""

    __slots__ = ("names", "degrees", "N", "terms")

    def __init__(self, names: Sequence[str], degrees: Sequence[int], N: int, terms: Dict[Exps, Fraction] = None):
        if len(names) != len(degrees) or any(d < 1 for d in degrees):
            raise ValueError("generators need positive degrees")
        self.names = tuple(names)
        self.degrees = tuple(degrees)
        self.N = N
        out = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c and self.weight(e) <= N:
                out[tuple(e)] = c
        self.terms = out

    # construction --------------------------------------------------------
    def weight(self, e: Exps) -> int:
        return sum(d * k for d, k in zip(self.degrees, e))

    def _like(self, terms) -> "ClassSeries":
        return ClassSeries(self.names, self.degrees, self.N, terms)

    def const(self, c) -> "ClassSeries":
        return self._like({(0,) * len(self.names): Fraction(c)})

    def gen(self, i: int) -> "ClassSeries":
        e = [0] * len(self.names)
        e[i] = 1
        return self._like({tuple(e): Fraction(1)})

    def _check(self, other):
        if (self.names, self.degrees, self.N) != (other.names, other.degrees, other.N):
            raise ValueError("series over different generators or truncations")

    # ring operations --------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, ClassSeries):
            other = self.const(other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, ClassSeries):
            c = Fraction(other)
            return self._like({e: v * c for e, v in self.terms.items()})
        self._check(other)
        out: Dict[Exps, Fraction] = {}
        for e1, c1 in self.terms.items():
            w1 = self.weight(e1)
            for e2, c2 in other.terms.items():
                if w1 + self.weight(e2) > self.N:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, ClassSeries):
            other = self.const(other)
        return (self - other).terms == {}

    def __hash__(self):
        return hash((self.names, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def constant(self) -> Fraction:
        return self.terms.get((0,) * len(self.names), Fraction(0))

    def invert(self) -> "ClassSeries":
        if self.constant() != 1:
            raise ValueError("invert needs constant term 1")
        g = self - 1
        out, power = self.const(1), self.const(1)
        for _ in range(self.N):
            power = power * (-g)
            out = out + power
        return out

    def exp(self) -> "ClassSeries":
        if self.constant() != 0:
            raise ValueError("exp needs constant term 0")
        out, power = self.const(1), self.const(1)
        for k in range(1, self.N + 1):
            power = power * self * Fraction(1, k)
            out = out + power
        return out

    def log(self) -> "ClassSeries":
        if self.constant() != 1:
            raise ValueError("log needs constant term 1")
        g = self - 1
        out, power = self.const(0), self.const(1)
        for k in range(1, self.N + 1):
            power = power * g
            out = out + power * Fraction((-1) ** (k + 1), k)
        return out

    # graded structure -------------------------------------------------------
    def part(self, k: int) -> "ClassSeries":
        """Homogeneous component of degree ``k`` (the ``t^k`` coefficient)."""
        return self._like({e: c for e, c in self.terms.items() if self.weight(e) == k})

    def coefficient(self, e: Exps) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    def evaluate(self, values: Sequence, one):
        """Substitute ``values[i]`` for generator ``i`` in any commutative ring
        containing the rationals; ``one`` is that ring's unit."""
        total = one * 0
        for e, c in self.terms.items():
            term = one
            for v, k in zip(values, e):
                for _ in range(k):
                    term = term * v
            total = total + term * c
        return total

    def format_monomial(self, e: Exps) -> str:
        parts = []
        for name, k in zip(self.names, e):
            if k:
                parts.append(name if k == 1 else f"{name}^{k}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: (self.weight(kv[0]), tuple(-x for x in kv[0])))
        out = []
        for e, c in items:
            mono = self.format_monomial(e)
            cs = str(c)
            out.append(cs if not mono else (mono if c == 1 else f"-{mono}" if c == -1 else f"{cs}*{mono}"))
        return " + ".join(out).replace("+ -", "- ")

    def __repr__(self):
        return f"ClassSeries({self})"

    def witness(self) -> str:
        if not self.terms:
            return ""
        e, c = min(self.terms.items())
        return f"{c}*{self.format_monomial(e) or '1'}"


def segre_series(N: int) -> ClassSeries:
    """``s'_t = 1 + sum_m s'_m t^m`` with abstract generators ``s'_1..s'_N``."""
    base = ClassSeries([f"s'_{m}" for m in range(1, N + 1)], list(range(1, N + 1)), N)
    out = base.const(1)
    for i in range(N):
        out = out + base.gen(i)
    return out


def chern_from_segre(N: int) -> ClassSeries:
    """``c_t(E*) = 1 / s'_t``."""
    return segre_series(N).invert()


def theta_from_segre(N: int) -> List[ClassSeries]:
    """``[theta_0 .. theta_N]`` with ``sum_p t^p theta_p / p = log s'_t`` (``theta_0`` unset)."""
    L = segre_series(N).log()
    return [L.const(0)] + [L.part(p) * p for p in range(1, N + 1)]


def universal_s_bc(r: int, N: int) -> Dict[Tuple[int, int], ClassSeries]:
    """``s^b_c`` for ``b + c <= N`` from the generating identity."""
    s = segre_series(N)
    theta = theta_from_segre(N)
    theta[0] = s.const(r)
    out = {}
    for b in range(N + 1):
        tail = s.const(0)
        for q in range(b, N + 1):
            tail = tail + theta[q]
        prodser = s * tail
        for c in range(N - b + 1):
            out[(b, c)] = prodser.part(b + c) * Fraction(1, r + c)
    return out


def universal_S(r: int, N: int) -> ClassSeries:
    """``S_t = sum_m t^m S_{m+1}`` as a polynomial in ``s'_1..s'_N``."""
    if r < 2:
        raise ValueError(f"the secondary class needs rank >= 2, got {r}")
    c = chern_from_segre(N)
    sbc = universal_s_bc(r, N)
    out = c.const(0)
    for m in range(N + 1):
        for a in range(m + 1):
            ca = c.part(a)
            for b in range(m - a + 1):
                cc = m - a - b
                top = r - 1 - a - b
                if top <= 0:
                    continue
                out = out - ca * sbc[(b, cc)] * curly_h(top, r - 1 + cc)
    return out


def universal_R(r: int, N: int) -> ClassSeries:
    """``R_t = s'_t S_t``."""
    return segre_series(N) * universal_S(r, N)


# -- Schur basis in degree 3 ------------------------------------------------------


def _schur_basis_deg3() -> List[ClassSeries]:
    s = segre_series(3)
    s1, s2, s3 = s.part(1), s.part(2), s.part(3)
    return [s3, s1 * s2 - s3, s1 ** 3 - 2 * s1 * s2 + s3]


SCHUR_BASIS_DEG3 = ("s'_3", "s'_1*s'_2 - s'_3", "s'_1^3 - 2*s'_1*s'_2 + s'_3")


def _solve_exact(A: List[List[Fraction]], b: List[Fraction]) -> List[Fraction]:
    """Gauss-Jordan elimination over the rationals."""
    n = len(A)
    M = [list(map(Fraction, row)) + [Fraction(v)] for row, v in zip(A, b)]
    for col in range(n):
        piv = next((i for i in range(col, n) if M[i][col]), None)
        if piv is None:
            raise ValueError("singular basis")
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for i in range(n):
            if i != col and M[i][col]:
                f = M[i][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[col])]
    return [M[i][n] for i in range(n)]


def schur_expansion(poly: ClassSeries) -> List[Fraction]:
    """Coordinates of a degree-3 polynomial in ``s'`` in :data:`SCHUR_BASIS_DEG3`."""
    basis = _schur_basis_deg3()
    monos = sorted({e for B in basis for e in B.terms} | set(poly.part(3).terms))
    if len(monos) != len(basis):
        raise ValueError("degree-3 part does not lie in the span of the basis")
    A = [[B.coefficient(e) for B in basis] for e in monos]
    rhs = [poly.coefficient(e) for e in monos]
    coords = _solve_exact(A, rhs)
    back = sum((B * x for B, x in zip(basis, coords)), poly.const(0))
    if back != poly.part(3):
        raise ValueError("round trip through the Schur basis failed")
    return coords


def third_schur_coefficient() -> Tuple[Fraction, List[Fraction]]:
    """Third coordinate of ``-R_4 / 2`` (rank 3) in the degree-3 Schur basis,
    together with all three coordinates."""
    R = universal_R(3, 3)
    target = R.part(3) * Fraction(-1, 2)
    coords = schur_expansion(target)
    return coords[2], coords


# -- split bundles over projective space ------------------------------------------


@dataclass(frozen=True)
class SplitBundleSpec:
    """``O(a_1) + ... + O(a_r)`` over ``P^n``."""

    twists: Tuple[int, ...]
    n: int

    def __post_init__(self):
        if len(self.twists) < 1:
            raise ValueError("a split bundle needs at least one twist")
        if self.n < 0:
            raise ValueError(f"base dimension must be >= 0, got {self.n}")

    @property
    def r(self) -> int:
        return len(self.twists)


def _truncated_mul(p: List[Fraction], q: List[Fraction], n: int) -> List[Fraction]:
    out = [Fraction(0)] * (n + 1)
    for i, a in enumerate(p):
        if a:
            for j in range(n + 1 - i):
                out[i + j] += a * q[j]
    return out


def split_segre_values(spec: SplitBundleSpec) -> List[Fraction]:
    """``s'_m`` of the split bundle as multiples of ``h^m``, ``m = 0..n``:
    invert ``c_t(E*) = prod (1 - a_i h t)`` in ``Q[h]/(h^(n+1))``."""
    n = spec.n
    chern = [Fraction(1)] + [Fraction(0)] * n
    for a in spec.twists:
        chern = _truncated_mul(chern, [Fraction(1), Fraction(-a)] + [Fraction(0)] * (n - 1), n)
    inv = [Fraction(1)] + [Fraction(0)] * n
    for k in range(1, n + 1):
        inv[k] = -sum(chern[i] * inv[k - i] for i in range(1, k + 1))
    return inv


def complete_homogeneous(m: int, xs: Sequence[int]) -> int:
    """``h_m(x_1..x_r)``, the sum of all degree-``m`` monomials."""
    return sum(prod(c) for c in combinations_with_replacement(xs, m))


def analytic_height(spec: SplitBundleSpec) -> Fraction:
    """``int_X s'_n(E)``: the top self-intersection of ``c_1(O(1))`` on ``P(E)``."""
    return split_segre_values(spec)[spec.n]


def height_secondary_term(spec: SplitBundleSpec) -> Fraction:
    """``-1/2 int_X R_{n+1}`` for the split bundle."""
    if spec.r < 2:
        raise ValueError("the secondary term needs rank >= 2")
    values = split_segre_values(spec)
    R = universal_R(spec.r, spec.n).part(spec.n)
    return R.evaluate(values[1:], Fraction(1)) * Fraction(-1, 2)
