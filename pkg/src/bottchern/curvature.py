"""Curvature data of a hermitian bundle at the center of a normal frame.

A :class:`CurvatureData` holds the rational tensor ``gamma[l, m, j, k]``; the
induced curvature matrix of the dual bundle has entries

    c_jk = sum_{l, m} gamma[l, m, j, k] * xi(l) * xib(m),

which are even elements of base bidegree (1, 1).  The constants ``2 pi`` and
``i`` are absorbed into ``gamma`` by the generator normalization.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from typing import Dict, List, Sequence, Tuple

from .grassmann import GeneratorUniverse, GrassmannElement, UPoly
from .scalars import GaussianRational

__all__ = [
    "CurvatureData",
    "CurvatureMatrix",
    "random_curvature",
    "det_d",
    "matrix_power",
    "c_prime",
    "chern_dual",
    "theta_power_point",
    "theta_trace",
]

Index4 = Tuple[int, int, int, int]


class CurvatureData:
    """The tensor ``gamma`` for rank ``r`` over an ``n``-dimensional base."""

    def __init__(self, r: int, n: int, gamma: Dict[Index4, object] = None, hermitian: bool = False):
        if r < 1 or n < 0:
            raise ValueError(f"invalid rank/dimension r={r}, n={n}")
        self.r = r
        self.n = n
        self.hermitian = hermitian
        g: Dict[Index4, GaussianRational] = {}
        for key, v in (gamma or {}).items():
            lam, mu, j, k = key
            if not (1 <= lam <= n and 1 <= mu <= n and 1 <= j <= r and 1 <= k <= r):
                raise IndexError(f"gamma index {key} out of range")
            v = GaussianRational.coerce(v)
            if v:
                g[key] = v
        self.gamma = g
        if hermitian and not self.is_hermitian():
            raise ValueError("gamma is not hermitian: gamma[l,m,j,k] != conj(gamma[m,l,k,j])")

    def __call__(self, lam, mu, j, k) -> GaussianRational:
        return self.gamma.get((lam, mu, j, k), GaussianRational(0))

    def is_hermitian(self) -> bool:
        keys = set(self.gamma) | {(m, l, k, j) for (l, m, j, k) in self.gamma}
        return all(self(l, m, j, k) == self(m, l, k, j).conjugate() for (l, m, j, k) in keys)

    def is_flat(self) -> bool:
        return not self.gamma

    @cached_property
    def universe(self) -> GeneratorUniverse:
        return GeneratorUniverse(self.n, self.r)

    @cached_property
    def matrix(self) -> "CurvatureMatrix":
        return CurvatureMatrix(self)

    def __repr__(self):
        return f"CurvatureData(r={self.r}, n={self.n}, entries={len(self.gamma)}, hermitian={self.hermitian})"


class CurvatureMatrix:
    """The ``r x r`` matrix ``(c_jk)`` of even algebra elements."""

    def __init__(self, data: CurvatureData):
        self.data = data
        u = data.universe
        self.universe = u
        pairs = {(l, m): u.base_pair(l, m) for l in range(1, data.n + 1) for m in range(1, data.n + 1)}
        entries = [[u.zero() for _ in range(data.r)] for _ in range(data.r)]
        for (l, m, j, k), v in data.gamma.items():
            entries[j - 1][k - 1] = entries[j - 1][k - 1] + pairs[(l, m)] * v
        self.full: List[List[GrassmannElement]] = entries
        self.lower_block: List[List[GrassmannElement]] = [row[1:] for row in entries[1:]]
        # derived values that are pure functions of the entries
        self.memo: Dict[object, object] = {}

    @property
    def r(self) -> int:
        return self.data.r

    def entry(self, j: int, k: int) -> GrassmannElement:
        """``c_jk`` with 1-based indices."""
        return self.full[j - 1][k - 1]


def random_curvature(
    r: int,
    n: int,
    rng: random.Random,
    hermitian: bool = False,
    bound: int = 3,
    density: float = 1.0,
) -> CurvatureData:
    """Random Gaussian-rational ``gamma`` with small numerators/denominators.

    Numerators are drawn from ``[-bound, bound]`` and denominators from
    ``[1, bound]``.  With ``hermitian`` the tensor is symmetrized as
    ``(g + conj(g^T)) / 2``.
    """

    def draw():
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    raw: Dict[Index4, GaussianRational] = {}
    for key in product(range(1, n + 1), range(1, n + 1), range(1, r + 1), range(1, r + 1)):
        if density < 1.0 and rng.random() > density:
            continue
        raw[key] = GaussianRational(draw(), draw())
    if hermitian:
        sym = {}
        for (l, m, j, k) in product(range(1, n + 1), range(1, n + 1), range(1, r + 1), range(1, r + 1)):
            a = raw.get((l, m, j, k), GaussianRational(0))
            b = raw.get((m, l, k, j), GaussianRational(0)).conjugate()
            sym[(l, m, j, k)] = (a + b) * Fraction(1, 2)
        raw = sym
    return CurvatureData(r, n, raw, hermitian=hermitian)


def _unit_like(x):
    if isinstance(x, UPoly):
        return UPoly.constant(x.universe.one()), UPoly(x.universe)
    return x.universe.one(), x.universe.zero()


def _check_even(M):
    for row in M:
        for x in row:
            elems = x.coeffs if isinstance(x, UPoly) else [x]
            for e in elems:
                if not e.is_even():
                    raise ValueError("det_d needs even (commuting) entries")


def det_d(M: Sequence[Sequence], d: int):
    """Sum of the principal ``d x d`` minors of a matrix with commuting entries.

    Each minor is expanded over permutations, abandoning partial products as
    soon as they vanish; entries are nilpotent, so most branches die early.
    Cost is ``O(C(m, d) * d!)`` products in the worst case.
    """
    m = len(M)
    if m == 0:
        raise ValueError("det_d of an empty matrix")
    if not 0 <= d:
        raise ValueError(f"det_d order must be >= 0, got {d}")
    _check_even(M)
    one, zero = _unit_like(M[0][0])
    if d == 0:
        return one
    if d > m:
        return zero
    total = [zero]

    def expand(J, pos, used, acc, sign):
        if pos == len(J):
            total[0] = total[0] + (acc if sign > 0 else -acc)
            return
        row = M[J[pos]]
        for t in range(len(J)):
            if used >> t & 1:
                continue
            entry = row[J[t]]
            if not entry:
                continue
            nxt = acc * entry
            if not nxt:
                continue
            # inversions contributed by placing t after the already used columns
            inv = (used >> (t + 1)).bit_count()
            expand(J, pos + 1, used | (1 << t), nxt, -sign if inv % 2 else sign)

    for J in combinations(range(m), d):
        expand(J, 0, 0, one, 1)
    return total[0]


def matrix_power(M: Sequence[Sequence[GrassmannElement]], q: int) -> List[List[GrassmannElement]]:
    """``M^q`` for a square matrix with commuting entries."""
    size = len(M)
    u = M[0][0].universe
    out = [[u.one() if i == j else u.zero() for j in range(size)] for i in range(size)]
    for _ in range(q):
        out = [
            [sum((out[i][t] * M[t][j] for t in range(size)), u.zero()) for j in range(size)]
            for i in range(size)
        ]
    return out


def c_prime(d: int, C: CurvatureMatrix) -> GrassmannElement:
    """``det_d`` of the block ``(c_jk)_{j,k >= 2}``."""
    if d < 0:
        raise ValueError(f"c_prime order must be >= 0, got {d}")
    if C.r == 1:
        return C.universe.one() if d == 0 else C.universe.zero()
    return det_d(C.lower_block, d)


def chern_dual(m: int, C: CurvatureMatrix) -> GrassmannElement:
    """Chern form ``c_m`` of the dual bundle: ``det_m`` of the full matrix."""
    return det_d(C.full, m)


def theta_power_point(q: int, C: CurvatureMatrix) -> GrassmannElement:
    """The ``(1,1)`` entry of ``(c_jk)^q``: the center value of ``Theta^q a*``."""
    if q < 0:
        raise ValueError(f"power must be >= 0, got {q}")
    u = C.universe
    row = [u.one() if k == 0 else u.zero() for k in range(C.r)]
    for _ in range(q):
        row = [sum((row[t] * C.full[t][k] for t in range(C.r)), u.zero()) for k in range(C.r)]
    return row[0]


def theta_trace(p: int, C: CurvatureMatrix) -> GrassmannElement:
    """``theta_p = (-1)^p * trace((c_jk)^p)``: the trace of the ``p``-th power of the curvature of the bundle."""
    if p < 1:
        raise ValueError(f"theta_trace needs p >= 1, got {p}")
    Mp = matrix_power(C.full, p)
    tr = sum((Mp[i][i] for i in range(C.r)), C.universe.zero())
    return tr if p % 2 == 0 else -tr
