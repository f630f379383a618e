"""A finitely generated supercommutative algebra over Q(i).

Pointwise differential forms at a point of the projective bundle are modelled
by the exterior algebra on ``2n + 2(r-1)`` odd generators:

* ``xi(l)``, ``xib(l)`` for base coordinates ``l = 1..n``,
* ``zeta(j)``, ``zetab(j)`` for fiber coordinates ``j = 2..r``.

The product ``xi(l) * xib(m)`` stands for ``(i/2pi) dx_l ^ dxbar_m`` and
``zeta(j) * zetab(k)`` for ``(i/2pi) dz_j ^ dzbar_k``, so every real
``(p,p)``-form of interest has Gaussian-rational coefficients.

Monomials are bitmasks over the global generator order
``xi1, xib1, xi2, xib2, ..., zeta2, zetab2, ..., zetar, zetabr``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from gmpy2 import mpq

from .scalars import GaussianRational, ONE, ZERO, to_mpq

__all__ = [
    "GeneratorUniverse",
    "GrassmannElement",
    "UPoly",
    "gr_mul",
    "conjugate",
    "bidegree_filter",
    "u_transgress",
    "swap_parity",
    "random_element",
]

MAX_GENERATORS = 32

_PARITY: Dict[int, int] = {}


def swap_parity(a: int, b: int) -> int:
    """Parity of the transpositions that sort the concatenation ``a . b``.

    Counts pairs ``(i in a, j in b)`` with ``i > j``.
    """
    key = (a << MAX_GENERATORS) | b
    p = _PARITY.get(key)
    if p is None:
        s = 0
        bb = b
        while bb:
            low = bb & -bb
            s += (a & ~((low << 1) - 1)).bit_count()
            bb ^= low
        p = s & 1
        _PARITY[key] = p
    return p


@dataclass(frozen=True)
class GeneratorUniverse:
    """Base dimension ``n`` and bundle rank ``r`` fix the generator set."""

    n: int
    r: int

    def __post_init__(self):
        if self.n < 0 or self.r < 1:
            raise ValueError(f"invalid universe n={self.n}, r={self.r}")
        if self.size > MAX_GENERATORS:
            raise ValueError(f"{self.size} generators exceed the cap of {MAX_GENERATORS}")

    @property
    def size(self) -> int:
        return 2 * self.n + 2 * (self.r - 1)

    @property
    def base_mask(self) -> int:
        return (1 << (2 * self.n)) - 1

    @property
    def fiber_mask(self) -> int:
        return ((1 << self.size) - 1) ^ self.base_mask

    # generator bit positions
    def xi_bit(self, lam: int) -> int:
        self._check_base(lam)
        return 2 * (lam - 1)

    def xib_bit(self, lam: int) -> int:
        self._check_base(lam)
        return 2 * (lam - 1) + 1

    def zeta_bit(self, j: int) -> int:
        self._check_fiber(j)
        return 2 * self.n + 2 * (j - 2)

    def zetab_bit(self, j: int) -> int:
        self._check_fiber(j)
        return 2 * self.n + 2 * (j - 2) + 1

    def _check_base(self, lam):
        if not 1 <= lam <= self.n:
            raise IndexError(f"base index {lam} outside 1..{self.n}")

    def _check_fiber(self, j):
        if not 2 <= j <= self.r:
            raise IndexError(f"fiber index {j} outside 2..{self.r}")

    def generator_name(self, bit: int) -> str:
        if bit < 2 * self.n:
            lam = bit // 2 + 1
            return f"xib{lam}" if bit % 2 else f"xi{lam}"
        j = (bit - 2 * self.n) // 2 + 2
        return f"zetab{j}" if bit % 2 else f"zeta{j}"

    # element constructors
    def zero(self) -> "GrassmannElement":
        return GrassmannElement(self, {})

    def one(self) -> "GrassmannElement":
        return GrassmannElement(self, {0: ONE})

    def scalar(self, c) -> "GrassmannElement":
        c = GaussianRational.coerce(c)
        return GrassmannElement(self, {0: c} if c else {})

    def monomial(self, bits: Sequence[int], coeff=1) -> "GrassmannElement":
        """Product of the generators ``bits`` taken in the given order."""
        out = self.scalar(coeff)
        for b in bits:
            out = out * GrassmannElement(self, {1 << b: ONE})
        return out

    def xi(self, lam: int) -> "GrassmannElement":
        return GrassmannElement(self, {1 << self.xi_bit(lam): ONE})

    def xib(self, lam: int) -> "GrassmannElement":
        return GrassmannElement(self, {1 << self.xib_bit(lam): ONE})

    def zeta(self, j: int) -> "GrassmannElement":
        return GrassmannElement(self, {1 << self.zeta_bit(j): ONE})

    def zetab(self, j: int) -> "GrassmannElement":
        return GrassmannElement(self, {1 << self.zetab_bit(j): ONE})

    def base_pair(self, lam: int, mu: int) -> "GrassmannElement":
        """``xi(lam) * xib(mu)``, i.e. ``(i/2pi) dx_lam ^ dxbar_mu``."""
        return self.monomial([self.xi_bit(lam), self.xib_bit(mu)])

    def fiber_pair(self, j: int, k: int) -> "GrassmannElement":
        """``zeta(j) * zetab(k)``, i.e. ``(i/2pi) dz_j ^ dzbar_k``."""
        return self.monomial([self.zeta_bit(j), self.zetab_bit(k)])

    def omega(self) -> "GrassmannElement":
        """Fubini-Study form at the center: sum of ``zeta(j) zetab(j)``."""
        out = self.zero()
        for j in range(2, self.r + 1):
            out = out + self.fiber_pair(j, j)
        return out

    def swap_bits(self, mask: int) -> int:
        """Exchange holomorphic and antiholomorphic partners in a mask."""
        even = mask & 0x55555555
        odd = mask & 0xAAAAAAAA
        return (even << 1) | (odd >> 1)


class GrassmannElement:
    """Sparse element of the exterior algebra; immutable value type."""

    __slots__ = ("universe", "terms")

    def __init__(self, universe: GeneratorUniverse, terms: Dict[int, GaussianRational]):
        self.universe = universe
        self.terms = terms

    # construction helpers ---------------------------------------------------
    @staticmethod
    def _from_acc(universe, acc: Dict[int, list]) -> "GrassmannElement":
        out = {}
        for m, (re, im) in acc.items():
            if re or im:
                out[m] = GaussianRational._raw(re, im)
        return GrassmannElement(universe, out)

    def _check(self, other: "GrassmannElement"):
        if other.universe != self.universe:
            raise ValueError(
                f"universe mismatch: {self.universe} vs {other.universe}"
            )

    # ring operations --------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, GrassmannElement):
            other = self.universe.scalar(other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            cur = out.get(m)
            if cur is None:
                out[m] = c
            else:
                s = cur + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return GrassmannElement(self.universe, out)

    __radd__ = __add__

    def __neg__(self):
        return GrassmannElement(self.universe, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, GrassmannElement):
            other = self.universe.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GrassmannElement):
            try:
                c = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
            if not c:
                return self.universe.zero()
            return GrassmannElement(self.universe, {m: v * c for m, v in self.terms.items()})
        self._check(other)
        acc: Dict[int, list] = {}
        parity = swap_parity
        for ma, ca in self.terms.items():
            ar, ai = ca.re, ca.im
            for mb, cb in other.terms.items():
                if ma & mb:
                    continue
                br, bi = cb.re, cb.im
                if ai or bi:
                    re = ar * br - ai * bi
                    im = ar * bi + ai * br
                else:
                    re = ar * br
                    im = None
                if parity(ma, mb):
                    re = -re
                    if im is not None:
                        im = -im
                key = ma | mb
                cur = acc.get(key)
                if cur is None:
                    acc[key] = [re, im if im is not None else mpq(0)]
                else:
                    cur[0] += re
                    if im is not None:
                        cur[1] += im
        return GrassmannElement._from_acc(self.universe, acc)

    def __rmul__(self, other):
        # scalars commute with everything
        return self.__mul__(other)

    def __truediv__(self, other):
        c = GaussianRational.coerce(other)
        return self * c.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = self.universe.one()
        for _ in range(k):
            out = out * self
            if not out.terms:
                break
        return out

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, GrassmannElement):
            return self.universe == other.universe and self.terms == other.terms
        try:
            return self.terms == self.universe.scalar(other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.universe, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # structure ----------------------------------------------------------
    def degrees(self) -> set:
        return {m.bit_count() for m in self.terms}

    def is_even(self) -> bool:
        return all(m.bit_count() % 2 == 0 for m in self.terms)

    def is_odd(self) -> bool:
        return all(m.bit_count() % 2 == 1 for m in self.terms)

    def parity(self) -> int:
        """0 for even, 1 for odd; raises for mixed elements."""
        if self.is_even():
            return 0
        if self.is_odd():
            return 1
        raise ValueError("element has mixed parity")

    def bidegrees(self) -> set:
        bm = self.universe.base_mask
        return {((m & bm).bit_count(), (m & ~bm).bit_count()) for m in self.terms}

    def constant(self) -> GaussianRational:
        return self.terms.get(0, ZERO)

    def coefficient(self, bits: Sequence[int]) -> GaussianRational:
        """Coefficient of the generator product ``bits`` in the given order."""
        mask = 0
        sign = 0
        for b in bits:
            if mask >> b & 1:
                return ZERO
            sign ^= swap_parity(mask, 1 << b)
            mask |= 1 << b
        c = self.terms.get(mask, ZERO)
        return -c if sign else c

    def map_coefficients(self, f) -> "GrassmannElement":
        out = {}
        for m, c in self.terms.items():
            v = f(c)
            if v:
                out[m] = v
        return GrassmannElement(self.universe, out)

    def lead_term(self) -> Tuple[int, GaussianRational]:
        """A deterministic witness term (smallest mask)."""
        m = min(self.terms)
        return m, self.terms[m]

    def format_monomial(self, mask: int) -> str:
        if mask == 0:
            return "1"
        names = [self.universe.generator_name(b) for b in range(mask.bit_length()) if mask >> b & 1]
        return "*".join(names)

    def witness(self) -> str:
        if not self.terms:
            return ""
        m, c = self.lead_term()
        return f"({c})*{self.format_monomial(m)}"

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = [f"({c})*{self.format_monomial(m)}" for m, c in sorted(self.terms.items())]
        return " + ".join(parts)


def gr_mul(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    return a * b


def conjugate(a: GrassmannElement) -> GrassmannElement:
    """Complex conjugation of forms.

    Each generator ``g`` is sent to ``-i`` times its partner, so that the
    real form ``(i/2pi) dx ^ dxbar`` is fixed.  Coefficients are conjugated.
    The map is an antilinear ring involution.
    """
    u = a.universe
    out: Dict[int, GaussianRational] = {}
    for m, c in a.terms.items():
        swapped = u.swap_bits(m)
        # reorder the swapped product into canonical order: each adjacent
        # partner pair (2t, 2t+1) present in m flips order
        k = m.bit_count()
        pairs = 0
        mm = m
        while mm:
            if mm & 3 == 3:
                pairs += 1
            mm >>= 2
        # singletons keep relative order after the swap; only full pairs reverse
        c2 = c.conjugate()
        # factor (-i)^k
        r = k % 4
        if r == 1:
            c2 = GaussianRational._raw(c2.im, -c2.re)
        elif r == 2:
            c2 = -c2
        elif r == 3:
            c2 = GaussianRational._raw(-c2.im, c2.re)
        if pairs % 2:
            c2 = -c2
        out[swapped] = c2
    return GrassmannElement(u, out)


def bidegree_filter(a: GrassmannElement, base_deg: int, fiber_deg: int) -> GrassmannElement:
    """Terms with exactly ``base_deg`` base and ``fiber_deg`` fiber generators."""
    bm = a.universe.base_mask
    return GrassmannElement(
        a.universe,
        {
            m: c
            for m, c in a.terms.items()
            if (m & bm).bit_count() == base_deg and (m & ~bm).bit_count() == fiber_deg
        },
    )


class UPoly:
    """Polynomial in the deformation parameter ``u`` with algebra coefficients."""

    __slots__ = ("universe", "coeffs")

    def __init__(self, universe: GeneratorUniverse, coeffs: Iterable[GrassmannElement] = ()):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.universe = universe
        self.coeffs: List[GrassmannElement] = cs

    @classmethod
    def constant(cls, g: GrassmannElement) -> "UPoly":
        return cls(g.universe, [g])

    @classmethod
    def one_minus_u_power(cls, universe: GeneratorUniverse, s: int, g: GrassmannElement = None) -> "UPoly":
        """``(1-u)^s * g``."""
        from math import comb

        g = universe.one() if g is None else g
        return cls(universe, [g * ((-1) ** k * comb(s, k)) for k in range(s + 1)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> GrassmannElement:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.universe.zero()

    def __add__(self, other):
        if isinstance(other, GrassmannElement):
            other = UPoly.constant(other)
        if not isinstance(other, UPoly):
            other = UPoly.constant(self.universe.scalar(other))
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly(self.universe, [self.coefficient(k) + other.coefficient(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UPoly(self.universe, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, (UPoly, GrassmannElement)) else -GaussianRational.coerce(other))

    def __mul__(self, other):
        if isinstance(other, UPoly):
            if not self.coeffs or not other.coeffs:
                return UPoly(self.universe)
            out = [self.universe.zero() for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
            return UPoly(self.universe, out)
        return UPoly(self.universe, [c * other for c in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, GrassmannElement):
            other = UPoly.constant(other)
        if not isinstance(other, UPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return all(self.coefficient(k) == other.coefficient(k) for k in range(n))

    def __bool__(self):
        return bool(self.coeffs)

    def evaluate(self, u) -> GrassmannElement:
        u = to_mpq(u)
        out = self.universe.zero()
        for c in reversed(self.coeffs):
            out = out * u + c
        return out

    def __repr__(self):
        return "UPoly[" + ", ".join(repr(c) for c in self.coeffs) + "]"


def u_transgress(p: UPoly) -> GrassmannElement:
    """Exact value of the integral of ``(p(u) - p(0)) / u`` over ``[0, 1]``."""
    out = p.universe.zero()
    for k, c in enumerate(p.coeffs):
        if k >= 1 and c:
            out = out + c * Fraction(1, k)
    return out


def random_element(
    universe: GeneratorUniverse,
    rng,
    terms: int = 4,
    bound: int = 3,
    degree: int = None,
    mask: int = None,
) -> GrassmannElement:
    """A sparse element with small Gaussian-rational coefficients.

    ``degree`` fixes the number of generators per monomial; ``mask``
    restricts the generators that may appear.
    """
    allowed = [b for b in range(universe.size) if mask is None or mask >> b & 1]
    out: Dict[int, GaussianRational] = {}
    for _ in range(terms):
        k = rng.randint(0, len(allowed)) if degree is None else degree
        if k > len(allowed):
            continue
        m = 0
        for b in rng.sample(allowed, k):
            m |= 1 << b
        c = GaussianRational(
            Fraction(rng.randint(-bound, bound), rng.randint(1, bound)),
            Fraction(rng.randint(-bound, bound), rng.randint(1, bound)),
        )
        if c:
            out[m] = out.get(m, ZERO) + c
    return GrassmannElement(universe, {m: c for m, c in out.items() if c})
