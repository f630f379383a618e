"""Truncated jets of differential forms around the center of a normal frame.

Coordinates are ``x_1..x_n`` on the base and the affine fiber chart
``z_2..z_r`` with ``a = e_1* + sum_j z_j e_j*``.  Jet variables share the
bit layout of :class:`~bottchern.grassmann.GeneratorUniverse`: variable
``2(l-1)`` is ``x_l``, ``2(l-1)+1`` is ``xbar_l``, and similarly for ``z``.
The form generators are ``dx`` and ``(i/2pi) dxbar``, so the operators

    d'  f = sum_v  df/dv    dv
    d'' f = sum_v  df/dvbar (i/2pi) dvbar

multiply out to the same normalization as the pointwise algebra and
``d' d''`` here is ``(i/2pi) d'd''`` in the usual units.

Jets are truncated at total degree 2 by default.  The metric is exactly
quadratic in ``x`` and ``Theta = d''A`` is d''-closed identically, so the
parts of ``Theta`` lost to truncation never reach a value at the center.
Identities along the whole fiber lose one degree per derivative and are
compared on a higher-order jet.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .combinatorics import enumerate_compositions
from .curvature import CurvatureData
from .grassmann import GeneratorUniverse, GrassmannElement, swap_parity
from .report import CheckResult, compare
from .scalars import GaussianRational, ONE
from .transgression import omega_b1

__all__ = [
    "JetSpace",
    "JetForm",
    "MetricJet",
    "ChernData",
    "connection_and_curvature",
    "theta_a_star",
    "o1_curvature",
    "fubini_study",
    "normal_frame_check",
    "alpha_checks",
    "twisted_tangent_curvature",
    "quotient_metric_curvature",
    "twisted_tangent_check",
    "cycle_form_from_jets",
    "cycle_form_jet_check",
    "round_trip_check",
    "jet_suite",
]

DEFAULT_ORDER = 2

Key = Tuple[int, Tuple[int, ...]]


class JetSpace:
    """Variables and truncation order for a base of dimension ``n`` and rank ``r``."""

    def __init__(self, n: int, r: int, order: int = DEFAULT_ORDER):
        if order < 2:
            raise ValueError(f"jet order must be >= 2, got {order}")
        self.universe = GeneratorUniverse(n, r)
        self.n = n
        self.r = r
        self.order = order
        self.nvars = self.universe.size
        self.zero_exps = (0,) * self.nvars

    def __eq__(self, other):
        return isinstance(other, JetSpace) and (self.n, self.r, self.order) == (other.n, other.r, other.order)

    def __hash__(self):
        return hash((self.n, self.r, self.order))

    def zero(self) -> "JetForm":
        return JetForm(self, {})

    def const(self, c) -> "JetForm":
        c = GaussianRational.coerce(c)
        return JetForm(self, {(0, self.zero_exps): c} if c else {})

    def one(self) -> "JetForm":
        return self.const(1)

    def var(self, bit: int) -> "JetForm":
        e = list(self.zero_exps)
        e[bit] = 1
        return JetForm(self, {(0, tuple(e)): ONE})

    def x(self, lam):
        return self.var(self.universe.xi_bit(lam))

    def xbar(self, lam):
        return self.var(self.universe.xib_bit(lam))

    def z(self, j):
        """``z_1 = 1`` by convention; ``z_j`` for ``j >= 2`` is a fiber variable."""
        return self.one() if j == 1 else self.var(self.universe.zeta_bit(j))

    def zbar(self, j):
        return self.one() if j == 1 else self.var(self.universe.zetab_bit(j))


class JetForm:
    """Form with truncated polynomial coefficients: ``{(mask, exps): coeff}``."""

    __slots__ = ("space", "terms")

    def __init__(self, space: JetSpace, terms: Dict[Key, GaussianRational]):
        self.space = space
        self.terms = terms

    def __add__(self, other):
        if not isinstance(other, JetForm):
            other = self.space.const(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            if s is None:
                out[k] = c
            else:
                s = s + c
                if s:
                    out[k] = s
                else:
                    del out[k]
        return JetForm(self.space, out)

    __radd__ = __add__

    def __neg__(self):
        return JetForm(self.space, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, JetForm):
            other = self.space.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, JetForm):
            c = GaussianRational.coerce(other)
            if not c:
                return self.space.zero()
            return JetForm(self.space, {k: v * c for k, v in self.terms.items()})
        K = self.space.order
        left = [(m, e, sum(e), c) for (m, e), c in self.terms.items()]
        right = [(m, e, sum(e), c) for (m, e), c in other.terms.items()]
        out: Dict[Key, GaussianRational] = {}
        for m1, e1, d1, c1 in left:
            for m2, e2, d2, c2 in right:
                if m1 & m2 or d1 + d2 > K:
                    continue
                c = c1 * c2
                if swap_parity(m1, m2):
                    c = -c
                key = (m1 | m2, tuple(a + b for a, b in zip(e1, e2)))
                s = out.get(key)
                out[key] = c if s is None else s + c
        return JetForm(self.space, {k: v for k, v in out.items() if v})

    def __rmul__(self, other):
        # only scalars reach here
        return self.__mul__(other)

    def __bool__(self):
        return bool(self.terms)

    def _differentiate(self, parity: int) -> "JetForm":
        out: Dict[Key, GaussianRational] = {}
        for (m, e), c in self.terms.items():
            for v, p in enumerate(e):
                if p == 0 or v % 2 != parity:
                    continue
                gen = 1 << v
                if m & gen:
                    continue
                cc = c * p
                if swap_parity(gen, m):
                    cc = -cc
                ne = e[:v] + (p - 1,) + e[v + 1:]
                key = (m | gen, ne)
                s = out.get(key)
                out[key] = cc if s is None else s + cc
        return JetForm(self.space, {k: v for k, v in out.items() if v})

    def d_prime(self) -> "JetForm":
        """Holomorphic exterior derivative."""
        return self._differentiate(0)

    def d_dbar(self) -> "JetForm":
        """Antiholomorphic exterior derivative times ``i/2pi``."""
        return self._differentiate(1)

    def d(self) -> "JetForm":
        return self.d_prime() + self.d_dbar()

    def at_origin(self) -> GrassmannElement:
        z = self.space.zero_exps
        return GrassmannElement(self.space.universe, {m: c for (m, e), c in self.terms.items() if e == z})

    def on_fiber(self) -> "JetForm":
        """Restriction of the coefficients to ``x = 0`` (form part untouched)."""
        nb = 2 * self.space.n
        return JetForm(self.space, {(m, e): c for (m, e), c in self.terms.items() if not any(e[:nb])})

    def truncate(self, degree: int) -> "JetForm":
        return JetForm(self.space, {(m, e): c for (m, e), c in self.terms.items() if sum(e) <= degree})

    def constant_term(self) -> GaussianRational:
        return self.terms.get((0, self.space.zero_exps), GaussianRational(0))

    def witness(self) -> str:
        if not self.terms:
            return ""
        (m, e), c = min(self.terms.items(), key=lambda kv: (sum(kv[0][1]), kv[0]))
        u = self.space.universe
        names = [u.generator_name(b) for b in range(m.bit_length()) if m >> b & 1]
        mono = "*".join(f"v{v}^{p}" for v, p in enumerate(e) if p)
        return f"({c})*{'*'.join(names) or '1'}*[{mono or '1'}]"

    def __repr__(self):
        return f"JetForm({len(self.terms)} terms)"


Matrix = List[List[JetForm]]


def _matmul(A: Matrix, B: Matrix, zero: JetForm) -> Matrix:
    rows, inner, cols = len(A), len(B), len(B[0])
    return [
        [sum((A[i][t] * B[t][j] for t in range(inner) if A[i][t] and B[t][j]), zero) for j in range(cols)]
        for i in range(rows)
    ]


def _transpose(A: Matrix) -> Matrix:
    return [list(row) for row in zip(*A)]


def _map(A: Matrix, f) -> Matrix:
    return [[f(x) for x in row] for row in A]


def _reciprocal(f: JetForm) -> JetForm:
    """``1/f`` for a scalar jet with constant term 1 (geometric series)."""
    space = f.space
    if f.constant_term() != GaussianRational(1):
        raise ValueError("reciprocal needs constant term 1")
    y = f - 1
    out, power = space.one(), space.one()
    for _ in range(space.order):
        power = power * (-y)
        out = out + power
    return out


def _log(f: JetForm) -> JetForm:
    """``log f`` for a scalar jet with constant term 1 (Mercator series)."""
    space = f.space
    if f.constant_term() != GaussianRational(1):
        raise ValueError("log needs constant term 1")
    y = f - 1
    out, power = space.zero(), space.one()
    for k in range(1, space.order + 1):
        power = power * y
        out = out + power * Fraction((-1) ** (k + 1), k)
    return out


def _matrix_inverse(H: Matrix) -> Matrix:
    """Neumann series for a matrix jet equal to the identity at the origin."""
    size = len(H)
    space = H[0][0].space
    X = [[H[i][j] - (1 if i == j else 0) for j in range(size)] for i in range(size)]
    for i in range(size):
        for j in range(size):
            if X[i][j].constant_term():
                raise ValueError("matrix inverse needs H(0) = identity")
    ident = [[space.one() if i == j else space.zero() for j in range(size)] for i in range(size)]
    out, power = ident, ident
    minus_X = _map(X, lambda v: -v)
    for _ in range(space.order):
        power = _matmul(power, minus_X, space.zero())
        out = [[out[i][j] + power[i][j] for j in range(size)] for i in range(size)]
    return out


class MetricJet:
    """Metric matrix ``H_ij = <e_i*, e_j*>`` of the dual frame as a jet in ``x``."""

    def __init__(self, space: JetSpace, H: Matrix, data: Optional[CurvatureData] = None):
        self.space = space
        self.H = H
        self.data = data

    @classmethod
    def from_curvature(
        cls,
        data: CurvatureData,
        order: int = DEFAULT_ORDER,
        linear: Optional[Dict[Tuple[int, int, int], object]] = None,
    ) -> "MetricJet":
        """Normal frame ``H_ij = delta_ij - sum gamma[l,m,j,i] x_l xbar_m``.

        ``linear`` maps ``(i, j, l)`` to a coefficient ``b``: adds ``b x_l`` to
        ``H_ij`` and ``conj(b) xbar_l`` to ``H_ji``, which breaks normality.
        """
        space = JetSpace(data.n, data.r, order)
        r = data.r
        H = [[space.one() if i == j else space.zero() for j in range(r)] for i in range(r)]
        for (lam, mu, j, i), g in data.gamma.items():
            H[i - 1][j - 1] = H[i - 1][j - 1] - space.x(lam) * space.xbar(mu) * g
        for (i, j, lam), b in (linear or {}).items():
            b = GaussianRational.coerce(b)
            H[i - 1][j - 1] = H[i - 1][j - 1] + space.x(lam) * b
            H[j - 1][i - 1] = H[j - 1][i - 1] + space.xbar(lam) * b.conjugate()
        return cls(space, H, data)

    @property
    def r(self):
        return self.space.r

    def a(self) -> List[JetForm]:
        return [self.space.z(j) for j in range(1, self.r + 1)]

    def abar(self) -> List[JetForm]:
        return [self.space.zbar(j) for j in range(1, self.r + 1)]

    def norm_squared(self) -> JetForm:
        """``N = |a|^2 = sum a_i H_ij abar_j``."""
        a, ab = self.a(), self.abar()
        s = self.space
        return sum((a[i] * self.H[i][j] * ab[j] for i in range(self.r) for j in range(self.r)), s.zero())


@dataclass
class ChernData:
    """Connection ``A`` with ``d'H = A H`` and curvature ``Theta``.

    ``theta`` is in column convention: ``Theta e_k* = sum_j theta[j][k] e_j*``,
    matching the curvature matrix ``c_jk``.
    """

    A: Matrix
    theta_row: Matrix

    @property
    def theta(self) -> Matrix:
        return _transpose(self.theta_row)


def connection_and_curvature(metric) -> ChernData:
    """``A = d'H H^-1`` and ``Theta = d''A`` (normalized)."""
    H = metric.H if isinstance(metric, MetricJet) else metric
    space = H[0][0].space
    dH = _map(H, JetForm.d_prime)
    A = _matmul(dH, _matrix_inverse(H), space.zero())
    return ChernData(A, _map(A, JetForm.d_dbar))


def _theta_powers(theta: Matrix, q: int, space: JetSpace) -> Matrix:
    size = len(theta)
    out = [[space.one() if i == j else space.zero() for j in range(size)] for i in range(size)]
    for _ in range(q):
        out = _matmul(theta, out, space.zero())
    return out


def theta_a_star(q: int, metric: MetricJet, chern: ChernData = None) -> JetForm:
    """``<Theta^q a*, a*> / |a*|^2`` as a jet on ``P(E)``."""
    space = metric.space
    chern = chern or connection_and_curvature(metric)
    a, ab = metric.a(), metric.abar()
    Tq = _theta_powers(chern.theta, q, space)
    r = metric.r
    v = [sum((Tq[i][k] * a[k] for k in range(r)), space.zero()) for i in range(r)]
    num = sum((v[i] * metric.H[i][j] * ab[j] for i in range(r) for j in range(r)), space.zero())
    return num * _reciprocal(metric.norm_squared())


def o1_curvature(metric: MetricJet) -> JetForm:
    """Curvature of ``O_E(1)``: ``(i/2pi) d'd'' log |a|^2``."""
    return _log(metric.norm_squared()).d_dbar().d_prime()


def fubini_study(space: JetSpace) -> JetForm:
    """``(i/2pi) d'd'' log(1 + |z|^2)`` on the fiber chart."""
    N = space.one()
    for j in range(2, space.r + 1):
        N = N + space.z(j) * space.zbar(j)
    return _log(N).d_dbar().d_prime()


# -- checks ------------------------------------------------------------------


def _params(metric: MetricJet, **extra):
    p = {"r": metric.r, "n": metric.space.n, "order": metric.space.order}
    p.update(extra)
    return p


def round_trip_check(metric: MetricJet) -> List[CheckResult]:
    """Curvature at the center reproduces ``c_jk``; ``d'A = A ^ A`` holds."""
    chern = connection_and_curvature(metric)
    space = metric.space
    C = metric.data.matrix
    out = []
    for j in range(metric.r):
        for k in range(metric.r):
            out.append(
                compare("curvature round trip", _params(metric, j=j + 1, k=k + 1),
                        chern.theta[j][k].at_origin(), C.full[j][k])
            )
    AA = _matmul(chern.A, chern.A, space.zero())
    keep = space.order - 2
    for i in range(metric.r):
        for j in range(metric.r):
            diff = (chern.A[i][j].d_prime() - AA[i][j]).truncate(keep)
            out.append(compare("structure equation d'A = A^A", _params(metric, i=i + 1, j=j + 1), diff, space.zero()))
    return out


def normal_frame_check(metric: MetricJet) -> List[CheckResult]:
    """``d Theta`` and ``(i/2pi) d'd'' Theta`` vanish at the center."""
    chern = connection_and_curvature(metric)
    zero = metric.space.universe.zero()
    out = []
    for j in range(metric.r):
        for k in range(metric.r):
            T = chern.theta[j][k]
            p = _params(metric, j=j + 1, k=k + 1)
            out.append(compare("curvature is closed at the center", p, T.d().at_origin(), zero))
            out.append(compare("d'd'' of curvature vanishes at the center", p, T.d_dbar().d_prime().at_origin(), zero))
    return out


def alpha_checks(metric: MetricJet, fiber_degree: int = 2) -> List[CheckResult]:
    """``alpha(0) = Omega - c_11`` and ``alpha = Omega_FS - Theta^1 a*`` over
    ``x = 0`` up to ``fiber_degree`` in the jet variables."""
    C = metric.data.matrix
    u = metric.space.universe
    alpha = o1_curvature(metric)
    out = [compare("O(1) curvature at the center", _params(metric), alpha.at_origin(), u.omega() - C.entry(1, 1))]
    if metric.space.order < fiber_degree + 2:
        metric = MetricJet.from_curvature(metric.data, fiber_degree + 2)
        alpha = o1_curvature(metric)
    space = metric.space
    keep = fiber_degree
    lhs = alpha.on_fiber().truncate(keep)
    rhs = (fubini_study(space) - theta_a_star(1, metric)).on_fiber().truncate(keep)
    out.append(compare("O(1) curvature on the fiber", _params(metric, degree=keep), lhs, rhs))
    return out


def twisted_tangent_curvature(metric: MetricJet, chern: ChernData = None) -> Matrix:
    """Quotient formula ``P Theta P* - P (nabla' iota) ^ iota* (d'' P*)``.

    Frames: ``e_1*..e_r*`` for ``E*``, ``a`` for the tautological line and
    ``d/dz_j (x) a`` (``j >= 2``) for the quotient.  Column convention.
    """
    space = metric.space
    r = metric.r
    chern = chern or connection_and_curvature(metric)
    H = metric.H
    a, ab = metric.a(), metric.abar()
    N = metric.norm_squared()
    invN = _reciprocal(N)
    zero = space.zero()
    # P : E* -> T, rows j = 2..r
    P = [[(-a[j] if k == 0 else (space.one() if k == j else zero)) for k in range(r)] for j in range(1, r)]
    # <e_k, a> = sum_i H_ki abar_i
    pair = [sum((H[k][i] * ab[i] for i in range(r)), zero) for k in range(r)]
    # P* column k = e_k - (<e_k, a>/N) a
    Pstar = [
        [(space.one() if i == k else zero) - pair[k] * invN * a[i] for k in range(1, r)]
        for i in range(r)
    ]
    iota_star = [pair[k] * invN for k in range(r)]
    A_col = _transpose(chern.A)
    dN_over_N = N.d_prime() * invN
    nabla_iota = [
        a[i].d_prime() + sum((A_col[i][k] * a[k] for k in range(r)), zero) - a[i] * dN_over_N
        for i in range(r)
    ]
    first = _matmul(_matmul(P, chern.theta, zero), Pstar, zero)
    P_nabla = [sum((P[j][i] * nabla_iota[i] for i in range(r)), zero) for j in range(r - 1)]
    dbarPstar = _map(Pstar, JetForm.d_dbar)
    second_factor = [sum((iota_star[i] * dbarPstar[i][k] for i in range(r)), zero) for k in range(r - 1)]
    return [
        [first[j][k] - P_nabla[j] * second_factor[k] for k in range(r - 1)]
        for j in range(r - 1)
    ]


def quotient_metric_curvature(metric: MetricJet) -> Matrix:
    """Chern curvature of the quotient metric in the frame ``d/dz_j (x) a``."""
    space = metric.space
    r = metric.r
    H = metric.H
    a, ab = metric.a(), metric.abar()
    zero = space.zero()
    invN = _reciprocal(metric.norm_squared())
    left = [sum((H[j][i] * ab[i] for i in range(r)), zero) for j in range(r)]
    right = [sum((a[i] * H[i][k] for i in range(r)), zero) for k in range(r)]
    G = [[H[j][k] - left[j] * right[k] * invN for k in range(1, r)] for j in range(1, r)]
    return connection_and_curvature(G).theta


def twisted_tangent_check(metric: MetricJet) -> List[CheckResult]:
    """Both quotient routes give ``c_jk + zeta_j zetab_k`` at the center."""
    u = metric.space.universe
    C = metric.data.matrix
    quot = twisted_tangent_curvature(metric)
    gram = quotient_metric_curvature(metric)
    out = []
    trace = u.zero()
    for j in range(2, metric.r + 1):
        for k in range(2, metric.r + 1):
            expected = C.entry(j, k) + u.fiber_pair(j, k)
            p = _params(metric, j=j, k=k)
            out.append(compare("quotient curvature formula", p, quot[j - 2][k - 2].at_origin(), expected))
            out.append(compare("quotient metric curvature", p, gram[j - 2][k - 2].at_origin(), expected))
        trace = trace + quot[j - 2][j - 2].at_origin()
    from .transgression import phi

    out.append(compare("quotient curvature trace vs deformed determinant at u=0", _params(metric),
                       trace, phi(1, C).evaluate(0)))
    return out


def cycle_form_from_jets(d: int, metric: MetricJet) -> GrassmannElement:
    """Right-hand side for ``Omega_{d+1,1}`` assembled from jets at the center."""
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    chern = connection_and_curvature(metric)
    T = {b: theta_a_star(b, metric, chern) for b in range(0, d + 2)}
    alpha = o1_curvature(metric)
    out = T[d].d_dbar().d_prime().at_origin()
    out = out + T[d + 1].at_origin() + alpha.at_origin() * T[d].at_origin()
    for B in enumerate_compositions(d):
        m = B.length
        if m < 2:
            continue
        term = T[B[0]].d_dbar().at_origin()
        for b in B.parts[1:-1]:
            term = term * T[b].at_origin()
        term = term * T[B[-1]].d_prime().at_origin()
        out = out + term * ((-1) ** m)
    return out


def cycle_form_jet_check(d: int, metric: MetricJet) -> CheckResult:
    return compare(
        "cycle form from jets",
        _params(metric, d=d),
        omega_b1(d + 1, metric.data.matrix),
        cycle_form_from_jets(d, metric),
    )


def jet_suite(data: CurvatureData, degree_max: int = 2, order: int = DEFAULT_ORDER) -> List[CheckResult]:
    metric = MetricJet.from_curvature(data, order)
    out = round_trip_check(metric)
    out += normal_frame_check(metric)
    out += alpha_checks(metric)
    out += twisted_tangent_check(metric)
    out += [cycle_form_jet_check(d, metric) for d in range(1, degree_max + 1)]
    return out
