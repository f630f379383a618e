"""Small hand-checkable values for each module."""

from fractions import Fraction
from math import factorial, prod

import pytest

from bottchern import CurvatureData, GaussianRational, GeneratorUniverse, UPoly, conjugate, u_transgress
from bottchern.combinatorics import Partition, curly_h, enumerate_compositions, enumerate_partitions, harmonic
from bottchern.curvature import c_prime, chern_dual, det_d, theta_power_point
from bottchern.grassmann import bidegree_filter
from bottchern.jets import MetricJet, connection_and_curvature, o1_curvature, twisted_tangent_curvature
from bottchern.pushforward import FiberRational, monomial_integral, pushforward, s_bc_direct
from bottchern.series import SplitBundleSpec, height_secondary_term, segre_series
from bottchern.transgression import (
    generating_core_check,
    omega_b1,
    omega_ps,
    phi,
    full_degree_lhs,
    full_degree_rhs,
    bott_chern_form,
)

from .conftest import make_data


def test_sign_of_a_reordered_product():
    u = GeneratorUniverse(1, 3)
    assert not u.fiber_pair(2, 2) * u.fiber_pair(2, 3)
    assert u.fiber_pair(2, 3) * u.fiber_pair(3, 2) == -(u.fiber_pair(2, 2) * u.fiber_pair(3, 3))


def test_conjugation_values():
    u = GeneratorUniverse(1, 2)
    assert conjugate(u.base_pair(1, 1)) == u.base_pair(1, 1)
    assert conjugate(u.scalar(GaussianRational(0, 1))) == u.scalar(GaussianRational(0, -1))


def test_filters():
    u = GeneratorUniverse(2, 3)
    om = u.omega()
    assert bidegree_filter(om, 0, 2) == om
    assert not bidegree_filter(om, 2, 0)


def test_u_transgression_values():
    u = GeneratorUniverse(1, 2)
    g = u.omega()
    assert not u_transgress(UPoly.constant(u.one()))
    # integral of (p(u) - p(0))/u with p = u g is g
    assert u_transgress(UPoly(u, [u.zero(), g])) == g
    for s in range(1, 11):
        assert u_transgress(UPoly.one_minus_u_power(u, s, g)) == g * -harmonic(s)


@pytest.mark.parametrize("s", range(1, 9))
def test_composition_reciprocal_identity(s):
    total = sum(
        (Fraction(1, factorial(c.length) * prod(c.parts)) for c in enumerate_compositions(s)),
        Fraction(0),
    )
    assert total == 1


def test_partition_values():
    assert [c.parts for c in enumerate_compositions(3)] == [(1, 1, 1), (1, 2), (2, 1), (3,)]
    assert len(enumerate_compositions(6)) == 32
    parts = enumerate_partitions(3, 3)
    assert [p.parts for p in parts] == [(1, 1, 1), (1, 2), (3,)]
    assert [p.height_factorial for p in parts] == [6, 1, 1]
    assert Partition((1, 1, 2, 2, 2)).height == (2, 3)
    assert Partition((1, 1, 2, 2, 2)).height_factorial == 12
    assert [p.parts for p in enumerate_partitions(1)] == [(1,)]


def test_harmonic_values():
    assert harmonic(1) == 1 and harmonic(3) == Fraction(11, 6)
    assert curly_h(0, 4) == 0 and curly_h(1, 1) == 1
    for a in range(1, 7):
        assert curly_h(a, a) == sum((harmonic(i) for i in range(1, a + 1)), Fraction(0))


def test_det_values():
    C = make_data(3, 2, "det").matrix
    assert det_d(C.full, 0) == C.universe.one()
    assert det_d(C.full, 1) == C.full[0][0] + C.full[1][1] + C.full[2][2]


def test_phi_values():
    C = make_data(2, 1, "phi").matrix
    u = C.universe
    assert phi(0, C) == UPoly.constant(u.one())
    assert phi(1, C) == UPoly(u, [C.entry(2, 2) + u.omega(), -u.omega()])
    flat = CurvatureData(3, 2).matrix
    fu = flat.universe
    pairs = [[fu.fiber_pair(j, k) for k in range(2, 4)] for j in range(2, 4)]
    for d in range(3):
        assert phi(d, flat) == UPoly.one_minus_u_power(fu, d, det_d(pairs, d))


def test_cycle_form_values():
    C = make_data(3, 2, "cyc").matrix
    om = C.universe.omega()
    assert omega_b1(1, C) == om
    for p in range(1, 5):
        assert omega_ps(p, p, C) == om ** p * Fraction((-1) ** (p - 1), p)
    flat = CurvatureData(3, 2).matrix
    assert not omega_b1(2, flat) and not omega_b1(3, flat)


def test_reduced_chern_values():
    C = make_data(3, 2, "cp").matrix
    assert c_prime(0, C) == C.universe.one()
    assert c_prime(1, C) == chern_dual(1, C) - C.entry(1, 1)
    D = make_data(2, 2, "cp").matrix
    assert not c_prime(2, D) and not c_prime(3, D)
    assert theta_power_point(0, C) == C.universe.one()
    assert theta_power_point(1, C) == C.entry(1, 1)
    assert not theta_power_point(2, CurvatureData(3, 2).matrix)


def test_flat_generating_series_and_full_degree():
    flat = CurvatureData(3, 2).matrix
    om = flat.universe.omega()
    assert all(res.passed for res in generating_core_check(4, flat))
    for d in range(0, 5):
        assert bott_chern_form(d, flat) == om ** d * (-harmonic(d) if d else 0)
    for d in range(1, 4):
        for f in range(1, 3):
            expected = om ** 2 * -harmonic(f) if f == d else flat.universe.zero()
            assert full_degree_lhs(d, f, flat) == expected == full_degree_rhs(d, f, flat)


def test_fiber_integral_values():
    assert monomial_integral((0, 0, 0)) == 1
    assert monomial_integral((1, 0)) == Fraction(1, 2)
    # 2! * 2! * 1! * 0! / 5!
    assert monomial_integral((2, 1, 0)) == Fraction(1, 30)
    u = GeneratorUniverse(1, 3)
    one = u.one()
    assert pushforward(FiberRational(u, {(2, (1, 0, 0), (0, 1, 0)): one})) == u.zero()
    assert pushforward(FiberRational.omega(u, 2)) == one
    assert not pushforward(FiberRational(u, {(1, (1, 0, 0), (1, 0, 0)): one}))


def test_generalized_segre_values():
    C = make_data(3, 2, "sbc").matrix
    assert s_bc_direct(0, 0, C) == C.universe.one()
    flat = CurvatureData(3, 2).matrix
    assert not s_bc_direct(1, 0, flat) and not s_bc_direct(0, 2, flat)


def test_jet_values():
    flat = MetricJet.from_curvature(CurvatureData(2, 1))
    chern = connection_and_curvature(flat)
    assert all(not x for row in chern.A for x in row)
    assert all(not x for row in chern.theta for x in row)
    assert o1_curvature(flat).at_origin() == flat.space.universe.omega()
    quot = twisted_tangent_curvature(flat)
    assert quot[0][0].at_origin() == flat.space.universe.fiber_pair(2, 2)
    gamma = GaussianRational(Fraction(2, 3), Fraction(-1, 5))
    line = MetricJet.from_curvature(CurvatureData(1, 1, {(1, 1, 1, 1): gamma}))
    theta = connection_and_curvature(line).theta[0][0].at_origin()
    assert theta == line.space.universe.base_pair(1, 1) * gamma


def test_series_values():
    s = segre_series(4)
    g = s - s.const(1)
    assert s.const(1).invert() == s.const(1)
    assert (s.const(1) + g).invert() * (s.const(1) + g) == s.const(1)
    assert g.exp() * (-g).exp() == s.const(1)


def test_secondary_term_of_trivial_bundles():
    for n in range(1, 4):
        assert height_secondary_term(SplitBundleSpec((0, 0), n)) == 0
    assert height_secondary_term(SplitBundleSpec((0, 0, 0), 0)) == Fraction(5, 4)
