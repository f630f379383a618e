import pytest

from bottchern.jets import (
    JetSpace,
    MetricJet,
    alpha_checks,
    connection_and_curvature,
    jet_suite,
    normal_frame_check,
    o1_curvature,
    cycle_form_jet_check,
    round_trip_check,
    twisted_tangent_check,
)
from bottchern.transgression import omega_b1


def _ok(results):
    bad = [(res.name, res.params, res.witness) for res in results if not res.passed]
    assert not bad, bad[:3]


@pytest.mark.parametrize("r,n", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_full_jet_suite(data_factory, r, n):
    _ok(jet_suite(data_factory(r, n, 30), degree_max=2))


@pytest.mark.parametrize("r,n", [(2, 2), (3, 2)])
def test_hermitian_jet_suite(data_factory, r, n):
    _ok(jet_suite(data_factory(r, n, 31, hermitian=True), degree_max=2))


def test_truncation_order_does_not_change_center_values(data_factory):
    data = data_factory(3, 2, 32)
    low, high = MetricJet.from_curvature(data, 2), MetricJet.from_curvature(data, 3)
    t_low = connection_and_curvature(low).theta
    t_high = connection_and_curvature(high).theta
    for j in range(3):
        for k in range(3):
            assert t_low[j][k].at_origin() == t_high[j][k].at_origin()
    assert o1_curvature(low).at_origin() == o1_curvature(high).at_origin()
    for d in (1, 2):
        assert cycle_form_jet_check(d, low).passed and cycle_form_jet_check(d, high).passed


def test_alpha_along_the_fiber_needs_a_longer_jet(data_factory):
    # alpha_checks rebuilds the jet when the requested fiber degree exceeds the order
    metric = MetricJet.from_curvature(data_factory(2, 2, 33), 2)
    _ok(alpha_checks(metric, fiber_degree=2))


def test_cycle_form_three_from_jets(data_factory):
    metric = MetricJet.from_curvature(data_factory(3, 2, 34))
    assert cycle_form_jet_check(2, metric).passed
    assert omega_b1(3, metric.data.matrix)


def test_non_normal_frame_is_detected(data_factory):
    data = data_factory(2, 2, 35)
    metric = MetricJet.from_curvature(data, linear={(1, 2, 1): 1})
    failures = [res for res in round_trip_check(metric) + normal_frame_check(metric) if not res.passed]
    assert failures
    assert all(res.witness for res in failures)


def test_quotient_routes(data_factory):
    _ok(twisted_tangent_check(MetricJet.from_curvature(data_factory(3, 1, 36))))


def test_jet_derivatives_are_nilpotent():
    space = JetSpace(1, 2, 3)
    f = space.x(1) * space.xbar(1)
    assert not f.d().d()
    assert f.d_prime().at_origin() == space.universe.zero()
