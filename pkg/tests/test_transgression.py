import pytest

from bottchern import CurvatureData, conjugate
from bottchern.combinatorics import harmonic
from bottchern.transgression import (
    curve_formula,
    first_forms,
    fiber_part,
    generating_core_check,
    high_degree_parts,
    signed_cycle_products,
    omega_ps,
    omega_ps_partition,
    phi,
    phi_by_partitions,
    full_degree_check,
    full_degree_coefficient,
    phi_by_compositions,
    special_cases_check,
    surface_formula,
    bott_chern_form,
    tilde_c_oracle,
)

GRID = [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1)]


@pytest.mark.parametrize("r,n", GRID)
def test_closed_form_matches_oracle(data_factory, r, n):
    C = data_factory(r, n, 7).matrix
    for d in range(5):
        assert bott_chern_form(d, C) == tilde_c_oracle(d, C), (r, n, d)


@pytest.mark.parametrize("r,n", GRID)
def test_phi_three_ways(data_factory, r, n):
    C = data_factory(r, n, 8).matrix
    for d in range(4):
        direct = phi(d, C)
        assert phi_by_compositions(d, C) == direct
        assert phi_by_partitions(d, C) == direct


@pytest.mark.parametrize("r,n", [(2, 2), (3, 2)])
def test_cycle_forms(data_factory, r, n):
    C = data_factory(r, n, 9).matrix
    omega = C.universe.omega()
    for p in range(1, 6):
        for s in range(1, p + 1):
            assert omega_ps_partition(p, s, C) == omega_ps(p, s, C)
    for d in range(1, 5):
        assert signed_cycle_products(d, C) == omega ** d


def test_known_low_degrees(data_factory):
    C = data_factory(3, 2, 10).matrix
    assert not bott_chern_form(0, C)
    assert bott_chern_form(1, C) == -C.universe.omega()


@pytest.mark.parametrize("r,n", [(2, 1), (3, 2)])
def test_flat_bundle(r, n):
    C = CurvatureData(r, n).matrix
    omega = C.universe.omega()
    for d in range(1, 5):
        assert bott_chern_form(d, C) == omega ** d * -harmonic(d)


@pytest.mark.parametrize("r,n", [(2, 2), (3, 1), (4, 2)])
def test_generating_series(data_factory, r, n):
    C = data_factory(r, n, 11).matrix
    assert all(res.passed for res in generating_core_check(4, C))


@pytest.mark.parametrize("r,n", [(2, 2), (3, 2), (4, 1)])
def test_full_relative_degree(data_factory, r, n):
    C = data_factory(r, n, 12).matrix
    for d in range(1, 5):
        for f in range(1, min(d, r - 1) + 1):
            res = full_degree_check(d, f, C)
            assert res.passed, res.witness


def test_full_degree_coefficient_at_f_equals_d():
    for r in range(2, 6):
        for d in range(1, r):
            assert full_degree_coefficient(d, d, r) == -harmonic(d)


@pytest.mark.parametrize("r,n", [(2, 1), (3, 1), (3, 2), (4, 2)])
def test_special_cases(data_factory, r, n):
    C = data_factory(r, n, 13).matrix
    for d in range(1, 4):
        results = special_cases_check(d, C)
        assert results and all(res.passed for res in results), [res.witness for res in results]


def test_high_degree_parts_match_oracle(data_factory):
    C = data_factory(4, 2, 14).matrix
    for d in range(1, 4):
        oracle = tilde_c_oracle(d, C)
        for f, value in high_degree_parts(d, C).items():
            assert fiber_part(oracle, f) == value


def test_curve_residual_is_the_exact_term(data_factory):
    C = data_factory(3, 1, 15).matrix
    fc = curve_formula(2, C)
    assert fc.residual == fc.exact_term
    assert first_forms(C)[2].residual == first_forms(C)[2].exact_term


def test_surface_residual_is_only_reported(data_factory):
    # the discrepancy lives in bidegrees that d'- and d''-exact terms can reach
    C = data_factory(2, 2, 16).matrix
    fc = surface_formula(2, C)
    assert fc.residual_bidegrees()


@pytest.mark.parametrize("r,n", [(2, 2), (3, 2)])
def test_hermitian_data_gives_real_forms(data_factory, r, n):
    C = data_factory(r, n, 17, hermitian=True).matrix
    for d in range(4):
        x = bott_chern_form(d, C)
        assert conjugate(x) == x
