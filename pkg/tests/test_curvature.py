from itertools import combinations, permutations

import pytest

from bottchern.curvature import CurvatureData, chern_dual, det_d, matrix_power, theta_power_point, theta_trace


def _parity(perm):
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


def leibniz_det_d(M, d):
    """Principal minors summed, each by the plain permutation expansion."""
    u = M[0][0].universe
    total = u.zero()
    for J in combinations(range(len(M)), d):
        for perm in permutations(range(d)):
            term = u.one()
            for a in range(d):
                term = term * M[J[a]][J[perm[a]]]
            total = total + term * _parity(perm)
    return total


@pytest.mark.parametrize("r,n", [(2, 1), (3, 2), (4, 2), (3, 3)])
def test_det_d_matches_leibniz(data_factory, r, n):
    C = data_factory(r, n, 0).matrix
    for d in range(r + 1):
        assert det_d(C.full, d) == leibniz_det_d(C.full, d)


def test_det_d_of_identity_counts_minors():
    from math import comb

    from bottchern.grassmann import GeneratorUniverse

    u = GeneratorUniverse(1, 2)
    identity = [[u.one() if i == j else u.zero() for j in range(4)] for i in range(4)]
    for d in range(5):
        assert det_d(identity, d) == u.scalar(comb(4, d))


def test_theta_power_point_is_corner_of_matrix_power(data_factory):
    C = data_factory(3, 2, 1).matrix
    for q in range(4):
        assert theta_power_point(q, C) == matrix_power(C.full, q)[0][0]


def test_newton_identity(data_factory):
    # Newton: c_1 = -theta_1, 2 c_2 = theta_1^2 - theta_2
    C = data_factory(3, 2, 2).matrix
    t1, t2 = theta_trace(1, C), theta_trace(2, C)
    assert chern_dual(1, C) == -t1
    assert chern_dual(2, C) * 2 == t1 * t1 - t2


def test_hermitian_symmetrization(data_factory):
    data = data_factory(3, 2, 3, hermitian=True)
    assert data.is_hermitian()
    with pytest.raises(ValueError):
        CurvatureData(2, 1, {(1, 1, 1, 2): 1}, hermitian=True)
    with pytest.raises(IndexError):
        CurvatureData(2, 1, {(2, 1, 1, 1): 1})


def test_odd_entries_rejected():
    from bottchern.grassmann import GeneratorUniverse

    u = GeneratorUniverse(1, 2)
    with pytest.raises(ValueError):
        det_d([[u.xi(1)]], 1)
