from fractions import Fraction
from math import factorial

import pytest

from qtsf.errors import IdentityMismatch
from qtsf.identities import (b_mu_k, butler_split, divided_difference, expected_dimension, lagrange_limit_check,
                             nonempty_subsets, phi_epsilon, phi_family, phi_k, phi_mu, phi_superset,
                             phi_superset_routes, pieri_del_p1, pieri_phi_expansion, positivity_audit,
                             sf_dimension_limit, verify_butler, verify_down_arrow_symmetry, verify_nabla_family,
                             verify_pieri, verify_predecessor_expansion, verify_superset_routes,
                             verify_union_and_inverse)
from qtsf.macdonald import tilde_H
from qtsf.partitions import b_mu, partitions, t_mu
from qtsf.qtalgebra import ONE, Q, T, QTRat, is_positive_integral
from qtsf.symfunc import del_p1, flip_char

from fixtures import FLIP_22_PHI_32, FLIP_31_PHI_32, PHI_32, PHI_321_110, PHI_321_111, S


def test_phi_32_two_routes():
    assert phi_mu((3, 2)) == PHI_32
    assert butler_split((3, 1), (2, 2)).Phi == PHI_32


def test_phi_32_flips():
    assert flip_char(PHI_32, (3, 1)) == FLIP_31_PHI_32
    assert flip_char(PHI_32, (2, 2)) == FLIP_22_PHI_32
    assert PHI_32 + FLIP_31_PHI_32 == tilde_H((3, 1))


def test_single_corner_is_the_predecessor():
    assert phi_mu((2, 2)) == tilde_H((2, 1))


def test_three_corner_fixtures():
    assert phi_k((3, 2, 1), 3) == PHI_321_111
    T3 = QTRat(t_mu((2, 2, 1)).to_rat())
    assert phi_epsilon((3, 2, 1), (1, 1, 0)) == PHI_321_110
    assert phi_k((3, 2, 1), 2) == PHI_321_110.scale(T3)
    assert phi_superset((3, 2, 1), (1, 2)) == PHI_321_110 + PHI_321_111


def test_family_object():
    fam = phi_family((3, 2, 1))
    assert fam.phi_mu == phi_mu((3, 2, 1))
    assert len(fam.phi_k) == 3


def test_superset_routes_individually():
    routes = phi_superset_routes((3, 2, 1), (1, 3))
    assert len(set(map(lambda f: f.to_json().__repr__(), routes.values()))) == 1


def test_divided_difference_of_linear_data():
    ys = [QTRat(1), QTRat(2), QTRat(4)]
    # weighted form (y0 A0 - y1 A1)/(y0 - y1)
    assert divided_difference(ys[:2], [S(2), S(2).scale(3)]) == S(2).scale(5)
    # constant data is reproduced; A(y) = y gives y0 + y1 + y2
    assert divided_difference(ys, [S(2)] * 3) == S(2)
    assert divided_difference(ys, [S(2).scale(y) for y in ys]) == S(2).scale(7)


def test_invalid_subsets():
    with pytest.raises(ValueError):
        phi_superset((3, 2), (3,))
    with pytest.raises(ValueError):
        phi_superset((3, 2), ())


def test_pieri_small():
    assert pieri_del_p1((2,)) == S(1).scale(1 + Q)
    assert pieri_del_p1((2, 2)) == tilde_H((2, 1)).scale(QTRat(b_mu((2, 2)).to_rat()))
    assert b_mu_k((2, 2), 1) == (1 + T) * (1 + Q)
    assert is_positive_integral(b_mu_k((3, 2, 1), 3))[0]


@pytest.mark.parametrize("mu", [m for n in range(1, 6) for m in partitions(n)])
def test_verifiers(mu):
    reports = []
    for fn in (verify_pieri, verify_nabla_family, verify_down_arrow_symmetry, verify_predecessor_expansion,
               verify_union_and_inverse, verify_superset_routes):
        out = fn(mu)
        reports.extend(out if isinstance(out, list) else [out])
    assert all(r.passed for r in reports), [r.to_json() for r in reports if not r.passed]


def test_butler_small():
    assert all(r.passed for r in verify_butler(4))


def test_dimension_limits():
    for S_ in nonempty_subsets(3):
        assert sf_dimension_limit((3, 2, 1), S_) == QTRat(Fraction(factorial(5), len(S_)))
    assert expected_dimension((3, 2, 1), (1, 2)) == 60


def test_lagrange_limit():
    assert lagrange_limit_check([1, 3, 7]) == QTRat(Fraction(1, 3))
    assert lagrange_limit_check([-2, 5, 1, 4]) == QTRat(Fraction(1, 4))
    with pytest.raises(ValueError):
        lagrange_limit_check([0, 1])
    with pytest.raises(ValueError):
        lagrange_limit_check([2, 2])


def test_positivity_audit_small():
    assert positivity_audit(3) == []
