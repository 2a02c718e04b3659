from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings

from qtsf.errors import IntegrityError, SizeGuardError
from qtsf.identities import phi_mu
from qtsf.macdonald import tilde_H
from qtsf.orbit import (BiPoly, BiPolySpace, apolar_inner, bigraded_frobenius, delta_mu, derivative_span,
                        flip_space, intersect, is_flip_palindromic, join, module, ortho_complement_in,
                        verify_nfactorial, verify_sf_dimensions, verify_slice, x_degree_zero_dimension,
                        y_degree_zero_dimension)
from qtsf.partitions import conjugate, multinomial, partitions
from qtsf.qtalgebra import T
from qtsf.symfunc import schur

from fixtures import FLIP_22_PHI_32, FLIP_31_PHI_32, PHI_32
from strategies import partitions_up_to


def x(n, i):
    return BiPoly.variable(n, "x", i)


def y(n, i):
    return BiPoly.variable(n, "y", i)


def test_small_determinants():
    assert delta_mu((1, 1)) == x(2, 2) - x(2, 1)
    assert delta_mu((2,)) == y(2, 2) - y(2, 1)
    d21 = delta_mu((2, 1))
    assert d21.bidegree() == (1, 1)
    assert len(d21.terms) == 6


def test_size_guard():
    with pytest.raises(SizeGuardError):
        delta_mu((4, 3))
    with pytest.raises(SizeGuardError):
        bigraded_frobenius(BiPolySpace.from_polys(6, [BiPoly(6, {(0,) * 12: 1})]))


def test_apolar_pairing():
    assert apolar_inner(x(1, 1), x(1, 1)) == 1
    assert apolar_inner(x(1, 1) * x(1, 1), x(1, 1) * x(1, 1)) == 2
    assert apolar_inner(x(1, 1), y(1, 1)) == 0


@pytest.mark.parametrize("mu,dim", [((1,), 1), ((2, 1), 6), ((2, 2), 24), ((3, 2), 120)])
def test_dimensions(mu, dim):
    assert module(mu).dimension == dim


def test_frobenius_small():
    assert bigraded_frobenius(module((1, 1))).frob == schur(2) + schur(1, 1).scale(T)
    assert bigraded_frobenius(module((2, 1))).frob == tilde_H((2, 1))
    consts = BiPolySpace.from_polys(3, [BiPoly(3, {(0,) * 6: 1})])
    assert bigraded_frobenius(consts).frob == schur(3)


def test_non_invariant_space_is_rejected():
    with pytest.raises(IntegrityError):
        bigraded_frobenius(BiPolySpace.from_polys(2, [x(2, 1)]))


def test_slices():
    for mu in [(2, 1), (1, 1), (3, 1), (2, 2)]:
        assert y_degree_zero_dimension(module(mu)) == multinomial(mu)
        assert x_degree_zero_dimension(module(mu)) == multinomial(conjugate(mu))


def test_intersection_fixtures():
    m31, m22 = module((3, 1)), module((2, 2))
    inter = intersect(m31, m22)
    assert inter.dimension == 12
    assert bigraded_frobenius(inter).frob == PHI_32
    assert intersect(m31, m31) == m31
    assert join(inter, m31) == m31
    f31 = flip_space(inter, delta_mu((3, 1)))
    f22 = flip_space(inter, delta_mu((2, 2)))
    assert ortho_complement_in(inter, m31) == f31
    assert ortho_complement_in(inter, m22) == f22
    assert bigraded_frobenius(f31).frob == FLIP_31_PHI_32
    assert bigraded_frobenius(f22).frob == FLIP_22_PHI_32
    assert bigraded_frobenius(inter).frob + bigraded_frobenius(f31).frob == tilde_H((3, 1))


def test_complement_and_flip_trivialities():
    m = module((2, 1))
    assert ortho_complement_in(m, m).dimension == 0
    d = delta_mu((2, 1))
    consts = BiPolySpace.from_polys(3, [BiPoly(3, {(0,) * 6: 1})])
    assert flip_space(consts, d) == BiPolySpace.from_polys(3, [d])
    assert flip_space(m, d) == m


def test_space_contains():
    m = module((2, 1))
    assert m.contains(delta_mu((2, 1)))
    assert not m.contains(x(3, 1) * x(3, 1))


def test_dimension_reports_321():
    reps = {(r.identity, r.S): r for r in verify_sf_dimensions((3, 2, 1))}
    assert reps[("intersection-dimension", (1, 2, 3))].details["dimension"] == 40
    assert reps[("intersection-dimension", (1, 2))].details["dimension"] == 60
    assert reps[("intersection-dimension", (2,))].details["dimension"] == 120
    assert all(r.passed for r in reps.values())


def test_dimension_reports_32():
    reps = verify_sf_dimensions((3, 2))
    assert [r.details["dimension"] for r in reps] == [24, 24, 12]


@pytest.mark.parametrize("mu", [m for n in range(1, 5) for m in partitions(n)])
def test_module_matches_macdonald(mu):
    rep = verify_nfactorial(mu, frobenius=True)
    assert rep.passed, rep.to_json()
    assert verify_slice(mu).passed


@settings(max_examples=15, deadline=None)
@given(partitions_up_to(4))
def test_module_properties(mu):
    space = module(mu)
    assert is_flip_palindromic(space, mu)
    bf = bigraded_frobenius(space)
    assert bf.check()
    # canonical form does not depend on the spanning set
    basis = space.basis()
    assert BiPolySpace.from_polys(space.n, list(reversed(basis)) + basis[:3]) == space


@settings(max_examples=30, deadline=None)
@given(partitions_up_to(4))
def test_permutation_action_preserves_module(mu):
    space = module(mu)
    n = space.n
    sigma = tuple(list(range(1, n)) + [0])
    assert all(space.contains(p.permute(sigma)) for p in space.basis())
