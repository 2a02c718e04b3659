"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line.

Run directly with ``python3 tests/test_acceptance.py`` or through pytest; the
pytest terminal summary repeats the lines under "acceptance criteria".
"""
import random
import time
from fractions import Fraction
from math import factorial

from qtsf.bh import bh_reassemble
from qtsf.identities import (b_mu_k, butler_split, lagrange_limit_check, nonempty_subsets,
                             phi_epsilon, phi_k, phi_mu, pieri_del_p1, pieri_phi_expansion, positivity_audit,
                             sf_dimension_limit, verify_butler)
from qtsf.macdonald import (at_t1, check_conjugation, check_delta_eigen, check_duality, check_rectangle_recursion,
                            get_table, specialize_t1, tilde_H)
from qtsf.orbit import (bigraded_frobenius, delta_mu, flip_space, intersect, intersect_all, module,
                        ortho_complement_in, predecessor_modules)
from qtsf.partitions import b_mu, corner_data, f_lambda, partitions, t_mu
from qtsf.qtalgebra import QTRat, is_positive_integral
from qtsf.symfunc import del_p1

from fixtures import PHI_32, PHI_321_110, PHI_321_111


def shapes(n_max, n_min=1):
    return [mu for n in range(n_min, n_max + 1) for mu in partitions(n)]


def test_criterion_01_macdonald_tables(acceptance_log):
    start = time.time()
    bad = []
    for n in range(1, 7):
        table = get_table(n)
        for mu in partitions(n):
            for lam in partitions(n):
                k = table.Ktilde[(lam, mu)]
                if not is_positive_integral(k)[0] or k.evaluate(1, 1) != f_lambda(lam):
                    bad.append(("kostka", lam, mu))
            if not check_duality(mu):
                bad.append(("duality", mu))
            if not check_conjugation(mu):
                bad.append(("conjugation", mu))
    elapsed = time.time() - start
    ok = not bad and elapsed < 180
    acceptance_log(1, ok, f"Kostka positivity, K(1,1)=f, duality, conjugation for n<=6 ({elapsed:.1f}s) {bad[:3]}")
    assert ok


def test_criterion_02_t_equals_one(acceptance_log):
    bad = [mu for mu in shapes(6) if at_t1(tilde_H(mu)) != specialize_t1(mu)]
    acceptance_log(2, not bad, f"closed form at t=1 equals H-tilde at t=1 for n<=6 {bad[:3]}")
    assert not bad


def test_criterion_03_phi_fixture(acceptance_log):
    lagrange = phi_mu((3, 2))
    butler = butler_split((3, 1), (2, 2)).Phi
    ok = lagrange == PHI_32 and butler == PHI_32
    acceptance_log(3, ok, "Phi_32 = S4+(t+q)S31+tqS211+q^2S22 by both routes")
    assert ok


def test_criterion_04_three_corner_fixtures(acceptance_log):
    # third corner from the left removes the bottom-row cell, leaving (2, 2, 1)
    T3 = QTRat(t_mu(corner_data((3, 2, 1)).predecessors[2]))
    ok111 = phi_k((3, 2, 1), 3) == PHI_321_111
    ok110 = phi_epsilon((3, 2, 1), (1, 1, 0)) == PHI_321_110 and phi_k((3, 2, 1), 2) == PHI_321_110.scale(T3)
    ok = ok111 and ok110
    acceptance_log(4, ok, f"321 triple piece (leading S5) {ok111}, 110 piece {ok110}")
    assert ok


def test_criterion_05_pieri_agreement(acceptance_log):
    start = time.time()
    bad = []
    for mu in shapes(6):
        direct = del_p1(tilde_H(mu))
        if not (pieri_del_p1(mu) == direct and pieri_phi_expansion(mu) == direct and bh_reassemble(mu) == direct):
            bad.append(mu)
    elapsed = time.time() - start
    ok = not bad and elapsed < 300
    acceptance_log(5, ok, f"four routes to the p1-derivative agree for n<=6 ({elapsed:.1f}s) {bad[:3]}")
    assert ok


def test_criterion_06_pieri_weights(acceptance_log):
    bad = []
    for mu in shapes(8):
        cd = corner_data(mu)
        for k in range(1, cd.m + 2):
            if not is_positive_integral(b_mu_k(mu, k))[0]:
                bad.append((mu, k))
        if b_mu_k(mu, 1) != QTRat(b_mu(mu)):
            bad.append((mu, "first"))
    acceptance_log(6, not bad, f"weights positive for n<=8, first weight equals B_mu {bad[:3]}")
    assert not bad


def test_criterion_07_positivity_audit(acceptance_log):
    violations = []
    for n in range(1, 6):
        violations.extend(positivity_audit(n))
    acceptance_log(7, not violations, f"family and superset positivity for |mu|<=6: {len(violations)} violations")
    assert not violations


def test_criterion_08_dimension_limits(acceptance_log):
    bad = []
    for mu in shapes(7, 2):
        n = sum(mu) - 1
        for S in nonempty_subsets(corner_data(mu).m):
            if sf_dimension_limit(mu, S) != QTRat(Fraction(factorial(n), len(S))):
                bad.append((mu, S))
    rng = random.Random(20240601)
    lemma_bad = []
    for k in range(1, 5):
        for _ in range(5):
            ys = rng.sample([v for v in range(-9, 10) if v], k)
            if lagrange_limit_check(ys) != QTRat(Fraction(1, k)):
                lemma_bad.append(ys)
    ok = not bad and not lemma_bad
    acceptance_log(8, ok, f"limits equal n!/|S| for |mu|<=7 {bad[:3]}; lemma check k<=4 {lemma_bad[:3]}")
    assert ok


def test_criterion_09_orbit_modules(acceptance_log):
    start = time.time()
    dim_bad = [mu for mu in shapes(5) if module(mu).dimension != factorial(sum(mu))]
    frob_shapes = shapes(4) + [(3, 2), (3, 1, 1), (2, 2, 1), (4, 1), (2, 1, 1, 1), (5,), (1, 1, 1, 1, 1)]
    frob_bad = [mu for mu in frob_shapes if bigraded_frobenius(module(mu)).frob != tilde_H(mu)]
    elapsed = time.time() - start
    ok = not dim_bad and not frob_bad and elapsed < 1800
    acceptance_log(9, ok, f"dim M_mu = n! for n<=5, Frobenius = H-tilde ({elapsed:.1f}s) {dim_bad[:3]} {frob_bad[:3]}")
    assert ok


def test_criterion_10_intersections(acceptance_log):
    m31, m22 = module((3, 1)), module((2, 2))
    inter = intersect(m31, m22)
    ok_dim = inter.dimension == 12
    ok_frob = bigraded_frobenius(inter).frob == PHI_32
    ok_122 = ortho_complement_in(inter, m22) == flip_space(inter, delta_mu((2, 2)))
    ok_125 = ortho_complement_in(inter, m31) == flip_space(inter, delta_mu((3, 1)))
    triple = intersect_all(predecessor_modules((3, 2, 1)))
    ok_triple = triple.dimension == 40 and bigraded_frobenius(triple).frob == PHI_321_111
    ok = ok_dim and ok_frob and ok_122 and ok_125 and ok_triple
    acceptance_log(10, ok, f"dim {inter.dimension}, Frobenius {ok_frob}, flips {ok_122}/{ok_125}, "
                           f"triple dim {triple.dimension} Frobenius {ok_triple}")
    assert ok


def test_criterion_11_butler(acceptance_log):
    reports = [r for n in range(2, 7) for r in verify_butler(n)]
    bad = [(r.mu, r.details["nu"]) for r in reports if not r.passed]
    acceptance_log(11, not bad, f"{len(reports)} minimal raising pairs, reconstruction and symmetry {bad[:3]}")
    assert not bad


def test_criterion_12_fragment_operator(acceptance_log):
    bad = [mu for mu in shapes(5) if not check_delta_eigen(mu)]
    acceptance_log(12, not bad, f"difference operator eigenvalue (1-t)(1-q)B_mu for n<=5 {bad[:3]}")
    assert not bad


def test_criterion_13_rectangles(acceptance_log):
    cases = [(r, s) for r in range(1, 7) for s in range(1, 7) if r * s <= 6]
    bad = [c for c in cases if not check_rectangle_recursion(*c)]
    acceptance_log(13, not bad, f"rectangle Hilbert recursion for rs<=6 ({len(cases)} cases) {bad[:3]}")
    assert not bad


if __name__ == "__main__":
    import sys

    def log(number, ok, detail):
        print(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn(log)
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
