"""Cell-by-cell module assignment planner and its characteristic bookkeeping.

Each cell of a diagram receives a descriptor: a set of nonzero 0/1 words of
length m (the number of corners).  A word eps stands for the intersection of
the predecessor modules M_j (eps_j = 1) and their complements (eps_j = 0),
and its Frobenius characteristic is prod_{eps_j = 0} (-nabla/T_j) Phi_mu.
A descriptor's characteristic is therefore a polynomial Pi(z) of degree < m
evaluated at z = nabla and applied to Phi_mu.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product

from .errors import IntegrityError
from .identities import phi_mu
from .macdonald import apply_nabla_polynomial, tilde_H
from .partitions import as_partition, corner_data
from .qtalgebra import ONE, Q, T, ZERO, QTRat, q_integer
from .symfunc import del_p1


class ZPoly:
    """Univariate polynomial in z with QTRat coefficients (low degree first)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [QTRat(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __add__(self, other):
        other = other if isinstance(other, ZPoly) else ZPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (ZERO,) * (n - len(self.coeffs))
        b = other.coeffs + (ZERO,) * (n - len(other.coeffs))
        return ZPoly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return ZPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, ZPoly) else ZPoly([-QTRat(other)]))

    def __mul__(self, other):
        if not isinstance(other, ZPoly):
            c = QTRat(other)
            return ZPoly([x * c for x in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return ZPoly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] = out[i + j] + x * y
        return ZPoly(out)

    __rmul__ = __mul__

    def divide_linear(self, root_inverse):
        """Exact quotient by (1 - z*root_inverse); raises if it does not divide."""
        r = QTRat(root_inverse)
        # p(z) = (1 - r z) g(z)  =>  g_0 = p_0, g_k = p_k + r g_(k-1)
        n = len(self.coeffs)
        if n == 0:
            return ZPoly()
        g = [ZERO] * (n - 1)
        prev = ZERO
        for k in range(n - 1):
            prev = self.coeffs[k] + r * prev
            g[k] = prev
        if self.coeffs[-1] + r * prev != ZERO:
            raise IntegrityError("linear factor does not divide the polynomial")
        return ZPoly(g)

    def scale_variable(self, c):
        """p(c z)."""
        c = QTRat(c)
        out, power = [], ONE
        for a in self.coeffs:
            out.append(a * power)
            power = power * c
        return ZPoly(out)

    def padded(self, length):
        return list(self.coeffs) + [ZERO] * (length - len(self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, ZPoly):
            other = ZPoly([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return "ZPoly(" + ", ".join(str(c) for c in self.coeffs) + ")"


def _linear(const, slope):
    """const + slope*z."""
    return ZPoly([const, slope])


def _corner_Ts(cd):
    return [QTRat(t.to_rat()) for t in cd.T]


def descriptor_polynomial(desc, Ts):
    """Pi_D(z) = sum over words in D of prod_{eps_j = 0} (-z/T_j)."""
    total = ZPoly()
    negs = [ZPoly([ZERO, -ONE / t]) for t in Ts]
    for eps in desc:
        term = ZPoly([ONE])
        for j, e in enumerate(eps):
            if not e:
                term = term * negs[j]
        total = total + term
    return total


def all_words(m):
    """Every nonzero 0/1 word of length m: the join of all predecessor modules."""
    return frozenset(w for w in product((0, 1), repeat=m) if any(w))


def module_words(m, i):
    """Words of the predecessor module M_i (1-based corner index)."""
    return frozenset(w for w in all_words(m) if w[i - 1])


@dataclass(frozen=True)
class CellAssignment:
    """Descriptor and characteristic polynomial for each cell (row, col), 1-based."""

    mu: tuple
    m: int
    cells: dict
    polys: dict

    def row(self, r):
        return [self.cells[(r, c)] for c in range(1, self.mu[r - 1] + 1)]

    def to_json(self):
        out = []
        for (r, c) in sorted(self.cells):
            out.append({
                "row": r,
                "col": c,
                "words": ["".join(map(str, w)) for w in sorted(self.cells[(r, c)], reverse=True)],
                "pi": [x.to_json() for x in self.polys[(r, c)].padded(self.m)],
            })
        return {"mu": list(self.mu), "m": self.m, "cells": out}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


def bh_assign(mu):
    """Assign descriptors top-down; equal-length rows copy the row above."""
    mu = as_partition(mu)
    cd = corner_data(mu)
    m = cd.m
    Ts = _corner_Ts(cd)
    full = all_words(m)
    corner_of_row = {r: i + 1 for i, (r, _) in enumerate(cd.removable)}
    top = len(mu)
    rows = {top: [module_words(m, 1)] * mu[top - 1]}
    for r in range(top - 1, 0, -1):
        above = rows[r + 1]
        a, b = mu[r], mu[r - 1]
        if a == b:
            rows[r] = list(above)
            continue
        c = b - a
        C = module_words(m, corner_of_row[r])

        def shifted(s):
            if s <= 0:
                return full
            if s <= a:
                return above[s - 1]
            return frozenset()

        rows[r] = [shifted(s) | (shifted(s - c) & C) for s in range(1, b + 1)]
    cells = {}
    polys = {}
    for r, descs in rows.items():
        for col, d in enumerate(descs, start=1):
            cells[(r, col)] = d
            polys[(r, col)] = descriptor_polynomial(d, Ts)
    return CellAssignment(mu=mu, m=m, cells=cells, polys=polys)


def check_assignment(ca):
    """Rows weakly decrease left to right and the top row carries M_1."""
    m = ca.m
    top = len(ca.mu)
    if any(d != module_words(m, 1) for d in ca.row(top)):
        return False
    for r in range(1, top + 1):
        row = ca.row(r)
        if any(not (row[k + 1] <= row[k]) for k in range(len(row) - 1)):
            return False
    return True


def pi_recursion(mu):
    """Pi_1..Pi_m: the row characteristics of the rows holding each corner."""
    cd = corner_data(as_partition(mu))
    m = cd.m
    Ts = _corner_Ts(cd)
    lin = [_linear(ONE, -ONE / t) for t in Ts]

    def prod_except(i):
        out = ZPoly([ONE])
        for j in range(m):
            if j != i:
                out = out * lin[j]
        return out

    out = [prod_except(0) * q_integer(cd.coarms[0] + 1)]
    for i in range(1, m):
        q_c = QTRat(cd.x[i + 1].to_rat()) / QTRat(cd.u[i].to_rat())
        core = out[-1].divide_linear(ONE / Ts[i])
        step = core * _linear(q_c, -ONE / Ts[i])
        out.append(step + prod_except(i) * ((q_c - 1) / (Q - 1)))
    return out


def row_polynomials(ca):
    """Pi of each row: sum_s q^(s-1) Pi(cell (r, s))."""
    out = {}
    for r in range(1, len(ca.mu) + 1):
        total = ZPoly()
        for col, d in enumerate(ca.row(r), start=1):
            total = total + ca.polys[(r, col)] * QTRat.monomial(col - 1, 0)
        out[r] = total
    return out


def gamma_closed_form(mu, i):
    """(numerator, denominator) ZPolys of the closed form for index i (1-based)."""
    cd = corner_data(as_partition(mu))
    x = [QTRat(v.to_rat()) for v in cd.x]
    u = [QTRat(v.to_rat()) for v in cd.u]
    ratio = ONE
    num_prod = ZPoly([ONE])
    den_prod = ZPoly([ONE])
    for s in range(1, i + 1):
        ratio = ratio * x[s] / u[s - 1]
        num_prod = num_prod * _linear(ONE, -u[s - 1])
        den_prod = den_prod * _linear(ONE, -x[s])
    inv = ONE / (1 - Q)
    numerator = (den_prod - num_prod * ratio) * inv
    return numerator, den_prod


def gamma_from_pi(mu, pi):
    """(numerator, denominator) of Pi(z T_mu) / prod_j (1 - x_j z)."""
    cd = corner_data(as_partition(mu))
    den = ZPoly([ONE])
    for v in cd.x[1:]:
        den = den * _linear(ONE, -QTRat(v.to_rat()))
    return pi.scale_variable(QTRat(cd.T_mu.to_rat())), den


def check_gamma(mu):
    """Pi_i(z T_mu)/prod(1 - x_j z) == closed form for every i (cross-multiplied)."""
    for i, pi in enumerate(pi_recursion(mu), start=1):
        n1, d1 = gamma_from_pi(mu, pi)
        n2, d2 = gamma_closed_form(mu, i)
        if n1 * d2 != n2 * d1:
            return False
    return True


def _legs_with_sentinel(cd):
    return list(cd.colegs) + [-1]


def bh_reassemble(mu):
    """Sum over corners of t^(1+l_(i+1)) [l_i - l_(i+1)]_t Pi_i(nabla) Phi_mu."""
    mu = as_partition(mu)
    cd = corner_data(mu)
    legs = _legs_with_sentinel(cd)
    pis = pi_recursion(mu)
    total = ZPoly()
    for i, pi in enumerate(pis):
        weight = T ** (1 + legs[i + 1]) * q_integer(legs[i] - legs[i + 1], T)
        total = total + pi * weight
    return apply_nabla_polynomial(phi_mu(mu), total.padded(cd.m))


def cell_sum(mu):
    """Sum over cells of t^(row-1) q^(col-1) Pi_cell(nabla) Phi_mu."""
    ca = bh_assign(mu)
    total = ZPoly()
    for (r, c), p in ca.polys.items():
        total = total + p * QTRat.monomial(c - 1, r - 1)
    return apply_nabla_polynomial(phi_mu(ca.mu), total.padded(ca.m))


def check_row_recursion(mu):
    """Rows holding corner i have characteristic Pi_i; the rows between copy it."""
    ca = bh_assign(mu)
    cd = corner_data(ca.mu)
    rows = row_polynomials(ca)
    legs = _legs_with_sentinel(cd)
    for i, pi in enumerate(pi_recursion(mu)):
        for coleg in range(legs[i + 1] + 1, legs[i] + 1):
            if rows[coleg + 1] != pi:
                return False
    return True


def verify_reassembly(mu):
    """bh_reassemble, the per-cell sum and the derivative of tilde_H agree."""
    target = del_p1(tilde_H(as_partition(mu)))
    return bh_reassemble(mu) == target and cell_sum(mu) == target


REGION_LABELS = ("UPR", "INS", "MID", "OUT")


@dataclass(frozen=True)
class RegionPlan:
    """Two-corner diagram split; cells are (r, s) with 0-based row r and column s."""

    mu: tuple
    a: int
    b: int
    c: int
    l_a: int
    l_b: int
    regions: dict
    labels: dict

    def counts(self):
        return {k: len(v) for k, v in self.regions.items()}

    def to_json(self):
        return {
            "mu": list(self.mu),
            "a": self.a, "b": self.b, "c": self.c, "l_a": self.l_a, "l_b": self.l_b,
            "regions": {k: sorted([list(x) for x in v]) for k, v in self.regions.items()},
            "labels": dict(self.labels),
        }


def two_corner_regions(mu):
    """UPR/INS/MID/OUT split of a two-corner diagram with the basis label of each region."""
    mu = as_partition(mu)
    widths = sorted(set(mu))
    if len(widths) != 2:
        raise ValueError(f"{mu} does not have exactly two corners")
    a, b = widths
    l_a, l_b = mu.count(a), mu.count(b)
    c = b - a
    upr = {(r, s) for r in range(l_b, l_b + l_a) for s in range(a)}
    if c > a:
        cuts = (a, c)
        mid_label = "B_B"
    else:
        cuts = (c, a)
        mid_label = "B_A"
    ins = {(r, s) for r in range(l_b) for s in range(cuts[0])}
    mid = {(r, s) for r in range(l_b) for s in range(cuts[0], cuts[1])}
    out = {(r, s) for r in range(l_b) for s in range(cuts[1], b)}
    regions = {"UPR": frozenset(upr), "INS": frozenset(ins), "MID": frozenset(mid), "OUT": frozenset(out)}
    labels = {"UPR": "B_A", "INS": "B_A∪B", "MID": mid_label, "OUT": "B*_A⊥∩B"}
    return RegionPlan(mu=mu, a=a, b=b, c=c, l_a=l_a, l_b=l_b, regions=regions, labels=labels)


def check_regions(plan):
    """Regions are disjoint, cover the diagram, and have the expected sizes."""
    diagram = {(r, s) for r, p in enumerate(plan.mu) for s in range(p)}
    union = set()
    for cells_ in plan.regions.values():
        if union & cells_:
            return False
        union |= cells_
    lower = sum(len(plan.regions[k]) for k in ("INS", "MID", "OUT"))
    return (union == diagram
            and len(plan.regions["UPR"]) == plan.a * plan.l_a
            and lower == plan.b * plan.l_b)
