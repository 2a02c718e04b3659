"""Intersection characteristics built from predecessor H-tilde's.

For mu with corners 1..m (left to right), the predecessors alpha^(i) and
their T-values T_i = T_mu / x_i determine a family of symmetric functions:

* ``phi_mu``: the Lagrange combination sum_j prod_{s != j} 1/(1 - T_j/T_s) H_j,
* ``phi_k``: the same with an extra weight (-T_j)^(m-k),
* ``phi_superset``: the combination attached to a nonempty corner subset S.

Each quantity has at least two independent constructions here (direct sums
over H-tilde's versus polynomials in nabla applied to ``phi_mu``); the
``verify_*`` helpers compare them and return ``Report`` records.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial

from .errors import IdentityMismatch
from .macdonald import apply_nabla_polynomial, nabla, nabla_inverse, nabla_power, tilde_H
from .partitions import (
    CornerData,
    as_partition,
    corner_data,
    minimal_raising_pairs,
    partitions,
    t_mu,
)
from .qtalgebra import ONE, ZERO, QTRat, T, Q, elementary, is_positive_integral, limit_q1
from .report import check
from .symfunc import SymFunc, del_p1, down_arrow, hilbert_poly


def _corner_Ts(mu):
    cd = corner_data(as_partition(mu))
    Ts = [QTRat(x) for x in cd.T]
    if len(set(Ts)) != len(Ts):
        raise ArithmeticError(f"predecessor T-values of {mu} are not distinct")
    return cd, Ts


def _predecessors_H(cd):
    return [tilde_H(a) for a in cd.predecessors]


def lagrange_weight(Ts, j, among):
    """prod over s in ``among``, s != j, of 1/(1 - T_j/T_s) (0-based indices)."""
    w = ONE
    for s in among:
        if s != j:
            w = w / (1 - Ts[j] / Ts[s])
    return w


def _sum_scaled(terms, degree):
    total = SymFunc.zero(degree, "s")
    for coeff, f in terms:
        if coeff:
            total = total + f.scale(coeff)
    return total


def phi_mu(mu):
    cd, Ts = _corner_Ts(mu)
    hs = _predecessors_H(cd)
    idx = range(cd.m)
    return _sum_scaled(((lagrange_weight(Ts, j, idx), hs[j]) for j in idx), sum(cd.mu) - 1)


def phi_k(mu, k):
    """The k-th member (1 <= k <= m) of the family; k = m gives ``phi_mu``."""
    cd, Ts = _corner_Ts(mu)
    if not 1 <= k <= cd.m:
        raise ValueError(f"k must lie in 1..{cd.m}")
    hs = _predecessors_H(cd)
    idx = range(cd.m)
    return _sum_scaled(
        ((lagrange_weight(Ts, j, idx) * (-Ts[j]) ** (cd.m - k), hs[j]) for j in idx),
        sum(cd.mu) - 1,
    )


def phi_epsilon(mu, eps):
    """Characteristic attached to a 0/1 word: phi_k(|eps|) / prod_{eps_i = 0} T_i."""
    cd, Ts = _corner_Ts(mu)
    k = sum(eps)
    if len(eps) != cd.m or k == 0:
        raise ValueError("need a nonzero word of length m")
    scale = ONE
    for i, e in enumerate(eps):
        if not e:
            scale = scale / Ts[i]
    return phi_k(mu, k).scale(scale)


@dataclass
class PhiFamily:
    mu: tuple
    phi_mu: SymFunc
    phi_k: list
    corner: CornerData


def phi_family(mu):
    mu = as_partition(mu)
    cd = corner_data(mu)
    ks = [phi_k(mu, k) for k in range(1, cd.m + 1)]
    return PhiFamily(mu=mu, phi_mu=ks[-1], phi_k=ks, corner=cd)


# -- corner subsets -------------------------------------------------------------


def _check_subset(cd, S):
    S = tuple(sorted(set(S)))
    if not S:
        raise ValueError("the corner subset must be nonempty")
    if S[0] < 1 or S[-1] > cd.m:
        raise ValueError(f"corner indices must lie in 1..{cd.m}")
    return S


def divided_difference(ys, As):
    """Divided difference of y*A(y) at the nodes ys: (y0 A0 - y1 A1)/(y0 - y1) for two nodes."""
    k = len(ys)
    if k == 1:
        return As[0]
    if k == 2:
        return (As[0].scale(ys[0]) - As[1].scale(ys[1])).scale(1 / (ys[0] - ys[1]))
    left = divided_difference(ys[:-1], As[:-1])
    right = divided_difference(ys[1:], As[1:])
    return (left.scale(ys[0]) - right.scale(ys[-1])).scale(1 / (ys[0] - ys[-1]))


def phi_superset_routes(mu, S):
    """{route: value} for every independent construction of the S-characteristic."""
    mu = as_partition(mu)
    cd, Ts = _corner_Ts(mu)
    S = _check_subset(cd, S)
    m = cd.m
    n = sum(mu) - 1
    outside = [QTRat(1) / Ts[i] for i in range(m) if (i + 1) not in S]
    family = [phi_k(mu, k) for k in range(1, m + 1)]

    e_sum = _sum_scaled(
        ((elementary(outside, m - k), family[k - 1]) for k in range(1, m + 1)), n
    )

    poly = [ONE]
    for y in outside:
        nxt = [ZERO] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i] = nxt[i] + c
            nxt[i + 1] = nxt[i + 1] - c * y
        poly = nxt
    via_nabla = apply_nabla_polynomial(family[-1], poly)

    hs = _predecessors_H(cd)
    sel = [i - 1 for i in S]
    divided = divided_difference([1 / Ts[i] for i in sel], [hs[i] for i in sel])
    lagrange = _sum_scaled(((lagrange_weight(Ts, s, sel), hs[s]) for s in sel), n)
    return {"e-sum": e_sum, "nabla-product": via_nabla, "divided-difference": divided, "lagrange": lagrange}


def phi_superset(mu, S):
    routes = phi_superset_routes(mu, S)
    values = list(routes.values())
    if any(v != values[0] for v in values[1:]):
        bad = [name for name, v in routes.items() if v != values[0]]
        raise IdentityMismatch(f"superset routes disagree for {mu}, S={sorted(S)}: {bad}")
    return routes["lagrange"]


def nonempty_subsets(m):
    for r in range(1, m + 1):
        yield from combinations(range(1, m + 1), r)


# -- verification helpers -------------------------------------------------------


def verify_superset_routes(mu):
    mu = as_partition(mu)
    cd = corner_data(mu)
    out = []
    for S in nonempty_subsets(cd.m):
        routes = phi_superset_routes(mu, S)
        ref = routes["lagrange"]
        bad = [k for k, v in routes.items() if v != ref]
        out.append(check("superset-routes", mu, not bad, S=S, witness=bad))
    return out


def verify_nabla_family(mu):
    """phi_k == (-nabla)^(m-k) phi_mu for each k."""
    mu = as_partition(mu)
    cd = corner_data(mu)
    base = phi_mu(mu)
    out = []
    for k in range(1, cd.m + 1):
        lhs = phi_k(mu, k)
        rhs = nabla_power(base, cd.m - k)
        if (cd.m - k) % 2:
            rhs = -rhs
        out.append(check("nabla-family", mu, lhs == rhs, k=k))
    return out


def verify_down_arrow_symmetry(mu):
    """down_arrow(phi_k) * T_1...T_m == phi_(m+1-k)."""
    mu = as_partition(mu)
    cd, Ts = _corner_Ts(mu)
    prod_T = ONE
    for x in Ts:
        prod_T = prod_T * x
    out = []
    for k in range(1, cd.m + 1):
        lhs = down_arrow(phi_k(mu, k)).scale(prod_T)
        out.append(check("down-arrow-symmetry", mu, lhs == phi_k(mu, cd.m + 1 - k), k=k))
    return out


def verify_predecessor_expansion(mu):
    """Each predecessor H-tilde is recovered from the family with e-weights."""
    mu = as_partition(mu)
    cd, Ts = _corner_Ts(mu)
    m = cd.m
    family = [phi_k(mu, k) for k in range(1, m + 1)]
    hs = _predecessors_H(cd)
    ok = True
    bad = []
    for i in range(m):
        alphabet = [1 / Ts[j] for j in range(m) if j != i]
        total = _sum_scaled(
            ((elementary(alphabet, m - k), family[k - 1]) for k in range(1, m + 1)),
            sum(mu) - 1,
        )
        if total != hs[i]:
            ok = False
            bad.append(i + 1)
    return check("predecessor-expansion", mu, ok, witness=bad)


def verify_union_and_inverse(mu):
    """The union characteristic and the nabla-inverse identity.

    sum_k phi_k e_(m-k)[sum 1/T_i] == nabla(phi_1) / (T_1...T_m), and
    sum_k phi_k e_(m+1-k)[sum 1/T_i] == nabla^{-1} phi_mu.
    """
    mu = as_partition(mu)
    cd, Ts = _corner_Ts(mu)
    m = cd.m
    n = sum(mu) - 1
    family = [phi_k(mu, k) for k in range(1, m + 1)]
    inv = [1 / x for x in Ts]
    prod_T = ONE
    for x in Ts:
        prod_T = prod_T * x
    union = _sum_scaled(((elementary(inv, m - k), family[k - 1]) for k in range(1, m + 1)), n)
    union_rhs = nabla(family[0]).scale(1 / prod_T)
    shifted = _sum_scaled(((elementary(inv, m + 1 - k), family[k - 1]) for k in range(1, m + 1)), n)
    shifted_rhs = nabla_inverse(family[-1])
    return [
        check("union-characteristic", mu, union == union_rhs),
        check("nabla-inverse-sum", mu, shifted == shifted_rhs),
    ]


# -- Butler pairs -----------------------------------------------------------------


@dataclass
class ButlerSplit:
    mu: tuple
    nu: tuple
    Phi: SymFunc
    Psi: SymFunc
    PsiCheck: bool
    reconstructs: bool


def butler_split(mu, nu):
    mu, nu = as_partition(mu), as_partition(nu)
    tm, tn = QTRat(t_mu(mu)), QTRat(t_mu(nu))
    if tm == tn:
        raise ValueError(f"T-values of {mu} and {nu} coincide")
    hm, hn = tilde_H(mu), tilde_H(nu)
    phi = (hm.scale(tn) - hn.scale(tm)).scale(1 / (tn - tm))
    psi = (hm - hn).scale(1 / (tm - tn))
    flipped = down_arrow(phi)
    psi_ok = psi == flipped
    recon = (phi + flipped.scale(tm) == hm) and (phi + flipped.scale(tn) == hn)
    return ButlerSplit(mu=mu, nu=nu, Phi=phi, Psi=psi, PsiCheck=psi_ok, reconstructs=recon)


def verify_butler(n):
    out = []
    for mu, nu in minimal_raising_pairs(n):
        split = butler_split(mu, nu)
        bad = _nonpositive_terms(split.Phi)
        out.append(
            check(
                "butler-split",
                mu,
                split.PsiCheck and split.reconstructs,
                witness={"nu": list(nu)},
                nu=list(nu),
                psi_symmetry=split.PsiCheck,
                reconstruction=split.reconstructs,
                phi_positive=not bad,
            )
        )
    return out


# -- Pieri ------------------------------------------------------------------------


def _pieri_denominator():
    return (1 - 1 / T) * (1 - 1 / Q)


def pieri_coefficients(mu):
    """Coefficients c_i with d/dp1 H-tilde_mu = sum_i c_i H-tilde_(alpha^(i))."""
    cd = corner_data(as_partition(mu))
    x = [QTRat(v) for v in cd.x]
    u = [QTRat(v) for v in cd.u]
    M = _pieri_denominator()
    out = []
    for i in range(1, cd.m + 1):
        num = ONE
        for s in range(cd.m + 1):
            num = num * (u[s] - x[i])
        den = ONE
        for s in range(1, cd.m + 1):
            if s != i:
                den = den * (x[s] - x[i])
        out.append(num / (den * x[i] * M))
    return out


def pieri_del_p1(mu):
    cd = corner_data(as_partition(mu))
    coeffs = pieri_coefficients(mu)
    return _sum_scaled(zip(coeffs, _predecessors_H(cd)), sum(cd.mu) - 1)


def b_mu_k(mu, k):
    """(e_k[x_0..x_m] - e_k[u_0..u_m]) / ((1 - 1/t)(1 - 1/q))."""
    cd = corner_data(as_partition(mu))
    x = [QTRat(v) for v in cd.x]
    u = [QTRat(v) for v in cd.u]
    return (elementary(x, k) - elementary(u, k)) / _pieri_denominator()


def pieri_phi_expansion(mu):
    mu = as_partition(mu)
    cd = corner_data(mu)
    tm = QTRat(cd.T_mu)
    terms = []
    for k in range(1, cd.m + 1):
        terms.append((b_mu_k(mu, cd.m + 1 - k) / tm ** (cd.m - k), phi_k(mu, k)))
    return _sum_scaled(terms, sum(mu) - 1)


def verify_pieri(mu):
    mu = as_partition(mu)
    direct = del_p1(tilde_H(mu))
    return [
        check("pieri-coefficients", mu, pieri_del_p1(mu) == direct),
        check("pieri-phi-expansion", mu, pieri_phi_expansion(mu) == direct),
    ]


# -- dimensions ---------------------------------------------------------------------


def superset_hilbert(mu, S):
    """Hilbert series attached to S via the Lagrange form (a Q(q,t) value)."""
    cd, Ts = _corner_Ts(mu)
    S = _check_subset(cd, S)
    sel = [i - 1 for i in S]
    total = ZERO
    for s in sel:
        total = total + lagrange_weight(Ts, s, sel) * hilbert_poly(tilde_H(cd.predecessors[s]))
    return total


def sf_dimension_limit(mu, S):
    """lim_{q->1} of the S-Hilbert series at t = 1; expected n!/|S|."""
    cd, Ts = _corner_Ts(mu)
    S = _check_subset(cd, S)
    sel = [i - 1 for i in S]
    total = ZERO
    for s in sel:
        w = lagrange_weight(Ts, s, sel).specialize_t1()
        g = hilbert_poly(tilde_H(cd.predecessors[s])).specialize_t1()
        total = total + w * g
    return limit_q1(total)


def lagrange_limit_check(ys):
    """(1-q) sum_s prod_{r != s} q^y_s/(q^y_s - q^y_r) * y_s/(1 - q^y_s) at q -> 1.

    The exponents must be distinct and nonzero; the limit is 1/len(ys).
    """
    ys = [int(y) for y in ys]
    if len(set(ys)) != len(ys) or 0 in ys:
        raise ValueError("exponents must be distinct nonzero integers")
    total = ZERO
    for s, ysv in enumerate(ys):
        w = ONE
        for r, yr in enumerate(ys):
            if r != s:
                w = w * Q ** ysv / (Q ** ysv - Q ** yr)
        total = total + w * ysv / (1 - Q ** ysv)
    return limit_q1((1 - Q) * total)


# -- positivity ---------------------------------------------------------------------


def _nonpositive_terms(f):
    bad = []
    for lam, c in f.convert("s").items():
        ok, witness = is_positive_integral(c)
        if not ok:
            kind = "non-polynomial" if not c.is_polynomial() else "negative"
            bad.append({"lambda": list(lam), "kind": kind, "witness": str(witness)})
    return bad


def positivity_audit(n):
    """Audit Schur positivity of every family member and subset value for mu of n+1.

    Returns a list of violation records (empty when everything is positive).
    """
    violations = []
    for mu in partitions(n + 1):
        cd = corner_data(mu)
        for k in range(1, cd.m + 1):
            for rec in _nonpositive_terms(phi_k(mu, k)):
                violations.append({"identity": "family-positivity", "mu": list(mu), "k": k, **rec})
        for S in nonempty_subsets(cd.m):
            for rec in _nonpositive_terms(phi_superset(mu, S)):
                violations.append({"identity": "superset-positivity", "mu": list(mu), "S": list(S), **rec})
    return violations


def expected_dimension(mu, S):
    return Fraction(factorial(sum(mu) - 1), len(S))
