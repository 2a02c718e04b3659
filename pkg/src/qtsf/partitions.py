"""Partitions and their cell geometry (French convention).

A partition is a plain tuple of weakly decreasing positive integers.  Cells
are (row, col) pairs with row, col >= 1; row 1 is the bottom row.  The cell
(i, j) carries the biexponent t^(i-1) q^(j-1).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod

from .errors import ParseError
from .qtalgebra import QTPoly


def as_partition(parts):
    """Validate and normalize to a tuple partition."""
    mu = tuple(int(p) for p in parts)
    if any(p <= 0 for p in mu) or any(mu[i] < mu[i + 1] for i in range(len(mu) - 1)):
        raise ParseError(f"not a partition: {parts!r}")
    return mu


def parse_partition(text):
    """Parse the comma form used on the command line, e.g. ``"3,2,1"``."""
    text = text.strip()
    if not text:
        return ()
    try:
        parts = [int(p) for p in text.split(",")]
    except ValueError as exc:
        raise ParseError(f"bad partition string {text!r}") from exc
    return as_partition(parts)


def format_partition(mu):
    return ",".join(map(str, mu))


@lru_cache(maxsize=None)
def partitions(n):
    """All partitions of n in decreasing lexicographic order."""
    if n == 0:
        return ((),)
    out = []

    def rec(remaining, cap, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(remaining, cap), 0, -1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(n, n, [])
    return tuple(out)


def size(mu):
    return sum(mu)


def conjugate(mu):
    if not mu:
        return ()
    return tuple(sum(1 for p in mu if p > j) for j in range(mu[0]))


def n_stat(mu):
    return sum(i * p for i, p in enumerate(mu))


def cells(mu):
    return [(i + 1, j + 1) for i, p in enumerate(mu) for j in range(p)]


def arms_legs(mu, cell):
    """(arm, leg, coarm, coleg) of cell: counts strictly east, north, west, south."""
    i, j = cell
    if not (1 <= i <= len(mu) and 1 <= j <= mu[i - 1]):
        raise ValueError(f"cell {cell} not in {mu}")
    conj = conjugate(mu)
    return mu[i - 1] - j, conj[j - 1] - i, j - 1, i - 1


def hook_products(mu):
    """(prod (1 - q^a t^(l+1)), prod (1 - q^(a+1) t^l)) over the cells of mu."""
    h = QTPoly.constant(1)
    hp = QTPoly.constant(1)
    for c in cells(mu):
        a, l, _, _ = arms_legs(mu, c)
        h = h * (1 - QTPoly.monomial(a, l + 1))
        hp = hp * (1 - QTPoly.monomial(a + 1, l))
    return h, hp


def t_mu(mu):
    """Product of cell biexponents: t^n(mu) q^n(mu')."""
    return QTPoly.monomial(n_stat(conjugate(mu)), n_stat(mu))


def b_mu(mu):
    """Biexponent generator: sum of t^(i-1) q^(j-1) over cells."""
    return QTPoly({(j - 1, i - 1): 1 for i, j in cells(mu)})


def f_lambda(lam):
    """Number of standard tableaux of shape lam (hook-length formula)."""
    n = size(lam)
    hooks = prod(a + l + 1 for a, l, _, _ in (arms_legs(lam, c) for c in cells(lam)))
    return factorial(n) // hooks


def z_lambda(lam):
    out = 1
    for part in set(lam):
        k = lam.count(part)
        out *= part ** k * factorial(k)
    return out


def multinomial(mu):
    return factorial(size(mu)) // prod(factorial(p) for p in mu)


def dominance_leq(mu, lam):
    """True iff mu <= lam in dominance order (same size assumed)."""
    if size(mu) != size(lam):
        return False
    s1 = s2 = 0
    for i in range(max(len(mu), len(lam))):
        s1 += mu[i] if i < len(mu) else 0
        s2 += lam[i] if i < len(lam) else 0
        if s1 > s2:
            return False
    return True


def minimal_raising_pairs(n):
    """Pairs (mu, nu) of partitions of n with mu obtained from nu by one minimal lift.

    A minimal lift moves the last cell of some row to the end of a higher
    (longer or equal) row, either exactly one row up or exactly one column to
    the right.
    """
    pairs = []
    seen = set()
    for nu in partitions(n):
        rows = list(nu) + [0]
        for j in range(len(nu)):
            for i in range(j):
                new = list(rows)
                new[i] += 1
                new[j] -= 1
                if any(new[k] < new[k + 1] for k in range(len(new) - 1)):
                    continue
                one_row = j == i + 1
                one_col = rows[i] + 1 - rows[j] == 1
                if not (one_row or one_col):
                    continue
                mu = tuple(p for p in new if p)
                if (mu, nu) not in seen:
                    seen.add((mu, nu))
                    pairs.append((mu, nu))
    return pairs


@dataclass(frozen=True)
class CornerData:
    """Removable corners of a partition listed left to right, with their weights.

    ``x`` and ``u`` include the index-0 entries x_0 = 1/(tq) and
    u_0 = t^(l_1)/q; ``T`` holds T_1..T_m, the T-values of the predecessors.
    """

    mu: tuple
    m: int
    removable: tuple
    coarms: tuple
    colegs: tuple
    predecessors: tuple
    x: tuple
    u: tuple
    T_mu: QTPoly
    T: tuple
    B_mu: QTPoly


def remove_cell(mu, row):
    parts = list(mu)
    parts[row - 1] -= 1
    return tuple(p for p in parts if p)


@lru_cache(maxsize=None)
def corner_data(mu):
    mu = as_partition(mu)
    if not mu:
        raise ValueError("corner_data needs a nonempty partition")
    removable = []
    for i in range(len(mu), 0, -1):
        below_next = mu[i] if i < len(mu) else 0
        if mu[i - 1] > below_next:
            removable.append((i, mu[i - 1]))
    m = len(removable)
    coarms = tuple(c - 1 for _, c in removable)
    colegs = tuple(r - 1 for r, _ in removable)
    x = [QTPoly.monomial(-1, -1)]
    x += [QTPoly.monomial(a, l) for a, l in zip(coarms, colegs)]
    u = [QTPoly.monomial(-1, colegs[0])]
    u += [QTPoly.monomial(coarms[i], colegs[i + 1]) for i in range(m - 1)]
    u.append(QTPoly.monomial(coarms[-1], -1))
    tm = t_mu(mu)
    preds = tuple(remove_cell(mu, r) for r, _ in removable)
    T = tuple(t_mu(a) for a in preds)
    return CornerData(
        mu=mu,
        m=m,
        removable=tuple(removable),
        coarms=coarms,
        colegs=colegs,
        predecessors=preds,
        x=tuple(x),
        u=tuple(u),
        T_mu=tm,
        T=T,
        B_mu=b_mu(mu),
    )
