"""Symmetric functions of a fixed degree with coefficients in Q(q,t).

Every element is a ``SymFunc``: a degree, a basis tag and a map from
partitions to nonzero ``QTRat`` coefficients.  Base changes route through the
power-sum basis p, where the operations used downstream (omega, scalar
plethysm, inner products, d/dp1) are diagonal or nearly so.

Transition tables are built once per degree and memoized; they are pure
functions of n so concurrent fills are harmless.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import ParseError
from .partitions import as_partition, conjugate, partitions, z_lambda
from .qtalgebra import ONE, ZERO, QTRat

BASES = ("m", "e", "h", "p", "s")
ALL_BASES = BASES + ("Htilde",)


# -- characters and transition matrices -------------------------------------


@lru_cache(maxsize=None)
def character(lam, rho):
    """chi^lam evaluated on cycle type rho, by Murnaghan-Nakayama on beta-numbers."""
    if not rho:
        return 1 if not lam else 0
    k = rho[0]
    rest = rho[1:]
    ell = len(lam)
    beta = [lam[i] + (ell - 1 - i) for i in range(ell)]
    beta_set = set(beta)
    total = 0
    for idx, b in enumerate(beta):
        nb = b - k
        if nb < 0 or nb in beta_set:
            continue
        height = sum(1 for c in beta if nb < c < b)
        new_beta = sorted([c for c in beta if c != b] + [nb], reverse=True)
        new_lam = tuple(
            p for p in (new_beta[i] - (ell - 1 - i) for i in range(ell)) if p > 0
        )
        total += (-1) ** height * character(new_lam, rest)
    return total


def _product_p_expansions(factors):
    """Multiply p-expansions {rho: Fraction}; partitions concatenate."""
    out = {(): Fraction(1)}
    for f in factors:
        nxt = {}
        for r1, c1 in out.items():
            for r2, c2 in f.items():
                key = tuple(sorted(r1 + r2, reverse=True))
                nxt[key] = nxt.get(key, 0) + c1 * c2
        out = nxt
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _h_row(k):
    return {rho: Fraction(1, z_lambda(rho)) for rho in partitions(k)}


@lru_cache(maxsize=None)
def _e_row(k):
    return {
        rho: Fraction((-1) ** (k - len(rho)), z_lambda(rho)) for rho in partitions(k)
    }


def _monomial_coefficient(rho, lam):
    """Coefficient of x^lam in p_rho: ways to place parts of rho into rows of lam."""

    @lru_cache(maxsize=None)
    def count(i, remaining):
        if i == len(rho):
            return 1 if all(r == 0 for r in remaining) else 0
        total = 0
        for j, r in enumerate(remaining):
            if r >= rho[i]:
                nxt = list(remaining)
                nxt[j] -= rho[i]
                total += count(i + 1, tuple(nxt))
        return total

    return count(0, tuple(lam))


def _invert(matrix, keys):
    """Inverse of a square Fraction matrix given as {row: {col: value}}."""
    idx = {k: i for i, k in enumerate(keys)}
    size = len(keys)
    a = [[Fraction(0)] * size + [Fraction(int(i == j)) for j in range(size)] for i in range(size)]
    for r, row in matrix.items():
        for c, v in row.items():
            a[idx[r]][idx[c]] = Fraction(v)
    for col in range(size):
        piv = next(r for r in range(col, size) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(size):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return {
        keys[i]: {keys[j]: a[i][size + j] for j in range(size) if a[i][size + j] != 0}
        for i in range(size)
    }


@lru_cache(maxsize=None)
def _to_p_table(basis, n):
    """{lam: {rho: Fraction}} expressing basis element lam in the p basis."""
    parts = partitions(n)
    if basis == "p":
        return {lam: {lam: Fraction(1)} for lam in parts}
    if basis == "s":
        return {
            lam: {
                rho: Fraction(character(lam, rho), z_lambda(rho))
                for rho in parts
                if character(lam, rho)
            }
            for lam in parts
        }
    if basis == "h":
        return {lam: _product_p_expansions([_h_row(k) for k in lam]) for lam in parts}
    if basis == "e":
        return {lam: _product_p_expansions([_e_row(k) for k in lam]) for lam in parts}
    if basis == "m":
        p_to_m = {
            rho: {lam: Fraction(_monomial_coefficient(rho, lam)) for lam in parts}
            for rho in parts
        }
        p_to_m = {r: {l: v for l, v in row.items() if v} for r, row in p_to_m.items()}
        return _invert(p_to_m, list(parts))
    raise ValueError(f"unknown basis {basis!r}")


@lru_cache(maxsize=None)
def _from_p_table(basis, n):
    parts = partitions(n)
    if basis == "p":
        return {rho: {rho: Fraction(1)} for rho in parts}
    if basis == "s":
        return {
            rho: {lam: Fraction(character(lam, rho)) for lam in parts if character(lam, rho)}
            for rho in parts
        }
    return _invert(_to_p_table(basis, n), list(parts))


@lru_cache(maxsize=None)
def _rat_table(kind, basis, n):
    table = _to_p_table(basis, n) if kind == "to" else _from_p_table(basis, n)
    return {k: {kk: QTRat(v) for kk, v in row.items()} for k, row in table.items()}


def _apply_table(terms, table):
    out = {}
    for lam, c in terms.items():
        for mu, v in table[lam].items():
            out[mu] = out.get(mu, ZERO) + c * v
    return out


# -- the element type ---------------------------------------------------------


class SymFunc:
    """Homogeneous symmetric function of a given degree in a named basis."""

    __slots__ = ("degree", "basis", "_terms")

    def __init__(self, degree, basis, terms=None):
        if basis not in ALL_BASES:
            raise ValueError(f"unknown basis {basis!r}")
        self.degree = int(degree)
        self.basis = basis
        clean = {}
        for lam, c in (terms or {}).items():
            lam = as_partition(lam)
            if sum(lam) != self.degree:
                raise ValueError(f"partition {lam} does not have size {self.degree}")
            c = QTRat(c)
            if c:
                clean[lam] = clean.get(lam, ZERO) + c
        self._terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def basis_element(cls, basis, lam, coeff=ONE):
        lam = as_partition(lam)
        return cls(sum(lam), basis, {lam: coeff})

    @classmethod
    def zero(cls, degree, basis="s"):
        return cls(degree, basis, {})

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, lam):
        return self._terms.get(tuple(lam), ZERO)

    def is_zero(self):
        return not self._terms

    def support(self):
        return sorted(self._terms, reverse=True)

    # -- base change --------------------------------------------------------

    def to_p(self):
        if self.basis == "p":
            return self
        if self.basis == "Htilde":
            return self.convert("s").to_p()
        return SymFunc(self.degree, "p", _apply_table(self._terms, _rat_table("to", self.basis, self.degree)))

    def convert(self, target):
        if target == self.basis:
            return self
        if target == "Htilde" or self.basis == "Htilde":
            from .macdonald import htilde_convert

            return htilde_convert(self, target)
        if target not in BASES:
            raise ValueError(f"unknown basis {target!r}")
        p = self.to_p()
        if target == "p":
            return p
        return SymFunc(self.degree, target, _apply_table(p._terms, _rat_table("from", target, self.degree)))

    # -- arithmetic ---------------------------------------------------------

    def _aligned(self, other):
        if not isinstance(other, SymFunc):
            raise TypeError("expected a SymFunc")
        if other.degree != self.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")
        return other.convert(self.basis) if other.basis != self.basis else other

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        other = self._aligned(other)
        d = dict(self._terms)
        for k, v in other._terms.items():
            d[k] = d.get(k, ZERO) + v
        return SymFunc(self.degree, self.basis, d)

    __radd__ = __add__

    def __neg__(self):
        return SymFunc(self.degree, self.basis, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._aligned(other))

    def scale(self, c):
        c = QTRat(c)
        if not c:
            return SymFunc(self.degree, self.basis, {})
        return SymFunc(self.degree, self.basis, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, SymFunc):
            return product(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self.scale(1 / QTRat(c))

    def map_coefficients(self, fn):
        return SymFunc(self.degree, self.basis, {k: fn(v) for k, v in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, SymFunc):
            if isinstance(other, int) and other == 0:
                return self.is_zero()
            return NotImplemented
        if other.degree != self.degree:
            return self.is_zero() and other.is_zero()
        if other.basis == self.basis:
            return self._terms == other._terms
        common = "s" if "Htilde" in (self.basis, other.basis) else "p"
        return self.convert(common)._terms == other.convert(common)._terms

    __hash__ = None

    # -- rendering ----------------------------------------------------------

    def to_json(self):
        return {
            "degree": self.degree,
            "basis": self.basis,
            "terms": [
                {"part": list(lam), "coeff": self._terms[lam].to_json()}
                for lam in self.support()
            ],
        }

    @classmethod
    def from_json(cls, obj):
        try:
            degree = obj["degree"]
            basis = obj["basis"]
            terms = {tuple(t["part"]): QTRat.from_json(t["coeff"]) for t in obj["terms"]}
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed SymFunc JSON: {exc}") from exc
        if basis not in ALL_BASES:
            raise ParseError(f"unknown basis {basis!r}")
        return cls(degree, basis, terms)

    def _label(self, lam, latex=False):
        name = "\\widetilde{H}" if (latex and self.basis == "Htilde") else self.basis
        if latex:
            idx = "".join(map(str, lam)) if all(p < 10 for p in lam) else ",".join(map(str, lam))
            return f"{name}_{{{idx}}}"
        return f"{name}[{','.join(map(str, lam))}]"

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for lam in self.support():
            c = self._terms[lam]
            label = self._label(lam)
            if c == 1:
                pieces.append(label)
            elif c == -1:
                pieces.append(f"-{label}")
            else:
                pieces.append(f"({c})*{label}")
        return " + ".join(pieces)

    def latex(self):
        if not self._terms:
            return "0"
        pieces = []
        for lam in self.support():
            c = self._terms[lam]
            label = self._label(lam, latex=True)
            pieces.append(label if c == 1 else f"\\left({c.latex()}\\right){label}")
        return " + ".join(pieces)

    def __repr__(self):
        return f"SymFunc({self.degree}, {self.basis!r}, {self})"


def schur(*lam):
    return SymFunc.basis_element("s", lam)


def power_sum(*lam):
    return SymFunc.basis_element("p", lam)


# -- operations ---------------------------------------------------------------


def convert(f, target):
    return f.convert(target)


def product(f, g):
    """Product of symmetric functions, returned in the p basis."""
    fp, gp = f.to_p(), g.to_p()
    out = {}
    for r1, c1 in fp.items():
        for r2, c2 in gp.items():
            key = tuple(sorted(r1 + r2, reverse=True))
            out[key] = out.get(key, ZERO) + c1 * c2
    return SymFunc(f.degree + g.degree, "p", out)


def hall_inner(f, g):
    fp, gp = f.to_p(), g.to_p()
    if fp.degree != gp.degree:
        return ZERO
    total = ZERO
    for rho, c in fp.items():
        d = gp.coefficient(rho)
        if d:
            total = total + c * d * z_lambda(rho)
    return total


@lru_cache(maxsize=None)
def qt_weight(rho):
    """z_rho prod (1 - q^k)/(1 - t^k): the q,t norm of p_rho."""
    from .qtalgebra import Q, T

    w = QTRat(z_lambda(rho))
    for k in rho:
        w = w * (1 - Q ** k) / (1 - T ** k)
    return w


def qt_inner(f, g):
    fp, gp = f.to_p(), g.to_p()
    if fp.degree != gp.degree:
        return ZERO
    total = ZERO
    for rho, c in fp.items():
        d = gp.coefficient(rho)
        if d:
            total = total + c * d * qt_weight(rho)
    return total


def plethysm_scalar(f, r):
    """Image of f under p_k -> r(q^k, t^k) p_k, in the basis of f."""
    r = QTRat(r)
    powers = {}
    out = {}
    for rho, c in f.to_p().items():
        factor = ONE
        for k in rho:
            if k not in powers:
                powers[k] = r.power_vars(k)
            factor = factor * powers[k]
        out[rho] = c * factor
    res = SymFunc(f.degree, "p", out)
    return res.convert(f.basis) if f.basis in BASES else res


def omega(f):
    if f.basis == "s":
        return SymFunc(f.degree, "s", {conjugate(lam): c for lam, c in f.items()})
    p = f.to_p()
    res = SymFunc(
        f.degree, "p", {rho: (c if (f.degree - len(rho)) % 2 == 0 else -c) for rho, c in p.items()}
    )
    return res.convert(f.basis) if f.basis in BASES else res


def down_arrow(f):
    """omega followed by q -> 1/q, t -> 1/t on every coefficient."""
    return omega(f).map_coefficients(QTRat.invert_vars)


def flip_char(f, mu):
    from .partitions import t_mu

    return down_arrow(f).scale(t_mu(mu))


def del_p1(f):
    """d/dp1 in the power-sum basis; result in the basis of f (degree n-1)."""
    out = {}
    for rho, c in f.to_p().items():
        ones = rho.count(1)
        if ones:
            key = rho[:-1]
            out[key] = out.get(key, ZERO) + c * ones
    res = SymFunc(f.degree - 1, "p", out)
    return res.convert(f.basis) if f.basis in BASES else res.convert("s")


def hilbert_poly(f):
    """d^n/dp1^n f: n! times the coefficient of p_(1^n)."""
    if f.degree == 0:
        return f.coefficient(())
    return f.to_p().coefficient((1,) * f.degree) * factorial(f.degree)
