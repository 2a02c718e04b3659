"""Desk-scale Garsia-Haiman modules: derivative spans of bi-exponent determinants.

Polynomials live in x_1..x_n, y_1..y_n.  An exponent vector is a tuple of
length 2n (x exponents first).  A BiPolySpace stores, for each bidegree
(x-degree, y-degree), the reduced row-echelon basis of that homogeneous
piece; rows are sparse tuples of (monomial, Fraction) pairs in decreasing
lexicographic monomial order, and the leading entry of each row is its pivot
with coefficient 1.  Canonical form makes space equality a dict comparison.

Grading: t tracks x-degree and q tracks y-degree, so a cell (i, j) of the
diagram contributes the biexponent x^(i-1) y^(j-1).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import factorial, prod

import flint

from .errors import IntegrityError, SizeGuardError
from .partitions import as_partition, cells, corner_data, multinomial, partitions, size, z_lambda
from .qtalgebra import QTPoly, QTRat, is_positive_integral
from .report import check
from .symfunc import SymFunc, hilbert_poly

MAX_SIZE = 6
TRACE_SIZE = 5


class BiPoly:
    """Sparse polynomial in x_1..x_n, y_1..y_n with Fraction coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                if len(e) != 2 * n:
                    raise ValueError("exponent vector has the wrong length")
                self.terms[tuple(e)] = c

    @classmethod
    def variable(cls, n, name, i):
        """x_i or y_i (1-based)."""
        e = [0] * (2 * n)
        e[(i - 1) + (n if name == "y" else 0)] = 1
        return cls(n, {tuple(e): 1})

    def is_zero(self):
        return not self.terms

    def bidegree(self):
        """(x-degree, y-degree); raises unless bihomogeneous and nonzero."""
        degs = {_bidegree(e, self.n) for e in self.terms}
        if len(degs) != 1:
            raise ValueError("polynomial is zero or not bihomogeneous")
        return next(iter(degs))

    def derivative(self, name, i):
        return BiPoly(self.n, _derive(self.terms, (i - 1) + (self.n if name == "y" else 0)))

    def apply_as_operator(self, other):
        """self(d/dx, d/dy) applied to other."""
        return BiPoly(self.n, _apply_operator(self.terms, other.terms))

    def permute(self, sigma):
        """Diagonal action: x_j -> x_sigma(j), y_j -> y_sigma(j); sigma is 0-based."""
        return BiPoly(self.n, _permute(self.terms, sigma, self.n))

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return BiPoly(self.n, out)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, c):
        if isinstance(c, BiPoly):
            out = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in c.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    out[e] = out.get(e, 0) + c1 * c2
            return BiPoly(self.n, out)
        c = Fraction(c)
        return BiPoly(self.n, {e: v * c for e, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self):
        return f"BiPoly({self.n}, {len(self.terms)} terms)"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                (f"{v}{k % self.n + 1}" + (f"^{p}" if p > 1 else ""))
                for k, p in enumerate(e) if p
                for v in ("x" if k < self.n else "y",)
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _bidegree(e, n):
    return sum(e[:n]), sum(e[n:])


def _derive(terms, k):
    out = {}
    for e, c in terms.items():
        p = e[k]
        if p:
            f = e[:k] + (p - 1,) + e[k + 1:]
            out[f] = out.get(f, 0) + c * p
    return out


def _falling(e, m):
    """prod e_i!/(e_i - m_i)! or 0 when some m_i > e_i."""
    out = 1
    for a, b in zip(e, m):
        if b > a:
            return 0
        for v in range(a - b + 1, a + 1):
            out *= v
    return out


def _apply_operator(op_terms, terms):
    out = {}
    for m, cm in op_terms.items():
        for e, ce in terms.items():
            w = _falling(e, m)
            if w:
                f = tuple(a - b for a, b in zip(e, m))
                out[f] = out.get(f, 0) + cm * ce * w
    return {e: c for e, c in out.items() if c}


def _permute(terms, sigma, n):
    out = {}
    for e, c in terms.items():
        f = [0] * (2 * n)
        for j in range(n):
            f[sigma[j]] = e[j]
            f[n + sigma[j]] = e[n + j]
        out[tuple(f)] = c
    return out


def apolar_weight(e):
    return prod(factorial(a) for a in e)


def apolar_inner(P, Q):
    """P(d)Q at the origin: sum over shared monomials of prod a_i! times the coefficients."""
    return sum((c * Q.terms[e] * apolar_weight(e) for e, c in P.terms.items() if e in Q.terms), Fraction(0))


def _to_fraction(v):
    return Fraction(int(v.p), int(v.q))


def _rref(vectors):
    """Canonical reduced row-echelon basis of the span of sparse dict vectors."""
    vectors = [v for v in vectors if v]
    if not vectors:
        return ()
    cols = sorted({e for v in vectors for e in v}, reverse=True)
    index = {e: j for j, e in enumerate(cols)}
    mat = flint.fmpq_mat(len(vectors), len(cols))
    for i, v in enumerate(vectors):
        for e, c in v.items():
            mat[i, index[e]] = flint.fmpq(c.numerator, c.denominator)
    red, rank = mat.rref()
    rows = []
    for i in range(rank):
        row = []
        for j in range(len(cols)):
            x = red[i, j]
            if x != 0:
                row.append((cols[j], _to_fraction(x)))
        rows.append(tuple(row))
    return tuple(rows)


def _nullspace(mat):
    """Basis of {c : mat * c = 0} as lists of Fractions."""
    ncols = mat.ncols()
    red, rank = mat.rref()
    pivots = []
    for i in range(rank):
        for j in range(ncols):
            if red[i, j] != 0:
                pivots.append(j)
                break
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for i, p in enumerate(pivots):
            vec[p] = -_to_fraction(red[i, f])
        basis.append(vec)
    return basis


def _combine(coeffs, rows):
    out = {}
    for c, row in zip(coeffs, rows):
        if c:
            for e, v in row:
                out[e] = out.get(e, 0) + c * v
    return {e: v for e, v in out.items() if v}


def _coordinates(vec, rows):
    """Coordinates of vec in an RREF basis; IntegrityError when vec is outside the span."""
    coords = [vec.get(row[0][0], Fraction(0)) for row in rows]
    residual = dict(vec)
    for c, row in zip(coords, rows):
        if c:
            for e, v in row:
                residual[e] = residual.get(e, 0) - c * v
    if any(residual.values()):
        raise IntegrityError("vector is not in the span of the block")
    return coords


@dataclass(frozen=True)
class BiPolySpace:
    """Bigraded subspace: bidegree -> canonical RREF rows."""

    n: int
    blocks: dict = field(default_factory=dict)

    @classmethod
    def from_polys(cls, n, polys):
        groups = {}
        for p in polys:
            for e, c in p.terms.items():
                groups.setdefault(_bidegree(e, n), {}).setdefault(id(p), {})[e] = c
        blocks = {}
        for deg, parts in groups.items():
            rows = _rref(list(parts.values()))
            if rows:
                blocks[deg] = rows
        return cls(n, blocks)

    @property
    def dimension(self):
        return sum(len(r) for r in self.blocks.values())

    def block_dims(self):
        return {deg: len(rows) for deg, rows in sorted(self.blocks.items())}

    def hilbert(self):
        """sum over bidegrees of dim * t^h q^k."""
        return QTPoly({(k, h): len(rows) for (h, k), rows in self.blocks.items()})

    def basis(self):
        out = []
        for deg in sorted(self.blocks):
            for row in self.blocks[deg]:
                out.append(BiPoly(self.n, dict(row)))
        return out

    def contains(self, poly):
        groups = {}
        for e, c in poly.terms.items():
            groups.setdefault(_bidegree(e, self.n), {})[e] = c
        for deg, vec in groups.items():
            try:
                _coordinates(vec, self.blocks.get(deg, ()))
            except IntegrityError:
                return False
        return True

    def __eq__(self, other):
        return isinstance(other, BiPolySpace) and self.n == other.n and self.blocks == other.blocks

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.blocks.items()))))

    def to_json(self, full=False):
        blocks = []
        for (h, k), rows in sorted(self.blocks.items()):
            entry = {"bidegree": [h, k], "rank": len(rows)}
            if full:
                entry["rows"] = [[[list(e), str(c)] for e, c in row] for row in rows]
            blocks.append(entry)
        return {"n": self.n, "dimension": self.dimension, "blocks": blocks}


def _guard(n):
    if n > MAX_SIZE:
        raise SizeGuardError(f"module computations are limited to n <= {MAX_SIZE}, got {n}")


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def biexponents(mu):
    """Lexicographically sorted (x, y) exponents of the cells of mu."""
    return sorted((i - 1, j - 1) for i, j in cells(mu))


def delta_mu(mu, n=None):
    """det || x_i^p_j y_i^q_j || with rows indexed by points and columns by sorted biexponents."""
    mu = as_partition(mu)
    n = size(mu) if n is None else n
    if n != size(mu):
        raise ValueError("n must equal |mu|")
    _guard(n)
    exps = biexponents(mu)
    terms = {}
    for perm in permutations(range(n)):
        e = [0] * (2 * n)
        for i, j in enumerate(perm):
            e[i] = exps[j][0]
            e[n + i] = exps[j][1]
        terms[tuple(e)] = terms.get(tuple(e), 0) + _perm_sign(perm)
    return BiPoly(n, terms)


def derivative_span(delta):
    """Span of all partial derivatives of a bihomogeneous polynomial, block by block.

    Bidegree (h, k) below the top x-degree is spanned by x-derivatives of
    (h+1, k); at the top x-degree it is spanned by y-derivatives of (h, k+1).
    """
    n = delta.n
    _guard(n)
    h0, k0 = delta.bidegree()
    blocks = {(h0, k0): _rref([delta.terms])}
    for h in range(h0, -1, -1):
        for k in range(k0, -1, -1):
            if (h, k) == (h0, k0):
                continue
            if h < h0:
                source, offset = blocks.get((h + 1, k), ()), 0
            else:
                source, offset = blocks.get((h, k + 1), ()), n
            gens = set()
            for row in source:
                terms = dict(row)
                for i in range(n):
                    d = _derive(terms, offset + i)
                    if d:
                        gens.add(tuple(sorted(d.items())))
            rows = _rref([dict(g) for g in gens])
            if rows:
                blocks[(h, k)] = rows
    return BiPolySpace(n, blocks)


@lru_cache(maxsize=None)
def module(mu):
    """M_mu as a BiPolySpace (cached)."""
    return derivative_span(delta_mu(as_partition(mu)))


def class_representative(lam):
    """A 0-based permutation with cycle type lam."""
    perm = []
    start = 0
    for part in lam:
        perm.extend(range(start + 1, start + part))
        perm.append(start)
        start += part
    return tuple(perm)


@dataclass(frozen=True)
class BigradedFrob:
    """Frobenius characteristic (Schur basis), Hilbert series, and traces per class."""

    frob: SymFunc
    hilb: QTPoly
    traces: dict

    def check(self):
        """Hilbert series matches and every coefficient is in Z>=0[q,t]."""
        if hilbert_poly(self.frob) != QTRat(self.hilb.to_rat()):
            return False
        return all(is_positive_integral(c)[0] for _, c in self.frob.items())

    def to_json(self):
        return {
            "frobenius": self.frob.to_json(),
            "hilbert": QTRat(self.hilb.to_rat()).to_json(),
        }


def block_trace(rows, sigma, n):
    total = Fraction(0)
    for i, row in enumerate(rows):
        total += _coordinates(_permute(dict(row), sigma, n), rows)[i]
    return total


def bigraded_frobenius(space, allow_large=False):
    """sum_{h,k} t^h q^k Frob(block (h,k)), by traces on class representatives."""
    n = space.n
    if n > TRACE_SIZE and not allow_large:
        raise SizeGuardError(f"character traces are limited to n <= {TRACE_SIZE} by default")
    traces = {}
    p_terms = {}
    for lam in partitions(n):
        sigma = class_representative(lam)
        poly = {}
        for (h, k), rows in space.blocks.items():
            tr = block_trace(rows, sigma, n)
            if tr.denominator != 1:
                raise IntegrityError("non-integral character value")
            if tr:
                poly[(k, h)] = tr
        traces[lam] = QTPoly(poly)
        if poly:
            p_terms[lam] = QTRat(QTPoly(poly).to_rat()) / z_lambda(lam)
    frob = SymFunc(n, "p", p_terms).convert("s")
    return BigradedFrob(frob=frob, hilb=space.hilbert(), traces=traces)


def _common_columns(*rowsets):
    return sorted({e for rows in rowsets for row in rows for e, _ in row}, reverse=True)


def _block_intersection(rv, rw):
    cols = _common_columns(rv, rw)
    index = {e: j for j, e in enumerate(cols)}
    stacked = list(rv) + list(rw)
    # left kernel of the stacked matrix = kernel of its transpose
    mat = flint.fmpq_mat(len(cols), len(stacked))
    for i, row in enumerate(stacked):
        for e, c in row:
            mat[index[e], i] = flint.fmpq(c.numerator, c.denominator)
    vecs = [_combine(k[: len(rv)], rv) for k in _nullspace(mat)]
    return _rref(vecs)


def intersect(V, W):
    if V.n != W.n:
        raise ValueError("spaces live in different polynomial rings")
    blocks = {}
    for deg in V.blocks.keys() & W.blocks.keys():
        rows = _block_intersection(V.blocks[deg], W.blocks[deg])
        if rows:
            blocks[deg] = rows
    return BiPolySpace(V.n, blocks)


def intersect_all(spaces):
    spaces = list(spaces)
    out = spaces[0]
    for s in spaces[1:]:
        out = intersect(out, s)
    return out


def join(V, W):
    if V.n != W.n:
        raise ValueError("spaces live in different polynomial rings")
    blocks = {}
    for deg in V.blocks.keys() | W.blocks.keys():
        rows = _rref([dict(r) for r in V.blocks.get(deg, ()) + W.blocks.get(deg, ())])
        if rows:
            blocks[deg] = rows
    return BiPolySpace(V.n, blocks)


def ortho_complement_in(V, W):
    """{w in W : <v, w> = 0 for all v in V} under the apolar pairing."""
    if V.n != W.n:
        raise ValueError("spaces live in different polynomial rings")
    blocks = {}
    for deg, rw in W.blocks.items():
        rv = V.blocks.get(deg)
        if not rv:
            blocks[deg] = rw
            continue
        gram = flint.fmpq_mat(len(rv), len(rw))
        wdicts = [dict(r) for r in rw]
        for i, row in enumerate(rv):
            for j, wd in enumerate(wdicts):
                val = sum((c * wd[e] * apolar_weight(e) for e, c in row if e in wd), Fraction(0))
                if val:
                    gram[i, j] = flint.fmpq(val.numerator, val.denominator)
        rows = _rref([_combine(k, rw) for k in _nullspace(gram)])
        if rows:
            blocks[deg] = rows
    return BiPolySpace(W.n, blocks)


def flip_space(V, delta):
    """Image of V under P -> P(d)delta."""
    if V.n != delta.n:
        raise ValueError("space and polynomial live in different rings")
    images = [p.apply_as_operator(delta) for p in V.basis()]
    return BiPolySpace.from_polys(V.n, [p for p in images if not p.is_zero()])


def y_degree_zero_dimension(space):
    return sum(len(rows) for (h, k), rows in space.blocks.items() if k == 0)


def x_degree_zero_dimension(space):
    return sum(len(rows) for (h, k), rows in space.blocks.items() if h == 0)


def is_flip_palindromic(space, mu):
    """hilb(1/q, 1/t) t^n(mu) q^n(mu') == hilb."""
    from .partitions import t_mu

    h = QTRat(space.hilbert().to_rat())
    return h.invert_vars() * QTRat(t_mu(mu).to_rat()) == h


def verify_nfactorial(mu, frobenius=False):
    """dim M_mu = |mu|!, and optionally its Frobenius characteristic equals tilde_H."""
    from .macdonald import tilde_H

    mu = as_partition(mu)
    space = module(mu)
    n = size(mu)
    ok = space.dimension == factorial(n)
    details = {"dimension": space.dimension, "expected": factorial(n)}
    if frobenius:
        bf = bigraded_frobenius(space)
        matches = bf.frob == tilde_H(mu).convert("s")
        details["frobenius_matches"] = matches
        details["frobenius_valid"] = bf.check()
        ok = ok and matches and details["frobenius_valid"]
    return check("n-factorial", mu, ok, witness=None if ok else details, **details)


def predecessor_modules(mu):
    cd = corner_data(as_partition(mu))
    return [module(a) for a in cd.predecessors]


def verify_sf_dimensions(mu):
    """Intersections of predecessor modules have dimension n!/|S|; three-corner block sizes."""
    mu = as_partition(mu)
    cd = corner_data(mu)
    n = size(mu) - 1
    mods = predecessor_modules(mu)
    reports = []
    dims = {}
    for k in range(1, cd.m + 1):
        for S in combinations(range(1, cd.m + 1), k):
            dim = intersect_all(mods[i - 1] for i in S).dimension
            dims[S] = dim
            expected = Fraction(factorial(n), k)
            reports.append(check("intersection-dimension", mu, dim == expected, S=list(S),
                                 witness=None if dim == expected else {"dimension": dim},
                                 dimension=dim, expected=str(expected)))
    if cd.m == 3:
        d1 = dims[(1, 2, 3)]
        ok1 = d1 == Fraction(factorial(n), 3)
        reports.append(check("three-corner-d1", mu, ok1, dimension=d1))
        for pair in combinations((1, 2, 3), 2):
            d2 = dims[pair] - d1
            ok2 = d2 == Fraction(factorial(n), 6)
            reports.append(check("three-corner-d2", mu, ok2, S=list(pair), dimension=d2))
    return reports


def verify_slice(mu):
    """The y-degree-0 part of M_mu has dimension multinomial(n; mu)."""
    mu = as_partition(mu)
    dim = y_degree_zero_dimension(module(mu))
    return check("y-degree-zero-slice", mu, dim == multinomial(mu), dimension=dim, expected=multinomial(mu))


def dumps_space(space, full=False):
    return json.dumps(space.to_json(full), sort_keys=True, separators=(",", ":"))
