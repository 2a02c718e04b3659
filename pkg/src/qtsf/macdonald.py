"""Macdonald polynomials P, J, H and the modified basis H-tilde.

P_mu is built by Gram-Schmidt in the q,t inner product, walking the
partitions of n in increasing lexicographic order (a linear extension of
dominance).  J, H and H-tilde then follow by hook scaling, scalar plethysm
and the t -> 1/t twist.  Tables of H-tilde are memoized per degree and can be
persisted as JSON with a content hash.
"""
from __future__ import annotations

import hashlib
import json
import os
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from pathlib import Path

from .errors import ChecksumError, ParseError
from .partitions import (
    as_partition,
    b_mu,
    hook_products,
    n_stat,
    partitions,
    t_mu,
)
from .qtalgebra import ONE, ZERO, Q, QTRat, T
from .symfunc import (
    SymFunc,
    _e_row,
    hilbert_poly,
    plethysm_scalar,
    product,
    qt_inner,
)


# -- P, J, H, H-tilde -----------------------------------------------------------


@lru_cache(maxsize=None)
def _gram_schmidt(n):
    """{mu: P_mu in the p basis} for every mu of n."""
    basis = {}
    norms = {}
    for mu in reversed(partitions(n)):
        m_mu = SymFunc.basis_element("m", mu).to_p()
        v = m_mu
        for nu, p_nu in basis.items():
            c = qt_inner(m_mu, p_nu) / norms[nu]
            if c:
                v = v - p_nu.scale(c)
        norm = qt_inner(v, v)
        if not norm:
            raise ArithmeticError(f"degenerate Gram system at {mu}")
        basis[mu] = v
        norms[mu] = norm
    return basis


def macdonald_P(mu):
    """P_mu expanded in the monomial basis."""
    mu = as_partition(mu)
    return _gram_schmidt(sum(mu))[mu].convert("m")


def integral_J(mu):
    mu = as_partition(mu)
    h, _ = hook_products(mu)
    return _gram_schmidt(sum(mu))[mu].scale(h)


def macdonald_H(mu):
    """H_mu = J_mu[X/(1-t)], in the s basis."""
    return plethysm_scalar(integral_J(mu), 1 / (1 - T)).convert("s")


def _tilde_from_H(mu, h_mu):
    shift = T ** n_stat(mu)
    return h_mu.map_coefficients(lambda c: c.invert_t() * shift).convert("s")


def tilde_H_direct(mu):
    """H-tilde_mu computed from scratch (no table lookup)."""
    mu = as_partition(mu)
    return _tilde_from_H(mu, plethysm_scalar(integral_J(mu), 1 / (1 - T)))


# -- tables ---------------------------------------------------------------------


@dataclass
class MacdonaldTable:
    """All H-tilde_mu for mu of n, with Kostka entries K[(lam, mu)]."""

    n: int
    Htilde: dict
    Ktilde: dict = field(default_factory=dict)
    T: dict = field(default_factory=dict)
    _inverse: dict | None = field(default=None, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self):
        if not self.Ktilde:
            self.Ktilde = {
                (lam, mu): self.Htilde[mu].coefficient(lam)
                for mu in self.Htilde
                for lam in partitions(self.n)
            }
        if not self.T:
            self.T = {mu: t_mu(mu) for mu in self.Htilde}

    def inverse_kostka(self):
        """{lam: {mu: c}} with s_lam = sum_mu c * H-tilde_mu."""
        with self._lock:
            if self._inverse is None:
                self._inverse = _invert_qtrat(
                    {mu: self.Htilde[mu].terms for mu in self.Htilde}, list(partitions(self.n))
                )
            return self._inverse

    def expand(self, f):
        """Coefficients of f (any basis, degree n) on the H-tilde basis."""
        fs = f.convert("s")
        inv = self.inverse_kostka()
        out = {}
        for lam, c in fs.items():
            for mu, v in inv[lam].items():
                out[mu] = out.get(mu, ZERO) + c * v
        return {k: v for k, v in out.items() if v}

    def assemble(self, coeffs):
        total = SymFunc.zero(self.n, "s")
        for mu, c in coeffs.items():
            if c:
                total = total + self.Htilde[mu].scale(c)
        return total

    def to_json(self):
        entries = [
            {"mu": list(mu), "sym": self.Htilde[mu].to_json()} for mu in partitions(self.n)
        ]
        return {"n": self.n, "hash": _content_hash(entries), "entries": entries}


def _invert_qtrat(rows, keys):
    """Invert the matrix M[mu][lam] (rows = H-tilde_mu in s) over Q(q,t).

    Returns inv[lam][mu] with s_lam = sum_mu inv[lam][mu] H-tilde_mu.
    """
    size = len(keys)
    idx = {k: i for i, k in enumerate(keys)}
    a = [[ZERO] * size + [ONE if i == j else ZERO for j in range(size)] for i in range(size)]
    for mu, row in rows.items():
        for lam, v in row.items():
            a[idx[mu]][idx[lam]] = v
    for col in range(size):
        candidates = [r for r in range(col, size) if a[r][col]]
        piv = min(candidates, key=lambda r: (not a[r][col].is_constant(), len(str(a[r][col]))))
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col].inverse()
        a[col] = [v * inv if v else v for v in a[col]]
        for r in range(size):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w if w else v for v, w in zip(a[r], a[col])]
    # row lam of the right half is the H-tilde expansion of s_lam
    return {
        keys[i]: {keys[j]: a[i][size + j] for j in range(size) if a[i][size + j]}
        for i in range(size)
    }


def _content_hash(entries):
    blob = json.dumps(entries, sort_keys=True, separators=(",", ":")).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


def table_build(n, threads=1):
    basis = _gram_schmidt(n)
    parts = partitions(n)

    def one(mu):
        h, _ = hook_products(mu)
        return _tilde_from_H(mu, plethysm_scalar(basis[mu].scale(h), 1 / (1 - T)))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one, parts))
    else:
        results = [one(mu) for mu in parts]
    return MacdonaldTable(n=n, Htilde=dict(zip(parts, results)))


def table_save(table, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(table.to_json(), sort_keys=True, indent=1), encoding="utf-8")
    os.replace(tmp, path)


def table_load(path):
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
        entries = obj["entries"]
        n = obj["n"]
        stored = obj["hash"]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise ChecksumError(f"unreadable table cache {path}: {exc}") from exc
    if _content_hash(entries) != stored:
        raise ChecksumError(f"checksum mismatch in {path}")
    try:
        ht = {tuple(e["mu"]): SymFunc.from_json(e["sym"]) for e in entries}
    except (KeyError, TypeError, ParseError) as exc:
        raise ChecksumError(f"malformed entries in {path}: {exc}") from exc
    if set(ht) != set(partitions(n)):
        raise ChecksumError(f"table {path} does not cover all partitions of {n}")
    return MacdonaldTable(n=n, Htilde=ht)


def cache_path(cache_dir, n):
    return Path(cache_dir) / "tables" / f"htilde_n{n}.json"


_TABLES = {}
_TABLES_LOCK = threading.Lock()


def get_table(n, cache_dir=None, threads=1):
    """Memoized table for degree n, optionally backed by a JSON file cache."""
    cache_dir = cache_dir or os.environ.get("QTSF_CACHE")
    with _TABLES_LOCK:
        if n in _TABLES:
            return _TABLES[n]
    table = None
    if cache_dir:
        path = cache_path(cache_dir, n)
        if path.exists():
            table = table_load(path)
    if table is None:
        table = table_build(n, threads=threads)
        if cache_dir:
            table_save(table, cache_path(cache_dir, n))
    with _TABLES_LOCK:
        return _TABLES.setdefault(n, table)


def tilde_H(mu):
    mu = as_partition(mu)
    return get_table(sum(mu)).Htilde[mu]


def kostka(lam, mu):
    return tilde_H(mu).coefficient(as_partition(lam))


def htilde_convert(f, target):
    """Base change into or out of the H-tilde basis."""
    if f.basis == target:
        return f
    table = get_table(f.degree)
    if f.basis == "Htilde":
        s = table.assemble(f.terms)
        return s if target == "s" else s.convert(target)
    if target == "Htilde":
        return SymFunc(f.degree, "Htilde", table.expand(f))
    raise ValueError(f"unsupported conversion {f.basis} -> {target}")


# -- nabla ------------------------------------------------------------------------


def apply_nabla_polynomial(f, coeffs):
    """sum_j coeffs[j] nabla^j f; entries of coeffs may be QTRat-coercible."""
    table = get_table(f.degree)
    out = {}
    for mu, c in table.expand(f).items():
        tm = QTRat(table.T[mu])
        val = ZERO
        power = ONE
        for a in coeffs:
            val = val + QTRat(a) * power
            power = power * tm
        out[mu] = c * val
    return table.assemble(out)


def nabla_power(f, k):
    """nabla^k f for any integer k."""
    table = get_table(f.degree)
    out = {mu: c * QTRat(table.T[mu]) ** k for mu, c in table.expand(f).items()}
    return table.assemble(out)


def nabla(f):
    return nabla_power(f, 1)


def nabla_inverse(f):
    return nabla_power(f, -1)


# -- specializations and the difference operator --------------------------------


def q_pochhammer(k):
    out = ONE
    for i in range(1, k + 1):
        out = out * (1 - Q ** i)
    return out


def specialize_t1(mu):
    """prod_i (q)_{mu_i} h_{mu_i}[X/(1-q)] in the s basis."""
    mu = as_partition(mu)
    total = SymFunc.basis_element("s", ())
    for k in mu:
        factor = plethysm_scalar(SymFunc.basis_element("h", (k,)), 1 / (1 - Q)).scale(q_pochhammer(k))
        total = product(total, factor)
    return total.convert("s")


def at_t1(f):
    return f.map_coefficients(QTRat.specialize_t1)


def delta_diff(f):
    """P[X] - P[X + (1-t)(1-q)/z] Omega[-zX] at z^0, computed in the p basis.

    Shifting the alphabet sends p_k to p_k + (1-t^k)(1-q^k) z^(-k); a subset S
    of the parts of rho shifted this way contributes z^(-|S|), which pairs
    with the (-z)^|S| e_|S| term of Omega[-zX].
    """
    n = f.degree
    out = {}
    shift = {k: (1 - T ** k) * (1 - Q ** k) for k in range(1, n + 1)}
    for rho, c in f.to_p().items():
        for size in range(1, len(rho) + 1):
            for chosen in combinations(range(len(rho)), size):
                j = sum(rho[i] for i in chosen)
                weight = c
                for i in chosen:
                    weight = weight * shift[rho[i]]
                if j % 2:
                    weight = -weight
                rest = tuple(rho[i] for i in range(len(rho)) if i not in chosen)
                for sigma, e in _e_row(j).items():
                    key = tuple(sorted(rest + sigma, reverse=True))
                    out[key] = out.get(key, ZERO) - weight * e
    res = SymFunc(n, "p", out)
    return res.convert(f.basis) if f.basis != "Htilde" else res.convert("s")


# -- checks used by the verification suites ---------------------------------------


def check_duality(mu):
    """omega H-tilde_mu(1/q, 1/t) T_mu == H-tilde_mu."""
    from .symfunc import flip_char

    h = tilde_H(mu)
    return flip_char(h, mu) == h


def check_conjugation(mu):
    from .partitions import conjugate

    return tilde_H(conjugate(mu)) == tilde_H(mu).map_coefficients(QTRat.swap_vars)


def hilbert_series(mu):
    return hilbert_poly(tilde_H(mu))


def check_rectangle_recursion(r, s):
    """G_{r^s} == B_{r^s} G_{(r^(s-1), r-1)} for Hilbert series G."""
    rect = (r,) * s
    pred = tuple(p for p in (r,) * (s - 1) + (r - 1,) if p)
    lhs = hilbert_series(rect)
    rhs = QTRat(b_mu(rect)) * hilbert_series(pred)
    return lhs == rhs


def check_delta_eigen(mu):
    h = tilde_H(mu)
    expected = h.scale((1 - T) * (1 - Q) * QTRat(b_mu(mu)))
    return delta_diff(h) == expected
