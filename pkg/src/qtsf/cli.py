"""Command-line workbench: tables, identity suites, characteristic and module dumps.

Exit codes: 0 when every check passes, 1 when some check fails, 2 for usage
or configuration errors.
"""
from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import click

from .errors import ParseError, QTSFError
from .partitions import f_lambda, format_partition, parse_partition, partitions

SUITES = ("macdonald-basics", "sf-positivity", "pieri", "bh", "butler", "modules", "dimensions")
SYMBOLIC_MAX = 7
MODULE_MAX = 6
DEFAULT_N = {"modules": 5, "dimensions": 6}
EXIT_FAIL = 1
EXIT_USAGE = 2


@dataclass
class RunConfig:
    max_n: int = 6
    cache_dir: str | None = None
    emit_format: str = "json"
    threads: int = 1
    suites: list = field(default_factory=list)


def _cache_dir(flag):
    return os.environ.get("QTSF_CACHE") or flag


def _prepare_tables(max_degree, cfg):
    from .macdonald import get_table

    for k in range(1, max_degree + 1):
        get_table(k, cache_dir=cfg.cache_dir, threads=cfg.threads)


def _dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def _write(text, emit):
    if emit:
        Path(emit).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


def _parse_mu(ctx, param, value):
    if value is None:
        return None
    try:
        return parse_partition(value)
    except ParseError as exc:
        raise click.BadParameter(str(exc)) from exc


def _parse_subset(ctx, param, value):
    if value is None:
        return None
    try:
        return tuple(int(v) for v in value.split(","))
    except ValueError as exc:
        raise click.BadParameter(f"bad corner list {value!r}") from exc


def _usage(msg):
    click.echo(f"error: {msg}", err=True)
    sys.exit(EXIT_USAGE)


def _render_sym(f, fmt):
    if fmt == "json":
        return _dumps(f.to_json())
    if fmt == "latex":
        return f.latex() + "\n"
    return str(f) + "\n"


common = [
    click.option("--cache-dir", default=None, type=click.Path(file_okay=False), help="Table cache directory."),
    click.option("--threads", default=1, show_default=True, type=click.IntRange(1, 64)),
]


def with_common(fn):
    for opt in reversed(common):
        fn = opt(fn)
    return fn


@click.group()
def cli():
    """Exact q,t symmetric-function and module workbench."""


# -- kostka ---------------------------------------------------------------------


def _kostka_latex(n, table):
    parts = partitions(n)
    head = " & ".join(format_partition(mu) for mu in parts)
    lines = [r"\begin{tabular}{l|" + "l" * len(parts) + "}", r"$\lambda \backslash \mu$ & " + head + r" \\", r"\hline"]
    for lam in parts:
        row = " & ".join("$" + table.Ktilde[(lam, mu)].latex() + "$" for mu in parts)
        lines.append(format_partition(lam) + " & " + row + r" \\")
    lines.append(r"\end{tabular}")
    return "\n".join(lines) + "\n"


@cli.command()
@click.option("--n", "n", required=True, type=int)
@click.option("--format", "fmt", type=click.Choice(["json", "latex", "text"]), default="json", show_default=True)
@click.option("--check-f-lambda", is_flag=True, help="Verify K(1,1) = f_lambda for every entry.")
@click.option("--emit", default=None, type=click.Path(dir_okay=False), help="Write the artifact to a file.")
@with_common
def kostka(n, fmt, check_f_lambda, emit, cache_dir, threads):
    """Emit the q,t-Kostka table for all partitions of n."""
    cfg = RunConfig(cache_dir=_cache_dir(cache_dir), threads=threads, emit_format=fmt)
    if n < 0 or n > SYMBOLIC_MAX:
        _usage(f"--n must lie in 0..{SYMBOLIC_MAX}")
    if n == 0:
        _write(_dumps({"n": 0, "partitions": [], "entries": []}) if fmt == "json" else "", emit)
        return
    from .macdonald import get_table

    table = get_table(n, cache_dir=cfg.cache_dir, threads=cfg.threads)
    parts = partitions(n)
    failures = []
    if check_f_lambda:
        for lam in parts:
            for mu in parts:
                v = table.Ktilde[(lam, mu)].evaluate(1, 1)
                if v != f_lambda(lam):
                    failures.append({"lambda": list(lam), "mu": list(mu), "value": str(v)})
    if fmt == "json":
        entries = [
            {"lambda": list(lam), "mu": list(mu), "value": table.Ktilde[(lam, mu)].to_json()}
            for mu in parts for lam in parts
        ]
        obj = {"n": n, "partitions": [list(p) for p in parts], "entries": entries}
        if check_f_lambda:
            obj["f_lambda_check"] = {"status": "fail" if failures else "pass", "failures": failures}
        text = _dumps(obj)
    elif fmt == "latex":
        text = _kostka_latex(n, table)
    else:
        lines = [f"H~[{format_partition(mu)}] = {table.Htilde[mu]}" for mu in parts]
        if check_f_lambda:
            lines.append("f_lambda check: " + ("FAIL" if failures else "PASS"))
        text = "\n".join(lines) + "\n"
    _write(text, emit)
    if failures:
        sys.exit(EXIT_FAIL)


# -- verify ---------------------------------------------------------------------


def _suite_macdonald(n, mu):
    from .identities import _nonpositive_terms
    from .macdonald import (at_t1, check_conjugation, check_delta_eigen, check_duality,
                            check_rectangle_recursion, specialize_t1, tilde_H)
    from .report import check

    out = []
    shapes = [mu] if mu else [m for k in range(1, n + 1) for m in partitions(k)]
    for m in shapes:
        h = tilde_H(m)
        bad = _nonpositive_terms(h)
        out.append(check("kostka-positive", m, not bad, witness=bad))
        ones = [lam for lam in partitions(sum(m)) if h.coefficient(lam).evaluate(1, 1) != f_lambda(lam)]
        out.append(check("kostka-at-one", m, not ones, witness=[list(x) for x in ones]))
        out.append(check("duality", m, check_duality(m)))
        out.append(check("conjugation", m, check_conjugation(m)))
        out.append(check("t-equals-one", m, at_t1(h) == specialize_t1(m)))
        if sum(m) <= 5:
            out.append(check("fragment-operator-eigen", m, check_delta_eigen(m)))
    for r in range(1, n + 1):
        for s in range(1, n // r + 1):
            if not mu:
                out.append(check("rectangle-recursion", (r,) * s, check_rectangle_recursion(r, s)))
    return out


def _suite_sf(n, mu):
    from .identities import (positivity_audit, verify_down_arrow_symmetry, verify_nabla_family,
                             verify_predecessor_expansion, verify_superset_routes, verify_union_and_inverse)
    from .report import check

    out = []
    shapes = [mu] if mu else [m for k in range(2, n + 1) for m in partitions(k)]
    for m in shapes:
        for fn in (verify_superset_routes, verify_nabla_family, verify_down_arrow_symmetry,
                   verify_predecessor_expansion, verify_union_and_inverse):
            out.extend(_as_list(fn(m)))
    for k in range(1, n):
        viol = positivity_audit(k)
        out.append(check("positivity-audit", (k + 1,), not viol, witness=viol, violations=len(viol)))
    return out


def _suite_pieri(n, mu):
    from .bh import bh_reassemble
    from .identities import b_mu_k, pieri_phi_expansion, verify_pieri
    from .partitions import b_mu, corner_data
    from .qtalgebra import QTRat, is_positive_integral
    from .report import check

    out = []
    shapes = [mu] if mu else [m for k in range(1, n + 1) for m in partitions(k)]
    for m in shapes:
        out.extend(verify_pieri(m))
        out.append(check("bh-route", m, bh_reassemble(m) == pieri_phi_expansion(m)))
        cd = corner_data(m)
        ok = all(is_positive_integral(b_mu_k(m, k))[0] for k in range(1, cd.m + 2))
        out.append(check("pieri-weights-positive", m, ok))
        out.append(check("pieri-weight-first", m, b_mu_k(m, 1) == QTRat(b_mu(m))))
    return out


def _suite_bh(n, mu):
    from .bh import bh_assign, check_assignment, check_gamma, check_regions, check_row_recursion, \
        two_corner_regions, verify_reassembly
    from .report import check

    out = []
    shapes = [mu] if mu else [m for k in range(1, n + 1) for m in partitions(k)]
    for m in shapes:
        out.append(check("bh-assignment", m, check_assignment(bh_assign(m))))
        out.append(check("bh-closed-form", m, check_gamma(m)))
        out.append(check("bh-row-recursion", m, check_row_recursion(m)))
        out.append(check("bh-reassembly", m, verify_reassembly(m)))
        if len(set(m)) == 2:
            out.append(check("two-corner-regions", m, check_regions(two_corner_regions(m))))
    return out


def _suite_butler(n, mu):
    from .identities import verify_butler

    out = []
    for k in range(2, n + 1):
        out.extend(r for r in verify_butler(k) if not mu or r.mu == mu)
    return out


def _suite_modules(n, mu):
    from .orbit import TRACE_SIZE, is_flip_palindromic, module, verify_nfactorial, verify_slice
    from .report import check

    out = []
    shapes = [mu] if mu else [m for k in range(1, n + 1) for m in partitions(k)]
    for m in shapes:
        out.append(verify_nfactorial(m, frobenius=sum(m) <= TRACE_SIZE))
        out.append(verify_slice(m))
        out.append(check("hilbert-palindromic", m, is_flip_palindromic(module(m), m)))
    return out


def _suite_dimensions(n, mu):
    from .identities import expected_dimension, lagrange_limit_check, nonempty_subsets, sf_dimension_limit
    from .orbit import verify_sf_dimensions
    from .partitions import corner_data
    from .qtalgebra import QTRat
    from .report import check

    out = []
    shapes = [mu] if mu else [m for k in range(2, n + 1) for m in partitions(k)]
    for m in shapes:
        for S in nonempty_subsets(corner_data(m).m):
            val = sf_dimension_limit(m, S)
            exp = QTRat(expected_dimension(m, S))
            out.append(check("dimension-limit", m, val == exp, S=S, value=val))
    if mu:
        if sum(mu) <= MODULE_MAX:
            out.extend(verify_sf_dimensions(mu))
    else:
        for ys in ([1, 2], [1, 3, 7], [-2, 5, 1, 4]):
            val = lagrange_limit_check(ys)
            out.append(check("lagrange-limit", (), val == QTRat(1) / len(ys), value=val, exponents=ys))
    return out


def _as_list(x):
    return x if isinstance(x, list) else [x]


SUITE_RUNNERS = {
    "macdonald-basics": _suite_macdonald,
    "sf-positivity": _suite_sf,
    "pieri": _suite_pieri,
    "bh": _suite_bh,
    "butler": _suite_butler,
    "modules": _suite_modules,
    "dimensions": _suite_dimensions,
}


@cli.command()
@click.argument("suite", type=click.Choice(SUITES))
@click.option("--n", "n", default=None, type=int, help="Largest size covered (suite default when omitted).")
@click.option("--mu", default=None, callback=_parse_mu, help="Restrict to one partition, e.g. 3,2,1.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json", show_default=True)
@click.option("--emit", default=None, type=click.Path(dir_okay=False))
@with_common
def verify(suite, n, mu, fmt, emit, cache_dir, threads):
    """Run an identity suite; exit 0 iff every check passes."""
    cfg = RunConfig(cache_dir=_cache_dir(cache_dir), threads=threads, emit_format=fmt, suites=[suite])
    module_suite = suite in ("modules",)
    limit = MODULE_MAX if module_suite else SYMBOLIC_MAX
    if n is None:
        n = sum(mu) if mu else DEFAULT_N.get(suite, cfg.max_n)
    if n < 1 or n > limit:
        _usage(f"--n must lie in 1..{limit} for suite {suite}")
    if mu is not None and (not mu or sum(mu) > limit):
        _usage(f"--mu must be a nonempty partition of size <= {limit}")
    effective = max(n, sum(mu) if mu else 0)
    _prepare_tables(min(effective, SYMBOLIC_MAX), cfg)
    reports = SUITE_RUNNERS[suite](n, mu)
    passed = all(r.passed for r in reports)
    if fmt == "json":
        text = _dumps({
            "suite": suite,
            "n": n,
            "mu": list(mu) if mu else None,
            "status": "pass" if passed else "fail",
            "checks": len(reports),
            "reports": [r.to_json() for r in reports],
        })
    else:
        lines = []
        for r in reports:
            extra = f" S={list(r.S)}" if r.S is not None else ""
            lines.append(f"{'PASS' if r.passed else 'FAIL'} {r.identity} mu={format_partition(r.mu)}{extra}")
        lines.append(f"{suite}: {'pass' if passed else 'fail'} ({len(reports)} checks)")
        text = "\n".join(lines) + "\n"
    _write(text, emit)
    sys.exit(0 if passed else EXIT_FAIL)


# -- phi ------------------------------------------------------------------------


@cli.command()
@click.option("--mu", required=True, callback=_parse_mu)
@click.option("--k", "k", default=None, type=int, help="Family member index 1..m.")
@click.option("--superset", default=None, callback=_parse_subset, help="Corner subset, e.g. 1,2.")
@click.option("--format", "fmt", type=click.Choice(["json", "latex", "text"]), default="text", show_default=True)
@click.option("--emit", default=None, type=click.Path(dir_okay=False))
@with_common
def phi(mu, k, superset, fmt, emit, cache_dir, threads):
    """Emit Phi_mu, a family member (--k), or a superset value (--superset)."""
    from .identities import phi_k, phi_mu, phi_superset

    cfg = RunConfig(cache_dir=_cache_dir(cache_dir), threads=threads, emit_format=fmt)
    if not mu or sum(mu) - 1 > SYMBOLIC_MAX or sum(mu) < 2:
        _usage(f"--mu must have size 2..{SYMBOLIC_MAX + 1}")
    if k is not None and superset is not None:
        _usage("--k and --superset are mutually exclusive")
    _prepare_tables(sum(mu) - 1, cfg)
    try:
        if k is not None:
            f = phi_k(mu, k)
        elif superset is not None:
            f = phi_superset(mu, superset)
        else:
            f = phi_mu(mu)
    except ValueError as exc:
        _usage(str(exc))
    _write(_render_sym(f.convert("s"), fmt), emit)


# -- bh -------------------------------------------------------------------------


@cli.command()
@click.option("--mu", required=True, callback=_parse_mu)
@click.option("--emit", default=None, type=click.Path(dir_okay=False), help="Write the JSON artifact to a file.")
@with_common
def bh(mu, emit, cache_dir, threads):
    """Cell assignments, row polynomials and the reassembly verdict."""
    from .bh import bh_assign, check_gamma, pi_recursion, two_corner_regions, verify_reassembly

    cfg = RunConfig(cache_dir=_cache_dir(cache_dir), threads=threads)
    if not mu or sum(mu) > SYMBOLIC_MAX:
        _usage(f"--mu must be a nonempty partition of size <= {SYMBOLIC_MAX}")
    _prepare_tables(sum(mu), cfg)
    ca = bh_assign(mu)
    pis = pi_recursion(mu)
    ok = verify_reassembly(mu) and check_gamma(mu)
    obj = {
        "assignment": ca.to_json(),
        "pi": [[c.to_json() for c in p.padded(ca.m)] for p in pis],
        "verdict": "pass" if ok else "fail",
    }
    if len(set(mu)) == 2:
        obj["regions"] = two_corner_regions(mu).to_json()
    _write(_dumps(obj), emit)
    sys.exit(0 if ok else EXIT_FAIL)


# -- module ---------------------------------------------------------------------


@cli.command("module")
@click.option("--mu", required=True, callback=_parse_mu)
@click.option("--frobenius", is_flag=True, help="Also compute the bigraded Frobenius characteristic.")
@click.option("--full", is_flag=True, help="Include the row-reduced matrices.")
@click.option("--emit", default=None, type=click.Path(dir_okay=False))
@with_common
def module_cmd(mu, frobenius, full, emit, cache_dir, threads):
    """Dump the block structure of M_mu."""
    from .orbit import TRACE_SIZE, bigraded_frobenius, module

    if not mu or sum(mu) > MODULE_MAX:
        _usage(f"--mu must be a nonempty partition of size <= {MODULE_MAX}")
    if frobenius and sum(mu) > TRACE_SIZE:
        _usage(f"--frobenius is limited to size <= {TRACE_SIZE}")
    space = module(mu)
    obj = {"mu": list(mu), "space": space.to_json(full)}
    if frobenius:
        obj["frobenius"] = bigraded_frobenius(space).to_json()
    _write(_dumps(obj), emit)


def main(argv=None):
    try:
        cli.main(args=argv, prog_name="qtsf", standalone_mode=True)
    except QTSFError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_USAGE)


if __name__ == "__main__":
    main()
