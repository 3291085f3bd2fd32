"""Command-line front end.

Subcommands:

* ``group``: build a Coxeter group, print order / longest length / FC count;
* ``kl``: print the full table of KL polynomials h_{y,x};
* ``grrk``: print the graded rank of every element;
* ``esign``: print the sign idempotent of the Hecke algebra;
* ``jw``: print a Jones-Wenzl document (closed formula, Wenzl recursion,
  or projection of the sign idempotent);
* ``verify``: run a named verification suite and exit 0 or 1.

Conventions shared by every subcommand:

* generator indices in emitted words are 1-based; the identity prints
  as ``e``;
* ``--rank`` is the Coxeter rank, with one exception: for ``jw`` in
  family A the rank is the strand count n, so ``jw --family A --rank 3``
  prints j_3, which lives over the symmetric group S_3 = A_2 (this is
  the usual indexing of TL_n);
* documents are deterministic: the same arguments produce byte-identical
  output across runs, warm or cold cache;
* exit codes: 0 success, 1 verification failure, 2 invalid input or
  unsupported family.

Families F4 and H4 are gated behind ``--allow-large``; subcommands that
need Kazhdan-Lusztig data additionally require a cache directory
(``--cache-dir`` or the JWKIT_CACHE_DIR environment variable) so the
expensive columns persist across runs.

``--threads`` is accepted and validated, and caps internal parallelism.
The current implementation computes sequentially, which respects any
positive cap; the flag exists so scripts written against it keep
working if parallel column computation is added later.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .coxeter import (
    GroupTable,
    LargeComputationError,
    UnsupportedFamilyError,
    build_group,
    presentation,
)
from .grank import grrk, jw_coefficient
from .gtl import (
    GTLElt,
    IdealClosureError,
    check_ideal_closure,
    gen_jw_closed,
    gen_jw_projection,
    gtl_multiply,
)
from .hecke import (
    CacheFormatError,
    KLTable,
    antisymmetriser,
    kl_product_coeffs,
    load_kl_cache,
    to_kl_basis,
    verify_bar_invariance,
    write_kl_cache,
)
from .qpoly import LaurentPoly, RatFunc, parity_class
from .tl import (
    Diagram,
    TLElt,
    closed_jw,
    jw_minus,
    monomial,
    multiply_tl,
    project_pi,
    wenzl_jw,
)

_LARGE_FAMILIES = {"F4", "H4"}

_SUITES = (
    "parity",
    "bar-invariance",
    "bruhat-order",
    "triple-agreement",
    "idempotency",
    "annihilation",
    "mu-identity",
    "ideal-closure",
    "gen-agreement",
)


@dataclass
class JobConfig:
    """Validated run configuration for one subcommand invocation."""

    command: str
    family: str
    rank: Optional[int]
    m: Optional[int]
    method: str
    sign: str
    output: str
    cache_dir: Optional[str]
    allow_large: bool
    threads: int
    suites: tuple[str, ...]


class UsageError(Exception):
    """Invalid input; maps to exit code 2."""


# -- document rendering ------------------------------------------------------------


def _word_str(g: GroupTable, x: int) -> str:
    return "".join(str(s + 1) for s in g.word[x]) or "e"


def _poly_latex(p: LaurentPoly) -> str:
    if p.is_zero:
        return "0"
    bits = []
    terms = sorted(p.items(), key=lambda ec: -ec[0])
    for e, c in terms:
        frac = Fraction(c)
        mag = abs(frac)
        if e == 0:
            base = ""
        elif e == 1:
            base = "v"
        else:
            base = "v^{%d}" % e
        if mag == 1 and base:
            coeff = ""
        elif mag.denominator == 1:
            coeff = str(mag.numerator)
        else:
            coeff = "\\tfrac{%d}{%d}" % (mag.numerator, mag.denominator)
        term = (coeff + base) or "1"
        bits.append(("-" if frac < 0 else "+", term))
    head = ("-" if bits[0][0] == "-" else "") + bits[0][1]
    return head + "".join(f" {s} {t}" for s, t in bits[1:])


def _rat_latex(r: RatFunc) -> str:
    if r.den.is_one:
        return _poly_latex(r.num)
    return "\\frac{%s}{%s}" % (_poly_latex(r.num), _poly_latex(r.den))


def _rat_doc(r: RatFunc) -> dict:
    doc = r.to_triples()
    doc["display"] = repr(r)
    return doc


def _emit_json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _emit_csv(columns: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    w.writerows(rows)
    return buf.getvalue()


def _emit_latex(columns: list[str], rows: list[list[str]], title: str) -> str:
    out = ["% " + title, "\\begin{tabular}{" + "l" * len(columns) + "}"]
    out.append(" & ".join(columns) + " \\\\")
    out.append("\\hline")
    for row in rows:
        out.append(" & ".join(row) + " \\\\")
    out.append("\\end{tabular}")
    return "\n".join(out) + "\n"


# -- group construction and caching ---------------------------------------------------


def _build(cfg: JobConfig, needs_kl: bool):
    """Build the group and, when needed, its KL table with cache attach."""
    fam = cfg.family
    cache_dir = cfg.cache_dir or os.environ.get("JWKIT_CACHE_DIR")
    if fam in _LARGE_FAMILIES:
        if not cfg.allow_large:
            raise UsageError(
                f"family {fam} is a large computation; pass --allow-large to proceed"
            )
        if needs_kl and not cache_dir:
            raise UsageError(
                f"family {fam} requires a cache directory for KL data; "
                "pass --cache-dir or set JWKIT_CACHE_DIR"
            )
    pres = presentation(fam, rank=cfg.rank, m=cfg.m)
    g = build_group(pres, allow_large=cfg.allow_large)
    if not needs_kl:
        return g, None, None
    table = KLTable(g)
    cache_path = None
    if cache_dir:
        tag = f"m{pres.m_parameter}" if pres.family == "I2" else str(pres.rank)
        cache_path = os.path.join(cache_dir, f"kl-{pres.family}-{tag}.kltab")
        if os.path.exists(cache_path):
            try:
                load_kl_cache(cache_path, table)
            except CacheFormatError as exc:
                print(f"warning: ignoring corrupt cache {cache_path}: {exc}", file=sys.stderr)
                table = KLTable(g)
    return g, table, cache_path


def _save_cache(table: Optional[KLTable], cache_path: Optional[str]) -> None:
    if table is None or cache_path is None:
        return
    try:
        os.makedirs(os.path.dirname(cache_path) or ".", exist_ok=True)
        write_kl_cache(cache_path, table)
    except OSError as exc:
        print(f"warning: could not write cache {cache_path}: {exc}", file=sys.stderr)


def _group_doc_header(g: GroupTable) -> dict:
    pres = g.presentation
    return {
        "family": pres.family,
        "rank": pres.rank,
        "m": pres.m_parameter if pres.family == "I2" else None,
    }


# -- subcommands -----------------------------------------------------------------------


def _cmd_group(cfg: JobConfig) -> str:
    g, _, _ = _build(cfg, needs_kl=False)
    doc = _group_doc_header(g)
    doc.update(
        {
            "order": g.size,
            "longest_length": g.length[g.w0],
            "fully_commutative": len(g.fc_elements()),
        }
    )
    if cfg.output == "json":
        return _emit_json(doc)
    cols = ["family", "rank", "m", "order", "longest_length", "fully_commutative"]
    row = [str(doc[c]) if doc[c] is not None else "" for c in cols]
    if cfg.output == "csv":
        return _emit_csv(cols, [row])
    return _emit_latex(cols, [row], "Coxeter group summary")


def _cmd_kl(cfg: JobConfig) -> str:
    g, table, cache_path = _build(cfg, needs_kl=True)
    records = []
    for x in range(g.size):
        col = table.column(x)
        for y in sorted(col):
            records.append((x, y, col[y]))
    _save_cache(table, cache_path)
    if cfg.output == "json":
        doc = _group_doc_header(g)
        doc["records"] = [
            {
                "x": x,
                "y": y,
                "word_x": _word_str(g, x),
                "word_y": _word_str(g, y),
                "h": h.to_triples(),
                "display": repr(h),
            }
            for x, y, h in records
        ]
        return _emit_json(doc)
    cols = ["x", "y", "word_x", "word_y", "h"]
    if cfg.output == "csv":
        rows = [
            [str(x), str(y), _word_str(g, x), _word_str(g, y), repr(h)]
            for x, y, h in records
        ]
        return _emit_csv(cols, rows)
    rows = [
        [str(x), str(y), _word_str(g, x), _word_str(g, y), "$" + _poly_latex(h) + "$"]
        for x, y, h in records
    ]
    return _emit_latex(cols, rows, "Kazhdan-Lusztig polynomials h_{y,x}")


def _cmd_grrk(cfg: JobConfig) -> str:
    g, table, cache_path = _build(cfg, needs_kl=True)
    ranks = [(x, g.length[x], grrk(g, table, x).value) for x in range(g.size)]
    _save_cache(table, cache_path)
    if cfg.output == "json":
        doc = _group_doc_header(g)
        doc["records"] = [
            {
                "index": x,
                "length": l,
                "word": _word_str(g, x),
                "grrk": p.to_triples(),
                "display": repr(p),
            }
            for x, l, p in ranks
        ]
        return _emit_json(doc)
    cols = ["index", "length", "polynomial"]
    if cfg.output == "csv":
        return _emit_csv(cols, [[str(x), str(l), repr(p)] for x, l, p in ranks])
    rows = [[str(x), str(l), "$" + _poly_latex(p) + "$"] for x, l, p in ranks]
    return _emit_latex(cols, rows, "graded ranks")


def _cmd_esign(cfg: JobConfig) -> str:
    g, table, cache_path = _build(cfg, needs_kl=True)
    e = antisymmetriser(g, table)
    den = grrk(g, table, g.w0).value
    records = [(x, e.coeffs[x]) for x in sorted(e.coeffs)]
    _save_cache(table, cache_path)
    if cfg.output == "json":
        doc = _group_doc_header(g)
        doc["normalizer"] = {"grrk_w0": den.to_triples(), "display": repr(den)}
        doc["records"] = [
            {"index": x, "word": _word_str(g, x), "coefficient": _rat_doc(c)}
            for x, c in records
        ]
        return _emit_json(doc)
    cols = ["index", "word", "coefficient"]
    if cfg.output == "csv":
        return _emit_csv(cols, [[str(x), _word_str(g, x), repr(c)] for x, c in records])
    rows = [[str(x), _word_str(g, x), "$" + _rat_latex(c) + "$"] for x, c in records]
    return _emit_latex(cols, rows, "sign idempotent, standard basis coefficients")


def _jw_type_a(cfg: JobConfig):
    """Returns (group or None, records) for the type A jw document; records
    are (word, diagram partner array 1-based, coefficient)."""
    n = cfg.rank
    if n is None or n < 1:
        raise UsageError("jw --family A requires --rank n >= 1 (the strand count)")
    if n == 1:
        # TL_1 is trivial and has no Coxeter group behind it
        d = Diagram.identity(1)
        return None, [("e", [q + 1 for q in d.partner], RatFunc.one())]
    cfg_a = JobConfig(**{**cfg.__dict__, "rank": n - 1})
    if cfg.method == "wenzl":
        g, _, _ = _build(cfg_a, needs_kl=False)
        j = wenzl_jw(n)
        table = cache_path = None
    else:
        g, table, cache_path = _build(cfg_a, needs_kl=True)
        if cfg.sign == "minus":
            j = jw_minus(n, g, table)
        elif cfg.method == "closed":
            j = closed_jw(n, g, table)
        else:
            j = project_pi(antisymmetriser(g, table), table)
    by_diagram = {monomial(g, x): x for x in g.fc_elements()}
    records = []
    for d in sorted(j.coeffs, key=lambda d: by_diagram[d]):
        x = by_diagram[d]
        records.append((_word_str(g, x), [q + 1 for q in d.partner], j.coeffs[d]))
    _save_cache(table, cache_path)
    return g, records


def _cmd_jw(cfg: JobConfig) -> str:
    fam = cfg.family
    if cfg.method == "wenzl" and fam != "A":
        raise UsageError("the Wenzl recursion is specific to family A")
    if cfg.sign == "minus":
        if fam != "A":
            raise UsageError("the sign-twisted algebra TL_n^- is specific to family A")
        if cfg.method != "closed":
            raise UsageError("--sign minus is computed by the closed formula only")
    if fam == "A":
        _, recs = _jw_type_a(cfg)
        records = [
            {"word": w, "diagram": d, "coefficient": c} for w, d, c in recs
        ]
    else:
        g, table, cache_path = _build(cfg, needs_kl=True)
        j = gen_jw_closed(g, table) if cfg.method == "closed" else gen_jw_projection(g, table)
        records = [
            {"word": _word_str(g, x), "diagram": None, "coefficient": j.coeffs[x]}
            for x in sorted(j.coeffs)
        ]
        _save_cache(table, cache_path)
    if cfg.output == "json":
        doc = {
            "family": fam,
            "rank": cfg.rank,
            "m": cfg.m,
            "sign": cfg.sign,
            "method": cfg.method,
            "records": [
                {
                    "word": r["word"],
                    **({"diagram": r["diagram"]} if fam == "A" else {}),
                    "coefficient": _rat_doc(r["coefficient"]),
                }
                for r in records
            ],
        }
        return _emit_json(doc)
    if fam == "A":
        cols = ["word", "diagram", "coefficient"]
        rows = [
            [r["word"], " ".join(map(str, r["diagram"])), repr(r["coefficient"])]
            for r in records
        ]
    else:
        cols = ["word", "coefficient"]
        rows = [[r["word"], repr(r["coefficient"])] for r in records]
    if cfg.output == "csv":
        return _emit_csv(cols, rows)
    sym = "u" if fam == "A" else "\\beta"
    lrows = []
    for r in records:
        label = "$%s_{%s}$" % (sym, r["word"]) if r["word"] != "e" else "$1$"
        lrows.append([label, "$" + _rat_latex(r["coefficient"]) + "$"])
    return _emit_latex(["element", "coefficient"], lrows, "Jones-Wenzl coefficients")


# -- verification suites -----------------------------------------------------------------


def _suite_parity(g, table):
    failures = []
    for x in range(g.size):
        if not parity_class(grrk(g, table, x).value, g.length[x]):
            failures.append({"check": "parity", "element": x})
    return g.size, failures


def _suite_bar_invariance(g, table):
    n = verify_bar_invariance(g, table)
    failures = [] if n == g.size else [{"check": "bar-invariance", "verified": n}]
    return g.size, failures


def _suite_bruhat_order(g, table):
    from .coxeter import bruhat_leq_subword

    if g.length[g.w0] > 20:
        raise UsageError("bruhat-order suite needs length(w0) <= 20 for its oracle")
    failures = []
    for x in range(g.size):
        for y in range(g.size):
            if g.bruhat_leq(y, x) != bruhat_leq_subword(g, y, x):
                failures.append({"check": "bruhat-order", "pair": [y, x]})
    return g.size * g.size, failures


def _require_family_a(g):
    if g.presentation.family != "A":
        raise UsageError("this suite is specific to family A")


def _suite_triple_agreement(g, table):
    _require_family_a(g)
    n = g.rank + 1
    jc = closed_jw(n, g, table)
    failures = []
    if wenzl_jw(n) != jc:
        failures.append({"check": "wenzl-vs-closed"})
    if project_pi(antisymmetriser(g, table), table) != jc:
        failures.append({"check": "projection-vs-closed"})
    return 2 * len(jc.coeffs), failures


def _suite_idempotency(g, table):
    failures = []
    if g.presentation.family == "A":
        n = g.rank + 1
        checks = 0
        for name, j in [
            ("closed", closed_jw(n, g, table)),
            ("wenzl", wenzl_jw(n)),
            ("projection", project_pi(antisymmetriser(g, table), table)),
            ("minus", jw_minus(n, g, table)),
        ]:
            checks += 1
            if multiply_tl(j, j) != j:
                failures.append({"check": "idempotency", "construction": name})
        return checks, failures
    j = gen_jw_closed(g, table)
    if gtl_multiply(j, j, table) != j:
        failures.append({"check": "idempotency", "construction": "closed"})
    return 1, failures


def _suite_annihilation(g, table):
    failures = []
    checks = 0
    if g.presentation.family == "A":
        n = g.rank + 1
        j = closed_jw(n, g, table)
        jm = jw_minus(n, g, table)
        for i in range(n - 1):
            u = TLElt.gen(n, i)
            um = TLElt.gen(n, i, sign=-1)
            for name, prod in [
                ("j*u", j * u),
                ("u*j", u * j),
                ("jminus*u", jm * um),
                ("u*jminus", um * jm),
            ]:
                checks += 1
                if prod.coeffs:
                    failures.append({"check": "annihilation", "product": name, "i": i})
        return checks, failures
    j = gen_jw_closed(g, table)
    gens = [x for x in range(g.size) if g.length[x] == 1]
    for x in gens:
        b = GTLElt.beta(g, x)
        for name, prod in [("j*b", gtl_multiply(j, b, table)), ("b*j", gtl_multiply(b, j, table))]:
            checks += 1
            if prod.coeffs:
                failures.append({"check": "annihilation", "product": name, "s": x})
    return checks, failures


def _suite_mu_identity(g, table):
    """The annihilation identity in KL coordinates: for every y and s,
    sum over x of (-1)^length(x) grrk(x w0) mu^s_{y,x} vanishes, where
    mu^s_{y,x} is the coefficient of b_y in b_x b_s."""
    grw = [grrk(g, table, g.multiply(x, g.w0)).value for x in range(g.size)]
    failures = []
    checks = 0
    for s in range(g.rank):
        acc: dict[int, LaurentPoly] = {}
        for x in range(g.size):
            w = grw[x] if g.length[x] % 2 == 0 else -grw[x]
            for y, coeff in kl_product_coeffs(table, x, s).items():
                prev = acc.get(y, LaurentPoly.zero())
                acc[y] = prev + w * coeff
        for y in range(g.size):
            checks += 1
            if not acc.get(y, LaurentPoly.zero()).is_zero:
                failures.append({"check": "mu-identity", "y": y, "s": s})
    return checks, failures


def _suite_ideal_closure(g, table):
    try:
        checks = check_ideal_closure(g, table)
    except IdealClosureError as exc:
        return 0, [{"check": "ideal-closure", "detail": str(exc)}]
    return checks, []


def _suite_gen_agreement(g, table):
    jc = gen_jw_closed(g, table)
    jp = gen_jw_projection(g, table)
    failures = []
    if set(jc.coeffs) != set(jp.coeffs):
        failures.append({"check": "gen-agreement", "detail": "support mismatch"})
    else:
        for x, c in jc.coeffs.items():
            if jp.coeffs[x] != c:
                failures.append({"check": "gen-agreement", "element": x})
    return len(jc.coeffs) + 1, failures


_SUITE_RUNNERS = {
    "parity": _suite_parity,
    "bar-invariance": _suite_bar_invariance,
    "bruhat-order": _suite_bruhat_order,
    "triple-agreement": _suite_triple_agreement,
    "idempotency": _suite_idempotency,
    "annihilation": _suite_annihilation,
    "mu-identity": _suite_mu_identity,
    "ideal-closure": _suite_ideal_closure,
    "gen-agreement": _suite_gen_agreement,
}


def _cmd_verify(cfg: JobConfig) -> tuple[str, int]:
    if not cfg.suites:
        raise UsageError("verify requires --suite NAME; known suites: " + ", ".join(_SUITES))
    for name in cfg.suites:
        if name not in _SUITE_RUNNERS:
            raise UsageError(f"unknown suite {name!r}; known suites: " + ", ".join(_SUITES))
    g, table, cache_path = _build(cfg, needs_kl=True)
    docs = []
    failed = False
    for name in cfg.suites:
        checks, failures = _SUITE_RUNNERS[name](g, table)
        doc = _group_doc_header(g)
        doc.update({"suite": name, "checks": checks, "failures": failures})
        docs.append(doc)
        failed = failed or bool(failures)
        print(f"suite {name}: {checks} checks, {len(failures)} failures", file=sys.stderr)
    _save_cache(table, cache_path)
    out = _emit_json(docs[0] if len(docs) == 1 else docs)
    return out, 1 if failed else 0


# -- argument parsing ----------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="jwkit", description="Jones-Wenzl idempotent toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, info in [
        ("group", "print order, longest length, and FC count of a Coxeter group"),
        ("kl", "print all Kazhdan-Lusztig polynomials h_{y,x}"),
        ("grrk", "print graded ranks of every element"),
        ("esign", "print the sign idempotent in the standard basis"),
        ("jw", "print a Jones-Wenzl document"),
        ("verify", "run a verification suite"),
    ]:
        p = sub.add_parser(name, help=info)
        p.add_argument("--family", required=True, help="A, B, C, F4, H3, H4, or I2")
        p.add_argument("--rank", type=int, default=None)
        p.add_argument("--m", type=int, default=None, help="dihedral parameter (I2 only)")
        p.add_argument("--output", choices=["json", "csv", "latex"], default="json")
        p.add_argument("--cache-dir", default=None, help="KL cache directory (or JWKIT_CACHE_DIR)")
        p.add_argument("--allow-large", action="store_true", help="opt in to large computations")
        p.add_argument("--threads", type=int, default=1, help="cap on internal parallelism")
        if name == "jw":
            p.add_argument("--method", choices=["closed", "wenzl", "projection"], default="closed")
            p.add_argument("--sign", choices=["plus", "minus"], default="plus")
        if name == "verify":
            p.add_argument(
                "--suite",
                action="append",
                default=None,
                help="repeatable; " + ", ".join(_SUITES),
            )
    return parser


def _to_config(args: argparse.Namespace) -> JobConfig:
    if args.threads < 1:
        raise UsageError("--threads must be at least 1")
    if args.m is not None and args.family not in ("I2",):
        raise UsageError("--m only applies to family I2")
    return JobConfig(
        command=args.command,
        family=args.family,
        rank=args.rank,
        m=args.m,
        method=getattr(args, "method", "closed"),
        sign=getattr(args, "sign", "plus"),
        output=args.output,
        cache_dir=args.cache_dir,
        allow_large=args.allow_large,
        threads=args.threads,
        suites=tuple(getattr(args, "suite", None) or ()),
    )


def run(argv) -> int:
    """Parse argv, run one subcommand, print its document; returns the
    exit code (0 ok, 1 verification failure, 2 bad input)."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _to_config(args)
        if cfg.command == "verify":
            out, code = _cmd_verify(cfg)
        else:
            out = {
                "group": _cmd_group,
                "kl": _cmd_kl,
                "grrk": _cmd_grrk,
                "esign": _cmd_esign,
                "jw": _cmd_jw,
            }[cfg.command](cfg)
            code = 0
        sys.stdout.write(out)
        return code
    except (UsageError, UnsupportedFamilyError, LargeComputationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
