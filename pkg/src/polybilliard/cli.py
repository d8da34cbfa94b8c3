"""Command-line driver: ``polybilliard <command> [options]``.

Exit codes: 0 pass, 1 identity or tolerance failure, 2 input error,
3 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import kernel
from .diagonals import enumerate_diagonals, gd, verify_geometric_lemma, verify_theorem1
from .language import (
    ResourceLimitError,
    bispecial_words,
    enumerate_language,
    format_word,
    sample_words,
    verify_difference_identity,
)
from .lattice import CASES, estimate_limit
from .polygon import CATALOG_NAMES, Polygon, PolygonError, catalog, random_convex_polygon, read_polygon

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


@dataclass
class Output:
    """A table plus metadata; rendered identically as CSV or JSON."""

    command: str
    columns: list[str]
    rows: list[list] = field(default_factory=list)
    meta: dict = field(default_factory=dict)
    passed: bool = True
    words: list[str] | None = None

    def render(self, fmt: str) -> str:
        if self.words is not None and fmt == "csv":
            # plain word listing, one word per line
            return "".join(w + "\n" for w in self.words)
        if fmt == "json":
            doc = {"command": self.command, **self.meta, "passed": self.passed,
                   "columns": self.columns, "rows": self.rows}
            return json.dumps(doc, indent=2, sort_keys=False) + "\n"
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for row in self.rows:
            w.writerow(["" if x is None else _csv_cell(x) for x in row])
        return buf.getvalue()


def _csv_cell(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    return x


def load_polygon(args) -> Polygon:
    if args.polygon and args.polygon_file:
        raise InputError("give either --polygon or --polygon-file, not both")
    if args.polygon_file:
        try:
            return read_polygon(args.polygon_file)
        except OSError as exc:
            raise InputError(f"cannot read {args.polygon_file}: {exc.strerror}") from None
    name = args.polygon or "square"
    if name.startswith("random"):
        r = 4
        if ":" in name:
            try:
                r = int(name.split(":", 1)[1])
            except ValueError:
                raise InputError(f"bad vertex count in {name!r}") from None
        return random_convex_polygon(args.seed, r)
    try:
        return catalog(name)
    except KeyError:
        choices = ", ".join(CATALOG_NAMES + ("random[:r]",))
        raise InputError(f"unknown polygon {name!r}; choose from {choices}") from None


def _positive(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def _nonnegative(value: str) -> int:
    n = int(value)
    if n < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return n


def _tolerance(value: str) -> float:
    t = float(value)
    if not t > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return t


# -- commands ---------------------------------------------------------------------


def cmd_complexity(args) -> Output:
    P = load_polygon(args)
    mode = "store" if args.words else "count"
    table = enumerate_language(P, args.max_n, mode=mode, threads=args.threads)
    out = Output("complexity", ["n", "p", "s"], meta={"polygon": str(P), "kernel": kernel.IMPL})
    out.rows = [list(row) for row in table.rows()]
    if args.words:
        out.words = [format_word(w) for w in sorted(table.language(args.max_n))]
        out.meta["words"] = out.words
    return out


def cmd_verify(args) -> Output:
    P = load_polygon(args)
    n_max = args.max_n
    table = enumerate_language(P, n_max + 2, threads=args.threads)
    diagonals = enumerate_diagonals(P, n_max + 1, threads=args.threads)
    out = Output("verify", ["check", "n", "lhs", "rhs", "holds"], meta={"polygon": str(P)})
    reports = list(verify_theorem1(P, n_max, table, diagonals).checks)
    for n in range(1, n_max + 1):
        reports.append(verify_difference_identity(P, n, table))
    for n in range(1, n_max + 1):
        reports.append(verify_geometric_lemma(P, n, table))
    if args.samples:
        words = sample_words(P, n_max, args.samples, seed=args.seed)
        stray = sorted(words - table.language(n_max))
        reports.append(_sampling_report(n_max, len(words), stray))
    for rep in reports:
        out.rows.append([rep.name, rep.n, rep.lhs, rep.rhs, rep.holds])
        if not rep.holds:
            out.passed = False
            for w in rep.witnesses:
                print(f"{rep.name} n={rep.n}: {w}", file=sys.stderr)
    out.meta["notes"] = [
        f"N_c(0) = {P.r} counts the vertices",
        "the geometric lemma is checked for n >= 1",
    ]
    return out


def _sampling_report(n, distinct, stray):
    from .reports import IdentityReport

    # lhs: sampled words that the enumerator also found; rhs: all sampled words
    return IdentityReport("sampling", n, distinct - len(stray), distinct, not stray,
                          [format_word(w) for w in stray[:20]])


def _grid(n_max: int) -> list[int]:
    ns = []
    k = 10
    while k < n_max:
        ns.append(k)
        k *= 10
    ns.append(n_max)
    return ns


def cmd_asymptotics(args) -> Output:
    if args.case not in CASES:
        raise InputError(f"no closed form for {args.case!r}; choose from {', '.join(CASES)}")
    out = Output("asymptotics", ["n", "count", "prediction", "rel_dev"],
                 meta={"case": args.case, "tol": args.tol})
    last = None
    for n in _grid(args.max_n):
        last = estimate_limit(args.case, n)
        out.rows.append(list(last.row()))
    out.passed = last.within(args.tol)
    return out


def cmd_diagonals(args) -> Output:
    P = load_polygon(args)
    table = enumerate_diagonals(P, args.max_links, listing=args.list, threads=args.threads)
    meta = {"polygon": str(P), "convention": f"N_c(0) = {P.r} counts the vertices"}
    if args.list:
        out = Output("diagonals", ["start", "word", "end_x", "end_y"], meta=meta)
        out.rows = [list(g.row()) for g in table.diagonals]
    else:
        out = Output("diagonals", ["j", "exact_links", "Nc_cumulative"], meta=meta)
        out.rows = [list(row) for row in table.rows()]
    return out


def cmd_bispecial(args) -> Output:
    P = load_polygon(args)
    table = enumerate_language(P, args.n + 2)
    out = Output("bispecial", ["word", "m_l", "m_r", "m_b", "gd", "lemma"], meta={"polygon": str(P)})
    for e in bispecial_words(P, args.n, table):
        g = gd(P, e.word)
        ok = e.m_b == (e.m_l - 1) + (e.m_r - 1) + g + 1
        out.rows.append([format_word(e.word), e.m_l, e.m_r, e.m_b, g, "ok" if ok else "fail"])
        out.passed &= ok
    return out


COMMANDS = {
    "complexity": cmd_complexity,
    "verify": cmd_verify,
    "asymptotics": cmd_asymptotics,
    "diagonals": cmd_diagonals,
    "bispecial": cmd_bispecial,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--polygon", help=f"catalog polygon: {', '.join(CATALOG_NAMES)}, or random[:r]")
    common.add_argument("--polygon-file", type=Path, help="polygon file (QFIELD/V lines)")
    common.add_argument("--seed", type=int, default=1, help="seed for random polygons and sampling")
    common.add_argument("--threads", type=_positive, default=1)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", type=Path, help="write here instead of stdout")

    parser = argparse.ArgumentParser(prog="polybilliard", description="Exact complexity of convex polygonal billiards.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("complexity", parents=[common], help="p(n) and s(n)")
    p.add_argument("--max-n", type=_positive, default=10)
    p.add_argument("--words", action="store_true", help="list the words of length max-n instead")

    p = sub.add_parser("verify", parents=[common], help="check the exact identities")
    p.add_argument("--max-n", type=_positive, default=8)
    p.add_argument("--samples", type=_nonnegative, default=2000, help="sampled orbits for the soundness check")

    p = sub.add_parser("asymptotics", parents=[common], help="p(n)/n^3 against its limit")
    p.add_argument("--case", required=True, help=", ".join(CASES))
    p.add_argument("--max-n", type=_positive, default=10_000)
    p.add_argument("--tol", type=_tolerance, default=0.01)

    p = sub.add_parser("diagonals", parents=[common], help="generalized diagonals by link count")
    p.add_argument("--max-links", type=_positive, default=4)
    p.add_argument("--list", action="store_true", help="list every diagonal")

    p = sub.add_parser("bispecial", parents=[common], help="bispecial words of one length")
    p.add_argument("--n", type=_nonnegative, default=1)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        result = COMMANDS[args.command](args)
    except (InputError, PolygonError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    text = result.render(args.format)
    if args.out:
        args.out.write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)
    if not result.passed:
        print(f"{args.command}: FAIL", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
