"""Command-line front end.

Exit codes: 0 success, 1 hypothesis violated, 2 usage or parse error,
3 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys

from .catalog import Family, FamilyTag, construct
from .classify import classify
from .code import DEFAULT_CAP, column_multiset, format_matrix, is_full_length, is_projective, read_matrix
from .errors import (
    BadParameters,
    DivCodesError,
    EnumerationTooLarge,
    InstanceTooLarge,
    LemmaViolation,
    NotDivisible,
)
from .fourdelta import build_maximal_codes, distinguish_maximal, format_table1, table1
from .spectrum import is_divisible, macwilliams, pless_moments_check, scan, weight_distribution
from .structure import decompose, intersection_census, residual_divisibility, weight_span

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
FORMATS = ("text", "csv", "kv")


class _Violation(Exception):
    """Hypothesis failure that has already been reported on stdout."""


def _render(pairs: list[tuple[str, object]], fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("key", "value"))
        writer.writerows((k, str(v)) for k, v in pairs)
        return buf.getvalue()
    sep = "=" if fmt == "kv" else ": "
    return "".join(f"{k}{sep}{v}\n" for k, v in pairs)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


# ---------------------------------------------------------------------------
# subcommands


def cmd_construct(args) -> int:
    tag = FamilyTag(Family(args.family), args.q, args.k, args.m)
    text = format_matrix(construct(tag), comment=str(tag))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _summary(wd, projective: bool, dec) -> str:
    parts = []
    weights = [i for i in wd.support() if i]
    if len(weights) == 1:
        parts.append(f"constant weight {weights[0]}")
    parts.append("projective" if projective else "not projective")
    if not dec.blocks:
        parts.append("zero code")
    elif len(dec.blocks) == 1:
        parts.append("indecomposable")
    else:
        parts.append(f"decomposable: {len(dec.blocks)} blocks")
    return ", ".join(parts)


def cmd_analyze(args) -> int:
    C = read_matrix(args.file)
    wd = weight_distribution(C, args.cap)
    B = macwilliams(wd)
    dec = decompose(C)
    cm = column_multiset(C)
    projective = is_projective(C)
    pairs: list[tuple[str, object]] = [
        ("q", C.q),
        ("n", C.n),
        ("k", C.k),
        ("n_eff", cm.n_eff),
        ("weight distribution", wd.format()),
        ("dual distribution", B.format()),
        ("divisibility", wd.divisor()),
        ("projective", _yes(projective)),
        ("max multiplicity", max((m for _, m in cm.points), default=0)),
        ("zero positions", "[" + ", ".join(str(j + 1) for j in dec.zero_positions) + "]"),
        ("blocks", " ".join(f"[{b.code.n},{b.code.k}]" for b in dec.blocks)),
    ]
    if C.q == 2 and is_full_length(C) and C.k:
        report = pless_moments_check(C, B, args.cap)
        pairs.append(("pless moments", "ok" if report.ok else "FAILED"))
    pairs.append(("summary", _summary(wd, projective, dec)))
    sys.stdout.write(_render(pairs, args.format))
    return EXIT_OK


def cmd_classify(args) -> int:
    C = read_matrix(args.file)
    cert = classify(C, args.delta, args.cap)
    sys.stdout.write(cert.format())
    return EXIT_OK if cert.spanned else EXIT_VIOLATED


def cmd_check_lemmas(args) -> int:
    C = read_matrix(args.file)
    wd, words = scan(C, collect_weight=args.delta, cap=args.cap)
    census = intersection_census(words, args.delta, C.field)
    residual = residual_divisibility(C, args.delta, args.cap)
    divisible = is_divisible(wd, args.delta)
    pairs: list[tuple[str, object]] = [
        ("divisible", _yes(divisible)),
        ("weight-delta words", census.words),
        ("equivalent pairs", census.counts["equivalent"]),
        ("proper pairs", census.counts["proper"]),
        ("disjoint pairs", census.counts["disjoint"]),
        ("proper b values", " ".join(map(str, census.proper_b))),
        ("residual divisor", residual.divisor),
        ("residuals checked", residual.checked),
        ("residual violations", residual.violations),
    ]
    sys.stdout.write(_render(pairs, args.format))
    if residual.violations:
        raise LemmaViolation(f"{residual.violations} residual weights not divisible by {residual.divisor}")
    if not divisible:
        raise NotDivisible(f"code has weights {wd.support()}, not all divisible by {args.delta}")
    return EXIT_OK


def cmd_table1(args) -> int:
    cases = table1(args.a)
    if args.format == "kv":
        out = []
        for c in cases:
            out.append(
                f"row={c.row} decomposition={c.decomposition} A_delta={c.a_delta_text} "
                f"k={c.k_text} condition={c.condition}\n"
            )
        sys.stdout.write("".join(out))
    else:
        sys.stdout.write(format_table1(cases, args.format))
    return EXIT_OK


def cmd_fourdelta(args) -> int:
    a = args.a
    if a < 2:
        raise BadParameters("fourdelta needs a >= 2")
    delta = 2**a
    pairs: list[tuple[str, object]] = [("a", a), ("delta", delta)]
    codes = [c for c in build_maximal_codes(a) if c is not None]
    names = [f"RM(2,{a + 2}) ⊕ RM(2,{a + 2})", "2 x PC(2,7) + extension word"]
    for i, C in enumerate(codes, 1):
        pairs += [
            (f"code {i}", names[i - 1]),
            (f"code {i} [n,k]", f"[{C.n},{C.k}]"),
            (f"code {i} weight distribution", weight_distribution(C, args.cap).format()),
            (f"code {i} projective", _yes(is_projective(C))),
            (f"code {i} divisible", _yes(is_divisible(C, delta, args.cap))),
            (f"code {i} weight-span dim", weight_span(C, delta, args.cap).k),
        ]
    if a == 2:
        report = distinguish_maximal(a)
        pairs += [
            ("weight-span dims", " ".join(map(str, report.span_dims))),
            ("self-dual", " ".join(_yes(x) for x in report.self_dual)),
            ("non-isomorphic", _yes(report.non_isomorphic)),
            ("extension choices", report.choices),
            ("extension fingerprints", report.choice_fingerprints),
        ]
    sys.stdout.write(_render(pairs, args.format))
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--cap", type=_positive, default=DEFAULT_CAP, help="enumeration cap on codewords")
    common.add_argument("--seedless", action="store_true", help=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="divcodes", description="Divisible linear codes spanned by minimum-weight words.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="write a family generator matrix")
    p.add_argument("family", choices=[f.value for f in Family])
    p.add_argument("q", type=int)
    p.add_argument("k", type=int)
    p.add_argument("m", type=int, nargs="?", default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("analyze", parents=[common], help="report invariants of a code")
    p.add_argument("file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("classify", parents=[common], help="classification certificate")
    p.add_argument("file")
    p.add_argument("--delta", type=_positive, required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("check-lemmas", parents=[common], help="intersection and residual checks")
    p.add_argument("file")
    p.add_argument("--delta", type=_positive, required=True)
    p.set_defaults(func=cmd_check_lemmas)

    p = sub.add_parser("table1", parents=[common], help="case table for length 4Δ")
    p.add_argument("a", type=int)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("fourdelta", parents=[common], help="maximal codes of length 4Δ")
    p.add_argument("a", type=int)
    p.set_defaults(func=cmd_fourdelta)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.seedless:
        print("error: --seedless is not supported; nothing here is random", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (EnumerationTooLarge, InstanceTooLarge) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (NotDivisible, LemmaViolation) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VIOLATED
    except (DivCodesError, OSError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
