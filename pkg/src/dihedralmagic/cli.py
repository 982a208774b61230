"""Command-line interface.

Subcommands:

* powers    — print the exponent squares derived from a base magic square
* gen       — build a semi-magic square and print it (text or JSON)
* verify    — check a grid from a file or stdin under one ordering
* spectrum  — enumerate the line constants realizable at a block side
* search    — brute-force small existence/nonexistence claims
* selftest  — run the packaged end-to-end checks
* report    — write a full bundle (text, JSON, figures) for one construction

Exit codes: 0 verified/found, 1 failed/nonexistence, 2 usage error,
3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .base_squares import generate, parse_int_square, serialize_int_square, translate
from .construct import admissibility, build
from .formats import parse_square, serialize_square, square_from_json, square_to_json
from .grids import GroupGrid
from .power_squares import build_power_squares, serialize_power_square
from .search import (
    BUDGET,
    EXHAUSTED,
    FOUND,
    SearchOutcome,
    linear_ordering_search,
    rectangle_search,
    small_square_search,
    sms2_nonexistence,
    sms4_search,
    spectrum_enumerate,
)
from .verify import VerificationReport, verify_rectangle

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _read_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    return Path(source).read_text()


def _load_grid(source: str, block: int | None) -> GroupGrid:
    text = _read_text(source)
    if text.lstrip()[:1] == "{":
        grid = square_from_json(text)
    else:
        grid = parse_square(text)
    if block is not None and grid.block_side != block:
        grid = GroupGrid.from_lists(grid.k, grid.cells, block)
    return grid


def _emit(text: str, out: str | None) -> None:
    if out is None:
        print(text, end="" if text.endswith("\n") else "\n")
    else:
        Path(out).write_text(text)
        print(f"wrote {out}")


def _load_base(args: argparse.Namespace):
    base = None
    m = args.m
    if getattr(args, "base", None):
        base = parse_int_square(_read_text(args.base))
        if m is None:
            m = base.side
        elif m != base.side:
            raise ValueError(f"--m {m} does not match the base square's side {base.side}")
    if m is None:
        raise ValueError("give --m, or --base with a square to read the side from")
    return m, base


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_powers(args: argparse.Namespace) -> int:
    m, base = _load_base(args)
    if base is None:
        base = generate(m)
    if args.translate:
        base = translate(base, args.translate)
    squares = build_power_squares(base)
    if args.kind != "all":
        _emit(serialize_power_square(squares, args.kind), args.out)
        return EXIT_OK
    parts = [serialize_int_square(base)]
    parts += [serialize_power_square(squares, kind) for kind in ("E", "O", "T")]
    parts.append(
        f"sums E={squares.even_sum} O={squares.odd_sum} T={squares.twist_sum} "
        f"(mod {squares.modulus}; base sum {base.constant}: "
        f"E=2*{base.constant}, O=2*{base.constant}+{m}, "
        f"T={'-2*%d+%d' % (base.constant, m) if m % 2 == 0 else '-2*%d+%d' % (base.constant, m * m - 2 * m)})\n"
    )
    _emit("".join(parts), args.out)
    return EXIT_OK


def _cmd_gen(args: argparse.Namespace) -> int:
    m, base = _load_base(args)
    construction = build(m, args.translate, base)
    if args.format == "json":
        text = square_to_json(construction.square) + "\n"
    else:
        text = serialize_square(construction.square)
    _emit(text, args.out)
    return EXIT_OK


def _print_report(report: VerificationReport) -> None:
    shape = f"{report.rows} x {report.cols} over D_{report.k}"
    print(f"ordering: {report.ordering}")
    print(f"grid: {shape}")
    print(f"coverage: {'ok' if report.coverage_ok else 'incomplete'}")
    if not report.coverage_ok:
        if report.coverage_missing:
            print(f"  missing: {' '.join(report.coverage_missing[:8])}"
                  + (" ..." if len(report.coverage_missing) > 8 else ""))
        if report.coverage_extra:
            print(f"  extra: {' '.join(report.coverage_extra[:8])}"
                  + (" ..." if len(report.coverage_extra) > 8 else ""))
    if report.row_products is not None:
        print(f"row products: {' '.join(report.row_products)}")
    if report.col_products is not None:
        print(f"column products: {' '.join(report.col_products)}")
    if report.achievable_row_constants is not None:
        print(f"row constants reachable: {' '.join(report.achievable_row_constants) or '(none)'}")
    if report.achievable_col_constants is not None:
        print(
            f"column constants reachable: {' '.join(report.achievable_col_constants) or '(none)'}"
        )
    if report.row_constant is not None:
        print(f"row constant: {report.row_constant}")
    if report.col_constant is not None:
        print(f"column constant: {report.col_constant}")
    if report.chosen_row_starts is not None:
        print(f"chosen row starts: {report.chosen_row_starts}")
    if report.chosen_col_starts is not None:
        print(f"chosen column starts: {report.chosen_col_starts}")
    for note in report.notes:
        print(f"note: {note}")


def _cmd_verify(args: argparse.Namespace) -> int:
    grid = _load_grid(args.grid, args.block_side)
    report = verify_rectangle(grid, args.ordering, args.block_side)
    verdict_ok = report.is_semi_magic if grid.is_square else report.is_magic_rectangle
    if args.json:
        print(report.to_json())
    else:
        _print_report(report)
        if args.magic and grid.is_square:
            print(f"diagonal products: down {report.diagonal_down}, up {report.diagonal_up}")
            print(f"fully magic: {'yes' if report.is_magic else 'no'}")
        if grid.is_square:
            print(f"verdict: {'semi-magic' if verdict_ok else 'not semi-magic'}")
        else:
            print(f"verdict: {'magic rectangle' if verdict_ok else 'not a magic rectangle'}")
    return EXIT_OK if verdict_ok else EXIT_FAIL


def _cmd_spectrum(args: argparse.Namespace) -> int:
    spectrum = spectrum_enumerate(args.m, include_duals=args.include_duals)
    if args.json:
        print(spectrum.to_json())
        return EXIT_OK
    m = spectrum.m
    if m % 2 == 0:
        formula = f"r^(4*mu mod {spectrum.k})"
    else:
        adjust = (m - 2) * (m - 1) // 2 - 1
        formula = f"r^((4*mu - {adjust}) mod {spectrum.k})"
    print(
        f"block side {spectrum.m}: {spectrum.count} constant(s) over D_{spectrum.k}, "
        f"step r^{spectrum.step} per translation; constant {formula} with mu the base sum"
    )
    for item in spectrum.realizations:
        print(f"  x={item['x']}: {item['constant']}")
    if spectrum.dual is not None:
        verified = "reachable" if spectrum.dual_verified else "NOT reachable"
        print(f"dual constant: {spectrum.dual} ({verified} by start-pair search at x=0)")
    return EXIT_OK


def _outcome_exit(outcome: SearchOutcome) -> int:
    if outcome.kind == FOUND:
        return EXIT_OK
    if outcome.kind == EXHAUSTED:
        return EXIT_FAIL
    return EXIT_BUDGET


def _print_outcome(outcome: SearchOutcome, as_json: bool) -> None:
    if as_json:
        print(outcome.to_json())
        return
    print(f"claim: {outcome.claim}")
    print(f"outcome: {outcome.kind}")
    print(f"configurations examined: {outcome.configurations}")
    if outcome.space_size is not None:
        print(f"space size: {outcome.space_size}")
    if outcome.seed is not None:
        print(f"seed: {outcome.seed}")
    print(f"detail: {outcome.detail}")
    if outcome.witness_tokens is not None:
        print("witness:")
        for row in outcome.witness_tokens:
            print("  " + " ".join(row))
    if outcome.report is not None and outcome.report.magic_constant is not None:
        print(f"witness constant: {outcome.report.magic_constant}")


def _cmd_search_sms2(args: argparse.Namespace) -> int:
    outcome = sms2_nonexistence(args.group)
    _print_outcome(outcome, args.json)
    return _outcome_exit(outcome)


def _cmd_search_sms4(args: argparse.Namespace) -> int:
    outcome = sms4_search(budget=args.budget, seed=args.seed)
    _print_outcome(outcome, args.json)
    return _outcome_exit(outcome)


def _cmd_search_small(args: argparse.Namespace) -> int:
    outcome = small_square_search(args.side, args.group)
    _print_outcome(outcome, args.json)
    return _outcome_exit(outcome)


def _cmd_search_rect(args: argparse.Namespace) -> int:
    outcome = rectangle_search(args.rows, args.cols, args.k, budget=args.budget)
    _print_outcome(outcome, args.json)
    return _outcome_exit(outcome)


def _cmd_search_linear(args: argparse.Namespace) -> int:
    grid = _load_grid(args.grid, None)
    outcome = linear_ordering_search(grid, budget=args.budget, seed=args.seed, mode=args.mode)
    _print_outcome(outcome, args.json)
    return _outcome_exit(outcome)


def _cmd_admissible(args: argparse.Namespace) -> int:
    verdict = admissibility(args.n, args.k)
    print(f"claim: a semi-magic {verdict.n} x {verdict.n} square over D_{verdict.k}")
    print(f"status: {verdict.status}")
    print(f"reason: {verdict.reason}")
    if verdict.status == "inadmissible":
        return EXIT_FAIL
    return EXIT_OK


def _cmd_selftest(args: argparse.Namespace) -> int:
    from .selfcheck import run_all

    return EXIT_OK if run_all() else EXIT_FAIL


def _cmd_report(args: argparse.Namespace) -> int:
    from .plots import powers_figure, square_figure
    from .verify import exists_semicircular

    m, base = _load_base(args)
    construction = build(m, args.translate, base)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    prefix = args.prefix

    written: list[Path] = []

    def save(name: str, text: str) -> None:
        path = out_dir / f"{prefix}{name}"
        path.write_text(text)
        written.append(path)

    save("square.txt", serialize_square(construction.square))
    save("square.json", square_to_json(construction.square) + "\n")
    save("base.txt", serialize_int_square(construction.base))
    for kind in ("E", "O", "T"):
        save(f"powers_{kind}.txt", serialize_power_square(construction.powers, kind))
    report = exists_semicircular(construction.square)
    save("verification.json", report.to_json() + "\n")
    square_png = out_dir / f"{prefix}square.png"
    square_figure(construction.square, str(square_png))
    written.append(square_png)
    powers_png = out_dir / f"{prefix}powers.png"
    powers_figure(construction.base, construction.powers, str(powers_png))
    written.append(powers_png)

    for path in written:
        print(f"wrote {path}")
    print(
        f"construction: block side {m}, translation {args.translate}, "
        f"constant {construction.primary.token()}, "
        f"verified: {'yes' if report.is_semi_magic else 'NO'}"
    )
    return EXIT_OK if report.is_semi_magic else EXIT_FAIL


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dihedralmagic",
        description="Semi-magic squares over dihedral groups: build, verify, search.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    powers = subparsers.add_parser(
        "powers", help="print the exponent squares derived from a base magic square"
    )
    powers.add_argument("--m", type=int, default=None, help="side of the base square")
    powers.add_argument(
        "--translate", type=int, default=0, help="translate the base square by this amount"
    )
    powers.add_argument("--base", default=None, help="intsquare file to use as the base")
    powers.add_argument(
        "--kind",
        choices=["E", "O", "T", "all"],
        default="all",
        help="print one exponent square only (default: base, all three, and sums)",
    )
    powers.add_argument("--out", default=None, help="write to a file instead of stdout")
    powers.set_defaults(func=_cmd_powers)

    gen = subparsers.add_parser("gen", help="build a semi-magic square over D_{2m^2}")
    gen.add_argument("--m", type=int, default=None, help="block side (square side is 2m)")
    gen.add_argument(
        "--translate", type=int, default=0, help="translate the base square by this amount"
    )
    gen.add_argument("--base", default=None, help="intsquare file to use as the base")
    gen.add_argument(
        "--format", choices=["text", "json"], default="text", help="output format"
    )
    gen.add_argument("--out", default=None, help="write to a file instead of stdout")
    gen.set_defaults(func=_cmd_gen)

    verify = subparsers.add_parser("verify", help="verify a grid from a file or '-' (stdin)")
    verify.add_argument("grid", help="grid file (text or JSON), or '-' for stdin")
    verify.add_argument(
        "--ordering",
        choices=["linear", "circular", "semicircular", "any", "arbitrary"],
        default="linear",
        help="which per-line ordering the products may use ('any' = arbitrary)",
    )
    verify.add_argument(
        "--block-side",
        type=int,
        default=None,
        help="block side for the semicircular ordering",
    )
    verify.add_argument("--json", action="store_true", help="print the full report as JSON")
    verify.add_argument(
        "--magic",
        action="store_true",
        help="also report diagonal products (square grids)",
    )
    verify.set_defaults(func=_cmd_verify)

    spectrum = subparsers.add_parser(
        "spectrum", help="enumerate realizable line constants at a block side"
    )
    spectrum.add_argument("--m", type=int, required=True, help="block side (>= 3)")
    spectrum.add_argument(
        "--include-duals",
        action="store_true",
        help="also check the off-parity dual constant",
    )
    spectrum.add_argument("--json", action="store_true", help="emit JSON")
    spectrum.set_defaults(func=_cmd_spectrum)

    search = subparsers.add_parser("search", help="brute-force small claims")
    search_sub = search.add_subparsers(dest="search_command", required=True)

    sms2 = search_sub.add_parser("sms2", help="exhaust 2 x 2 squares over an order-4 group")
    sms2.add_argument("--group", choices=["d2", "c4"], default="d2")
    sms2.add_argument("--json", action="store_true")
    sms2.set_defaults(func=_cmd_search_sms2)

    sms4 = search_sub.add_parser("sms4", help="look for a 4 x 4 square over D_8")
    sms4.add_argument("--budget", type=int, default=500_000)
    sms4.add_argument("--seed", type=int, default=0)
    sms4.add_argument("--json", action="store_true")
    sms4.set_defaults(func=_cmd_search_sms4)

    small = search_sub.add_parser("small", help="exhaust tiny squares over tiny groups")
    small.add_argument("--side", type=int, required=True)
    small.add_argument("--group", choices=["d2", "c4", "trivial"], required=True)
    small.add_argument("--json", action="store_true")
    small.set_defaults(func=_cmd_search_small)

    rect = search_sub.add_parser("rect", help="search for a magic rectangle over D_k")
    rect.add_argument("--rows", type=int, required=True)
    rect.add_argument("--cols", type=int, required=True)
    rect.add_argument("--k", type=int, required=True)
    rect.add_argument("--budget", type=int, default=None)
    rect.add_argument("--json", action="store_true")
    rect.set_defaults(func=_cmd_search_rect)

    linear = search_sub.add_parser(
        "linear", help="search row/column relabelings for linear magic"
    )
    linear.add_argument("grid", help="grid file (text or JSON), or '-' for stdin")
    linear.add_argument("--budget", type=int, default=100_000)
    linear.add_argument("--seed", type=int, default=0)
    linear.add_argument("--mode", choices=["auto", "exhaustive", "random"], default="auto")
    linear.add_argument("--json", action="store_true")
    linear.set_defaults(func=_cmd_search_linear)

    admissible = subparsers.add_parser(
        "admissible", help="classify whether an n x n square over D_k can exist"
    )
    admissible.add_argument("--n", type=int, required=True)
    admissible.add_argument("--k", type=int, required=True)
    admissible.set_defaults(func=_cmd_admissible)

    selftest = subparsers.add_parser("selftest", help="run the packaged end-to-end checks")
    selftest.set_defaults(func=_cmd_selftest)

    report = subparsers.add_parser(
        "report", help="write text, JSON, and figure files for one construction"
    )
    report.add_argument("--m", type=int, default=None, help="block side (square side is 2m)")
    report.add_argument(
        "--translate", type=int, default=0, help="translate the base square by this amount"
    )
    report.add_argument("--base", default=None, help="intsquare file to use as the base")
    report.add_argument("--out-dir", required=True, help="directory for the bundle")
    report.add_argument("--prefix", default="", help="filename prefix for all outputs")
    report.set_defaults(func=_cmd_report)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return EXIT_OK
        return code if isinstance(code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except ValueError as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    raise SystemExit(run(sys.argv[1:]))
