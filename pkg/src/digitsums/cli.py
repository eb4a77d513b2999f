"""Command-line front end.

Exit status: 0 on success, 1 when a certificate or cross-check fails (or a
computation error occurs), 2 on usage errors. Errors are also reported on
stderr as one JSON line.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import bigdigits, bounds, heuristics, oeis, stewart, valuations
from .config import Caps, load_caps
from .errors import DigitSumsError, ExprSyntaxError
from .expr import evaluate, parse_expr
from .rigorous import RigorousReal

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fmt(x: RigorousReal, args) -> str:
    if args.show_radius:
        return f"{x.format()} +/- {x.format_radius()}"
    return x.format()


def _verdict(ok: bool, out) -> int:
    print("PASS" if ok else "FAIL", file=out)
    return EXIT_OK if ok else EXIT_FAIL


def _value(text: str, caps: Caps) -> int:
    try:
        node = parse_expr(text)
    except ExprSyntaxError as exc:
        raise UsageError(f"bad expression {text!r}: {exc}") from exc
    return evaluate(node, caps)


def _range(args) -> range:
    if args.n_to < args.n_from:
        return range(0)
    return range(args.n_from, args.n_to + 1)


def _csv_writer(out):
    return csv.writer(out, lineterminator="\n")


# -- commands -----------------------------------------------------------------


def cmd_digits(args, caps, out):
    n = _value(args.expr, caps)
    e = bigdigits.to_base(n, args.base)
    print(f"{bigdigits.format_digits(e)}  s={sum(e.digits)} c={sum(1 for d in e.digits if d)}", file=out)
    return EXIT_OK


def cmd_ladder(args, caps, out):
    ladder = bounds.exponent_ladder(args.a, args.b, args.k)
    print(" ".join(map(str, ladder.exponents)), file=out)
    if args.verify_estimate:
        ok = True
        for row in bounds.verify_ladder_estimate(ladder, caps.precision_start, caps.precision_cap):
            ok &= row.below_sum and row.below_geometric
            print(
                f"k={row.k} e_k={row.e_k} partial_sum={_fmt(row.partial_sum, args)} "
                f"r^k/(r-1)={_fmt(row.geometric, args)} "
                f"{'ok' if row.below_sum and row.below_geometric else 'VIOLATED'}",
                file=out,
            )
        return _verdict(ok, out)
    return EXIT_OK


def cmd_certify_blocks(args, caps, out):
    n = _value(args.n, caps)
    length = args.k
    if length is None:
        ladder = bounds.ladder_reaching(args.a, args.b, n.bit_length())
    else:
        ladder = bounds.exponent_ladder(args.a, args.b, length)
    cert = bounds.certify_block_count(n, args.a, args.b, ladder)
    c = bigdigits.nonzero_count(n, args.b)
    print(f"ladder: {' '.join(map(str, ladder.exponents))}", file=out)
    print(f"blocks (most significant first): {' | '.join(map(str, reversed(cert.blocks)))}", file=out)
    print(f"certified k={cert.k} actual c_{args.b}={c}", file=out)
    return _verdict(c >= cert.k, out)


def cmd_certify_stolarsky(args, caps, out):
    m = _value(args.m, caps)
    cert = bounds.stolarsky_check(m, args.base, args.r)
    print(f"bound={cert.bound} s_{args.base}={cert.digit_sum}", file=out)
    print("trace: " + " -> ".join(map(str, cert.trace)), file=out)
    return _verdict(cert.holds, out)


def cmd_certify_corollary(args, caps, out):
    ns = range(args.n, args.n + 1) if args.n is not None else _range(args)
    ok = True
    failures = 0
    for n in ns:
        chk = bounds.certify_corollary(args.a, n)
        ok &= chk.passed
        failures += not chk.passed
        if args.n is not None or not chk.passed:
            print(
                f"a={args.a} n={n} ceil(log4 n)={chk.ceil_log4} certified k={chk.certificate.k} "
                f"c_10={chk.nonzero}",
                file=out,
            )
    if args.n is None:
        print(f"checked {len(ns)} exponents, {failures} failures", file=out)
    return _verdict(ok, out)


def cmd_certify_special(args, caps, out):
    cap = caps.factorial_n if args.kind == "factorial" else caps.lcm_n
    sb = bounds.special_value_bound(args.kind, args.n, args.base, cap)
    s = bigdigits.digit_sum(sb.value, args.base)
    note = " (degenerate: n < b-1)" if sb.degenerate else ""
    print(f"{args.kind} n={args.n} r={sb.r} bound={sb.bound} s_{args.base}={s}{note}", file=out)
    return _verdict(sb.holds and sb.bound <= s, out)


def cmd_certify_valuation(args, caps, out):
    pair = valuations.select_prime_pair(args.a, args.b, caps.factor_limit)
    print(f"p={pair.p} q={pair.q} c1={pair.c1}", file=out)
    failures = [
        c.n for c in (valuations.certify_nu_estimate(args.a, args.b, n, caps.factor_limit) for n in _range(args))
        if not c.holds
    ]
    print(f"checked n={args.n_from}..{args.n_to}, {len(failures)} failures", file=out)
    return _verdict(not failures, out)


def cmd_certify_log_bound(args, caps, out):
    from fractions import Fraction

    sup = bounds.admissible_constant(args.a, args.b, caps.precision_start)
    C = Fraction(args.C) if args.C is not None else sup * Fraction(9, 10)
    res = bounds.log_bound_threshold(args.a, args.b, args.n_to, C, caps.precision_start, caps.precision_cap)
    print(f"C={float(C):.9g} (admissible supremum {float(sup):.9g})", file=out)
    if C > sup:
        print("note: C exceeds the admissible supremum; no threshold exists in the limit", file=out)
    print(
        f"k >= C log n for n={res.threshold}..{args.n_to}; "
        f"{len(res.violations)} earlier exponents fall short",
        file=out,
    )
    return EXIT_OK


def cmd_stewart_gaps(args, caps, out):
    ns = [n for n in _range(args)]
    rows, checks = stewart.gap_report(args.a, args.b, ns, args.precision or caps.precision_start)
    w = _csv_writer(out)
    header = ["n", "i", "m_i", "m_next", "ratio", "ratio_over_log_n"]
    if args.show_radius:
        header.append("radius")
    w.writerow(header)
    for row in rows:
        line = [row.n, row.i, row.m_i, row.m_next, str(row.ratio), row.ratio_over_log_n.format()]
        if args.show_radius:
            line.append(row.ratio_over_log_n.format_radius())
        w.writerow(line)
    bad = [c.n for c in checks if not (c.exact and c.rigorous)]
    if bad:
        print(json.dumps({"error": "TelescopeMismatch", "n": bad}), file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _height(text: str):
    from fractions import Fraction

    return stewart.E if text == "e" else Fraction(text) if "/" in text else int(text)


def cmd_stewart_baker(args, caps, out):
    heights = [_height(h) for h in args.heights] if args.heights else [stewart.E] * args.n
    if len(heights) != args.n:
        raise UsageError(f"--heights lists {len(heights)} values but --n is {args.n}")
    params = stewart.BakerParams.clamped(heights, _height(args.B), args.d)
    print(f"constant (16nd)^(2(n+2)) = {stewart.baker_constant(args.n, args.d)}", file=out)
    print(f"heights={list(params.heights)} B={params.B}", file=out)
    print(f"log|Lambda| > {_fmt(stewart.baker_lower_bound(params, caps.precision_start), args)}", file=out)
    return EXIT_OK


def cmd_stewart_chains(args, caps, out):
    total = failures = 0
    for n in _range(args):
        profile = stewart.gap_profile(args.a, args.b, n, caps.power_exponent)
        try:
            results = stewart.check_profile(profile, caps.precision_start, caps.precision_cap)
        except DigitSumsError as exc:
            failures += 1
            print(f"n={n}: {exc}", file=out)
            continue
        for chk in results:
            total += 1
            if not chk.ok:
                failures += 1
                print(f"n={n} i={chk.i}: {chk}", file=out)
    print(f"checked {total} splits, {failures} failures", file=out)
    return _verdict(failures == 0, out)


def cmd_stewart_floor(args, caps, out):
    if args.n is not None:
        print(_fmt(stewart.stewart_floor(args.n, _height(args.C), caps.precision_start), args), file=out)
        if not stewart.above_stewart_threshold(args.n):
            print("note: n <= e^e, below the threshold where log log n > 1", file=out)
        return EXIT_OK
    report = stewart.stewart_floor_report(args.a, args.b, args.n_from, args.n_to, caps.precision_start)
    best = report.argmin
    print(f"min over n={args.n_from}..{args.n_to} of c_b(a^n) loglog n / log n", file=out)
    print(f"n={best.n} c={best.nonzero} value={_fmt(best.normalized, args)}", file=out)
    bad = [row.n for row in report.rows if not row.ok]
    print(f"certified bound respected for all n: {'yes' if not bad else bad}", file=out)
    return _verdict(report.ok, out)


def cmd_scan(args, caps, out):
    if args.out == "plotdata" and not args.prefix:
        raise UsageError("--out plotdata needs --prefix")
    if args.n_from is None:
        args.n_from = 1 if args.kind == "lcm" else 0
    ns = _range(args)
    rows = list(heuristics.scan(args.kind, ns, a=args.a, b=args.base, caps=caps, precision=caps.precision_start))
    if args.out == "csv":
        w = _csv_writer(out)
        header = ["n", "digit_count", "s_b", "c_b", "bound", "heuristic"]
        if args.show_radius:
            header.append("heuristic_radius")
        w.writerow(header)
        for r in rows:
            line = [r.n, r.digit_count, r.s_b, r.c_b, r.bound, r.heuristic.format()]
            if args.show_radius:
                line.append(r.heuristic.format_radius())
            w.writerow(line)
        return EXIT_OK
    data = Path(f"{args.prefix}.dat")
    curve = Path(f"{args.prefix}.heuristic.dat")
    data.write_text("".join(f"{r.n} {r.s_b}\n" for r in rows), encoding="utf-8")
    curve.write_text("".join(f"{r.n} {r.heuristic.format()}\n" for r in rows), encoding="utf-8")
    print(f"wrote {data} and {curve}", file=out)
    return EXIT_OK


def cmd_oeis_check(args, caps, out):
    source = "network" if args.online else "fixtures"
    bfile = oeis.load_bfile(args.sequence_id, source, fixtures_dir=args.fixtures_dir)
    report = oeis.crosscheck(bfile, args.gen, range(args.n_from, args.n_to + 1))
    for line in report.lines():
        print(line, file=out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_sparse_multiple(args, caps, out):
    k = bounds.sparse_multiple(args.n, caps.sparse_n)
    # 10^k + 8 has exactly two nonzero digits; only divisibility needs checking
    ok = (pow(10, k, 3**args.n) + 8) % 3**args.n == 0
    print(f"k={k}", file=out)
    return EXIT_OK if ok else EXIT_FAIL


# -- parser ---------------------------------------------------------------------


def _add_range(p, default_from=None, default_to=None):
    p.add_argument("--n-from", type=int, required=default_from is None, default=default_from)
    p.add_argument("--n-to", type=int, required=default_to is None, default=default_to)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="digitsums", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="key=value caps file (default: $DIGITSUMS_CONFIG)")
    for name in ("factorial-cap", "lcm-cap", "sparse-cap", "power-cap", "scan-cap", "factor-limit",
                 "precision-start", "precision-cap"):
        parser.add_argument(f"--{name}", type=int)
    parser.add_argument("--show-radius", action="store_true", help="print certified radii next to values")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("digits", help="digits, digit sum and nonzero count of an expression")
    p.add_argument("expr")
    p.add_argument("--base", type=int, default=10)
    p.set_defaults(func=cmd_digits)

    p = sub.add_parser("ladder", help="exact exponent ladder")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--verify-estimate", action="store_true")
    p.set_defaults(func=cmd_ladder)

    cert = sub.add_parser("certify", help="certificates that print PASS or FAIL").add_subparsers(
        dest="what", required=True
    )
    p = cert.add_parser("blocks")
    p.add_argument("--n", required=True, help="value expression, e.g. 2^157")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--k", type=int, help="ladder length (default: long enough for N)")
    p.set_defaults(func=cmd_certify_blocks)
    p = cert.add_parser("stolarsky")
    p.add_argument("--m", required=True)
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_certify_stolarsky)
    p = cert.add_parser("corollary")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--n", type=int)
    _add_range(p, 2, 1000)
    p.set_defaults(func=cmd_certify_corollary)
    p = cert.add_parser("special")
    p.add_argument("kind", choices=["factorial", "lcm"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--base", type=int, default=10)
    p.set_defaults(func=cmd_certify_special)
    p = cert.add_parser("valuation")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    _add_range(p, 1, 200)
    p.set_defaults(func=cmd_certify_valuation)

    p = cert.add_parser("log-bound", help="observed threshold for k >= C log n")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--n-to", type=int, default=1000)
    p.add_argument("--C", help="rational constant (default 9/10 of the admissible supremum)")
    p.set_defaults(func=cmd_certify_log_bound)

    st = sub.add_parser("stewart", help="gap profiles, linear forms, Baker bound").add_subparsers(
        dest="what", required=True
    )
    p = st.add_parser("gaps")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    _add_range(p)
    p.add_argument("--precision", type=int)
    p.set_defaults(func=cmd_stewart_gaps)
    p = st.add_parser("baker")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--heights", nargs="*")
    p.add_argument("--B", default="e")
    p.set_defaults(func=cmd_stewart_baker)
    p = st.add_parser("chains")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    _add_range(p)
    p.set_defaults(func=cmd_stewart_chains)
    p = st.add_parser("floor")
    p.add_argument("--a", type=int, default=3)
    p.add_argument("--b", type=int, default=10)
    p.add_argument("--n", type=int, help="evaluate log n / (log log n + C) at one n")
    p.add_argument("--C", default="0")
    _add_range(p, 10, 1000)
    p.set_defaults(func=cmd_stewart_floor)

    p = sub.add_parser("scan", help="digit-sum tables behind the scatter plots")
    p.add_argument("kind", choices=["power", "factorial", "lcm"])
    p.add_argument("--a", type=int, default=2)
    p.add_argument("--base", type=int, default=10)
    p.add_argument("--n-from", type=int, help="default 0, or 1 for lcm")
    p.add_argument("--n-to", type=int, default=100)
    p.add_argument("--out", choices=["csv", "plotdata"], default="csv")
    p.add_argument("--prefix", help="output path prefix for plotdata")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("oeis", help="OEIS b-file cross-checks").add_subparsers(dest="what", required=True)
    p = p.add_parser("check")
    p.add_argument("sequence_id")
    p.add_argument("--gen", required=True)
    p.add_argument("--from", dest="n_from", type=int, required=True)
    p.add_argument("--to", dest="n_to", type=int, required=True)
    p.add_argument("--online", action="store_true", help="fetch from the network (writes the cache)")
    p.add_argument("--fixtures-dir", type=Path)
    p.set_defaults(func=cmd_oeis_check)

    p = sub.add_parser("sparse-multiple", help="least k with 3^n | 10^k + 8")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_sparse_multiple)
    return parser


def _caps(args) -> Caps:
    try:
        caps = load_caps(args.config)
    except (OSError, ValueError) as exc:
        raise UsageError(f"bad config: {exc}") from exc
    return caps.replace(
        factorial_n=args.factorial_cap,
        lcm_n=args.lcm_cap,
        sparse_n=args.sparse_cap,
        power_exponent=args.power_cap,
        scan_n=args.scan_cap,
        factor_limit=args.factor_limit,
        precision_start=args.precision_start,
        precision_cap=args.precision_cap,
    )


def _report(kind: str, exc: BaseException) -> None:
    print(json.dumps({"error": kind, "message": str(exc)}), file=sys.stderr)


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        caps = _caps(args)
        return args.func(args, caps, out)
    except UsageError as exc:
        _report("UsageError", exc)
        return EXIT_USAGE
    except (DigitSumsError, OSError, ValueError) as exc:
        _report(type(exc).__name__, exc)
        return EXIT_FAIL


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
