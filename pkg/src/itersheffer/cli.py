"""Command-line interface.

    itersheffer families
    itersheffer compute  --family exponential --n 4
    itersheffer iterate  --family laguerre --param alpha=0 --n 2 --mode umbral-literal
    itersheffer riordan  --g "exp(t)" --f "t" --n 5
    itersheffer det      --family laguerre --n 3
    itersheffer verify   --family exponential --n 6 --checks biorthogonality,monomiality,routes
    itersheffer plotdata --family exponential --n 4 --xmin -1 --xmax 3 --samples 5

Exit status: 0 on success, 1 when a requested check fails, 2 for usage,
parse or domain errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from decimal import Decimal, localcontext
from fractions import Fraction

from . import determinantal, families, iterated, monomiality, riordan, specparse
from .errors import ShefferError
from .polynomial import Polynomial, format_polynomial
from .powerseries import CLASSICAL, EXPONENTIAL, as_rational
from .sheffer import (
    CheckReport,
    ShefferPair,
    biorthogonality_check,
    sequence_from_array,
    sequence_from_gf,
)

CHECKS = ("biorthogonality", "monomiality", "diffeq", "group", "routes")
CLI_MODES = {"gf": "gf", "umbral-riordan": "umbral_riordan",
             "umbral-literal": "umbral_literal", "det": "determinantal"}
PLOT_DIGITS = 20


class UsageError(Exception):
    pass


def _parse_params(items) -> dict:
    params = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise UsageError("--param expects key=value, got %r" % item)
        try:
            params[key.strip()] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise UsageError("--param %s: %r is not a rational" % (key, value)) from None
    return params


def _reference(name):
    if name is None:
        return None
    return CLASSICAL if name == "classical" else EXPONENTIAL


class Target:
    """The pair(s) a command works on, resolved from the flags."""

    def __init__(self, pair, pair2, scale, scale2, label, params):
        self.pair = pair
        self.pair2 = pair2
        self.scale = scale
        self.scale2 = scale2
        self.label = label
        self.params = params

    def spec(self, mode="gf", order="gf21") -> iterated.IteratedSpec:
        return iterated.IteratedSpec(self.pair, self.pair2, mode, order, self.scale, self.scale2)


def _unit(n):
    return Fraction(1)


def resolve_target(args, order: int) -> Target:
    params = _parse_params(args.param)
    c = _reference(args.cn)
    if args.family:
        if args.g or args.f or args.g2 or args.f2:
            raise UsageError("use either --family or --g/--f, not both")
        desc = families.catalog(args.family, params, order)
        if c is not None and c.kind != desc.c.kind:
            desc = desc.with_reference(c)
        return Target(desc.pair, desc.pair, desc.scale, desc.scale, desc.name,
                      {k: str(v) for k, v in desc.params.items()})
    if not (args.g and args.f):
        raise UsageError("give --family NAME or both --g EXPR and --f EXPR")
    c = c or EXPONENTIAL
    pair = ShefferPair(specparse.evaluate(args.g, params, order),
                       specparse.evaluate(args.f, params, order), c)
    pair2 = pair
    if args.g2 or args.f2:
        pair2 = ShefferPair(specparse.evaluate(args.g2 or "1", params, order),
                            specparse.evaluate(args.f2 or args.f, params, order), c)
    return Target(pair, pair2, _unit, _unit, "custom", {k: str(v) for k, v in params.items()})


def _poly_json(n, p: Polynomial):
    return {"n": n, "coefficients": p.to_strings(), "text": format_polynomial(p)}


def _emit_sequence(out, fmt, polys, meta):
    if fmt == "json":
        doc = dict(meta)
        doc["polynomials"] = [_poly_json(n, p) for n, p in enumerate(polys)]
        out.write(json.dumps(doc, indent=2) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "k", "coefficient"])
        for n, p in enumerate(polys):
            for k, v in enumerate(p.to_strings()):
                w.writerow([n, k, v])
    else:
        width = len(str(len(polys) - 1))
        for n, p in enumerate(polys):
            out.write("%*d  %s\n" % (width, n, format_polynomial(p)))


def _meta(args, target, **extra):
    meta = {"command": args.command, "family": target.label, "params": target.params,
            "c": target.pair.c.label, "n": args.n}
    meta.update(extra)
    return meta


def cmd_families(args, out) -> int:
    rows = families.describe_all()
    if args.format == "json":
        out.write(json.dumps({"families": rows}, indent=2) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["name", "params", "g", "f", "c"])
        for r in rows:
            w.writerow([r["name"], " ".join("%s=%s" % kv for kv in r["params"].items()),
                        r["g"], r["f"], r["c"]])
    else:
        for r in rows:
            params = " ".join("%s=%s" % kv for kv in r["params"].items())
            out.write("%-22s %-24s g = %s; f = %s; c = %s\n"
                      % (r["name"], params or "-", r["g"], r["f"], r["c"]))
    return 0


def cmd_compute(args, out) -> int:
    target = resolve_target(args, args.n + 2)
    seq = sequence_from_gf(target.pair, args.n)
    polys = seq.polys
    if args.normalization == "textbook":
        polys = [p * (1 / Fraction(target.scale(n))) for n, p in enumerate(polys)]
    reports = run_checks(target, _split_checks(args.checks), args.n, iterate=False)
    _emit_sequence(out, args.format, polys,
                   _meta(args, target, frame=args.normalization,
                         checks=[r.as_dict() for r in reports]))
    _emit_reports_table(out, args.format, reports)
    return _status(reports)


def cmd_iterate(args, out) -> int:
    target = resolve_target(args, args.n + 2)
    mode = CLI_MODES[args.mode]
    seq = iterated.sequence(target.spec(mode, args.order), args.n)
    frame = "textbook" if mode == "umbral_literal" else "sheffer"
    reports = run_checks(target, _split_checks(args.checks), args.n, iterate=True, order=args.order)
    _emit_sequence(out, args.format, seq.polys,
                   _meta(args, target, mode=args.mode, order=args.order, frame=frame,
                         checks=[r.as_dict() for r in reports]))
    _emit_reports_table(out, args.format, reports)
    return _status(reports)


def cmd_riordan(args, out) -> int:
    target = resolve_target(args, args.n)
    A = riordan.build(target.pair.g, target.pair.f, target.pair.c, args.n)
    if args.format == "json":
        doc = _meta(args, target)
        doc["rows"] = [[str(v) for v in row] for row in A.entries]
        out.write(json.dumps(doc, indent=2) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "k", "entry"])
        for n, row in enumerate(A.entries):
            for k, v in enumerate(row):
                w.writerow([n, k, str(v)])
    else:
        out.write(riordan.format_triangle(A) + "\n")
    return 0


def cmd_det(args, out) -> int:
    target = resolve_target(args, args.n)
    if args.iterated:
        polys = iterated.determinantal_route(target.spec("determinantal", args.order), args.n).polys
    else:
        A = riordan.build(target.pair.g, target.pair.f, target.pair.c, args.n)
        polys = [determinantal.sheffer_det(A, n) for n in range(args.n + 1)]
    _emit_sequence(out, args.format, polys,
                   _meta(args, target, iterated=args.iterated, order=args.order, frame="sheffer"))
    return 0


def cmd_verify(args, out) -> int:
    target = resolve_target(args, args.n + 2)
    checks = _split_checks(args.checks) or list(CHECKS)
    reports = run_checks(target, checks, args.n, iterate=args.iterated, order=args.order)
    if args.format == "json":
        doc = _meta(args, target, iterated=args.iterated, order=args.order)
        doc["checks"] = [r.as_dict() for r in reports]
        doc["ok"] = all(r.ok for r in reports)
        out.write(json.dumps(doc, indent=2) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["check", "ok", "checked", "first_violation"])
        for r in reports:
            w.writerow([r.name, "true" if r.ok else "false", r.checked,
                        "" if r.first is None else " ".join(map(str, r.first))])
    else:
        _emit_reports_table(out, "table", reports, force=True)
    return _status(reports)


def to_decimal(value: Fraction, digits: int = PLOT_DIGITS) -> str:
    """Round an exact rational to ``digits`` significant digits."""
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(value.numerator) / Decimal(value.denominator)
    text = format(d, "f")
    return text


def sample_points(xmin: Fraction, xmax: Fraction, samples: int) -> list[Fraction]:
    if samples < 1:
        raise UsageError("--samples must be positive")
    if samples == 1:
        return [xmin]
    step = (xmax - xmin) / (samples - 1)
    return [xmin + i * step for i in range(samples)]


def cmd_plotdata(args, out) -> int:
    target = resolve_target(args, args.n + 2)
    try:
        xmin, xmax = as_rational(Fraction(args.xmin)), as_rational(Fraction(args.xmax))
    except (ValueError, ZeroDivisionError):
        raise UsageError("--xmin/--xmax must be rationals") from None
    if args.what == "sequence":
        seq = sequence_from_gf(target.pair, args.n).polys
        p = seq[args.n] * (1 / Fraction(target.scale(args.n)))
    else:
        mode = CLI_MODES[args.mode]
        p = iterated.sequence(target.spec(mode, args.order), args.n)[args.n]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "value"])
    for x in sample_points(xmin, xmax, args.samples):
        w.writerow([to_decimal(x), to_decimal(p(x))])
    if args.output:
        with open(args.output, "w", encoding="ascii") as fh:
            fh.write(buf.getvalue())
    else:
        out.write(buf.getvalue())
    return 0


def _split_checks(text) -> list[str]:
    if not text:
        return []
    names = [c.strip() for c in text.split(",") if c.strip()]
    bad = [c for c in names if c not in CHECKS]
    if bad:
        raise UsageError("unknown check(s) %s; choose from %s" % (", ".join(bad), ", ".join(CHECKS)))
    return names


def _skipped(name, reason) -> CheckReport:
    r = CheckReport(name)
    r.violations.append("skipped: " + reason)
    return r


def run_checks(target: Target, checks, N: int, iterate: bool = False,
               order: str = "gf21") -> list[CheckReport]:
    """Run the named checks on the pair, or on its 2-iterate when ``iterate``."""
    reports = []
    spec = target.spec("gf", order)
    if iterate:
        pair = iterated.composed_pair(target.pair, target.pair2, order)
        mono_target = spec
    else:
        pair = target.pair
        mono_target = pair
    exponential = pair.c.kind == "exponential"
    for name in checks:
        if name == "biorthogonality":
            seq = iterated.gf_2isp(spec, N) if iterate else None
            reports.append(biorthogonality_check(pair, N, seq))
        elif name == "monomiality":
            if not exponential:
                reports.append(_skipped(name, "needs the exponential reference sequence"))
                continue
            reports.append(monomiality.verify_monomiality(mono_target, N))
        elif name == "diffeq":
            if not exponential:
                reports.append(_skipped(name, "needs the exponential reference sequence"))
                continue
            r = CheckReport("diffeq")
            for n in range(N + 1):
                r.checked += 1
                if not monomiality.diffeq_residual(mono_target, n).is_zero():
                    r.fail((n,), "(MP - %d) s_%d != 0" % (n, n))
            reports.append(r)
        elif name == "group":
            reports.append(group_check(pair, N))
        elif name == "routes":
            reports.append(route_check(target, N, iterate, order))
    return reports


def group_check(pair: ShefferPair, N: int) -> CheckReport:
    r = CheckReport("group")
    A = riordan.build(pair.g, pair.f, pair.c, N)
    r.checked += 1
    try:
        product = riordan.multiply(A, riordan.inverse(A))
    except ArithmeticError as exc:
        r.fail(("provenance",), str(exc))
        return r
    if product.entries != riordan.identity(pair.c, N).entries:
        r.fail(("identity",), "A * A^-1 is not the identity")
    return r


def route_check(target: Target, N: int, iterate: bool, order: str) -> CheckReport:
    r = CheckReport("routes")
    if not iterate:
        pair = target.pair
        gf = sequence_from_gf(pair, N).polys
        arr = sequence_from_array(pair, N).polys
        A = riordan.build(pair.g, pair.f, pair.c, N)
        det = [determinantal.sheffer_det(A, n) for n in range(N + 1)]
        for n in range(N + 1):
            r.checked += 1
            if not (gf[n] == arr[n] == det[n]):
                r.fail((n,), "gf, array and determinant disagree at n = %d" % n)
        return r
    report = iterated.consistency_report(target.spec("gf", order), N)[order]
    core = ("gf", "umbral_riordan", "determinantal", "conjugate")
    for (a, b), same in report["agree"].items():
        if a in core and b in core:
            r.checked += 1
            if not same:
                r.fail((a, b), "routes %s and %s disagree" % (a, b))
    literal_same = report["agree"][("gf", "umbral_literal")]
    if not literal_same:
        r.violations.append("note: umbral_literal differs from gf (textbook composition)")
    return r


def _emit_reports_table(out, fmt, reports, force=False):
    if fmt != "table" or not (reports or force):
        return
    for r in reports:
        status = "PASS" if r.ok else "FAIL"
        out.write("check %-16s %s (%d checked)\n" % (r.name, status, r.checked))
        for v in r.violations[:5]:
            out.write("    %s\n" % v)


def _status(reports) -> int:
    return 0 if all(r.ok for r in reports) else 1


def _add_target_args(p, with_n_default=4):
    p.add_argument("--family", help="catalog family name (see 'families')")
    p.add_argument("--g", help="g(t) expression")
    p.add_argument("--f", help="f(t) expression")
    p.add_argument("--g2", help="g(t) of the second pair (iterates)")
    p.add_argument("--f2", help="f(t) of the second pair (iterates)")
    p.add_argument("--param", action="append", default=[], metavar="KEY=VAL",
                   help="parameter binding; repeatable")
    p.add_argument("--cn", choices=("classical", "exponential"),
                   help="reference sequence (families default to their own)")
    p.add_argument("--n", type=int, default=with_n_default, help="highest index")
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")


def _add_iter_args(p):
    p.add_argument("--mode", choices=tuple(CLI_MODES), default="gf")
    p.add_argument("--order", choices=iterated.ORDERS, default="gf21",
                   help="composition order of the two pairs")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="itersheffer",
                                     description="Exact Sheffer and 2-iterated Sheffer polynomials.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("families", help="list catalog families")
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")

    p = sub.add_parser("compute", help="Sheffer polynomials of one pair")
    _add_target_args(p)
    p.add_argument("--normalization", choices=("textbook", "sheffer"), default="textbook")
    p.add_argument("--checks", default="")

    p = sub.add_parser("iterate", help="2-iterated polynomials")
    _add_target_args(p)
    _add_iter_args(p)
    p.add_argument("--checks", default="")

    p = sub.add_parser("riordan", help="print the coefficient triangle of (g, f)")
    _add_target_args(p)

    p = sub.add_parser("det", help="polynomials from the determinantal form")
    _add_target_args(p)
    p.add_argument("--iterated", action="store_true", help="determinant of the 2-iterate")
    p.add_argument("--order", choices=iterated.ORDERS, default="gf21")

    p = sub.add_parser("verify", help="run verification checks")
    _add_target_args(p, with_n_default=6)
    p.add_argument("--checks", default=",".join(CHECKS))
    p.add_argument("--iterated", action="store_true", help="check the 2-iterate instead")
    p.add_argument("--order", choices=iterated.ORDERS, default="gf21")

    p = sub.add_parser("plotdata", help="sample one polynomial as CSV x,value")
    _add_target_args(p)
    _add_iter_args(p)
    p.add_argument("--what", choices=("iterate", "sequence"), default="iterate")
    p.add_argument("--xmin", default="-1")
    p.add_argument("--xmax", default="3")
    p.add_argument("--samples", type=int, default=5)
    p.add_argument("-o", "--output", help="write CSV here instead of stdout")
    return parser


COMMANDS = {"families": cmd_families, "compute": cmd_compute, "iterate": cmd_iterate,
            "riordan": cmd_riordan, "det": cmd_det, "verify": cmd_verify,
            "plotdata": cmd_plotdata}


def _glue_values(argv):
    # argparse takes "-1/3" for an option; attach such values to their flag
    argv = list(sys.argv[1:] if argv is None else argv)
    out = []
    i = 0
    while i < len(argv):
        if argv[i] in ("--xmin", "--xmax") and i + 1 < len(argv):
            out.append("%s=%s" % (argv[i], argv[i + 1]))
            i += 2
            continue
        out.append(argv[i])
        i += 1
    return out


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "n", 0) is not None and getattr(args, "n", 0) < 0:
        sys.stderr.write("error: --n must be nonnegative\n")
        return 2
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2
    except ShefferError as exc:
        sys.stderr.write("error [%s]: %s\n" % (exc.module, exc))
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
