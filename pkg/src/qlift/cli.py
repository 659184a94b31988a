"""Command-line interface: expand, op, lift, verify, example, fetch."""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass
from functools import partial
from typing import Callable

from . import lmfdb
from .chars import parse_char
from .forms import (EXAMPLES, THETA_TABLE, E_classical, LiteralError, delta, eta_quotient_series,
                    example_form, parse_eta_literal, theta_series_build)
from .hecke import HeckeContext, hecke_Tp2_half, hecke_Tp_int
from .qseries import (NegativeValuation, PrecisionError, Series24, StrideError, op_sieve,
                      op_theta, op_twist, op_U, op_V, series_mul)
from .shimura import LiftSpec, ResidueClassError, s_eta, sh_theta, s_r_pipeline
from . import verify

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_ENV = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class FormLiteral:
    """A parsed product of named forms and eta factors."""

    text: str
    weight2: int | None            # None for the zero form
    factors: list                  # functions prec -> Series24

    def series(self, prec: int) -> Series24:
        if self.weight2 is None:
            return Series24.zero(prec, 24)
        out = None
        for fn in self.factors:
            s = fn(prec)
            out = s if out is None else series_mul(out, s)
        if out is None:
            return Series24.constant(1, prec)
        return out.truncate(prec)


_NAMED = re.compile(r"E4|E6|delta|theta:(even|odd):[1-6]|ex[12]\.[fg]\d|0|-?\d+")
_ETA = re.compile(r"eta\(\s*\d+\s*\)(?:\s*\^\s*-?\d+)?")


def _named(token: str) -> tuple[Callable[[int], Series24], int]:
    if token == "E4":
        return partial(E_classical, 4), 8
    if token == "E6":
        return partial(E_classical, 6), 12
    if token == "delta":
        return delta, 24
    if token.startswith("theta:"):
        entry = THETA_TABLE[token]
        return partial(theta_series_build, entry), entry.weight2
    if token.startswith("ex"):
        ex = EXAMPLES[token.split(".")[0]]
        try:
            example_form(token, 24)
        except KeyError:
            raise LiteralError(f"unknown fixture {token!r}", 0) from None
        return (lambda prec, t=token: example_form(t, prec)), 2 * ex.weight
    value = int(token)
    return (lambda prec, v=value: Series24.constant(v, prec)), 0


def parse_form(text: str) -> FormLiteral:
    """Parse e.g. "eta(1)^5 * E4", "delta", "theta:odd:3", "ex1.g2", "0"."""
    pos, n = 0, len(text)
    factors, weight2, zero = [], 0, False
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        m = _ETA.match(text, pos)
        if m:
            e = parse_eta_literal(m.group(0))
            factors.append(partial(eta_quotient_series, e))
            weight2 += e.weight2
        else:
            m = _NAMED.match(text, pos)
            if not m or (m.end() < n and (text[m.end()].isalnum() or text[m.end()] in ".:(")):
                raise LiteralError(f"unknown factor in {text!r}", pos)
            token = m.group(0)
            if token == "0":
                zero = True
            else:
                fn, w2 = _named(token)
                factors.append(fn)
                weight2 += w2
        pos = m.end()
        while pos < n and text[pos].isspace():
            pos += 1
        if pos == n:
            break
        if text[pos] != "*":
            raise LiteralError(f"expected '*' in {text!r}", pos)
        pos += 1
    return FormLiteral(text, None if zero else weight2, factors)


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _check_prec(prec: int):
    if prec < 24:
        raise UsageError("--prec must be at least 24 (one integer coefficient)")


def cmd_expand(args) -> int:
    _check_prec(args.prec)
    f = parse_form(args.form).series(args.prec)
    _emit(f.dump(), args.out)
    return EXIT_PASS


def cmd_op(args) -> int:
    _check_prec(args.prec)
    form = parse_form(args.form)
    f = form.series(args.prec)
    op = args.operator
    if op in ("U", "V", "T", "T2") and args.m is None:
        raise UsageError(f"operator {op} needs --m")
    if op == "U":
        g = op_U(f, args.m, stride=args.stride)
    elif op == "V":
        g = op_V(f, args.m)
    elif op == "twist":
        g = op_twist(f, parse_char(args.char or "1"), args.stride)
    elif op == "theta":
        g = op_theta(f)
    elif op == "sieve":
        if args.a is None or args.b is None:
            raise UsageError("sieve needs --a and --b")
        g = op_sieve(f, args.a, args.b, args.stride)
    elif op == "T":
        g = hecke_Tp_int(f, HeckeContext(_weight2(form, args), parse_char(args.char or "1")),
                         args.m)
    else:
        ctx = HeckeContext(_weight2(form, args), parse_char(args.char or "1"), args.grid)
        g = hecke_Tp2_half(f, ctx, args.m)
    _emit(g.dump(), args.out)
    return EXIT_PASS


def _weight2(form: FormLiteral, args) -> int:
    if args.weight2 is not None:
        return args.weight2
    if form.weight2 is None:
        raise UsageError("the zero form needs --weight2")
    return form.weight2


def cmd_lift(args) -> int:
    _check_prec(args.prec)
    form = parse_form(args.form)
    spec_kappa = args.kappa
    if spec_kappa is None:
        spec_kappa = form.weight2 // 2 if form.weight2 is not None else 2
    spec = LiftSpec(args.t, spec_kappa, parse_char(args.char or "1"), args.variant)
    n_out = -(-args.prec // 24)
    need = spec.unit * args.t * (n_out - 1) ** 2 + 1
    f = form.series(need)
    if f.is_zero():
        lifted = Series24.zero(24 * n_out, 24)
    elif args.variant == "theta":
        lifted = sh_theta(f, spec)
    else:
        lifted = s_eta(f, spec)
    _emit(lifted.dump(), args.out)
    return EXIT_PASS


def cmd_verify(args) -> int:
    _check_prec(args.prec)
    try:
        specs = verify.select(args.selector, args.prec, args.g)
    except KeyError as exc:
        raise UsageError(str(exc.args[0] if exc.args else exc)) from None
    reports = verify.run_specs(specs, args.parallel)
    if args.format == "lines":
        text = "\n".join(r.line(args.timings) for r in reports)
    else:
        text = verify.format_table(reports, args.timings)
    _emit(text + "\n", args.out)
    return verify.summary_exit_code(reports)


def cmd_example(args) -> int:
    _check_prec(args.prec)
    ex = EXAMPLES[args.name]
    rep = s_r_pipeline(ex.r, partial(E_classical, ex.f_weight), ex.f_weight, ex.mode,
                       "both", args.prec, partial(verify.example_eigenforms, args.name))
    lines = [f"S_{ex.r}(eta^{ex.eta_power} {ex.f_name}), level {ex.level} eigenbasis",
             "alphas: " + ", ".join(str(a) for a in rep.alphas),
             "direct and eigenbasis paths: " + ("agree" if rep.agree else
                                                f"differ at index {rep.mismatch}"),
             rep.direct.dump().rstrip("\n")]
    check = verify.check_T15_T16(args.name, args.prec)
    lines.append(verify.format_table([check], timings=False))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_PASS if rep.agree and check.status != "fail" else EXIT_FAIL


def cmd_fetch(args) -> int:
    rec = lmfdb.fetch(args.label, args.count, network=args.network)
    trimmed = lmfdb.NewformRecord(rec.label, rec.level, rec.weight, rec.coeffs[:args.count],
                                  rec.source)
    _emit(trimmed.dumps(), args.out)
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qlift", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, prec=240):
        sp.add_argument("--prec", type=int, default=prec,
                        help="grid precision bound, 24 per integer power of q")
        sp.add_argument("--out", help="write output to this path")

    sp = sub.add_parser("expand", help="expand an eta-quotient or named form")
    sp.add_argument("form")
    common(sp)
    sp.set_defaults(func=cmd_expand)

    sp = sub.add_parser("op", help="apply U, V, twist, theta, sieve, T_p or T_{p^2}")
    sp.add_argument("operator", choices=["U", "V", "twist", "theta", "sieve", "T", "T2"])
    sp.add_argument("form")
    sp.add_argument("--m", type=int, help="operator index (U_m, V_m, T_p, T_{p^2})")
    sp.add_argument("--char", help='character, e.g. "kron(-4)*ind(3)"')
    sp.add_argument("--stride", type=int, default=1, help="index stride of the input grid")
    sp.add_argument("--a", type=int)
    sp.add_argument("--b", type=int)
    sp.add_argument("--weight2", type=int, help="twice the weight (default from the literal)")
    sp.add_argument("--grid", choices=["mod24", "mod8"], default="mod24")
    common(sp)
    sp.set_defaults(func=cmd_op)

    sp = sub.add_parser("lift", help="Shimura lift S_t / Sh_t")
    sp.add_argument("form")
    sp.add_argument("--t", type=int, default=1)
    sp.add_argument("--variant", choices=["eta24", "eta8", "theta"], default="eta24")
    sp.add_argument("--char", help="nebentypus of the input (default trivial)")
    sp.add_argument("--kappa", type=int, help="k for weight k + 1/2 (default from the literal)")
    common(sp)
    sp.set_defaults(func=cmd_lift)

    sp = sub.add_parser("verify", help="run identity checks")
    sp.add_argument("selector", help="all, T13[:case], T14[:part], T15:ex1, T16:ex2, "
                                     "T17:case[:w], selberg, theta-tables, comm, lift-relation")
    sp.add_argument("--g", help="eigenform: delta, E4, E6 (default delta)")
    sp.add_argument("--parallel", type=int, default=1, help="worker processes")
    sp.add_argument("--format", choices=["table", "lines"], default="table")
    sp.add_argument("--timings", action="store_true", help="include wall times")
    common(sp, 2400)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("example", help="run a worked example through both pipelines")
    sp.add_argument("name", choices=sorted(EXAMPLES))
    common(sp, 2400)
    sp.set_defaults(func=cmd_example)

    sp = sub.add_parser("fetch", help="newform coefficients from fixtures, cache or LMFDB")
    sp.add_argument("label")
    sp.add_argument("--count", type=int, default=20)
    sp.add_argument("--network", action="store_true", help="allow HTTP requests")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_fetch)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_PASS
    try:
        return args.func(args)
    except LiteralError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except NegativeValuation as exc:
        print(f"error: negative valuation: {exc}", file=sys.stderr)
    except (lmfdb.NetworkError, lmfdb.ParseError, lmfdb.CountExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ENV
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ENV
    except (UsageError, ResidueClassError, PrecisionError, StrideError, lmfdb.UnknownLabel,
            KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
    return EXIT_USAGE
