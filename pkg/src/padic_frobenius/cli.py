"""Command-line entry point: ``python -m padic_frobenius <command> ...``.

Exit codes: 0 when every check agrees, 1 on any mismatch, 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .cyclotomic import oracle_suite
from .errors import FrobeniusError, JInvariant1728, JInvariantZero
from .finite_field import (
    ShortW,
    field_create,
    hasse_bound,
    j_invariant,
    trace_bruteforce,
)
from .gfunction import GammaCache, GArgs, evaluate_G
from .identity_checks import floor_lemma_grid, gamma_identity_grid
from .padic import padic_context
from .sweep import ALL_METHODS, SweepConfig, run_sweep, summarize, to_csv, to_json_lines, to_text
from .trace_formulas import (
    check_corollary15,
    padic_to_hasse_integer,
    trace_thm12,
    trace_thm13,
    trace_thm14,
)

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def _fractions(text: str) -> tuple[Fraction, ...]:
    if not text:
        return ()
    try:
        return tuple(Fraction(s.strip()) for s in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse rationals {text!r}: {exc}") from None


def _element(F, text: str):
    """An integer (reduced mod p) or comma-separated coefficients c0,c1,..."""
    try:
        if "," in text:
            coeffs = [int(c) for c in text.split(",")]
            if len(coeffs) > F.r:
                raise UsageError(f"{text!r} has more than r = {F.r} coefficients")
            return F(coeffs + [0] * (F.r - len(coeffs)))
        return F(int(text))
    except ValueError:
        raise UsageError(f"cannot parse field element {text!r}") from None


# -- trace ---------------------------------------------------------------------

def cmd_trace(args, out) -> int:
    F = field_create(args.p, args.r)
    a, b = _element(F, args.a), _element(F, args.b)
    curve = ShortW(a, b)
    if not curve.is_nonsingular():
        raise UsageError(f"{curve!r} is singular (4a^3 + 27b^2 = 0)")
    ctx = padic_context(F, args.precision)
    cache = GammaCache(ctx)
    brute = trace_bruteforce(curve)
    print(f"curve  y^2 = x^3 + ({a!r})x + ({b!r}) over F_{F.q}", file=out)
    print(f"j      {j_invariant(a, b)!r}", file=out)
    print(f"N      {ctx.N}", file=out)
    print(f"brute  a_q = {brute}   (Hasse bound {hasse_bound(F.q)})", file=out)

    agree = True

    def show(name, thunk):
        nonlocal agree
        try:
            rep = thunk()
        except (JInvariantZero, JInvariant1728) as exc:
            print(f"{name:<6} not applicable: {exc}", file=out)
            return
        if not rep.applicable:
            print(f"{name:<6} not applicable: {rep.details}", file=out)
            return
        ok = rep.value == brute
        agree = agree and ok
        g = rep.gvalue.args
        params = (",".join(map(str, g.upper)) + "; " + ",".join(map(str, g.lower)))
        print(f"{name:<6} a_q = {rep.value:<4} {'agrees' if ok else 'MISMATCH'}   "
              f"2G2[{params} | {g.t!r}]  {rep.details}", file=out)

    show("thm12", lambda: trace_thm12(a, b, ctx, cache))
    show("thm13", lambda: trace_thm13(a, b, ctx, cache))
    show("thm14", lambda: trace_thm14(a, b, ctx, cache, corrected=args.corrected))
    if a and b:
        rep = check_corollary15(a, b, ctx, cache, all_roots=True, corrected=args.corrected)
        agree = agree and rep.passed
        print(f"cor15  k-branch {rep.k_branch}, h-branch {rep.h_branch}", file=out)
    print("verdict " + ("all applicable methods agree" if agree else "MISMATCH"), file=out)
    return EXIT_OK if agree else EXIT_MISMATCH


# -- sweep ---------------------------------------------------------------------

def _config(args) -> SweepConfig:
    methods = tuple(args.methods.split(",")) if args.methods else ALL_METHODS
    unknown = set(methods) - set(ALL_METHODS)
    if unknown:
        raise UsageError(f"unknown methods {sorted(unknown)}; choose from {ALL_METHODS}")
    primes = _int_list(args.primes)
    if any(p <= 3 for p in primes):
        raise UsageError("every prime must exceed 3")
    return SweepConfig(
        primes=primes, degrees=_int_list(args.degrees), max_q=args.max_q,
        exhaustive_max_q=args.exhaustive_max_q, sample=args.sample, seed=args.seed,
        precision=args.precision, methods=methods, fmt=args.format, jobs=args.jobs,
        corrected=args.corrected, timing=args.timing)


def cmd_sweep(args, out) -> int:
    config = _config(args)
    records = run_sweep(config)
    if config.fmt == "csv":
        body = to_csv(records)
    elif config.fmt == "json":
        body = to_json_lines(records, config)
    else:
        body = to_text(records, config)
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(body)
        print(to_text(records, config).splitlines()[-1], file=out)
    else:
        out.write(body)
    mismatches = summarize(records)["mismatches"]
    if config.fmt != "text":
        print(f"# seed={config.seed} records={len(records)} mismatches={len(mismatches)}",
              file=sys.stderr)
    return EXIT_OK if not mismatches else EXIT_MISMATCH


# -- gfun ----------------------------------------------------------------------

def cmd_gfun(args, out) -> int:
    F = field_create(args.p, args.r)
    ctx = padic_context(F, args.precision)
    gargs = GArgs(_fractions(args.upper), _fractions(args.lower), _element(F, args.t), ctx)
    value = evaluate_G(gargs).value
    if value.is_exact_zero:
        print("G = 0 (exact)", file=out)
        return EXIT_OK
    print(f"G = {value!r}", file=out)
    if value.unit is None:
        print(f"val >= {value.valuation}", file=out)
        return EXIT_OK
    print(f"val = {value.valuation}", file=out)
    m = ctx.p ** value.prec
    digits = [value.unit] if F.r > 1 else [value.unit[0], value.unit[0] - m]
    print(f"mantissa = {digits[0]} mod {ctx.p}^{value.prec}"
          + (f" (= {digits[1]})" if F.r == 1 else ""), file=out)
    if value.valuation >= -F.r:
        z = padic_to_hasse_integer(value * F.q, F.q)
        if z is not None:
            print(f"q*G = {z}   G = {Fraction(z, F.q)}", file=out)
    return EXIT_OK


# -- verify --------------------------------------------------------------------

def _tally(name, results, out) -> int:
    bad = [r for r in results if not r.passed]
    print(f"{name:<10} checked={len(results):<7} failed={len(bad)}", file=out)
    for r in bad[:20]:
        print(f"  FAIL {r.identity.value} {r.params}", file=out)
    return len(bad)


def _fields_upto(qmax, primes=(5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47), rmax=6):
    return sorted(((p, r) for p in primes for r in range(1, rmax + 1) if p ** r <= qmax),
                  key=lambda pr: pr[0] ** pr[1])


def verify_lemmas(qmax, out):
    res = []
    for p, r in _fields_upto(qmax, primes=(5, 7, 11, 13), rmax=3):
        res += floor_lemma_grid(p, r)
    return _tally("lemmas", res, out)


def verify_gamma(qmax, out):
    res = []
    for p, r in _fields_upto(qmax):
        ctx = padic_context(field_create(p, r))
        res += gamma_identity_grid(ctx)
        res += gamma_identity_grid(ctx.with_precision(ctx.N + 2))
    return _tally("gamma", res, out)


def verify_oracle(qmax, out):
    res = []
    for p, r in _fields_upto(qmax):
        F = field_create(p, r)
        res += oracle_suite(F)
        # same identities under a Galois twist of the chosen root of unity
        res += oracle_suite(F, galois=p * (F.q - 1) - 1)
    return _tally("oracle", res, out)


def verify_corollary(qmax, out, corrected=False, seed=2024, sample=500):
    config = SweepConfig(primes=[p for p in (5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)
                                 if p <= qmax],
                         degrees=[1, 2], max_q=qmax, sample=sample, seed=seed,
                         methods=("cor15",), corrected=corrected)
    recs = run_sweep(config)
    bad = [r for r in recs if not r.match]
    applicable = sum(r.applicable for r in recs)
    print(f"{'corollary':<10} checked={applicable:<7} failed={len(bad)}", file=out)
    for r in bad[:20]:
        print(f"  FAIL {r.method} q={r.q} a={r.a} b={r.b}", file=out)
    return len(bad)


DEFAULT_QMAX = {"lemmas": 2197, "gamma": 49, "oracle": 13, "corollary": 49}


def cmd_verify(args, out) -> int:
    suites = ["lemmas", "gamma", "oracle", "corollary"] if args.suite == "all" else [args.suite]
    failures = 0
    for s in suites:
        qmax = args.qmax or DEFAULT_QMAX[s]
        if s == "lemmas":
            failures += verify_lemmas(qmax, out)
        elif s == "gamma":
            failures += verify_gamma(qmax, out)
        elif s == "oracle":
            failures += verify_oracle(qmax, out)
        else:
            failures += verify_corollary(qmax, out, corrected=args.corrected)
    return EXIT_OK if not failures else EXIT_MISMATCH


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="padic-frobenius",
                                 description="Traces of Frobenius via p-adic hypergeometric functions.")
    sub = ap.add_subparsers(dest="command", required=True)

    t = sub.add_parser("trace", help="inspect one curve y^2 = x^3 + ax + b")
    t.add_argument("--p", type=int, required=True)
    t.add_argument("--r", type=int, default=1)
    t.add_argument("--a", required=True, help="integer or coefficients c0,c1,...")
    t.add_argument("--b", required=True)
    t.add_argument("--precision", type=int, default=None)
    t.add_argument("--corrected", action="store_true",
                   help="include the phi(3h) factor in the h-based formula")
    t.set_defaults(func=cmd_trace)

    s = sub.add_parser("sweep", help="compare every method with point counting")
    s.add_argument("--primes", default="5,7,11,13,17,19,23")
    s.add_argument("--degrees", default="1,2")
    s.add_argument("--max-q", type=int, default=49)
    s.add_argument("--exhaustive-max-q", type=int, default=23,
                   help="fields up to this size are enumerated in full, larger ones sampled")
    s.add_argument("--sample", type=int, default=500)
    s.add_argument("--seed", type=int, default=2024)
    s.add_argument("--precision", type=int, default=None)
    s.add_argument("--methods", default=None, help=f"comma list from {','.join(ALL_METHODS)}")
    s.add_argument("--format", choices=("text", "csv", "json"), default="text")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--output", default=None)
    s.add_argument("--timing", action="store_true", help="fill the micros column")
    s.add_argument("--corrected", action="store_true")
    s.set_defaults(func=cmd_sweep)

    g = sub.add_parser("gfun", help="evaluate nGn[upper; lower | t]")
    g.add_argument("--upper", required=True)
    g.add_argument("--lower", default="")
    g.add_argument("--t", required=True)
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--r", type=int, default=1)
    g.add_argument("--precision", "--N", dest="precision", type=int, default=None)
    g.set_defaults(func=cmd_gfun)

    v = sub.add_parser("verify", help="run identity suites")
    v.add_argument("suite", choices=("lemmas", "gamma", "oracle", "corollary", "all"))
    v.add_argument("--qmax", type=int, default=None)
    v.add_argument("--corrected", action="store_true")
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (UsageError, FrobeniusError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
