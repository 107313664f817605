"""Bulk comparison of the G-function trace formulas against point counting.

One :class:`SweepRecord` is produced per (curve, method).  Records are
ordered by field, then curve enumeration index, then method, independent of
how many worker processes evaluated them.
"""

from __future__ import annotations

import csv
import io
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .errors import UnsupportedP
from .finite_field import (
    E1,
    E2,
    ShortW,
    cubic_roots,
    field_create,
    hasse_bound,
    sqrt_in_fq,
    trace_bruteforce,
)
from .gfunction import GammaCache
from .padic import padic_context
from .trace_formulas import (
    check_corollary15,
    trace_thm12,
    trace_thm13,
    trace_thm14,
    trace_thm_E1,
    trace_thm_E2,
)

SHORTW_METHODS = ("thm12", "thm13", "thm14", "cor15")
ALL_METHODS = ("thm12", "thm13", "thm14", "thmE1", "thmE2", "cor15")
CSV_COLUMNS = ("q", "p", "r", "a", "b", "method", "applicable", "value", "brute", "match",
               "micros")


@dataclass
class SweepConfig:
    primes: list[int] = field(default_factory=lambda: [5, 7, 11, 13, 17, 19, 23])
    degrees: list[int] = field(default_factory=lambda: [1, 2])
    max_q: int = 49
    exhaustive_max_q: int = 23
    sample: int = 500
    seed: int = 2024
    precision: int | None = None
    methods: tuple[str, ...] = ALL_METHODS
    fmt: str = "csv"
    jobs: int = 1
    corrected: bool = False
    timing: bool = False
    all_roots: bool = True

    def fields(self) -> list[tuple[int, int]]:
        out = []
        for p in self.primes:
            if p <= 3:
                raise UnsupportedP(f"p must exceed 3, got {p}")
            for r in self.degrees:
                if p ** r <= self.max_q:
                    out.append((p, r))
        return sorted(out, key=lambda pr: (pr[0] ** pr[1], pr[0]))


@dataclass
class SweepRecord:
    q: int
    p: int
    r: int
    a: int
    b: int
    method: str
    applicable: bool
    value: int | None
    brute: int | None
    match: bool
    micros: int = 0

    def csv_row(self):
        return [self.q, self.p, self.r, self.a, self.b, self.method, int(self.applicable),
                "" if self.value is None else self.value,
                "" if self.brute is None else self.brute, int(self.match), self.micros]


def _pairs(F, family: str):
    """Nonsingular coefficient pairs (as element codes) of a curve family."""
    out = []
    for u in range(F.q):
        for v in range(F.q):
            U, V = F.from_code(u), F.from_code(v)
            if family == "shortw":
                ok = ShortW(U, V).is_nonsingular()
            elif family == "E1":
                ok = bool(U) and E1(U, V).is_nonsingular()
            else:
                ok = bool(U) and E2(U, V).is_nonsingular()
            if ok:
                out.append((u, v))
    return out


def select_curves(F, family: str, config: SweepConfig):
    pairs = _pairs(F, family)
    if F.q <= config.exhaustive_max_q or len(pairs) <= config.sample:
        return pairs
    rng = random.Random(config.seed * 1_000_003 + F.q * 7 + len(family))
    return sorted(rng.sample(pairs, config.sample))


def _evaluate(task):
    """Worker: evaluate a batch of curves of one family over one field."""
    p, r, N, family, pairs, methods, corrected, timing, all_roots = task
    F = field_create(p, r, max_q=p ** r)
    ctx = padic_context(F, N)
    cache = GammaCache(ctx)
    bound = hasse_bound(F.q)
    records = []

    def record(u, v, method, applicable, value, brute, match, t0):
        micros = int((time.perf_counter() - t0) * 1e6) if timing else 0
        if value is not None and abs(value) > bound:
            match = False
        records.append(SweepRecord(F.q, p, r, u, v, method, applicable, value, brute,
                                   match, micros))

    def agrees(rep, brute):
        # decoded integer and full p-adic comparison must both hold
        return rep.value == brute and rep.scaled.agrees_with(brute)

    for u, v in pairs:
        U, V = F.from_code(u), F.from_code(v)
        if family == "E1":
            brute = trace_bruteforce(E1(U, V))
            t0 = time.perf_counter()
            rep = trace_thm_E1(U, V, ctx, cache)
            record(u, v, "thmE1", True, rep.value, brute, agrees(rep, brute), t0)
            continue
        if family == "E2":
            brute = trace_bruteforce(E2(U, V))
            t0 = time.perf_counter()
            rep = trace_thm_E2(U, V, ctx, cache, corrected=corrected)
            record(u, v, "thmE2", True, rep.value, brute, agrees(rep, brute), t0)
            continue
        curve = ShortW(U, V)
        brute = trace_bruteforce(curve)
        if "thm12" in methods:
            t0 = time.perf_counter()
            if U and V:
                rep = trace_thm12(U, V, ctx, cache)
                record(u, v, "thm12", True, rep.value, brute, agrees(rep, brute), t0)
            else:
                record(u, v, "thm12", False, None, brute, True, t0)
        if "thm13" in methods:
            t0 = time.perf_counter()
            k0 = sqrt_in_fq(-U / 3) if U else None
            if k0 is None:
                record(u, v, "thm13", False, None, brute, True, t0)
            else:
                ks = [k0, -k0] if all_roots else [k0]
                value, ok = None, True
                for k in ks:
                    rep = trace_thm13(U, V, ctx, cache, k=k)
                    shifted = trace_bruteforce(E1(3 * k, k ** 3 + U * k + V))
                    ok = ok and agrees(rep, brute) and shifted == brute
                    value = rep.value if value is None else value
                record(u, v, "thm13", True, value, brute, ok, t0)
        if "thm14" in methods:
            t0 = time.perf_counter()
            hs = cubic_roots(U, V) if V else []
            if not hs:
                record(u, v, "thm14", False, None, brute, True, t0)
            else:
                hs = hs if all_roots else hs[:1]
                value, ok = None, True
                for h in hs:
                    rep = trace_thm14(U, V, ctx, cache, h=h, corrected=corrected)
                    shifted = trace_bruteforce(E2(3 * h, 3 * h * h + U))
                    ok = ok and agrees(rep, brute) and shifted == brute
                    value = rep.value if value is None else value
                record(u, v, "thm14", True, value, brute, ok, t0)
        if "cor15" in methods:
            t0 = time.perf_counter()
            if U and V:
                rep = check_corollary15(U, V, ctx, cache, all_roots=all_roots,
                                        corrected=corrected)
                for branch, status in (("cor15k", rep.k_branch), ("cor15h", rep.h_branch)):
                    record(u, v, branch, status != "not-applicable", None, None,
                           status != "fail", t0)
            else:
                for branch in ("cor15k", "cor15h"):
                    record(u, v, branch, False, None, None, True, t0)
    return records


def _tasks(config: SweepConfig):
    tasks = []
    chunk = 64
    for p, r in config.fields():
        F = field_create(p, r, max_q=max(config.max_q, p ** r))
        N = config.precision
        families = []
        if any(m in SHORTW_METHODS for m in config.methods):
            families.append("shortw")
        if "thmE1" in config.methods:
            families.append("E1")
        if "thmE2" in config.methods:
            families.append("E2")
        for family in families:
            pairs = select_curves(F, family, config)
            for i in range(0, len(pairs), chunk):
                tasks.append((p, r, N, family, pairs[i:i + chunk], tuple(config.methods),
                              config.corrected, config.timing, config.all_roots))
    return tasks


def run_sweep(config: SweepConfig) -> list[SweepRecord]:
    tasks = _tasks(config)
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            batches = list(pool.map(_evaluate, tasks))
    else:
        batches = [_evaluate(t) for t in tasks]
    return [rec for batch in batches for rec in batch]


def to_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow(rec.csv_row())
    return buf.getvalue()


def to_json_lines(records, config: SweepConfig | None = None) -> str:
    lines = []
    if config is not None:
        lines.append(json.dumps({"config": asdict(config)}, sort_keys=True))
    lines += [json.dumps(asdict(rec), sort_keys=True) for rec in records]
    return "\n".join(lines) + "\n"


def summarize(records) -> dict:
    curves = {}
    applicable = {}
    mismatches = []
    for rec in records:
        curves.setdefault((rec.q, rec.method), 0)
        curves[(rec.q, rec.method)] += 1
        if rec.applicable:
            applicable[(rec.q, rec.method)] = applicable.get((rec.q, rec.method), 0) + 1
        if not rec.match:
            mismatches.append(rec)
    return {"records": len(records), "tested": curves, "applicable": applicable,
            "mismatches": mismatches}


def to_text(records, config: SweepConfig) -> str:
    s = summarize(records)
    out = [f"seed={config.seed} sample={config.sample} fields={config.fields()}"]
    for (q, method), n in sorted(s["tested"].items()):
        out.append(f"q={q:<5} {method:<7} tested={n:<6} applicable={s['applicable'].get((q, method), 0)}")
    for rec in s["mismatches"]:
        out.append(f"MISMATCH q={rec.q} a={rec.a} b={rec.b} {rec.method}: "
                   f"value={rec.value} brute={rec.brute}")
    out.append(f"records={s['records']} mismatches={len(s['mismatches'])}")
    return "\n".join(out) + "\n"
