"""Command-line front end.

Exit codes: 0 success (planar / witness found / all checks pass),
1 negative outcome (not planar / no witness / deviation or scan failure),
2 usage or cap errors.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from typing import Optional, TextIO

import numpy as np

from . import bounds, padic
from .config import FORMATS, RunConfig, default_threads
from .ffield import make_ctx, prime_power
from .interp import FuncTable, PolyCoeffs
from .planar import is_planar, monomial_table
from .scan import CheckpointMismatch, ScanConfig, conjecture_scan, load_checkpoint

WITNESS_FIELDS = ("kind", "b", "n", "d", "e", "lhs", "bound", "strategy", "elapsed_ms")


class UsageError(Exception):
    pass


class Emitter:
    def __init__(self, cfg: RunConfig, out: TextIO):
        self.cfg, self.out = cfg, out
        self._csv_keys = None

    def header(self):
        if self.cfg.format == "json":
            self.out.write(json.dumps({"kind": "config", **self.cfg.as_dict()}, sort_keys=True) + "\n")
        else:
            self.out.write(f"# config {self.cfg.to_json()}\n")

    def record(self, rec: dict):
        fmt = self.cfg.format
        if fmt == "json":
            self.out.write(json.dumps(rec, default=str) + "\n")
        elif fmt == "csv":
            keys = list(rec)
            w = csv.writer(self.out)
            if keys != self._csv_keys:
                w.writerow(keys)
                self._csv_keys = keys
            w.writerow([json.dumps(v, default=str) if isinstance(v, (list, dict)) else v for v in rec.values()])
        else:
            kind = rec.get("kind", "")
            rest = " ".join(f"{k}={v}" for k, v in rec.items() if k != "kind")
            self.out.write(f"{kind}: {rest}\n")


def _ms(t0: float) -> int:
    return int(round((time.perf_counter() - t0) * 1000))


def _field(q: int):
    pp = prime_power(q)
    if pp is None:
        raise UsageError(f"{q} is not a prime power")
    return make_ctx(*pp)


# -- subcommands ---------------------------------------------------------------------


def cmd_planar(args, cfg: RunConfig, em: Emitter) -> int:
    q = args.p**args.n
    if q > cfg.brute_cap:
        raise UsageError(f"q = {q} exceeds the brute-force cap {cfg.brute_cap}")
    ctx = make_ctx(args.p, args.n)
    t0 = time.perf_counter()
    if args.monomial is not None:
        if not 0 <= args.monomial <= q - 1:
            raise UsageError("monomial exponent must lie in [0, q-1]")
        table, spec = monomial_table(ctx, args.monomial), {"monomial": args.monomial}
        report = is_planar(table, monomial=True)
    else:
        coeffs = [int(c) for c in args.coeffs.split(",")]
        if len(coeffs) > q or any(not 0 <= c < q for c in coeffs):
            raise UsageError("coefficients must be at most q element codes")
        table, spec = PolyCoeffs(ctx, coeffs).evaluate(), {"coeffs": coeffs}
        report = is_planar(table)
    em.record({"kind": "planarity", "p": args.p, "n": args.n, **spec, **report.as_dict(), "elapsed_ms": _ms(t0)})
    return 0 if report.planar else 1


def cmd_witness(args, cfg: RunConfig, em: Emitter) -> int:
    strategy = "heuristic-then-exhaustive" if args.exhaustive else args.strategy
    t0 = time.perf_counter()
    e_cap = args.e_cap
    if e_cap is None and strategy == "budgeted":
        e_cap = cfg.witness_budget
    w = bounds.witness_search(args.b, args.n, args.d, strategy, e_cap=e_cap)
    base = {"b": args.b, "n": args.n, "d": args.d}
    if w is None:
        em.record({"kind": "no-witness", **base, "strategy": strategy, "elapsed_ms": _ms(t0)})
        return 1
    rec = {**w.as_dict(), "kind": "witness", "elapsed_ms": _ms(t0)}
    em.record({k: rec[k] for k in WITNESS_FIELDS})
    return 0


def cmd_scan(args, cfg: RunConfig, em: Emitter) -> int:
    if args.resume:
        scfg, _, _ = load_checkpoint(args.resume)
        path, resume = args.resume, True
    else:
        scfg = ScanConfig(cap=args.cap, bases=args.bases, min_n=args.min_n, max_n=args.max_n, block=args.block)
        path, resume = args.checkpoint, False
    if scfg.cap > cfg.scan_cap:
        raise UsageError(f"scan cap {scfg.cap} exceeds the configured limit {cfg.scan_cap}")
    t0 = time.perf_counter()
    report = conjecture_scan(scfg, path, resume=resume, threads=cfg.threads, max_blocks=args.max_blocks)
    for c in report.cells:
        em.record({
            "kind": "cell", "b": c.b, "n": c.n, "total": c.total, "searched": c.searched,
            **c.labels, "failures": len(c.failures),
        })
    for b, n, d, lab in report.failures:
        em.record({"kind": "failure", "b": b, "n": n, "d": d, "label": lab})
    em.record({
        "kind": "summary", "complete": report.complete, "cells": len(report.cells),
        "failures": len(report.failures), "unlabeled": len(report.unlabeled_failures),
        "elapsed_ms": _ms(t0),
    })
    return 1 if report.failures else 0


def _verify_record(target: str, params: dict, passed: bool, checked: int, bad, t0: float, **extra) -> dict:
    bad = list(bad)
    return {
        "kind": "verify", "target": target, **params, "passed": passed, "checked": checked,
        "deviations": len(bad), "examples": [_plain(x) for x in bad[:20]], **extra,
        "elapsed_ms": _ms(t0),
    }


def _plain(x):
    if isinstance(x, padic.Deviation):
        return {"where": list(x.where), "expected": x.expected, "got": x.got}
    if isinstance(x, tuple):
        return list(x)
    return x


def _padic_ctx(q: int, cfg: RunConfig):
    if q > cfg.padic_cap:
        raise UsageError(f"q = {q} exceeds the p-adic cap {cfg.padic_cap}")
    return _field(q)


def cmd_verify(args, cfg: RunConfig, em: Emitter) -> int:
    target = args.target
    t0 = time.perf_counter()
    if target == "stickelberger":
        r = padic.verify_stickelberger(_padic_ctx(args.q, cfg))
        rec = _verify_record(target, {"q": args.q}, r.passed, r.checked, r.deviations, t0)
    elif target == "base-conversion":
        r = padic.verify_base_conversion(_padic_ctx(args.q, cfg))
        rec = _verify_record(target, {"q": args.q}, r.passed, r.checked, r.deviations, t0)
    elif target == "reduction":
        ctx = _padic_ctx(args.q, cfg)
        rng = np.random.default_rng(cfg.seed)
        checked, bad = 0, []
        for k in range(args.count):
            r = padic.verify_reduction(FuncTable.random(ctx, rng))
            checked += r.checked
            bad += [(k, d) for d in r.deviations]
        rec = _verify_record(target, {"q": args.q, "count": args.count, "seed": cfg.seed}, not bad, checked, bad, t0)
    elif target == "theorem1":
        ctx = _field(args.q)
        if args.q > cfg.brute_cap:
            raise UsageError(f"q = {args.q} exceeds the brute-force cap {cfg.brute_cap}")
        t = monomial_table(ctx, args.monomial)
        planar = is_planar(t, monomial=True).planar
        r = bounds.verify_theorem1(t)
        rec = _verify_record(
            target, {"q": args.q, "monomial": args.monomial}, r.passed, ctx.q - 1, r.violations, t0,
            planar=planar, max_margin=r.max_margin, bound=str(r.bound),
        )
    elif target == "lemma3":
        r = bounds.verify_pair_sum_lemma(args.p, args.n)
        rec = _verify_record(target, {"p": args.p, "n": args.n}, r.passed, r.checked, r.bad, t0,
                             counts={str(k): v for k, v in r.counts.items()})
    elif target == "lemma6":
        r = bounds.technical_lemma_check(args.p, args.smax)
        bad = [{"us": list(u), "claim": "range"} for u in r.range_failures]
        bad += [{"us": list(u), "claim": "gamma"} for u in r.claim_failures]
        rec = _verify_record(target, {"p": args.p, "smax": args.smax}, r.passed, r.checked, bad, t0)
    elif target == "power2":
        cross = args.p**args.n <= cfg.brute_cap
        r = bounds.verify_power2(args.p, args.n, args.smax, cross_check=cross)
        rec = _verify_record(target, {"p": args.p, "n": args.n, "smax": args.smax}, r.passed, r.checked, r.bad, t0,
                             cross_checked=cross, counts=r.counts)
    else:  # argparse restricts choices
        raise UsageError(f"unknown target {target}")
    em.record(rec)
    return 0 if rec["passed"] else 1


# -- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="planarlab", description="Planar functions and digit-sum degree bounds.")
    ap.add_argument("--format", choices=FORMATS, default="json")
    ap.add_argument("--threads", type=int, default=None, help="worker processes (default $PLANARLAB_THREADS or 1)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--brute-cap", type=int, default=bounds.BRUTE_FORCE_CAP)
    ap.add_argument("--padic-cap", type=int, default=padic.MATRIX_Q_CAP)
    ap.add_argument("--scan-cap", type=int, default=10**6)
    ap.add_argument("--witness-budget", type=int, default=bounds.DEFAULT_BUDGET)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("planar", help="brute-force planarity of a monomial or polynomial")
    p.add_argument("p", type=int)
    p.add_argument("n", type=int)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--monomial", type=int)
    g.add_argument("--coeffs", help="comma-separated element codes a_0,a_1,...")

    w = sub.add_parser("witness", help="search e violating the digit-sum bound for X^d")
    w.add_argument("b", type=int)
    w.add_argument("n", type=int)
    w.add_argument("d", type=int)
    w.add_argument("--exhaustive", action="store_true", help="search every e up to q-1")
    w.add_argument("--strategy", choices=bounds.STRATEGIES, default="budgeted")
    w.add_argument("--e-cap", type=int, default=None)

    s = sub.add_parser("scan", help="exhaustive conjecture scan over (b, n) cells")
    s.add_argument("--cap", type=int, default=10**4)
    s.add_argument("--bases", default="prime", help="prime | prime-power | all | comma list")
    s.add_argument("--min-n", type=int, default=2)
    s.add_argument("--max-n", type=int, default=None)
    s.add_argument("--block", type=int, default=2**14)
    s.add_argument("--checkpoint", default=None)
    s.add_argument("--resume", default=None, metavar="CHECKPOINT")
    s.add_argument("--max-blocks", type=int, default=None, help="stop after this many blocks")

    v = sub.add_parser("verify", help="run a verifier")
    v.add_argument("target", choices=("stickelberger", "base-conversion", "reduction", "theorem1",
                                      "lemma3", "lemma6", "power2"))
    v.add_argument("--q", type=int, default=9)
    v.add_argument("--p", type=int, default=7)
    v.add_argument("--n", type=int, default=4)
    v.add_argument("--smax", type=int, default=None)
    v.add_argument("--monomial", type=int, default=2)
    v.add_argument("--count", type=int, default=20)
    return ap


COMMANDS = {"planar": cmd_planar, "witness": cmd_witness, "scan": cmd_scan, "verify": cmd_verify}


def main(argv: Optional[list[str]] = None, out: TextIO = None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        threads = args.threads if args.threads is not None else default_threads()
        if args.command == "verify" and args.target == "lemma6" and args.smax is None:
            args.smax = 3
        params = {k: v for k, v in vars(args).items()
                  if k not in ("format", "threads", "seed", "brute_cap", "padic_cap", "scan_cap", "witness_budget", "command")}
        cfg = RunConfig(
            command=args.command, params=params, brute_cap=args.brute_cap, padic_cap=args.padic_cap,
            scan_cap=args.scan_cap, witness_budget=args.witness_budget, threads=threads, format=args.format,
            checkpoint=getattr(args, "checkpoint", None) or getattr(args, "resume", None), seed=args.seed,
        )
        em = Emitter(cfg, out)
        em.header()
        return COMMANDS[args.command](args, cfg, em)
    except (UsageError, ValueError, CheckpointMismatch, FileNotFoundError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
