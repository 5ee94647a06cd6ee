"""Resumable conjecture scan; writes the full report as json."""
import argparse
import json
import time
from pathlib import Path

from planarlab.scan import ScanConfig, conjecture_scan, load_checkpoint


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cap", type=int, default=10**6)
    ap.add_argument("--bases", default="prime")
    ap.add_argument("--min-n", type=int, default=2)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--checkpoint", type=Path, default=None)
    ap.add_argument("--resume", action="store_true", help="continue from --checkpoint")
    ap.add_argument("--out", type=Path, default=None, help="write the report here")
    args = ap.parse_args()

    if args.resume:
        cfg, _, _ = load_checkpoint(args.checkpoint)
    else:
        cfg = ScanConfig(cap=args.cap, bases=args.bases, min_n=args.min_n)
    t0 = time.perf_counter()
    rep = conjecture_scan(cfg, args.checkpoint, resume=args.resume, threads=args.threads)
    summary = {
        "cap": cfg.cap, "bases": cfg.bases, "cells": len(rep.cells), "complete": rep.complete,
        "failures": [list(f) for f in rep.failures], "unlabeled": len(rep.unlabeled_failures),
        "seconds": round(time.perf_counter() - t0, 1),
    }
    print(json.dumps(summary))
    if args.out:
        args.out.write_text(json.dumps(rep.as_dict(), indent=1))


if __name__ == "__main__":
    main()
