"""Stickelberger valuations, the reduction of A^F mod p and the bent/valuation test."""
import argparse
import json
import time

import numpy as np

from planarlab.ffield import make_ctx, prime_power
from planarlab.interp import FuncTable
from planarlab.padic import planar_via_valuation, verify_base_conversion, verify_reduction, verify_stickelberger
from planarlab.planar import is_planar, monomial_table


def emit(**rec):
    print(json.dumps(rec))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=20240611)
    ap.add_argument("--random", type=int, default=100, help="random functions per field for the bent test")
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    for q in (3, 5, 7, 9, 11, 13, 25, 27):
        ctx = make_ctx(*prime_power(q))
        t0 = time.perf_counter()
        r = verify_stickelberger(ctx)
        emit(check="stickelberger", q=q, passed=r.passed, checked=r.checked, seconds=round(time.perf_counter() - t0, 2))
        if q <= 27:
            r = verify_base_conversion(ctx)
            emit(check="base-conversion", q=q, passed=r.passed, checked=r.checked)

    for q in (9, 25):
        ctx = make_ctx(*prime_power(q))
        devs = sum(len(verify_reduction(FuncTable.random(ctx, rng)).deviations) for _ in range(20))
        emit(check="reduction", q=q, functions=20, deviations=devs)

    for q in (9, 25, 27):
        ctx = make_ctx(*prime_power(q))
        tables = [monomial_table(ctx, d) for d in range(ctx.q)]
        tables += [FuncTable.random(ctx, rng) for _ in range(args.random)]
        agree = sum(planar_via_valuation(t) == is_planar(t).planar for t in tables)
        emit(check="bent-oracle", q=q, functions=len(tables), agree=agree)


if __name__ == "__main__":
    main()
