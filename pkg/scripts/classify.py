"""Planar monomial classification and the degree bound on each planar exponent."""
import argparse
import json
import time

from planarlab.bounds import all_witnesses, classify_details, expected_planar_set

FIELDS = [(3, 2), (5, 1), (7, 1), (11, 1), (13, 1), (5, 2), (7, 2), (3, 4), (7, 4)]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--budget", type=int, default=2**16, help="witness budget before brute force")
    args = ap.parse_args()
    for p, n in FIELDS:
        t0 = time.perf_counter()
        det = classify_details(p, n, budget=args.budget)
        expected = expected_planar_set(p, n)
        violations = {d: int(all_witnesses(p, n, d).size) for d in det.planar}
        print(json.dumps({
            "p": p, "n": n, "planar": sorted(det.planar),
            "equals_2p^i": det.planar == expected,
            "extra": sorted(det.planar - expected),
            "witnessed": det.witnessed, "survivors": len(det.survivors),
            "survivors_without_any_witness": list(det.unexplained),
            "bound_violations": sum(violations.values()),
            "seconds": round(time.perf_counter() - t0, 2),
        }))


if __name__ == "__main__":
    main()
