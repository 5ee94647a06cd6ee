"""Explicit witnesses from the proofs: prime fields, the power-of-two case and the technical lemma."""
import json

from planarlab.bounds import prime_field_witness, technical_lemma_check, verify_pair_sum_lemma, verify_power2
from planarlab.ffield import is_prime


def main():
    pairs = [(p, d) for p in range(13, 200) if is_prime(p) for d in range(3, (p - 1) // 2 + 1)]
    bad = []
    for p, d in pairs:
        try:
            prime_field_witness(p, d)
        except ArithmeticError:
            bad.append([p, d])
    print(json.dumps({"check": "prime-field", "pairs": len(pairs), "failures": bad}))

    for p, n in [(3, 4), (5, 4), (7, 4), (11, 4), (7, 8)]:
        r = verify_pair_sum_lemma(p, n)
        print(json.dumps({"check": "pair-sums", "p": p, "n": n, "passed": r.passed, "patterns": r.counts}))

    for p, n, s_max, cross in [(7, 4, None, True), (11, 4, None, False), (7, 8, 2, False), (5, 4, None, False)]:
        r = verify_power2(p, n, s_max, cross_check=cross)
        print(json.dumps({"check": "power2", "p": p, "n": n, "smax": s_max, "passed": r.passed,
                          "checked": r.checked, "by_variant": r.counts, "bad": list(r.bad)[:5]}))

    for p in (5, 7, 11, 13):
        r = technical_lemma_check(p, 4)
        print(json.dumps({"check": "technical-lemma", "p": p, "passed": r.passed, "checked": r.checked,
                          "gamma_failures": [list(u) for u in r.claim_failures[:10]],
                          "gamma_failure_count": len(r.claim_failures)}))


if __name__ == "__main__":
    main()
