"""Digit-sum degree bound: witnesses, exceptional families, proof constructions
and the planar-monomial classification pipeline.

A witness for X^d over F_{b^n} is an exponent e with
s_b(e * d) - s_b(e) > n(b-1)/2, compared exactly as 2*lhs > n(b-1).
"""
from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

import numpy as np

from .digitkit import d_form, digit_sum, digits_of, pair_pattern, pair_sums, star
from .ffield import is_prime, make_ctx
from .interp import FuncTable, compose_adeg_profile, digit_sums
from .planar import is_planar_monomial

VECTOR_Q_CAP = 2**31
DIGIT_TABLE_CAP = 2**22
DEFAULT_BUDGET = 2**16
BRUTE_FORCE_CAP = 7**4
_CHUNK_CELLS = 1 << 20

STRATEGIES = ("heuristic-then-exhaustive", "heuristic", "budgeted", "exhaustive")


# -- witnesses ----------------------------------------------------------------


def witness_lhs(b: int, n: int, d: int, e: int) -> int:
    q = b**n
    return digit_sum(star(e, d, q), b) - digit_sum(e, b)


def violates(b: int, n: int, lhs: int) -> bool:
    return 2 * lhs > n * (b - 1)


@dataclass(frozen=True)
class Witness:
    b: int
    n: int
    d: int
    e: int
    lhs: int
    strategy: str = "given"

    def __post_init__(self):
        q = self.q
        if not (1 <= self.d <= q - 1 and 1 <= self.e <= q - 1):
            raise ValueError("d and e must lie in [1, q-1]")
        if witness_lhs(self.b, self.n, self.d, self.e) != self.lhs:
            raise ValueError("lhs does not match s(e*d) - s(e)")
        if not violates(self.b, self.n, self.lhs):
            raise ValueError("lhs does not exceed the bound")

    @property
    def q(self) -> int:
        return self.b**self.n

    @property
    def bound(self) -> Fraction:
        return Fraction(self.n * (self.b - 1), 2)

    @property
    def product(self) -> int:
        return star(self.e, self.d, self.q)

    @classmethod
    def make(cls, b: int, n: int, d: int, e: int, strategy: str = "given") -> Optional["Witness"]:
        lhs = witness_lhs(b, n, d, e)
        return cls(b, n, d, e, lhs, strategy) if violates(b, n, lhs) else None

    def as_dict(self) -> dict:
        out = asdict(self)
        out["bound"] = str(self.bound)
        return out


def _ds_func(b: int, n: int):
    q = b**n
    if q <= DIGIT_TABLE_CAP:
        table = digit_sums(b, n)
        return lambda x: table[x]

    def ds(x):
        x = np.array(x, dtype=np.int64, copy=True)
        s = np.zeros_like(x)
        for _ in range(n):
            s += x % b
            x //= b
        return s

    return ds


def lhs_vec(b: int, n: int, d, e, ds=None) -> np.ndarray:
    """Vectorized s_b(e * d) - s_b(e); d and e broadcast, both in [1, q-1]."""
    q = b**n
    if q > VECTOR_Q_CAP:
        raise ValueError("vectorized search needs q <= 2^31")
    ds = ds or _ds_func(b, n)
    d = np.asarray(d, dtype=np.int64)
    e = np.asarray(e, dtype=np.int64)
    prod = (e * d) % (q - 1)
    prod[prod == 0] = q - 1
    return ds(prod) - ds(e)


def _reduce_exp(e: int, q: int) -> int:
    r = e % (q - 1)
    return q - 1 if r == 0 else r


def proof_h_values(b: int, m: int) -> list[int]:
    """The h parameters used by the case-3 constructions, over all r, j, z."""
    half = (b - 1) // 2
    out = []
    for r in range(m):
        out.append(b ** (r + 1) - 1)
        for j in range(1, m - 1 - r):
            out.append(b**r - 1 + (half - 1) * b**r + b ** (r + j + 1))
        out += [b ** (r + 1) - 1 - half, b ** (r + 1) - (b - 1), 1]
        if r > 0:
            out.append(half * b**r - (b - 1))
        for z in range(1, m - r):
            out.append((b ** (r + 1 + z) - 1) + (b ** (r + 1) - 1) - half)
    return [h for h in dict.fromkeys(out) if h >= 1]


def structured_candidates(b: int, n: int) -> list[tuple[int, str]]:
    """d-independent candidate exponents in search order, tagged by family."""
    q = b**n
    cands = [(1, "e=1")]
    if n % 2 == 0:
        m = n // 2
        for h in proof_h_values(b, m):
            cands.append((_reduce_exp(h * b**m + h + 1, q), "shifted-h"))
            cands.append((_reduce_exp((b - 1 + h) * b**m + h + 1, q), "shifted-h-plus"))
    if n >= 2:
        cands.append((sum(b**i for i in range(n - 1)), "digit-rotation"))
    seen, out = set(), []
    for e, tag in cands:
        if e not in seen:
            seen.add(e)
            out.append((e, tag))
    return out


def _candidates_for(b: int, n: int, d: int) -> Iterator[tuple[int, str]]:
    for e, tag in structured_candidates(b, n):
        yield e, tag
        if e == 1 and n == 1 and (b - 1) // d >= 1:
            yield (b - 1) // d, "prime-field"


def witness_search(
    b: int, n: int, d: int, strategy: str = "heuristic-then-exhaustive", e_cap: Optional[int] = None
) -> Optional[Witness]:
    """Look for e with s_b(e*d) - s_b(e) > n(b-1)/2.

    Strategies: ``heuristic`` tries e = 1 and the proof families only;
    ``budgeted`` continues with ascending e up to ``e_cap`` (default 2^16);
    ``heuristic-then-exhaustive`` continues up to q - 1, so ``None`` proves
    that no witness exists; ``exhaustive`` scans ascending e only.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if b < 2 or n < 1:
        raise ValueError("need b >= 2 and n >= 1")
    q = b**n
    if not 1 <= d <= q - 1:
        raise ValueError(f"d must lie in [1, {q - 1}]")
    if strategy != "exhaustive":
        for e, tag in _candidates_for(b, n, d):
            w = Witness.make(b, n, d, e, tag)
            if w is not None:
                return w
        if strategy == "heuristic":
            return None
    if e_cap is None:
        e_cap = DEFAULT_BUDGET if strategy == "budgeted" else q - 1
    e_cap = min(e_cap, q - 1)
    e = _first_ascending(b, n, d, e_cap)
    return None if e is None else Witness.make(b, n, d, e, "ascending")


def _first_ascending(b: int, n: int, d: int, e_cap: int) -> Optional[int]:
    q = b**n
    if q > VECTOR_Q_CAP:
        for e in range(1, e_cap + 1):
            if violates(b, n, witness_lhs(b, n, d, e)):
                return e
        return None
    ds = _ds_func(b, n)
    step = _CHUNK_CELLS
    for lo in range(1, e_cap + 1, step):
        es = np.arange(lo, min(e_cap, lo + step - 1) + 1, dtype=np.int64)
        hit = np.flatnonzero(2 * lhs_vec(b, n, d, es, ds) > n * (b - 1))
        if hit.size:
            return int(es[hit[0]])
    return None


def all_witnesses(b: int, n: int, d: int) -> np.ndarray:
    """Every e in [1, q-1] that witnesses X^d."""
    q = b**n
    es = np.arange(1, q, dtype=np.int64)
    return es[2 * lhs_vec(b, n, d, es) > n * (b - 1)]


# -- degree bound for arbitrary F ---------------------------------------------------


@dataclass(frozen=True)
class Theorem1Report:
    passed: bool
    max_margin: int
    bound: Fraction
    violations: tuple[int, ...] = ()


def verify_theorem1(t: FuncTable) -> Theorem1Report:
    """adeg(F^e) - s_p(e) <= n(p-1)/2 for every e in [1, q-1].

    Meaningful for planar F; for other F the report is informational.
    """
    ctx = t.ctx
    prof = compose_adeg_profile(t)
    ds = digit_sums(ctx.p, ctx.n)
    es = np.arange(1, ctx.q)
    margin = prof[1:] - ds[1:]
    bad = es[2 * margin > ctx.n * (ctx.p - 1)]
    return Theorem1Report(
        passed=bad.size == 0,
        max_margin=int(margin.max()),
        bound=Fraction(ctx.n * (ctx.p - 1), 2),
        violations=tuple(int(e) for e in bad),
    )


# -- exceptional families --------------------------------------------------------

LABEL_ORDER = ("CongruenceOne", "CongruenceHalf", "DigitSumTwo", "FiveFamily", "Base9Family")


@dataclass(frozen=True)
class ExceptionLabel:
    kind: str
    i: Optional[int] = None
    j: Optional[int] = None

    def __post_init__(self):
        if self.kind not in LABEL_ORDER:
            raise ValueError(f"unknown exception kind {self.kind!r}")

    def __str__(self):
        if self.kind == "FiveFamily":
            return f"FiveFamily(i={self.i},j={self.j})"
        if self.kind == "Base9Family":
            return f"Base9Family(i={self.i})"
        return self.kind


def five_family(n: int) -> dict[int, tuple[int, int]]:
    """d = 5^j (5^i + 1)/3 mod q-1 for odd i; maps d to its least (i, j)."""
    q = 5**n
    out: dict[int, tuple[int, int]] = {}
    i = 1
    while (5**i + 1) // 3 <= q - 1:
        base = (5**i + 1) // 3
        for j in range(n):
            out.setdefault(_reduce_exp(base * 5**j, q), (i, j))
        i += 2
    return out


def base9_family(n: int) -> dict[int, int]:
    """d = 3 * 9^i mod q-1; maps d to its least i."""
    q = 9**n
    out: dict[int, int] = {}
    for i in range(n):
        out.setdefault(_reduce_exp(3 * 9**i, q), i)
    return out


def exceptions_for(b: int, n: int, d: int) -> Optional[ExceptionLabel]:
    q = b**n
    if not 1 <= d <= q - 1:
        raise ValueError(f"d must lie in [1, {q - 1}]")
    if d % (b - 1) == 1 % (b - 1):
        return ExceptionLabel("CongruenceOne")
    if d % (b - 1) == ((b + 1) // 2) % (b - 1):
        return ExceptionLabel("CongruenceHalf")
    if digit_sum(d, b) == 2:
        return ExceptionLabel("DigitSumTwo")
    if b == 5 and n % 2 == 1:
        hit = five_family(n).get(d)
        if hit:
            return ExceptionLabel("FiveFamily", *hit)
    if b == 9:
        hit = base9_family(n).get(d)
        if hit is not None:
            return ExceptionLabel("Base9Family", hit)
    return None


def exception_codes(b: int, n: int, d: np.ndarray, ds=None) -> np.ndarray:
    """Vectorized exceptions_for: 0 for none, else 1 + index in LABEL_ORDER."""
    d = np.asarray(d, dtype=np.int64)
    ds = ds or _ds_func(b, n)
    out = np.zeros(d.shape, dtype=np.int8)
    rules = [
        d % (b - 1) == 1 % (b - 1),
        d % (b - 1) == ((b + 1) // 2) % (b - 1),
        ds(d) == 2,
        np.isin(d, list(five_family(n))) if (b == 5 and n % 2) else np.zeros(d.shape, bool),
        np.isin(d, list(base9_family(n))) if b == 9 else np.zeros(d.shape, bool),
    ]
    for code, mask in reversed(list(enumerate(rules, start=1))):
        out[mask] = code
    return out


# -- explicit constructions from the proofs -------------------------------------


def prime_field_witness(p: int, d: int) -> Witness:
    """e = floor((p-1)/d) for 3 <= d <= (p-1)/2 over F_p."""
    if not 3 <= d <= (p - 1) // 2:
        raise ValueError("need 3 <= d <= (p-1)/2")
    w = Witness.make(p, 1, d, (p - 1) // d, "prime-field")
    if w is None:
        raise ArithmeticError(f"floor construction fails for p={p}, d={d}")
    return w


def lemma8_witness(p: int, n: int, d: int) -> Witness:
    """Witness for d with d = r (mod p-1), 2 <= r <= p-1 and every digit >= r.

    Uses e = 1 when s_p(d) = k(p-1) + r with k >= n/2, else e = sum_{i<n-1} p^i.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    q = p**n
    if not 1 <= d <= q - 1:
        raise ValueError(f"d must lie in [1, {q - 1}]")
    r = d % (p - 1) or (p - 1)
    if r < 2:
        raise ValueError("hypothesis needs d = r (mod p-1) with r >= 2")
    if min(digits_of(d, p, n)) < r:
        raise ValueError(f"hypothesis needs every digit >= r = {r}")
    k = (digit_sum(d, p) - r) // (p - 1)
    if 2 * k >= n:
        e, tag = 1, "e=1"
    else:
        e, tag = sum(p**i for i in range(n - 1)), "digit-rotation"
    w = Witness.make(p, n, d, e, tag)
    if w is None:
        raise ArithmeticError("construction did not produce a witness")
    return w


_EDGE = lambda p: {0, 1, p - 2, p - 1}  # noqa: E731


@dataclass(frozen=True)
class LemmaSplit:
    """v + delta p^s = (gamma_1..gamma_s) for the technical lemma."""

    v: int
    delta: int
    gammas: tuple[int, ...]


def technical_split(p: int, us: Sequence[int]) -> LemmaSplit:
    """us = (u_0, ..., u_s); v = [2u_1 - u_0, ..., 2u_s - u_{s-1}]_p."""
    s = len(us) - 1
    v = sum((2 * us[i] - us[i - 1]) * p ** (i - 1) for i in range(1, s + 1))
    for delta in (-1, 0, 1):
        w = v + delta * p**s
        if 0 <= w <= p**s - 1:
            return LemmaSplit(v, delta, digits_of(w, p, s).digits)
    raise ArithmeticError("no delta brings v into range")


def power2_case3_witness(
    p: int, r: int, s: int, t: int, us: Sequence[int], variant: Optional[str] = None
) -> Witness:
    """Constructed witness for d = D(t, u_1..u_s) with n = 2(r + s + 2).

    Variants: ``t`` (t not in {1, p-1}), ``u`` (some u_j off the edge digits
    {0, 1, p-2, p-1}) and ``remaining`` (everything else, needs p > 5).
    """
    us = tuple(us)
    if len(us) != s:
        raise ValueError("len(us) must equal s")
    if p <= 3 or not is_prime(p):
        raise ValueError("need a prime p > 3")
    m = r + s + 2
    n, q = 2 * m, p ** (2 * m)
    d = d_form(t, us, r, p)
    edge = _EDGE(p)
    off = [j for j, u in enumerate(us, start=1) if u not in edge]
    auto = "t" if t not in (1, p - 1) else "u" if off else "remaining"
    variant = variant or auto
    half = (p - 1) // 2

    if variant == "t":
        if t in (1, p - 1):
            raise ValueError("variant t needs t not in {1, p-1}")
        h = p ** (r + 1) - 1
        e = h * p**m + h + 1
    elif variant == "u":
        if not off:
            raise ValueError("variant u needs some u_j outside {0, 1, p-2, p-1}")
        j = off[0]
        h = p**r - 1 + (half - 1) * p**r + p ** (r + j + 1)
        e = h * p**m + h + 1
    elif variant == "remaining":
        if p <= 5:
            raise ValueError("the remaining-case construction needs p > 5")
        if t not in (1, p - 1) or off:
            raise ValueError("remaining case needs t in {1, p-1} and all u_j on the edge")
        h = _remaining_h(p, r, s, t, us)
        e = (p - 1 + h) * p**m + h + 1
    else:
        raise ValueError(f"unknown variant {variant!r}")
    w = Witness.make(p, n, d, _reduce_exp(e, q), f"power2-{variant}")
    if w is None:
        raise ArithmeticError(f"construction {variant} failed for p={p}, r={r}, t={t}, us={us}")
    return w


def _remaining_h(p: int, r: int, s: int, t: int, us: tuple[int, ...]) -> int:
    half = (p - 1) // 2
    if s == 0:
        return p ** (r + 1) - 1 - half if t == 1 else p ** (r + 1) - (p - 1)
    u0 = 1 if t == 1 else p - 2
    split = technical_split(p, (u0,) + us)
    us_last = us[-1]
    if us_last not in (0, 1):
        return 1 if r == 0 else half * p**r - (p - 1)
    if (us_last, split.delta) != (1, 1):
        z = s + 1
    else:
        zs = [j for j, g in enumerate(split.gammas, start=1) if g not in _EDGE(p)]
        if not zs:
            raise ArithmeticError("no gamma_j off the edge digits")
        z = zs[0]
    return (p ** (r + 1 + z) - 1) + (p ** (r + 1) - 1) - half


def case3_parameters(p: int, n: int, s_max: Optional[int] = None) -> Iterator[tuple[int, int, int, tuple]]:
    """All admissible (r, s, t, us) with r + s + 2 = n/2."""
    if n % 2 or n < 4:
        raise ValueError("need even n >= 4")
    m = n // 2
    top = m - 2 if s_max is None else min(s_max, m - 2)
    for s in range(top + 1):
        r = m - 2 - s
        for t in range(1, p):
            for us in itertools.product(range(p), repeat=s):
                yield r, s, t, us


@dataclass(frozen=True)
class TechnicalReport:
    p: int
    s_max: int
    checked: int
    range_failures: tuple = ()
    claim_failures: tuple = ()

    @property
    def passed(self) -> bool:
        return not self.range_failures and not self.claim_failures

    def __bool__(self):
        return self.passed


def technical_lemma_check(p: int, s_max: int) -> TechnicalReport:
    """Exhaustive check of the delta/gamma lemma over edge-digit tuples.

    The final gamma claim is evaluated for every p so that p = 5 failures are listed.
    """
    if p <= 3:
        raise ValueError("need p > 3")
    edge = sorted(_EDGE(p))
    checked, rng_bad, claim_bad = 0, [], []
    for s in range(1, s_max + 1):
        for us in itertools.product(edge, repeat=s + 1):
            split = technical_split(p, us)
            if split.v == p**s - 1:
                continue
            checked += 1
            if not 0 < us[-1] + split.delta + 1 <= p - 1:
                rng_bad.append(us)
            if us[-1] == 1 and split.delta == 1:
                if all(g in _EDGE(p) for g in split.gammas):
                    claim_bad.append(us)
    return TechnicalReport(p, s_max, checked, tuple(rng_bad), tuple(claim_bad))


# -- classification ----------------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    p: int
    n: int
    planar: frozenset
    witnessed: int
    survivors: tuple[int, ...] = field(default=())
    unexplained: tuple[int, ...] = field(default=())
    """non-planar survivors for which no witness exists at all"""


def classify_details(p: int, n: int, cap: int = BRUTE_FORCE_CAP, budget: int = DEFAULT_BUDGET) -> Classification:
    q = p**n
    if q > cap:
        raise ValueError(f"q = {q} exceeds the brute-force cap {cap}")
    ctx = make_ctx(p, n)
    survivors = [
        d for d in range(1, q) if witness_search(p, n, d, "budgeted", e_cap=budget) is None
    ]
    planar = [d for d in survivors if is_planar_monomial(ctx, d).planar]
    unexplained = tuple(
        d for d in survivors
        if d not in planar and witness_search(p, n, d, "heuristic-then-exhaustive") is None
    )
    return Classification(p, n, frozenset(planar), q - 1 - len(survivors), tuple(survivors), unexplained)


def classify_planar_monomials(p: int, n: int, cap: int = BRUTE_FORCE_CAP) -> frozenset:
    """Exponents d in [1, q-1] with X^d planar over F_{p^n}."""
    return classify_details(p, n, cap).planar


def expected_planar_set(p: int, n: int) -> frozenset:
    """{2 p^i mod q-1}."""
    q = p**n
    return frozenset(_reduce_exp(2 * p**i, q) for i in range(n))


@dataclass(frozen=True)
class SweepReport:
    """Outcome of an exhaustive sweep; ``bad`` holds counterexample records."""

    passed: bool
    checked: int
    bad: tuple = ()
    counts: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed


def verify_pair_sum_lemma(p: int, n: int) -> SweepReport:
    """Every d = 2p^(m-1) (mod p^m - 1) has pair sums in one of the three patterns."""
    if n % 2 or n < 2:
        raise ValueError("need even n")
    m = n // 2
    q, mod = p**n, p**m - 1
    target = 2 * p ** (m - 1) % mod
    counts = {1: 0, 2: 0, 3: 0}
    bad = []
    checked = 0
    for d in range(target or mod, q, mod):
        checked += 1
        hit = pair_pattern(pair_sums(digits_of(d, p, n)), p)
        if hit is None:
            bad.append(d)
        else:
            counts[hit[0]] += 1
    return SweepReport(not bad, checked, tuple(bad), counts)


def verify_power2(
    p: int, n: int, s_max: Optional[int] = None, cross_check: bool = False
) -> SweepReport:
    """power2_case3_witness succeeds for every admissible (r, s, t, us).

    With ``cross_check`` each constructed e is also confirmed to be among the
    witnesses found by exhaustive search.
    """
    counts: dict = {}
    bad, checked = [], 0
    for r, s, t, us in case3_parameters(p, n, s_max):
        checked += 1
        try:
            w = power2_case3_witness(p, r, s, t, us)
        except (ValueError, ArithmeticError) as exc:
            bad.append({"r": r, "s": s, "t": t, "us": list(us), "error": str(exc)})
            continue
        counts[w.strategy] = counts.get(w.strategy, 0) + 1
        if cross_check and w.e not in set(all_witnesses(p, n, w.d).tolist()):
            bad.append({"r": r, "s": s, "t": t, "us": list(us), "error": "not an exhaustive witness"})
    return SweepReport(not bad, checked, tuple(bad), counts)
