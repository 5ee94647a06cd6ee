"""Base-b digit calculus: digit vectors, digit sums, the star monoid on
exponents, the D(t, u_1..u_s) exponent family and Coulter-Lazebnik triage.

Everything here is plain integer arithmetic; composite bases are allowed.
Digits are stored least-significant first.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

__all__ = [
    "DigitVec",
    "StarMonoid",
    "CaseLabel",
    "digits_of",
    "digit_sum",
    "star",
    "d_form",
    "cyclic_shift",
    "pair_sums",
    "pair_pattern",
    "cl_triage",
]


@dataclass(frozen=True)
class DigitVec:
    base: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if self.base < 2:
            raise ValueError(f"base must be >= 2, got {self.base}")
        if not self.digits:
            raise ValueError("a digit vector needs at least one digit")
        for x in self.digits:
            if not 0 <= x < self.base:
                raise ValueError(f"digit {x} outside [0, {self.base - 1}]")

    @property
    def length(self) -> int:
        return len(self.digits)

    @property
    def value(self) -> int:
        v = 0
        for x in reversed(self.digits):
            v = v * self.base + x
        return v

    @property
    def digit_sum(self) -> int:
        return sum(self.digits)

    @classmethod
    def from_value(cls, x: int, base: int, length: int) -> "DigitVec":
        return digits_of(x, base, length)

    @classmethod
    def from_bracket(cls, digits: Iterable[int], base: int) -> "DigitVec":
        """Normalize an unnormalized expansion [d_0, d_1, ...]_b.

        Digits may be negative or exceed base-1. The value is reduced
        modulo base^n - 1; a nonzero input whose residue is 0 becomes the
        all-(base-1) vector, matching the q-1 convention of the star product.
        """
        digits = list(digits)
        n = len(digits)
        raw = sum(x * base**i for i, x in enumerate(digits))
        modulus = base**n - 1
        r = raw % modulus
        if r == 0 and raw != 0:
            return cls(base, (base - 1,) * n)
        return digits_of(r, base, n)

    def complement(self) -> "DigitVec":
        return DigitVec(self.base, tuple(self.base - 1 - x for x in self.digits))

    def __getitem__(self, i):
        return self.digits[i]

    def __len__(self):
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)


def digits_of(x: int, base: int, length: int) -> DigitVec:
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")
    if length < 1:
        raise ValueError("length must be positive")
    if not 0 <= x < base**length:
        raise ValueError(f"{x} does not fit in {length} base-{base} digits")
    out = []
    for _ in range(length):
        x, r = divmod(x, base)
        out.append(r)
    return DigitVec(base, tuple(out))


def digit_sum(x: int, base: int) -> int:
    if x < 0:
        raise ValueError("digit_sum needs x >= 0")
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")
    s = 0
    while x:
        x, r = divmod(x, base)
        s += r
    return s


def star(e: int, d: int, q: int) -> int:
    """Exponent of X^e composed with X^d, reduced into {0, ..., q-1}.

    0 is absorbing; a nonzero product that vanishes mod q-1 maps to q-1.
    """
    if q < 3:
        raise ValueError("star needs q >= 3")
    if not (0 <= e < q and 0 <= d < q):
        raise ValueError(f"star operands must lie in [0, {q - 1}]")
    if e == 0 or d == 0:
        return 0
    r = (e * d) % (q - 1)
    return q - 1 if r == 0 else r


@dataclass(frozen=True)
class StarMonoid:
    """({0, ..., q-1}, star) -- commutative, identity 1, absorbing 0."""

    q: int

    def __post_init__(self):
        if self.q < 3:
            raise ValueError("q - 1 must be at least 2")

    def __call__(self, e: int, d: int) -> int:
        return star(e, d, self.q)

    @property
    def elements(self) -> range:
        return range(self.q)

    def power(self, d: int, k: int) -> int:
        acc = 1
        for _ in range(k):
            acc = star(acc, d, self.q)
        return acc


def d_form(t: int, us: Sequence[int], r: int, p: int) -> int:
    """The exponent with digits (0^r, t, u.., 1, 0^r, p-t, ubar.., 0) in base p."""
    if p < 2:
        raise ValueError("base must be >= 2")
    if r < 0:
        raise ValueError("r must be non-negative")
    if not 1 <= t <= p - 1:
        raise ValueError(f"t must lie in [1, {p - 1}], got {t}")
    for u in us:
        if not 0 <= u <= p - 1:
            raise ValueError(f"digit {u} outside [0, {p - 1}]")
    digits = (
        [0] * r + [t] + list(us) + [1]
        + [0] * r + [p - t] + [p - 1 - u for u in us] + [0]
    )
    return DigitVec(p, tuple(digits)).value


def cyclic_shift(v: DigitVec, k: int) -> DigitVec:
    """Multiply the represented value by base^k modulo base^n - 1."""
    n = v.length
    k %= n
    return DigitVec(v.base, tuple(v.digits[(i - k) % n] for i in range(n)))


def pair_sums(v: DigitVec) -> tuple[int, ...]:
    n = v.length
    if n % 2:
        raise ValueError("pair sums need an even number of digits")
    m = n // 2
    return tuple(v.digits[i] + v.digits[i + m] for i in range(m))


@dataclass(frozen=True)
class CaseLabel:
    """Outcome of Coulter-Lazebnik triage.

    ``kind`` is 1, 2 or 3. For case 3, ``shift`` is the least k with
    cyclic_shift(d, k) == d_form(t, us, r); for cases 1 and 2 it is the
    least shift whose pair-sum tuple has the canonical pattern.
    """

    kind: int
    shift: int
    t: Optional[int] = None
    us: Optional[tuple[int, ...]] = None
    r: Optional[int] = None


def pair_pattern(sums: Sequence[int], p: int) -> Optional[tuple[int, int]]:
    m = len(sums)
    if all(x == 0 for x in sums[:-1]) and sums[-1] == 2:
        return 1, -1
    if all(x == p - 1 for x in sums[:-1]) and sums[-1] == p + 1:
        return 2, -1
    if sums[-1] != 1:
        return None
    r = 0
    while r < m - 1 and sums[r] == 0:
        r += 1
    if r >= m - 1 or sums[r] != p:
        return None
    if all(x == p - 1 for x in sums[r + 1 : m - 1]):
        return 3, r
    return None


def cl_triage(d: DigitVec) -> Optional[CaseLabel]:
    n = d.length
    if n % 2:
        raise ValueError("triage needs an even number of digits")
    if d.value == 0:
        raise ValueError("triage needs d != 0")
    p = d.base
    m = n // 2
    for k in range(n):
        w = cyclic_shift(d, k)
        hit = pair_pattern(pair_sums(w), p)
        if hit is None:
            continue
        kind, r = hit
        if kind != 3:
            return CaseLabel(kind, k)
        # normal form additionally needs digit m-1 equal to 1 (so n-1 is 0)
        if w.digits[m - 1] != 1:
            continue
        s = m - 2 - r
        return CaseLabel(3, k, t=w.digits[r], us=tuple(w.digits[r + 1 : r + 1 + s]), r=r)
    return None
