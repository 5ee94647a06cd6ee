"""Combinatorial planarity tests, the DO-monomial criterion and Hermite's criterion."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

import numpy as np

from .ffield import FieldCtx
from .interp import FuncTable, PolyCoeffs, evaluate

DEFAULT_BRUTE_CAP = 7**4


@dataclass(frozen=True)
class PlanarityReport:
    planar: bool
    failing_alpha: Optional[int] = None
    failing_collision: Optional[tuple[int, int]] = None

    def __post_init__(self):
        has_witness = self.failing_alpha is not None or self.failing_collision is not None
        if self.planar == has_witness:
            raise ValueError("planar reports carry no witness; non-planar ones need both parts")

    def __bool__(self):
        return self.planar

    def as_dict(self) -> dict:
        return {
            "planar": self.planar,
            "alpha": self.failing_alpha,
            "collision": list(self.failing_collision) if self.failing_collision else None,
        }


def _collision(diff: np.ndarray, q: int) -> Optional[tuple[int, int]]:
    seen = np.zeros(q, dtype=bool)
    seen[diff] = True
    if seen.all():
        return None
    counts = np.bincount(diff, minlength=q)
    v = int(np.argmax(counts > 1))
    x1, x2 = np.flatnonzero(diff == v)[:2]
    return int(x1), int(x2)


def is_planar(t: FuncTable, monomial: bool = False) -> PlanarityReport:
    """Check that x -> F(x + a) - F(x) is a bijection for every a != 0.

    With ``monomial=True`` only a = 1 is tested, which is enough when F is a
    monomial since F(a x + a) - F(a x) = a^d (F(x + 1) - F(x)).
    """
    ctx = t.ctx
    xs = ctx.elements()
    alphas = [1] if monomial else range(1, ctx.q)
    for a in alphas:
        diff = ctx.sub(t.values[ctx.add(xs, a)], t.values)
        hit = _collision(diff, ctx.q)
        if hit is not None:
            return PlanarityReport(False, a, hit)
    return PlanarityReport(True)


def monomial_table(ctx: FieldCtx, d: int) -> FuncTable:
    """x -> x^d with 0^0 = 1."""
    if not 0 <= d <= ctx.q - 1:
        raise ValueError("exponent must lie in [0, q-1]")
    return FuncTable(ctx, ctx.pow(ctx.elements(), d))


def is_planar_monomial(ctx: FieldCtx, d: int) -> PlanarityReport:
    return is_planar(monomial_table(ctx, d), monomial=True)


def is_planar_do_monomial(i: int, j: int, n: int) -> bool:
    """X^(p^i + p^j) is planar over F_{p^n} iff n / gcd(j - i, n) is odd."""
    if n < 1 or i < 0 or j < 0:
        raise ValueError("need i, j >= 0 and n >= 1")
    return (n // gcd(j - i, n)) % 2 == 1


def _polymul_mod(ctx: FieldCtx, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of coefficient vectors reduced mod X^q - X."""
    q = ctx.q
    ia, ib = np.flatnonzero(a), np.flatnonzero(b)
    out = np.zeros(q, dtype=np.int64)
    if ia.size == 0 or ib.size == 0:
        return out
    codes = ctx.mul(a[ia][:, None], b[ib][None, :]).ravel()
    e = (ia[:, None] + ib[None, :]).ravel()
    e = np.where(e >= q, e - (q - 1), e)
    p = ctx.p
    scale = 1
    for _ in range(ctx.n):
        digit = np.zeros(q, dtype=np.int64)
        np.add.at(digit, e, (codes // scale) % p)
        out += (digit % p) * scale
        scale *= p
    return out


def hermite_is_permutation(poly: PolyCoeffs) -> bool:
    """Hermite's criterion: one root, and deg(Q^t mod X^q - X) < q-1 for
    every 1 <= t < q-1 with p not dividing t."""
    ctx = poly.ctx
    q, p = ctx.q, ctx.p
    values = evaluate(poly).values
    if np.count_nonzero(values == 0) != 1:
        return False
    power = poly.coeffs.copy()
    for t in range(1, q - 1):
        if t > 1:
            power = _polymul_mod(ctx, power, poly.coeffs)
        if t % p and power[q - 1] != 0:
            return False
    return True


def is_permutation(t: FuncTable) -> bool:
    return np.unique(t.values).size == t.ctx.q


def linearized_shift(t: FuncTable, c: int, a: Sequence[int]) -> FuncTable:
    """F + c + sum_i a_i X^(p^i)."""
    ctx = t.ctx
    xs = ctx.elements()
    values = ctx.add(t.values, c)
    for i, ai in enumerate(a):
        if ai:
            values = ctx.add(values, ctx.mul(ai, ctx.pow(xs, ctx.p**i)))
    return FuncTable(ctx, values)


def linearized_shift_invariance(t: FuncTable, c: int, a: Sequence[int]) -> PlanarityReport:
    return is_planar(linearized_shift(t, c, a))
