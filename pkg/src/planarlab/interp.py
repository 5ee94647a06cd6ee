"""Function tables over F_q, their interpolating polynomials and algebraic degree."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .ffield import FieldCtx

# rows x (q-1) codes materialized per chunk of the Fourier sums
_CHUNK_CELLS = 1 << 22


@dataclass(frozen=True, eq=False)
class FuncTable:
    """Values of F: F_q -> F_q, indexed by element code."""

    ctx: FieldCtx
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.int64)
        if v.shape != (self.ctx.q,):
            raise ValueError(f"table needs {self.ctx.q} values, got shape {v.shape}")
        if v.min(initial=0) < 0 or v.max(initial=0) >= self.ctx.q:
            raise ValueError("table values must be element codes")
        object.__setattr__(self, "values", v)

    def __eq__(self, other):
        return (
            isinstance(other, FuncTable)
            and self.ctx == other.ctx
            and np.array_equal(self.values, other.values)
        )

    def __call__(self, x):
        return self.values[x]

    @property
    def is_zero(self) -> bool:
        return not self.values.any()

    @classmethod
    def from_function(cls, ctx: FieldCtx, fn) -> "FuncTable":
        return cls(ctx, np.array([fn(x) for x in range(ctx.q)], dtype=np.int64))

    @classmethod
    def random(cls, ctx: FieldCtx, rng: np.random.Generator) -> "FuncTable":
        return cls(ctx, rng.integers(0, ctx.q, size=ctx.q))


@dataclass(frozen=True, eq=False)
class PolyCoeffs:
    """Coefficients a_0..a_{q-1} of the reduced polynomial (degree <= q-1)."""

    ctx: FieldCtx
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.zeros(self.ctx.q, dtype=np.int64)
        src = np.asarray(self.coeffs, dtype=np.int64)
        if src.size > self.ctx.q:
            raise ValueError("more than q coefficients; reduce mod X^q - X first")
        c[: src.size] = src
        object.__setattr__(self, "coeffs", c)

    def __eq__(self, other):
        return (
            isinstance(other, PolyCoeffs)
            and self.ctx == other.ctx
            and np.array_equal(self.coeffs, other.coeffs)
        )

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.coeffs)

    @property
    def degree(self) -> int:
        s = self.support
        return int(s[-1]) if s.size else -1

    def evaluate(self) -> FuncTable:
        return evaluate(self)


@lru_cache(maxsize=64)
def digit_sums(p: int, n: int) -> np.ndarray:
    """s_p(i) for every i in [0, p^n - 1]."""
    x = np.arange(p**n, dtype=np.int64)
    s = np.zeros_like(x)
    for _ in range(n):
        s += x % p
        x //= p
    s.setflags(write=False)
    return s


def _require_logs(ctx: FieldCtx):
    if not ctx.has_logtable:
        raise ValueError(f"q = {ctx.q} has no log table; interpolation needs one")


def _char_sums(ctx: FieldCtx, lf: np.ndarray, rows: np.ndarray, sign: int) -> np.ndarray:
    """sum_k c_k g^(sign * i * k) over positions k, for each i in ``rows``.

    ``lf[k]`` holds log c_k, or -1 where c_k = 0.
    """
    N = ctx.order
    k = np.arange(lf.size, dtype=np.int64)
    nz = lf >= 0
    k, lf = k[nz], lf[nz]
    out = np.zeros(rows.size, dtype=np.int64)
    if k.size == 0:
        return out
    step = max(1, _CHUNK_CELLS // k.size)
    for lo in range(0, rows.size, step):
        i = rows[lo : lo + step]
        e = (lf[None, :] + sign * (i[:, None] * k[None, :])) % N
        out[lo : lo + step] = ctx.sum(ctx.exp[e], axis=1)
    return out


def interpolate(t: FuncTable) -> PolyCoeffs:
    """Unique polynomial of degree <= q-1 with the given evaluation map.

    a_0 = F(0), a_{q-1} = -sum_x F(x), and for 1 <= i <= q-2
    a_i = -sum_k F(g^k) g^(-ik), a character sum over F_q^x.
    """
    ctx = t.ctx
    _require_logs(ctx)
    q, N = ctx.q, ctx.order
    f = t.values[ctx.exp]
    lf = np.where(f == 0, -1, ctx.log[f])
    coeffs = np.zeros(q, dtype=np.int64)
    coeffs[0] = t.values[0]
    coeffs[q - 1] = ctx.neg(ctx.sum(t.values))
    if q > 2:
        coeffs[1 : q - 1] = ctx.neg(_char_sums(ctx, lf, np.arange(1, q - 1), -1))
    return PolyCoeffs(ctx, coeffs)


def evaluate(poly: PolyCoeffs) -> FuncTable:
    ctx = poly.ctx
    _require_logs(ctx)
    a = poly.coeffs
    la = np.where(a == 0, -1, ctx.log[a])
    # x = g^k: sum_i a_i g^(ik); the i = 0 and i = q-1 terms both pick up
    # g^0, which _char_sums handles because exponents are reduced mod q-1
    vals_nz = _char_sums(ctx, la, np.arange(ctx.order), +1)
    values = np.zeros(ctx.q, dtype=np.int64)
    values[ctx.exp] = vals_nz
    values[0] = a[0]
    return FuncTable(ctx, values)


def adeg(t: FuncTable) -> int:
    if t.is_zero:
        raise ValueError("algebraic degree is undefined for the zero function")
    return poly_adeg(interpolate(t))


def poly_adeg(poly: PolyCoeffs) -> int:
    s = poly.support
    if s.size == 0:
        raise ValueError("algebraic degree is undefined for the zero polynomial")
    return int(digit_sums(poly.ctx.p, poly.ctx.n)[s].max())


def power_table(t: FuncTable, j: int) -> FuncTable:
    """Pointwise j-th power with 0^0 = 1."""
    if not 0 <= j <= t.ctx.q - 1:
        raise ValueError("power must lie in [0, q-1]")
    return FuncTable(t.ctx, t.ctx.pow(t.values, j))


def compose_adeg_profile(t: FuncTable) -> np.ndarray:
    """Entry i is adeg(F^i) for 1 <= i <= q-1; entry 0 is 0."""
    if t.is_zero:
        raise ValueError("profile needs a nonzero function")
    q = t.ctx.q
    out = np.zeros(q, dtype=np.int64)
    for i in range(1, q):
        out[i] = adeg(power_table(t, i))
    return out


def from_poly(ctx: FieldCtx, coeffs) -> FuncTable:
    """Evaluation table of sum a_i X^i (exponents >= q are folded first)."""
    coeffs = list(coeffs)
    folded = np.zeros(ctx.q, dtype=np.int64)
    for i, a in enumerate(coeffs):
        if a == 0:
            continue
        e = i if i < ctx.q else (i - 1) % (ctx.q - 1) + 1
        folded[e] = ctx.add(int(folded[e]), int(a))
    return evaluate(PolyCoeffs(ctx, folded))
