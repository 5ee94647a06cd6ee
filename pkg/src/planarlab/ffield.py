"""Arithmetic in F_{p^n} for odd p.

Elements are integer codes: the coordinate vector (c_0, ..., c_{n-1}) of
c_0 + c_1 X + ... relative to the power basis of the modulus is stored as
sum c_i p^i.  Scalar ints and numpy integer arrays are both accepted by the
arithmetic methods of :class:`FieldCtx`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd, isqrt
from typing import Optional

import numpy as np

DEFAULT_Q_CAP = 2**31
DEFAULT_LOG_CAP = 2**20

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for n < 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> Optional[tuple[int, int]]:
    """(p, n) with q = p^n and p prime, or None."""
    if q < 2:
        return None
    for p in prime_factors(q)[:1]:
        n = 0
        while q % p == 0:
            q //= p
            n += 1
        return (p, n) if q == 1 else None
    return None


# -- dense polynomials over F_p, coefficient lists low -> high --------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, f, p):
    a = [x % p for x in a]
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(_trim(a)) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _pmulmod(a, b, f, p):
    return _pmod(_pmul(a, b, p), f, p)


def _ppowmod(a, e, f, p):
    result = [1]
    base = _pmod(list(a), f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _trim([x % p for x in a]), _trim([x % p for x in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(f, p: int) -> bool:
    """Rabin-style test for a monic f over F_p: gcd(X^(p^k) - X, f) = 1 for k <= n/2."""
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    xpow = [0, 1]
    for _ in range(1, n // 2 + 1):
        xpow = _ppowmod(xpow, p, f, p)
        diff = list(xpow) + [0] * max(0, 2 - len(xpow))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(f, diff, p)) != 1:
            return False
    return True


@dataclass(frozen=True, eq=False)
class FieldCtx:
    p: int
    n: int
    modulus: tuple[int, ...]
    g: int
    exp: Optional[np.ndarray] = field(default=None, repr=False)
    log: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def q(self) -> int:
        return self.p**self.n

    @property
    def order(self) -> int:
        return self.q - 1

    @property
    def has_logtable(self) -> bool:
        return self.log is not None

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and (self.p, self.n, self.modulus, self.g)
            == (other.p, other.n, other.modulus, other.g)
        )

    def __hash__(self):
        return hash((self.p, self.n, self.modulus, self.g))

    # -- encoding -----------------------------------------------------------
    def coords(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.n):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def elem(self, coords) -> int:
        coords = list(coords)
        if len(coords) > self.n:
            raise ValueError("too many coordinates")
        return sum((c % self.p) * self.p**i for i, c in enumerate(coords))

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def _check(self, a):
        if np.any(np.asarray(a) < 0) or np.any(np.asarray(a) >= self.q):
            raise ValueError("element code out of range")

    # -- additive structure -------------------------------------------------
    def add(self, a, b):
        if self.n == 1:
            return (a + b) % self.p
        p = self.p
        out = 0
        scale = 1
        for _ in range(self.n):
            out = out + ((a // scale + b // scale) % p) * scale
            scale *= p
        return out

    def neg(self, a):
        if self.n == 1:
            return (-a) % self.p
        p = self.p
        out = 0
        scale = 1
        for _ in range(self.n):
            out = out + ((-(a // scale)) % p) * scale
            scale *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def smul(self, c: int, a):
        """Multiply by the prime-field scalar c."""
        if self.n == 1:
            return (c * a) % self.p
        p = self.p
        out = 0
        scale = 1
        for _ in range(self.n):
            out = out + ((c * ((a // scale) % p)) % p) * scale
            scale *= p
        return out

    def sum(self, values, axis=None):
        """Field sum of an array of codes along ``axis``."""
        values = np.asarray(values, dtype=np.int64)
        p = self.p
        out = 0
        scale = 1
        for _ in range(self.n):
            digit = ((values // scale) % p).sum(axis=axis) % p
            out = out + digit * scale
            scale *= p
        return out

    # -- multiplicative structure -------------------------------------------
    def _poly(self, a: int):
        return _trim(list(self.coords(int(a))))

    def _mul_slow(self, a: int, b: int) -> int:
        if self.n == 1:
            return a * b % self.p
        return self.elem(_pmulmod(self._poly(a), self._poly(b), list(self.modulus), self.p))

    def mul(self, a, b):
        if self.n == 1:
            return (a * b) % self.p
        if self.log is None:
            if np.ndim(a) or np.ndim(b):
                av, bv = np.broadcast_arrays(np.asarray(a), np.asarray(b))
                return np.vectorize(self._mul_slow, otypes=[np.int64])(av, bv)
            return self._mul_slow(int(a), int(b))
        a_arr, b_arr = np.asarray(a), np.asarray(b)
        la = self.log[a_arr]
        lb = self.log[b_arr]
        out = self.exp[(la + lb) % self.order]
        out = np.where((a_arr == 0) | (b_arr == 0), 0, out)
        if out.ndim == 0:
            return int(out)
        return out

    def pow(self, a, k: int):
        """a^k with 0^0 = 1; negative k inverts (a must be nonzero)."""
        if np.ndim(a):
            a = np.asarray(a)
            if self.log is None:
                return np.vectorize(lambda x: self.pow(int(x), k), otypes=[np.int64])(a)
            if k == 0:
                return np.ones_like(a)
            if k < 0 and np.any(a == 0):
                raise ZeroDivisionError("0 has no inverse")
            out = self.exp[(self.log[a] * k) % self.order]
            return np.where(a == 0, 0, out)
        a = int(a)
        if k == 0:
            return 1
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 0
        if self.log is not None:
            return int(self.exp[(int(self.log[a]) * k) % self.order])
        if self.n == 1:
            return pow(a, k % self.order, self.p)
        return self.elem(_ppowmod(self._poly(a), k % self.order, list(self.modulus), self.p))

    def inv(self, a):
        return self.pow(a, -1)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def frobenius(self, a, k: int = 1):
        return self.pow(a, self.p**k)

    # -- trace and logarithms -----------------------------------------------
    @cached_property
    def basis_trace(self) -> tuple[int, ...]:
        out = []
        for i in range(self.n):
            x = self.elem([0] * i + [1])
            acc = 0
            y = x
            for _ in range(self.n):
                acc = self.add(acc, y)
                y = self.pow(y, self.p)
            out.append(int(acc))
        return tuple(out)

    def trace(self, a):
        """Absolute trace; the result is a code in [0, p-1]."""
        if self.n == 1:
            return a % self.p if np.ndim(a) else int(a) % self.p
        p = self.p
        acc = 0
        scale = 1
        for t in self.basis_trace:
            acc = acc + ((a // scale) % p) * t
            scale *= p
        return acc % p

    def dlog(self, a: int) -> int:
        a = int(a)
        if a == 0:
            raise ValueError("dlog(0) is undefined")
        self._check(a)
        if self.log is not None:
            return int(self.log[a])
        return self._bsgs(a)

    def _bsgs(self, a: int) -> int:
        order = self.order
        m = isqrt(order) + 1
        table = {}
        x = 1
        for j in range(m):
            table.setdefault(x, j)
            x = self.mul(x, self.g)
        giant = self.pow(self.g, -m)
        y = a
        for i in range(m + 1):
            if y in table:
                return (i * m + table[y]) % order
            y = self.mul(y, giant)
        raise ArithmeticError("discrete log not found; generator invalid")

    def is_generator(self, a: int) -> bool:
        if a == 0:
            return False
        return all(self.pow(a, self.order // r) != 1 for r in prime_factors(self.order))


def _lex_vectors(p: int, n: int):
    """Coordinate vectors in lexicographic order, c_0 compared first."""
    return itertools.product(range(p), repeat=n)


def _build_tables(ctx: FieldCtx) -> tuple[np.ndarray, np.ndarray]:
    p, n, order = ctx.p, ctx.n, ctx.order
    powers = np.array([p**i for i in range(n)], dtype=np.int64)

    def mul_matrix(a: int) -> np.ndarray:
        cols = [ctx.coords(ctx._mul_slow(a, ctx.elem([0] * i + [1]))) for i in range(n)]
        return np.array(cols, dtype=np.int64).T

    block = isqrt(order) + 1
    mg = mul_matrix(ctx.g)
    first = np.zeros((block, n), dtype=np.int64)
    v = np.zeros(n, dtype=np.int64)
    v[0] = 1
    for k in range(block):
        first[k] = v
        v = mg @ v % p
    gb = ctx.elem(v.tolist())
    mb = mul_matrix(gb)
    blocks = [first]
    cur = first
    while block * len(blocks) < order:
        cur = cur @ mb.T % p
        blocks.append(cur)
    coords = np.concatenate(blocks)[:order]
    exp = coords @ powers
    log = np.full(ctx.q, -1, dtype=np.int64)
    log[exp] = np.arange(order, dtype=np.int64)
    if (log[1:] < 0).any():
        raise ArithmeticError("generator does not generate the multiplicative group")
    return exp, log


def make_ctx(
    p: int,
    n: int = 1,
    *,
    q_cap: int = DEFAULT_Q_CAP,
    log_cap: int = DEFAULT_LOG_CAP,
) -> FieldCtx:
    """Deterministic model of F_{p^n}.

    The modulus is the lexicographically least monic irreducible (low-degree
    coefficients compared first) and g the least generator in the same order.
    Prime fields use plain residues with modulus X.
    """
    if p % 2 == 0:
        raise ValueError("planar functions need odd characteristic; p must be odd")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError("n must be positive")
    q = p**n
    if q > q_cap:
        raise ValueError(f"q = {q} exceeds the field cap {q_cap}")

    if n == 1:
        modulus = (0, 1)
        order = p - 1
        factors = prime_factors(order)
        g = next(
            a for a in range(1, p) if all(pow(a, order // r, p) != 1 for r in factors)
        )
    else:
        modulus = None
        for low in _lex_vectors(p, n):
            cand = list(low) + [1]
            if low[0] != 0 and is_irreducible(cand, p):
                modulus = tuple(cand)
                break
        probe = FieldCtx(p, n, modulus, 1)
        g = None
        for vec in _lex_vectors(p, n):
            a = probe.elem(vec)
            if probe.is_generator(a):
                g = a
                break
    ctx = FieldCtx(p, n, modulus, g)
    if q <= log_cap:
        exp, log = _build_tables(ctx)
        ctx = FieldCtx(p, n, modulus, g, exp, log)
    return ctx


@dataclass(frozen=True, eq=False)
class Embedding:
    """Field homomorphism from a subfield model into ``big``."""

    small: FieldCtx
    big: FieldCtx
    table: np.ndarray = field(repr=False)

    def __call__(self, a):
        return self.table[a] if np.ndim(a) else int(self.table[int(a)])

    @property
    def image(self) -> np.ndarray:
        return np.sort(self.table)


def minimal_polynomial(ctx: FieldCtx, a: int) -> list[int]:
    """Minimal polynomial of a over F_p, coefficients low -> high."""
    conj = [a]
    y = ctx.pow(a, ctx.p)
    while y != a:
        conj.append(y)
        y = ctx.pow(y, ctx.p)
    poly = [1]
    for c in conj:
        # poly * (X - c)
        nxt = [0] * (len(poly) + 1)
        for i, coef in enumerate(poly):
            nxt[i + 1] = ctx.add(nxt[i + 1], coef)
            nxt[i] = ctx.sub(nxt[i], ctx.mul(coef, c))
        poly = nxt
    if any(int(c) >= ctx.p for c in poly):
        raise ArithmeticError("minimal polynomial left the prime field")
    return [int(c) for c in poly]


def _horner(ctx: FieldCtx, poly, x: int) -> int:
    acc = 0
    for c in reversed(poly):
        acc = ctx.add(ctx.mul(acc, x), c)
    return int(acc)


def subfield_restrict(ctx: FieldCtx, m: int) -> tuple[FieldCtx, Embedding]:
    """Model of F_{p^m} together with an embedding into ``ctx``.

    The small generator is sent to the least power beta^k of
    beta = g^((q-1)/(p^m-1)) that is a root of its minimal polynomial, which
    makes the map additive as well as multiplicative.
    """
    if m < 1 or ctx.n % m:
        raise ValueError(f"{m} does not divide {ctx.n}")
    small = make_ctx(ctx.p, m, log_cap=max(DEFAULT_LOG_CAP, ctx.p**m))
    so = small.order
    beta0 = ctx.pow(ctx.g, ctx.order // so)
    h = minimal_polynomial(small, small.g)
    beta = None
    for k in range(1, so + 1):
        if gcd(k, so) != 1:
            continue
        cand = ctx.pow(beta0, k)
        if _horner(ctx, h, cand) == 0:
            beta = cand
            break
    if beta is None:
        raise ArithmeticError("no compatible image for the subfield generator")
    table = np.zeros(small.q, dtype=np.int64)
    y = 1
    for j in range(so):
        table[small.pow(small.g, j)] = y
        y = ctx.mul(y, beta)
    return small, Embedding(small, ctx, table)
