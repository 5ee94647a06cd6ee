"""Exact arithmetic in Z[zeta_p, zeta_N] with N = q - 1.

Elements are kept in the tensor basis zeta_p^a zeta_N^b with a < p-1 and
b < phi(N); this basis is integral because p does not divide N.  Bulk
computations use the unreduced group-ring layout (p, N) and reduce at the end.

The residue map zeta_N -> g, zeta_p -> 1 (g the generator of the field
model) fixes one prime Q above p; all valuations are taken at Q.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import Optional, Union

import numpy as np

from .ffield import FieldCtx, minimal_polynomial


@lru_cache(maxsize=None)
def cyclotomic_poly(N: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_N, low -> high."""
    num = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            num = _exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _exact_div(a, b):
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = a[i + len(b) - 1] // b[-1]
        out[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return out


def euler_phi(N: int) -> int:
    return sum(1 for k in range(1, N + 1) if gcd(k, N) == 1)


def _as_object(x) -> np.ndarray:
    return np.array(x, dtype=object)


@dataclass(frozen=True, eq=False)
class CycloRing:
    """Z[zeta_p, zeta_{q-1}] attached to a field model F_q."""

    ctx: FieldCtx
    p: int = field(init=False)
    N: int = field(init=False)
    phi: int = field(init=False)

    def __post_init__(self):
        if not self.ctx.has_logtable:
            raise ValueError("the cyclotomic ring needs a field with log tables")
        object.__setattr__(self, "p", self.ctx.p)
        object.__setattr__(self, "N", self.ctx.q - 1)
        object.__setattr__(self, "phi", euler_phi(self.ctx.q - 1))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.p - 1, self.phi)

    @property
    def group_shape(self) -> tuple[int, int]:
        return (self.p, self.N)

    @cached_property
    def red(self) -> np.ndarray:
        """Row j holds the coefficients of y^j mod Phi_N."""
        N, phi = self.N, self.phi
        f = cyclotomic_poly(N)
        out = np.zeros((N, phi), dtype=np.int64)
        cur = [0] * phi
        cur[0] = 1
        for j in range(N):
            out[j] = cur
            lead = cur[-1]
            cur = [0] + cur[:-1]
            if lead:
                cur = [c - lead * f[i] for i, c in enumerate(cur)]
        return out

    @cached_property
    def _red_obj(self) -> np.ndarray:
        return self.red.astype(object)

    # -- conversions ----------------------------------------------------------
    def reduce(self, gr: np.ndarray) -> np.ndarray:
        """Group-ring coefficients (..., p, N) -> canonical (..., p-1, phi)."""
        gr = np.asarray(gr)
        c = gr[..., : self.p - 1, :] - gr[..., self.p - 1 : self.p, :]
        red = self._red_obj if c.dtype == object else self.red
        return c @ red

    def lift(self, canon: np.ndarray) -> np.ndarray:
        canon = np.asarray(canon)
        out = np.zeros(canon.shape[:-2] + (self.p, self.N), dtype=canon.dtype)
        out[..., : self.p - 1, : self.phi] = canon
        return out

    def elem(self, canon) -> "CycloElem":
        return CycloElem(self, _as_object(canon))

    def from_group(self, gr) -> "CycloElem":
        return CycloElem(self, self.reduce(_as_object(gr)))

    def monomial(self, a: int, b: int, coeff: int = 1) -> "CycloElem":
        gr = np.zeros(self.group_shape, dtype=object)
        gr[a % self.p, b % self.N] = coeff
        return self.from_group(gr)

    def integer(self, k: int) -> "CycloElem":
        return self.monomial(0, 0, k)

    @property
    def zero(self) -> "CycloElem":
        return self.integer(0)

    @property
    def one(self) -> "CycloElem":
        return self.integer(1)

    # -- ring operations on canonical arrays ----------------------------------
    def _mul_group(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        out = np.zeros(self.group_shape, dtype=object)
        for a, b in zip(*np.nonzero(x)):
            out += x[a, b] * np.roll(y, (a, b), axis=(0, 1))
        return out

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return self.reduce(self._mul_group(self.lift(x), self.lift(y)))

    def residue(self, canon) -> int:
        """Image in F_q under zeta_p -> 1, zeta_N -> g."""
        ctx = self.ctx
        col = np.asarray(canon).sum(axis=0)
        acc = 0
        for b, c in enumerate(col):
            c = int(c) % self.p
            if c:
                acc = ctx.add(acc, ctx.smul(c, int(ctx.exp[b])))
        return int(acc)

    def residues(self, canon: np.ndarray) -> np.ndarray:
        """Vectorized residue over leading axes of int64 canonical arrays."""
        ctx = self.ctx
        col = np.asarray(canon).sum(axis=-2) % self.p
        acc = np.zeros(col.shape[:-1], dtype=np.int64)
        for b in range(self.phi):
            acc = ctx.add(acc, ctx.smul(col[..., b], int(ctx.exp[b])))
        return acc

    # -- valuation machinery --------------------------------------------------
    @cached_property
    def cofactor(self) -> np.ndarray:
        """prod_{a=2}^{p-1} (zeta_p^a - 1); pi times this is p."""
        acc = self.one.coeffs
        for a in range(2, self.p):
            acc = self.mul(acc, (self.monomial(a, 0) - self.one).coeffs)
        return acc

    @cached_property
    def localizer(self) -> np.ndarray:
        """An element outside Q lying in every other prime above p.

        Product of the integer lifts of the minimal polynomials of g^j over the
        Frobenius orbits of (Z/N)^x other than the orbit of 1.
        """
        ctx, N, p = self.ctx, self.N, self.p
        seen = set()
        acc = self.one.coeffs
        for j in range(1, N):
            if gcd(j, N) != 1 or j in seen:
                continue
            orbit = set()
            k = j
            while k not in orbit:
                orbit.add(k)
                k = k * p % N
            seen |= orbit
            if 1 in orbit:
                continue
            h = minimal_polynomial(ctx, int(ctx.exp[j]))
            gr = np.zeros(self.group_shape, dtype=object)
            for i, c in enumerate(h):
                gr[0, i % N] += c
            acc = self.mul(acc, self.reduce(gr))
        return acc

    @cached_property
    def divider(self) -> np.ndarray:
        """localizer * cofactor; multiplying by it and dividing by p lowers ord_Q by one."""
        return self.mul(self.localizer, self.cofactor)

    def _ord_pi(self, canon: np.ndarray) -> Optional[int]:
        x = _as_object(canon)
        if not any(x.ravel()):
            return None
        mass = sum(abs(int(c)) for c in x.ravel())
        degree = (self.p - 1) * self.phi
        bound = int((self.p - 1) * degree * math.log(max(mass, 2), self.p)) + 2
        pure = not any(x[:, 1:].ravel())
        step = self.cofactor if pure else self.divider
        for k in range(bound + 1):
            if self.residue(x) != 0:
                return k
            y = self.mul(x, step)
            if any(int(c) % self.p for c in y.ravel()):
                raise ArithmeticError("exact division by pi failed")
            x = y // self.p
        raise ArithmeticError("valuation exceeded the coefficient-size bound")


@dataclass(frozen=True, eq=False)
class CycloElem:
    ring: CycloRing
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = _as_object(self.coeffs)
        if c.shape != self.ring.shape:
            raise ValueError(f"expected coefficient shape {self.ring.shape}, got {c.shape}")
        object.__setattr__(self, "coeffs", c)

    def _wrap(self, other) -> "CycloElem":
        if isinstance(other, CycloElem):
            return other
        if isinstance(other, (int, np.integer)):
            return self.ring.integer(int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._wrap(other)
        return CycloElem(self.ring, self.coeffs + other.coeffs)

    __radd__ = __add__

    def __neg__(self):
        return CycloElem(self.ring, -self.coeffs)

    def __sub__(self, other):
        other = self._wrap(other)
        return CycloElem(self.ring, self.coeffs - other.coeffs)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return CycloElem(self.ring, self.coeffs * int(other))
        return CycloElem(self.ring, self.ring.mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return bool((self.coeffs == other.coeffs).all())

    def __hash__(self):
        return hash(tuple(int(c) for c in self.coeffs.ravel()))

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs.ravel())

    def _galois(self, sa: int, sb: int) -> "CycloElem":
        ring = self.ring
        gr = ring.lift(self.coeffs)
        out = np.zeros(ring.group_shape, dtype=object)
        a = (sa * np.arange(ring.p)) % ring.p
        b = (sb * np.arange(ring.N)) % ring.N
        out[np.ix_(a, b)] = gr
        return ring.from_group(out)

    def conj(self) -> "CycloElem":
        """zeta_p -> zeta_p^-1 and zeta_N -> zeta_N^-1."""
        return self._galois(-1, -1)

    def conj_p(self) -> "CycloElem":
        """zeta_p -> zeta_p^-1 only."""
        return self._galois(-1, 1)

    def conj_N(self) -> "CycloElem":
        """zeta_N -> zeta_N^-1 only."""
        return self._galois(1, -1)

    def residue(self) -> int:
        return self.ring.residue(self.coeffs)

    def content(self) -> int:
        g = 0
        for c in self.coeffs.ravel():
            g = gcd(g, int(c))
        return g


@dataclass(frozen=True)
class ValReport:
    """ord_pi of an element; ``ord_pi`` is None for zero."""

    ord_pi: Optional[int]
    p: int

    @property
    def infinite(self) -> bool:
        return self.ord_pi is None

    @property
    def value(self) -> Union[Fraction, float]:
        """ord_p = ord_pi / (p - 1)."""
        if self.ord_pi is None:
            return math.inf
        return Fraction(self.ord_pi, self.p - 1)


def pi_valuation(x: Union[CycloElem, "ScaledCyclo"]) -> ValReport:
    if isinstance(x, ScaledCyclo):
        return x.valuation()
    return ValReport(x.ring._ord_pi(x.coeffs), x.ring.p)


def p_adic_ord(k: int, p: int) -> int:
    if k == 0:
        raise ValueError("ord_p(0) is infinite")
    v = 0
    while k % p == 0:
        k //= p
        v += 1
    return v


@dataclass(frozen=True, eq=False)
class ScaledCyclo:
    """num / den with den a positive integer, reduced by the content of num."""

    num: CycloElem
    den: int

    def __post_init__(self):
        if self.den <= 0:
            raise ValueError("denominator must be positive")
        g = gcd(self.num.content(), self.den)
        if g > 1:
            object.__setattr__(self, "num", CycloElem(self.num.ring, self.num.coeffs // g))
            object.__setattr__(self, "den", self.den // g)
        if self.num.is_zero:
            object.__setattr__(self, "den", 1)

    def __eq__(self, other):
        if not isinstance(other, ScaledCyclo):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __mul__(self, other: "ScaledCyclo") -> "ScaledCyclo":
        return ScaledCyclo(self.num * other.num, self.den * other.den)

    def __add__(self, other: "ScaledCyclo") -> "ScaledCyclo":
        return ScaledCyclo(self.num * other.den + other.num * self.den, self.den * other.den)

    def conj(self) -> "ScaledCyclo":
        return ScaledCyclo(self.num.conj(), self.den)

    def conj_p(self) -> "ScaledCyclo":
        return ScaledCyclo(self.num.conj_p(), self.den)

    def valuation(self) -> ValReport:
        ring = self.num.ring
        k = ring._ord_pi(self.num.coeffs)
        if k is None:
            return ValReport(None, ring.p)
        return ValReport(k - (ring.p - 1) * p_adic_ord(self.den, ring.p), ring.p)

    def residue(self) -> int:
        """Reduction into F_q; the denominator must be prime to p."""
        ring = self.num.ring
        if self.den % ring.p == 0:
            raise ValueError("denominator divisible by p has no residue")
        ctx = ring.ctx
        inv = pow(self.den, -1, ring.p)
        return int(ctx.smul(inv, self.num.residue()))
