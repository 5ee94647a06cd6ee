"""Fourier and p-adic side: Teichmueller characters, Gauss sums, the
correlation matrix C^F, the ultrametric matrix A^F and the change of basis T
between additive and multiplicative characters.

Matrices are held as integer numerators in the unreduced group-ring layout
(rows, cols, p, N) together with a common integer denominator.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from .cyclo import CycloElem, CycloRing, ScaledCyclo, ValReport, pi_valuation
from .ffield import FieldCtx
from .interp import FuncTable, digit_sums, interpolate, power_table

MATRIX_Q_CAP = 81
GAUSS_Q_CAP = 2**10
PRODUCT_CELL_CAP = 40_000_000


def _check_matrix_q(ctx: FieldCtx):
    if ctx.q > MATRIX_Q_CAP:
        raise ValueError(f"character matrices are limited to q <= {MATRIX_Q_CAP}")


def _trace_table(ctx: FieldCtx) -> np.ndarray:
    """TR[u, x] = tr(u x)."""
    xs = ctx.elements()
    return ctx.trace(ctx.mul(xs[:, None], xs[None, :]))


def teichmuller(ring: CycloRing, x: int) -> CycloElem:
    """tau(x) = zeta_N^(log x), tau(0) = 0."""
    if x == 0:
        return ring.zero
    return ring.monomial(0, int(ring.ctx.log[x]))


def mult_char(ring: CycloRing, k: int, x: int) -> CycloElem:
    """lambda_k(x) = tau(x)^k with lambda_0 = 1 everywhere."""
    if k == 0:
        return ring.one
    if x == 0:
        return ring.zero
    return ring.monomial(0, k * int(ring.ctx.log[x]))


def add_char(ring: CycloRing, u: int, x: int) -> CycloElem:
    """chi_u(x) = zeta_p^tr(ux)."""
    ctx = ring.ctx
    return ring.monomial(int(ctx.trace(ctx.mul(u, x))), 0)


def gauss_sum(ring: CycloRing, u: int, k: int) -> CycloElem:
    """G(chi_u, lambda_k) = -sum_{x != 0} chi_u(x) lambda_k(x)."""
    ctx = ring.ctx
    if ctx.q > GAUSS_Q_CAP:
        raise ValueError(f"Gauss sums are limited to q <= {GAUSS_Q_CAP}")
    if not 1 <= k <= ctx.q - 1:
        raise ValueError("character index must lie in [1, q-1]")
    if u == 0:
        raise ValueError("the additive character must be nontrivial")
    j = np.arange(ring.N)
    a = ctx.trace(ctx.mul(u, ctx.exp[j]))
    b = (k * j) % ring.N
    gr = np.zeros(ring.group_shape, dtype=np.int64)
    np.add.at(gr, (a, b), -1)
    return ring.from_group(gr)


def stickelberger_expected(k: int, p: int, n: int) -> int:
    """ord_pi G(chi, 1/lambda_k): the digit sum of k, or 0 for the trivial character."""
    q = p**n
    if not 1 <= k <= q - 1:
        raise ValueError("k must lie in [1, q-1]")
    return 0 if k == q - 1 else int(digit_sums(p, n)[k])


def inverse_index(k: int, q: int) -> int:
    """Index of 1/lambda_k among lambda_1..lambda_{q-1}."""
    return q - 1 if k == q - 1 else q - 1 - k


@dataclass(frozen=True)
class Deviation:
    where: tuple
    expected: object
    got: object


@dataclass(frozen=True)
class CheckReport:
    passed: bool
    checked: int
    deviations: tuple[Deviation, ...] = ()

    def __bool__(self):
        return self.passed


def _report(checked: int, devs: list) -> CheckReport:
    return CheckReport(not devs, checked, tuple(devs))


def verify_stickelberger(ctx: FieldCtx) -> CheckReport:
    """Compare ord_pi G(chi_u, 1/lambda_k) with s_p(k) for all u, k != 0."""
    ring = CycloRing(ctx)
    devs, checked = [], 0
    for u in range(1, ctx.q):
        for k in range(1, ctx.q):
            g = gauss_sum(ring, u, inverse_index(k, ctx.q))
            got = pi_valuation(g).ord_pi
            want = stickelberger_expected(k, ctx.p, ctx.n)
            checked += 1
            if got != want:
                devs.append(Deviation((u, k), want, got))
    return _report(checked, devs)


# -- matrices ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CharMatrix:
    """Matrix over Q(zeta_p, zeta_N): numerators ``gr`` (rows, cols, p, N) over ``den``."""

    ring: CycloRing
    gr: np.ndarray = field(repr=False)
    den: int

    @property
    def shape(self) -> tuple[int, int]:
        return self.gr.shape[:2]

    @cached_property
    def canon(self) -> np.ndarray:
        return self.ring.reduce(self.gr)

    def entry(self, i: int, j: int) -> ScaledCyclo:
        return ScaledCyclo(self.ring.elem(self.canon[i, j]), self.den)

    def valuation(self, i: int, j: int) -> ValReport:
        return self.entry(i, j).valuation()

    def __eq__(self, other):
        if not isinstance(other, CharMatrix):
            return NotImplemented
        a = self.canon.astype(object) * other.den
        b = other.canon.astype(object) * self.den
        return self.shape == other.shape and bool((a == b).all())

    def scale(self, k: int) -> "CharMatrix":
        """Multiply by the integer k."""
        return CharMatrix(self.ring, self.gr * k, self.den)

    def __matmul__(self, other: "CharMatrix") -> "CharMatrix":
        return CharMatrix(self.ring, ring_matmul(self.ring, self.gr, other.gr), self.den * other.den)

    def residues(self) -> np.ndarray:
        """Entrywise reduction into F_q; needs a denominator prime to p."""
        p = self.ring.p
        if self.den % p == 0:
            raise ValueError("denominator divisible by p")
        res = self.ring.residues(self.canon)
        return self.ring.ctx.smul(pow(self.den, -1, p), res)


def ring_matmul(ring: CycloRing, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Exact product of group-ring matrices via a circulant unfolding of B."""
    r, s = A.shape[:2]
    s2, t = B.shape[:2]
    if s != s2:
        raise ValueError("inner dimensions differ")
    p, N = ring.group_shape
    M = p * N
    if (s * M) * (t * M) > PRODUCT_CELL_CAP:
        raise ValueError("matrix too large for the exact product")
    bound = int(np.abs(A).reshape(r, -1).sum(axis=1).max(initial=0)) * int(np.abs(B).max(initial=0))
    if bound >= 2**62:
        raise OverflowError("exact product would overflow int64")
    ia, ib = np.divmod(np.arange(M), N)
    D = ((ia[None, :] - ia[:, None]) % p) * N + (ib[None, :] - ib[:, None]) % N
    Bf = B.reshape(s, t, M)[:, :, D]  # (s, t, m1, m)
    Bt = Bf.transpose(0, 2, 1, 3).reshape(s * M, t * M)
    out = A.reshape(r, s * M) @ Bt
    return out.reshape(r, t, p, N)


def correlation_matrix(t: FuncTable) -> CharMatrix:
    """C[v, u] = (1/q) sum_x zeta_p^tr(v F(x) - u x)."""
    ctx = t.ctx
    _check_matrix_q(ctx)
    ring = CycloRing(ctx)
    q, p = ctx.q, ctx.p
    TR = _trace_table(ctx)
    gr = np.zeros((q, q, p, ring.N), dtype=np.int64)
    xs = np.arange(q)
    for v in range(q):
        e = (TR[v, t.values][None, :] - TR[:, xs]) % p  # (u, x)
        cnt = np.zeros((q, p), dtype=np.int64)
        np.add.at(cnt, (np.repeat(np.arange(q), q), e.ravel()), 1)
        gr[v, :, :, 0] = cnt
    return CharMatrix(ring, gr, q)


def _log_or_neg(ctx: FieldCtx, vals: np.ndarray) -> np.ndarray:
    return np.where(vals == 0, -1, ctx.log[vals])


def ultrametric_matrix(t: FuncTable) -> CharMatrix:
    """A[j, i] = sum_x mu_i^dual(x) lambda_j(F(x)), rows indexed by the power j.

    Its reduction mod p is the coefficient of X^i in F^j.
    """
    ctx = t.ctx
    _check_matrix_q(ctx)
    ring = CycloRing(ctx)
    q, N = ctx.q, ring.N
    lx = np.arange(N)  # x = g^lx
    lf = _log_or_neg(ctx, t.values[ctx.exp])
    f0 = int(t.values[0])
    gr = np.zeros((q, q, ring.p, N), dtype=np.int64)
    for j in range(q):
        # lambda_j(F(0)) and lambda_j(F(x)) for x != 0 as zeta_N exponents (None = 0)
        if j == 0:
            lam0, lamx, ok = 0, np.zeros(N, dtype=np.int64), np.ones(N, dtype=bool)
        else:
            lam0 = None if f0 == 0 else (j * int(ctx.log[f0])) % N
            ok = lf >= 0
            lamx = (j * lf) % N
        if lam0 is not None:
            gr[j, 0, 0, lam0] += N
            gr[j, q - 1, 0, lam0] -= N
        for i in range(1, q):
            b = (lamx[ok] - i * lx[ok]) % N
            np.add.at(gr[j, i, 0], b, 1)
    return CharMatrix(ring, gr, N)


def change_of_basis(ctx: FieldCtx) -> CharMatrix:
    """T[u, k] = chi_u(lambda_k^dual); denominator q - 1."""
    _check_matrix_q(ctx)
    ring = CycloRing(ctx)
    q, N, p = ctx.q, ring.N, ctx.p
    TR = _trace_table(ctx)
    gr = np.zeros((q, q, p, N), dtype=np.int64)
    lx = np.arange(N)
    for u in range(q):
        a = TR[u, ctx.exp]
        gr[u, 0, 0, 0] += N
        for k in range(1, q):
            np.add.at(gr[u, k], (a, (-k * lx) % N), 1)
        gr[u, q - 1, 0, 0] -= N
    return CharMatrix(ring, gr, N)


def change_of_basis_inverse(ctx: FieldCtx) -> CharMatrix:
    """Tinv[k, u] = lambda_k(chi_u^dual); denominator q."""
    _check_matrix_q(ctx)
    ring = CycloRing(ctx)
    q, N, p = ctx.q, ring.N, ctx.p
    TR = _trace_table(ctx)
    gr = np.zeros((q, q, p, N), dtype=np.int64)
    lx = np.arange(N)
    for u in range(q):
        a = (-TR[u, ctx.exp]) % p
        gr[0, u, 0, 0] += 1  # x = 0 term of lambda_0
        for k in range(q):
            np.add.at(gr[k, u], (a, (k * lx) % N), 1)
    return CharMatrix(ring, gr, q)


def gauss_form_of_T(ctx: FieldCtx, u: int, k: int) -> ScaledCyclo:
    """Closed form of T[u, k] for u, k != 0: -[k = q-1] - G(chi_u, 1/lambda_k)/(q-1)."""
    ring = CycloRing(ctx)
    g = gauss_sum(ring, u, inverse_index(k, ctx.q))
    num = -g - (ring.integer(ctx.q - 1) if k == ctx.q - 1 else ring.zero)
    return ScaledCyclo(num, ctx.q - 1)


# -- verifications ----------------------------------------------------------


def verify_similarity(t: FuncTable) -> bool:
    """C T = T A, i.e. C = T A T^-1 (exact products, small q only)."""
    ctx = t.ctx
    C, A, T = correlation_matrix(t), ultrametric_matrix(t), change_of_basis(ctx)
    return (C @ T) == (T @ A)


def verify_reduction(t: FuncTable) -> CheckReport:
    """A[j, i] mod p equals the coefficient of X^i in F^j."""
    ctx = t.ctx
    A = ultrametric_matrix(t)
    res = A.residues()
    devs = []
    for j in range(ctx.q):
        coeffs = interpolate(power_table(t, j)).coeffs
        for i in np.flatnonzero(coeffs != res[j]):
            devs.append(Deviation((j, int(i)), int(coeffs[i]), int(res[j, i])))
    return _report(ctx.q * ctx.q, devs)


def verify_base_conversion(ctx: FieldCtx) -> CheckReport:
    """Valuations of the change of basis between additive and multiplicative characters.

    For nontrivial chi_u, lambda_k: ord T[u, k] = s_p(k), ord Tinv[k, u] = -s_p(k),
    and the trivial row T[0, k] vanishes.  Also checks T Tinv = 1 exactly.
    """
    ds = digit_sums(ctx.p, ctx.n)
    T, Ti = change_of_basis(ctx), change_of_basis_inverse(ctx)
    devs, checked = [], 0
    for k in range(1, ctx.q):
        want = int(ds[k])
        checked += 1
        if not T.entry(0, k).num.is_zero:
            devs.append(Deviation(("T", 0, k), 0, "nonzero"))
        for u in range(1, ctx.q):
            checked += 2
            got = T.valuation(u, k).ord_pi
            if got != want:
                devs.append(Deviation(("T", u, k), want, got))
            got = Ti.valuation(k, u).ord_pi
            if got != -want:
                devs.append(Deviation(("Tinv", k, u), -want, got))
    if ctx.q <= 27:
        checked += 1
        if not is_identity(T @ Ti):
            devs.append(Deviation(("T Tinv",), "identity", "differs"))
    return _report(checked, devs)


def is_identity(M: CharMatrix) -> bool:
    q = M.shape[0]
    gr = np.zeros_like(M.gr)
    gr[np.arange(q), np.arange(q), 0, 0] = 1
    return M == CharMatrix(M.ring, gr, 1)


def _valuations(M: CharMatrix, rows, cols) -> dict:
    return {(i, j): M.valuation(i, j).ord_pi for i in rows for j in cols}


def min_correlation_valuation(C: CharMatrix) -> int:
    q = C.shape[0]
    vals = [v for v in _valuations(C, range(1, q), range(1, q)).values() if v is not None]
    return min(vals)


def planar_via_valuation(t: FuncTable) -> bool:
    """Planar iff every nontrivial C entry has ord_pi = -n(p-1)/2."""
    ctx = t.ctx
    C = correlation_matrix(t)
    target = -ctx.n * (ctx.p - 1) // 2
    if ctx.n * (ctx.p - 1) % 2:
        return False
    for v in range(1, ctx.q):
        for u in range(ctx.q):
            if C.valuation(v, u).ord_pi != target:
                return False
    return True


def planar_via_norm(t: FuncTable) -> bool:
    """Planar iff q |C[v,u]|^2 = 1 for v != 0 (exact bent check)."""
    ctx = t.ctx
    C = correlation_matrix(t)
    ring = C.ring
    for v in range(1, ctx.q):
        for u in range(ctx.q):
            x = ring.elem(C.canon[v, u])
            if x * x.conj() != ring.integer(ctx.q):
                return False
    return True


def verify_valuation_bound(t: FuncTable) -> CheckReport:
    """ord A[j, i] >= s_p(i) - s_p(j) + min ord C over nontrivial characters.

    Rows j of A are powers and columns i monomials; the bound is in pi units.
    """
    ctx = t.ctx
    ds = digit_sums(ctx.p, ctx.n)
    C, A = correlation_matrix(t), ultrametric_matrix(t)
    cmin = min_correlation_valuation(C)
    devs, checked = [], 0
    for j in range(1, ctx.q):
        for i in range(1, ctx.q):
            v = A.valuation(j, i).ord_pi
            checked += 1
            bound = int(ds[i]) - int(ds[j]) + cmin
            if v is not None and v < bound:
                devs.append(Deviation((j, i), f">= {bound}", v))
    return _report(checked, devs)


def verify_degree_consequence(t: FuncTable) -> CheckReport:
    """For planar F: X^i cannot occur in F^j when 2(s_p(i) - s_p(j)) > n(p-1)."""
    ctx = t.ctx
    ds = digit_sums(ctx.p, ctx.n)
    devs, checked = [], 0
    for j in range(1, ctx.q):
        coeffs = interpolate(power_table(t, j)).coeffs
        for i in np.flatnonzero(coeffs):
            checked += 1
            if 2 * (int(ds[i]) - int(ds[j])) > ctx.n * (ctx.p - 1):
                devs.append(Deviation((j, int(i)), 0, int(coeffs[i])))
    return _report(checked, devs)
