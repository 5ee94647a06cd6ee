import cmath

import numpy as np
import pytest
from hypothesis import given, strategies as st

from planarlab.cyclo import (
    CycloRing,
    ScaledCyclo,
    cyclotomic_poly,
    euler_phi,
    p_adic_ord,
    pi_valuation,
)

from .oracles import complex_value, field

RINGS = [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (3, 3)]


def ring_of(p, n=1):
    return CycloRing(field(p, n))


def random_elem(ring, data, lo=-4, hi=4):
    vals = data.draw(
        st.lists(st.integers(lo, hi), min_size=ring.shape[0] * ring.shape[1], max_size=ring.shape[0] * ring.shape[1])
    )
    return ring.elem(np.array(vals, dtype=object).reshape(ring.shape))


@pytest.mark.parametrize("N", [1, 2, 3, 4, 6, 8, 12, 15, 24, 26, 80])
def test_cyclotomic_poly_roots(N):
    f = cyclotomic_poly(N)
    assert len(f) - 1 == euler_phi(N)
    z = cmath.exp(2j * cmath.pi / N)
    assert abs(sum(c * z**i for i, c in enumerate(f))) < 1e-8


def test_euler_phi():
    assert [euler_phi(k) for k in (1, 2, 8, 26, 80)] == [1, 1, 4, 12, 32]


@pytest.mark.parametrize("p,n", RINGS)
def test_reduction_preserves_complex_value(p, n, rng):
    ring = ring_of(p, n)
    zp, zn = cmath.exp(2j * cmath.pi / p), cmath.exp(2j * cmath.pi / ring.N)
    for _ in range(5):
        gr = rng.integers(-3, 4, size=ring.group_shape)
        direct = sum(int(c) * zp**a * zn**b for (a, b), c in np.ndenumerate(gr))
        assert abs(complex_value(ring, ring.reduce(gr)) - direct) < 1e-6


@given(st.sampled_from(RINGS), st.data())
def test_ring_ops_match_complex_embedding(pn, data):
    ring = ring_of(*pn)
    x, y = random_elem(ring, data), random_elem(ring, data)
    cx, cy = complex_value(ring, x.coeffs), complex_value(ring, y.coeffs)
    assert abs(complex_value(ring, (x * y).coeffs) - cx * cy) < 1e-6
    assert abs(complex_value(ring, (x + y).coeffs) - (cx + cy)) < 1e-9
    assert abs(complex_value(ring, x.conj().coeffs) - cx.conjugate()) < 1e-6
    assert x * y == y * x
    assert (x - x).is_zero


@given(st.sampled_from(RINGS), st.data())
def test_residue_is_a_ring_homomorphism(pn, data):
    ring = ring_of(*pn)
    ctx = ring.ctx
    x, y = random_elem(ring, data), random_elem(ring, data)
    assert (x * y).residue() == ctx.mul(x.residue(), y.residue())
    assert (x + y).residue() == ctx.add(x.residue(), y.residue())
    assert ring.monomial(1, 0).residue() == 1
    assert ring.monomial(0, 1).residue() == ctx.g


@pytest.mark.parametrize("p,n", RINGS)
def test_valuation_examples(p, n):
    ring = ring_of(p, n)
    assert pi_valuation(ring.integer(p)).ord_pi == p - 1
    assert pi_valuation(ring.one).ord_pi == 0
    assert pi_valuation(ring.zero).infinite
    assert pi_valuation(ring.integer(p * p)).value == 2
    pi = ring.monomial(1, 0) - 1
    acc = ring.one
    for k in range(1, 2 * p):
        acc = acc * pi
        assert pi_valuation(acc).ord_pi == k
    for b in range(ring.N):
        assert pi_valuation(ring.monomial(0, b)).ord_pi == 0


@given(st.sampled_from([(3, 1), (5, 1), (3, 2), (7, 1)]), st.data())
def test_valuation_is_additive(pn, data):
    ring = ring_of(*pn)
    x, y = random_elem(ring, data, -2, 2), random_elem(ring, data, -2, 2)
    if x.is_zero or y.is_zero:
        return
    vx, vy = pi_valuation(x).ord_pi, pi_valuation(y).ord_pi
    assert pi_valuation(x * y).ord_pi == vx + vy
    s = pi_valuation(x + y)
    if not s.infinite:
        assert s.ord_pi >= min(vx, vy)


def test_galois_conjugations():
    ring = ring_of(3, 2)
    zp, zn = ring.monomial(1, 0), ring.monomial(0, 1)
    assert zp.conj_p() == ring.monomial(2, 0) and zn.conj_p() == zn
    assert zn.conj_N() == ring.monomial(0, -1) and zp.conj_N() == zp
    assert (zp * zn).conj() == ring.monomial(-1, -1)


def test_scaled_cyclo():
    ring = ring_of(3, 2)
    x = ScaledCyclo(ring.integer(6), 9)
    assert x.den == 3 and x.num == ring.integer(2)
    assert x.valuation().ord_pi == -2
    assert ScaledCyclo(ring.integer(1), 2) + ScaledCyclo(ring.integer(1), 2) == ScaledCyclo(ring.one, 1)
    assert ScaledCyclo(ring.integer(4), 5).residue() == ring.ctx.smul(pow(5, -1, 3) * 4 % 3, 1)
    with pytest.raises(ValueError):
        ScaledCyclo(ring.one, 3).residue()
    with pytest.raises(ValueError):
        ScaledCyclo(ring.one, 0)
    assert ScaledCyclo(ring.zero, 9).valuation().infinite


def test_p_adic_ord():
    assert p_adic_ord(81, 3) == 4 and p_adic_ord(10, 3) == 0
    with pytest.raises(ValueError):
        p_adic_ord(0, 3)


def test_shape_validation():
    ring = ring_of(3, 2)
    with pytest.raises(ValueError):
        ring.elem(np.zeros((3, 4)))
    assert ring.shape == (2, 4) and ring.group_shape == (3, 8)
