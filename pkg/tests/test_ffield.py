import numpy as np
import pytest
from hypothesis import given, strategies as st

from planarlab.ffield import (
    is_irreducible,
    is_prime,
    make_ctx,
    minimal_polynomial,
    prime_power,
    subfield_restrict,
)

from .oracles import field

SMALL = [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (3, 3), (7, 2), (3, 4)]


def test_make_ctx_examples():
    assert field(3, 2).modulus == (1, 0, 1)
    assert field(7, 1).g == 3
    with pytest.raises(ValueError):
        make_ctx(2, 3)
    with pytest.raises(ValueError):
        make_ctx(9, 1)
    with pytest.raises(ValueError):
        make_ctx(3, 40)


def test_primality_against_sieve():
    N = 5000
    sieve = np.ones(N, bool)
    sieve[:2] = False
    for i in range(2, int(N**0.5) + 1):
        sieve[i * i :: i] = False
    assert [is_prime(k) for k in range(N)] == sieve.tolist()
    assert is_prime(2**61 - 1) and not is_prime(2**61 + 1)


def test_prime_power():
    assert prime_power(81) == (3, 4)
    assert prime_power(7) == (7, 1)
    assert prime_power(12) is None


@pytest.mark.parametrize("p,n", SMALL)
def test_modulus_is_least_irreducible_and_g_generates(p, n):
    ctx = field(p, n)
    assert is_irreducible(list(ctx.modulus), p) or n == 1
    assert ctx.is_generator(ctx.g)
    assert len(set(ctx.exp.tolist())) == ctx.q - 1
    xs = np.arange(1, ctx.q)
    assert np.array_equal(ctx.exp[ctx.log[xs]], xs)
    assert all(int(ctx.pow(ctx.g, int(ctx.log[x]))) == x for x in xs[:: max(1, ctx.q // 20)])


def test_modulus_minimality_for_f9():
    assert not is_irreducible([0, 0, 1], 3)
    assert is_irreducible([1, 0, 1], 3)


@pytest.mark.parametrize("p,n", SMALL)
def test_field_axioms_exhaustive(p, n):
    ctx = field(p, n)
    xs = ctx.elements()
    A, B = np.meshgrid(xs, xs, indexing="ij")
    prod = ctx.mul(A, B)
    # commutativity, identity, inverses
    assert np.array_equal(prod, prod.T)
    assert np.array_equal(ctx.mul(xs, 1), xs)
    nz = xs[1:]
    assert (ctx.mul(nz, ctx.inv(nz)) == 1).all()
    assert np.array_equal(ctx.add(A, B), ctx.add(B, A))
    assert (ctx.add(xs, ctx.neg(xs)) == 0).all()
    # distributivity on a slice of triples
    for c in xs[:: max(1, ctx.q // 7)]:
        assert np.array_equal(ctx.mul(c, ctx.add(A, B)), ctx.add(ctx.mul(c, A), ctx.mul(c, B)))


@pytest.mark.parametrize("p,n", SMALL)
def test_log_multiplication_matches_polynomial_multiplication(p, n):
    ctx = field(p, n)
    rng = np.random.default_rng(p * 100 + n)
    for a, b in rng.integers(0, ctx.q, size=(200, 2)):
        assert int(ctx.mul(int(a), int(b))) == ctx._mul_slow(int(a), int(b))


@pytest.mark.parametrize("p,n", SMALL)
def test_frobenius_closure_and_sum(p, n):
    ctx = field(p, n)
    xs = ctx.elements()
    assert np.array_equal(ctx.pow(xs, ctx.q), xs)
    assert ctx.sum(xs) == 0


@pytest.mark.parametrize("p,n", SMALL)
def test_trace_is_sum_of_conjugates_linear_and_onto(p, n):
    ctx = field(p, n)
    xs = ctx.elements()
    conj = xs.copy()
    acc = xs.copy()
    for _ in range(n - 1):
        conj = ctx.pow(conj, p)
        acc = ctx.add(acc, conj)
    tr = ctx.trace(xs)
    assert np.array_equal(acc, tr)
    assert set(tr.tolist()) == set(range(p))
    rng = np.random.default_rng(1)
    a, b = rng.integers(0, ctx.q, size=(2, 50))
    c = rng.integers(0, p, size=50)
    assert np.array_equal(ctx.trace(ctx.add(ctx.smul(c, a), b)), (c * ctx.trace(a) + ctx.trace(b)) % p)


def test_trace_examples():
    assert int(field(3, 2).trace(1)) == 2
    assert int(field(3, 2).trace(0)) == 0
    ctx = field(7)
    assert np.array_equal(ctx.trace(ctx.elements()), ctx.elements())


def test_dlog_examples_and_bsgs():
    ctx = field(3, 4)
    assert ctx.dlog(1) == 0 and ctx.dlog(ctx.g) == 1
    y = 1
    for _ in range(5):
        y = ctx._mul_slow(y, ctx.g)
    assert ctx.dlog(y) == 5
    big = make_ctx(3, 14, log_cap=10)
    assert not big.has_logtable
    x = big.pow(big.g, 123457)
    assert big.dlog(x) == 123457
    with pytest.raises(ValueError):
        ctx.dlog(0)


@given(st.sampled_from(SMALL), st.data())
def test_pow_matches_repeated_multiplication(pn, data):
    ctx = field(*pn)
    a = data.draw(st.integers(1, ctx.q - 1))
    k = data.draw(st.integers(-30, 30))
    y = 1
    for _ in range(abs(k)):
        y = ctx._mul_slow(y, a)
    if k < 0:
        y = int(ctx.inv(y))
    assert int(ctx.pow(a, k)) == y


@pytest.mark.parametrize("p,n,m", [(3, 4, 2), (3, 4, 1), (5, 2, 1), (3, 4, 4), (7, 2, 1)])
def test_subfield_embedding_is_homomorphism_onto_fixed_field(p, n, m):
    big = field(p, n)
    small, emb = subfield_restrict(big, m)
    xs = small.elements()
    A, B = np.meshgrid(xs, xs, indexing="ij")
    assert np.array_equal(emb(small.add(A, B)), big.add(emb(A), emb(B)))
    assert np.array_equal(emb(small.mul(A, B)), big.mul(emb(A), emb(B)))
    fixed = np.flatnonzero(big.pow(big.elements(), p**m) == big.elements())
    assert np.array_equal(emb.image, fixed)


def test_subfield_rejects_non_divisor():
    with pytest.raises(ValueError):
        subfield_restrict(field(3, 4), 3)


def test_minimal_polynomial_has_root():
    ctx = field(5, 2)
    for a in (ctx.g, 7, 13):
        f = minimal_polynomial(ctx, a)
        acc = 0
        for c in reversed(f):
            acc = ctx.add(ctx.mul(acc, a), c)
        assert acc == 0 and f[-1] == 1
