import numpy as np
import pytest
from hypothesis import given, strategies as st

from planarlab.digitkit import (
    DigitVec,
    StarMonoid,
    cl_triage,
    cyclic_shift,
    d_form,
    digit_sum,
    digits_of,
    pair_sums,
    star,
)

from .oracles import field


def naive_digit_sum(x, b):
    return sum(int(c, 36) for c in np.base_repr(x, b))


def test_digits_examples():
    assert digits_of(42, 5, 3).digits == (2, 3, 1)
    assert digits_of(42, 3, 4).digits == (0, 2, 1, 1)
    assert digit_sum(42, 3) == 4
    assert digit_sum(42, 5) == 6


def test_digits_reject_overflow_and_bad_base():
    with pytest.raises(ValueError):
        digits_of(125, 5, 3)
    with pytest.raises(ValueError):
        digit_sum(3, 1)
    with pytest.raises(ValueError):
        DigitVec(5, (5,))


@given(st.integers(2, 36), st.integers(0, 10**9))
def test_digit_sum_matches_base_repr(b, x):
    assert digit_sum(x, b) == naive_digit_sum(x, b)


@given(st.integers(2, 12), st.integers(1, 8), st.data())
def test_digit_roundtrip(b, n, data):
    x = data.draw(st.integers(0, b**n - 1))
    v = digits_of(x, b, n)
    assert v.value == x and v.length == n and v.digit_sum == digit_sum(x, b)


def test_star_examples():
    assert star(0, 5, 9) == 0
    assert star(4, 4, 9) == 8
    assert star(3, 5, 25) == 15


@given(st.sampled_from([3, 5, 7, 9, 25, 27, 49, 81]), st.data())
def test_star_monoid_laws(q, data):
    el = st.integers(0, q - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert star(a, b, q) == star(b, a, q)
    assert star(star(a, b, q), c, q) == star(a, star(b, c, q), q)
    assert star(1, a, q) == a
    assert star(0, a, q) == 0
    assert 0 <= star(a, b, q) <= q - 1


@pytest.mark.parametrize("p,n", [(3, 2), (5, 2), (7, 1), (3, 3)])
def test_star_models_composition_of_monomials(p, n):
    ctx = field(p, n)
    xs = ctx.elements()
    for e in range(1, ctx.q):
        for d in {1, 2, min(ctx.p + 1, ctx.q - 1), ctx.q - 2, ctx.q - 1}:
            assert np.array_equal(ctx.pow(ctx.pow(xs, d), e), ctx.pow(xs, star(e, d, ctx.q)))


def test_star_monoid_power():
    m = StarMonoid(9)
    assert m.power(2, 3) == 8
    assert list(m.elements) == list(range(9))
    with pytest.raises(ValueError):
        StarMonoid(2)


def test_from_bracket_normalizes_and_maps_zero_residue_to_top():
    assert DigitVec.from_bracket([7, 0], 5).value == 7
    assert DigitVec.from_bracket([4, 4], 5).digits == (4, 4)
    assert DigitVec.from_bracket([-1, 1], 5).value == 4


def test_d_form_examples():
    assert d_form(3, (), 0, 7) == 206
    assert d_form(1, (), 0, 7) == 302
    assert d_form(3, (5,), 0, 7) == 3860
    assert 3860 % 342 == 98 and 206 % 48 == 14
    assert digits_of(302, 7, 4).digits == (1, 1, 6, 0)
    assert digits_of(d_form(2, (), 0, 5), 5, 4).digits == (2, 1, 3, 0)


def test_d_form_rejects_bad_digits():
    with pytest.raises(ValueError):
        d_form(0, (), 0, 7)
    with pytest.raises(ValueError):
        d_form(3, (7,), 0, 7)


@given(st.sampled_from([5, 7, 11]), st.integers(0, 2), st.data())
def test_d_form_congruent_to_two_shift(p, s, data):
    r = data.draw(st.integers(0, 2))
    t = data.draw(st.integers(1, p - 1))
    us = tuple(data.draw(st.lists(st.integers(0, p - 1), min_size=s, max_size=s)))
    m = r + s + 2
    d = d_form(t, us, r, p)
    assert d % (p**m - 1) == 2 * p ** (m - 1) % (p**m - 1)
    v = digits_of(d, p, 2 * m)
    label = cl_triage(v)
    assert label.kind == 3 and label.shift == 0
    assert (label.t, label.us, label.r) == (t, us, r)


@given(st.integers(2, 16), st.integers(0, 10**6))
def test_digit_sum_congruent_mod_base_minus_one(b, x):
    assert (digit_sum(x, b) - x) % (b - 1) == 0


@given(st.integers(2, 10), st.integers(0, 10**5), st.integers(0, 10**5))
def test_digit_sum_subadditive(b, x, y):
    assert digit_sum(x + y, b) <= digit_sum(x, b) + digit_sum(y, b)


def test_star_monoid_exhaustive_small():
    q = 3**3
    S = range(q)
    for a in S:
        assert star(a, 1, q) == a and star(a, 0, q) == 0
        for b in S:
            assert star(a, b, q) == star(b, a, q)
            for c in (2, 5, 13, 26):
                assert star(star(a, b, q), c, q) == star(a, star(b, c, q), q)


@pytest.mark.parametrize("p,m", [(3, 2), (5, 2), (7, 2), (3, 3)])
def test_triage_covers_every_two_shift_exponent(p, m):
    n, mod = 2 * m, p**m - 1
    target = 2 * p ** (m - 1) % mod
    count = 0
    for d in range(target, p**n - 1, mod):
        assert cl_triage(digits_of(d, p, n)) is not None, d
        count += 1
    assert count > 0


def test_cyclic_shift_multiplies_by_base():
    v = digits_of(2, 3, 3)
    assert cyclic_shift(v, 2).digits == (0, 0, 2)
    assert cyclic_shift(digits_of(18, 3, 3), 1).digits == (2, 0, 0)
    v = digits_of(100, 5, 4)
    assert cyclic_shift(v, 0) == v
    assert cyclic_shift(cyclic_shift(v, 3), 1) == v
    assert sorted(cyclic_shift(v, 2).digits) == sorted(v.digits)


@given(st.integers(3, 9), st.integers(1, 6), st.data())
def test_cyclic_shift_value(b, n, data):
    x = data.draw(st.integers(0, b**n - 2))
    k = data.draw(st.integers(0, 2 * n))
    assert cyclic_shift(digits_of(x, b, n), k).value == x * b**k % (b**n - 1)


def test_triage_cases():
    assert cl_triage(digits_of(14, 7, 4)).kind == 1
    with pytest.raises(ValueError):
        cl_triage(digits_of(14, 7, 3))
    assert cl_triage(DigitVec(7, (0, 6, 6, 2))).kind == 2
    lab = cl_triage(digits_of(206, 7, 4))
    assert (lab.kind, lab.t, lab.r, lab.us) == (3, 3, 0, ())
    assert pair_sums(digits_of(206, 7, 4)) == (7, 1)
    assert cl_triage(DigitVec(7, (1, 1, 1, 1))) is None
