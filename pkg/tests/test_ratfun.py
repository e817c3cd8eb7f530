from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hahnroot.ffield import field_ctx
from hahnroot.ratfun import RatFun, laurent_terms, leading_term, rebase, to_text


F3 = field_ctx(3)


def ratfuns(p=3, max_exp=4, M=1):
    ctx = field_ctx(p)

    def build(num_items, den_items):
        num = {e: ctx.from_int(c) for e, c in num_items.items() if c % p}
        den = {e: ctx.from_int(c) for e, c in den_items.items() if c % p}
        if not den:
            den = {0: ctx.one}
        return RatFun(ctx, M, num, den)

    items = st.dictionaries(st.integers(-max_exp, max_exp), st.integers(0, p - 1), max_size=3)
    return st.builds(build, items, items)


def test_leading_term_of_monomial():
    a = RatFun.from_t_coeffs(F3, {0: 1}, {1: 1})  # 1/t
    assert leading_term(a) == (Fraction(-1), F3.one)


def test_leading_term_with_laurent_oracle():
    # (t^2 - t)/t^4 = -t^-3 + t^-2; the long-division oracle confirms it
    a = RatFun.from_t_coeffs(F3, {2: 1, 1: -1}, {4: 1})
    terms = laurent_terms(a, 3)
    assert terms == [(Fraction(-3), F3.from_int(2)), (Fraction(-2), F3.one)]
    assert leading_term(a) == terms[0] == (Fraction(-3), F3.from_int(2))


def test_leading_term_after_cancellation():
    # u^2 (1+u) / (1+u) at M = 3 is the monomial t^(2/3)
    one_plus_u = {0: F3.one, 1: F3.one}
    num = {2: F3.one, 3: F3.one}
    a = RatFun(F3, 3, num, one_plus_u)
    assert leading_term(a) == (Fraction(2, 3), F3.one)


def test_leading_term_of_zero_signals():
    with pytest.raises(ZeroDivisionError):
        leading_term(RatFun.zero(F3))
    assert RatFun.zero(F3).valuation() == float("inf")


def test_rebase_monomials():
    t = RatFun.t_power(F3, 1)
    r = rebase(t, 2)
    assert r.M == 2 and r.num == {2: F3.one}
    inv = RatFun.t_power(F3, -1)
    r = rebase(inv, 6)
    assert r.M == 6 and r.num == {-6: F3.one}


def test_rebase_rejects_non_multiple():
    with pytest.raises(ValueError):
        rebase(RatFun.t_power(F3, 1, M=2), 3)


@given(ratfuns())
@settings(max_examples=50, deadline=None)
def test_rebase_preserves_leading_term(a):
    if a.is_zero():
        return
    assert leading_term(rebase(a, 3 * a.M)) == leading_term(a)


@given(ratfuns(), ratfuns(), ratfuns())
@settings(max_examples=40, deadline=None)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    if not a.is_zero():
        assert a * a.inverse() == RatFun.one(a.ctx, a.M)


@given(ratfuns(), ratfuns())
@settings(max_examples=50, deadline=None)
def test_leading_term_multiplicativity(a, b):
    if a.is_zero() or b.is_zero():
        return
    va, ca = leading_term(a)
    vb, cb = leading_term(b)
    assert leading_term(a * b) == (va + vb, ca * cb)


@given(ratfuns(), ratfuns())
@settings(max_examples=50, deadline=None)
def test_ultrametric_inequality(a, b):
    v = (a + b).valuation()
    va, vb = a.valuation(), b.valuation()
    assert v >= min(va, vb)
    if va != vb:
        assert v == min(va, vb)


def test_pow_uses_frobenius_in_char_p():
    a = RatFun.from_t_coeffs(F3, {0: 1, 1: 1})  # 1 + t
    cubed = a**3
    assert cubed == RatFun.from_t_coeffs(F3, {0: 1, 3: 1})


def test_text_round_trip_shapes():
    a = RatFun.from_t_coeffs(F3, {0: 1}, {1: 1})
    assert to_text(a) == "1/t"
    b = RatFun.from_t_coeffs(F3, {2: 1, 0: 1}, {3: 1})
    assert to_text(b) == "(t^2 + 1)/t^3"
    assert to_text(RatFun.from_t_coeffs(F3, {1: 2})) == "2*t"
