import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from recipfilter.errors import ContextMismatchError, NotPrimitiveError
from recipfilter.gf2_field import (
    BinaryPolynomial,
    CyclotomicCoset,
    FieldContext,
    coset_leader,
    coset_size,
    cyclotomic_cosets,
    default_primitive,
    discrete_log,
    exponent_inverse,
    field_context,
    is_primitive,
    minimal_polynomial,
    reciprocal_polynomial,
    trace,
    unit_cosets,
)

P = BinaryPolynomial.parse


# ------------------------------------------------------------------ oracles

def brute_order_of_x(mask):
    """Multiplicative order of x modulo the polynomial, by stepping."""
    d = mask.bit_length() - 1
    x, k = 0b10, 1
    while x != 1:
        x <<= 1
        if x >> d & 1:
            x ^= mask
        k += 1
        if k > 1 << d:
            return None
    return k


def brute_mod(a, m):
    """Schoolbook long division over GF(2)."""
    while a.bit_length() >= m.bit_length():
        a ^= m << (a.bit_length() - m.bit_length())
    return a


# ------------------------------------------------------------- polynomials

def test_poly_add_and_square():
    assert P("x^2+1") + P("x^2+x") == P("x+1")
    assert P("x+1") * P("x+1") == P("x^2+1")


def test_poly_remainder_against_long_division():
    # by hand: x^2 = x+1 and x^3 = 1 mod x^2+x+1, so x^5+x^3+1 -> (x+1)+1+1
    assert P("x^5+x^3+1") % P("x^2+x+1") == P("x+1")
    assert brute_mod(0b101001, 0b111) == 0b11


def test_poly_remainder_by_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        P("x^3+1") % BinaryPolynomial(0)


@pytest.mark.parametrize("text, mask", [
    ("x^5+x^3+1", 0x29),
    (" x^5 + x^3 + 1 ", 0x29),
    ("0x29", 0x29),
    ("x", 0b10),
    ("1", 1),
    ("x^2+x+x", 0b100),
])
def test_poly_parse(text, mask):
    assert P(text).coeffs == mask


@pytest.mark.parametrize("bad", ["", "x^", "y^2+1", "x^2++1", "0xZZ", "2x"])
def test_poly_parse_rejects_malformed(bad):
    with pytest.raises(ValueError):
        P(bad)


def test_poly_format_round_trip():
    for mask in range(1, 300):
        p = BinaryPolynomial(mask)
        assert P(str(p)) == p
        assert P(p.hex()) == p


@given(st.integers(0, 1 << 40), st.integers(1, 1 << 20))
def test_divmod_identity(a, b):
    q, r = divmod(BinaryPolynomial(a), BinaryPolynomial(b))
    assert (q * BinaryPolynomial(b) + r).coeffs == a
    assert r.degree < BinaryPolynomial(b).degree


# ------------------------------------------------------------- reciprocals

@pytest.mark.parametrize("p, expected", [
    ("x^5+x^4+x^3+x^2+1", "x^5+x^3+x^2+x+1"),
    ("x^5+x^3+1", "x^5+x^2+1"),
    ("x^2+x+1", "x^2+x+1"),
])
def test_reciprocal_polynomial(p, expected):
    assert reciprocal_polynomial(P(p)) == P(expected)


def test_reciprocal_requires_constant_term():
    with pytest.raises(ValueError):
        reciprocal_polynomial(P("x^3+x"))


@given(st.integers(1, 1 << 16).map(lambda m: m | 1))
def test_reciprocal_involution_and_primitivity(mask):
    p = BinaryPolynomial(mask)
    r = reciprocal_polynomial(p)
    assert reciprocal_polynomial(r) == p
    assert is_primitive(p) == is_primitive(r)


# -------------------------------------------------------------- primitivity

@pytest.mark.parametrize("p, expected", [
    ("x^5+x^3+1", True),
    ("x^4+x^3+x^2+x+1", False),
    ("x^2+x+1", True),
    ("x^4+x+1", True),
    ("x^4+1", False),
    ("x^5+x^4+1", False),
])
def test_is_primitive_examples(p, expected):
    assert is_primitive(P(p)) is expected


def test_x4_x3_x2_x_1_has_root_order_5():
    assert brute_order_of_x(0b11111) == 5


def test_is_primitive_matches_order_oracle():
    for d in range(2, 9):
        for mask in range((1 << d) | 1, 1 << (d + 1), 2):
            assert is_primitive(mask) == (brute_order_of_x(mask) == (1 << d) - 1), hex(mask)


def test_default_primitive():
    assert default_primitive(5) == P("x^5+x^2+1")
    assert default_primitive(2) == P("x^2+x+1")


# ------------------------------------------------------------------- fields

def test_context_rejects_non_primitive():
    with pytest.raises(NotPrimitiveError):
        FieldContext(P("x^4+x^3+x^2+x+1"))
    with pytest.raises(ValueError):
        FieldContext(P("x^25+x^3+1"))


def test_order_example():
    ctx = field_context(P("x^5+x^3+1"))
    assert ctx.generator * ctx.alpha(30) == ctx.one


def test_power_of_alpha15():
    # 15 * 29 = 435 = 14 * 31 + 1
    ctx = field_context(P("x^5+x^3+1"))
    assert 15 * 29 % 31 == 1
    assert ctx.alpha(15) ** 29 == ctx.generator


def test_additive_identity_and_negative_powers():
    ctx = field_context(P("x^5+x^3+1"))
    z = ctx.alpha(7)
    assert ctx.zero + z == z
    assert z ** -1 == z.inverse()
    assert z ** -3 == ctx.alpha(-21) == ctx.alpha(10)
    assert ctx.zero ** 0 == ctx.one
    with pytest.raises(ZeroDivisionError):
        ctx.zero.inverse()


def test_context_mismatch():
    a = field_context(P("x^5+x^3+1")).generator
    b = field_context(P("x^5+x^2+1")).generator
    with pytest.raises(ContextMismatchError):
        a + b
    with pytest.raises(ContextMismatchError):
        a * b


def test_trace_examples():
    ctx = field_context(P("x^5+x^3+1"))
    assert trace(ctx.zero) == 0
    assert trace(ctx.one) == 1
    # alpha + alpha^2 + alpha^4 + alpha^8 + alpha^16 by repeated squaring of raw polynomials
    acc, x = 0, 0b10
    for _ in range(5):
        acc ^= x
        x = brute_mod(_raw_square(x), 0x29)
    assert acc in (0, 1)
    assert trace(ctx.generator) == acc == 0  # second bit of 1000010... is 0


def _raw_square(x):
    out = 0
    for i in range(x.bit_length()):
        if x >> i & 1:
            out |= 1 << (2 * i)
    return out


@pytest.mark.parametrize("modulus", ["x^2+x+1", "x^3+x+1", "x^5+x^3+1", "x^6+x+1", "x^8+x^4+x^3+x^2+1"])
def test_field_axioms_exhaustive(modulus):
    ctx = field_context(P(modulus))
    n = ctx.order
    for x in ctx.elements():
        assert trace(x * x) == trace(x)
        if x:
            assert x ** n == ctx.one
            assert x * x.inverse() == ctx.one
            assert ctx.alpha(discrete_log(x)) == x


@settings(max_examples=200)
@given(st.sampled_from(["x^5+x^3+1", "x^7+x+1", "x^10+x^3+1", "x^13+x^4+x^3+x+1"]),
       st.data())
def test_field_properties_random(modulus, data):
    ctx = field_context(P(modulus))
    x = ctx.element(data.draw(st.integers(0, ctx.order)))
    y = ctx.element(data.draw(st.integers(0, ctx.order)))
    assert trace(x + y) == trace(x) ^ trace(y)
    assert (x + y) * (x + y) == x * x + y * y
    assert x * y == y * x
    if x:
        assert x / x == ctx.one


def test_large_field_without_tables():
    ctx = field_context(default_primitive(22))
    x = ctx.alpha(123456)
    assert x.log() == 123456
    assert x * x.inverse() == ctx.one
    assert trace(x * x) == trace(x)


def test_discrete_log_examples():
    ctx = field_context(P("x^5+x^3+1"))
    assert discrete_log(ctx.one) == 0
    assert discrete_log(ctx.generator) == 1
    assert discrete_log(ctx.generator ** 24) == 24
    with pytest.raises(ValueError):
        discrete_log(ctx.zero)


# ------------------------------------------------------------------- cosets

def test_cosets_L5_leaders():
    assert [c.leader for c in cyclotomic_cosets(5)] == [0, 1, 3, 5, 7, 11, 15]


def test_cosets_L3():
    assert [c.elements for c in cyclotomic_cosets(3)] == [(0,), (1, 2, 4), (3, 6, 5)]


def test_coset_of_5_mod_15():
    coset = next(c for c in cyclotomic_cosets(4) if 5 in c.elements)
    assert set(coset.elements) == {5, 10}
    assert coset.size == 2


@pytest.mark.parametrize("L", range(2, 13))
def test_coset_partition(L):
    n = (1 << L) - 1
    seen = []
    for c in cyclotomic_cosets(L):
        assert c.leader == min(c.elements)
        assert len(set(c.elements)) == c.size
        assert L % c.size == 0
        assert {e.bit_count() for e in c.elements} == {c.weight}
        assert coset_size(c.leader, L) == c.size
        seen.extend(c.elements)
    assert sorted(seen) == list(range(n))


@given(st.integers(2, 16), st.integers(0, 1 << 20))
def test_coset_leader_index(L, e):
    n = (1 << L) - 1
    leader, j = coset_leader(e, L)
    assert leader * (1 << j) % n == e % n
    assert leader == min(e % n * (1 << i) % n for i in range(L))


def test_unit_cosets_examples():
    assert [c.elements for c in unit_cosets(4)] == [(1, 2, 4, 8), (7, 14, 13, 11)]
    six = unit_cosets(6)
    assert len(six) == 6
    assert (11, 22, 44, 25, 50, 37) in [c.elements for c in six]
    five = unit_cosets(5)
    assert len(five) == 6
    assert sorted(e for c in five for e in c.elements) == list(range(1, 31))


@pytest.mark.parametrize("L", range(2, 17))
def test_unit_coset_count_matches_totient(L):
    n = (1 << L) - 1
    phi = sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)
    assert len(unit_cosets(L)) * L == phi


def test_exponent_inverse():
    assert exponent_inverse(15, 5) == 29
    assert exponent_inverse(1, 9) == 1
    assert exponent_inverse(7, 4) == 13
    with pytest.raises(ValueError):
        exponent_inverse(3, 4)


# ------------------------------------------------------ minimal polynomials

def test_minimal_polynomial_examples():
    ctx = field_context(P("x^5+x^4+x^3+x^2+1"))
    assert minimal_polynomial(ctx, 1) == ctx.modulus
    assert minimal_polynomial(ctx, 3) == P("x^5+x^4+x^2+x+1")
    assert minimal_polynomial(ctx, 5) == P("x^5+x^3+1")
    assert minimal_polynomial(ctx, 15) == P("x^5+x^3+x^2+x+1")
    assert minimal_polynomial(ctx, 14) == P("x^5+x^4+x^3+x+1")
    assert minimal_polynomial(ctx, 13) == P("x^5+x^2+1")


@pytest.mark.parametrize("modulus", ["x^4+x+1", "x^5+x^3+1", "x^6+x+1"])
def test_minimal_polynomial_against_brute_search(modulus):
    ctx = field_context(P(modulus))
    for c in cyclotomic_cosets(ctx.L):
        mp = minimal_polynomial(ctx, c.leader)
        root = ctx.alpha(c.leader)
        assert mp.degree == c.size
        # the unique monic polynomial of that degree vanishing at the root
        candidates = [BinaryPolynomial(m) for m in range(1 << c.size, 1 << (c.size + 1))
                      if not BinaryPolynomial(m).evaluate(root)]
        assert candidates == [mp]
        for e in c.elements:
            assert minimal_polynomial(ctx, e) == mp


def conjugate_product(ctx, e):
    """prod (x - alpha^c) over the coset of e, expanded with field arithmetic."""
    coeffs = [ctx.one]
    for c in CyclotomicCoset(coset_leader(e, ctx.L)[0], ctx.L).elements:
        root = ctx.alpha(c)
        shifted = [ctx.zero] + coeffs
        for i, a in enumerate(coeffs):
            shifted[i] = shifted[i] + a * root
        coeffs = shifted
    assert all(a.bits in (0, 1) for a in coeffs)
    return BinaryPolynomial(sum(a.bits << i for i, a in enumerate(coeffs)))


@pytest.mark.parametrize("modulus", ["x^6+x+1", "x^8+x^4+x^3+x^2+1", "x^9+x^4+1"])
def test_minimal_polynomial_against_conjugate_product(modulus):
    ctx = field_context(P(modulus))
    for c in cyclotomic_cosets(ctx.L):
        assert minimal_polynomial(ctx, c.leader) == conjugate_product(ctx, c.leader)


def test_minimal_polynomial_large_field():
    ctx = field_context(default_primitive(24))
    assert minimal_polynomial(ctx, 1) == ctx.modulus
    assert minimal_polynomial(ctx, (1 << 23) - 1) == reciprocal_polynomial(ctx.modulus)
