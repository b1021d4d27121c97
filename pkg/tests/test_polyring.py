from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from regcalc.polyring import (
    GREVLEX,
    LEX,
    GradedRing,
    Monomial,
    Poly,
    PolyParseError,
    RingMismatch,
    compare_monomials,
    format_poly,
    is_prime,
    parse_poly,
    poly_arith,
)

from conftest import exps_of_degree, ring


def test_square_of_variable():
    R = ring(2)
    x, y = R.gens()
    assert poly_arith(x, x, "mul") == parse_poly(R, "x^2")


def test_additive_inverse():
    R = ring(2)
    f = parse_poly(R, "x + y")
    assert poly_arith(f, f, "sub").is_zero()


def test_binomial_square():
    R = ring(2)
    f = parse_poly(R, "x + y")
    assert f * f == parse_poly(R, "x^2 + 2*x*y + y^2")
    # small characteristic: the cross term vanishes
    R2 = ring(2, p=2)
    g = parse_poly(R2, "x + y")
    assert g * g == parse_poly(R2, "x^2 + y^2")


def test_grevlex_same_degree():
    assert compare_monomials(Monomial((2, 0)), Monomial((1, 1)), GREVLEX) == 1


def test_lex_ignores_degree():
    assert compare_monomials(Monomial((1, 0, 0)), Monomial((0, 5, 0)), LEX) == 1


def _textbook_grevlex_greater(a, b):
    if sum(a) != sum(b):
        return sum(a) > sum(b)
    diff = [x - y for x, y in zip(a, b)]
    nz = [d for d in diff if d]
    return bool(nz) and nz[-1] < 0


def test_grevlex_xz_below_y2():
    assert compare_monomials(Monomial((1, 0, 1)), Monomial((0, 2, 0)), GREVLEX) == -1
    monos = exps_of_degree(3, 2)
    for a, b in product(monos, repeat=2):
        want = 1 if _textbook_grevlex_greater(a, b) else (0 if a == b else -1)
        assert compare_monomials(Monomial(a), Monomial(b), GREVLEX) == want


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        compare_monomials(Monomial((1, 0)), Monomial((1, 0, 0)))
    a, b = ring(2), ring(3)
    with pytest.raises(RingMismatch):
        a.gen(0) + b.gen(0)


def test_non_prime_characteristic():
    assert not is_prime(12)
    with pytest.raises(ValueError):
        GradedRing(2, 12)


def test_parse_errors_carry_columns():
    R = ring(2)
    with pytest.raises(PolyParseError) as e:
        parse_poly(R, "x^2 + z")
    assert e.value.column == 7
    with pytest.raises(PolyParseError):
        parse_poly(R, "x^")


def test_packing_round_trip():
    R = ring(4)
    for e in [(0, 0, 0, 0), (3, 1, 0, 2), (7, 0, 0, 11)]:
        assert R.unpack(R.pack(e)) == e
        assert R.mdeg(R.pack(e)) == sum(e)


expo = st.tuples(*[st.integers(0, 6)] * 3)


@given(expo, expo, expo)
def test_orders_multiplicative(a, b, c):
    for order in (GREVLEX, LEX):
        if compare_monomials(Monomial(a), Monomial(b), order) == 1:
            assert compare_monomials(Monomial(a) * Monomial(c), Monomial(b) * Monomial(c), order) == 1


@given(expo, expo)
def test_packed_divisibility_matches_exponents(a, b):
    R = ring(3)
    assert R.divides(R.pack(a), R.pack(b)) == all(x <= y for x, y in zip(a, b))
    assert R.unpack(R.lcm(R.pack(a), R.pack(b))) == tuple(max(x, y) for x, y in zip(a, b))


terms = st.dictionaries(expo, st.integers(-50, 50), max_size=6)


@given(terms)
def test_homogeneous_components_resum(t):
    R = ring(3)
    f = Poly(R, t)
    parts = f.homogeneous_components()
    total = R.zero()
    for d, g in parts.items():
        assert g.is_homogeneous() and g.degree == d
        total = total + g
    assert total == f


@given(terms, terms)
@settings(max_examples=60)
def test_arithmetic_matches_integers_mod_p(t1, t2):
    p = 101
    R = ring(3, p=p)
    f, g = Poly(R, t1), Poly(R, t2)
    prod = {}
    for (a, c), (b, d) in product(t1.items(), t2.items()):
        k = tuple(x + y for x, y in zip(a, b))
        prod[k] = prod.get(k, 0) + c * d
    want = {k: v % p for k, v in prod.items() if v % p}
    got = {R.unpack(m): c for m, c in (f * g).raw.items()}
    assert got == want
    s = {}
    for k, v in list(t1.items()) + list(t2.items()):
        s[k] = s.get(k, 0) + v
    assert {R.unpack(m): c for m, c in (f + g).raw.items()} == {k: v % p for k, v in s.items() if v % p}


@given(terms)
def test_format_parse_round_trip(t):
    R = ring(3)
    f = Poly(R, t)
    assert parse_poly(R, format_poly(R, f.raw)) == f
