import random

import pytest
from hypothesis import given, settings, strategies as st

from regcalc.generic import (
    GenericityError,
    annihilator_status,
    filter_regular_element,
    gin,
    initial_ideal,
    quotient_by_linear,
    random_change,
    substitute,
    _det_mod_p,
)
from regcalc.hilbert import hilbert_series
from regcalc.polyring import GREVLEX, LEX, Poly, parse_poly
from regcalc.resolution import GradedModuleP, regularity_betti

from conftest import brute_hilbert, brute_member, polys, quotient, ring


def strs(ps):
    return sorted(str(p) for p in ps)


def test_x_is_rejected_y_accepted():
    R = ring(2)
    S = quotient(R, "x^2", "x*y")
    assert annihilator_status(S, parse_poly(R, "x")) == (False, False)
    finite, regular = annihilator_status(S, parse_poly(R, "y"))
    assert finite and not regular


def test_filter_regular_on_x2_xy():
    R = ring(2)
    S = quotient(R, "x^2", "x*y")
    x, cert = filter_regular_element([S], seed=3)
    assert x.degree == 1 and cert.verified and cert.attempts >= 1
    # a valid form must involve y
    assert R.pack((0, 1)) in x.raw


def test_regular_element_recorded():
    R = ring(3)
    S = quotient(R, "x^2", "y^2")  # depth 1
    x, cert = filter_regular_element([S], seed=0, names=["S"])
    assert cert.regular == [True]
    assert cert.modules == ["S"]


def test_filter_regular_budget_exhausted():
    # over F_2 each of x, y, x+y divides xy(x+y), so every form is a zero divisor
    R = ring(2, p=2)
    S = quotient(R, "x^2*y + x*y^2")
    with pytest.raises(GenericityError):
        filter_regular_element([S], seed=0, max_attempts=5)


def test_initial_ideals():
    R = ring(2)
    assert strs(initial_ideal(R, polys(R, "x^2", "x*y + y^2"))) == ["x*y", "x^2", "y^3"]
    assert strs(initial_ideal(R, polys(R, "x^2", "y^3"))) == ["x^2", "y^3"]
    assert strs(initial_ideal(R, polys(R, "x + y"), LEX)) == ["x"]


def test_gin_examples():
    R = ring(2)
    m2 = polys(R, "x^2", "x*y", "y^2")
    g, cert = gin(R, m2, seed=5)
    assert strs(g) == ["x*y", "x^2", "y^2"] and cert.verified
    g, _ = gin(R, polys(R, "x*y"), seed=5)
    assert strs(g) == ["x^2"]
    g, _ = gin(R, polys(R, "x^2"), seed=5)
    assert strs(g) == ["x^2"]


def test_gin_of_zero_ideal_rejected():
    with pytest.raises(ValueError):
        gin(ring(2), [])


def test_quotient_by_linear():
    R = ring(2)
    S = quotient(R, "x^2", "x*y")
    Q = quotient_by_linear(S, parse_poly(R, "y"))
    assert hilbert_series(Q).values(0, 3) == [1, 1, 0, 0]
    R3 = ring(3)
    Q = quotient_by_linear(GradedModuleP.free(R3, [0]), parse_poly(R3, "x"))
    assert hilbert_series(Q).values(0, 4) == [d + 1 for d in range(5)]
    with pytest.raises(ValueError):
        quotient_by_linear(S, parse_poly(R, "x^2"))


def test_lemma_a7_ii_instance():
    R = ring(2)
    S = quotient(R, "x^2", "x*y")
    Q = quotient_by_linear(S, parse_poly(R, "y"))
    assert regularity_betti(S) == max(regularity_betti(Q), 1) == 1


def test_substitution_is_a_ring_map():
    R = ring(3)
    rng = random.Random(1)
    g = random_change(R, rng)
    assert _det_mod_p(g, R.char_p)
    f, h = parse_poly(R, "x^2 + y*z"), parse_poly(R, "x - 3*z")
    assert substitute(f * h, g) == substitute(f, g) * substitute(h, g)
    assert substitute(f + h * h, g) == substitute(f, g) + substitute(h, g) * substitute(h, g)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=15, deadline=None)
def test_gin_preserves_hilbert_function(seed):
    rng = random.Random(seed)
    R = ring(3)
    gens = []
    for _ in range(rng.randint(1, 3)):
        d = rng.randint(2, 3)
        monos = R.monomials_of_degree(d)
        gens.append(Poly(R, {m: rng.randrange(1, R.char_p) for m in rng.sample(monos, rng.randint(1, 3))}))
    g, cert = gin(R, gens, GREVLEX, seed)
    assert all(len(m.raw) == 1 for m in g)
    for j in range(6):
        assert brute_hilbert(R, g, j) == brute_hilbert(R, gens, j)
    # running gin again on the output gives the output back
    again, _ = gin(R, g, GREVLEX, seed + 1)
    assert strs(again) == strs(g)


def test_initial_ideal_elements_are_leads():
    R = ring(3)
    gens = polys(R, "x^2 - y*z", "x*y - z^2")
    lead = initial_ideal(R, gens)
    # the same Hilbert function as the ideal, by linear algebra
    for j in range(6):
        assert brute_hilbert(R, lead, j) == brute_hilbert(R, gens, j)
    assert brute_member(R, gens, parse_poly(R, "x^2 - y*z"))
