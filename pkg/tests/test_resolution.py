import random

import pytest
from hypothesis import given, settings, strategies as st

from regcalc.hilbert import hilbert_series
from regcalc.polyring import LEX, Poly
from regcalc.resolution import (
    NEG_INF,
    FreeResolution,
    GradedModuleP,
    betti_table,
    depth_ab,
    free_resolution,
    gen_degree,
    minimal_resolution,
    minimize,
    projective_dimension,
    regularity_betti,
)

from conftest import brute_hilbert, load_curated, polys, quotient, ring


def betti(M, order=None):
    return betti_table(M, order).nonzero() if order else betti_table(M).nonzero()


def test_free_module_has_length_zero():
    R = ring(2)
    res = minimal_resolution(GradedModuleP.free(R, [0]))
    assert res.length == 0 and res.twists[0] == [0]


def test_x2_xy_resolution():
    R = ring(2)
    res = minimal_resolution(quotient(R, "x^2", "x*y"))
    assert res.twists == [[0], [2, 2], [3]]
    assert res.composites_vanish() and not res.has_unit_entries()
    assert betti(quotient(R, "x^2", "x*y")) == {(0, 0): 1, (1, 2): 2, (2, 3): 1}


def test_koszul():
    R = ring(2)
    assert betti(quotient(R, "x^2", "y^2")) == {(0, 0): 1, (1, 2): 2, (2, 4): 1}


def test_polynomial_ring_betti():
    assert betti(GradedModuleP.free(ring(3), [0])) == {(0, 0): 1}


def test_minimize_leaves_minimal_input():
    R = ring(2)
    res = minimal_resolution(quotient(R, "x^2", "x*y"))
    again = minimize(res)
    assert again.twists == res.twists and again.maps == res.maps


def _vec(R, comp_terms):
    return {c: {R.pack(e): v % R.char_p for e, v in t.items()} for c, t in comp_terms.items()}


def test_padded_identity_summand_cancels():
    R = ring(2)
    x2, xy = {(2, 0): 1}, {(1, 1): 1}
    maps = [
        [_vec(R, {0: x2}), _vec(R, {0: xy}), {}],
        [_vec(R, {0: {(0, 1): 1}, 1: {(1, 0): -1}}), _vec(R, {2: {(0, 0): 1}})],
    ]
    padded = FreeResolution(R, [[0], [2, 2, 2], [3, 2]], maps)
    assert padded.composites_vanish() and padded.has_unit_entries()
    m = minimize(padded)
    assert m.twists == [[0], [2, 2], [3]]
    assert m.composites_vanish() and not m.has_unit_entries()


def test_taylor_complex_of_max_ideal_squared():
    R = ring(2)
    e = lambda a, b: (a, b)
    F1 = [_vec(R, {0: {e(2, 0): 1}}), _vec(R, {0: {e(1, 1): 1}}), _vec(R, {0: {e(0, 2): 1}})]
    # e12, e13, e23 with lcms x^2y, x^2y^2, xy^2
    F2 = [_vec(R, {1: {e(1, 0): 1}, 0: {e(0, 1): -1}}),
          _vec(R, {2: {e(2, 0): 1}, 0: {e(0, 2): -1}}),
          _vec(R, {2: {e(1, 0): 1}, 1: {e(0, 1): -1}})]
    F3 = [_vec(R, {2: {e(1, 0): 1}, 1: {e(0, 0): -1}, 0: {e(0, 1): 1}})]
    taylor = FreeResolution(R, [[0], [2, 2, 2], [3, 4, 3], [4]], [F1, F2, F3])
    assert taylor.composites_vanish()
    m = minimize(taylor)
    b = {}
    for i, tw in enumerate(m.twists):
        for j in tw:
            b[(i, j)] = b.get((i, j), 0) + 1
    assert b == {(0, 0): 1, (1, 2): 3, (2, 3): 2}


def test_regularity_examples():
    R = ring(2)
    assert regularity_betti(GradedModuleP.free(R, [0])) == 0
    S = quotient(R, "x^2", "x*y")
    assert regularity_betti(S) == 1
    I = GradedModuleP.ideal_module(R, polys(R, "x^2", "x*y"))
    assert regularity_betti(I) == 2
    for e in range(1, 6):
        assert regularity_betti(quotient(ring(3), f"x^{e} + y^{e} - z^{e}")) == e - 1


def test_depth_and_gen():
    R = ring(3)
    assert depth_ab(GradedModuleP.free(R, [0])) == 3
    R2 = ring(2)
    assert depth_ab(quotient(R2, "x^2", "x*y")) == 0
    assert depth_ab(quotient(R2, "x^2", "y^2")) == 0
    assert projective_dimension(quotient(R2, "x^2", "x*y")) == 2
    assert gen_degree(quotient(R2, "x^2", "x*y")) == 0
    assert gen_degree(GradedModuleP.ideal_module(R2, polys(R2, "x^2", "x*y"))) == 2
    assert gen_degree(GradedModuleP.free(R2, [3])) == 3


def test_zero_module_sentinels():
    R = ring(2)
    Z = quotient(R, "1")
    assert regularity_betti(Z) == NEG_INF and gen_degree(Z) == NEG_INF


def test_non_homogeneous_relation_rejected():
    R = ring(2)
    with pytest.raises(ValueError):
        GradedModuleP(R, [0], [{0: {R.pack((2, 0)): 1, R.pack((0, 1)): 1}}])


def test_known_betti_tables():
    R4 = ring(4, names=("a", "b", "c", "d"))
    cubic = quotient(R4, "a*c - b^2", "a*d - b*c", "b*d - c^2")
    assert betti(cubic) == {(0, 0): 1, (1, 2): 3, (2, 3): 2}
    lines = quotient(ring(4), "x*z", "x*w", "y*z", "y*w")
    assert betti(lines) == {(0, 0): 1, (1, 2): 4, (2, 3): 4, (3, 4): 1}
    m2 = quotient(ring(3), "x^2", "x*y", "x*z", "y^2", "y*z", "z^2")
    assert betti(m2) == {(0, 0): 1, (1, 2): 6, (2, 3): 8, (3, 4): 3}


def _numerator(res):
    num = {}
    for i, tw in enumerate(res.twists):
        for j in tw:
            num[j] = num.get(j, 0) + (-1) ** i
    return {j: c for j, c in num.items() if c}


def _random_ideal(seed, n=3):
    rng = random.Random(seed)
    R = ring(n)
    gens = []
    for _ in range(rng.randint(1, 3)):
        d = rng.randint(2, 3)
        monos = R.monomials_of_degree(d)
        gens.append(Poly(R, {m: rng.randrange(1, R.char_p) for m in rng.sample(monos, rng.randint(1, 3))}))
    return R, gens


@given(st.integers(0, 10 ** 6))
@settings(max_examples=25, deadline=None)
def test_resolution_properties(seed):
    R, gens = _random_ideal(seed)
    M = GradedModuleP.quotient_ring(R, gens)
    raw = free_resolution(M)
    assert raw.composites_vanish()
    m = minimize(raw)
    assert m.composites_vanish() and not m.has_unit_entries()
    again = minimize(m)
    assert again.twists == m.twists
    # minimization keeps the alternating Hilbert numerator
    assert _numerator(raw) == _numerator(m)
    hs = hilbert_series(M)
    for j in range(6):
        assert hs(j) == brute_hilbert(R, gens, j)
    # Betti numbers do not depend on the term order
    assert betti_table(M).nonzero() == betti_table(M, LEX).nonzero()


def test_curated_betti_independent_of_order():
    for name, f in load_curated():
        M = GradedModuleP.quotient_ring(f.ring, f.generators)
        assert betti_table(M).nonzero() == betti_table(M, LEX).nonzero(), name


def test_ideal_regularity_shift_on_curated():
    for name, f in load_curated():
        if not f.generators:
            continue
        S = GradedModuleP.quotient_ring(f.ring, f.generators)
        I = GradedModuleP.ideal_module(f.ring, f.generators)
        rs, ri = regularity_betti(S), regularity_betti(I)
        if rs == NEG_INF:
            continue
        assert ri == rs + 1, name
        # short exact sequence 0 -> I -> R -> R/I -> 0
        assert 0 <= max(ri, rs)
        assert ri <= max(0, rs + 1)
