import random

from hypothesis import given, settings, strategies as st

from regcalc.groebner import Submodule, buchberger, colon_submodule, normal_form, syzygy_module
from regcalc.polyring import GREVLEX, LEX, FreeModuleElem, GradedFreeModule, Poly, parse_poly

from conftest import brute_member, polys, ring


def gb_polys(R, *texts, order=GREVLEX):
    gb = buchberger(Submodule.ideal(R, polys(R, *texts)), order)
    return gb, sorted(str(e.component(0)) for e in gb)


def elem(gb, f):
    return FreeModuleElem(gb.submodule.ambient, {0: f})


def test_already_a_basis():
    R = ring(2)
    _, got = gb_polys(R, "x^2", "x*y")
    assert got == ["x*y", "x^2"]


def test_principal():
    R = ring(2)
    _, got = gb_polys(R, "x + y")
    assert got == ["x + y"]


def test_one_s_pair_gives_y_cubed():
    R = ring(2)
    gb, got = gb_polys(R, "x^2", "x*y + y^2")
    assert sorted(got) == sorted(["x^2", "x*y + y^2", "y^3"])
    # independent check: y^3 lies in the ideal, x*y does not
    gens = polys(R, "x^2", "x*y + y^2")
    assert brute_member(R, gens, parse_poly(R, "y^3"))
    assert not brute_member(R, gens, parse_poly(R, "x*y"))


def test_normal_forms():
    R = ring(2)
    gb, _ = gb_polys(R, "x^2", "x*y")
    assert normal_form(elem(gb, parse_poly(R, "x^3")), gb).is_zero()
    y2 = parse_poly(R, "y^2")
    assert normal_form(elem(gb, y2), gb).component(0) == y2
    assert normal_form(elem(gb, R.zero()), gb).is_zero()


def _syz(R, *texts):
    sub = Submodule.ideal(R, polys(R, *texts))
    return sub, syzygy_module(sub)


def _check_syzygies(sub, syz):
    gens = [g.component(0) for g in sub.generators]
    R = sub.ring
    for s in syz.generators:
        total = R.zero()
        for i, g in enumerate(gens):
            total = total + s.component(i) * g
        assert total.is_zero()


def test_syzygy_of_x2_xy():
    R = ring(2)
    sub, syz = _syz(R, "x^2", "x*y")
    assert len(syz) == 1
    s = syz.generators[0]
    a, b = s.component(0), s.component(1)
    assert {str(a), str(b)} in ({"y", "-x"}, {"-y", "x"})
    _check_syzygies(sub, syz)


def test_koszul_syzygy():
    R = ring(2)
    sub, syz = _syz(R, "x", "y")
    assert len(syz) == 1
    _check_syzygies(sub, syz)
    assert syz.generators[0].degree == 2


def test_nonzerodivisor_has_no_syzygies():
    R = ring(3)
    _, syz = _syz(R, "x^2 + y*z")
    assert len(syz) == 0


def test_colon_by_y_and_x():
    R = ring(2)
    I = Submodule.ideal(R, polys(R, "x^2", "x*y"))
    cy = colon_submodule(I, parse_poly(R, "y"))
    gb, got = gb_polys(R, *[str(g.component(0)) for g in cy.generators])
    assert got == ["x"]
    cx = colon_submodule(I, parse_poly(R, "x"))
    _, got = gb_polys(R, *[str(g.component(0)) for g in cx.generators])
    assert got == ["x", "y"]


def test_colon_in_free_module_is_zero():
    R = ring(2)
    F = GradedFreeModule(R, (0,))
    assert len(colon_submodule(Submodule(F, []), parse_poly(R, "x + y"))) == 0


def test_lex_basis():
    R = ring(2)
    _, got = gb_polys(R, "x^2 - y^2", "x*y", order=LEX)
    assert sorted(got) == sorted(["x^2 - y^2", "x*y", "y^3"])


# -- properties -------------------------------------------------------------

def _random_homog(R, rng, d, k=3):
    monos = R.monomials_of_degree(d)
    return Poly(R, {m: rng.randrange(1, R.char_p) for m in rng.sample(monos, min(k, len(monos)))})


@given(st.integers(0, 10 ** 6))
@settings(max_examples=25, deadline=None)
def test_combinations_reduce_to_zero(seed):
    rng = random.Random(seed)
    R = ring(3)
    gens = [_random_homog(R, rng, rng.randint(2, 3)) for _ in range(rng.randint(1, 3))]
    gb = buchberger(Submodule.ideal(R, gens))
    d = max(g.degree for g in gens) + 1
    f = R.zero()
    for g in gens:
        f = f + _random_homog(R, rng, d - g.degree, 2) * g
    assert normal_form(elem(gb, f), gb).is_zero()
    # random forms outside the span keep a unique canonical residue
    h = _random_homog(R, rng, d, 4)
    nf = normal_form(elem(gb, h), gb)
    assert nf.is_zero() == brute_member(R, gens, h)
    assert normal_form(nf, gb).vec == nf.vec
    # linearity
    two = normal_form(elem(gb, h * 2 + f), gb)
    assert two.component(0) == nf.component(0) * 2


@given(st.integers(0, 10 ** 6))
@settings(max_examples=20, deadline=None)
def test_basis_of_basis_is_itself(seed):
    rng = random.Random(seed)
    R = ring(3)
    gens = [_random_homog(R, rng, rng.randint(2, 3)) for _ in range(rng.randint(1, 3))]
    gb = buchberger(Submodule.ideal(R, gens))
    again = buchberger(Submodule.ideal(R, [e.component(0) for e in gb]))
    assert sorted(str(e.component(0)) for e in again) == sorted(str(e.component(0)) for e in gb)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=20, deadline=None)
def test_emitted_syzygies_vanish(seed):
    rng = random.Random(seed)
    R = ring(3)
    gens = [_random_homog(R, rng, rng.randint(1, 3), 2) for _ in range(rng.randint(2, 4))]
    sub = Submodule.ideal(R, gens)
    _check_syzygies(sub, syzygy_module(sub))
