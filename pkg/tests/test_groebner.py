import json
import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import polys
from minorideals.groebner import (
    GBCache,
    Ideal,
    ResourceExhausted,
    buchberger,
    height,
    ideal_intersection,
    ideal_membership,
    is_groebner,
    is_reduced,
    krull_dimension,
    lt_dimension_bound,
    monomial_dimension,
    normal_form,
    s_polynomial,
)
from minorideals.polymatrix import generic_matrix, hankel_ring, minors, paper_matrices
from minorideals.polyring import GF32003, GREVLEX, LEX, QQ, Ring, RingMismatchError

RQ = Ring(("x", "y", "z"), QQ)
RP = Ring(("x", "y", "z"), GF32003)


def sympy_basis(ideal, order):
    names = ideal.ring.names
    syms = sympy.symbols(names)
    exprs = [sympy.sympify(g.to_str().replace("^", "**"), locals=dict(zip(names, syms))) for g in ideal]
    kw = {"modulus": ideal.ring.field.p} if ideal.ring.field.p else {"domain": "QQ"}
    G = sympy.groebner(exprs, *syms, order={"grevlex": "grevlex", "lex": "lex"}[str(order)], **kw)
    ring = ideal.ring
    return sorted((ring.parse(str(g.as_expr()).replace("**", "^")).monic(order) for g in G.exprs), key=str)


IDEALS = [
    ["x^2 - y", "x*y - z"],
    ["x*y - z^2", "y^2 - x*z", "x^2*y - 1"],
    ["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"],
    ["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"],
    ["x^2 + y^2 - 1", "x*z - y"],
]


@pytest.mark.parametrize("order", [GREVLEX, LEX], ids=str)
@pytest.mark.parametrize("ring", [RQ, RP], ids=["q", "gf"])
@pytest.mark.parametrize("gens", IDEALS)
def test_reduced_basis_matches_sympy(gens, ring, order):
    I = Ideal(ring, [ring.parse(g) for g in gens])
    G = buchberger(I, order)
    assert sorted(G.elements, key=str) == sympy_basis(I, order)
    assert is_groebner(G) and is_reduced(G)


@settings(max_examples=25)
@given(st.lists(polys(RP, max_terms=3, max_exp=2), min_size=1, max_size=3))
def test_random_bases_pass_spair_certificate(gens):
    I = Ideal(RP, gens)
    G = buchberger(I, GREVLEX)
    assert is_groebner(G) and is_reduced(G)
    for g in I:
        assert G.contains(g)


def test_paper_bases_pass_spair_certificate():
    R = hankel_ring()
    M5, M4, M3 = paper_matrices(ring=R)
    for M, t in ((M5, 2), (M4, 3), (M3, 3)):
        G = buchberger(Ideal(R, minors(M, t)))
        assert is_groebner(G) and is_reduced(G)


def test_shuffle_uniqueness():
    R = hankel_ring()
    M5, M4, M3 = paper_matrices(ring=R)
    families = [minors(M5, 2), minors(M4, 3), minors(M3, 3)] + [[RP.parse(g) for g in gens] for gens in IDEALS[:2]]
    rng = random.Random(3)
    for gens in families:
        ring = gens[0].ring
        ref = buchberger(Ideal(ring, gens))
        for _ in range(10):
            shuffled = [g * rng.randint(1, 100) for g in gens]
            rng.shuffle(shuffled)
            assert buchberger(Ideal(ring, shuffled)) == ref


def test_gb_examples():
    G = buchberger(Ideal(RQ, [RQ.parse("x^2 - y"), RQ.parse("x*y - z")]), LEX)
    assert is_groebner(G)
    assert buchberger(Ideal(RQ, [RQ.one()])).to_strings() == ["1"]
    assert buchberger(Ideal(RQ, [RQ.one()])).is_unit()
    lin = buchberger(Ideal(RQ, [RQ.parse("x - y"), RQ.parse("y - z")]), LEX)
    assert lin.to_strings() == ["x - z", "y - z"]


def test_normal_form_and_membership():
    I = Ideal(RQ, [RQ.parse("x^2 - y"), RQ.parse("x*y - z")])
    G = buchberger(I)
    assert normal_form(RQ.parse("x^3 - z"), G).is_zero()
    assert not normal_form(RQ.parse("x"), G).is_zero()
    assert ideal_membership(RQ.parse("x^2*z - y*z"), I)
    assert not ideal_membership(RQ.parse("z"), G)


@settings(max_examples=30)
@given(polys(RQ, max_terms=3, max_exp=2), polys(RQ, max_terms=3, max_exp=2))
def test_membership_is_sound(a, b):
    I = Ideal(RQ, [RQ.parse("x^2 - y*z"), RQ.parse("y^2 - x")])
    G = buchberger(I)
    gens = list(I)
    f = a * gens[0] + b * gens[1]
    assert G.contains(f)
    r = G.normal_form(RQ.parse("x*z + 1") + f)
    assert G.normal_form(r) == r


def test_s_polynomial_cancels_leading_terms():
    f, g = RQ.parse("x^2 - y"), RQ.parse("x*y - z")
    s = s_polynomial(f, g, LEX)
    assert s == RQ.parse("-y^2 + x*z") or s == RQ.parse("y^2 - x*z")


def test_intersection_properties():
    x, y, z = RQ.gens()
    I = Ideal(RQ, [x * y, z])
    J = Ideal(RQ, [x - y])
    K = ideal_intersection(I, J)
    GK = buchberger(K)
    for p in K:
        assert buchberger(I).contains(p) and buchberger(J).contains(p)
    for f in I:
        for g in J:
            assert GK.contains(f * g)
    # monomial ideals: the intersection is generated by lcms
    A = ideal_intersection(Ideal(RQ, [x ** 2, y]), Ideal(RQ, [x * y, z]))
    assert buchberger(A) == buchberger(Ideal(RQ, [x ** 2 * y, x ** 2 * z, x * y, y * z]))
    assert buchberger(ideal_intersection(I, Ideal(RQ, [RQ.one()]))) == buchberger(I)


def test_intersection_tag_name_avoids_clash():
    ring = Ring(("w", "x"), QQ)
    w, x = ring.gens()
    K = ideal_intersection(Ideal(ring, [w]), Ideal(ring, [x]))
    assert buchberger(K).to_strings() == ["w*x"]


@pytest.mark.parametrize("m", range(1, 4))
def test_generic_dimension_formula(m):
    for n in range(1, m + 1):
        for t in range(1, n + 1):
            X = generic_matrix(m, n)
            d = krull_dimension(Ideal(X.ring, minors(X, t))).dim
            assert d == (m + n - t + 1) * (t - 1)


def test_dimension_edge_cases():
    assert krull_dimension(Ideal(RQ, [])).dim == 3
    assert krull_dimension(Ideal(RQ, [RQ.one()])).dim == -1
    assert height(Ideal(RQ, [RQ.one()])) == 4
    assert monomial_dimension([(1, 1, 0), (0, 0, 2)], RQ).dim == 1
    x, y, z = RQ.gens()
    assert krull_dimension(Ideal(RQ, [x * y, y * z])).dim == 2
    assert height(Ideal(RQ, [x, y])) == 2


@settings(max_examples=30)
@given(st.lists(polys(RP, max_terms=3, max_exp=2), min_size=1, max_size=3))
def test_leading_term_bound_is_an_upper_bound(gens):
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    d = krull_dimension(Ideal(RP, gens)).dim
    assert lt_dimension_bound(gens) >= d


def test_budgets():
    R = hankel_ring()
    _, M4, _ = paper_matrices(ring=R)
    I = Ideal(R, minors(M4, 3))
    with pytest.raises(ResourceExhausted):
        buchberger(I, max_pairs=1)
    with pytest.raises(ResourceExhausted):
        buchberger(I, max_steps=5)
    assert buchberger(I, max_pairs=10_000, max_steps=10 ** 7) == buchberger(I)


def test_cache_round_trip(tmp_path):
    cache = GBCache(tmp_path)
    I = Ideal(RP, [RP.parse("x^2 - y"), RP.parse("x*y - z")])
    G = buchberger(I, cache=cache)
    assert len(list(tmp_path.glob("*.json"))) == 1
    again = buchberger(Ideal(RP, list(reversed(list(I)))), cache=cache)
    assert again.stats.get("cached") and again == G
    assert GBCache.key(I, GREVLEX) != GBCache.key(I, LEX)
    (next(tmp_path.glob("*.json"))).write_text("not json")
    assert buchberger(I, cache=cache) == G


def test_ideal_normalisation():
    I = Ideal(RQ, [RQ.parse("2*x"), RQ.zero(), RQ.parse("x"), RQ.parse("-3*x")])
    assert len(I) == 1
    with pytest.raises(RingMismatchError):
        Ideal(RQ, [RP.parse("x")])
    assert len(Ideal(RQ, ["x*y", "2*x*y"])) == 1
