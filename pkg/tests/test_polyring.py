from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crl.polyring import (
    BinaryForm,
    MultiPoly,
    PolyError,
    discriminant,
    generic_binary_form,
    parse_poly,
    sylvester_matrix,
    sylvester_resultant,
)

VARS = ("x", "y", "z")


def P(text: str, vars=VARS) -> MultiPoly:
    return parse_poly(text, vars)


def form(text: str, degree: int) -> BinaryForm:
    poly = parse_poly(text)
    return BinaryForm.from_poly(poly, degree)


# -- arithmetic ----------------------------------------------------------------

def test_basic_identities():
    assert str(P("(x+y)^2")) == "x^2 + 2*x*y + y^2"
    assert P("x^3*y").diff("x") == P("3*x^2*y")
    t = MultiPoly.var("t", ("x", "t"))
    assert P("x^2 - 1", ("x", "t")).substitute({"x": t + 1}) == parse_poly("t^2 + 2*t", ("x", "t"))


def test_fractions_and_parse_roundtrip():
    p = P("3/2*x^2*y - z*x*y^2")
    assert p.coefficient(x=2, y=1).constant() == Fraction(3, 2)
    assert parse_poly(str(p), VARS) == p
    assert MultiPoly.from_json(p.to_json()) == p


def test_no_zero_terms_stored():
    p = P("x + y") - P("x")
    assert p == P("y")
    assert all(c != 0 for c in p.terms.values())
    assert (P("x") - P("x")).is_zero()


@pytest.mark.parametrize("bad", ["x +", "x^-1", "x^y", "sin(x)", "q"])
def test_parse_errors(bad):
    with pytest.raises(PolyError):
        parse_poly(bad, VARS)


def test_substitute_unknown_variable():
    with pytest.raises(PolyError):
        P("x").substitute({"w": P("y")})


monomial = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
polys = st.dictionaries(monomial, st.integers(-3, 3), max_size=4).map(lambda t: MultiPoly(t, VARS))


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == MultiPoly.const(0, VARS)


@settings(max_examples=40, deadline=None)
@given(polys, polys, polys)
def test_substitute_is_ring_hom(a, b, s):
    sub = {"x": s, "y": P("z + 1")}
    assert (a * b).substitute(sub) == a.substitute(sub) * b.substitute(sub)
    assert (a + b).substitute(sub) == a.substitute(sub) + b.substitute(sub)


@settings(max_examples=40, deadline=None)
@given(polys, polys)
def test_leibniz(a, b):
    assert (a * b).diff("x") == a.diff("x") * b + a * b.diff("x")


# -- binary forms, resultants, discriminants ---------------------------------------

def test_convention_conversion():
    F = generic_binary_form(3)
    assert F.convention == "binomial"
    plain = F.to_plain()
    assert [str(c) for c in plain.coeffs] == ["a0", "3*a1", "3*a2", "a3"]
    assert plain.to_binomial().coeffs == F.coeffs
    assert F.as_poly() == plain.as_poly()


def test_resultant_linear_pair():
    # det [[1, -a], [1, -b]] = a - b with A's row first
    r = sylvester_resultant(form("x - a*y", 1), form("x - b*y", 1))
    assert r == parse_poly("a - b", r.vars)


def test_resultant_examples():
    assert sylvester_resultant(form("x^2", 2), form("y^2", 2)) == 1
    common = sylvester_resultant(form("(x - y)*(x + 2*y)", 2), form("(x - y)*(3*x - y)", 2))
    assert common.is_zero()


def test_sylvester_matrix_shape():
    M = sylvester_matrix(form("x^2 + x*y", 2), form("x^3 - y^3", 3))
    assert len(M) == 5 and all(len(row) == 5 for row in M)


def test_quadratic_discriminant():
    # a*x^2 + b*x*y + c*y^2 with plain coefficients listed from y^2 up
    a, b, c = (MultiPoly.var(v, ("a", "b", "c")) for v in "abc")
    F = BinaryForm([c, b, a])
    assert discriminant(F) == 4 * a * c - b * b


@pytest.mark.parametrize("d", range(2, 7))
def test_generic_discriminant_degree(d):
    disc = discriminant(generic_binary_form(d))
    assert disc.degree_in([f"a{j}" for j in range(d + 1)]) == {2 * d - 2}


def test_discriminant_too_small():
    with pytest.raises(PolyError):
        discriminant(form("x + y", 1))


@pytest.mark.parametrize("g, h", [("x + p*y", "x^2 + q*y^2"), ("x - p*y", "x*y + q*y^2")])
def test_discriminant_vanishes_on_shared_root(g, h):
    # F = (x - t*y) * g and G = (x - t*y) * h share the root x = t*y
    names = ("x", "y", "t", "p", "q")
    root = parse_poly("x - t*y", names)
    prod = root * parse_poly(g, names) * root * parse_poly(h, names)
    F = BinaryForm.from_poly(prod, 5)
    assert discriminant(F).is_zero()


def test_discriminant_square_free_nonzero():
    assert not discriminant(form("x^3 - x*y^2", 3)).is_zero()
