from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from reeskit.errors import DomainError
from reeskit.groebner import (
    FreeModuleVector,
    Ideal,
    apply_matrix,
    buchberger,
    eliminate,
    is_groebner_basis,
    lift,
    module_groebner,
    normal_form,
    s_polynomial,
    syzygies,
)
from reeskit.module import PresentedRing
from reeskit.polynomial import GREVLEX, LEX, MonomialOrder, Polynomial, parse_polynomial


def poly(text: str, names=("x", "y", "z")) -> Polynomial:
    return parse_polynomial(text, names)


small_polynomials = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2)),
    st.sampled_from([-3, -2, -1, 1, 2, 3]),
    min_size=1,
    max_size=3,
).map(lambda terms: Polynomial(terms, 2))
ideals = st.lists(small_polynomials, min_size=1, max_size=3)
spatial_polynomials = st.dictionaries(
    st.tuples(st.integers(0, 1), st.integers(0, 1), st.integers(0, 2)),
    st.sampled_from([-2, -1, 1, 2]),
    min_size=1,
    max_size=3,
).map(lambda terms: Polynomial(terms, 3))


def test_buchberger() -> None:
    basis = buchberger(Ideal([poly("x", ["x"])]))
    assert basis.elements == (poly("x", ["x"]),)
    assert buchberger(Ideal([], 2)).elements == ()
    assert buchberger(Ideal([poly("0")])).elements == ()
    assert buchberger(Ideal([poly("2*x + 4"), poly("x*y")])).is_unit_ideal() is False
    assert buchberger(Ideal([poly("x + 1"), poly("x")])).is_unit_ideal()


def test_buchberger_lex() -> None:
    ideal = Ideal([poly("x^2 - y"), poly("x^3 - z")])
    basis = buchberger(ideal, LEX)
    assert poly("y^3 - z^2") in basis.elements
    assert basis.contains(poly("y^3 - z^2"))
    for generator in ideal:
        assert basis.contains(generator)
    assert is_groebner_basis(basis.elements, LEX)
    assert not is_groebner_basis(ideal.generators, LEX)


def test_normal_form() -> None:
    x_basis = buchberger(Ideal([poly("x")]))
    assert normal_form(poly("x^2"), x_basis).is_zero()
    empty = buchberger(Ideal([], 3))
    assert normal_form(poly("x*y + 1"), empty) == poly("x*y + 1")
    assert normal_form(poly("x^2"), buchberger(Ideal([poly("x^2 - y")]))) == poly("y")
    with pytest.raises(DomainError):
        normal_form(poly("x", ["x"]), x_basis)


def test_s_polynomial() -> None:
    assert s_polynomial(poly("x^2 - y"), poly("x*y - 1")) == poly("x - y^2")


def test_eliminate() -> None:
    names = ("t", "x", "y")
    kept = eliminate(Ideal([poly("t*x - y", names)]), 1)
    assert kept.generators == ()

    names = ("t", "x", "y", "S", "T")
    ideal = Ideal([poly("S - x*t", names), poly("T - y*t", names)])
    kept = eliminate(ideal, 1)
    expected = buchberger(Ideal([poly("x*T - y*S", names)]))
    assert buchberger(kept).elements == expected.elements

    plain = eliminate(ideal, 0)
    assert buchberger(plain).elements == buchberger(ideal).elements
    with pytest.raises(DomainError):
        eliminate(ideal, 1, LEX)
    with pytest.raises(DomainError):
        eliminate(ideal, 6)


def test_eliminate_twisted_cubic() -> None:
    names = ("t", "x", "y", "z")
    ideal = Ideal([poly(f, names) for f in ["x - t", "y - t^2", "z - t^3"]])
    kept = buchberger(eliminate(ideal, 1, MonomialOrder.block(1, inner=LEX)), GREVLEX)
    for relation in ["y - x^2", "z - x*y", "x*z - y^2"]:
        assert kept.contains(poly(relation, names))


def test_syzygies() -> None:
    one, zero = poly("1", ["x"]), poly("0", ["x"])
    assert syzygies([[one, zero], [zero, one]], 2, 2, 1).elements == ()

    dual_numbers = PresentedRing(["x"], ["x^2"])
    x = poly("x", ["x"])
    kernel = syzygies([[x]], 1, 1, 1, GREVLEX, dual_numbers.fixed_gb)
    assert kernel.elements == (FreeModuleVector([x]),)

    x, y = poly("x", ["x", "y"]), poly("y", ["x", "y"])
    kernel = syzygies([[x, y]], 1, 2, 2)
    assert kernel.elements == (FreeModuleVector([y, -x]),)


def test_syzygies_modulo() -> None:
    names = ("x", "y")
    x, y = poly("x", names), poly("y", names)
    # {v : x v in (y)} = (y)
    kernel = syzygies([[x]], 1, 1, 2, modulo=[FreeModuleVector([y])])
    assert kernel.elements == (FreeModuleVector([y]),)


def test_lift() -> None:
    names = ("x", "y")
    x, y = poly("x", names), poly("y", names)
    target = FreeModuleVector([poly("x^2 + x*y", names)])
    solution = lift([[x, y]], target, 2)
    assert solution is not None
    assert apply_matrix([[x, y]], solution) == target
    assert lift([[x, y]], FreeModuleVector([poly("1", names)]), 2) is None


def test_module_groebner() -> None:
    names = ("x", "y")
    x, y = poly("x", names), poly("y", names)
    span = module_groebner([FreeModuleVector([x, y]), FreeModuleVector([y, x])], 2, 2)
    assert span.contains(FreeModuleVector([x + y, x + y]))
    assert not span.contains(FreeModuleVector([x, poly("0", names)]))
    with pytest.raises(DomainError):
        module_groebner([FreeModuleVector([x])], 2, 2)


def _to_sympy(p: Polynomial, gens) -> sympy.Expr:
    return sympy.Poly.from_dict(
        {e: sympy.Rational(c.numerator, c.denominator) for e, c in p.items()}, *gens
    ).as_expr()


def _from_sympy(expr, gens) -> Polynomial:
    terms = sympy.Poly(expr, *gens, domain=sympy.QQ).terms()
    return Polynomial({e: Fraction(int(c.p), int(c.q)) for e, c in terms}, len(gens))


@settings(max_examples=200, deadline=None)
@given(ideals)
def test_groebner_matches_sympy(generators) -> None:
    gens = sympy.symbols("x y")
    basis = buchberger(Ideal(generators, 2))
    exprs = [_to_sympy(g, gens) for g in generators]
    expected = sympy.groebner(exprs, *gens, order="grevlex", domain=sympy.QQ)
    assert set(basis.elements) == {_from_sympy(e, gens) for e in expected.exprs}


@settings(max_examples=300, deadline=None)
@given(ideals, st.sampled_from([GREVLEX, LEX]))
def test_groebner_properties(generators, order) -> None:
    basis = buchberger(Ideal(generators, 2), order)
    assert is_groebner_basis(basis.elements, order)
    assert all(basis.contains(g) for g in generators)
    assert buchberger(Ideal(basis.elements, 2), order).elements == basis.elements


@settings(max_examples=200, deadline=None)
@given(st.lists(spatial_polynomials, min_size=1, max_size=3))
def test_syzygies_are_sound(row) -> None:
    kernel = syzygies([row], 1, len(row), 3)
    for vector in kernel.elements:
        assert apply_matrix([row], vector).is_zero()
    # Koszul syzygies lie in the kernel
    if len(row) >= 2:
        koszul = [row[1], -row[0]] + [Polynomial.zero(3)] * (len(row) - 2)
        assert kernel.contains(FreeModuleVector(koszul))


@settings(max_examples=200, deadline=None)
@given(ideals, small_polynomials, st.sampled_from([GREVLEX, LEX]))
def test_normal_form_is_idempotent(generators, f, order) -> None:
    basis = buchberger(Ideal(generators, 2), order)
    remainder = normal_form(f, basis)
    assert normal_form(remainder, basis) == remainder
    assert basis.contains(f - remainder)
    assert normal_form(f * generators[0], basis).is_zero()
