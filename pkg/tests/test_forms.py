import random

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from hypersing.errors import FormDegreeError, NotClosedError
from hypersing.forms import (PForm, VectorField, contract, differential, exterior_derivative, homotopy,
                             lie_derivative, poincare_primitive, pullback, radial_field, wedge)
from hypersing.parsing import parse_form, parse_poly
from hypersing.poly import Poly, RingSpec, compose
from generators import random_field, random_form
from oracles import symbols_of, to_sympy

R2 = RingSpec(("x", "y"))
R3 = RingSpec(("x", "y", "z"))
seeds = st.integers(0, 10_000)
rings = st.sampled_from([R2, R3])


def test_wedge_signs():
    dx, dy, dz = (PForm.dx(R3, i) for i in range(3))
    assert wedge(dy, dx) == -wedge(dx, dy)
    assert wedge(dx, dx) == PForm.zero(R3, 2)
    assert wedge(wedge(dz, dx), dy) == wedge(dx, wedge(dy, dz))


def test_exterior_derivative_example():
    a = parse_form("(x*y) dx + (x^2) dy", R2)
    assert exterior_derivative(a) == parse_form("(x) dx^dy", R2)


def test_differential_of_function():
    f = parse_poly("x^3 + y^4", R2)
    assert differential(f) == parse_form("(3*x^2) dx + (4*y^3) dy", R2)


@given(seeds, rings, st.integers(0, 2))
def test_d_squared_is_zero(seed, ring, degree):
    a = random_form(ring, random.Random(seed), degree, 4)
    assert not exterior_derivative(exterior_derivative(a))


@given(seeds, rings, st.integers(0, 2), st.integers(0, 2))
def test_leibniz(seed, ring, p, q):
    rng = random.Random(seed)
    a, b = random_form(ring, rng, p, 3), random_form(ring, rng, q, 3)
    lhs = exterior_derivative(wedge(a, b))
    rhs = wedge(exterior_derivative(a), b) + wedge(a, exterior_derivative(b)) * (-1) ** p
    assert lhs == rhs


@given(seeds, rings, st.integers(1, 3))
def test_contraction_is_antiderivation(seed, ring, p):
    rng = random.Random(seed)
    if p > ring.nvars:
        return
    v = random_field(ring, rng, 2, 0)
    a, b = random_form(ring, rng, p, 2), random_form(ring, rng, 1, 2)
    lhs = contract(v, wedge(a, b))
    rhs = wedge(contract(v, a), b) + wedge(a, contract(v, b)) * (-1) ** p
    assert lhs == rhs


@given(seeds, rings, st.integers(1, 3))
def test_homotopy_formula(seed, ring, p):
    if p > ring.nvars:
        return
    a = random_form(ring, random.Random(seed), p, 4)
    da = exterior_derivative(a)
    kd = homotopy(da) if da.degree <= ring.nvars else PForm.zero(ring, p)
    assert exterior_derivative(homotopy(a)) + kd == a


@given(seeds, rings)
def test_cartan_formula_on_functions(seed, ring):
    rng = random.Random(seed)
    v = random_field(ring, rng, 2, 0)
    h = random_form(ring, rng, 0, 3).as_function()
    assert lie_derivative(v, PForm.function(h)).as_function() == v(h)


@given(seeds)
def test_pullback_of_volume_is_jacobian(seed):
    rng = random.Random(seed)
    comps = [Poly.var(R3, i) + random_form(R3, rng, 0, 3, 2).as_function() for i in range(3)]
    u = random_form(R3, rng, 0, 2).as_function()
    N = 5
    got = pullback(comps, PForm.top(u), N).top_coefficient()
    syms = symbols_of(R3)
    exprs = [to_sympy(c, syms) for c in comps]
    jac = sp.Matrix([[sp.diff(e, s) for s in syms] for e in exprs]).det()
    expected = sp.expand(to_sympy(u, syms).xreplace(dict(zip(syms, exprs))) * jac)
    diff = sp.expand(to_sympy(got, syms) - expected)
    assert diff == 0 or sp.Poly(diff, *syms).monoms()[-1] and min(sum(m) for m in sp.Poly(diff, *syms).monoms()) > N


@given(seeds)
def test_pullback_commutes_with_d(seed):
    rng = random.Random(seed)
    comps = [Poly.var(R2, i) + random_form(R2, rng, 0, 3, 2).as_function() for i in range(2)]
    a = random_form(R2, rng, 1, 3)
    N = 6
    lhs = exterior_derivative(pullback(comps, a, N)).truncate(N - 1)
    rhs = pullback(comps, exterior_derivative(a), N).truncate(N - 1)
    assert lhs == rhs


def test_pullback_function_is_composition():
    comps = [parse_poly("x + y^2", R2), parse_poly("y - x^2", R2)]
    f = parse_poly("x^3 + y^4", R2)
    assert pullback(comps, PForm.function(f), 8).as_function() == compose(f, comps, 8)


def test_poincare_primitive_rejects_non_closed():
    with pytest.raises(NotClosedError):
        poincare_primitive(parse_form("(y) dx", R2))
    with pytest.raises(FormDegreeError):
        poincare_primitive(PForm.function(Poly.one(R2)))


def test_radial_field():
    E = radial_field(R2)
    assert E(parse_poly("x^2*y + y", R2)) == parse_poly("3*x^2*y + y", R2)


def test_vector_field_application():
    v = VectorField([parse_poly("y", R2), parse_poly("x", R2)], R2)
    assert v(parse_poly("x*y", R2)) == parse_poly("x^2 + y^2", R2)


def test_forms_above_top_degree_are_zero():
    top = PForm.top(Poly.var(R2, 0))
    assert exterior_derivative(top) == PForm.zero(R2, 3)
    assert wedge(top, PForm.dx(R2, 0)).degree == 3
    with pytest.raises(ValueError):
        PForm(R2, 3, {(0, 1, 2): Poly.one(R2)})
