"""Random forms and fields for property tests."""

from __future__ import annotations

import random

from hypersing.corpus import random_poly
from hypersing.forms import PForm, VectorField, basis_forms, exterior_derivative


def random_form(ring, rng: random.Random, degree: int, max_degree: int, min_degree: int = 0,
                density: float = 0.5) -> PForm:
    coeffs = {}
    for I in basis_forms(ring, degree):
        p = random_poly(ring, rng, max_degree, min_degree, density)
        if p:
            coeffs[I] = p
    return PForm(ring, degree, coeffs)


def random_closed_form(ring, rng: random.Random, degree: int, max_degree: int) -> PForm:
    """Closed form of the given degree >= 1 with coefficients of degree <= max_degree."""
    if degree == ring.nvars:
        return random_form(ring, rng, degree, max_degree, density=0.3)
    beta = random_form(ring, rng, degree - 1, max_degree + 1, density=0.3)
    return exterior_derivative(beta)


def random_field(ring, rng: random.Random, max_degree: int, min_order: int = 2) -> VectorField:
    return VectorField([random_poly(ring, rng, max_degree, min_order, density=0.5) for _ in range(ring.nvars)], ring)
