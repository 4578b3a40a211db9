"""Example germs and generators of volume-form pairs equivalent under diffeomorphisms preserving f = 0."""

from __future__ import annotations

import random
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from gmpy2 import mpq

from .converse import VolumeForm
from .errors import NotIsotropy
from .forms import VectorField, pullback
from .interp import euler_field, exp_at, koszul_field, logarithmic_field
from .parsing import parse_poly
from .poly import Poly, RingSpec, monomials_up_to


@dataclass(frozen=True)
class Germ:
    name: str
    variables: tuple[str, ...]
    expr: str

    @property
    def ring(self) -> RingSpec:
        return RingSpec(self.variables)

    @property
    def poly(self) -> Poly:
        return parse_poly(self.expr, self.ring)


XY = ("x", "y")
XYZ = ("x", "y", "z")

QUASIHOMOGENEOUS = (
    Germ("A1", XY, "x^2 + y^2"),
    Germ("A2", XY, "x^3 + y^2"),
    Germ("A3", XY, "x^4 + y^2"),
    Germ("A4", XY, "x^5 + y^2"),
    Germ("A5", XY, "x^6 + y^2"),
    Germ("D4", XY, "x^3 + x*y^2"),
    Germ("E6", XY, "x^3 + y^4"),
    Germ("E8", XY, "x^3 + y^5"),
    Germ("P8", XYZ, "x^3 + y^3 + z^3"),
)

NON_QUASIHOMOGENEOUS = (
    Germ("T55", XY, "x^5 + y^5 + x^2*y^2"),
)

CORPUS = QUASIHOMOGENEOUS + NON_QUASIHOMOGENEOUS

NON_ISOLATED = (
    Germ("cusp-line", XY, "x^2*y"),
    Germ("double-line", XY, "x^2"),
)


def germ(name: str) -> Germ:
    for g in CORPUS + NON_ISOLATED:
        if g.name == name:
            return g
    raise KeyError(name)


def small_rational(rng: random.Random, span: int = 3) -> mpq:
    num = rng.randint(-span, span)
    return mpq(num, rng.randint(1, span))


def random_poly(ring: RingSpec, rng: random.Random, max_degree: int, min_degree: int = 0,
                density: float = 0.6) -> Poly:
    terms = {}
    for m in monomials_up_to(ring.nvars, max_degree):
        if sum(m) >= min_degree and rng.random() < density:
            terms[m] = small_rational(rng)
    return Poly(ring, terms)


def random_unit(ring: RingSpec, rng: random.Random, max_degree: int = 2) -> Poly:
    u = random_poly(ring, rng, max_degree, min_degree=1)
    c = small_rational(rng) or mpq(1)
    return u + c


def tangent_field(f: Poly, rng: random.Random, N: int) -> VectorField:
    """Random field of order >= 2 with v(f) in (f) up to degree N.

    Mixes Koszul fields (which kill f), multiples f*w, and either a
    multiple of the weighted Euler field or, for germs without one, a
    logarithmic field solving v(f) = h f.
    """
    ring = f.ring
    v = VectorField.zero(ring)
    low = 1 if f.order() <= 2 else 0
    for i in range(ring.nvars):
        for j in range(i + 1, ring.nvars):
            a = random_poly(ring, rng, 2, min_degree=low)
            v = v + koszul_field(f, i, j) * a
    w = VectorField([random_poly(ring, rng, 1) for _ in range(ring.nvars)], ring)
    v = v + w * f
    h = random_poly(ring, rng, 1, min_degree=1) or Poly.var(ring, 0)
    euler = euler_field(f)
    if euler is not None:
        v = v + euler * h
    else:
        try:
            v = v + logarithmic_field(f, h, N)
        except NotIsotropy:
            pass
    return v.truncate(N)


def equivalent_pair(f: Poly, rng: random.Random, N: int):
    """``(phi, omega, omega')`` with phi preserving {f = 0} and phi^* omega' = omega at degree N."""
    v = tangent_field(f, rng, N)
    phi = exp_at(v, N)
    omega_prime = VolumeForm(random_unit(f.ring, rng), N)
    omega = VolumeForm(pullback(phi, omega_prime.form, N).top_coefficient(), N)
    return phi, omega, omega_prime


def fixture_dir() -> Path:
    return Path(str(resources.files("hypersing") / "fixtures"))


def fixture_paths() -> list[Path]:
    return sorted(fixture_dir().glob("*.job"))
