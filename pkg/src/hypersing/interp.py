"""Formal diffeomorphisms tangent to the identity and their interpolation.

A diffeomorphism ``Phi`` with ``Phi(x) = x mod m^2`` is embedded in the
family ``Phi_t`` solving ``d/dt Phi_t = w(Phi_t)`` with ``Phi_0 = id`` and
``Phi_1 = Phi``.  The velocity ``w`` is found degree by degree (Sternberg's
recursion, :func:`interpolate`).  Because the equation is autonomous the
same family is ``exp(t log Phi)``, computed independently from the Lie
series (:func:`exp_field`, :func:`log_diffeo`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

from .errors import NotIsotropy, NotIsotropyFamily, NotTangentToIdentity, TruncationTooLow
from .forms import VectorField
from .linalg import solve_rational
from .poly import (Poly, RingSpec, antiderivative, compose, evaluate_param, lex_divide,
                   monomials_of_degree, rational)

TIME = "t"


def _check_tangent(components: Sequence[Poly], ring: RingSpec):
    for i, c in enumerate(components):
        delta = c - Poly.var(c.ring, i)
        if delta and delta.order() < 2:
            raise NotTangentToIdentity(f"component {i} is not x_{i + 1} + O(|x|^2)")


@dataclass(frozen=True)
class FormalDiffeo:
    """Jet of a map germ ``x -> Phi(x)`` tangent to the identity."""

    components: tuple[Poly, ...]
    truncation: int

    def __post_init__(self):
        comps = tuple(c.truncate(self.truncation) for c in self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise ValueError("no components")
        if len(comps) != comps[0].ring.nvars:
            raise ValueError("one component per coordinate required")
        _check_tangent(comps, comps[0].ring)

    @property
    def ring(self) -> RingSpec:
        return self.components[0].ring

    @classmethod
    def identity(cls, ring: RingSpec, N: int) -> "FormalDiffeo":
        return cls(tuple(Poly.var(ring, i) for i in range(ring.nvars)), N)

    def then(self, other: "FormalDiffeo") -> "FormalDiffeo":
        """``self o other``: first apply ``other``, then ``self``."""
        N = min(self.truncation, other.truncation)
        return FormalDiffeo(tuple(compose(c, other.components, N) for c in self.components), N)

    def __str__(self):
        return ", ".join(str(c) for c in self.components)


@dataclass(frozen=True)
class TimeDiffeo:
    """Family ``Phi_t`` whose coefficients are polynomials in the parameter ``param``."""

    components: tuple[Poly, ...]
    truncation: int
    param: str = TIME

    @property
    def ring(self) -> RingSpec:
        return self.components[0].ring

    def at(self, s) -> FormalDiffeo:
        return FormalDiffeo(tuple(evaluate_param(c, self.param, s) for c in self.components), self.truncation)

    def velocity(self) -> list[Poly]:
        """Components of ``d/dt Phi_t`` (still depending on t)."""
        i = self.ring.index(self.param)
        return [c.partial(i) for c in self.components]

    def generator(self) -> VectorField:
        """``d/dt Phi_t`` at ``t = 0``."""
        comps = [evaluate_param(v, self.param, 0) for v in self.velocity()]
        return VectorField(comps)

    def then(self, other: "TimeDiffeo") -> "TimeDiffeo":
        N = min(self.truncation, other.truncation)
        return TimeDiffeo(tuple(compose(c, other.components, N) for c in self.components), N, self.param)


@dataclass(frozen=True)
class UnitFamily:
    """``g_t`` with ``Phi_t^* f = g_t f`` and ``g_t(0) = 1``."""

    g: Poly
    truncation: int
    param: str = TIME

    def at(self, s) -> Poly:
        return evaluate_param(self.g, self.param, s)


# ---------------------------------------------------------------------------
# flows


def _field_order_check(v: VectorField):
    for i, c in enumerate(v.components):
        if c and c.order() < 2:
            raise NotTangentToIdentity(f"component {i} of the field has order < 2")


def _lie_series(v: VectorField, N: int, ring: RingSpec, tpoly: Poly | None):
    """sum_k t^k/k! v^k(x_i) truncated at degree N (t = 1 when tpoly is None)."""
    comps = []
    for i in range(ring.nvars):
        h = Poly.var(v.ring, i)
        term = h
        total = h.lift(ring)
        k = 0
        while True:
            k += 1
            term = v(term, N)
            if not term:
                break
            coeff = term.scale(mpq(1, math.factorial(k)))
            if tpoly is not None:
                coeff = coeff.lift(ring) * tpoly ** k
            total = total + coeff.lift(ring)
        comps.append(total.truncate(N))
    return tuple(comps)


def exp_field(v: VectorField, N: int, param: str = TIME) -> TimeDiffeo:
    """Time-t flow of ``v`` (components of order >= 2) as a polynomial-in-t family."""
    _field_order_check(v)
    ring = v.ring.with_params(param)
    t = Poly.var(ring, param)
    return TimeDiffeo(_lie_series(v, N, ring, t), N, param)


def exp_at(v: VectorField, N: int, s=1) -> FormalDiffeo:
    """Time-``s`` flow of ``v`` for a rational ``s``."""
    _field_order_check(v)
    w = v * rational(s) if s != 1 else v
    return FormalDiffeo(_lie_series(w, N, v.ring, None), N)


def log_diffeo(phi: FormalDiffeo, N: int | None = None) -> VectorField:
    """The field ``v`` of order >= 2 with ``exp(v) = phi`` up to degree N.

    The degree-k part of ``exp(v)`` is ``v_k`` plus terms built from
    ``v_2..v_{k-1}``, so ``v_k`` is read off degree by degree.
    """
    N = phi.truncation if N is None else N
    ring = phi.ring
    v = VectorField.zero(ring)
    for k in range(2, N + 1):
        flow = _lie_series(v, k, ring, None)
        correction = [(p - e).homogeneous_part(k) for p, e in zip(phi.components, flow)]
        v = VectorField([a + b for a, b in zip(v.components, correction)], ring)
    return v


def inverse(phi: FormalDiffeo, N: int | None = None) -> FormalDiffeo:
    N = phi.truncation if N is None else N
    return exp_at(-log_diffeo(phi, N), N)


def interpolate(phi: FormalDiffeo, N: int | None = None, param: str = TIME) -> TimeDiffeo:
    """Sternberg interpolation: solve ``Phi_t' = w(Phi_t)`` degree by degree.

    At degree k the coefficients obey ``phi_k'(t) = w_k + psi_k(t)`` where
    ``psi_k`` comes from lower degrees and vanishes at t = 0.  Integrating,
    ``phi_k(t) = w_k t + int_0^t psi_k``, and ``w_k`` is fixed by ``phi_k(1)``.
    """
    N = phi.truncation if N is None else N
    static = phi.ring
    ring = static.with_params(param)
    t = Poly.var(ring, param)
    family = [Poly.var(ring, i) for i in range(ring.nvars)]
    w = [Poly.zero(static) for _ in range(ring.nvars)]
    for k in range(2, N + 1):
        new = []
        for i in range(ring.nvars):
            psi = compose(w[i], family, k).homogeneous_part(k) if w[i] else Poly.zero(ring)
            integral = antiderivative(psi, param)
            target = phi.components[i].homogeneous_part(k)
            w_k = target - evaluate_param(integral, param, 1)
            w[i] = w[i] + w_k
            new.append(w_k.lift(ring) * t + integral)
        family = [c + n for c, n in zip(family, new)]
    return TimeDiffeo(tuple(family), N, param)


# ---------------------------------------------------------------------------
# isotropy


def _unit_quotient(F: Poly, f: Poly, N: int, error_cls):
    """Solve ``g f = F`` up to degree N with ``g`` of degree <= N - ord f.

    Triangular in the degree: the degree-(j + ord f) part of ``F - g f``
    must equal ``g_j f_low``; each step is an exact division by the lowest
    homogeneous part of ``f`` (multiplication by it is injective).
    """
    o = f.order()
    if N < o:
        raise TruncationTooLow(f"truncation {N} is below the order {o} of f; the unit is undetermined")
    f_low = f.homogeneous_part(o)
    low = F.truncate(o - 1)
    if low:
        raise error_cls(f"pullback has terms of degree < ord(f): {low}")
    g = Poly.zero(F.ring)
    for j in range(0, N - o + 1):
        residual = (F - g.mul_trunc(f, j + o)).homogeneous_part(j + o)
        q, r = lex_divide(residual, f_low)
        if r:
            raise error_cls(f"pullback is not a multiple of f in degree {j + o}")
        g = g + q
    return g


def validate_isotropy(phi: FormalDiffeo, f: Poly, N: int | None = None) -> Poly:
    """The unit ``g`` with ``phi^* f = g f`` up to degree N (g known up to N - ord f)."""
    N = phi.truncation if N is None else N
    _check_tangent(phi.components, phi.ring)
    F = compose(f, phi.components, N)
    g = _unit_quotient(F, f, N, NotIsotropy)
    if g.constant_value() != 1:
        raise NotIsotropy("g(0) != 1")
    return g


def interpolate_unit(family: TimeDiffeo, f: Poly, N: int | None = None) -> UnitFamily:
    """``g_t`` with ``Phi_t^* f = g_t f`` identically in t up to degree N."""
    N = family.truncation if N is None else N
    _check_tangent(family.components, family.ring)
    F = compose(f, family.components, N)
    g = _unit_quotient(F, f, N, NotIsotropyFamily)
    if g.constant_term() != Poly.one(g.ring):
        raise NotIsotropyFamily("g_t(0) is not identically 1")
    return UnitFamily(g, N, family.param)


# ---------------------------------------------------------------------------
# fields tangent to {f = 0}


def hamiltonian_field(f: Poly) -> VectorField:
    """(-f_y, f_x) in the plane; annihilates f."""
    if f.ring.nvars != 2:
        raise ValueError("Hamiltonian fields need exactly two coordinates; use koszul_field")
    return VectorField([-f.partial(1), f.partial(0)])


def koszul_field(f: Poly, i: int, j: int) -> VectorField:
    """f_j d/dx_i - f_i d/dx_j; annihilates f."""
    comps = [Poly.zero(f.ring) for _ in range(f.ring.nvars)]
    comps[i] = f.partial(j)
    comps[j] = -f.partial(i)
    return VectorField(comps)


def quasihomogeneous_weights(f: Poly):
    """Rational weights with every monomial of f of weighted degree 1, or None."""
    ring = f.ring
    eqs = [{i: e for i, e in enumerate(k[:ring.nvars]) if e} for k in f.terms]
    sol = solve_rational(eqs, [1] * len(eqs))
    if sol is None or len(sol) < ring.nvars or any(sol.get(i, 0) <= 0 for i in range(ring.nvars)):
        return None
    return [sol[i] for i in range(ring.nvars)]


def euler_field(f: Poly) -> VectorField | None:
    """Weighted Euler field E with E(f) = f, when f is quasihomogeneous."""
    w = quasihomogeneous_weights(f)
    if w is None:
        return None
    return VectorField([Poly.var(f.ring, i).scale(w[i]) for i in range(f.ring.nvars)])


def logarithmic_field(f: Poly, h: Poly, N: int) -> VectorField:
    """A field ``v`` of order >= 2 with ``v(f) = h f`` up to degree N.

    Found by exact linear solve on the jet coefficients; raises NotIsotropy
    when ``h f`` is not in ``m^2`` times the gradient ideal at this degree.
    """
    ring = f.ring
    grad = [f.partial(i) for i in range(ring.nvars)]
    target = h.mul_trunc(f, N)
    max_deg = N - min(g.order() for g in grad if g) + 1
    unknowns = []
    contributions: dict = {}
    for i, gi in enumerate(grad):
        if not gi:
            continue
        for deg in range(2, max_deg + 1):
            for mono in monomials_of_degree(ring.nvars, deg):
                u = (i, mono)
                unknowns.append(u)
                for k, c in gi.mul_trunc(Poly.monomial(ring, mono), N).terms.items():
                    contributions.setdefault(k, {})[u] = c
    keys = sorted(set(contributions) | set(target.terms), key=lambda k: (sum(k), k))
    eqs = [contributions.get(k, {}) for k in keys]
    rhs = [target.coefficient(k) for k in keys]
    sol = solve_rational(eqs, rhs)
    if sol is None:
        raise NotIsotropy(f"{h}*f is not in the gradient ideal at degree {N}")
    comps = [dict() for _ in range(ring.nvars)]
    for (i, mono), c in sol.items():
        if c:
            comps[i][mono] = c
    return VectorField([Poly(ring, c) for c in comps], ring)
