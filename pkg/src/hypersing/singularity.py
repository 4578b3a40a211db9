"""Milnor and Tjurina numbers, non-quasihomogeneity degree, Saito's test."""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .errors import NonIsolatedError
from .local_algebra import DEFAULT_ORDERING, LocalOrdering, quotient_dimension, standard_basis
from .poly import INFINITE, Poly, format_poly, gradient


def _check_germ(f: Poly):
    if not f:
        raise ValueError("the zero germ has no singularity invariants")
    if f.ring.params:
        f = f.drop_params()
    if f.constant_value():
        raise ValueError("germ must vanish at the origin")
    return f


@functools.lru_cache(maxsize=256)
def jacobian_basis(f: Poly, ordering: LocalOrdering = DEFAULT_ORDERING):
    f = _check_germ(f)
    grad = [g for g in gradient(f) if g]
    if not grad:
        raise ValueError("constant germ")
    return standard_basis(grad, ordering)


@functools.lru_cache(maxsize=256)
def tjurina_basis(f: Poly, ordering: LocalOrdering = DEFAULT_ORDERING):
    f = _check_germ(f)
    return standard_basis([g for g in gradient(f) if g] + [f], ordering)


def milnor_number(f: Poly, ordering: LocalOrdering = DEFAULT_ORDERING):
    """dim O/(df/dx_1, ..., df/dx_{n+1}); ``INFINITE`` for non-isolated germs."""
    f = _check_germ(f)
    if f.order() < 2:
        return 0
    return quotient_dimension(jacobian_basis(f, ordering))


def tjurina_number(f: Poly, ordering: LocalOrdering = DEFAULT_ORDERING):
    f = _check_germ(f)
    if f.order() < 2:
        return 0
    return quotient_dimension(tjurina_basis(f, ordering))


def is_isolated(f: Poly) -> bool:
    """Finite Milnor number; this also certifies that {f = 0} is reduced."""
    return milnor_number(f) is not INFINITE


def require_isolated(f: Poly) -> int:
    mu = milnor_number(f)
    if mu is INFINITE:
        raise NonIsolatedError(f"{f} does not have an isolated singularity")
    return mu


def nonquasihomogeneity_degree(f: Poly) -> int:
    mu = require_isolated(f)
    return mu - tjurina_number(f)


def saito_test(f: Poly) -> bool:
    """True iff f lies in its gradient ideal (quasihomogeneous up to coordinates)."""
    f = _check_germ(f)
    require_isolated(f)
    if f.order() < 2:
        return True
    return jacobian_basis(f).contains(f)


@dataclass(frozen=True)
class SingularityReport:
    f: Poly
    mu: object
    tau: object
    d: object
    quasihomogeneous: object
    isolated: bool

    @property
    def nvars(self) -> int:
        return self.f.ring.nvars

    def to_dict(self) -> dict:
        def num(v):
            return "infinite" if v is INFINITE else v

        return {
            "f": format_poly(self.f),
            "variables": list(self.f.ring.variables),
            "nvars": self.nvars,
            "isolated": self.isolated,
            "mu": num(self.mu),
            "tau": num(self.tau),
            "d": num(self.d),
            "quasihomogeneous": self.quasihomogeneous,
        }


def analyze(f: Poly) -> SingularityReport:
    """All invariants, cross-checked: d = 0 iff Saito's membership test passes."""
    f = _check_germ(f)
    mu = milnor_number(f)
    if mu is INFINITE:
        return SingularityReport(f, INFINITE, tjurina_number(f), None, None, False)
    tau = tjurina_number(f)
    d = mu - tau
    qh = saito_test(f)
    if d < 0 or (d == 0) != qh:
        raise AssertionError(f"inconsistent invariants for {f}: mu={mu}, tau={tau}, saito={qh}")
    return SingularityReport(f, mu, tau, d, qh, True)
