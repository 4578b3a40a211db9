"""Constructive check that equivalent volume forms have a primitive with zero
class in the Givental complex.

Given ``f``, volume forms ``omega``, ``omega'`` and ``Phi`` preserving
``{f = 0}`` with ``Phi^* omega' = omega``:

1. ``alpha = K(omega - omega')`` is the radial primitive;
2. ``Psi = Phi^{-1} = exp(-log Phi)`` pulls ``omega`` back to ``omega'``, and
   ``alpha_hat = -int_0^1 Psi_t^*(v ⌟ omega) dt`` (``v = log Psi``) satisfies
   ``d alpha_hat = omega - Psi^* omega = omega - omega'``;
3. ``alpha - alpha_hat`` is closed, hence exact;
4. ``[alpha]`` is decided by membership of ``df ^ alpha`` in the saturated
   Brieskorn window.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cohomology import givental_class_is_zero, saturation_window, stabilized_truncation
from .errors import NotEquivalent, NotVolume, TruncationTooLow
from .forms import PForm, contract, exterior_derivative, format_form, homotopy, poincare_primitive, pullback
from .interp import FormalDiffeo, exp_field, inverse, log_diffeo, validate_isotropy
from .poly import Poly, RingSpec, format_poly, time_integrate
from .singularity import require_isolated


@dataclass(frozen=True)
class VolumeForm:
    """``u dx_1 ^ ... ^ dx_{n+1}`` with ``u(0) != 0``."""

    u: Poly
    truncation: int | None = None

    def __post_init__(self):
        if not self.u.constant_value():
            raise NotVolume("volume coefficient vanishes at the origin")

    @property
    def ring(self) -> RingSpec:
        return self.u.ring

    @property
    def form(self) -> PForm:
        return PForm.top(self.u)

    @classmethod
    def from_form(cls, a: PForm, truncation: int | None = None) -> "VolumeForm":
        return cls(a.top_coefficient(), truncation)


def primitive_difference(omega: VolumeForm, omega_prime: VolumeForm) -> PForm:
    """``alpha`` with ``d alpha = omega - omega'`` exactly."""
    diff = omega.form - omega_prime.form
    if not diff:
        return PForm.zero(diff.ring, diff.degree - 1)
    return poincare_primitive(diff)


def transported_primitive(phi: FormalDiffeo, omega: VolumeForm, N: int | None = None) -> PForm:
    """``alpha_hat`` with ``d alpha_hat = omega - phi^* omega`` up to degree N - 1.

    Uses the interpolating family ``Phi_t = exp(t v)``, ``v = log phi``:
    ``phi^* omega - omega = d int_0^1 Phi_t^*(v ⌟ omega) dt``.
    """
    N = phi.truncation if N is None else N
    v = log_diffeo(phi, N)
    if v.is_zero():
        return PForm.zero(omega.ring, omega.ring.nvars - 1)
    family = exp_field(v, N)
    integrand = pullback(family, contract(v, omega.form, N), N)
    coeffs = {I: -time_integrate(c, 0, 1, family.param) for I, c in integrand.coefficients.items()}
    return PForm(omega.ring, omega.ring.nvars - 1, coeffs)


@dataclass
class ConverseReport:
    f: Poly
    truncation: int
    unit: Poly
    equivalence_residual_zero: bool
    alpha: PForm
    alpha_hat: PForm
    d_alpha_exact: bool
    difference_closed: bool
    difference_exact: bool
    class_zero: bool
    alpha_hat_class_zero: bool
    stabilized_at: int
    saturation_window: int
    certificate: str = field(default="formal/jet-level")

    def to_dict(self) -> dict:
        return {
            "f": format_poly(self.f),
            "truncation": self.truncation,
            "unit": format_poly(self.unit),
            "equivalence_residual_zero": self.equivalence_residual_zero,
            "alpha": format_form(self.alpha),
            "alpha_hat": format_form(self.alpha_hat),
            "d_alpha_exact": self.d_alpha_exact,
            "difference_closed": self.difference_closed,
            "difference_exact": self.difference_exact,
            "class_zero": self.class_zero,
            "alpha_hat_class_zero": self.alpha_hat_class_zero,
            "stabilized_at": self.stabilized_at,
            "saturation_window": self.saturation_window,
            "certificate": self.certificate,
        }


def verify_converse(f: Poly, omega: VolumeForm, omega_prime: VolumeForm, phi: FormalDiffeo,
                    N: int | None = None) -> ConverseReport:
    N = phi.truncation if N is None else N
    require_isolated(f)
    # Truncation error of alpha is O(|x|^{N+2}); df ^ (error) has order
    # >= N + ord f + 1 and lies in the Brieskorn subspace once it exceeds
    # the saturation window.
    N_c = stabilized_truncation(f)
    sat = saturation_window(f, N_c)
    if N + f.order() < sat:
        raise TruncationTooLow(
            f"construction truncation {N} too low for saturation window {sat} of {f}")
    unit = validate_isotropy(phi, f, N)

    pulled = pullback(phi, omega_prime.form, N)
    if pulled != omega.form.truncate(N):
        raise NotEquivalent("phi^* omega' differs from omega at the working truncation")

    alpha = primitive_difference(omega, omega_prime)
    d_alpha_ok = exterior_derivative(alpha) == omega.form - omega_prime.form

    psi = inverse(phi, N)
    alpha_hat = transported_primitive(psi, omega, N)

    delta = (alpha - alpha_hat).truncate(N)
    closed = not exterior_derivative(delta).truncate(N - 1)
    exact = closed and exterior_derivative(homotopy(delta)).truncate(N) == delta

    class_zero = givental_class_is_zero(f, alpha, N_c)
    hat_zero = givental_class_is_zero(f, alpha_hat, N_c)
    return ConverseReport(f, N, unit, True, alpha, alpha_hat, d_alpha_ok, closed, exact,
                          class_zero, hat_zero, N_c, sat)
