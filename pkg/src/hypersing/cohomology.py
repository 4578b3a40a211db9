"""Jet-level linear algebra for the Brieskorn quotient and the Givental class.

Everything happens inside the window of top-form coefficients of degree
``<= M`` where ``M = N - deg(f) - 1`` for a truncation ``N``.  Columns are
the window monomials in canonical order (lowest degree first), and echelon
pivots are the lowest columns of each row.  Two consequences are used
throughout:

* the computed subspace is exactly the image of
  ``L = df^d(Omega^{n-1}) + f Omega^{n+1}`` modulo ``m^{M+1}``, because every
  generator whose image has order ``<= M`` is included;
* for any smaller window ``M' <= M`` the image rank is the number of pivots
  of degree ``<= M'``.

Once the codimension of the image reaches the Milnor number the window is
saturated: ``m^{M+1}`` lies in ``L`` and membership questions at the jet
level are exact.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Callable

from .errors import FormDegreeError, NonIsolatedError, TruncationTooLow
from .forms import PForm, differential, exterior_derivative, format_form, wedge
from .linalg import SparseEchelon, integer_row
from .local_algebra import ideal_membership
from .poly import INFINITE, Poly, monomials_up_to, monomials_of_degree
from .singularity import milnor_number, require_isolated, tjurina_number


def window_degree(f: Poly, N: int) -> int:
    return N - f.degree() - 1


@dataclass
class JetSubspace:
    """Image of a family of top-form jets inside the degree-<= window."""

    truncation: int
    window: int
    columns: dict
    echelon: SparseEchelon
    n_columns: int
    degree_offsets: list

    @property
    def rank(self) -> int:
        return self.echelon.rank

    @property
    def codimension(self) -> int:
        return self.n_columns - self.rank

    def row(self, p: Poly) -> dict[int, int]:
        cols = self.columns
        nv = p.ring.nvars
        raw = {}
        for k, c in p.terms.items():
            col = cols.get(k[:nv])
            if col is not None:
                raw[col] = c
        return integer_row(raw)

    def contains(self, p: Poly) -> bool:
        return self.echelon.contains(self.row(p))

    def codimension_at(self, window: int) -> int:
        """Codimension of the image projected to degrees ``<= window``."""
        if window > self.window:
            raise ValueError("window larger than the computed one")
        bound = self.degree_offsets[window + 1]
        return bound - self.echelon.pivots_below(bound)

    def copy(self) -> "JetSubspace":
        return JetSubspace(self.truncation, self.window, self.columns, self.echelon.copy(),
                           self.n_columns, self.degree_offsets)


def _empty_subspace(nvars: int, N: int, M: int) -> JetSubspace:
    columns = {}
    offsets = [0]
    for deg in range(M + 1):
        for m in monomials_of_degree(nvars, deg):
            columns[m] = len(columns)
        offsets.append(len(columns))
    return JetSubspace(N, M, columns, SparseEchelon(), len(columns), offsets)


def _check_window(f: Poly, N: int) -> int:
    M = window_degree(f, N)
    if M < 0:
        raise TruncationTooLow(f"truncation {N} leaves no evaluation window for a germ of degree {f.degree()}")
    return M


def _brieskorn_generators(f: Poly, M: int):
    """Top-coefficients of df^d(m dx_J) and f*m with order <= M."""
    ring = f.ring
    n = ring.n
    df = differential(f).truncate(M)
    ordf = f.order()
    ord_df = ordf - 1
    # df^d(g) for monomial (n-1)-forms g = m dx_J; order >= ord_df + deg(m) - 1
    max_g = M - ord_df + 1
    for deg in range(max_g + 1):
        for mono in monomials_of_degree(ring.nvars, deg):
            m = Poly.monomial(ring, mono)
            for J in itertools.combinations(range(ring.nvars), n - 1):
                dg = exterior_derivative(PForm(ring, n - 1, {J: m}))
                if not dg:
                    continue
                top = wedge(df, dg, M)
                if top:
                    yield top.top_coefficient()
    for deg in range(M - ordf + 1):
        for mono in monomials_of_degree(ring.nvars, deg):
            yield f.mul_trunc(Poly.monomial(ring, mono), M)


def _kernel_generators(f: Poly, M: int):
    """(alpha, top-coefficient of df^alpha) for monomial n-forms alpha."""
    ring = f.ring
    n = ring.n
    df = differential(f).truncate(M)
    ord_df = f.order() - 1
    for deg in range(M - ord_df + 1):
        for mono in monomials_of_degree(ring.nvars, deg):
            m = Poly.monomial(ring, mono)
            for J in itertools.combinations(range(ring.nvars), n):
                alpha = PForm(ring, n, {J: m})
                top = wedge(df, alpha, M)
                if top:
                    yield alpha, top.top_coefficient()


@functools.lru_cache(maxsize=64)
def brieskorn_subspace(f: Poly, N: int) -> JetSubspace:
    """Jet image of ``df^d(Omega^{n-1}) + f Omega^{n+1}`` at truncation ``N``."""
    M = _check_window(f, N)
    space = _empty_subspace(f.ring.nvars, N, M)
    for coeff in _brieskorn_generators(f, M):
        space.echelon.insert(space.row(coeff))
    return space


@functools.lru_cache(maxsize=64)
def _kernel_data(f: Poly, N: int):
    base = brieskorn_subspace(f, N)
    space = base.copy()
    basis = []
    for alpha, coeff in _kernel_generators(f, space.window):
        if space.echelon.insert(space.row(coeff)):
            basis.append(alpha)
    return space.rank - base.rank, tuple(basis)


# ---------------------------------------------------------------------------
# stabilization

DEFAULT_STEP = 2


def default_bounds(mu: int) -> tuple[int, int]:
    return 2 * mu + 2, 4 * mu + 8


def stabilize(compute: Callable[[int], object], start: int, maximum: int, step: int = DEFAULT_STEP,
              valid: Callable[[int], bool] | None = None):
    """Run ``compute`` at ``start, start+step, ...`` until two consecutive
    truncations agree; returns ``(value, N)`` with ``N`` the first of the two."""
    previous = None
    prev_N = None
    N = start
    while N <= maximum:
        if valid is not None and not valid(N):
            N += step
            continue
        value = compute(N)
        if prev_N is not None and value == previous:
            return value, prev_N
        previous, prev_N = value, N
        N += step
    raise TruncationTooLow(f"no stabilization up to truncation {maximum}")


def _start_and_max(f: Poly, mu: int):
    start, maximum = default_bounds(mu)
    # the window must be nonempty at the first step
    start = max(start, f.degree() + 1)
    return start, max(maximum, start + DEFAULT_STEP)


@functools.lru_cache(maxsize=64)
def stabilized_truncation(f: Poly) -> int:
    mu = require_isolated(f)
    start, maximum = _start_and_max(f, mu)
    _, N = stabilize(lambda k: brieskorn_subspace(f, k).codimension, start, maximum)
    return N


def brieskorn_quotient_dim(f: Poly, N: int | None = None) -> int:
    """dim Omega^{n+1}/(df^d Omega^{n-1} + f Omega^{n+1}) read at truncation ``N``
    (stabilized when ``N`` is None); equals the Milnor number once stabilized."""
    require_isolated(f)
    if N is None:
        N = stabilized_truncation(f)
    return brieskorn_subspace(f, N).codimension


def kernel_pi_dim(f: Poly, N: int | None = None) -> tuple[int, list[PForm]]:
    """Dimension of ker(pi) = df^Omega^n / (df^d Omega^{n-1} + f Omega^{n+1})
    together with monomial n-forms alpha whose df^alpha span it."""
    require_isolated(f)
    if N is None:
        N = stabilized_truncation(f)
    dim, basis = _kernel_data(f, N)
    return dim, list(basis)


def saturation_window(f: Poly, N: int | None = None) -> int:
    """Smallest window ``M'`` with ``m^{M'+1}`` inside the Brieskorn subspace."""
    mu = require_isolated(f)
    if N is None:
        N = stabilized_truncation(f)
    space = brieskorn_subspace(f, N)
    for w in range(space.window + 1):
        if space.codimension_at(w) == mu:
            return w
    raise TruncationTooLow(f"window at truncation {N} is not saturated")


def _saturated_space(f: Poly, N: int | None) -> JetSubspace:
    mu = require_isolated(f)
    if N is None:
        N = stabilized_truncation(f)
    space = brieskorn_subspace(f, N)
    if space.codimension != mu:
        raise TruncationTooLow(
            f"window at truncation {N} has codimension {space.codimension}, expected mu = {mu}")
    return space


def givental_class_is_zero(f: Poly, alpha: PForm, N: int | None = None) -> bool:
    """Decide [alpha] = 0 in H^n of the Givental complex.

    By injectivity of df^ on that cohomology this is membership of df^alpha
    in the Brieskorn subspace, which is exact in a saturated window.
    """
    if alpha.degree != f.ring.n:
        raise FormDegreeError(f"expected an {f.ring.n}-form, got degree {alpha.degree}")
    space = _saturated_space(f, N)
    top = wedge(differential(f), alpha.lift(f.ring) if alpha.ring != f.ring else alpha, space.window)
    if not top:
        return True
    return space.contains(top.top_coefficient())


def restriction_vanishes(f: Poly, alpha: PForm) -> bool:
    """alpha restricts to zero on the smooth part of {f = 0}: df^alpha in f*Omega^{n+1}."""
    if alpha.degree != f.ring.n:
        raise FormDegreeError(f"expected an {f.ring.n}-form, got degree {alpha.degree}")
    require_isolated(f)
    top = wedge(differential(f), alpha)
    if not top:
        return True
    return ideal_membership(top.top_coefficient(), [f])


@dataclass
class CohomologyReport:
    f: Poly
    mu: int
    tau: int
    mu_check: int
    ker_pi_dim: int
    stabilized_at: int
    saturation_window: int
    ses1_consistent: bool
    kernel_basis: list = field(default_factory=list)

    def to_dict(self) -> dict:
        n = self.f.ring.n
        return {
            "f": str(self.f),
            "variables": list(self.f.ring.variables),
            "mu": self.mu,
            "tau": self.tau,
            "brieskorn_quotient_dim": self.mu_check,
            "ker_pi_dim": self.ker_pi_dim,
            "givental_cohomology": {"H0": 1, f"H{n}": self.ker_pi_dim, "other": 0},
            "stabilized_at": self.stabilized_at,
            "saturation_window": self.saturation_window,
            "ses1_consistent": self.ses1_consistent,
            "kernel_basis": [format_form(a) for a in self.kernel_basis],
            "certificate": "formal/jet-level",
        }


def verify_ses1(f: Poly) -> CohomologyReport:
    """Check 0 -> H^n -> H''/fH'' -> Q -> 0 through three independent dimensions."""
    mu = require_isolated(f)
    tau = tjurina_number(f)
    N = stabilized_truncation(f)
    b = brieskorn_quotient_dim(f, N)
    k, basis = kernel_pi_dim(f, N)
    consistent = b == mu and k == mu - tau and b == tau + k
    sat = saturation_window(f, N) if b == mu else -1
    return CohomologyReport(f, mu, tau, b, k, N, sat, consistent, basis)
