"""Polynomial differential forms on the germ coordinates.

A p-form is stored as ``{I: coefficient}`` over strictly increasing 0-based
index tuples ``I``.  Coefficients are :class:`~hypersing.poly.Poly` values,
so a form over a ring carrying the parameter ``t`` is a time-dependent form.
Only the coordinates are differentiated; parameters are constants.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from .errors import FormDegreeError, NotClosedError, RingMismatchError
from .poly import INFINITE, Poly, Rational, RingSpec, compose, rational


def _sort_sign(indices: Sequence[int]) -> tuple[int, tuple[int, ...] | None]:
    """Sign of the permutation sorting ``indices``; (0, None) on a repeat."""
    if len(set(indices)) != len(indices):
        return 0, None
    inversions = sum(1 for a, b in itertools.combinations(indices, 2) if a > b)
    return (-1 if inversions % 2 else 1), tuple(sorted(indices))


class PForm:
    __slots__ = ("ring", "degree", "_coeffs")

    def __init__(self, ring: RingSpec, degree: int, coeffs: Mapping[tuple[int, ...], Poly] | None = None):
        # degrees above the dimension are allowed but only hold the zero form
        if degree < 0:
            raise FormDegreeError(f"negative degree {degree}")
        self.ring = ring
        self.degree = degree
        clean = {}
        for idx, c in (coeffs or {}).items():
            idx = tuple(idx)
            if len(idx) != degree or list(idx) != sorted(set(idx)) or (idx and not 0 <= idx[0] <= idx[-1] < ring.nvars):
                raise ValueError(f"bad index tuple {idx} for a {degree}-form")
            if not isinstance(c, Poly):
                c = Poly.constant(ring, c)
            c = c.lift(ring.merge(c.ring)) if c.ring != ring else c
            if c.ring != ring:
                raise RingMismatchError(f"coefficient ring {c.ring} is not {ring}")
            if c:
                clean[idx] = c
        self._coeffs = clean

    @classmethod
    def _make(cls, ring, degree, coeffs):
        obj = cls.__new__(cls)
        obj.ring, obj.degree, obj._coeffs = ring, degree, {k: v for k, v in coeffs.items() if v}
        return obj

    @classmethod
    def zero(cls, ring: RingSpec, degree: int) -> "PForm":
        return cls(ring, degree)

    @classmethod
    def function(cls, p: Poly) -> "PForm":
        return cls(p.ring, 0, {(): p})

    @classmethod
    def dx(cls, ring: RingSpec, i: int) -> "PForm":
        return cls(ring, 1, {(i,): Poly.one(ring)})

    @classmethod
    def top(cls, u: Poly) -> "PForm":
        """The volume-type form ``u dx_1^...^dx_{n+1}``."""
        ring = u.ring
        return cls(ring, ring.nvars, {tuple(range(ring.nvars)): u})

    # inspection -------------------------------------------------------
    @property
    def coefficients(self) -> Mapping[tuple[int, ...], Poly]:
        return self._coeffs

    def coefficient(self, idx: Sequence[int]) -> Poly:
        return self._coeffs.get(tuple(idx), Poly.zero(self.ring))

    def top_coefficient(self) -> Poly:
        if self.degree != self.ring.nvars:
            raise FormDegreeError("not a top-degree form")
        return self.coefficient(tuple(range(self.ring.nvars)))

    def as_function(self) -> Poly:
        if self.degree:
            raise FormDegreeError("not a 0-form")
        return self.coefficient(())

    def __bool__(self):
        return bool(self._coeffs)

    def order(self):
        return min((c.order() for c in self._coeffs.values()), default=INFINITE)

    def max_degree(self) -> int:
        return max((c.degree() for c in self._coeffs.values()), default=-1)

    def truncate(self, N: int) -> "PForm":
        return PForm._make(self.ring, self.degree, {I: c.truncate(N) for I, c in self._coeffs.items()})

    def lift(self, ring: RingSpec) -> "PForm":
        if ring == self.ring:
            return self
        return PForm._make(ring, self.degree, {I: c.lift(ring) for I, c in self._coeffs.items()})

    # arithmetic -------------------------------------------------------
    def _align(self, other: "PForm"):
        if not isinstance(other, PForm):
            raise TypeError(f"expected a PForm, got {type(other).__name__}")
        if other.degree != self.degree:
            raise FormDegreeError(f"cannot add a {self.degree}-form and a {other.degree}-form")
        ring = self.ring.merge(other.ring)
        return self.lift(ring), other.lift(ring)

    def __add__(self, other):
        if not isinstance(other, PForm):
            return NotImplemented
        a, b = self._align(other)
        out = dict(a._coeffs)
        for I, c in b._coeffs.items():
            out[I] = out[I] + c if I in out else c
        return PForm._make(a.ring, a.degree, out)

    def __neg__(self):
        return PForm._make(self.ring, self.degree, {I: -c for I, c in self._coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, PForm):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        """Multiplication by a function (Poly) or a rational scalar."""
        if isinstance(other, Poly):
            ring = self.ring.merge(other.ring)
            other = other.lift(ring)
            return PForm._make(ring, self.degree, {I: c.lift(ring) * other for I, c in self._coeffs.items()})
        if isinstance(other, (int, Rational, Fraction)):
            c = rational(other)
            return PForm._make(self.ring, self.degree, {I: v.scale(c) for I, v in self._coeffs.items()})
        return NotImplemented

    __rmul__ = __mul__

    def mul_trunc(self, p: Poly, N: int | None) -> "PForm":
        ring = self.ring.merge(p.ring)
        p = p.lift(ring)
        return PForm._make(ring, self.degree, {I: c.lift(ring).mul_trunc(p, N) for I, c in self._coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, PForm):
            return NotImplemented
        if self.degree != other.degree:
            return False
        try:
            a, b = self._align(other)
        except RingMismatchError:
            return False
        return a._coeffs == b._coeffs

    def __hash__(self):
        return hash((self.ring, self.degree, frozenset(self._coeffs.items())))

    def __str__(self):
        return format_form(self)

    def __repr__(self):
        return f"PForm({format_form(self)!r}, degree={self.degree})"


def format_form(a: PForm) -> str:
    """Text in the form grammar: ``(coeff) dx^dy + (coeff) dy^dz``."""
    if not a:
        return "0"
    names = a.ring.variables
    parts = []
    for I in sorted(a.coefficients):
        c = a.coefficients[I]
        diff = "^".join("d" + names[i] for i in I)
        if not diff:
            parts.append(f"({c})")
        else:
            parts.append(f"({c}) {diff}")
    return " + ".join(parts)


class VectorField:
    """Polynomial vector field ``sum v_i d/dx_i``."""

    __slots__ = ("ring", "components")

    def __init__(self, components: Sequence[Poly], ring: RingSpec | None = None):
        comps = list(components)
        if ring is None:
            if not comps:
                raise ValueError("need a ring for an empty vector field")
            ring = comps[0].ring
            for c in comps:
                ring = ring.merge(c.ring)
        if len(comps) != ring.nvars:
            raise ValueError(f"expected {ring.nvars} components, got {len(comps)}")
        self.ring = ring
        self.components = tuple(c.lift(ring) for c in comps)

    @classmethod
    def zero(cls, ring: RingSpec) -> "VectorField":
        return cls([Poly.zero(ring)] * ring.nvars, ring)

    def order(self):
        return min(c.order() for c in self.components)

    def is_zero(self) -> bool:
        return not any(self.components)

    def __call__(self, h: Poly, N: int | None = None) -> Poly:
        """Derivation ``v(h) = sum v_i dh/dx_i``, optionally truncated."""
        total = Poly.zero(self.ring.merge(h.ring))
        for i, c in enumerate(self.components):
            if c:
                dh = h.partial(i)
                if dh:
                    total = total + c.mul_trunc(dh, N)
        return total

    def __add__(self, other):
        return VectorField([a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other):
        return VectorField([a - b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return VectorField([-a for a in self.components], self.ring)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return VectorField([other * c for c in self.components])
        if isinstance(other, (int, Rational, Fraction)):
            return VectorField([c.scale(other) for c in self.components], self.ring)
        return NotImplemented

    __rmul__ = __mul__

    def truncate(self, N: int) -> "VectorField":
        return VectorField([c.truncate(N) for c in self.components], self.ring)

    def homogeneous_part(self, k: int) -> "VectorField":
        return VectorField([c.homogeneous_part(k) for c in self.components], self.ring)

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return all(a == b for a, b in zip(self.components, other.components))

    def __hash__(self):
        return hash(self.components)

    def __str__(self):
        return ", ".join(str(c) for c in self.components)

    def __repr__(self):
        return f"VectorField({self})"


def radial_field(ring: RingSpec) -> VectorField:
    return VectorField([Poly.var(ring, i) for i in range(ring.nvars)], ring)


# ---------------------------------------------------------------------------
# operations


def wedge(a: PForm, b: PForm, N: int | None = None) -> PForm:
    ring = a.ring.merge(b.ring)
    degree = a.degree + b.degree
    if degree > ring.nvars:
        return PForm.zero(ring, degree)
    out: dict = {}
    for I, p in a.coefficients.items():
        for J, q in b.coefficients.items():
            sign, K = _sort_sign(I + J)
            if not sign:
                continue
            term = p.lift(ring).mul_trunc(q.lift(ring), N)
            if sign < 0:
                term = -term
            out[K] = out[K] + term if K in out else term
    return PForm._make(ring, degree, out)


def exterior_derivative(a: PForm) -> PForm:
    ring = a.ring
    if a.degree >= ring.nvars:
        return PForm.zero(ring, a.degree + 1)
    out: dict = {}
    for I, p in a.coefficients.items():
        for j in range(ring.nvars):
            if j in I:
                continue
            dp = p.partial(j)
            if not dp:
                continue
            pos = sum(1 for i in I if i < j)
            K = I[:pos] + (j,) + I[pos:]
            term = -dp if pos % 2 else dp
            out[K] = out[K] + term if K in out else term
    return PForm._make(ring, a.degree + 1, out)


d = exterior_derivative


def differential(p: Poly) -> PForm:
    return exterior_derivative(PForm.function(p))


def contract(v: VectorField, a: PForm, N: int | None = None) -> PForm:
    """Interior product ``v ⌟ a``."""
    if a.degree == 0:
        raise FormDegreeError("cannot contract a 0-form")
    ring = v.ring.merge(a.ring)
    out: dict = {}
    for I, p in a.coefficients.items():
        p = p.lift(ring)
        for k, i in enumerate(I):
            vi = v.components[i].lift(ring)
            if not vi:
                continue
            term = vi.mul_trunc(p, N)
            if k % 2:
                term = -term
            K = I[:k] + I[k + 1:]
            out[K] = out[K] + term if K in out else term
    return PForm._make(ring, a.degree - 1, out)


def _components_of(phi) -> list[Poly]:
    comps = getattr(phi, "components", phi)
    return list(comps)


def pullback(phi, a: PForm, N: int) -> PForm:
    """Pullback of ``a`` along a map germ (anything with ``.components``).

    Coefficients are substituted and ``dx_i`` replaced by ``d(phi_i)``; all
    coefficient products are truncated at degree ``N``.
    """
    comps = _components_of(phi)
    ring = a.ring
    for c in comps:
        ring = ring.merge(c.ring)
    comps = [c.lift(ring) for c in comps]
    dphi = [exterior_derivative(PForm.function(c)) for c in comps]
    wedges: dict = {(): PForm.function(Poly.one(ring))}

    def wedge_of(I):
        if I not in wedges:
            wedges[I] = wedge(wedge_of(I[:-1]), dphi[I[-1]], N)
        return wedges[I]

    total = PForm.zero(ring, a.degree)
    for I, p in a.coefficients.items():
        coeff = compose(p, comps, N).lift(ring)
        total = total + wedge_of(I).mul_trunc(coeff, N)
    return total


def homotopy(a: PForm) -> PForm:
    """Radial homotopy operator K: on a piece of coefficient degree k and form
    degree p it is ``(E ⌟ .)/(k + p)``; ``dK + Kd`` is the identity in degree >= 1."""
    if a.degree == 0:
        raise FormDegreeError("homotopy operator needs degree >= 1")
    ring = a.ring
    E = radial_field(ring)
    total = PForm.zero(ring, a.degree - 1)
    for I, p in a.coefficients.items():
        for k, piece in p.homogeneous_parts().items():
            single = PForm._make(ring, a.degree, {I: piece})
            total = total + contract(E, single) * mpq(1, k + a.degree)
    return total


def poincare_primitive(a: PForm) -> PForm:
    """Primitive ``K(a)`` of a closed form of degree >= 1, with ``d K(a) = a``."""
    if a.degree == 0:
        raise FormDegreeError("0-forms have no primitive")
    if exterior_derivative(a):
        raise NotClosedError("form is not closed")
    return homotopy(a)


def lie_derivative(v: VectorField, a: PForm) -> PForm:
    """Cartan formula ``L_v = d i_v + i_v d``."""
    out = PForm.zero(a.ring.merge(v.ring), a.degree)
    if a.degree:
        out = out + exterior_derivative(contract(v, a))
    out = out + contract(v, exterior_derivative(a))
    return out


def basis_forms(ring: RingSpec, degree: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(ring.nvars), degree))


def form_sum(forms: Iterable[PForm], ring: RingSpec, degree: int) -> PForm:
    total = PForm.zero(ring, degree)
    for f in forms:
        total = total + f
    return total
