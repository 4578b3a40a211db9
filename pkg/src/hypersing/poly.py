"""Sparse multivariate polynomials over the rationals.

A :class:`Poly` lives in a :class:`RingSpec` made of the germ coordinates
``x_1, ..., x_{n+1}`` and, optionally, auxiliary parameters such as the time
``t`` of a diffeomorphism family.  Degrees, orders and truncations only ever
look at the coordinates; parameters ride along inside the coefficients, so a
polynomial over ``RingSpec(("x", "y"), ("t",))`` is a jet whose coefficients
are polynomials in ``t`` (the ``TimePoly`` of the design).

Coefficients are :class:`gmpy2.mpq`, which are always kept in lowest terms.
"""

from __future__ import annotations

import functools
import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from .errors import OriginNotFixedError, RingMismatchError

Rational = type(mpq(0))

_add = operator.add


@functools.total_ordering
class _Infinite:
    """Sentinel larger than every integer: the order of 0, or an infinite dimension."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("hypersing.INFINITE")

    def __repr__(self):
        return "INFINITE"

    def __str__(self):
        return "infinite"

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()


def rational(value) -> Rational:
    """Coerce ints, strings like ``"3/4"``, Fractions and mpq values to mpq."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, (int, str)) or type(value).__name__ == "mpz":
        return mpq(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


@dataclass(frozen=True)
class RingSpec:
    """Coordinate names of the germ plus auxiliary parameter names."""

    variables: tuple[str, ...]
    params: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "params", tuple(self.params))
        names = self.variables + self.params
        if len(self.variables) < 2:
            raise ValueError("germs need at least two coordinates")
        if any(not isinstance(v, str) or not v for v in names):
            raise ValueError("variable names must be nonempty strings")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate names in {names}")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def n(self) -> int:
        """Dimension of the hypersurface: the ambient space is C^(n+1)."""
        return len(self.variables) - 1

    @property
    def nslots(self) -> int:
        return len(self.variables) + len(self.params)

    def index(self, name: str) -> int:
        return (self.variables + self.params).index(name)

    def with_params(self, *names: str) -> "RingSpec":
        extra = tuple(p for p in names if p not in self.params)
        return RingSpec(self.variables, self.params + extra)

    def static(self) -> "RingSpec":
        return RingSpec(self.variables)

    def merge(self, other: "RingSpec") -> "RingSpec":
        if self == other:
            return self
        if self.variables != other.variables:
            raise RingMismatchError(f"incompatible rings {self} and {other}")
        return self.with_params(*other.params)


def _embedding(src: RingSpec, dst: RingSpec):
    """Slot map from ``src`` keys into ``dst`` keys, or None when identical."""
    if src == dst:
        return None
    if src.variables != dst.variables:
        raise RingMismatchError(f"cannot embed {src} into {dst}")
    try:
        pos = [dst.index(p) for p in src.params]
    except ValueError as exc:
        raise RingMismatchError(f"cannot embed {src} into {dst}") from exc
    nv, size = src.nvars, dst.nslots

    def move(key):
        out = list(key[:nv]) + [0] * (size - nv)
        for p, e in zip(pos, key[nv:]):
            out[p] = e
        return tuple(out)

    return move


def monomial_degree(key: Sequence[int], nvars: int) -> int:
    return sum(key[:nvars])


def monomials_up_to(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total degree <= ``degree`` in canonical order."""
    out = []
    for d in range(degree + 1):
        out.extend(monomials_of_degree(nvars, d))
    return out


@functools.lru_cache(maxsize=None)
def _monomials_of_degree(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    if nvars == 1:
        return ((degree,),)
    out = []
    for first in range(degree, -1, -1):
        for rest in _monomials_of_degree(nvars - 1, degree - first):
            out.append((first,) + rest)
    return tuple(out)


def monomials_of_degree(nvars: int, degree: int) -> list[tuple[int, ...]]:
    return list(_monomials_of_degree(nvars, degree))


class Poly:
    """Immutable sparse polynomial ``{exponent tuple: mpq}``.

    Keys have one slot per coordinate followed by one slot per parameter.
    Iteration order is canonical: increasing coordinate degree, then
    decreasing exponents left to right.
    """

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: RingSpec, terms: Mapping[tuple, object] | None = None, *, _trusted=False):
        self.ring = ring
        self._hash = None
        if _trusted:
            self._terms = terms
            return
        clean = {}
        size = ring.nslots
        for key, c in (terms or {}).items():
            key = tuple(int(e) for e in key)
            if len(key) != size or any(e < 0 for e in key):
                raise ValueError(f"bad exponent vector {key} for ring {ring}")
            c = rational(c)
            if c:
                c = clean.get(key, 0) + c
                if c:
                    clean[key] = c
                else:
                    clean.pop(key, None)
        self._terms = clean

    # construction -----------------------------------------------------
    @classmethod
    def zero(cls, ring: RingSpec) -> "Poly":
        return cls(ring, {}, _trusted=True)

    @classmethod
    def constant(cls, ring: RingSpec, c) -> "Poly":
        c = rational(c)
        return cls(ring, {(0,) * ring.nslots: c} if c else {}, _trusted=True)

    @classmethod
    def one(cls, ring: RingSpec) -> "Poly":
        return cls.constant(ring, 1)

    @classmethod
    def var(cls, ring: RingSpec, name: str | int) -> "Poly":
        i = ring.index(name) if isinstance(name, str) else name
        key = [0] * ring.nslots
        key[i] = 1
        return cls(ring, {tuple(key): mpq(1)}, _trusted=True)

    @classmethod
    def monomial(cls, ring: RingSpec, exponents: Sequence[int], c=1) -> "Poly":
        key = tuple(exponents) + (0,) * (ring.nslots - len(exponents))
        return cls(ring, {key: c})

    # inspection -------------------------------------------------------
    @property
    def terms(self) -> Mapping[tuple, Rational]:
        return self._terms

    def items(self):
        """Terms in canonical order."""
        return sorted(self._terms.items(), key=self._sort_key)

    def _sort_key(self, item):
        key = item[0]
        nv = self.ring.nvars
        return (sum(key[:nv]), tuple(-e for e in key[:nv]), tuple(-e for e in key[nv:]))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Maximal coordinate degree (-1 for the zero polynomial)."""
        nv = self.ring.nvars
        return max((sum(k[:nv]) for k in self._terms), default=-1)

    def order(self):
        """Minimal coordinate degree; :data:`INFINITE` for the zero polynomial."""
        nv = self.ring.nvars
        return min((sum(k[:nv]) for k in self._terms), default=INFINITE)

    def coefficient(self, key: Sequence[int]) -> Rational:
        key = tuple(key) + (0,) * (self.ring.nslots - len(key))
        return self._terms.get(key, mpq(0))

    def constant_term(self) -> "Poly":
        """Coordinate-degree-zero part (a polynomial in the parameters only)."""
        return self.homogeneous_part(0)

    def constant_value(self) -> Rational:
        return self._terms.get((0,) * self.ring.nslots, mpq(0))

    def is_constant(self) -> bool:
        return all(not any(k) for k in self._terms)

    def homogeneous_part(self, k: int) -> "Poly":
        nv = self.ring.nvars
        return Poly(self.ring, {key: c for key, c in self._terms.items() if sum(key[:nv]) == k}, _trusted=True)

    def homogeneous_parts(self) -> dict[int, "Poly"]:
        nv = self.ring.nvars
        buckets: dict[int, dict] = {}
        for key, c in self._terms.items():
            buckets.setdefault(sum(key[:nv]), {})[key] = c
        return {d: Poly(self.ring, t, _trusted=True) for d, t in sorted(buckets.items())}

    def uses_params(self) -> bool:
        nv = self.ring.nvars
        return any(any(k[nv:]) for k in self._terms)

    # ring plumbing ----------------------------------------------------
    def lift(self, ring: RingSpec) -> "Poly":
        move = _embedding(self.ring, ring)
        if move is None:
            return self
        return Poly(ring, {move(k): c for k, c in self._terms.items()}, _trusted=True)

    def drop_params(self) -> "Poly":
        """View a parameter-free polynomial in the static ring."""
        if not self.ring.params:
            return self
        if self.uses_params():
            raise RingMismatchError("polynomial still depends on parameters")
        nv = self.ring.nvars
        return Poly(self.ring.static(), {k[:nv]: c for k, c in self._terms.items()}, _trusted=True)

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring == self.ring:
                return self, other
            ring = self.ring.merge(other.ring)
            return self.lift(ring), other.lift(ring)
        return self, Poly.constant(self.ring, other)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, (Poly, int, Rational, Fraction)):
            return NotImplemented
        a, b = self._coerce(other)
        out = dict(a._terms)
        for k, c in b._terms.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v = v + c
                if v:
                    out[k] = v
                else:
                    del out[k]
        return Poly(a.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {k: -c for k, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        if not isinstance(other, (Poly, int, Rational, Fraction)):
            return NotImplemented
        a, b = self._coerce(other)
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = rational(c)
        if not c:
            return Poly.zero(self.ring)
        return Poly(self.ring, {k: c * v for k, v in self._terms.items()}, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return self.mul_trunc(other, None)
        if isinstance(other, (int, Rational, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational, Fraction)):
            return self.scale(1 / rational(other))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = Poly.one(self.ring)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_trunc(self, other: "Poly", N: int | None) -> "Poly":
        """Product with every term of coordinate degree > N discarded."""
        a, b = self._coerce(other)
        if not a._terms or not b._terms:
            return Poly.zero(a.ring)
        nv = a.ring.nvars
        bs = sorted(((sum(k[:nv]), k, c) for k, c in b._terms.items()), key=operator.itemgetter(0))
        out: dict = {}
        get = out.get
        for ka, ca in a._terms.items():
            if N is None:
                for _, kb, cb in bs:
                    k = tuple(map(_add, ka, kb))
                    out[k] = get(k, 0) + ca * cb
                continue
            lim = N - sum(ka[:nv])
            if lim < 0:
                continue
            for db, kb, cb in bs:
                if db > lim:
                    break
                k = tuple(map(_add, ka, kb))
                out[k] = get(k, 0) + ca * cb
        return Poly(a.ring, {k: c for k, c in out.items() if c}, _trusted=True)

    def truncate(self, N: int) -> "Poly":
        if N < 0:
            return Poly.zero(self.ring)
        nv = self.ring.nvars
        return Poly(self.ring, {k: c for k, c in self._terms.items() if sum(k[:nv]) <= N}, _trusted=True)

    def partial(self, i: int) -> "Poly":
        """Partial derivative with respect to slot ``i`` (coordinate or parameter)."""
        if not 0 <= i < self.ring.nslots:
            raise IndexError(f"no slot {i} in {self.ring}")
        out = {}
        for k, c in self._terms.items():
            e = k[i]
            if e:
                out[k[:i] + (e - 1,) + k[i + 1:]] = c * e
        return Poly(self.ring, out, _trusted=True)

    # comparisons ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Rational, Fraction)):
            other = Poly.constant(self.ring, other)
        if not isinstance(other, Poly):
            return NotImplemented
        try:
            a, b = self._coerce(other)
        except RingMismatchError:
            return False
        return a._terms == b._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # parameters -------------------------------------------------------
    def coefficients_in(self, param: str) -> dict[int, "Poly"]:
        """Map ``k -> coefficient of param^k`` (each a polynomial free of ``param``)."""
        i = self.ring.index(param)
        buckets: dict[int, dict] = {}
        for k, c in self._terms.items():
            buckets.setdefault(k[i], {})[k[:i] + (0,) + k[i + 1:]] = c
        return {e: Poly(self.ring, t, _trusted=True) for e, t in sorted(buckets.items())}

    def param_degree(self, param: str) -> int:
        i = self.ring.index(param)
        return max((k[i] for k in self._terms), default=-1)

    def substitute_param(self, param: str, value) -> "Poly":
        """Replace ``param`` by a rational number or by a polynomial in the parameters."""
        i = self.ring.index(param)
        if not isinstance(value, Poly):
            value = rational(value)
            out: dict = {}
            for k, c in self._terms.items():
                nk = k[:i] + (0,) + k[i + 1:]
                v = out.get(nk, 0) + c * value ** k[i]
                out[nk] = v
            return Poly(self.ring, {k: c for k, c in out.items() if c}, _trusted=True)
        result = Poly.zero(self.ring.merge(value.ring))
        power = Poly.one(result.ring)
        coeffs = self.coefficients_in(param)
        top = max(coeffs, default=0)
        for e in range(top + 1):
            if e in coeffs:
                result = result + coeffs[e] * power
            if e < top:
                power = power * value
        return result

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r}, vars={self.ring.variables + self.ring.params})"


def format_monomial(key: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, key):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    """Canonical text in the expression grammar accepted by :mod:`hypersing.parsing`."""
    if not p:
        return "0"
    names = p.ring.variables + p.ring.params
    chunks = []
    for key, c in p.items():
        mono = format_monomial(key, names)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not chunks:
            chunks.append(f"-{body}" if neg else body)
        else:
            chunks.append(f" - {body}" if neg else f" + {body}")
    return "".join(chunks)


# ---------------------------------------------------------------------------
# module-level operations


def add(p: Poly, q: Poly) -> Poly:
    _check_same(p, q)
    return p + q


def mul(p: Poly, q: Poly) -> Poly:
    _check_same(p, q)
    return p * q


def scale(c, p: Poly) -> Poly:
    return p.scale(c)


def _check_same(p: Poly, q: Poly):
    if p.ring.variables != q.ring.variables:
        raise RingMismatchError(f"{p.ring} vs {q.ring}")


def partial_derivative(p: Poly, i: int) -> Poly:
    if not 0 <= i < p.ring.nvars:
        raise IndexError(f"variable index {i} out of range")
    return p.partial(i)


def truncate(p: Poly, N: int) -> Poly:
    if N < 0:
        raise ValueError("truncation degree must be non-negative")
    return p.truncate(N)


def gradient(f: Poly) -> list[Poly]:
    return [f.partial(i) for i in range(f.ring.nvars)]


def compose(p: Poly, components: Sequence[Poly], N: int) -> Poly:
    """Degree-``N`` jet of ``p(components)``.

    Each component must vanish at the origin (no coordinate-degree-zero
    terms, even ones depending on parameters).  Parameters of ``p`` and of
    the components are merged in the result ring.
    """
    ring = p.ring
    if len(components) != ring.nvars:
        raise ValueError(f"expected {ring.nvars} components, got {len(components)}")
    for c in components:
        ring = ring.merge(c.ring)
    comps = [c.lift(ring) for c in components]
    for i, c in enumerate(comps):
        if c.order() == 0:
            raise OriginNotFixedError(f"component {i} has a nonzero constant term")
    nv = ring.nvars
    pp = p.lift(ring)
    param_part: dict[tuple, dict] = {}
    for k, c in pp.terms.items():
        if sum(k[:nv]) <= N:
            param_part.setdefault(k[:nv], {})[(0,) * nv + k[nv:]] = c
    powers = [[Poly.one(ring)] for _ in range(nv)]

    def power(i, e):
        table = powers[i]
        while len(table) <= e:
            table.append(table[-1].mul_trunc(comps[i], N))
        return table[e]

    cache: dict[tuple, Poly] = {(): Poly.one(ring)}

    def product(prefix):
        if prefix not in cache:
            i = len(prefix) - 1
            cache[prefix] = product(prefix[:-1]).mul_trunc(power(i, prefix[-1]), N)
        return cache[prefix]

    result: dict = {}
    for beta in sorted(param_part):
        coeff = Poly(ring, param_part[beta], _trusted=True)
        term = product(beta).mul_trunc(coeff, N)
        for k, c in term.terms.items():
            v = result.get(k, 0) + c
            if v:
                result[k] = v
            else:
                result.pop(k, None)
    return Poly(ring, result, _trusted=True)


def antiderivative(q: Poly, param: str = "t") -> Poly:
    """Antiderivative in ``param`` vanishing at ``param = 0``."""
    i = q.ring.index(param)
    out = {}
    for k, c in q.terms.items():
        e = k[i] + 1
        out[k[:i] + (e,) + k[i + 1:]] = c / e
    return Poly(q.ring, out, _trusted=True)


def time_integrate(q: Poly, lower=0, upper=1, param: str = "t") -> Poly:
    """Exact definite integral of ``q`` in ``param`` between rational bounds.

    The result no longer depends on ``param``; when no other parameter is
    left it is returned in the static ring.
    """
    lo, hi = rational(lower), rational(upper)
    i = q.ring.index(param)
    out: dict = {}
    for k, c in q.terms.items():
        e = k[i] + 1
        nk = k[:i] + k[i + 1:]
        out[nk] = out.get(nk, 0) + c * (hi ** e - lo ** e) / e
    params = tuple(p for p in q.ring.params if p != param)
    return Poly(RingSpec(q.ring.variables, params), {k: c for k, c in out.items() if c}, _trusted=True)


def evaluate_param(q: Poly, param: str, value) -> Poly:
    """Substitute a rational value for ``param`` and remove it from the ring."""
    i = q.ring.index(param)
    v = rational(value)
    out: dict = {}
    for k, c in q.terms.items():
        nk = k[:i] + k[i + 1:]
        out[nk] = out.get(nk, 0) + c * v ** k[i]
    params = tuple(p for p in q.ring.params if p != param)
    return Poly(RingSpec(q.ring.variables, params), {k: c for k, c in out.items() if c}, _trusted=True)


def lex_divide(h: Poly, d: Poly) -> tuple[Poly, Poly]:
    """Division of ``h`` by ``d`` using the lex order on coordinate exponents.

    ``d`` must not depend on parameters; parameters of ``h`` act as
    coefficients.  Returns ``(q, r)`` with ``h = q*d + r`` and ``r = 0``
    exactly when ``d`` divides ``h`` (stops at the first non-divisible
    leading term).
    """
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    ring = h.ring.merge(d.ring)
    h, d = h.lift(ring), d.lift(ring)
    if d.uses_params():
        raise ValueError("divisor must be free of parameters")
    nv = ring.nvars
    lead_key = max(d.terms, key=lambda k: k[:nv])
    lead_c = d.terms[lead_key]
    rest = [(k, c) for k, c in d.terms.items() if k != lead_key]
    work = dict(h.terms)
    quot: dict = {}
    while work:
        key = max(work, key=lambda k: k[:nv])
        if any(a < b for a, b in zip(key[:nv], lead_key[:nv])):
            return Poly(ring, quot, _trusted=True), Poly(ring, work, _trusted=True)
        factor = work.pop(key) / lead_c
        shift = tuple(a - b for a, b in zip(key, lead_key))
        quot[shift] = quot.get(shift, 0) + factor
        for k, c in rest:
            nk = tuple(map(_add, shift, k))
            v = work.get(nk, 0) - factor * c
            if v:
                work[nk] = v
            else:
                work.pop(nk, None)
    return Poly(ring, {k: c for k, c in quot.items() if c}, _trusted=True), Poly.zero(ring)


def variables(ring: RingSpec) -> list[Poly]:
    return [Poly.var(ring, i) for i in range(ring.nvars)]


def poly_sum(items: Iterable[Poly], ring: RingSpec) -> Poly:
    total = Poly.zero(ring)
    for p in items:
        total = total + p
    return total
