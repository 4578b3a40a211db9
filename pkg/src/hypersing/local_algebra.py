"""Standard bases in the local ring of germs at the origin.

Local orderings rank monomials of lower total degree higher, so the
leading term of a germ is (one of) its lowest-degree terms.  Reduction uses
Mora's ecart-controlled normal form, which may reuse intermediate results
as reducers; this is what makes division terminate in the local ring,
where ``x - x^2`` is ``x`` times a unit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .poly import INFINITE, Poly, RingSpec, monomials_up_to

ANTI_GRADED_REVLEX = "ds"
ANTI_GRADED_LEX = "Ds"


@dataclass(frozen=True)
class LocalOrdering:
    kind: str = ANTI_GRADED_REVLEX
    variable_order: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in (ANTI_GRADED_REVLEX, ANTI_GRADED_LEX):
            raise ValueError(f"unknown local ordering {self.kind!r}")

    def key(self, exps: Sequence[int]):
        """Sort key: the larger key is the larger monomial; 1 is the largest."""
        if self.variable_order is not None:
            exps = [exps[i] for i in self.variable_order]
        deg = sum(exps)
        if self.kind == ANTI_GRADED_LEX:
            return (-deg, tuple(exps))
        return (-deg, tuple(-e for e in reversed(exps)))


DEFAULT_ORDERING = LocalOrdering()


def _static(p: Poly) -> Poly:
    return p.drop_params() if p.ring.params else p


def leading_monomial(p: Poly, ordering: LocalOrdering = DEFAULT_ORDERING) -> tuple[int, ...]:
    return max(p.terms, key=ordering.key)


def ecart(p: Poly, lm: tuple[int, ...]) -> int:
    return p.degree() - sum(lm)


def _divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


class _Reducer:
    __slots__ = ("poly", "lm", "lc", "ecart")

    def __init__(self, poly: Poly, ordering: LocalOrdering):
        self.poly = poly
        self.lm = leading_monomial(poly, ordering)
        self.lc = poly.terms[self.lm]
        self.ecart = ecart(poly, self.lm)


def _cancel(h: Poly, h_lm, h_lc, g: _Reducer) -> Poly:
    shift = tuple(a - b for a, b in zip(h_lm, g.lm))
    factor = h_lc / g.lc
    out = dict(h.terms)
    for k, c in g.poly.terms.items():
        nk = tuple(a + b for a, b in zip(shift, k))
        v = out.get(nk, 0) - factor * c
        if v:
            out[nk] = v
        else:
            out.pop(nk, None)
    return Poly(h.ring, out, _trusted=True)


def mora_reduce(p: Poly, basis: Sequence[Poly], ordering: LocalOrdering = DEFAULT_ORDERING) -> Poly:
    """Weak normal form of ``p`` with respect to ``basis`` (Mora's NF).

    The result ``h`` satisfies ``u*p - h in <basis>`` for a unit ``u`` of the
    local ring, and ``h`` is zero or has a leading monomial divisible by no
    leading monomial of ``basis``.
    """
    h = _static(p)
    T = [_Reducer(_static(g), ordering) for g in basis if g]
    while h:
        h_lm = leading_monomial(h, ordering)
        best = None
        for i, g in enumerate(T):
            if _divides(g.lm, h_lm) and (best is None or g.ecart < best.ecart):
                best = g
        if best is None:
            break
        h_ecart = ecart(h, h_lm)
        if best.ecart > h_ecart:
            T.append(_Reducer(h, ordering))
        h = _cancel(h, h_lm, h.terms[h_lm], best)
    return h


@dataclass(frozen=True)
class StandardBasis:
    generators: tuple[Poly, ...]
    ordering: LocalOrdering
    staircase: frozenset = field(default=frozenset())

    @property
    def ring(self) -> RingSpec:
        return self.generators[0].ring

    def reduce(self, p: Poly) -> Poly:
        return mora_reduce(p, self.generators, self.ordering)

    def contains(self, p: Poly) -> bool:
        return not self.reduce(p)


def _monic(p: Poly, ordering: LocalOrdering) -> Poly:
    return p.scale(1 / p.terms[leading_monomial(p, ordering)])


def _spoly(f: _Reducer, g: _Reducer, ring: RingSpec) -> Poly:
    lcm = tuple(max(a, b) for a, b in zip(f.lm, g.lm))
    sf = Poly.monomial(ring, tuple(a - b for a, b in zip(lcm, f.lm)), 1 / f.lc)
    sg = Poly.monomial(ring, tuple(a - b for a, b in zip(lcm, g.lm)), 1 / g.lc)
    return sf * f.poly - sg * g.poly


def _minimize(polys: list[Poly], ordering: LocalOrdering) -> list[Poly]:
    lms = [leading_monomial(p, ordering) for p in polys]
    keep = []
    for i, (p, lm) in enumerate(zip(polys, lms)):
        redundant = False
        for j, other in enumerate(lms):
            if j == i or not _divides(other, lm):
                continue
            if other != lm or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(p)
    return keep


def standard_basis(gens: Sequence[Poly], ordering: LocalOrdering = DEFAULT_ORDERING) -> StandardBasis:
    """Standard basis of the ideal generated by ``gens`` in the local ring.

    Buchberger's loop with Mora normal forms; pairs are processed in order of
    their lcm under the ordering, with the product criterion.  Leading
    coefficients are normalized to 1 and redundant leading terms dropped.
    """
    polys = [_monic(_static(g), ordering) for g in gens if g]
    if not polys:
        raise ValueError("standard basis of the zero ideal")
    ring = polys[0].ring
    basis: list[Poly] = []
    reducers: list[_Reducer] = []
    pairs: list[tuple[int, int]] = []

    def add(p):
        r = _Reducer(p, ordering)
        for i, q in enumerate(reducers):
            if not all(a == 0 or b == 0 for a, b in zip(q.lm, r.lm)):
                pairs.append((i, len(reducers)))
        basis.append(p)
        reducers.append(r)

    for p in polys:
        h = mora_reduce(p, basis, ordering) if basis else p
        if h:
            add(_monic(h, ordering))

    def pair_key(pair):
        a, b = reducers[pair[0]], reducers[pair[1]]
        lcm = tuple(max(x, y) for x, y in zip(a.lm, b.lm))
        return (ordering.key(lcm), -pair[0], -pair[1])

    while pairs:
        pairs.sort(key=pair_key)
        i, j = pairs.pop()
        s = _spoly(reducers[i], reducers[j], ring)
        h = mora_reduce(s, basis, ordering)
        if h:
            add(_monic(h, ordering))

    gens_out = tuple(_minimize(basis, ordering))
    stair = frozenset(leading_monomial(p, ordering) for p in gens_out)
    return StandardBasis(gens_out, ordering, stair)


def quotient_dimension(basis: StandardBasis):
    """Number of monomials outside the staircase, or ``INFINITE``."""
    return staircase_dimension(basis.staircase, basis.ring.nvars)


def staircase_dimension(staircase, nvars: int):
    stair = list(staircase)
    bounds = []
    for i in range(nvars):
        pure = [m[i] for m in stair if all(e == 0 for j, e in enumerate(m) if j != i)]
        if not pure:
            return INFINITE
        bounds.append(min(pure))
    count = 0
    for mono in itertools.product(*(range(b) for b in bounds)):
        if not any(_divides(s, mono) for s in stair):
            count += 1
    return count


def standard_monomials(basis: StandardBasis) -> list[tuple[int, ...]]:
    """Monomials under the staircase (a basis of the finite quotient)."""
    dim = quotient_dimension(basis)
    if dim is INFINITE:
        raise ValueError("quotient is infinite-dimensional")
    top = max(sum(m) for m in basis.staircase)
    return [m for m in monomials_up_to(basis.ring.nvars, top)
            if not any(_divides(s, m) for s in basis.staircase)]


def ideal_membership(p: Poly, gens: Sequence[Poly], ordering: LocalOrdering = DEFAULT_ORDERING) -> bool:
    """Membership in the ideal generated by ``gens`` in the local ring."""
    if not p:
        return True
    if not any(gens):
        return False
    return standard_basis(gens, ordering).contains(p)
