"""Independent reference computations built on sympy.

Nothing here calls the package's own arithmetic, standard bases or echelon
code; inputs are converted to sympy expressions through their string form.
"""

from __future__ import annotations

import itertools

import sympy as sp
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix


def symbols_of(ring):
    return sp.symbols(list(ring.variables))


def to_sympy(p, syms=None):
    """Sympy expression of a Poly, via its printed form."""
    syms = syms or symbols_of(p.ring)
    names = {str(s): s for s in syms}
    return sp.expand(sp.sympify(str(p).replace("^", "**"), locals=names))


def monomials(nvars: int, max_degree: int):
    out = []
    for d in range(max_degree + 1):
        for m in itertools.product(range(d + 1), repeat=nvars):
            if sum(m) == d:
                out.append(m)
    return out


def _mono(syms, m):
    return sp.Mul(*[s ** e for s, e in zip(syms, m)])


def jet_rank(exprs, syms, window: int) -> int:
    """Rank over Q of the images of ``exprs`` in polynomials of degree <= window."""
    cols = {m: i for i, m in enumerate(monomials(len(syms), window))}
    rows = []
    for e in exprs:
        row = [QQ(0)] * len(cols)
        for m, c in sp.Poly(e, *syms).terms():
            if sum(m) <= window:
                row[cols[m]] = QQ(int(sp.numer(c)), int(sp.denom(c)))
        if any(row):
            rows.append(row)
    if not rows:
        return 0
    return DomainMatrix(rows, (len(rows), len(cols)), QQ).rank()


def n_monomials(nvars: int, window: int) -> int:
    return len(monomials(nvars, window))


def ideal_colength(gens, syms, window: int) -> int:
    """dim Q[x]/(gens + m^{window+1}); equals the local colength once m^{window+1} is in the ideal."""
    exprs = [g * _mono(syms, m) for g in gens for m in monomials(len(syms), window)]
    return n_monomials(len(syms), window) - jet_rank(exprs, syms, window)


def milnor_oracle(f_expr, syms, window: int) -> int:
    return ideal_colength([sp.diff(f_expr, s) for s in syms], syms, window)


def tjurina_oracle(f_expr, syms, window: int) -> int:
    return ideal_colength([f_expr] + [sp.diff(f_expr, s) for s in syms], syms, window)


def _top(rows, syms):
    """Top coefficient of the wedge of 1-forms given by gradient rows."""
    return sp.expand(sp.Matrix(rows).det())


def brieskorn_generators(f_expr, syms, window: int):
    """Top coefficients of df ^ d(m dx_J) and f m, dense in the window."""
    k = len(syms)
    grad_f = [sp.diff(f_expr, s) for s in syms]
    out = []
    for m in monomials(k, window + 2):
        g = _mono(syms, m)
        grad_g = [sp.diff(g, s) for s in syms]
        for J in itertools.combinations(range(k), k - 2):
            rows = [grad_f, grad_g] + [[1 if i == j else 0 for i in range(k)] for j in J]
            out.append(_top(rows, syms))
    for m in monomials(k, window):
        out.append(sp.expand(f_expr * _mono(syms, m)))
    return out


def kernel_generators(f_expr, syms, window: int):
    """Top coefficients of df ^ (m dx_J) for monomial (k-1)-forms."""
    k = len(syms)
    grad_f = [sp.diff(f_expr, s) for s in syms]
    out = []
    for m in monomials(k, window + 1):
        g = _mono(syms, m)
        for J in itertools.combinations(range(k), k - 1):
            rows = [grad_f] + [[1 if i == j else 0 for i in range(k)] for j in J]
            out.append(sp.expand(g * _top(rows, syms)))
    return out


def brieskorn_oracle(f_expr, syms, window: int) -> tuple[int, int]:
    """(codimension of the Brieskorn image, dim of df^Omega^n modulo it) in the window."""
    base = brieskorn_generators(f_expr, syms, window)
    r0 = jet_rank(base, syms, window)
    r1 = jet_rank(base + kernel_generators(f_expr, syms, window), syms, window)
    return n_monomials(len(syms), window) - r0, r1 - r0


def compose_oracle(p, components, N: int):
    """Truncated substitution computed by sympy."""
    syms = symbols_of(p.ring)
    subs = dict(zip(syms, [to_sympy(c, syms) for c in components]))
    e = sp.expand(to_sympy(p, syms).xreplace(subs))
    if e == 0:
        return sp.Integer(0)
    return sp.Add(*[c * _mono(syms, m) for m, c in sp.Poly(e, *syms).terms() if sum(m) <= N])
