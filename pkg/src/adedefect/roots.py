"""Factoring and root finding for univariate polynomials over a tower level.

Over Q the factorization is delegated to sympy.  Over an extension level
``K = F(a)`` we use Trager's norm method: shift ``g(t) -> g(t - s*a)`` until
the norm ``N_{K/F}`` is squarefree, factor the norm over ``F`` (recursively),
and recover the factors over ``K`` as gcds.  Every factor returned is therefore
irreducible, at any height.
"""

from dataclasses import dataclass
from fractions import Fraction

import sympy

from . import upoly
from .errors import FactorizationFailed, IrreducibleDegreeTooHigh
from .fields import NumberField, common_field, field_of, lift

MAX_FACTOR_DEGREE = 4
_SHIFTS = (0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5)


@dataclass(frozen=True)
class Root:
    """A root of a univariate polynomial.

    ``field`` is the level ``value`` lives in.  When the root generates a new
    level, ``degree`` is the degree of that level over the input level, i.e.
    the number of conjugate roots this single record stands for.
    """

    value: object
    field: object
    multiplicity: int
    degree: int

    @property
    def is_new_level(self):
        return self.degree > 1


def _sort_key(p):
    return (len(p), tuple(str(c) for c in p))


def _factor_rational(p):
    x = sympy.Symbol("x")
    coeffs = [sympy.Rational(c.numerator, c.denominator)
              for c in reversed([Fraction(c) for c in p])]
    try:
        _, facs = sympy.Poly(coeffs, x, domain="QQ").factor_list()
    except Exception as exc:  # pragma: no cover - sympy internal failure
        raise FactorizationFailed(str(exc), "univariate_roots") from exc
    out = []
    for f, mult in facs:
        c = [Fraction(int(a.p), int(a.q)) for a in reversed(f.all_coeffs())]
        out.append((upoly.monic(c), mult))
    out.sort(key=lambda fm: _sort_key(fm[0]))
    return out


def element_norm(x, field):
    """``N_{field/base}(x)``: determinant of multiplication by ``x``."""
    x = field.coerce(x)
    e = field.degree
    a = field.gen()
    cols = []
    y = x
    for _ in range(e):
        cols.append(list(y.c))
        y = y * a
    m = [[cols[j][i] for j in range(e)] for i in range(e)]
    det = lift(1, field.base)
    for c in range(e):
        piv = next((r for r in range(c, e) if m[r][c]), None)
        if piv is None:
            return lift(0, field.base)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        p = m[c][c]
        det = det * p
        for r in range(c + 1, e):
            if not m[r][c]:
                continue
            f = m[r][c] / p
            for j in range(c, e):
                m[r][j] = m[r][j] - f * m[c][j]
    return det


def norm(g, field):
    """Norm of ``g in field[t]`` as a polynomial over ``field.base``."""
    n = upoly.degree(g) * field.degree
    xs = [lift(i, field.base) for i in range(n + 1)]
    ys = [element_norm(upoly.evaluate(g, i), field) for i in range(n + 1)]
    return upoly.trim(upoly.interpolate(xs, ys))


def _factor_squarefree_ext(g, field):
    if upoly.degree(g) <= 1:
        return [upoly.monic(g)]
    a = field.gen()
    for s in _SHIFTS:
        gs = upoly.shift(g, a * (-s)) if s else list(g)
        nrm = norm(gs, field)
        if upoly.is_squarefree(nrm):
            break
    else:
        raise FactorizationFailed("no squarefree norm found", "univariate_roots")
    out = []
    for h, _ in factor(nrm, field.base):
        d = upoly.gcd(gs, [field.coerce(c) for c in h])
        if upoly.degree(d) >= 1:
            out.append(upoly.monic(upoly.shift(d, a * s)) if s else d)
    if sum(upoly.degree(f) for f in out) != upoly.degree(g):
        raise FactorizationFailed("norm factors do not account for the "
                                  "full degree", "univariate_roots")
    out.sort(key=_sort_key)
    return out


def factor(p, field=None):
    """Irreducible factorization ``[(monic factor, multiplicity), ...]``."""
    p = upoly.trim([lift(c, field) for c in p])
    if len(p) <= 1:
        return []
    if field is None:
        return _factor_rational(p)
    out = []
    for sqf, mult in upoly.squarefree_decomposition(p):
        out.extend((f, mult) for f in _factor_squarefree_ext(sqf, field))
    return out


def is_irreducible(p, field=None):
    facs = factor(p, field)
    return len(facs) == 1 and facs[0][1] == 1 and \
        len(facs[0][0]) == len(upoly.trim(p))


def univariate_roots(p, field=None, prefix="a", max_degree=MAX_FACTOR_DEGREE):
    """All roots of ``p`` over the algebraic closure, grouped by factor.

    Linear factors give roots in ``field`` directly; each irreducible factor
    of degree 2..``max_degree`` yields one :class:`Root` generating a new
    tower level (its conjugates are implicit).  Larger irreducible factors
    raise :class:`IrreducibleDegreeTooHigh`.
    """
    field = common_field(field, *(field_of(c) for c in p))
    p = upoly.trim([lift(c, field) for c in p])
    if not p:
        raise FactorizationFailed("zero polynomial has no finite root set",
                                  "univariate_roots")
    linear, nonlinear = [], []
    for f, mult in factor(p, field):
        d = upoly.degree(f)
        if d == 1:
            linear.append(Root(-f[0], field, mult, 1))
        elif d <= max_degree:
            nonlinear.append((f, mult))
        else:
            raise IrreducibleDegreeTooHigh(
                f"irreducible factor of degree {d} > {max_degree}",
                "univariate_roots")
    if field is None:
        linear.sort(key=lambda r: r.value)
    out = list(linear)
    level = 1 if field is None else field.height + 1
    for i, (f, mult) in enumerate(nonlinear):
        ext = NumberField(f"{prefix}{level}_{i}", f, base=field, verify=False)
        ext.irreducible = "verified"
        out.append(Root(ext.gen(), ext, mult, upoly.degree(f)))
    return out
