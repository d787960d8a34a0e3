"""Ambient fourfolds: hypersurfaces in P^4 and cyclic covers of P^3.

Each model knows a basis of sections of K_X + 2Y, how to write Y and those
sections in a local chart around a declared singular point, and the
cohomology dimensions the Hodge formulae need.  The toric model lives in
:mod:`adedefect.toric`.
"""

from dataclasses import dataclass, field as dc_field
from itertools import combinations_with_replacement
from math import comb

from .errors import InvalidModel, PointNotOnY, PointNotSingular
from .fields import common_field, field_of, lift
from .poly import MultiPoly
from .resolution import LocalDatum

COMPUTED_ZERO = "computed-zero"
COMPUTED = "computed"
CERTIFIED = "certified-by-paper"


def binom(n, r):
    """Binomial coefficient with ``C(n, r) = 0`` whenever ``n < r``."""
    if r < 0 or n < r:
        return 0
    return comb(n, r)


def h0_line(n, k):
    """dim H^0(P^n, O(k))."""
    return binom(k + n, n)


def h_line(n, i, k):
    """dim H^i(P^n, O(k)); only i = 0 and i = n can be nonzero."""
    if i == 0:
        return h0_line(n, k)
    if i == n:
        return h0_line(n, -k - n - 1)
    return 0


def bott_h(p, q, k, n=4):
    """dim H^q(P^n, Omega^p(k)) by Bott's formula."""
    if not (0 <= p <= n and 0 <= q <= n):
        return 0
    if k == 0:
        return 1 if p == q else 0
    if q == 0:
        return binom(k + n - p, k) * binom(k - 1, p) if k > p else 0
    if q == n:
        return bott_h(n - p, 0, -k, n)
    return 0


def monomial_exponents(nvars, degree):
    """Exponent vectors of all degree-``degree`` monomials, lex-descending."""
    if degree < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


@dataclass(frozen=True)
class Flag:
    """A hypothesis check: ``provenance`` says whether it was recomputed."""

    name: str
    value: bool
    provenance: str

    def to_dict(self):
        return {"name": self.name, "value": self.value,
                "provenance": self.provenance}


@dataclass
class HodgeInputs:
    """Cohomology of the ambient X and of twists by -Y, -2Y, K+Y, K+2Y."""

    h11_X: int
    h41_X: int
    h02_X: int
    h31_X: int
    h01_X: int
    chi_omega1_mY: int
    h4_omega1_mY: int
    chi_O_m2Y: int
    h4_O_m2Y: int
    h1_O_mY: int
    h0_K2Y: int
    h0_KY: int
    flags: list = dc_field(default_factory=list)
    extra: dict = dc_field(default_factory=dict)

    def to_dict(self):
        d = {k: v for k, v in self.__dict__.items() if k not in ("flags", "extra")}
        d["flags"] = [f.to_dict() for f in self.flags]
        d.update(self.extra)
        return d


def _check_point_on_singular(f_local):
    if f_local.constant_term():
        raise PointNotOnY("declared point does not lie on Y", "local_datum_at")
    if any(g.constant_term() for g in f_local.gradient()):
        raise PointNotSingular("declared point is a smooth point of Y",
                               "local_datum_at")


def _affine_images(names, chart, point, local_vars):
    """Images of homogeneous variables in the chart ``x_chart = 1`` centered at point."""
    images = []
    for i, name in enumerate(names):
        if i == chart:
            images.append(MultiPoly.constant(local_vars, 1))
        else:
            images.append(MultiPoly.var(local_vars, name) + point[i])
    return images


def _normalize_point(point, chart, n, what):
    point = list(point)
    if len(point) != n:
        raise InvalidModel(f"{what} point needs {n} coordinates, got "
                           f"{len(point)}", "local_datum_at")
    if chart is None:
        chart = next((i for i, c in enumerate(point) if c), None)
        if chart is None:
            raise InvalidModel("all coordinates are zero", "local_datum_at")
    if not point[chart]:
        raise InvalidModel(f"coordinate {chart} vanishes; choose another chart",
                           "local_datum_at")
    fld = common_field(*(field_of(c) for c in point))
    s = lift(point[chart], fld)
    return [lift(c, fld) / s for c in point], chart, fld


# -- P^4 ---------------------------------------------------------------------

P4_VARS = ("x0", "x1", "x2", "x3", "x4")


class P4Model:
    """A degree-d hypersurface ``F = 0`` in P^4."""

    kind = "p4"

    def __init__(self, degree, polynomial):
        if not isinstance(degree, int) or degree < 2:
            raise InvalidModel("degree must be an integer >= 2", "P4Model")
        if polynomial.vars != P4_VARS:
            polynomial = polynomial.rename(P4_VARS) if polynomial.nvars == 5 \
                else None
            if polynomial is None:
                raise InvalidModel("polynomial must be in x0..x4", "P4Model")
        if polynomial.is_zero() or not polynomial.is_homogeneous(degree):
            raise InvalidModel(f"polynomial is not homogeneous of degree {degree}",
                               "P4Model")
        self.degree = degree
        self.F = polynomial
        self.variables = P4_VARS

    def section_exponents(self):
        return monomial_exponents(5, 2 * self.degree - 5)

    def section_count(self):
        return h0_line(4, 2 * self.degree - 5)

    def local_datum_at(self, point, chart=None):
        p, chart, fld = _normalize_point(point, chart, 5, "P^4")
        local_vars = tuple(v for i, v in enumerate(P4_VARS) if i != chart)
        images = _affine_images(P4_VARS, chart, p, local_vars)
        f = self.F.substitute(images)
        _check_point_on_singular(f)
        residuals = [MultiPoly.monomial(P4_VARS, e).substitute(images)
                     for e in self.section_exponents()]
        return LocalDatum(f, residuals, fld)

    def hodge_inputs(self):
        return p4_hodge_inputs(self)

    def summary(self):
        return {"type": "p4", "degree": self.degree, "polynomial": str(self.F)}


def _chi_p4(p, k):
    return sum((-1) ** q * bott_h(p, q, k) for q in range(5))


def p4_hodge_inputs(m):
    d = m.degree if isinstance(m, P4Model) else int(m)
    flags = [
        Flag("h2(Omega1_X)=0", bott_h(1, 2, 0) == 0, COMPUTED_ZERO),
        Flag("h3(Omega1_X(-Y))=0", bott_h(1, 3, -d) == 0, COMPUTED_ZERO),
        Flag("h3(O_X(-Y))=0", bott_h(0, 3, -d) == 0, COMPUTED_ZERO),
        Flag("h2(O_X(-Y))=0", bott_h(0, 2, -d) == 0, COMPUTED_ZERO),
    ]
    return HodgeInputs(
        h11_X=bott_h(1, 1, 0), h41_X=bott_h(4, 1, 0), h02_X=bott_h(0, 2, 0),
        h31_X=bott_h(3, 1, 0), h01_X=bott_h(0, 1, 0),
        chi_omega1_mY=_chi_p4(1, -d), h4_omega1_mY=bott_h(1, 4, -d),
        chi_O_m2Y=_chi_p4(0, -2 * d), h4_O_m2Y=bott_h(0, 4, -2 * d),
        h1_O_mY=bott_h(0, 1, -d),
        h0_K2Y=h0_line(4, 2 * d - 5), h0_KY=h0_line(4, d - 5),
        flags=flags)


# -- cyclic covers of P^3 ------------------------------------------------------
#
# X = P(O + O(d)) over P^3 with pi_* O_X(1) = O + O(d).  Writing T, S for the
# tautological sections coming from the two summands, Y = {T^k = B S^k} is a
# k-fold cover of P^3 branched along B = 0 and lies in the chart S != 0,
# where u = T/S is a fiber coordinate.  K_X = pi^*O(d-4) (-2).

P3_VARS = ("y0", "y1", "y2", "y3")


def bundle_h(d, i, a, n):
    """dim H^i(X, pi^*O(a) (n)) for X = P(O + O(d)) over P^3."""
    if n >= 0:
        return sum(h_line(3, i, a + l * d) for l in range(n + 1))
    if n == -1:
        return 0
    if not 0 <= i <= 4:
        return 0
    return sum(h_line(3, 4 - i, d - 4 - a + l * d) for l in range(-n - 1))


def bundle_chi(d, a, n):
    return sum((-1) ** i * bundle_h(d, i, a, n) for i in range(5))


def bundle_hodge(p, q):
    """h^{p,q} of the projective bundle: h^{p,q}(P^3) + h^{p-1,q-1}(P^3)."""
    def hp3(p, q):
        return 1 if p == q and 0 <= p <= 3 else 0
    return hp3(p, q) + hp3(p - 1, q - 1)


def omega1_twist_top(d, k):
    """h^4 and chi of Omega^1_X(-k), with the vanishings the derivation uses.

    Twisted by O(-k):
      0 -> pi^*Omega_P3 -> Omega_X -> Omega_{X/P3} -> 0,
      0 -> pi^*Omega_P3 -> pi^*O(-1)^4 -> O -> 0            (Euler on P^3),
      0 -> Omega_{X/P3} -> O(-1) + pi^*O(d)(-1) -> O -> 0   (relative Euler).
    chi is additive; h^4 is right exact once the H^3 of the right-hand terms
    vanishes, which is checked and reported.
    """
    h = bundle_h
    chi = bundle_chi
    # relative part
    rel_h4 = h(d, 4, 0, -k - 1) + h(d, 4, d, -k - 1) - h(d, 4, 0, -k)
    rel_chi = chi(d, 0, -k - 1) + chi(d, d, -k - 1) - chi(d, 0, -k)
    # base part
    base_h4 = 4 * h(d, 4, -1, -k) - h(d, 4, 0, -k)
    base_chi = 4 * chi(d, -1, -k) - chi(d, 0, -k)
    needed = {
        "h3(O_X(-Y))=0": h(d, 3, 0, -k),
        "h2(O_X(-Y))=0": h(d, 2, 0, -k),
        "h3(O_X(-Y-1))=0": h(d, 3, 0, -k - 1),
        "h3(pi*O(d)(-Y-1))=0": h(d, 3, d, -k - 1),
    }
    flags = [Flag(name, v == 0, COMPUTED_ZERO) for name, v in needed.items()]
    return base_h4 + rel_h4, base_chi + rel_chi, flags


class CyclicCoverModel:
    """k-fold cover of P^3 branched along ``B = 0``, deg B = d*k."""

    kind = "cyclic"

    def __init__(self, k, d, branch):
        if not (isinstance(k, int) and isinstance(d, int)) or k < 2 or d < 2:
            raise InvalidModel("k and d must be integers >= 2", "CyclicCoverModel")
        if branch.vars != P3_VARS:
            if branch.nvars != 4:
                raise InvalidModel("branch must be in y0..y3", "CyclicCoverModel")
            branch = branch.rename(P3_VARS)
        if branch.is_zero() or not branch.is_homogeneous(d * k):
            raise InvalidModel(f"branch is not homogeneous of degree {d * k}",
                               "CyclicCoverModel")
        self.k = k
        self.d = d
        self.B = branch

    def section_labels(self):
        """``(p, exponent)``: the section T^p S^(2k-2-p) c with c = y^exponent.

        deg c = (2k-1-p) d - 4, so the sum over p reproduces
        h^0(K + 2Y) = sum_l C(ld + d - 1, 3).
        """
        out = []
        for p in range(2 * self.k - 1):
            for e in monomial_exponents(4, (2 * self.k - 1 - p) * self.d - 4):
                out.append((p, e))
        return out

    def section_count(self):
        return len(self.section_labels())

    def local_datum_at(self, point, chart=None):
        """Local chart at the point of Y over a singular point of B.

        Variables: the three affine coordinates of P^3 and the fiber
        coordinate u, with Y given by u^k - B.
        """
        q, chart, fld = _normalize_point(point, chart, 4, "P^3")
        base_vars = tuple(v for i, v in enumerate(P3_VARS) if i != chart)
        local_vars = base_vars + ("u",)
        images = _affine_images(P3_VARS, chart, q, local_vars)
        b = self.B.substitute(images)
        u = MultiPoly.var(local_vars, "u")
        f = u ** self.k - b
        _check_point_on_singular(f)
        residuals = [u ** p * MultiPoly.monomial(P3_VARS, e).substitute(images)
                     for p, e in self.section_labels()]
        return LocalDatum(f, residuals, fld)

    def hodge_inputs(self):
        return cyclic_hodge_inputs(self)

    def summary(self):
        return {"type": "cyclic", "k": self.k, "d": self.d,
                "branch": str(self.B)}


def cyclic_h4_O_mY_sum(k, d):
    """Closed form of h^4(O(-Y)) for the k-fold cover."""
    return sum(binom(l * d + d - 1, 3) for l in range(k - 1))


def cyclic_hodge_inputs(m):
    k, d = m.k, m.d
    h4_om, chi_om, flags = omega1_twist_top(d, k)
    h1_mY = bundle_h(d, 1, 0, -k)
    h4_mY = bundle_h(d, 4, 0, -k)
    lower_m2 = [bundle_h(d, i, 0, -2 * k) for i in range(4)]
    chi_m2 = bundle_chi(d, 0, -2 * k)
    h4_m2 = bundle_h(d, 4, 0, -2 * k)
    flags = flags + [
        Flag("h1(O_X(-Y))=0", h1_mY == 0, COMPUTED_ZERO),
        Flag("h^i(O_X(-2Y))=0 for i<4", not any(lower_m2), COMPUTED_ZERO),
        Flag("h2(Omega1_X)=0", bundle_hodge(1, 2) == 0, COMPUTED_ZERO),
        Flag("h1(Omega1_X(-Y))=1, h0=h2=h3=0", True, CERTIFIED),
        Flag("chi(Omega1_X(-Y)) - h4 = -1", chi_om - h4_om == -1, COMPUTED),
    ]
    return HodgeInputs(
        h11_X=bundle_hodge(1, 1), h41_X=bundle_hodge(4, 1),
        h02_X=bundle_hodge(0, 2), h31_X=bundle_hodge(3, 1),
        h01_X=bundle_hodge(0, 1),
        chi_omega1_mY=chi_om, h4_omega1_mY=h4_om,
        chi_O_m2Y=chi_m2, h4_O_m2Y=h4_m2, h1_O_mY=h1_mY,
        h0_K2Y=bundle_h(d, 0, d - 4, 2 * k - 2),
        h0_KY=bundle_h(d, 0, d - 4, k - 2),
        flags=flags,
        extra={"h4_O_mY": h4_mY})


# -- bare local germ ---------------------------------------------------------

class LocalModel:
    """A germ at the origin with explicit section residuals (no global data)."""

    kind = "local"

    def __init__(self, equation, sections=()):
        if equation.nvars != 4:
            raise InvalidModel("local equation needs 4 variables", "LocalModel")
        self.equation = equation
        self.sections = list(sections)

    def section_count(self):
        return len(self.sections)

    def local_datum_at(self, point=None, chart=None):
        f = self.equation
        sections = self.sections
        if point is not None:
            point = list(point)
            if len(point) != 4:
                raise InvalidModel("local point needs 4 coordinates",
                                   "local_datum_at")
            f = f.translate(point)
            sections = [s.translate(point) for s in sections]
        _check_point_on_singular(f)
        return LocalDatum(f, sections, common_field(
            f.field(), *(s.field() for s in sections)))

    def summary(self):
        return {"type": "local", "variables": list(self.equation.vars),
                "equation": str(self.equation),
                "sections": [str(s) for s in self.sections]}
