"""Complete simplicial toric fourfolds with an ample hypersurface.

The divisor ``D = sum a_rho D_rho`` has polytope
``P = {m : <m, rho> >= -a_rho}``; Y is the zero set of a Laurent polynomial
with exponents in P.  Sections of ``O(cY + K)`` are the lattice points in the
interior of ``cP``, and 3-forms twisted by Y are counted on the faces of P.
"""

from fractions import Fraction
from itertools import combinations
from math import comb, gcd

import numpy as np

from .errors import (InvalidModel, NonSimplicialFan,
                     PointOnSingularAmbientLocus, PointOutsideTorus,
                     UnboundedPolytope)
from .fields import common_field, field_of, lift
from .linalg import determinant, gauss_rank, solve
from .models import (CERTIFIED, COMPUTED, COMPUTED_ZERO, Flag,
                     _check_point_on_singular)
from .poly import MultiPoly
from .resolution import LocalDatum

T_VARS = ("t1", "t2", "t3", "t4")
DIM = 4


def _dot(m, r):
    return sum(a * b for a, b in zip(m, r))


class ToricModel:
    kind = "toric"

    def __init__(self, rays, cones, ample, laurent, validate=True):
        self.rays = [tuple(int(x) for x in r) for r in rays]
        self.cones = [tuple(sorted(int(i) for i in c)) for c in cones]
        self.ample = [int(a) for a in ample]
        if laurent.vars != T_VARS:
            if laurent.nvars != DIM:
                raise InvalidModel("laurent polynomial must be in t1..t4",
                                   "ToricModel")
            laurent = laurent.rename(T_VARS)
        self.laurent = laurent
        self._vertices = None
        if validate:
            self.validate()

    # -- validation ----------------------------------------------------------
    def validate(self):
        if len(self.ample) != len(self.rays):
            raise InvalidModel("one ample coefficient per ray is required",
                               "ToricModel")
        for r in self.rays:
            if len(r) != DIM or not any(r):
                raise InvalidModel(f"ray {r} is not a nonzero vector in Z^4",
                                   "ToricModel")
            if gcd(*r) != 1:
                raise InvalidModel(f"ray {r} is not primitive", "ToricModel")
        check_simplicial(self.rays, self.cones)
        check_complete(self.rays, self.cones)
        check_ample(self.rays, self.cones, self.ample)
        if self.laurent.is_zero():
            raise InvalidModel("laurent polynomial is zero", "ToricModel")
        for m in self.laurent.terms:
            for r, a in zip(self.rays, self.ample):
                if _dot(m, r) < -a:
                    raise InvalidModel(f"exponent {m} lies outside the polytope "
                                       "of the ample divisor", "ToricModel")
        check_avoids_singular_locus(self)

    # -- polytope ------------------------------------------------------------
    def vertices(self):
        """Vertex ``m_sigma`` of P for every maximal cone (rational)."""
        if self._vertices is None:
            self._vertices = [cone_vertex(self.rays, c, self.ample)
                              for c in self.cones]
        return self._vertices

    def tight_set(self, m):
        return tuple(i for i, (r, a) in enumerate(zip(self.rays, self.ample))
                     if _dot(m, r) == -a)

    def is_smooth(self):
        return all(is_unimodular([self.rays[i] for i in c]) for c in self.cones)

    # -- sections and charts ---------------------------------------------------
    def section_exponents(self):
        return toric_lattice_points(self, 2, True)

    def section_count(self):
        return len(self.section_exponents())

    def local_datum_at(self, point, chart=None):
        """Local chart at a torus point; ``chart`` is ignored."""
        point = list(point)
        if len(point) != DIM:
            raise InvalidModel("torus point needs 4 coordinates",
                               "local_datum_at")
        if any(not c for c in point):
            raise PointOutsideTorus("declared point has a zero coordinate; only "
                                    "points of the dense torus are supported",
                                    "local_datum_at")
        fld = common_field(*(field_of(c) for c in point))
        point = [lift(c, fld) for c in point]
        images = [MultiPoly.var(T_VARS, v) + c for v, c in zip(T_VARS, point)]
        f = _clear(self.laurent).substitute(images)
        _check_point_on_singular(f)
        sections = [MultiPoly.monomial(T_VARS, m) for m in self.section_exponents()]
        shift = _clearing_shift(sections)
        residuals = [s.shift_exponents(shift).substitute(images) for s in sections]
        return LocalDatum(f, residuals, fld)

    def hodge_inputs(self):
        return toric_hodge_inputs(self)

    def summary(self):
        return {"type": "toric", "rays": [list(r) for r in self.rays],
                "cones": [list(c) for c in self.cones], "ample": self.ample,
                "laurent": str(self.laurent)}


def _clearing_shift(polys):
    """Exponent shift making every term of every polynomial non-negative."""
    lows = [0] * DIM
    for p in polys:
        for e in p.terms:
            lows = [min(a, b) for a, b in zip(lows, e)]
    return tuple(-a for a in lows)


def _clear(p):
    """``p`` times a monomial (a unit on the torus) so that it is a polynomial."""
    return p.shift_exponents(_clearing_shift([p]))


# -- fan checks --------------------------------------------------------------

def is_unimodular(vectors):
    """True if the vectors extend to a basis of Z^4 (gcd of maximal minors 1)."""
    k = len(vectors)
    g = 0
    for cols in combinations(range(DIM), k):
        minor = determinant([[v[c] for c in cols] for v in vectors])
        g = gcd(g, int(minor))
    return g == 1


def check_simplicial(rays, cones):
    if not cones:
        raise NonSimplicialFan("fan has no maximal cones", "ToricModel")
    for c in cones:
        if len(c) != DIM or len(set(c)) != DIM:
            raise NonSimplicialFan(f"cone {list(c)} does not have 4 rays; only "
                                   "simplicial fans are supported", "ToricModel")
        if any(i < 0 or i >= len(rays) for i in c):
            raise InvalidModel(f"cone {list(c)} refers to a missing ray",
                               "ToricModel")
        if determinant([rays[i] for i in c]) == 0:
            raise NonSimplicialFan(f"rays of cone {list(c)} are linearly "
                                   "dependent; only simplicial fans are "
                                   "supported", "ToricModel")


def _walls(cones):
    walls = {}
    for k, c in enumerate(cones):
        for w in combinations(c, DIM - 1):
            walls.setdefault(w, []).append(k)
    return walls


def _side(rays, wall, i):
    """Sign of ray ``i`` relative to the hyperplane spanned by ``wall``."""
    return determinant([rays[j] for j in wall] + [rays[i]])


def check_complete(rays, cones, samples=200, seed=20240917):
    """Walls shared by exactly two cones on opposite sides, plus sampling."""
    for wall, owners in _walls(cones).items():
        if len(owners) != 2:
            raise UnboundedPolytope(f"wall {list(wall)} lies in {len(owners)} "
                                    "cone(s): fan is not complete", "ToricModel")
        a, b = (next(i for i in cones[k] if i not in wall) for k in owners)
        if _side(rays, wall, a) * _side(rays, wall, b) >= 0:
            raise UnboundedPolytope(f"cones on wall {list(wall)} overlap",
                                    "ToricModel")
    rng = np.random.default_rng(seed)
    for v in rng.integers(-1000, 1001, size=(samples, DIM)):
        v = [int(x) for x in v]
        if not any(v):
            continue
        if not any(_in_cone(rays, c, v) for c in cones):
            raise UnboundedPolytope(f"direction {v} lies in no cone: fan is not "
                                    "complete", "ToricModel")


def _in_cone(rays, cone, v):
    a = [[rays[i][r] for i in cone] for r in range(DIM)]
    coeffs = solve(a, v)
    return coeffs is not None and all(x >= 0 for x in coeffs)


def cone_vertex(rays, cone, ample, dilation=1):
    a = [list(rays[i]) for i in cone]
    b = [-dilation * ample[i] for i in cone]
    m = solve(a, b)
    if m is None:
        raise NonSimplicialFan(f"cone {list(cone)} is degenerate", "ToricModel")
    return tuple(m)


def check_ample(rays, cones, ample):
    """Strict convexity of the support function across every wall."""
    verts = {c: cone_vertex(rays, c, ample) for c in cones}
    for wall, owners in _walls(cones).items():
        for k, other in ((owners[0], owners[1]), (owners[1], owners[0])):
            i = next(j for j in cones[other] if j not in wall)
            if _dot(verts[cones[k]], rays[i]) <= -ample[i]:
                raise InvalidModel(f"divisor is not ample: not strictly convex "
                                   f"across wall {list(wall)}", "ToricModel")


def face_cones(cones):
    """All cones of the fan of dimension 2..4, as sorted ray-index tuples."""
    out = set()
    for c in cones:
        for k in range(2, DIM + 1):
            out.update(combinations(c, k))
    return sorted(out)


def check_avoids_singular_locus(model):
    """Y must miss every orbit of a non-unimodular cone.

    Y meets the orbit of ``tau`` unless the terms of the Laurent polynomial on
    the face of P dual to ``tau`` reduce to a single monomial.
    """
    for tau in face_cones(model.cones):
        if is_unimodular([model.rays[i] for i in tau]):
            continue
        on_face = [m for m in model.laurent.terms
                   if all(_dot(m, model.rays[i]) == -model.ample[i] for i in tau)]
        if len(on_face) != 1:
            raise PointOnSingularAmbientLocus(
                f"Y meets the singular orbit of cone {list(tau)}",
                "ToricModel")


# -- lattice points and cohomology -------------------------------------------

def bounding_box(model, dilation):
    verts = model.vertices()
    lo, hi = [], []
    for j in range(DIM):
        xs = [dilation * v[j] for v in verts]
        lo.append(int(np.floor(float(min(xs)))) - 1)
        hi.append(int(np.ceil(float(max(xs)))) + 1)
    return lo, hi


def toric_lattice_points(model, dilation=1, interior=False):
    """Lattice points of ``dilation * P`` (or of its interior), sorted."""
    if dilation not in (1, 2):
        raise InvalidModel("dilation must be 1 or 2", "toric_lattice_points")
    if not model.cones:
        raise UnboundedPolytope("fan has no cones", "toric_lattice_points")
    lo, hi = bounding_box(model, dilation)
    axes = [np.arange(a, b + 1, dtype=np.int64) for a, b in zip(lo, hi)]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, DIM)
    rays = np.array(model.rays, dtype=np.int64)
    bound = -dilation * np.array(model.ample, dtype=np.int64) + int(interior)
    mask = np.all(grid @ rays.T >= bound, axis=1)
    return sorted(tuple(int(x) for x in p) for p in grid[mask])


def toric_h0_omega3_twist(model):
    """h^0 of Zariski 3-forms twisted by Y: sum over facets + 4 * interior."""
    total = 0
    for m in toric_lattice_points(model, 1, False):
        tight = model.tight_set(m)
        if not tight:
            total += 4
        elif len(tight) == 1:
            total += 1
    return total


def toric_h0_omega_weights(model, p=3):
    """Independent count: sum over m in P of C(4 - rank of tight rays, p).

    Valid for smooth complete fans and any divisor; used as an oracle.
    """
    total = 0
    for m in toric_lattice_points(model, 1, False):
        tight = [[Fraction(x) for x in model.rays[i]] for i in model.tight_set(m)]
        total += comb(DIM - gauss_rank(tight), p)
    return total


def toric_h3_omega3(model):
    """h^3 of Zariski 3-forms = b_6 = #rays - 4 for simplicial complete fans."""
    check_simplicial(model.rays, model.cones)
    return len(model.rays) - DIM


class ToricInputs:
    """Cohomology numbers consumed by the toric Hodge formulae."""

    def __init__(self, h3_omega, h0_K2Y, h0_KY, h0_omega3_Y, flags, extra=None):
        self.h3_omega = h3_omega
        self.h0_K2Y = h0_K2Y
        self.h0_KY = h0_KY
        self.h0_omega3_Y = h0_omega3_Y
        self.h01_X = 0
        self.h02_X = 0
        self.h1_O_mY = 0
        self.h2_O_mY = 0
        self.flags = flags
        self.extra = extra or {}

    def to_dict(self):
        d = {k: v for k, v in self.__dict__.items() if k not in ("flags", "extra")}
        d["flags"] = [f.to_dict() for f in self.flags]
        d.update(self.extra)
        return d


def toric_hodge_inputs(model):
    flags = [
        Flag("fan simplicial and complete", True, COMPUTED),
        Flag("O_X(Y) ample", True, COMPUTED),
        Flag("Y misses sing(X)", True, COMPUTED),
        Flag("h^i(O_X)=0 for i>0", True, CERTIFIED),
        Flag("h1(O_X(-Y))=h2(O_X(-Y))=0 (Bott vanishing, Y ample)", True,
             CERTIFIED),
    ]
    h0_om = toric_h0_omega3_twist(model)
    extra = {}
    if model.is_smooth():
        w = toric_h0_omega_weights(model)
        extra["h0_omega3_Y_weights"] = w
        flags.append(Flag("face formula = weight formula", w == h0_om, COMPUTED))
    return ToricInputs(
        h3_omega=toric_h3_omega3(model),
        h0_K2Y=len(toric_lattice_points(model, 2, True)),
        h0_KY=len(toric_lattice_points(model, 1, True)),
        h0_omega3_Y=h0_om, flags=flags, extra=extra)


# -- standard fans -------------------------------------------------------------

def _unit(i):
    return tuple(1 if j == i else 0 for j in range(DIM))


def p4_fan():
    rays = [_unit(i) for i in range(DIM)] + [(-1, -1, -1, -1)]
    return rays, [c for c in combinations(range(5), DIM)]


def p1p3_fan():
    """P^1 x P^3: rays +-e1, then e2, e3, e4, -e2-e3-e4."""
    rays = [_unit(0), tuple(-x for x in _unit(0)), _unit(1), _unit(2), _unit(3),
            (0, -1, -1, -1)]
    cones = [(i,) + c for i in (0, 1) for c in combinations(range(2, 6), 3)]
    return rays, [tuple(sorted(c)) for c in cones]


def bundle_fan(d):
    """P(O + O(d)) over P^3."""
    rays = [_unit(0), _unit(1), _unit(2), (-1, -1, -1, d), _unit(3),
            tuple(-x for x in _unit(3))]
    cones = [c + (j,) for j in (4, 5) for c in combinations(range(4), 3)]
    return rays, cones


def blowup_p4_fan():
    """P^4 blown up at the fixed point of the cone spanned by e1..e4."""
    rays, cones = p4_fan()
    rays = rays + [(1, 1, 1, 1)]
    out = [c for c in cones if 4 in c]
    out += [tuple(sorted(c + (5,))) for c in combinations(range(4), 3)]
    return rays, out


def laurent_from_p4(F):
    """Dehomogenize a form in x0..x4 at x0 = 1 and rename to t1..t4."""
    images = [MultiPoly.constant(T_VARS, 1)] + [MultiPoly.var(T_VARS, v)
                                                 for v in T_VARS]
    return F.substitute(images)


def p4_toric_model(F, degree):
    rays, cones = p4_fan()
    return ToricModel(rays, cones, [0, 0, 0, 0, degree], laurent_from_p4(F))


def p4_point_to_torus(point):
    """(x0 : ... : x4) with x0 != 0 -> (x1/x0, ..., x4/x0)."""
    x0 = point[0]
    if not x0:
        raise PointOutsideTorus("x0 = 0 is outside the torus chart",
                                "p4_point_to_torus")
    return [x / x0 for x in point[1:]]
