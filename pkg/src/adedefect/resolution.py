"""Big resolution of an isolated double point and the conditions it imposes.

A singular point is blown up, the singular points of the strict transform on
the exceptional divisor are found, and the procedure recurses on each of them.
Every center is a double point of the current strict transform, and blowing up
a point of a smooth fourfold has discrepancy 3.  So the exceptional divisor
created at a center carries the exponent ``2*m - k = 1 + sum(a_l)``, summed
over the earlier exceptional divisors through that center.  Write a section
``g`` locally as ``prod(e_l^a_l) * r`` near a center.  Then ``g`` lies in the
ideal along the new divisor exactly when ``r`` vanishes at the center, and the
next residual is ``r∘chart / v``.  Each center therefore contributes one
scalar condition: the value of the current residual there.

To keep the conditions linear on the whole section space, the residual is
updated as ``(r∘chart - r(0)) / v``.  This agrees with the true residual on
the kernel of all earlier conditions, so the common kernel is unchanged.

A center with coordinates in a degree ``e`` extension stands for its ``e``
Galois conjugates: it contributes ``e`` to mu and ``e`` rational rows.
"""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

from .errors import (DepthExceeded, EliminationNotTriangular,
                     NotDoublePoint, PositiveDimensionalSingularLocus,
                     VariableMismatch)
from .fields import absolute_degree, common_field, field_of, lift, restrict_scalars
from .linalg import RatMatrix, matrix_rank
from .poly import MultiPoly
from .roots import univariate_roots

DEFAULT_DEPTH_BOUND = 16


@dataclass(frozen=True)
class LocalDatum:
    """Local equation of Y at the origin plus the sections in the same chart."""

    equation: MultiPoly
    residuals: tuple = ()
    field: object = None

    def __post_init__(self):
        object.__setattr__(self, "residuals", tuple(self.residuals))
        for r in self.residuals:
            if r.vars != self.equation.vars:
                raise VariableMismatch("section residuals must share the "
                                       "variables of the local equation",
                                       "LocalDatum")
        fld = common_field(self.field, self.equation.field(),
                           *(r.field() for r in self.residuals))
        object.__setattr__(self, "field", fld)

    def change_coordinates(self, images):
        """Pull equation and residuals back along a linear change of variables."""
        return LocalDatum(self.equation.substitute(images),
                          [r.substitute(images) for r in self.residuals],
                          self.field)


@dataclass
class BlowupTree:
    center: tuple
    field: object
    chart_path: tuple
    rows: list
    depth: int
    children: list = dc_field(default_factory=list)

    @property
    def orbit(self):
        """Number of conjugate centers this node stands for."""
        return absolute_degree(self.field)

    def nodes(self):
        yield self
        for c in self.children:
            yield from c.nodes()

    @property
    def mu(self):
        return sum(n.orbit for n in self.nodes())

    def condition_rows(self):
        return [row for n in self.nodes() for row in n.rows]

    def shape(self):
        """Nested ``(orbit, [children...])`` summary, handy in tests."""
        return (self.orbit, [c.shape() for c in self.children])

    def to_dict(self):
        return {
            "center": [str(x) for x in self.center],
            "field": [] if self.field is None else [
                {"name": f.name, "minpoly": f.minpoly_str(),
                 "irreducible": f.irreducible}
                for f in self.field.tower()],
            "chart_path": list(self.chart_path),
            "depth": self.depth,
            "orbit": self.orbit,
            "condition_rows": [[str(x) for x in row] for row in self.rows],
            "children": [c.to_dict() for c in self.children],
        }


def verify_double_point(f):
    """Order of vanishing of ``f`` at the origin (2 for a double point)."""
    return f.order()


def strict_transform(f, chart):
    return f.chart_map(chart).exact_divide(chart, 2)


def transform_residual(r, chart):
    return (r - r.constant_term()).chart_map(chart).exact_divide(chart, 1)


def blow_up_step(datum, chart):
    """Strict transform of the equation and updated residuals in one chart.

    The subtracted constants are the conditions at the current center; they
    are emitted by :func:`collect_condition`, not here.
    """
    if verify_double_point(datum.equation) != 2:
        raise NotDoublePoint("blow-up center is not a double point",
                             "blow_up_step")
    return LocalDatum(strict_transform(datum.equation, chart),
                      [transform_residual(r, chart) for r in datum.residuals],
                      datum.field)


# -- zero-dimensional solving by triangular elimination ---------------------

def _univariate_coeffs(e, u):
    out = [0] * (e.degree_in(u) + 1)
    for exp, c in e.terms.items():
        out[exp[u]] = c
    return out


def _linear_pivot(eqs, free):
    for k, e in enumerate(eqs):
        for u in sorted(free):
            if e.degree_in(u) == 1:
                coef = e.coefficient(u, 1)
                if coef.is_constant():
                    return k, u, coef.constant_term()
    return None


def _solve(eqs, free, fld, stack, prefix):
    eqs = [e for e in dict.fromkeys(eqs) if not e.is_zero()]
    if any(e.is_constant() for e in eqs):
        return []
    if not eqs:
        if free:
            raise PositiveDimensionalSingularLocus(
                "singular locus on the exceptional divisor is not finite",
                "find_exceptional_singularities")
        return [(stack, fld)]
    piv = _linear_pivot(eqs, free)
    if piv is not None:
        k, u, c = piv
        expr = eqs[k].coefficient(u, 0) * (-1 / lift(c, field_of(c)))
        rest = [e.subs(u, expr) for i, e in enumerate(eqs) if i != k]
        return _solve(rest, free - {u}, fld, stack + [(u, expr)], prefix)
    for e in eqs:
        used = e.used_variables()
        if len(used) == 1:
            (u,) = used
            out = []
            for root in univariate_roots(_univariate_coeffs(e, u), fld, prefix):
                rest = [q.subs(u, root.value) for q in eqs]
                const = MultiPoly.constant(e.vars, root.value)
                out.extend(_solve(rest, free - {u}, root.field,
                                  stack + [(u, const)], prefix))
            return out
    raise EliminationNotTriangular(
        "system does not reduce to univariate root finding: "
        + "; ".join(str(e) for e in eqs), "find_exceptional_singularities")


def find_exceptional_singularities(f_strict, chart, field=None, prefix="a"):
    """Singular points of a strict transform on ``{v = 0}`` owned by ``chart``.

    A point belongs to chart ``j`` iff its exceptional coordinates of index
    below ``j`` vanish, so every point is reported by exactly one chart.
    Returns ``[(coordinates, field), ...]``.
    """
    n = f_strict.nvars
    eqs = [f_strict] + f_strict.gradient()
    eqs = [e.subs(chart, 0) for e in eqs]
    eqs += [MultiPoly.var(f_strict.vars, f_strict.vars[i]) for i in range(chart)]
    free = frozenset(i for i in range(n) if i != chart)
    out = []
    for stack, fld in _solve(eqs, free, field, [], prefix):
        point = [lift(0, fld)] * n
        for u, expr in reversed(stack):
            point[u] = lift(expr.evaluate(point), fld)
        out.append((tuple(point), fld))
    return out


def collect_condition(datum):
    """Rational rows of the condition at the origin of ``datum``."""
    values = [r.constant_term() for r in datum.residuals]
    e = absolute_degree(datum.field)
    if not values:
        return [[] for _ in range(e)]
    return restrict_scalars([lift(v, datum.field) for v in values], datum.field)


def resolve_singular_point(datum, depth_bound=DEFAULT_DEPTH_BOUND,
                           center=None, chart_path=(), _depth=0):
    """Run the blow-up recursion; node orbits sum to mu of this point."""
    order = verify_double_point(datum.equation)
    if order != 2:
        what = {-1: "equation is identically zero", 0: "point is not on Y",
                1: "point is smooth"}.get(order, f"multiplicity {order} > 2")
        raise NotDoublePoint(f"center is not a double point: {what}",
                             "resolve_singular_point")
    if center is None:
        center = tuple(lift(0, datum.field) for _ in datum.equation.vars)
    node = BlowupTree(center, datum.field, tuple(chart_path),
                      collect_condition(datum), _depth)
    f = datum.equation
    prefix = "a"
    for chart in range(f.nvars):
        fs = strict_transform(f, chart)
        points = find_exceptional_singularities(fs, chart, datum.field, prefix)
        if not points:
            continue
        if _depth + 1 >= depth_bound:
            raise DepthExceeded(
                f"resolution deeper than {depth_bound} levels (input is not "
                "an A-D-E point?)", "resolve_singular_point")
        residuals = [transform_residual(r, chart) for r in datum.residuals]
        for coords, fld in points:
            child = LocalDatum(fs.translate(coords),
                               [r.translate(coords) for r in residuals], fld)
            node.children.append(resolve_singular_point(
                child, depth_bound, coords, tuple(chart_path) + (chart,),
                _depth + 1))
    return node


# -- global assembly ---------------------------------------------------------

@dataclass
class ConditionMatrix:
    matrix: RatMatrix
    mu: int
    trees: list
    per_point: list

    def to_dict(self):
        return {"mu": self.mu, "rows": self.matrix.rows,
                "cols": self.matrix.cols, "per_point": self.per_point}


@dataclass(frozen=True)
class Defect:
    mu: int
    rank: int
    delta: int

    def as_tuple(self):
        return (self.mu, self.rank, self.delta)


def _resolve_job(args):
    datum, depth_bound = args
    return resolve_singular_point(datum, depth_bound)


def thread_count():
    try:
        return max(1, int(os.environ.get("TOOL_THREADS", "1")))
    except ValueError:
        return 1


def resolve_all(data, depth_bound=DEFAULT_DEPTH_BOUND, threads=None):
    """Resolve several local data; output order follows input order."""
    threads = thread_count() if threads is None else threads
    jobs = [(d, depth_bound) for d in data]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(threads, len(jobs))) as ex:
            return list(ex.map(_resolve_job, jobs))
    return [_resolve_job(j) for j in jobs]


def condition_matrix_from_data(data, ncols, depth_bound=DEFAULT_DEPTH_BOUND,
                               threads=None):
    trees = resolve_all(data, depth_bound, threads)
    rows = []
    per_point = []
    for i, t in enumerate(trees):
        r = t.condition_rows()
        rows.extend(r)
        per_point.append({"index": i, "mu": t.mu, "rows": len(r),
                          "nodes": sum(1 for _ in t.nodes())})
    matrix = RatMatrix(rows, ncols)
    return ConditionMatrix(matrix, sum(t.mu for t in trees), trees, per_point)


def condition_matrix(model, points, depth_bound=DEFAULT_DEPTH_BOUND,
                     threads=None):
    """Condition matrix of the declared singular points over the section basis."""
    data = [model.local_datum_at(p) for p in points]
    return condition_matrix_from_data(data, model.section_count(),
                                      depth_bound, threads)


def defect(cm):
    """``(mu, rank, delta)`` with ``delta = mu - rank``."""
    rank = matrix_rank(cm.matrix)
    delta = cm.mu - rank
    assert delta >= 0, "rank exceeds mu"
    return Defect(cm.mu, rank, delta)
