"""Resolution engine on normal forms.

Hand chart computations (variables x, y, z, w; chart j sets x_j = v):

* A_n, f = x^2+y^2+z^2+w^(n+1): in chart w the strict transform is
  x'^2+y'^2+z'^2+w^(n-1), an A_(n-2) at the origin; the other charts are
  smooth along v = 0.  So the tree is a path with ceil(n/2) nodes.
* D4, f = x^2+y^2+z^3+z*w^2: chart z gives x'^2+y'^2+z(1+w'^2); on z = 0
  the singular points are w'^2 + 1 = 0 (a conjugate pair of A1 points);
  chart w gives x'^2+y'^2+w(z'^3+z'), whose singular point on w = 0 in its own
  region is the origin (z'^3 + z' = 0 with z' = 0), again an A1.
  mu = 1 + 1 + 2 = 4.
* D5 -> A1 + A3 (mu 4), D6 -> A1 + D4 (mu 6), E6 -> A5 (mu 4),
  E7 -> D6 (mu 7), E8 -> E7 (mu 8).
"""

import random

import pytest

from adedefect.errors import (DepthExceeded, EliminationNotTriangular,
                              NotDoublePoint, PositiveDimensionalSingularLocus)
from adedefect.linalg import matrix_rank
from adedefect.poly import MultiPoly
from adedefect.resolution import (LocalDatum, blow_up_step, collect_condition,
                                  condition_matrix_from_data, defect,
                                  find_exceptional_singularities,
                                  resolve_singular_point, strict_transform,
                                  verify_double_point)

from conftest import LOCAL_VARS, local_poly

NORMAL_FORMS = {
    "D4": ("x^2 + y^2 + z^3 + z*w^2", 4),
    "D5": ("x^2 + y^2 + z^4 + z*w^2", 4),
    "D6": ("x^2 + y^2 + z^5 + z*w^2", 6),
    "E6": ("x^2 + y^2 + z^3 + w^4", 4),
    "E7": ("x^2 + y^2 + z^3 + z*w^3", 7),
    "E8": ("x^2 + y^2 + z^3 + w^5", 8),
}


def resolve(text, sections=("1",)):
    return resolve_singular_point(
        LocalDatum(local_poly(text), [local_poly(s) for s in sections]))


def test_verify_double_point():
    assert verify_double_point(local_poly("x^2+y^2+z^2+w^2")) == 2
    assert verify_double_point(local_poly("x")) == 1
    assert verify_double_point(local_poly("x^2+y^2+z^3+w^5")) == 2


def test_blow_up_step_a3():
    d = LocalDatum(local_poly("x^2+y^2+z^2+w^4"), [local_poly("3 + 5*w + x")])
    out = blow_up_step(d, 3)
    assert out.equation == local_poly("x^2+y^2+z^2+w^2")
    assert out.residuals[0].constant_term() == 5


def test_blow_up_step_rejects_non_double_point():
    with pytest.raises(NotDoublePoint):
        blow_up_step(LocalDatum(local_poly("x^3+y^3+z^3+w^3")), 0)


def test_a1_strict_transforms_are_smooth_on_exceptional_divisor():
    f = local_poly("x^2+y^2+z^2+w^2")
    for chart in range(4):
        assert find_exceptional_singularities(strict_transform(f, chart), chart) == []


def test_a3_single_exceptional_point():
    fs = local_poly("x^2+y^2+z^2+w^2")
    (pt, fld), = find_exceptional_singularities(fs, 3)
    assert all(c == 0 for c in pt) and fld is None


def test_d4_exceptional_points_deduplicated():
    f = local_poly("x^2+y^2+z^3+z*w^2")
    in_w = find_exceptional_singularities(strict_transform(f, 3), 3)
    assert [p for p, _ in in_w] == [(0, 0, 0, 0)]
    in_z = find_exceptional_singularities(strict_transform(f, 2), 2)
    assert len(in_z) == 1
    (pt, fld), = in_z
    assert fld.minpoly == (1, 0, 1)
    assert pt[3] * pt[3] == -1


@pytest.mark.parametrize("n", range(1, 9))
def test_an_chain(n):
    tree = resolve(f"x^2+y^2+z^2+w^{n + 1}")
    assert tree.mu == (n + 1) // 2
    node, length = tree, 1
    while node.children:
        assert len(node.children) == 1
        node, length = node.children[0], length + 1
    assert length == (n + 1) // 2


@pytest.mark.parametrize("name", sorted(NORMAL_FORMS))
def test_de_normal_forms(name):
    text, mu = NORMAL_FORMS[name]
    assert resolve(text).mu == mu


def test_d4_tree_shape():
    tree = resolve("x^2+y^2+z^3+z*w^2")
    assert sorted(c.orbit for c in tree.children) == [1, 2]
    assert sum(1 for _ in tree.nodes()) == 3
    pair = next(c for c in tree.children if c.orbit == 2)
    assert pair.field.minpoly == (1, 0, 1)


def test_a3_conditions_are_value_and_w_derivative():
    rng = random.Random(3)
    monos = [m for m in
             [(a, b, c, d) for a in range(3) for b in range(3)
              for c in range(3) for d in range(3)] if sum(m) <= 3]
    for _ in range(10):
        g = MultiPoly(LOCAL_VARS, {m: rng.randint(-9, 9) for m in monos})
        tree = resolve_singular_point(
            LocalDatum(local_poly("x^2+y^2+z^2+w^4"), [g]))
        rows = tree.condition_rows()
        assert rows == [[g.constant_term()], [g.diff(3).constant_term()]]


def test_conjugate_pair_contributes_two_rows():
    tree = resolve("x^2+y^2+z^3+z*w^2", ["1", "z", "w", "z*w", "w^2"])
    pair = next(c for c in tree.children if c.orbit == 2)
    assert len(pair.rows) == 2


def test_collect_condition_zero_residuals():
    d = LocalDatum(local_poly("x^2+y^2+z^2+w^2"), [local_poly("x"), local_poly("w")])
    assert collect_condition(d) == [[0, 0]]
    assert collect_condition(LocalDatum(local_poly("x^2+y^2+z^2+w^2"))) == [[]]


def test_errors_for_non_ade_input():
    with pytest.raises(NotDoublePoint):
        resolve("x^3 + y^3 + z^3 + w^3")
    with pytest.raises(NotDoublePoint):
        resolve("x + y^2")
    with pytest.raises(PositiveDimensionalSingularLocus):
        resolve("x^2 + y^2 + (z^2 + w^2)^2")
    with pytest.raises(DepthExceeded):
        resolve("x^2 + y^2 + z^2 + w^40")


def test_elimination_not_triangular():
    # on x = 0: w = 0, then (yz - 2)^2 and y^2 - z^3 - 1 couple y and z
    fs = local_poly("w^2 + x*(y^2 - z^3 - 1) + (y*z - 2)^2")
    with pytest.raises(EliminationNotTriangular):
        find_exceptional_singularities(fs, 0)


def test_depth_bound_override():
    tree = resolve_singular_point(LocalDatum(local_poly("x^2+y^2+z^2+w^40")),
                                  depth_bound=32)
    assert tree.mu == 20


def test_tree_serialization():
    d = resolve("x^2+y^2+z^3+z*w^2", ["1", "w"]).to_dict()
    assert d["chart_path"] == [] and d["orbit"] == 1
    pair = next(c for c in d["children"] if c["orbit"] == 2)
    assert pair["field"][0]["minpoly"] == "a1_0^2 + 1"
    assert len(pair["condition_rows"]) == 2


def test_condition_matrix_and_defect():
    data = [LocalDatum(local_poly("x^2+y^2+z^2+w^2").translate([0, 0, 0, 0]),
                       [local_poly("1"), local_poly("x")])]
    cm = condition_matrix_from_data(data, 2)
    assert defect(cm).as_tuple() == (1, 1, 0)
    empty = condition_matrix_from_data([], 35)
    assert empty.matrix.rows == 0 and defect(empty).as_tuple() == (0, 0, 0)


def test_parallel_resolution_matches_serial():
    data = [LocalDatum(local_poly(t), [local_poly("1"), local_poly("w")])
            for t, _ in NORMAL_FORMS.values()]
    a = condition_matrix_from_data(data, 2, threads=1)
    b = condition_matrix_from_data(data, 2, threads=3)
    assert a.matrix == b.matrix and a.mu == b.mu == sum(m for _, m in NORMAL_FORMS.values())
    assert matrix_rank(a.matrix) == 2
