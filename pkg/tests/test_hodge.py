import pytest

from adedefect.errors import HypothesisViolated
from adedefect.grammar import parse_polynomial
from adedefect.hodge import (CAVEAT, assemble_smooth, assemble_toric,
                             hodge_report, resolution_small_hodge)
from adedefect.models import (P3_VARS, P4_VARS, CyclicCoverModel, Flag, P4Model,
                              binom, h0_line, p4_hodge_inputs)
from adedefect.resolution import Defect
from adedefect.toric import p4_toric_model

from conftest import SEGRE

FERMAT5 = "x0^5 + x1^5 + x2^5 + x3^5 + x4^5"


def euler_number_oracle(d):
    """chi_top of a smooth degree-d threefold: d * [h^3] (1+h)^5 / (1+dh)."""
    return d * sum(binom(5, 3 - j) * (-d) ** j for j in range(4))


def test_smooth_quintic():
    assert assemble_smooth(p4_hodge_inputs(5), 0, 0) == (1, 101)


def test_segre_cubic_formula():
    assert assemble_smooth(p4_hodge_inputs(3), 10, 5) == (16, 0)


def test_one_node_double_solid():
    m = CyclicCoverModel(2, 2, parse_polynomial(
        "y0^2*(y1^2+y2^2+y3^2) + y1^4 + y2^4 + y3^4", P3_VARS))
    h11, _ = assemble_smooth(m.hodge_inputs(), 1, 0)
    assert h11 == 2


@pytest.mark.parametrize("d", range(2, 9))
def test_p4_reduction(d):
    hi = p4_hodge_inputs(d)
    for mu, delta in ((0, 0), (3, 1), (10, 5)):
        assert assemble_smooth(hi, mu, delta)[0] == 1 + mu + delta


@pytest.mark.parametrize("d", range(2, 7))
def test_clemens_consistency(d):
    m = CyclicCoverModel(2, d, parse_polynomial(
        " + ".join(f"{v}^{2 * d}" for v in P3_VARS), P3_VARS))
    hi = m.hodge_inputs()
    for mu, delta in ((0, 0), (1, 0), (6, 2)):
        assert assemble_smooth(hi, mu, delta)[0] == 1 + mu + delta


@pytest.mark.parametrize("d", range(2, 7))
def test_euler_characteristic(d):
    h11, h12 = assemble_smooth(p4_hodge_inputs(d), 0, 0)
    h30 = h0_line(4, d - 5)
    assert 2 * (h11 - h12) + 2 - 2 * h30 == euler_number_oracle(d)


def test_toric_cross_path_quintic():
    m = p4_toric_model(parse_polynomial(FERMAT5, P4_VARS), 5)
    ti = m.hodge_inputs()
    pi = p4_hodge_inputs(5)
    assert (ti.h0_K2Y, ti.h0_KY) == (pi.h0_K2Y, pi.h0_KY) == (126, 1)
    assert ti.h0_omega3_Y == pi.h4_omega1_mY == 24
    assert assemble_toric(ti, 0, 0) == assemble_smooth(pi, 0, 0) == (1, 101)


def test_toric_segre():
    m = p4_toric_model(parse_polynomial(SEGRE, P4_VARS), 3)
    assert assemble_toric(m.hodge_inputs(), 10, 5) == (16, 0)


def test_small_hodge_numbers():
    assert resolution_small_hodge(p4_hodge_inputs(4)) == (0, 0)
    m = CyclicCoverModel(3, 2, parse_polynomial(
        "y0^6 + y1^6 + y2^6 + y3^6", P3_VARS))
    assert resolution_small_hodge(m.hodge_inputs()) == (0, 0)
    t = p4_toric_model(parse_polynomial(FERMAT5, P4_VARS), 5)
    assert resolution_small_hodge(t.hodge_inputs()) == (0, 0)


def test_failed_flag_raises():
    hi = p4_hodge_inputs(4)
    hi.flags = hi.flags + [Flag("forced", False, "computed-zero")]
    with pytest.raises(HypothesisViolated):
        assemble_smooth(hi, 0, 0)


def test_report_fields_and_invalid_marker():
    m = P4Model(3, parse_polynomial(SEGRE, P4_VARS))
    rep = hodge_report(m, Defect(10, 5, 5))
    d = rep.to_dict()
    assert d["status"] == "VALID" and d["caveat"] == CAVEAT
    assert {f["provenance"] for f in d["flags"]} == {"computed-zero"}
    assert d["inputs"]["h0_K2Y"] == 5
    bad = hodge_report(m, Defect(10, 10, 0))  # h12 = 5 - 10 < 0
    assert not bad.valid and bad.h12 == -5
    assert bad.to_dict()["status"] == "INVALID"
