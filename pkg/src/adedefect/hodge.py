"""Hodge numbers of the big resolution from ambient cohomology and (mu, delta).

The formulae are evaluated term by term, with no simplification, and every
term is kept in the report so a wrong number can be traced to one input.
"""

from dataclasses import dataclass, field as dc_field

from .errors import HypothesisViolated

CERTIFICATE = ("every declared point was resolved by blowing up isolated "
               "double points; the A-D-E type itself is not classified")
CAVEAT = ("declared-points-only: mu and delta cover the singular points "
          "listed in the job; undeclared singular points are not searched for")


def _require(flags):
    bad = [f.name for f in flags if not f.value]
    if bad:
        raise HypothesisViolated("hypothesis check failed: " + ", ".join(bad),
                                 "assemble")


def assemble_smooth(inputs, mu, delta):
    """h11 and h12 for Y in a smooth ambient fourfold X."""
    _require(inputs.flags)
    h11 = (inputs.h11_X
           + (inputs.chi_omega1_mY - inputs.h4_omega1_mY)
           - (inputs.chi_O_m2Y - inputs.h4_O_m2Y)
           - 2 * inputs.h1_O_mY
           + mu + delta)
    h12 = (inputs.h41_X + inputs.h02_X + inputs.h0_K2Y
           - inputs.h31_X - inputs.h4_omega1_mY - inputs.h0_KY
           - mu + delta)
    return h11, h12


def assemble_toric(inputs, mu, delta):
    """h11 and h12 for ample Y in a complete simplicial toric fourfold."""
    _require(inputs.flags)
    h11 = inputs.h3_omega + mu + delta
    h12 = inputs.h0_K2Y - inputs.h0_KY - inputs.h0_omega3_Y - mu + delta
    return h11, h12


def resolution_small_hodge(inputs):
    """``(h01, h02)`` of the resolution."""
    return inputs.h01_X - inputs.h1_O_mY, inputs.h02_X


@dataclass
class HodgeReport:
    model: dict
    formula: str
    mu: int
    rank: int
    delta: int
    h11: int
    h12: int
    h01: int
    h02: int
    inputs: dict
    flags: list
    per_point: list = dc_field(default_factory=list)
    problems: list = dc_field(default_factory=list)

    @property
    def valid(self):
        return not self.problems

    def to_dict(self):
        return {
            "model": self.model,
            "formula": self.formula,
            "mu": self.mu, "rank": self.rank, "delta": self.delta,
            "h11": self.h11, "h12": self.h12, "h01": self.h01, "h02": self.h02,
            "inputs": self.inputs,
            "flags": [f.to_dict() for f in self.flags],
            "per_point": self.per_point,
            "certificate": CERTIFICATE,
            "caveat": CAVEAT,
            "status": "VALID" if self.valid else "INVALID",
            "problems": self.problems,
        }


def hodge_report(model, result, per_point=()):
    """Assemble the report for ``model`` given a :class:`Defect` result.

    A failed hypothesis flag or a negative Hodge number marks the report
    INVALID instead of raising; the numbers are still shown.
    """
    inputs = model.hodge_inputs()
    mu, rank, delta = result.mu, result.rank, result.delta
    problems = [f"flag failed: {f.name}" for f in inputs.flags if not f.value]
    toric = model.kind == "toric"
    assemble = assemble_toric if toric else assemble_smooth
    try:
        h11, h12 = assemble(inputs, mu, delta)
    except HypothesisViolated:
        # still evaluate the formula so the report shows every term
        saved = inputs.flags
        inputs.flags = []
        h11, h12 = assemble(inputs, mu, delta)
        inputs.flags = saved
    h01, h02 = resolution_small_hodge(inputs)
    if delta != mu - rank:
        problems.append("delta != mu - rank")
    for name, v in (("h11", h11), ("h12", h12), ("h01", h01), ("h02", h02)):
        if v < 0:
            problems.append(f"{name} is negative ({v}); is the singular-point "
                            "list complete?")
    return HodgeReport(model.summary(), "toric" if toric else "smooth",
                       mu, rank, delta, h11, h12, h01, h02, inputs.to_dict(),
                       list(inputs.flags), list(per_point), problems)
