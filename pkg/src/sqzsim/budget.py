"""Detection-efficiency budget and loss-corrected squeezing inference.

Covers the individual efficiency formulas (Fresnel facet, electronic SNR),
their product, inversion of the loss model to infer the squeezing at the
circuit output from measured dB values, the minimum-uncertainty product
check, and extrapolation of squeezing versus pump power under a
single-pass r = gain*sqrt(P) law.
"""

import json
import math
from dataclasses import dataclass

from .conversions import from_db, to_db


class InfeasibleMeasurementError(ValueError):
    """Measured variance at or below the loss floor 1 - eta; inversion impossible."""


@dataclass(frozen=True)
class EfficiencyBudget:
    """Named efficiency factors of the detection chain; optional ones default to 1."""

    eta_fresnel: float
    eta_filter: float
    eta_pd: float
    eta_e: float
    eta_coupler: float = 1.0
    eta_visibility: float = 1.0
    eta_prop: float = 1.0

    def __post_init__(self):
        for name, value in self.factors(include_unit=True).items():
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")

    def factors(self, include_unit=False):
        table = {
            "fresnel": self.eta_fresnel,
            "filter": self.eta_filter,
            "photodiode": self.eta_pd,
            "electronics": self.eta_e,
            "coupler": self.eta_coupler,
            "visibility": self.eta_visibility,
            "propagation": self.eta_prop,
        }
        if include_unit:
            return table
        keep = {"fresnel", "filter", "photodiode", "electronics"}
        return {k: v for k, v in table.items() if k in keep or v != 1.0}

    def total(self):
        return total_efficiency(self)


def fresnel_efficiency(n1, n2):
    """Facet transmission 1 - ((n1 - n2)/(n1 + n2))^2 at an index step."""
    if n1 <= 0 or n2 <= 0:
        raise ValueError("refractive indices must be positive")
    return 1.0 - ((n1 - n2) / (n1 + n2)) ** 2


def electronic_efficiency(snr_db):
    """Electronic-noise penalty (S - 1)/S for a shot-to-dark SNR given in dB."""
    if snr_db <= 0:
        raise ValueError("SNR must be positive (in dB); noise would swamp the signal")
    snr = 10.0 ** (snr_db / 10.0)
    return (snr - 1.0) / snr


def total_efficiency(budget):
    """Product of all budget factors.

    Factors are multiplied in sorted order so the result is exactly
    invariant under any reordering of the inputs.
    """
    result = 1.0
    for value in sorted(budget.factors(include_unit=True).values()):
        result *= value
    return result


def forward_measured(v_gen_db, eta):
    """Variance seen after a loss channel of efficiency eta, in dB."""
    if not 0.0 <= eta <= 1.0:
        raise ValueError("eta must lie in [0, 1]")
    return to_db(eta * from_db(v_gen_db) + (1.0 - eta))


def infer_generated(v_meas_db, eta):
    """Invert the loss model: dB value at the circuit output before efficiency eta.

    Raises InfeasibleMeasurementError when the measured linear variance is
    at or below the vacuum floor 1 - eta (a negative generated variance).
    """
    if not 0.0 < eta <= 1.0:
        raise ValueError("eta must lie in (0, 1]")
    v_meas = from_db(v_meas_db)
    floor = 1.0 - eta
    if v_meas <= floor:
        raise InfeasibleMeasurementError(
            f"measured variance {v_meas:.6g} is infeasible: at or below the "
            f"loss floor {floor:.6g} for eta={eta:.6g}")
    return to_db((v_meas - floor) / eta)


def purity_product(sq_db, asq_db):
    """Product of the two linear variances; exactly 1 for a minimum-uncertainty pair."""
    return 10.0 ** ((sq_db + asq_db) / 10.0)


def pump_to_r(pump_mw, gain):
    """Single-pass squeezing parameter r = gain * sqrt(pump power)."""
    if pump_mw < 0 or gain < 0:
        raise ValueError("pump power and gain must be >= 0")
    return gain * math.sqrt(pump_mw)


def extrapolate_squeezing(gain, pump_mw, eta_eff=1.0):
    """Best measurable squeezing in dB at a pump power, under effective efficiency eta_eff."""
    if not 0.0 <= eta_eff <= 1.0:
        raise ValueError("eta_eff must lie in [0, 1]")
    r = pump_to_r(pump_mw, gain)
    return to_db(eta_eff * math.exp(-2.0 * r) + (1.0 - eta_eff))


@dataclass(frozen=True)
class SqueezingReport:
    """Raw and loss-corrected squeezing figures with the per-factor budget."""

    raw_sq_db: float
    raw_asq_db: float
    unc_db: float
    eta_total: float
    inferred_sq_db: float
    inferred_asq_db: float
    inferred_sq_unc_db: float
    inferred_asq_unc_db: float
    purity_product: float
    purity_product_db: float
    budget: dict


def _inferred_unc_db(v_meas_db, unc_db, eta):
    # first-order propagation through the linear-variance inversion
    v_meas = from_db(v_meas_db)
    v_gen = (v_meas - (1.0 - eta)) / eta
    d_meas = v_meas * math.log(10.0) / 10.0 * unc_db
    return 10.0 / math.log(10.0) * (d_meas / eta) / v_gen


def build_report(raw_sq_db, raw_asq_db, unc_db=0.05, *, budget=None, eta=None, factors=None):
    """Assemble a SqueezingReport from raw dB values and an efficiency budget.

    Give either a full EfficiencyBudget or a bare total efficiency `eta`;
    `factors` optionally overrides the reported per-factor table.
    """
    if (budget is None) == (eta is None):
        raise ValueError("give exactly one of budget or eta")
    if budget is not None:
        eta = budget.total()
        table = budget.factors()
    else:
        table = {"total": eta}
    if factors is not None:
        table = dict(factors)
    inferred_sq = infer_generated(raw_sq_db, eta)
    inferred_asq = infer_generated(raw_asq_db, eta)
    for inferred, raw in ((inferred_sq, raw_sq_db), (inferred_asq, raw_asq_db)):
        if abs(forward_measured(inferred, eta) - raw) > 1e-9:
            raise AssertionError("loss-model inversion failed to round-trip")
    purity = purity_product(inferred_sq, inferred_asq)
    return SqueezingReport(
        raw_sq_db=float(raw_sq_db),
        raw_asq_db=float(raw_asq_db),
        unc_db=float(unc_db),
        eta_total=float(eta),
        inferred_sq_db=inferred_sq,
        inferred_asq_db=inferred_asq,
        inferred_sq_unc_db=_inferred_unc_db(raw_sq_db, unc_db, eta),
        inferred_asq_unc_db=_inferred_unc_db(raw_asq_db, unc_db, eta),
        purity_product=purity,
        purity_product_db=to_db(purity),
        budget=table,
    )


def report_to_json(report):
    """Serialise a report with fixed field names and full-precision numbers."""
    payload = {
        "raw_sq_db": report.raw_sq_db,
        "raw_asq_db": report.raw_asq_db,
        "unc_db": report.unc_db,
        "eta_total": report.eta_total,
        "inferred_sq_db": report.inferred_sq_db,
        "inferred_asq_db": report.inferred_asq_db,
        "inferred_sq_unc_db": report.inferred_sq_unc_db,
        "inferred_asq_unc_db": report.inferred_asq_unc_db,
        "purity_product": report.purity_product,
        "purity_product_db": report.purity_product_db,
        "budget": report.budget,
    }
    return json.dumps(payload, indent=2) + "\n"
