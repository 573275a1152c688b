"""End-to-end netlist simulation: compile, propagate, sweep, report.

The report's raw values are the extrema of the noiseless model trace; when
estimator noise is synthesized the reported uncertainty is the model
scatter sqrt(2/M) * 10/ln(10) dB per point.
"""

import math

from .budget import build_report
from .gaussian import vacuum
from .homodyne import effective_efficiency, sweep, synthesize_trace, with_seed
from .netlist import Loss, compile_spec


def output_state(spec):
    """State of all declared modes after the compiled channel sequence."""
    channels, _ = compile_spec(spec)
    state = vacuum(len(spec.modes))
    for channel in channels:
        state = channel.apply(state)
    return state


def budget_factors(spec):
    """Per-factor efficiency table for a spec's measured mode.

    Labelled losses report under their labels (unlabelled ones as
    `anonymous`, suffixed when repeated); the homodyne chain contributes
    photodiode, electronics and any non-unit imbalance or visibility terms.
    """
    measured = spec.measurement.mode
    table = {}
    for st in spec.statements:
        if isinstance(st, Loss) and st.mode == measured:
            base = st.label if st.label is not None else "anonymous"
            name, k = base, 2
            while name in table:
                name, k = f"{base}_{k}", k + 1
            table[name] = st.eta
    m = spec.measurement
    imbalance = 4.0 * m.ratio * (1.0 - m.ratio)
    if imbalance != 1.0:
        table["coupler_imbalance"] = imbalance
    if m.visibility != 1.0:
        table["visibility"] = m.visibility**2
    table["photodiode"] = m.eta_pd
    table["electronics"] = m.eta_e
    return table


def run_spec(spec, noiseless=True, seed=None):
    """Simulate a parsed netlist; returns (trace, report).

    The returned trace is noisy when `noiseless` is false, in which case a
    seed is required for reproducibility.
    """
    channels, plan = compile_spec(spec)
    state = vacuum(len(spec.modes))
    for channel in channels:
        state = channel.apply(state)

    model = sweep(state, plan.mode, plan.config, plan.phases)
    if noiseless:
        trace = model
        unc_db = 0.0
    else:
        trace = synthesize_trace(model, with_seed(plan.config, seed))
        m_samples = plan.config.rbw / plan.config.vbw
        unc_db = math.sqrt(2.0 / m_samples) * 10.0 / math.log(10.0)

    factors = budget_factors(spec)
    eta_total = effective_efficiency(plan.config)
    for key, value in factors.items():
        if key not in ("coupler_imbalance", "visibility", "photodiode", "electronics"):
            eta_total *= value

    report = build_report(float(trace_min(model)), float(trace_max(model)), unc_db,
                          eta=eta_total, factors=factors)
    return trace, report


def trace_min(trace):
    return trace.variance_db.min()


def trace_max(trace):
    return trace.variance_db.max()
