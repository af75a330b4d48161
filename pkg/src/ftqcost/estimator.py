"""End-to-end resource estimation.

Chains error-budget allocation, scheme compilation, joint distance/fleet
fixed-point selection, factory provisioning, and totals into a single
ResourceEstimate; also provides the minimal-footprint quick estimator,
the +/-5% sensitivity band, and multi-scheme comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .factories import FactorySpec, t_budget_check
from .fermi_hubbard import (
    DEFAULT_F_R,
    CompilationSummary,
    ErrorBudget,
    FHInstance,
    LogBase,
    SchemeLayout,
    compile_scheme,
    layout_at,
)
from .qec import (
    DEFAULT_MAX_DISTANCE,
    DEFAULT_QEC_BUDGET,
    LogicalVolume,
    PhysicalAssumptions,
    choose_distance,
    patch_physical_qubits,
    wall_time,
)

GATE_LIMITED = "gate-limited"
MAGIC_LIMITED = "magic-limited"


@dataclass(frozen=True)
class EstimateOptions:
    """Knobs of the estimation pipeline, with their shipped defaults."""

    e_qec: float = DEFAULT_QEC_BUDGET
    d_max: int = DEFAULT_MAX_DISTANCE
    f_r: float = DEFAULT_F_R
    hwp_m: int | None = None
    log_base: LogBase = "natural"
    t_gate_budget: float = 0.05


@dataclass(frozen=True)
class ResourceEstimate:
    scheme: str
    d: int
    physical_qubits_total: float
    physical_qubits_by_role: dict[str, float]
    wall_time_seconds: float
    spacetime_volume: float
    factory_count: int
    t_count_total: float
    bottleneck: str
    budget_ledger: ErrorBudget | None = None
    summary: CompilationSummary | None = None
    warnings: tuple[str, ...] = ()


def _volume_for(
    summary: CompilationSummary,
    spec: FactorySpec,
    d: int,
    f_r: float,
) -> tuple[LogicalVolume, SchemeLayout]:
    layout = layout_at(summary, spec, d, f_r=f_r)
    return (
        LogicalVolume(
            patches=layout.protected_patches,
            rounds=summary.timestep_depth * d,
            reactions=summary.reaction_depth,
        ),
        layout,
    )


def estimate(
    inst: FHInstance,
    scheme: str,
    assume: PhysicalAssumptions,
    spec: FactorySpec,
    options: EstimateOptions = EstimateOptions(),
) -> ResourceEstimate:
    """Full pipeline for one Fermi-Hubbard instance and scheme.

    The distance search recomputes the layout (including factory
    provisioning) at every candidate d, so the accepted fixed point is
    joint over distance and fleet.
    """
    warnings: list[str] = []
    if not math.isclose(spec.valid_p, assume.p, rel_tol=0.5):
        warnings.append(
            f"factory {spec.name} characterized at p={spec.valid_p}, "
            f"estimating at p={assume.p}"
        )

    summary, budget = compile_scheme(
        scheme, inst, m=options.hwp_m, log_base=options.log_base
    )

    def volume_at(d: int) -> LogicalVolume:
        return _volume_for(summary, spec, d, options.f_r)[0]

    d = choose_distance(assume, volume_at, budget_e=options.e_qec, d_max=options.d_max)
    vol, layout = _volume_for(summary, spec, d, options.f_r)

    q = patch_physical_qubits(d)
    protected_qubits = layout.protected_patches * q
    time = wall_time(vol, assume)

    # Sustained fleet throughput versus the gate-level schedule decides the
    # bottleneck; per-scheme layouts are provisioned to avoid starvation.
    bottleneck = GATE_LIMITED
    if layout.factory_count > 0:
        rate_per_second = (
            layout.factory_count * spec.n_out / (spec.tau_f_rounds * assume.t_se)
        )
        if summary.t_count_total / rate_per_second > time * (1 + 1e-12):
            bottleneck = MAGIC_LIMITED

    check = t_budget_check(summary.t_count_total, spec, budget=options.t_gate_budget)
    if not check.passed:
        warnings.append(
            "T-state error budget exceeded: "
            f"accumulated {check.accumulated_error:.3g} > {check.budget}; "
            f"a factory with infidelity <= {check.required_infidelity:.3g} is required"
        )

    data_aux_patches = summary.data_patches + summary.aux_patches
    extra = layout.protected_patches - data_aux_patches - summary.routing_patches
    by_role = {
        "data_aux": data_aux_patches * q,
        "routing": (summary.routing_patches + extra) * q,
        "factories": float(layout.factory_qubits),
    }
    return ResourceEstimate(
        scheme=scheme,
        d=d,
        physical_qubits_total=protected_qubits + layout.factory_qubits,
        physical_qubits_by_role=by_role,
        wall_time_seconds=time,
        spacetime_volume=vol.patch_rounds(assume.reaction_rounds),
        factory_count=layout.factory_count,
        t_count_total=summary.t_count_total,
        bottleneck=bottleneck,
        budget_ledger=budget,
        summary=summary,
        warnings=tuple(warnings),
    )


def simple_estimate(
    q_logical: int,
    gate_count: float,
    assume: PhysicalAssumptions,
    e_qec: float = DEFAULT_QEC_BUDGET,
    routing_factor: float = 1.5,
    d_max: int = DEFAULT_MAX_DISTANCE,
) -> ResourceEstimate:
    """Minimal-footprint quick estimate: one T/Toffoli per d rounds.

    Patches are the data qubits times a routing factor; factory qubits are
    not included, matching the headline-table convention.
    """
    if q_logical < 1:
        raise ValueError("q_logical must be at least 1")
    if gate_count < 1:
        raise ValueError("gate_count must be at least 1")
    patches = routing_factor * q_logical

    def volume_at(d: int) -> LogicalVolume:
        return LogicalVolume(patches=patches, rounds=gate_count * d)

    d = choose_distance(assume, volume_at, budget_e=e_qec, d_max=d_max)
    rounds = gate_count * d
    q = patch_physical_qubits(d)
    return ResourceEstimate(
        scheme="simple",
        d=d,
        physical_qubits_total=patches * q,
        physical_qubits_by_role={
            "data_aux": q_logical * q,
            "routing": (patches - q_logical) * q,
            "factories": 0.0,
        },
        wall_time_seconds=rounds * assume.t_se,
        spacetime_volume=patches * rounds,
        factory_count=0,
        t_count_total=gate_count,
        bottleneck=GATE_LIMITED,
    )


@dataclass(frozen=True)
class SensitivityBand:
    """Estimates under joint +/-5% perturbation of factory and QEC constants."""

    nominal: ResourceEstimate
    low: ResourceEstimate
    high: ResourceEstimate


def _perturbed(
    assume: PhysicalAssumptions, spec: FactorySpec, fraction: float
) -> tuple[PhysicalAssumptions, FactorySpec]:
    """Perturb factory qubits/time, threshold, and prefactor together.

    Positive ``fraction`` is adverse (more qubits, slower factories, lower
    threshold, larger prefactor); negative is favorable.
    """
    assume2 = replace(
        assume,
        p_star=assume.p_star * (1 - fraction),
        prefactor_a=assume.prefactor_a * (1 + fraction),
    )
    spec2 = replace(
        spec,
        q_f=max(1, round(spec.q_f * (1 + fraction))),
        tau_f_rounds=spec.tau_f_rounds * (1 + fraction),
    )
    return assume2, spec2


def sensitivity(
    inst: FHInstance,
    scheme: str,
    assume: PhysicalAssumptions,
    spec: FactorySpec,
    options: EstimateOptions = EstimateOptions(),
    fraction: float = 0.05,
) -> SensitivityBand:
    nominal = estimate(inst, scheme, assume, spec, options)
    adverse = estimate(inst, scheme, *_perturbed(assume, spec, fraction), options)
    favorable = estimate(inst, scheme, *_perturbed(assume, spec, -fraction), options)
    return SensitivityBand(nominal=nominal, low=favorable, high=adverse)


@dataclass(frozen=True)
class ComparisonRow:
    estimate: ResourceEstimate
    time_ratio: float
    qubit_ratio: float
    volume_ratio: float


def compare(
    inst: FHInstance,
    schemes: list[str],
    assume: PhysicalAssumptions,
    spec: FactorySpec,
    options: EstimateOptions = EstimateOptions(),
) -> list[ComparisonRow]:
    """One estimate per scheme, with ratios relative to the first row."""
    if not schemes:
        raise ValueError("at least one scheme is required")
    estimates = [estimate(inst, s, assume, spec, options) for s in schemes]
    base = estimates[0]
    return [
        ComparisonRow(
            estimate=e,
            time_ratio=e.wall_time_seconds / base.wall_time_seconds,
            qubit_ratio=e.physical_qubits_total / base.physical_qubits_total,
            volume_ratio=e.spacetime_volume / base.spacetime_volume,
        )
        for e in estimates
    ]
