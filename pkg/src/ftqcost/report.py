"""Machine-readable report assembly and rendering.

One JSON document per run with a versioned schema; field names embed
units (e.g. wall_time_seconds). Every inferred default that influenced a
number is echoed under ``assumptions`` so no output is silently shaped by
an undisclosed choice. JSON output is deterministic (sorted keys), making
identical configs byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
import os
from importlib import resources
from typing import Any

from .config import RunConfig
from .estimator import ResourceEstimate, SensitivityBand, compare, estimate, sensitivity

SCHEMA_VERSION = "1.0"

DEFAULTS_ENV_VAR = "FTQCOST_DEFAULTS"

CSV_COLUMNS = (
    "scheme",
    "p",
    "factory",
    "cultivation",
    "d",
    "physical_qubits_total",
    "wall_time_seconds",
    "spacetime_volume",
    "factory_count",
    "t_count_total",
    "bottleneck",
)


def load_defaults() -> dict[str, Any]:
    """Shipped default knobs, overridable via the FTQCOST_DEFAULTS env var."""
    override = os.environ.get(DEFAULTS_ENV_VAR)
    if override:
        with open(override, encoding="utf-8") as fh:
            return json.load(fh)
    text = resources.files("ftqcost.data").joinpath("defaults.json").read_text()
    return json.loads(text)


def estimate_payload(est: ResourceEstimate) -> dict[str, Any]:
    payload: dict[str, Any] = {
        "scheme": est.scheme,
        "code_distance": est.d,
        "physical_qubits_total": est.physical_qubits_total,
        "physical_qubits_by_role": dict(est.physical_qubits_by_role),
        "wall_time_seconds": est.wall_time_seconds,
        "spacetime_volume_patch_rounds": est.spacetime_volume,
        "factory_count": est.factory_count,
        "t_count_total": est.t_count_total,
        "bottleneck": est.bottleneck,
        "warnings": list(est.warnings),
    }
    if est.budget_ledger is not None:
        ledger = est.budget_ledger
        payload["budget_ledger"] = {
            "eps_total": ledger.eps_total,
            "eps_algorithm": ledger.eps_algorithm,
            "eps_synthesis": ledger.eps_synthesis,
            "eps_s_per_rotation": ledger.eps_s_per_rotation,
            "e_qec": ledger.e_qec,
            "t_gate_budget": ledger.t_gate_budget,
        }
    if est.summary is not None:
        payload["compilation"] = {
            "sigma": est.summary.sigma,
            "rotation_count": est.summary.rotation_count,
            "timestep_depth": est.summary.timestep_depth,
            "reaction_depth": est.summary.reaction_depth,
            "peak_parallel_t": est.summary.peak_parallel_t,
            "consumption_rate_per_d_rounds": est.summary.consumption_rate,
        }
    return payload


def _assumptions(config: RunConfig) -> dict[str, Any]:
    flags: dict[str, Any] = {
        "e_qec": config.options.e_qec,
        "e_qec_inferred": True,
        "log_base_qsp_queries": config.options.log_base,
        "log_base_inferred": True,
    }
    if config.scheme == "plaq_serial":
        flags["hwp_m"] = (
            config.options.hwp_m
            if config.options.hwp_m is not None
            else config.inst.l_side**2
        )
        flags["hwp_m_default_is_L_squared"] = config.options.hwp_m is None
    if config.scheme == "plaq_L2":
        flags["f_r"] = config.options.f_r
        flags["f_r_inferred"] = True
        flags["tau_m_rule"] = (
            "interval between non-Clifford layers in timesteps, times d rounds"
        )
    if config.cultivation:
        flags["cultivation_infidelity_unchanged"] = True
    return flags


def _band_payload(band: SensitivityBand) -> dict[str, Any]:
    return {
        "nominal": estimate_payload(band.nominal),
        "low": estimate_payload(band.low),
        "high": estimate_payload(band.high),
        "perturbed_fields": [
            "factory.q_f",
            "factory.tau_f_rounds",
            "physical.p_star",
            "physical.prefactor_a",
        ],
        "perturbation_fraction": 0.05,
    }


def build_report(config: RunConfig, with_sensitivity: bool = True) -> dict[str, Any]:
    """Full report for one config: estimate plus optional sensitivity band."""
    spec = config.effective_spec
    est = estimate(config.inst, config.scheme, config.assume, spec, config.options)
    report: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "inputs": config.resolved_inputs(),
        "defaults": load_defaults(),
        "assumptions": _assumptions(config),
        "estimates": [estimate_payload(est)],
    }
    if with_sensitivity:
        band = sensitivity(
            config.inst, config.scheme, config.assume, spec, config.options
        )
        report["sensitivity"] = _band_payload(band)
    return report


def build_comparison(config: RunConfig, schemes: list[str]) -> dict[str, Any]:
    rows = compare(config.inst, schemes, config.assume, config.effective_spec, config.options)
    report = {
        "schema_version": SCHEMA_VERSION,
        "inputs": config.resolved_inputs(),
        "defaults": load_defaults(),
        "assumptions": _assumptions(config),
        "estimates": [estimate_payload(row.estimate) for row in rows],
        "ratios": [
            {
                "scheme": row.estimate.scheme,
                "time_ratio": row.time_ratio,
                "qubit_ratio": row.qubit_ratio,
                "volume_ratio": row.volume_ratio,
            }
            for row in rows
        ],
    }
    return report


def render_json(report: dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _fmt(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def render_table(report: dict[str, Any]) -> str:
    """Human-readable fixed-width summary of the report's estimates."""
    lines = []
    for est in report["estimates"]:
        lines.append(f"scheme: {est['scheme']}")
        for key in (
            "code_distance",
            "physical_qubits_total",
            "wall_time_seconds",
            "spacetime_volume_patch_rounds",
            "factory_count",
            "t_count_total",
            "bottleneck",
        ):
            lines.append(f"  {key:32s} {_fmt(est[key])}")
        for warning in est["warnings"]:
            lines.append(f"  warning: {warning}")
    for key, value in sorted(report.get("assumptions", {}).items()):
        lines.append(f"assumption: {key} = {_fmt(value)}")
    return "\n".join(lines) + "\n"


def csv_row(config: RunConfig, est_payload: dict[str, Any]) -> dict[str, Any]:
    return {
        "scheme": est_payload["scheme"],
        "p": config.assume.p,
        "factory": config.effective_spec.name,
        "cultivation": config.cultivation,
        "d": est_payload["code_distance"],
        "physical_qubits_total": est_payload["physical_qubits_total"],
        "wall_time_seconds": est_payload["wall_time_seconds"],
        "spacetime_volume": est_payload["spacetime_volume_patch_rounds"],
        "factory_count": est_payload["factory_count"],
        "t_count_total": est_payload["t_count_total"],
        "bottleneck": est_payload["bottleneck"],
    }


def render_csv(rows: list[dict[str, Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()
