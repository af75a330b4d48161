"""Declarative run configuration.

Configs are INI files with sections mirroring the run pipeline:

    [physical]   p, p_star, prefactor_a, t_se, tau_r
    [algorithm]  scheme, L, t_hop, U, T_evol, eps_total, m, f_r, log_base
    [factory]    name | (q_f, tau_f_rounds, n_out, out_infidelity, valid_p),
                 cultivation
    [qec]        E, d_max, t_gate_budget
    [output]     format, path

Every value is validated against the owning module's preconditions before
any computation runs; violations are reported together with dotted field
paths. In sweep mode, comma-separated values in at most three fields expand
to a cartesian grid.
"""

from __future__ import annotations

import configparser
import itertools
from dataclasses import dataclass
from typing import Any

from .errors import ConfigError
from .estimator import EstimateOptions
from .factories import FactorySpec, cultivation_variant, factory_by_name
from .fermi_hubbard import SCHEMES, FHInstance
from .qec import PhysicalAssumptions

Sections = dict[str, dict[str, str]]

_REQUIRED = {
    "physical": ("p",),
    "algorithm": ("scheme", "L", "T_evol", "eps_total"),
}

_KNOWN_FIELDS = {
    "physical": {"p", "p_star", "prefactor_a", "t_se", "tau_r"},
    "algorithm": {
        "scheme",
        "L",
        "t_hop",
        "U",
        "T_evol",
        "eps_total",
        "m",
        "f_r",
        "log_base",
    },
    "factory": {
        "name",
        "q_f",
        "tau_f_rounds",
        "n_out",
        "out_infidelity",
        "valid_p",
        "cultivation",
    },
    "qec": {"E", "d_max", "t_gate_budget"},
    "output": {"format", "path"},
}

OUTPUT_FORMATS = ("table", "json", "csv")


@dataclass(frozen=True)
class RunConfig:
    """Fully validated and resolved inputs for one estimator run.

    ``spec`` is the base factory design; the cultivation what-if, when
    requested, is applied on use via ``effective_spec`` so that echoed
    inputs round-trip without double-applying the scaling.
    """

    assume: PhysicalAssumptions
    inst: FHInstance
    scheme: str
    spec: FactorySpec
    cultivation: bool
    options: EstimateOptions
    output_format: str
    output_path: str | None

    @property
    def effective_spec(self) -> FactorySpec:
        return cultivation_variant(self.spec) if self.cultivation else self.spec

    def resolved_inputs(self) -> dict[str, Any]:
        """Echo of every input after defaulting, suitable for re-ingestion."""
        return {
            "physical": {
                "p": self.assume.p,
                "p_star": self.assume.p_star,
                "prefactor_a": self.assume.prefactor_a,
                "t_se": self.assume.t_se,
                "tau_r": self.assume.tau_r,
            },
            "algorithm": {
                "scheme": self.scheme,
                "L": self.inst.l_side,
                "t_hop": self.inst.t_hop,
                "U": self.inst.u_onsite,
                "T_evol": self.inst.t_evol,
                "eps_total": self.inst.eps_total,
                "m": self.options.hwp_m,
                "f_r": self.options.f_r,
                "log_base": self.options.log_base,
            },
            "factory": {
                "name": self.spec.name,
                "q_f": self.spec.q_f,
                "tau_f_rounds": self.spec.tau_f_rounds,
                "n_out": self.spec.n_out,
                "out_infidelity": self.spec.out_infidelity,
                "valid_p": self.spec.valid_p,
                "cultivation": self.cultivation,
            },
            "qec": {
                "E": self.options.e_qec,
                "d_max": self.options.d_max,
                "t_gate_budget": self.options.t_gate_budget,
            },
            "output": {
                "format": self.output_format,
                "path": self.output_path,
            },
        }


def read_sections(path: str) -> Sections:
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ConfigError([f"config file not found or unreadable: {path}"])
    return {name: dict(parser[name]) for name in parser.sections()}


class _Builder:
    """Accumulates field-path diagnostics while coercing section values."""

    def __init__(self, sections: Sections) -> None:
        self.sections = sections
        self.problems: list[str] = []

    def _raw(self, section: str, key: str) -> str | None:
        # configparser lowercases keys; accept the documented spellings.
        return self.sections.get(section, {}).get(key.lower())

    def get(self, section: str, key: str, cast, default=None, required=False):
        raw = self._raw(section, key)
        if raw is None:
            if required:
                self.problems.append(f"{section}.{key}: missing required field")
            return default
        try:
            return cast(raw)
        except (ValueError, ArgumentTypeError) as exc:
            self.problems.append(f"{section}.{key}: {exc}")
            return default

    def check_unknown(self) -> None:
        for section, fields in self.sections.items():
            known = _KNOWN_FIELDS.get(section)
            if known is None:
                self.problems.append(f"{section}: unknown section")
                continue
            for key in fields:
                if key not in {k.lower() for k in known}:
                    self.problems.append(f"{section}.{key}: unknown field")

    def construct(self, path: str, factory, /, **kwargs):
        try:
            return factory(**kwargs)
        except ValueError as exc:
            self.problems.append(f"{path}: {exc}")
            return None


class ArgumentTypeError(ValueError):
    pass


def _bool(raw: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ArgumentTypeError(f"expected a boolean, got {raw!r}")


def _choice(options: tuple[str, ...]):
    def cast(raw: str) -> str:
        value = raw.strip()
        if value not in options:
            raise ArgumentTypeError(f"expected one of {options}, got {raw!r}")
        return value

    return cast


def build_config(sections: Sections) -> RunConfig:
    """Validate one (non-ranged) section mapping into a RunConfig.

    Raises ConfigError listing every violation with its dotted field path.
    """
    b = _Builder(sections)
    b.check_unknown()

    assume = b.construct(
        "physical",
        PhysicalAssumptions,
        p=b.get("physical", "p", float, required=True, default=1e-3),
        p_star=b.get("physical", "p_star", float, default=0.01),
        prefactor_a=b.get("physical", "prefactor_a", float, default=0.1),
        t_se=b.get("physical", "t_se", float, default=1e-6),
        tau_r=b.get("physical", "tau_r", float, default=1e-6),
    )
    inst = b.construct(
        "algorithm",
        FHInstance,
        l_side=b.get("algorithm", "L", int, required=True, default=2),
        t_hop=b.get("algorithm", "t_hop", float, default=1.0),
        u_onsite=b.get("algorithm", "U", float, default=8.0),
        t_evol=b.get("algorithm", "T_evol", float, required=True, default=1.0),
        eps_total=b.get("algorithm", "eps_total", float, required=True, default=0.01),
    )
    scheme = b.get(
        "algorithm", "scheme", _choice(SCHEMES), required=True, default=SCHEMES[0]
    )

    name = b.get("factory", "name", str)
    if name is not None and name != "custom":
        try:
            spec = factory_by_name(name)
        except KeyError as exc:
            b.problems.append(f"factory.name: {exc.args[0]}")
            spec = None
    else:
        custom = {k: b._raw("factory", k) for k in ("q_f", "tau_f_rounds", "n_out")}
        if any(v is not None for v in custom.values()):
            spec = b.construct(
                "factory",
                FactorySpec,
                name="custom",
                q_f=b.get("factory", "q_f", int, required=True, default=1),
                tau_f_rounds=b.get(
                    "factory", "tau_f_rounds", float, required=True, default=1.0
                ),
                n_out=b.get("factory", "n_out", int, default=1),
                out_infidelity=b.get(
                    "factory", "out_infidelity", float, required=True, default=0.5
                ),
                valid_p=b.get("factory", "valid_p", float, default=1e-3),
            )
        else:
            # Default to the built-in design characterized nearest to p.
            p = assume.p if assume is not None else 1e-3
            spec = factory_by_name(
                "15to1x20to4-p4" if p <= 3e-4 else "15to1x15to1-p3"
            )
    cultivation = b.get("factory", "cultivation", _bool, default=False)

    options = b.construct(
        "options",
        EstimateOptions,
        e_qec=b.get("qec", "E", float, default=0.05),
        d_max=b.get("qec", "d_max", int, default=99),
        t_gate_budget=b.get("qec", "t_gate_budget", float, default=0.05),
        f_r=b.get("algorithm", "f_r", float, default=0.5),
        hwp_m=b.get("algorithm", "m", int),
        log_base=b.get(
            "algorithm", "log_base", _choice(("natural", "base2")), default="natural"
        ),
    )
    output_format = b.get(
        "output", "format", _choice(OUTPUT_FORMATS), default="table"
    )
    output_path = b.get("output", "path", str)

    if options is not None:
        if not (0 < options.e_qec < 1):
            b.problems.append("qec.E: must lie in (0, 1)")
        if not (0 <= options.f_r <= 1):
            b.problems.append("algorithm.f_r: must lie in [0, 1]")
        if options.hwp_m is not None and options.hwp_m < 2:
            b.problems.append("algorithm.m: must be at least 2")

    if b.problems or assume is None or inst is None or spec is None or options is None:
        raise ConfigError(sorted(set(b.problems)))
    return RunConfig(
        assume=assume,
        inst=inst,
        scheme=scheme,
        spec=spec,
        cultivation=bool(cultivation),
        options=options,
        output_format=output_format,
        output_path=output_path,
    )


def sections_from_inputs(inputs: dict[str, Any]) -> Sections:
    """Inverse of RunConfig.resolved_inputs, enabling report round-trips."""
    sections: Sections = {}
    for section, fields in inputs.items():
        out: dict[str, str] = {}
        for key, value in fields.items():
            if value is None:
                continue
            out[key.lower()] = str(value)
        sections[section] = out
    return sections


def expand_sweep(sections: Sections, max_ranged: int = 3) -> list[Sections]:
    """Cartesian expansion of comma-separated field values.

    Grid order is lexicographic in (section, field) order with earlier
    fields varying slowest, so sweep output row order is stable.
    """
    ranged: list[tuple[str, str, list[str]]] = []
    for section in sorted(sections):
        for key in sorted(sections[section]):
            value = sections[section][key]
            if "," in value:
                parts = [v.strip() for v in value.split(",") if v.strip()]
                ranged.append((section, key, parts))
    if len(ranged) > max_ranged:
        paths = ", ".join(f"{s}.{k}" for s, k, _ in ranged)
        raise ConfigError(
            [f"sweep: at most {max_ranged} ranged fields allowed, got {paths}"]
        )
    if not ranged:
        return [sections]
    grids = []
    for combo in itertools.product(*(values for _, _, values in ranged)):
        point = {s: dict(fields) for s, fields in sections.items()}
        for (section, key, _), value in zip(ranged, combo):
            point[section][key] = value
        grids.append(point)
    return grids
