"""Surface-code logical error model, distance selection, and logical timing.

The physical layer is abstracted to two clocks: the syndrome-extraction (SE)
round and the reaction time (measure, decode, conditionally act). A logical
timestep is ``d`` SE rounds, where ``d`` is the code distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .errors import BudgetInfeasibleError, InvalidDistanceError

DEFAULT_QEC_BUDGET = 0.05
DEFAULT_MAX_DISTANCE = 99


@dataclass(frozen=True)
class PhysicalAssumptions:
    """Hardware-level parameters of the surface-code layer.

    Attributes:
        p: physical error probability per operation.
        p_star: surface-code threshold error rate.
        prefactor_a: prefactor of the logical error-rate law.
        t_se: duration of one syndrome-extraction round, in seconds.
        tau_r: reaction time (measure, decode, conditionally act), in seconds.
    """

    p: float
    p_star: float = 0.01
    prefactor_a: float = 0.1
    t_se: float = 1e-6
    tau_r: float = 1e-6

    def __post_init__(self) -> None:
        if not (0.0 < self.p < self.p_star <= 1.0):
            raise ValueError(
                f"require 0 < p < p_star <= 1, got p={self.p}, p_star={self.p_star}"
            )
        if self.prefactor_a <= 0:
            raise ValueError("prefactor_a must be positive")
        if self.t_se <= 0:
            raise ValueError("t_se must be positive")
        if self.tau_r <= 0:
            raise ValueError("tau_r must be positive")

    @property
    def reaction_rounds(self) -> int:
        """SE-round equivalent of one reaction delay, for volume accounting."""
        ratio = self.tau_r / self.t_se
        # Guard against float noise pushing an exact multiple up a round.
        return max(1, math.ceil(ratio * (1 - 1e-12)))


@dataclass(frozen=True)
class GateTiming:
    timesteps: int
    reactions: int

    def __post_init__(self) -> None:
        if self.timesteps < 0 or self.reactions < 0:
            raise ValueError("gate timing entries must be nonnegative")


@dataclass(frozen=True)
class GateTimingModel:
    """Per-gate durations in logical timesteps (d SE rounds each) and reaction units."""

    gates: Mapping[str, GateTiming] = field(
        default_factory=lambda: dict(_DEFAULT_GATE_TABLE)
    )

    def timing(self, kind: str) -> GateTiming:
        try:
            return self.gates[kind]
        except KeyError:
            raise KeyError(f"unknown gate kind {kind!r}") from None

    def timesteps(self, kind: str) -> int:
        return self.timing(kind).timesteps

    def reactions(self, kind: str) -> int:
        return self.timing(kind).reactions

    def tau_c(self, d: int, t_se: float) -> float:
        """Logical Clifford gate time in seconds (CNOT row of the table)."""
        return self.timesteps("cnot") * d * t_se


_DEFAULT_GATE_TABLE: dict[str, GateTiming] = {
    "cnot": GateTiming(2, 0),  # also CZ / multitarget variants
    "s": GateTiming(1, 0),
    "t_teleport": GateTiming(1, 1),
    "auto_corrected_pi8": GateTiming(2, 1),
    "clifford_1q": GateTiming(2, 0),
}

DEFAULT_TIMING = GateTimingModel()


@dataclass(frozen=True)
class LogicalVolume:
    """Protected logical footprint times depth, the currency of QEC costing.

    ``patches`` counts protected logical qubits including routing space but
    excluding factory interiors. ``rounds`` is SE-round depth; ``reactions``
    counts reaction-time delays on the critical path.
    """

    patches: float
    rounds: float
    reactions: float = 0.0

    def __post_init__(self) -> None:
        if self.patches < 0 or self.rounds < 0 or self.reactions < 0:
            raise ValueError("volume components must be nonnegative")

    def patch_rounds(self, reaction_rounds: int = 1) -> float:
        """Total volume with reaction delays folded in as SE rounds."""
        return self.patches * (self.rounds + self.reactions * reaction_rounds)


def require_valid_distance(d: int) -> None:
    if d < 3 or d % 2 == 0:
        raise InvalidDistanceError(f"code distance must be odd and >= 3, got {d}")


def logical_error_rate(assume: PhysicalAssumptions, d: int) -> float:
    """Logical error probability per patch per SE round at distance ``d``.

    Follows the standard suppression law A * (p / p*)^((d+1)/2); strictly
    decreasing in ``d`` whenever p < p*.
    """
    require_valid_distance(d)
    return assume.prefactor_a * (assume.p / assume.p_star) ** ((d + 1) / 2)


def patch_physical_qubits(d: int) -> int:
    """Physical qubits per logical patch (data plus syndrome qubits): 2d^2."""
    require_valid_distance(d)
    return 2 * d * d


def wall_time(vol: LogicalVolume, assume: PhysicalAssumptions) -> float:
    """Execution time in seconds: SE rounds plus reaction delays."""
    return vol.rounds * assume.t_se + vol.reactions * assume.tau_r


def choose_distance(
    assume: PhysicalAssumptions,
    volume_at: Callable[[int], LogicalVolume],
    budget_e: float = DEFAULT_QEC_BUDGET,
    d_max: int = DEFAULT_MAX_DISTANCE,
) -> int:
    """Smallest odd distance whose expected logical-failure count fits the budget.

    Accepts the first odd d >= 3 with volume(d) * p_L(d) <= budget_e, where
    the volume may itself depend on d (depth in timesteps scales with d,
    routing terms may shrink with d). Terminates because p_L decays
    geometrically while the volume grows polynomially.

    Raises:
        BudgetInfeasibleError: if no d <= d_max satisfies the bound.
    """
    if not (0.0 < budget_e < 1.0):
        raise ValueError("budget_e must lie in (0, 1)")
    rr = assume.reaction_rounds
    for d in range(3, d_max + 1, 2):
        vol = volume_at(d)
        if vol.patch_rounds(rr) * logical_error_rate(assume, d) <= budget_e:
            return d
    raise BudgetInfeasibleError(
        f"no odd distance <= {d_max} meets failure budget {budget_e}"
    )
