"""Simplified space/time cost equations for lattice-surgery circuits.

Covers Clifford-only circuits, general circuits fed by a magic-state
factory fleet, the Pauli-based-computation (PBC) slowdown ratio, and the
reaction-limited (time-optimal) batching plan.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import MagicStarvedError, UndefinedRatioError
from .factories import FactoryFleet
from .qec import (
    DEFAULT_TIMING,
    GateTimingModel,
    PhysicalAssumptions,
    patch_physical_qubits,
    require_valid_distance,
)

RoutingFunction = Callable[[float, int], float]
"""Maps (P_c, M) to a routing patch count R."""


def fast_block_routing(q_data: int) -> RoutingFunction:
    """Routing preset for the serial "fast block" layout.

    Total protected patches come to 2Q + sqrt(8Q) + 1, i.e. the routing
    share beyond the Q data patches is Q + sqrt(8Q) + 1.
    """

    def routing(p_c: float, m: int) -> float:
        return q_data + math.isqrt(8 * q_data) + 1

    return routing


def ratio_routing(k: float, q_data: int) -> RoutingFunction:
    """Routing preset charging a fixed k routing patches per data patch."""

    def routing(p_c: float, m: int) -> float:
        return k * q_data

    return routing


def fast_block_patches(q_data: int) -> int:
    """Total protected patches (data + routing) of the fast-block layout."""
    return 2 * q_data + math.isqrt(8 * q_data) + 1


@dataclass(frozen=True)
class CircuitProfile:
    """Abstract summary of a logical circuit for the cost equations."""

    q_data: int
    n_clifford: float
    n_non_clifford: float
    p_clifford: float
    p_non_clifford: float
    m_layers: int = 1
    k_storage: float = 0.0
    routing: RoutingFunction | None = None

    def __post_init__(self) -> None:
        if self.q_data < 1:
            raise ValueError("q_data must be at least 1")
        if self.p_clifford < 1 or self.p_non_clifford < 1:
            raise ValueError("parallelism parameters must be at least 1")
        if self.m_layers < 1:
            raise ValueError("m_layers must be at least 1")
        if self.n_clifford < 0 or self.n_non_clifford < 0:
            raise ValueError("gate counts must be nonnegative")
        if self.k_storage < 0:
            raise ValueError("k_storage must be nonnegative")

    def routing_patches(self) -> float:
        if self.routing is None:
            return fast_block_routing(self.q_data)(self.p_clifford, self.m_layers)
        return self.routing(self.p_clifford, self.m_layers)


GATE_LIMITED = "gate-limited"
MAGIC_LIMITED = "magic-limited"


@dataclass(frozen=True)
class CostBreakdown:
    space_physical: float
    space_by_role: dict[str, float]
    time_seconds: float
    gate_time_seconds: float
    magic_time_seconds: float
    bottleneck: str
    volume_patch_rounds: float


def _tau_c(d: int, assume: PhysicalAssumptions, timing: GateTimingModel) -> float:
    return timing.tau_c(d, assume.t_se)


def clifford_cost(
    profile: CircuitProfile,
    d: int,
    assume: PhysicalAssumptions,
    timing: GateTimingModel = DEFAULT_TIMING,
) -> CostBreakdown:
    """Space and time for a Clifford-only circuit.

    S = q(d) * [Q + R + 2(M-1) P_c]; T = (N_c / (M P_c)) * tau_c(d).
    """
    if profile.n_non_clifford != 0:
        raise ValueError("clifford_cost requires n_non_clifford == 0; use general_cost")
    require_valid_distance(d)
    q = patch_physical_qubits(d)
    r = profile.routing_patches()
    teleport = 2 * (profile.m_layers - 1) * profile.p_clifford
    patches = profile.q_data + r + teleport
    tau_c = _tau_c(d, assume, timing)
    time = profile.n_clifford * tau_c / (profile.m_layers * profile.p_clifford)
    return CostBreakdown(
        space_physical=q * patches,
        space_by_role={
            "data": q * profile.q_data,
            "routing": q * r,
            "teleport": q * teleport,
            "factories": 0.0,
        },
        time_seconds=time,
        gate_time_seconds=time,
        magic_time_seconds=0.0,
        bottleneck=GATE_LIMITED,
        volume_patch_rounds=patches * time / assume.t_se,
    )


def general_cost(
    profile: CircuitProfile,
    fleet: FactoryFleet,
    d: int,
    assume: PhysicalAssumptions,
    timing: GateTimingModel = DEFAULT_TIMING,
) -> CostBreakdown:
    """Space and time for a circuit with non-Clifford gates.

    S = q(d) * [Q + R + max(2(M-1) P_c, k (tau_c/tau_r) P_nc)] + fleet qubits
    T = max(N_c tau_c / (M P_c) + N_nc tau_nc / P_nc, N_nc tau_m / P_nc)

    tau_nc is tau_r when the computation is reaction-limited (k > 0) and
    2 tau_c + tau_r for teleported non-Cliffords otherwise. tau_m is the
    fleet's time to deliver P_nc magic states.
    """
    if profile.n_non_clifford == 0:
        return clifford_cost(profile, d, assume, timing)
    require_valid_distance(d)
    if fleet.achieved_rate <= 0:
        raise MagicStarvedError(
            "circuit consumes magic states but the factory fleet produces none"
        )
    q = patch_physical_qubits(d)
    r = profile.routing_patches()
    tau_c = _tau_c(d, assume, timing)
    tau_nc = assume.tau_r if profile.k_storage > 0 else 2 * tau_c + assume.tau_r
    tau_m = profile.p_non_clifford / fleet.achieved_rate * assume.t_se

    teleport = 2 * (profile.m_layers - 1) * profile.p_clifford
    storage = profile.k_storage * (tau_c / assume.tau_r) * profile.p_non_clifford
    extra = max(teleport, storage)
    patches = profile.q_data + r + extra

    gate_time = (
        profile.n_clifford * tau_c / (profile.m_layers * profile.p_clifford)
        + profile.n_non_clifford * tau_nc / profile.p_non_clifford
    )
    magic_time = profile.n_non_clifford * tau_m / profile.p_non_clifford
    time = max(gate_time, magic_time)
    return CostBreakdown(
        space_physical=q * patches + fleet.physical_qubits,
        space_by_role={
            "data": q * profile.q_data,
            "routing": q * r,
            "teleport": q * extra,
            "factories": float(fleet.physical_qubits),
        },
        time_seconds=time,
        gate_time_seconds=gate_time,
        magic_time_seconds=magic_time,
        bottleneck=MAGIC_LIMITED if magic_time > gate_time else GATE_LIMITED,
        volume_patch_rounds=patches * time / assume.t_se,
    )


def pbc_ratio(
    profile: CircuitProfile,
    d: int,
    assume: PhysicalAssumptions,
    timing: GateTimingModel = DEFAULT_TIMING,
) -> float:
    """Run-time ratio T_PBC / T of compiling the circuit to serial PBC.

    ratio = P_nc / (1 + C*), C* = (N_c tau_c / P_c) / (N_nc tau_nc / P_nc).
    A ratio above 1 means PBC is slower than Clifford+T execution.
    """
    if profile.n_non_clifford == 0:
        raise UndefinedRatioError("PBC ratio is undefined without non-Clifford gates")
    if profile.m_layers != 1 or profile.k_storage != 0:
        raise ValueError("pbc_ratio assumes M=1 and k=0")
    require_valid_distance(d)
    tau_c = _tau_c(d, assume, timing)
    tau_nc = 2 * tau_c + assume.tau_r
    c_star = (profile.n_clifford * tau_c / profile.p_clifford) / (
        profile.n_non_clifford * tau_nc / profile.p_non_clifford
    )
    return profile.p_non_clifford / (1 + c_star)


@dataclass(frozen=True)
class ReactionPlan:
    """Batched teleportation plan running at one reaction time per gate."""

    t_prep_seconds: float
    tau_r_seconds: float
    n_gates: int
    g_opt: int
    time_seconds: float
    logical_qubits: int


def reaction_limited_plan(
    t_prep: float, tau_r: float, n_gates: int, modules_qubits: int = 4
) -> ReactionPlan:
    """Time-optimal batching of teleported non-Clifford gates.

    Batches of G_opt = ceil(T_prep / tau_r) pre-built modules keep the
    pipeline limited by module preparation: total time
    ceil(n / G_opt) * T_prep, at modules_qubits logical qubits per module.
    """
    if t_prep <= 0 or tau_r <= 0 or n_gates <= 0:
        raise ValueError("t_prep, tau_r and n_gates must be positive")
    g_opt = max(1, math.ceil(t_prep / tau_r))
    time = math.ceil(n_gates / g_opt) * t_prep
    return ReactionPlan(
        t_prep_seconds=t_prep,
        tau_r_seconds=tau_r,
        n_gates=n_gates,
        g_opt=g_opt,
        time_seconds=time,
        logical_qubits=g_opt * modules_qubits,
    )


def sequential_baseline(
    n_gates: int, d: int, assume: PhysicalAssumptions
) -> tuple[float, int]:
    """Serial lattice-surgery execution of n teleported gates.

    Each gate costs 1.5 d SE rounds of surgery plus one reaction delay and
    runs on 2 logical qubits (the data patch and one magic-state patch).
    """
    if n_gates <= 0:
        raise ValueError("n_gates must be positive")
    require_valid_distance(d)
    return n_gates * (1.5 * d * assume.t_se + assume.tau_r), 2
