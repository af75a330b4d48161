"""Fermi-Hubbard compilation schemes.

Trotter step-count bound, the three plaquette-Trotter (PLAQ) layouts
(serial, row-parallel, fully parallel), and the QSP/qubitization route via
PREPARE/SELECT/SWAPUP*. Each scheme emits a CompilationSummary consumed by
the end-to-end estimator; distance-dependent layout (protected patches and
factory fleet) is resolved separately by layout_at.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .costmodel import fast_block_patches
from .factories import FactorySpec, provision
from .subroutines import T_GATE, SubroutineCost, synthesis_sigma

SCHEMES = ("plaq_serial", "plaq_L", "plaq_L2", "qsp")

LogBase = Literal["natural", "base2"]

DEFAULT_F_R = 0.5
"""Fraction of time the fully-parallel scheme's factory area doubles as routing."""

ALGORITHM_BUDGET_SHARE = 0.99
"""Share of the total error budget given to the algorithmic (Trotter/QSP) error."""


@dataclass(frozen=True)
class FHInstance:
    """A square-lattice Fermi-Hubbard time-evolution problem."""

    l_side: int
    t_hop: float
    u_onsite: float
    t_evol: float
    eps_total: float

    def __post_init__(self) -> None:
        if self.l_side < 2 or self.l_side % 2:
            raise ValueError("l_side must be an even integer >= 2")
        if self.t_hop <= 0:
            raise ValueError("t_hop must be positive")
        if self.u_onsite < 0:
            raise ValueError("u_onsite must be nonnegative")
        if self.t_evol <= 0:
            raise ValueError("t_evol must be positive")
        if not (0 < self.eps_total < 1):
            raise ValueError("eps_total must lie in (0, 1)")

    @property
    def n_modes(self) -> int:
        """Fermionic modes: two spins per site."""
        return 2 * self.l_side**2


@dataclass(frozen=True)
class ErrorBudget:
    """How the total error budget is split across error sources."""

    eps_total: float
    eps_algorithm: float
    eps_synthesis: float
    eps_s_per_rotation: float
    e_qec: float = 0.05
    t_gate_budget: float = 0.05


def allocate_budget(
    eps_total: float, rotation_count: float, e_qec: float = 0.05
) -> ErrorBudget:
    """99%/1% split between algorithmic and synthesis error."""
    if not (0 < eps_total < 1):
        raise ValueError("eps_total must lie in (0, 1)")
    if rotation_count <= 0:
        raise ValueError("rotation_count must be positive")
    eps_alg = ALGORITHM_BUDGET_SHARE * eps_total
    eps_syn = eps_total - eps_alg
    return ErrorBudget(
        eps_total=eps_total,
        eps_algorithm=eps_alg,
        eps_synthesis=eps_syn,
        eps_s_per_rotation=eps_syn / rotation_count,
        e_qec=e_qec,
    )


def trotter_kappa(u_over_t: float) -> float:
    """Commutator-norm constant of the second-order plaquette Trotter bound."""
    if u_over_t < 0:
        raise ValueError("u_over_t must be nonnegative")
    x = u_over_t
    return (1.5 * x**2 + 2 * x * (2 * math.sqrt(5) + 16) + 10) / 24


def trotter_steps(inst: FHInstance, eps_trotter: float) -> int:
    """Second-order Trotter step count meeting error eps_trotter."""
    if not (0 < eps_trotter < 1):
        raise ValueError("eps_trotter must lie in (0, 1)")
    kappa = trotter_kappa(inst.u_onsite / inst.t_hop)
    tau = inst.t_evol * inst.t_hop
    return math.ceil(math.sqrt(kappa) * inst.l_side * tau**1.5 / math.sqrt(eps_trotter))


def qsp_alpha(inst: FHInstance) -> float:
    """Block-encoding normalization: (2t + U/8) per mode."""
    return (2 * inst.t_hop + 0.125 * inst.u_onsite) * inst.n_modes


def qsp_queries(
    alpha: float, t_evol: float, eps_qsp: float, log_base: LogBase = "natural"
) -> float:
    """Queries to the block encoding for time t_evol and error eps_qsp."""
    if alpha <= 0 or t_evol <= 0:
        raise ValueError("alpha and t_evol must be positive")
    if not (0 < eps_qsp < 1):
        raise ValueError("eps_qsp must lie in (0, 1)")
    at = alpha * t_evol
    log = math.log(1 / eps_qsp)
    if log_base == "base2":
        log = math.log2(1 / eps_qsp)
    return 2 * (at + (3 ** (2 / 3) / 2) * at ** (1 / 3) * log ** (2 / 3))


def swapup_cost(n: int) -> SubroutineCost:
    """Log-depth controlled-swap network: 4(N-1) T at T-depth 4*ceil(lg N)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return SubroutineCost(4 * (n - 1), T_GATE, 4 * math.ceil(math.log2(n)), 0)


def select_cost(n: int) -> SubroutineCost:
    """SELECT oracle: 8 SWAPUP* calls plus controlled-rotation layers.

    T count 8 * 4(N-1) + 8N = 40N - 32.
    """
    swap = swapup_cost(n)
    return SubroutineCost(
        8 * swap.count + 8 * n,
        T_GATE,
        8 * swap.reaction_depth + 4,
        swap.clean_ancillas,
    )


def prepare_cost(l_side: int, sigma: int) -> SubroutineCost:
    """State preparation for the block encoding, executed sequentially."""
    if l_side < 2:
        raise ValueError("l_side must be at least 2")
    n = 2 * l_side**2
    lg_n = math.ceil(math.log2(n))
    lg_l = math.ceil(math.log2(l_side))
    t = 16 * lg_n + 4 * (lg_l**2 + 7 * lg_l) + 6 * sigma
    return SubroutineCost(t, T_GATE, t, 0)


@dataclass(frozen=True)
class CompilationSummary:
    """Logical-level output of one compilation scheme.

    consumption_rate is the magic-state provisioning rate in states per d
    SE rounds (i.e. per logical timestep).
    """

    scheme: str
    l_side: int
    data_patches: int
    routing_patches: int
    aux_patches: int
    timestep_depth: float
    reaction_depth: float
    t_count_total: float
    peak_parallel_t: float
    consumption_rate: float
    rotation_count: float
    sigma: int

    def __post_init__(self) -> None:
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.t_count_total < self.peak_parallel_t:
            raise ValueError("t_count_total must be at least peak_parallel_t")


def rotation_count(
    scheme: str,
    inst: FHInstance,
    m: int | None = None,
    log_base: LogBase = "natural",
) -> float:
    """Arbitrary-angle rotations the scheme will synthesize.

    Needed before sigma can be chosen, so it is independent of sigma.
    """
    eps_alg = ALGORITHM_BUDGET_SHARE * inst.eps_total
    if scheme == "plaq_serial":
        m = _hwp_m(inst, m)
        r = trotter_steps(inst, eps_alg)
        return r * 4 * (inst.l_side**2 / m) * math.log2(m)
    if scheme in ("plaq_L", "plaq_L2"):
        r = trotter_steps(inst, eps_alg)
        return r * 4 * inst.l_side**2
    if scheme == "qsp":
        queries = qsp_queries(qsp_alpha(inst), inst.t_evol, eps_alg, log_base)
        # 6 rotations per PREPARE, two PREPAREs per query, one phase rotation.
        return queries * 13
    raise ValueError(f"unknown scheme {scheme!r}")


def sigma_for(
    scheme: str,
    inst: FHInstance,
    m: int | None = None,
    log_base: LogBase = "natural",
) -> tuple[int, ErrorBudget]:
    """Synthesis T count and budget ledger for the scheme's rotation load."""
    rotations = rotation_count(scheme, inst, m=m, log_base=log_base)
    budget = allocate_budget(inst.eps_total, rotations)
    return synthesis_sigma(budget.eps_s_per_rotation), budget


def _hwp_m(inst: FHInstance, m: int | None) -> int:
    if m is None:
        m = inst.l_side**2
    if m < 2:
        # The Hamming-weight-phasing count formula degenerates at m=1
        # (lg 1 = 0 erases the synthesis term), so m=1 is rejected.
        raise ValueError("HWP ancilla count m must be at least 2")
    return m


def plaq_serial(inst: FHInstance, sigma: int, m: int | None = None) -> CompilationSummary:
    """Serial PLAQ compilation with Hamming-weight phasing on m ancillas.

    One pi/8 rotation per logical timestep in a fast-block layout.
    """
    m = _hwp_m(inst, m)
    l2 = inst.l_side**2
    r = trotter_steps(inst, ALGORITHM_BUDGET_SHARE * inst.eps_total)
    per_step_t = 4 * l2 * (7 + math.log2(m) * sigma / m)
    total_t = r * per_step_t
    # One Hamming-weight register of m ancillas per spin sector.
    n_logical = 2 * l2 + 2 * m
    patches = fast_block_patches(n_logical)
    return CompilationSummary(
        scheme="plaq_serial",
        l_side=inst.l_side,
        data_patches=2 * l2,
        routing_patches=patches - n_logical,
        aux_patches=2 * m,
        timestep_depth=total_t,
        reaction_depth=total_t,
        t_count_total=total_t,
        peak_parallel_t=1,
        consumption_rate=1.0,
        rotation_count=r * 4 * (l2 / m) * math.log2(m),
        sigma=sigma,
    )


def plaq_l_parallel(inst: FHInstance, sigma: int) -> CompilationSummary:
    """Row-parallel PLAQ: depth L(2 sigma + 82) per Trotter step.

    Consumes 2L magic states per d rounds; 3 routing patches per data patch.
    """
    l = inst.l_side
    r = trotter_steps(inst, ALGORITHM_BUDGET_SHARE * inst.eps_total)
    per_step_t = l**2 * (12 + 4 * sigma)
    return CompilationSummary(
        scheme="plaq_L",
        l_side=l,
        data_patches=2 * l**2,
        routing_patches=6 * l**2,
        aux_patches=0,
        timestep_depth=r * l * (2 * sigma + 82),
        reaction_depth=r * l * (12 + 2 * sigma),
        t_count_total=r * per_step_t,
        peak_parallel_t=2 * l,
        consumption_rate=2 * l,
        rotation_count=r * 4 * l**2,
        sigma=sigma,
    )


def plaq_l2_parallel(inst: FHInstance, sigma: int) -> CompilationSummary:
    """Fully parallel PLAQ: depth 6 sigma + 354 per Trotter step.

    Local fermion-to-qubit mapping at 1.5 patches per mode (3L^2 data+aux)
    and two factories per four-site unit cell (L^2 factories in total).
    """
    l = inst.l_side
    r = trotter_steps(inst, ALGORITHM_BUDGET_SHARE * inst.eps_total)
    per_step_t = l**2 * (12 + 4 * sigma)
    depth_per_step = 6 * sigma + 354
    return CompilationSummary(
        scheme="plaq_L2",
        l_side=l,
        data_patches=2 * l**2,
        routing_patches=9 * l**2,
        aux_patches=l**2,
        timestep_depth=r * depth_per_step,
        reaction_depth=r * 6 * (8 + sigma),
        t_count_total=r * per_step_t,
        peak_parallel_t=l**2,
        consumption_rate=l**2 * (12 + 4 * sigma) / depth_per_step,
        rotation_count=r * 4 * l**2,
        sigma=sigma,
    )


def qsp_compile(
    inst: FHInstance, sigma: int, log_base: LogBase = "natural"
) -> CompilationSummary:
    """QSP/qubitization compilation with the throttled SELECT schedule.

    Per query: one SELECT, two sequential PREPAREs, one phase rotation.
    Throttling caps peak parallel magic-state demand at N/4.
    """
    l = inst.l_side
    n = inst.n_modes
    lg_n = math.ceil(math.log2(n))
    queries = qsp_queries(
        qsp_alpha(inst), inst.t_evol, ALGORITHM_BUDGET_SHARE * inst.eps_total, log_base
    )
    prep = prepare_cost(l, sigma)
    t_per_query = select_cost(n).count + 2 * prep.count + sigma
    depth_per_query = (
        18 * (8 * lg_n + 1)  # throttled SWAPUP* sequences
        + 4 * (2 * lg_n - 1)  # CNOT ladders
        + 20  # controlled-rotation layers
        + 2 * prep.count
        + sigma
    )
    reactions_per_query = 32 * lg_n + 8 + 2 * prep.count + sigma
    aux = 3 * lg_n + 5
    return CompilationSummary(
        scheme="qsp",
        l_side=l,
        data_patches=n,
        routing_patches=3 * (n + aux),
        aux_patches=aux,
        timestep_depth=queries * depth_per_query,
        reaction_depth=queries * reactions_per_query,
        t_count_total=queries * t_per_query,
        peak_parallel_t=n / 4,
        consumption_rate=n / 12,
        rotation_count=queries * 13,
        sigma=sigma,
    )


def compile_scheme(
    scheme: str,
    inst: FHInstance,
    m: int | None = None,
    log_base: LogBase = "natural",
) -> tuple[CompilationSummary, ErrorBudget]:
    """Budget allocation, sigma selection, and compilation in one call."""
    sigma, budget = sigma_for(scheme, inst, m=m, log_base=log_base)
    if scheme == "plaq_serial":
        return plaq_serial(inst, sigma, m=m), budget
    if scheme == "plaq_L":
        return plaq_l_parallel(inst, sigma), budget
    if scheme == "plaq_L2":
        return plaq_l2_parallel(inst, sigma), budget
    if scheme == "qsp":
        return qsp_compile(inst, sigma, log_base=log_base), budget
    raise ValueError(f"unknown scheme {scheme!r}")


@dataclass(frozen=True)
class SchemeLayout:
    """Distance-dependent physical layout of one compiled scheme."""

    protected_patches: float
    factory_count: int
    factory_qubits: int


def tau_m_rounds(sigma: int, d: int) -> Fraction:
    """Interval between non-Clifford layers of the fully parallel scheme.

    The Trotter step spends (6 sigma + 354) timesteps delivering
    (12 + 4 sigma) magic states per data-plane site column, so states are
    needed every (6 sigma + 354)/(12 + 4 sigma) timesteps of d rounds each.
    """
    return Fraction(6 * sigma + 354, 12 + 4 * sigma) * d


def layout_at(
    summary: CompilationSummary,
    spec: FactorySpec,
    d: int,
    f_r: float = DEFAULT_F_R,
) -> SchemeLayout:
    """Protected patches and factory fleet at code distance d."""
    if not (0 <= f_r <= 1):
        raise ValueError("f_r must lie in [0, 1]")
    base_patches = summary.data_patches + summary.routing_patches + summary.aux_patches
    l2 = summary.l_side**2

    if summary.scheme in ("plaq_serial", "plaq_L"):
        rate = Fraction(round(summary.consumption_rate), d)
        fleet = provision(spec, rate)
        return SchemeLayout(base_patches, fleet.count, fleet.physical_qubits)

    if summary.scheme == "plaq_L2":
        tau_m = tau_m_rounds(summary.sigma, d)
        if tau_m <= 0:
            raise ValueError("invalid consumption schedule: tau_m must be positive")
        tau_f = Fraction(spec.tau_f_rounds).limit_denominator(10**9)
        batches = math.ceil(tau_f / tau_m)
        shared = math.ceil(Fraction(spec.q_f, 2 * d**2) * batches)
        protected = base_patches + f_r * l2 * shared
        return SchemeLayout(protected, l2, l2 * spec.q_f)

    if summary.scheme == "qsp":
        blocks = math.ceil(summary.data_patches / 4)
        tau_f = Fraction(spec.tau_f_rounds).limit_denominator(10**9)
        per_block = math.ceil(tau_f / (3 * d * spec.n_out))
        count = blocks * per_block
        return SchemeLayout(base_patches, count, count * spec.q_f)

    raise ValueError(f"unknown scheme {summary.scheme!r}")
