"""Experiment drivers: per-gate entanglement traces and the (N, y) sweep.

Three kinds of dataset are produced, all as CSV with a comment line
recording the seed and package version followed by a header row:

  - traces of G through the Fourier-transform circuit for product,
    isotropic-random, and Shor pre-processed input states,
  - the sweep over every composite N and base y recording G of the
    collapsed pre-processing state, its classification, and the
    sqrt(1 - 1/(2N)) bound,
  - the periodic-state study of P_max versus the odd part of the period.

Identical seeds reproduce identical CSV bytes; for that reason the
wall-time of each measure evaluation stays in the in-memory records only.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._version import __version__
from .groverian import ProductAnsatz, _ascend, maximize
from .shor import (
    ShorInstance,
    choose_register_size,
    find_order,
    is_composite,
    preprocess,
    run_qft,
)
from .statevector import (
    GateOp,
    PeriodicStateSpec,
    StateVector,
    make_basis_state,
    make_periodic_state,
    make_random_isotropic_state,
    make_random_product_state,
)

DEFAULT_SEED = 7

GCD_SHORTCUT = "gcd_shortcut"
POWER_OF_TWO_ORDER = "power_of_two_order"
ENTANGLED = "entangled"

ZERO_G_THRESHOLD = 1e-4


def _substream(seed, *tags) -> np.random.Generator:
    """Independent generator for one cell of an experiment, derived from
    the master seed and integer tags so results are schedule-independent."""
    entropy = [int(seed)] + [int(t) for t in tags]
    return np.random.default_rng(np.random.SeedSequence(entropy))


@dataclass(frozen=True)
class TraceRecord:
    """G after one gate of a traced circuit run.

    gate is None for the pre-circuit record (gate_index 0). eval_seconds
    is the wall time of the measure evaluation; it is not written to CSV
    so that reruns stay byte-identical.
    """

    experiment_id: str
    gate_index: int
    gate: GateOp | None
    groverian_g: float
    norm_error: float
    eval_seconds: float


@dataclass(frozen=True)
class SweepRecord:
    """One (N, y) cell: order info, G of the collapsed state, class, bound."""

    N: int
    y: int
    r: int | None
    d: int | None
    groverian_g: float
    classification: str
    bound: float


@dataclass(frozen=True)
class PeriodicStudyRecord:
    L: int
    r: int
    d: int
    p_max: float
    qft_drift: float


def trace_single_state(
    state: StateVector,
    experiment_id: str,
    seed_entropy,
    restarts: int = 8,
    every_gate: bool = False,
) -> list[TraceRecord]:
    """Trace G through the Fourier transform of one input state.

    A record is emitted for gate ordinal 0 (the input) and for every gate.
    By default G is evaluated after controlled-phase gates and at the
    final gate only, since local gates cannot change it; Hadamard rows
    repeat the last evaluated value. every_gate evaluates at each row.
    Each evaluation gets its own generator derived from seed_entropy and
    the gate ordinal. On top of the random restarts, every evaluation also
    ascends from the previous evaluation's best ansatz: consecutive states
    differ by one gate, so the carried ansatz is a strong extra start and
    keeps the restart noise correlated along the trace. The best of all
    ascents is still a lower bound on the true P_max.
    """
    entropy = tuple(int(t) for t in seed_entropy)
    records: list[TraceRecord] = []
    carried: ProductAnsatz | None = None

    def hadamard_carry(ansatz: ProductAnsatz, k: int) -> ProductAnsatz:
        # H acts locally, so the carried optimum maps exactly: v_k -> H v_k
        # up to a global phase, which the (theta, gamma) form absorbs.
        v = ansatz.qubit_vectors()[k - 1]
        u0 = (v[0] + v[1]) / math.sqrt(2.0)
        u1 = (v[0] - v[1]) / math.sqrt(2.0)
        theta = ansatz.theta.copy()
        gamma = ansatz.gamma.copy()
        theta[k - 1] = math.acos(min(1.0, max(0.0, abs(u0))))
        if abs(u0) < 1e-12 or abs(u1) < 1e-12:
            gamma[k - 1] = 0.0 if abs(u1) < 1e-12 else np.angle(u1)
        else:
            gamma[k - 1] = np.angle(u1) - np.angle(u0)
        return ProductAnsatz(theta, gamma)

    def evaluate(st: StateVector, ordinal: int) -> tuple[float, float]:
        nonlocal carried
        rng = np.random.default_rng(np.random.SeedSequence(list(entropy) + [ordinal]))
        t0 = time.perf_counter()
        res = maximize(st, restarts=restarts, rng_seed=rng)
        p_best, ansatz_best = res.p_max, res.ansatz
        if carried is not None:
            opt, _ = _ascend(st, carried.theta, carried.gamma)
            if opt.f_squared > p_best:
                p_best, ansatz_best = min(1.0, opt.f_squared), opt.ansatz()
        carried = ansatz_best
        return math.sqrt(max(0.0, 1.0 - p_best)), time.perf_counter() - t0

    g0, dt0 = evaluate(state, 0)
    records.append(
        TraceRecord(experiment_id, 0, None, g0, state.squared_norm_error, dt0)
    )
    total = state.num_qubits * (state.num_qubits + 1) // 2
    last_g = g0

    def callback(ordinal: int, gate: GateOp, st: StateVector) -> None:
        nonlocal last_g, carried
        if gate.kind == "H" and carried is not None:
            carried = hadamard_carry(carried, gate.k)
        if every_gate or gate.kind == "CP" or ordinal == total:
            g, dt = evaluate(st, ordinal)
            last_g = g
        else:
            g, dt = last_g, 0.0
        records.append(
            TraceRecord(experiment_id, ordinal, gate, g, st.squared_norm_error, dt)
        )

    run_qft(state, callback)
    return records


def run_fig2(
    L: int,
    num_product_states: int,
    num_random_states: int,
    rng_seed=DEFAULT_SEED,
    restarts: int = 8,
    every_gate: bool = False,
) -> list[TraceRecord]:
    """Traces for random product states and isotropic random states."""
    if L < 2:
        raise ValueError("need at least two qubits for a meaningful trace")
    records: list[TraceRecord] = []
    for i in range(num_product_states):
        state, _ = make_random_product_state(L, _substream(rng_seed, 1, i))
        records.extend(
            trace_single_state(
                state, f"product-{i + 1}", (rng_seed, 11, i), restarts, every_gate
            )
        )
    for i in range(num_random_states):
        state = make_random_isotropic_state(L, _substream(rng_seed, 2, i))
        records.extend(
            trace_single_state(
                state, f"random-{i + 1}", (rng_seed, 12, i), restarts, every_gate
            )
        )
    return records


def run_fig3(
    cases,
    shift: int = 0,
    rng_seed=DEFAULT_SEED,
    restarts: int = 8,
    every_gate: bool = False,
) -> list[TraceRecord]:
    """Traces for Shor pre-processed states at a fixed measurement shift."""
    records: list[TraceRecord] = []
    for N, y in cases:
        instance = ShorInstance(N, y)
        pre = preprocess(instance, fixed_shift=shift)
        records.extend(
            trace_single_state(
                pre.state,
                f"shor-N{N}-y{y}",
                (rng_seed, 20, N, y),
                restarts,
                every_gate,
            )
        )
    return records


def run_fig4(N_max: int, rng_seed=DEFAULT_SEED, restarts: int = 8) -> list[SweepRecord]:
    """Entanglement of the collapsed pre-processing state for every
    composite N <= N_max and every base 1 < y < N-1, at shift 0.

    Bases sharing a divisor with N collapse the register to the basis
    state at index 0 (the only exponent with y^a = 1 mod N is a = 0), so
    those rows carry G of that state, which is zero. Rows are ordered by
    (N, y); each cell uses its own generator derived from (seed, N, y).
    """
    if N_max < 3:
        raise ValueError("N_max must be at least 3")
    records: list[SweepRecord] = []
    for N in range(4, N_max + 1):
        if not is_composite(N):
            continue
        L = choose_register_size(N)
        bound = math.sqrt(1.0 - 1.0 / (2.0 * N))
        for y in range(2, N - 1):
            rng = _substream(rng_seed, N, y)
            if math.gcd(y, N) > 1:
                r, d = None, None
                state = make_basis_state(L, 0)
                classification = GCD_SHORTCUT
            else:
                r = find_order(N, y)
                spec = PeriodicStateSpec(L, r, 0)
                d = spec.d
                state = make_periodic_state(spec)
                classification = POWER_OF_TWO_ORDER if d == 1 else ENTANGLED
            res = maximize(state, restarts=restarts, rng_seed=rng)
            records.append(
                SweepRecord(N, y, r, d, res.g, classification, bound)
            )
    return records


def run_periodic_study(
    L_range,
    r_set,
    rng_seed=DEFAULT_SEED,
    restarts: int = 8,
) -> list[PeriodicStudyRecord]:
    """P_max and transform drift for periodic states over (L, r) pairs.

    For each pair, the shift-0 periodic state is built, P_max measured,
    and the transform traced to record max |G_t - G_0| over the circuit.
    """
    Ls = sorted(set(int(L) for L in L_range))
    rs = sorted(set(int(r) for r in r_set))
    if not Ls or not rs:
        raise ValueError("need at least one L and one r")
    if max(rs) > (1 << min(Ls)):
        raise ValueError("period exceeds the smallest register")
    records: list[PeriodicStudyRecord] = []
    for L in Ls:
        for r in rs:
            spec = PeriodicStateSpec(L, r, 0)
            state = make_periodic_state(spec)
            res = maximize(state, restarts=restarts, rng_seed=_substream(rng_seed, 40, L, r))
            trace = trace_single_state(
                state, f"periodic-L{L}-r{r}", (rng_seed, 41, L, r), restarts
            )
            g0 = trace[0].groverian_g
            drift = max(abs(rec.groverian_g - g0) for rec in trace)
            records.append(PeriodicStudyRecord(L, r, spec.d, res.p_max, drift))
    return records


# ---------------------------------------------------------------- CSV output

TRACE_HEADER = "experiment_id,gate_index,gate_kind,k,m,theta_radians,groverian_G,norm_error"
SWEEP_HEADER = "N,y,r,d,groverian_G,classification,bound"
PERIODIC_HEADER = "L,r,d,p_max,qft_drift"


def _comment(seed) -> str:
    return f"# seed={seed} version={__version__}"


def _f(x: float) -> str:
    # shortest representation that round-trips the exact double
    return repr(float(x))


def trace_csv_text(records, seed) -> str:
    lines = [_comment(seed), TRACE_HEADER]
    for rec in records:
        gate = rec.gate
        kind = "" if gate is None else gate.kind
        k = "" if gate is None else str(gate.k)
        m = "" if gate is None or gate.m is None else str(gate.m)
        theta = "" if gate is None or gate.theta is None else _f(gate.theta)
        lines.append(
            f"{rec.experiment_id},{rec.gate_index},{kind},{k},{m},{theta},"
            f"{_f(rec.groverian_g)},{_f(rec.norm_error)}"
        )
    return "\n".join(lines) + "\n"


def sweep_csv_text(records, seed) -> str:
    lines = [_comment(seed), SWEEP_HEADER]
    for rec in records:
        r = "" if rec.r is None else str(rec.r)
        d = "" if rec.d is None else str(rec.d)
        lines.append(
            f"{rec.N},{rec.y},{r},{d},{_f(rec.groverian_g)},"
            f"{rec.classification},{_f(rec.bound)}"
        )
    return "\n".join(lines) + "\n"


def periodic_csv_text(records, seed) -> str:
    lines = [_comment(seed), PERIODIC_HEADER]
    for rec in records:
        lines.append(
            f"{rec.L},{rec.r},{rec.d},{_f(rec.p_max)},{_f(rec.qft_drift)}"
        )
    return "\n".join(lines) + "\n"


def write_trace_csv(records, path, seed) -> None:
    Path(path).write_text(trace_csv_text(records, seed))


def write_sweep_csv(records, path, seed) -> None:
    Path(path).write_text(sweep_csv_text(records, seed))


def write_periodic_csv(records, path, seed) -> None:
    Path(path).write_text(periodic_csv_text(records, seed))
