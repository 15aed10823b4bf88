"""Groverian entanglement measure G = sqrt(1 - P_max).

P_max is the squared overlap of a pure state with its nearest product
state. It is found by coordinate ascent over the per-qubit angles of the
product ansatz

    |e> = prod_k ( cos(theta_k)|0> + e^{i gamma_k} sin(theta_k)|1> ),

where each single-qubit update is analytic: writing the overlap as
f = c_k cos(theta_k) + d_k e^{i gamma_k} sin(theta_k), the optimum over
(theta_k, gamma_k) sets gamma_k to the phase difference of c_k and d_k
and tan(theta_k) = |d_k| / |c_k|, raising |f|^2 to |c_k|^2 + |d_k|^2.

The overlap is computed as f = sum_j conj(a_j) * prod_k b_j^(k), i.e. the
inner product of the state with the ansatz; the maximized |f|^2 does not
depend on which side is conjugated.

A brute-force grid oracle over the same angles (feasible up to 3 qubits)
provides independent ground truth for tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .statevector import StateVector, as_generator

TWO_PI = 2.0 * math.pi

SWEEP_GAIN_TOL = 1e-12
MAX_SWEEPS = 1000
RESTART_AGREEMENT_TOL = 1e-8


def _wrap_angle(x: float) -> float:
    """Reduce to [0, 2*pi). Guards the rounding case where x % 2pi == 2pi."""
    y = math.fmod(x, TWO_PI)
    if y < 0.0:
        y += TWO_PI
    if y >= TWO_PI:
        y = 0.0
    return y


@dataclass(frozen=True)
class ProductAnsatz:
    """Per-qubit angle pairs (theta_k in [0, pi], gamma_k in [0, 2*pi))."""

    theta: np.ndarray
    gamma: np.ndarray

    def __post_init__(self) -> None:
        theta = np.array(self.theta, dtype=np.float64)
        gamma = np.array(self.gamma, dtype=np.float64)
        if theta.ndim != 1 or theta.shape != gamma.shape or theta.size < 1:
            raise ValueError("theta and gamma must be equal-length 1-D arrays")
        if not (np.all(np.isfinite(theta)) and np.all(np.isfinite(gamma))):
            raise ValueError("angles must be finite")
        if theta.min() < -1e-9 or theta.max() > math.pi + 1e-9:
            raise ValueError("theta entries must lie in [0, pi]")
        theta = np.clip(theta, 0.0, math.pi)
        gamma = np.array([_wrap_angle(g) for g in gamma])
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "gamma", gamma)

    @property
    def num_qubits(self) -> int:
        return self.theta.size

    def qubit_vectors(self) -> np.ndarray:
        """(L, 2) array of the single-qubit states (cos t, e^{i g} sin t)."""
        return np.stack(
            [np.cos(self.theta), np.exp(1j * self.gamma) * np.sin(self.theta)],
            axis=1,
        )

    def product_state(self) -> StateVector:
        """Realize the ansatz as a full 2^L state vector."""
        amps = np.ones(1, dtype=np.complex128)
        for v in self.qubit_vectors():
            amps = np.kron(amps, v)
        return StateVector(self.num_qubits, amps)


@dataclass(frozen=True)
class GroverianResult:
    """Outcome of the ascent: P_max, the maximizing ansatz, diagnostics.

    G is derived from P_max on access so that G^2 + P_max = 1 exactly.
    spread is max - min of the per-restart optima; converged means at
    least half of the restarts agreed with the best within 1e-8.
    """

    p_max: float
    ansatz: ProductAnsatz
    sweeps_used: tuple[int, ...]
    restarts: int
    converged: bool
    spread: float
    degenerate_updates: int = 0

    def __post_init__(self) -> None:
        if not 0.0 <= self.p_max <= 1.0:
            raise ValueError(f"p_max must lie in [0, 1], got {self.p_max}")

    @property
    def g(self) -> float:
        return math.sqrt(max(0.0, 1.0 - self.p_max))

    def as_json_dict(self) -> dict:
        return {
            "p_max": self.p_max,
            "g": self.g,
            "theta": [float(t) for t in self.ansatz.theta],
            "gamma": [float(g) for g in self.ansatz.gamma],
            "restarts": self.restarts,
            "converged": self.converged,
            "spread": self.spread,
        }


def overlap(state: StateVector, ansatz: ProductAnsatz) -> complex:
    """Overlap f = sum_j conj(a_j) * prod_k b_j^(k), in O(2^L) work.

    The product factors are contracted qubit by qubit, last qubit first
    (the last qubit is the least significant index bit).
    """
    if ansatz.num_qubits != state.num_qubits:
        raise ValueError(
            f"ansatz has {ansatz.num_qubits} qubits, state has {state.num_qubits}"
        )
    t = np.conj(state.amplitudes)
    for v in ansatz.qubit_vectors()[::-1]:
        t = t.reshape(-1, 2) @ v
    return complex(t[0])


class OptimizerState:
    """Working state of the coordinate ascent over one ansatz.

    Caches partial contractions so that a full sweep over the L qubits
    costs O(2^L) in total: a suffix table S[k] (the conjugated amplitudes
    contracted with the current vectors of qubits k+1..L) is rebuilt once
    per sweep, and a prefix vector grows by one Kronecker factor per
    updated qubit. The split sums for qubit k are then a single 2-column
    matrix-vector product:

        (c_k, d_k) = prefix_{1..k-1} @ S[k] reshaped to (2^{k-1}, 2).

    Out-of-order updates are supported through a direct O(2^L)
    recontraction, so update_single_qubit is safe to call standalone.
    """

    def __init__(self, state: StateVector, ansatz: ProductAnsatz) -> None:
        if ansatz.num_qubits != state.num_qubits:
            raise ValueError("ansatz and state qubit counts differ")
        self.num_qubits = state.num_qubits
        self.conj_amplitudes = np.conj(state.amplitudes)
        self.theta = ansatz.theta.copy()
        self.gamma = ansatz.gamma.copy()
        self.vectors = ansatz.qubit_vectors()
        self.f_squared = abs(overlap(state, ansatz)) ** 2
        self.history: list[float] = [self.f_squared]
        self.degenerate_updates = 0
        self.c: complex | None = None
        self.d: complex | None = None
        self._suffix: list[np.ndarray] | None = None
        self._prefix: np.ndarray | None = None
        self._next_k = 1

    def ansatz(self) -> ProductAnsatz:
        return ProductAnsatz(self.theta, self.gamma)

    def _build_suffix(self) -> None:
        suffix = [np.empty(0)] * (self.num_qubits + 1)
        t = self.conj_amplitudes
        suffix[self.num_qubits] = t
        for k in range(self.num_qubits, 0, -1):
            t = t.reshape(-1, 2) @ self.vectors[k - 1]
            suffix[k - 1] = t
        self._suffix = suffix
        self._prefix = np.ones(1, dtype=np.complex128)
        self._next_k = 1

    def split_sums(self, k: int) -> tuple[complex, complex]:
        """c_k and d_k: the overlap contracted over every qubit except k,
        split by the value of bit k."""
        if not 1 <= k <= self.num_qubits:
            raise ValueError(f"qubit index {k} out of range")
        if self._suffix is not None and k == self._next_k:
            mat = self._suffix[k].reshape(-1, 2)
            cd = self._prefix @ mat
        else:
            # direct path: contract trailing qubits, then leading ones
            t = self.conj_amplitudes
            for j in range(self.num_qubits, k, -1):
                t = t.reshape(-1, 2) @ self.vectors[j - 1]
            prefix = np.ones(1, dtype=np.complex128)
            for j in range(1, k):
                prefix = np.kron(prefix, self.vectors[j - 1])
            cd = prefix @ t.reshape(-1, 2)
            self._suffix = None
        return complex(cd[0]), complex(cd[1])


def update_single_qubit(optstate: OptimizerState, k: int) -> OptimizerState:
    """Analytically optimize (theta_k, gamma_k) holding the rest fixed.

    Sets cos(theta_k) = |c_k| / sqrt(|c_k|^2 + |d_k|^2) and gamma_k to the
    phase of c_k minus the phase of d_k, after which |f|^2 equals
    |c_k|^2 + |d_k|^2. The degenerate case c_k = d_k = 0 leaves the angles
    unchanged (every choice is equally optimal there) and is counted.
    """
    c, d = optstate.split_sums(k)
    optstate.c, optstate.d = c, d
    mag2 = abs(c) ** 2 + abs(d) ** 2
    if mag2 == 0.0:
        optstate.degenerate_updates += 1
        new_f2 = 0.0
    else:
        mag = math.sqrt(mag2)
        optstate.theta[k - 1] = math.acos(min(1.0, abs(c) / mag))
        if abs(d) > 0.0 or abs(c) > 0.0:
            gamma = math.atan2(c.imag, c.real) - math.atan2(d.imag, d.real)
            optstate.gamma[k - 1] = _wrap_angle(gamma)
        t, g = optstate.theta[k - 1], optstate.gamma[k - 1]
        optstate.vectors[k - 1, 0] = math.cos(t)
        optstate.vectors[k - 1, 1] = complex(math.cos(g), math.sin(g)) * math.sin(t)
        new_f2 = mag2
    if new_f2 < optstate.f_squared - 1e-10:
        raise AssertionError(
            f"ascent decreased |f|^2 at qubit {k}: "
            f"{optstate.f_squared} -> {new_f2}"
        )
    optstate.f_squared = new_f2
    optstate.history.append(new_f2)
    if optstate._suffix is not None and k == optstate._next_k:
        optstate._prefix = np.kron(optstate._prefix, optstate.vectors[k - 1])
        optstate._next_k += 1
        if optstate._next_k > optstate.num_qubits:
            # sweep finished; the next sweep rebuilds the table
            optstate._suffix = None
    return optstate


def _ascend(state: StateVector, theta0, gamma0) -> tuple[OptimizerState, int]:
    """Sweep k = 1..L until the per-sweep gain in |f|^2 drops below tolerance."""
    opt = OptimizerState(state, ProductAnsatz(theta0, gamma0))
    sweeps = 0
    for _ in range(MAX_SWEEPS):
        before = opt.f_squared
        opt._build_suffix()
        for k in range(1, opt.num_qubits + 1):
            update_single_qubit(opt, k)
        sweeps += 1
        if opt.f_squared - before < SWEEP_GAIN_TOL:
            break
    return opt, sweeps


def maximize(state: StateVector, restarts: int = 20, rng_seed=None) -> GroverianResult:
    """Best P_max over coordinate-ascent runs from random initial angles.

    Each restart draws theta uniform on [0, pi) and gamma uniform on
    [0, 2*pi) per qubit, then ascends to a local maximum. The reported
    P_max is the best local maximum found; spread and the convergence
    flag expose how much the restarts disagreed.
    """
    if restarts < 1:
        raise ValueError("need at least one restart")
    rng = as_generator(rng_seed)
    L = state.num_qubits
    optima: list[float] = []
    sweeps_used: list[int] = []
    best_opt: OptimizerState | None = None
    degenerate = 0
    for _ in range(restarts):
        theta0 = rng.uniform(0.0, math.pi, L)
        gamma0 = rng.uniform(0.0, TWO_PI, L)
        opt, sweeps = _ascend(state, theta0, gamma0)
        optima.append(opt.f_squared)
        sweeps_used.append(sweeps)
        degenerate += opt.degenerate_updates
        if best_opt is None or opt.f_squared > best_opt.f_squared:
            best_opt = opt
    best = max(optima)
    agreeing = sum(1 for p in optima if best - p <= RESTART_AGREEMENT_TOL)
    return GroverianResult(
        p_max=min(1.0, best),
        ansatz=best_opt.ansatz(),
        sweeps_used=tuple(sweeps_used),
        restarts=restarts,
        converged=2 * agreeing >= restarts,
        spread=best - min(optima),
        degenerate_updates=degenerate,
    )


def _best_on_grid(conj_t: np.ndarray, mats: list[np.ndarray]):
    """Max of |f| over the outer product of per-qubit angle grids.

    conj_t is the conjugated amplitude tensor of shape [2]*L; mats[k] has
    one row per grid point of qubit k+1. Evaluation is chunked over the
    first qubit's grid to bound memory.
    """
    L = conj_t.ndim
    if L == 1:
        vals = mats[0] @ conj_t
        i = int(np.argmax(np.abs(vals)))
        return abs(vals[i]) ** 2, (i,)
    rest = conj_t
    for axis_mat in mats[:0:-1]:
        # contract the current last qubit axis with its grid
        rest = np.tensordot(rest, axis_mat, axes=([L - 1], [1]))
        L -= 1
    # rest has shape (2, G_L, G_{L-1}, ..., G_2); flatten the grid axes
    rest = rest.reshape(2, -1)
    tail_sizes = [m.shape[0] for m in mats[1:]][::-1]
    best_p = -1.0
    best_idx = (0,) * conj_t.ndim
    chunk = max(1, int(2_000_000 // max(1, rest.shape[1])))
    g0 = mats[0]
    for start in range(0, g0.shape[0], chunk):
        block = g0[start : start + chunk] @ rest
        p = np.abs(block) ** 2
        flat = int(np.argmax(p))
        row, col = divmod(flat, rest.shape[1])
        if p[row, col] > best_p:
            best_p = float(p[row, col])
            tail = np.unravel_index(col, tail_sizes) if tail_sizes else ()
            best_idx = (start + row,) + tuple(reversed(tail))
    return best_p, best_idx


def brute_force_pmax(state: StateVector, grid_resolution: int = 16) -> float:
    """Grid-search estimate of P_max, refined around the best cell.

    Exhaustively scans a (theta, gamma) grid of the given resolution per
    angle, then repeatedly shrinks a window around the best grid point
    until the step is ~1e-7 rad, giving an error of order step^2. Cost
    grows as (grid_resolution^2)^L, so this is restricted to L <= 3 and
    moderate resolutions; it exists as an independent check on maximize.
    """
    L = state.num_qubits
    if L > 3:
        raise ValueError("brute force is limited to 3 qubits")
    if grid_resolution < 8:
        raise ValueError("grid_resolution must be at least 8")
    if (grid_resolution ** 2) ** L > 5e8:
        raise ValueError("grid too fine for this qubit count; lower the resolution")

    conj_t = np.conj(state.amplitudes).reshape([2] * L)
    res = grid_resolution
    th_lo, th_hi = np.zeros(L), np.full(L, math.pi)
    ga_lo, ga_hi = np.zeros(L), np.full(L, TWO_PI)
    first = True
    best_p = 0.0
    for _ in range(40):
        ths = [np.linspace(th_lo[k], th_hi[k], res) for k in range(L)]
        # the full circle is sampled without its duplicate endpoint
        gas = [
            np.linspace(ga_lo[k], ga_hi[k], res, endpoint=not first)
            for k in range(L)
        ]
        mats = []
        for k in range(L):
            t_grid, g_grid = np.meshgrid(ths[k], gas[k], indexing="ij")
            mats.append(
                np.stack(
                    [
                        np.cos(t_grid).ravel(),
                        np.exp(1j * g_grid.ravel()) * np.sin(t_grid).ravel(),
                    ],
                    axis=1,
                )
            )
        p, idx = _best_on_grid(conj_t, mats)
        best_p = max(best_p, p)
        th_step = (th_hi - th_lo) / (res - 1)
        ga_step = (ga_hi - ga_lo) / (res - 1)
        centers_t = np.array([ths[k][idx[k] // res] for k in range(L)])
        centers_g = np.array([gas[k][idx[k] % res] for k in range(L)])
        if th_step.max() < 1e-7 and ga_step.max() < 1e-7:
            break
        # window of 1.5 grid steps on each side keeps the true optimum inside
        th_lo = np.clip(centers_t - 1.5 * th_step, 0.0, math.pi)
        th_hi = np.clip(centers_t + 1.5 * th_step, 0.0, math.pi)
        ga_lo = centers_g - 1.5 * ga_step
        ga_hi = centers_g + 1.5 * ga_step
        first = False
    return min(1.0, best_p)
