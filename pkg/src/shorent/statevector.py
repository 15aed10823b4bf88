"""Dense state-vector core for an L-qubit register.

Bit convention shared by every module: qubit k = 1 is the MOST significant
bit of the basis index, so bit k of index j is (j >> (L - k)) & 1.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

NORM_TOL = 1e-12

_INV_SQRT2 = 1.0 / math.sqrt(2.0)


def as_generator(rng_seed) -> np.random.Generator:
    """Accept an int seed, a SeedSequence, or a Generator; return a Generator."""
    if isinstance(rng_seed, np.random.Generator):
        return rng_seed
    return np.random.default_rng(rng_seed)


class StateVector:
    """Normalized sequence of 2^L complex amplitudes over the computational basis.

    Instances are treated as values: gate application and measurement return
    new objects and never mutate their input.
    """

    __slots__ = ("num_qubits", "amplitudes")

    def __init__(self, num_qubits: int, amplitudes) -> None:
        if num_qubits < 1:
            raise ValueError("num_qubits must be >= 1")
        amps = np.asarray(amplitudes, dtype=np.complex128)
        expected = 1 << num_qubits
        if amps.shape != (expected,):
            raise ValueError(f"expected {expected} amplitudes, got shape {amps.shape}")
        err = abs(float(np.real(np.vdot(amps, amps))) - 1.0)
        if err > NORM_TOL:
            raise ValueError(f"state is not normalized: squared norm off by {err:.3e}")
        self.num_qubits = num_qubits
        self.amplitudes = amps

    @property
    def squared_norm_error(self) -> float:
        """|sum of |a_j|^2 - 1|, useful for drift monitoring."""
        return abs(float(np.real(np.vdot(self.amplitudes, self.amplitudes))) - 1.0)

    def bit(self, j: int, k: int) -> int:
        """Bit of qubit k (1-based, MSB first) in basis index j."""
        return (j >> (self.num_qubits - k)) & 1

    def __repr__(self) -> str:  # pragma: no cover
        return f"StateVector(num_qubits={self.num_qubits})"


@dataclass(frozen=True)
class GateOp:
    """One circuit element: Hadamard ("H") on qubit k, or controlled phase
    ("CP") between qubits k < m with angle pi / 2^(m-k)."""

    kind: str
    k: int
    m: int | None = None
    theta: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("H", "CP"):
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if self.k < 1:
            raise ValueError("qubit indices are 1-based")
        if self.kind == "H":
            if self.m is not None or self.theta is not None:
                raise ValueError("Hadamard takes no control or angle")
        else:
            if self.m is None or self.m <= self.k:
                raise ValueError("controlled phase requires m > k")
            want = math.pi / (1 << (self.m - self.k))
            if self.theta is None:
                object.__setattr__(self, "theta", want)
            elif self.theta != want:
                raise ValueError("controlled-phase angle must be exactly pi / 2^(m-k)")


def hadamard(k: int) -> GateOp:
    return GateOp("H", k)


def controlled_phase(k: int, m: int) -> GateOp:
    return GateOp("CP", k, m)


@dataclass(frozen=True)
class PeriodicStateSpec:
    """Uniform superposition on {l, l+r, l+2r, ...} inside a 2^L register.

    The decomposition r = 2^M * d with d odd is derived on construction;
    the odd part d governs how entangled the realized state is.
    """

    num_qubits: int
    r: int
    l: int
    M: int = 0
    d: int = 1

    def __post_init__(self) -> None:
        if self.num_qubits < 1:
            raise ValueError("num_qubits must be >= 1")
        if self.r < 1 or self.r > (1 << self.num_qubits):
            raise ValueError("period must satisfy 1 <= r <= 2^L")
        if not 0 <= self.l < self.r:
            raise ValueError("shift must satisfy 0 <= l < r")
        d = self.r
        M = 0
        while d % 2 == 0:
            d //= 2
            M += 1
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "d", d)

    @property
    def support(self) -> np.ndarray:
        return np.arange(self.l, 1 << self.num_qubits, self.r)


def make_basis_state(L: int, j: int) -> StateVector:
    """Computational basis state |j> on L qubits."""
    if not 0 <= j < (1 << L):
        raise ValueError(f"basis index {j} out of range for {L} qubits")
    amps = np.zeros(1 << L, dtype=np.complex128)
    amps[j] = 1.0
    return StateVector(L, amps)


def make_equal_superposition(L: int) -> StateVector:
    """All 2^L amplitudes equal to 2^(-L/2)."""
    q = 1 << L
    return StateVector(L, np.full(q, q ** -0.5, dtype=np.complex128))


def make_periodic_state(spec: PeriodicStateSpec) -> StateVector:
    """Uniform positive amplitudes on l, l+r, ..., zero elsewhere."""
    amps = np.zeros(1 << spec.num_qubits, dtype=np.complex128)
    idx = spec.support
    amps[idx] = 1.0 / math.sqrt(len(idx))
    return StateVector(spec.num_qubits, amps)


def make_random_product_state(L: int, rng_seed):
    """Random tensor product of single-qubit states.

    Per qubit, cos(theta)|0> + e^{i gamma} sin(theta)|1> with theta uniform
    on [0, pi) and gamma uniform on [0, 2 pi). Returns the state together
    with the generating angles.
    """
    from .groverian import ProductAnsatz

    rng = as_generator(rng_seed)
    theta = rng.uniform(0.0, math.pi, L)
    gamma = rng.uniform(0.0, 2.0 * math.pi, L)
    ansatz = ProductAnsatz(theta, gamma)
    return ansatz.product_state(), ansatz


def make_random_isotropic_state(L: int, rng_seed) -> StateVector:
    """State drawn uniformly from the unit sphere in dimension 2^L.

    Independent standard complex Gaussian amplitudes, then normalized;
    the resulting distribution is invariant under any unitary rotation.
    """
    rng = as_generator(rng_seed)
    q = 1 << L
    amps = rng.normal(size=q) + 1j * rng.normal(size=q)
    amps /= np.linalg.norm(amps)
    return StateVector(L, amps)


def apply_gate(state: StateVector, gate: GateOp) -> StateVector:
    """Apply one gate and return the new state.

    Hadamard mixes the amplitude pairs that differ in bit k; the controlled
    phase multiplies amplitudes whose bits k and m are both 1 by e^{i theta}.
    Both are O(2^L) sweeps over the array, no gate matrix is materialized.
    """
    L = state.num_qubits
    if gate.k > L or (gate.m is not None and gate.m > L):
        raise ValueError(f"gate {gate} does not fit a {L}-qubit register")
    a = state.amplitudes.copy()
    if gate.kind == "H":
        v = a.reshape(1 << (gate.k - 1), 2, -1)
        lo = v[:, 0, :].copy()
        hi = v[:, 1, :].copy()
        v[:, 0, :] = (lo + hi) * _INV_SQRT2
        v[:, 1, :] = (lo - hi) * _INV_SQRT2
    else:
        k, m = gate.k, gate.m
        v = a.reshape(1 << (k - 1), 2, 1 << (m - k - 1), 2, -1)
        v[:, 1, :, 1, :] *= complex(math.cos(gate.theta), math.sin(gate.theta))
    return StateVector(L, a)


def measure_subregister(state: StateVector, qubit_subset, rng_seed):
    """Measure the given qubits in the computational basis.

    Returns (outcome bits in the order the qubits were given, collapsed
    state). The outcome is sampled with Born probabilities; amplitudes
    inconsistent with it are set to exactly zero before renormalizing.
    Deterministic given the seed.
    """
    qubits = list(qubit_subset)
    L = state.num_qubits
    if not qubits:
        raise ValueError("qubit subset must be nonempty")
    if len(set(qubits)) != len(qubits) or any(not 1 <= k <= L for k in qubits):
        raise ValueError(f"invalid qubit subset {qubits} for {L} qubits")
    rng = as_generator(rng_seed)

    prob = np.abs(state.amplitudes) ** 2
    ordered = sorted(qubits)
    other_axes = tuple(k - 1 for k in range(1, L + 1) if k not in qubits)
    marginal = prob.reshape([2] * L).sum(axis=other_axes).reshape(-1)
    marginal = marginal / marginal.sum()
    flat = int(rng.choice(len(marginal), p=marginal))
    # flat index enumerates the measured qubits in ascending-axis order
    by_qubit = {}
    for pos, k in enumerate(reversed(ordered)):
        by_qubit[k] = (flat >> pos) & 1
    outcome = tuple(by_qubit[k] for k in qubits)

    idx = np.arange(1 << L)
    mask = np.ones(1 << L, dtype=bool)
    for k in qubits:
        mask &= ((idx >> (L - k)) & 1) == by_qubit[k]
    amps = np.where(mask, state.amplitudes, 0.0)
    amps = amps / np.linalg.norm(amps)
    return outcome, StateVector(L, amps)


def write_state_json(state: StateVector, path) -> None:
    """Write the state file format: {"num_qubits": L, "amplitudes": [[re, im], ...]}.

    Floats are emitted with 17 significant digits so the file round-trips
    to the exact double-precision values.
    """
    parts = ", ".join(
        f"[{a.real:.17g}, {a.imag:.17g}]" for a in state.amplitudes
    )
    text = f'{{"num_qubits": {state.num_qubits}, "amplitudes": [{parts}]}}\n'
    Path(path).write_text(text)


def read_state_json(path, norm_tol: float = 1e-6) -> StateVector:
    """Read the state file format written by write_state_json.

    Inputs whose squared norm is off by more than norm_tol are rejected;
    smaller deviations are renormalized away.
    """
    doc = json.loads(Path(path).read_text())
    if not isinstance(doc, dict) or "num_qubits" not in doc or "amplitudes" not in doc:
        raise ValueError(f"{path}: not a state file (need num_qubits and amplitudes)")
    L = doc["num_qubits"]
    raw = doc["amplitudes"]
    if not isinstance(L, int) or L < 1:
        raise ValueError(f"{path}: num_qubits must be a positive integer")
    if len(raw) != (1 << L):
        raise ValueError(
            f"{path}: dimension mismatch, {len(raw)} amplitudes for {L} qubits"
            f" (need {1 << L})"
        )
    amps = np.array([complex(re, im) for re, im in raw], dtype=np.complex128)
    norm2 = float(np.real(np.vdot(amps, amps)))
    if abs(norm2 - 1.0) > norm_tol:
        raise ValueError(f"{path}: squared norm off by {abs(norm2 - 1.0):.3e}")
    if abs(norm2 - 1.0) > NORM_TOL:
        # drift small enough to accept but too large for the constructor
        amps = amps / math.sqrt(norm2)
    return StateVector(L, amps)
