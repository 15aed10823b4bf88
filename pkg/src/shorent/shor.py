"""Shor's factoring pipeline at simulation scale.

Stages: register sizing, pre-processing (modular exponentiation and the
auxiliary-register measurement that collapses the main register to a
periodic state), the Fourier-transform gate schedule with a per-gate
trace hook, measurement, and classical continued-fraction post-processing
down to factors.

The auxiliary register is never materialized as extra qubits: the
exponentiation table is computed classically and the collapse is applied
per residue class, which is mathematically identical and keeps memory at
O(2^L) instead of O(2^L * N).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .statevector import (
    GateOp,
    PeriodicStateSpec,
    StateVector,
    apply_gate,
    as_generator,
    controlled_phase,
    hadamard,
    make_basis_state,
    make_periodic_state,
    measure_subregister,
)

STATUS_FACTORED = "factored"
STATUS_ODD_ORDER = "odd_order"
STATUS_TRIVIAL_ROOT = "trivial_root"
STATUS_APPROX_FAILED = "approx_failed"
STATUS_NON_COPRIME = "non_coprime_shortcut"


def smallest_factor(N: int) -> int | None:
    """Smallest nontrivial divisor by trial division, or None for primes/units."""
    if N < 4:
        return None
    for p in range(2, int(math.isqrt(N)) + 1):
        if N % p == 0:
            return p
    return None


def is_composite(N: int) -> bool:
    return smallest_factor(N) is not None


def choose_register_size(N: int) -> int:
    """The unique L with N^2 < 2^L <= 2 N^2."""
    if N < 3:
        raise ValueError("N must be at least 3")
    # 2^(b-1) <= N^2 < 2^b, so q = 2^b is the first power of two past N^2
    # and q <= 2 * 2^(b-1) <= 2 N^2 holds automatically.
    return (N * N).bit_length()


@dataclass(frozen=True)
class ShorInstance:
    """Problem parameters: composite N, base y, register size q = 2^L."""

    N: int
    y: int
    L: int = 0
    q: int = 0

    def __post_init__(self) -> None:
        if not is_composite(self.N):
            raise ValueError(f"{self.N} is not composite")
        if not 1 < self.y < self.N - 1:
            raise ValueError(f"base y={self.y} must satisfy 1 < y < N-1")
        L = choose_register_size(self.N)
        object.__setattr__(self, "L", L)
        object.__setattr__(self, "q", 1 << L)


@dataclass(frozen=True)
class PreprocessResult:
    """Main-register state after the auxiliary measurement.

    The state is uniform on {l, l+r, ..., l+Ar}; support_count is A+1.
    When gcd(y, N) > 1 the quantum stage is skipped entirely and
    shortcut_factor carries the classical divisor instead (r is None).
    """

    z: int
    l: int
    r: int | None
    support_count: int
    state: StateVector
    shortcut_factor: int | None = None


@dataclass(frozen=True)
class PostprocessResult:
    """Classical post-processing of a measured index c."""

    c: int
    convergent: tuple[int, int] | None
    candidate_x: int | None
    gcd_candidates: tuple[int, int] | None
    factors: tuple[int, ...]
    status: str


@dataclass(frozen=True)
class CircuitSchedule:
    """Fourier-transform gate sequence in execution order, for tracing.

    Gate ordinals are 1-based positions in the sequence.
    """

    num_qubits: int
    gates: tuple[GateOp, ...]

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)


def modexp_table(N: int, y: int, q: int) -> np.ndarray:
    """y^a mod N for a = 0..q-1, by iterated modular multiplication."""
    if not 1 < y < N - 1:
        raise ValueError(f"base y={y} must satisfy 1 < y < N-1")
    out = np.empty(q, dtype=np.int64)
    v = 1
    for a in range(q):
        out[a] = v
        v = (v * y) % N
    return out


def find_order(N: int, y: int) -> int | None:
    """Smallest r >= 1 with y^r = 1 mod N; None when gcd(y, N) > 1."""
    if not 1 < y < N - 1:
        raise ValueError(f"base y={y} must satisfy 1 < y < N-1")
    if math.gcd(y, N) != 1:
        return None
    v = y % N
    for r in range(1, N + 1):
        if v == 1:
            return r
        v = (v * y) % N
    raise RuntimeError(f"order of {y} mod {N} not found below {N}")  # unreachable


def preprocess(
    instance: ShorInstance, rng_seed=None, fixed_shift: int | None = None
) -> PreprocessResult:
    """Collapse the main register to a periodic state.

    In sample mode (fixed_shift None) the auxiliary measurement outcome z
    is drawn with Born probabilities, each shift l < r weighted by its
    support size. With fixed_shift the outcome is imposed deterministically,
    which is what the figure reproductions use.
    """
    N, y, L, q = instance.N, instance.y, instance.L, instance.q
    g = math.gcd(y, N)
    if g != 1:
        # y^a = 1 mod N has no solution with a >= 1 here, so a shift-0
        # collapse leaves only the index 0; the factor comes for free.
        return PreprocessResult(
            z=1,
            l=0,
            r=None,
            support_count=1,
            state=make_basis_state(L, 0),
            shortcut_factor=g,
        )
    r = find_order(N, y)
    if fixed_shift is None:
        if rng_seed is None:
            raise ValueError("sample mode needs an rng seed")
        rng = as_generator(rng_seed)
        counts = np.array([(q - 1 - l) // r + 1 for l in range(r)], dtype=np.float64)
        l = int(rng.choice(r, p=counts / counts.sum()))
    else:
        if not 0 <= fixed_shift < r:
            raise ValueError(f"shift {fixed_shift} not in [0, {r})")
        l = fixed_shift
    state = make_periodic_state(PeriodicStateSpec(L, r, l))
    return PreprocessResult(
        z=pow(y, l, N),
        l=l,
        r=r,
        support_count=(q - 1 - l) // r + 1,
        state=state,
    )


def build_qft_schedule(L: int) -> CircuitSchedule:
    """Gate sequence of the Fourier transform in execution order.

    Blocks run from qubit L down to qubit 1; inside the block for qubit k
    the controlled phases with controls m = L down to k+1 run first, the
    Hadamard on k last. L Hadamards and L(L-1)/2 controlled phases total.
    """
    if L < 1:
        raise ValueError("L must be >= 1")
    gates: list[GateOp] = []
    for k in range(L, 0, -1):
        for m in range(L, k, -1):
            gates.append(controlled_phase(k, m))
        gates.append(hadamard(k))
    return CircuitSchedule(L, tuple(gates))


def _bit_reversal(L: int) -> np.ndarray:
    """Permutation sending each index to its qubit-reversed counterpart."""
    idx = np.arange(1 << L)
    rev = np.zeros_like(idx)
    for b in range(L):
        rev |= ((idx >> b) & 1) << (L - 1 - b)
    return rev


def run_qft(state: StateVector, trace_callback=None) -> StateVector:
    """Fourier transform of the register: out_c = q^{-1/2} sum_a e^{2 pi i ac/q} in_a.

    The gate schedule alone produces the transform with output bits
    reversed, so the input is bit-reverse permuted before the gates run;
    the gate product applied to the permuted input matches the arithmetic
    transform index for index. trace_callback, when given, is invoked
    after every gate as trace_callback(ordinal, gate, current_state).
    """
    L = state.num_qubits
    schedule = build_qft_schedule(L)
    current = StateVector(L, state.amplitudes[_bit_reversal(L)])
    for ordinal, gate in enumerate(schedule, start=1):
        current = apply_gate(current, gate)
        if trace_callback is not None:
            trace_callback(ordinal, gate, current)
    return current


def continued_fraction_recover(c: int, q: int, N: int) -> tuple[int, int] | None:
    """Best rational c'/r with r < N and |c/q - c'/r| <= 1/(2q), reduced.

    At most one such fraction exists: two distinct candidates would sit
    within 1/q of each other, but their difference is at least
    1/(r1*r2) > 1/N^2 >= 1/q. Returns None when no denominator below N
    gets close enough.
    """
    if not 0 <= c < q:
        raise ValueError(f"measured index {c} out of range [0, {q})")
    target = Fraction(c, q)
    approx = target.limit_denominator(N - 1)
    if abs(target - approx) <= Fraction(1, 2 * q):
        return approx.numerator, approx.denominator
    return None


def postprocess(instance: ShorInstance, c: int) -> PostprocessResult:
    """Turn a measured index into factor candidates.

    The recovered denominator is accepted as the order only when it
    actually satisfies y^r = 1 mod N; an even accepted order r gives
    x = y^(r/2), and gcd(x -+ 1, N) are the factor candidates.
    """
    N, y = instance.N, instance.y
    rec = continued_fraction_recover(c, instance.q, N)
    if rec is None:
        return PostprocessResult(c, None, None, None, (), STATUS_APPROX_FAILED)
    _, rhat = rec
    if pow(y, rhat, N) != 1:
        return PostprocessResult(c, rec, None, None, (), STATUS_APPROX_FAILED)
    if rhat % 2 == 1:
        return PostprocessResult(c, rec, None, None, (), STATUS_ODD_ORDER)
    x = pow(y, rhat // 2, N)
    if x in (1, N - 1):
        return PostprocessResult(c, rec, x, None, (), STATUS_TRIVIAL_ROOT)
    cands = (math.gcd(x - 1, N), math.gcd(x + 1, N))
    factors = tuple(sorted({p for p in cands if 1 < p < N}))
    if not factors:  # cannot occur for x*x = 1 with x != +-1, kept defensive
        return PostprocessResult(c, rec, x, cands, (), STATUS_APPROX_FAILED)
    return PostprocessResult(c, rec, x, cands, factors, STATUS_FACTORED)


@dataclass(frozen=True)
class FactorResult:
    """End-to-end outcome: factors found (empty if attempts ran out) and
    the attempt log, one entry per attempt with keys y, l, c, status, factors."""

    N: int
    factors: tuple[int, ...]
    attempts: tuple[dict, ...]

    @property
    def succeeded(self) -> bool:
        return bool(self.factors)


def factor(N: int, rng_seed, y: int | None = None, max_attempts: int = 10) -> FactorResult:
    """Repeat preprocess, transform, measure, postprocess until factored.

    With y given the base is fixed; otherwise bases are drawn uniformly
    from (1, N-1), with a fresh base after every 10 failed attempts.
    A base sharing a divisor with N short-circuits classically.
    """
    if not is_composite(N):
        raise ValueError(f"{N} is not composite")
    rng = as_generator(rng_seed)
    attempts: list[dict] = []
    current_y = y
    for attempt in range(max_attempts):
        if y is None and (current_y is None or (attempt > 0 and attempt % 10 == 0)):
            current_y = int(rng.integers(2, N - 1))
        instance = ShorInstance(N, current_y)
        if math.gcd(current_y, N) != 1:
            g = math.gcd(current_y, N)
            factors = tuple(sorted({g, N // g}))
            attempts.append(
                {
                    "y": current_y,
                    "l": None,
                    "c": None,
                    "status": STATUS_NON_COPRIME,
                    "factors": list(factors),
                }
            )
            return FactorResult(N, factors, tuple(attempts))
        pre = preprocess(instance, rng_seed=rng)
        transformed = run_qft(pre.state)
        bits, _ = measure_subregister(transformed, range(1, instance.L + 1), rng)
        c = 0
        for b in bits:
            c = (c << 1) | b
        post = postprocess(instance, c)
        attempts.append(
            {
                "y": current_y,
                "l": pre.l,
                "c": c,
                "status": post.status,
                "factors": list(post.factors),
            }
        )
        if post.status == STATUS_FACTORED:
            return FactorResult(N, post.factors, tuple(attempts))
    return FactorResult(N, (), tuple(attempts))
