"""Measure G on a handful of well-known small states.

G = sqrt(1 - P_max), where P_max is the best squared overlap with any
product state. Product states give 0, a Bell pair gives sqrt(1/2), the
three-qubit W state gives sqrt(5)/3. The last block cross-checks the
ascent optimizer against the coarse grid search on the Bell pair.
"""

import numpy as np

from shorent.groverian import brute_force_pmax, maximize
from shorent.statevector import (
    StateVector,
    make_equal_superposition,
    make_periodic_state,
    PeriodicStateSpec,
)

s = 1 / np.sqrt(2)
zoo = {
    "|00>": StateVector(2, [1, 0, 0, 0]),
    "uniform product (L=3)": make_equal_superposition(3),
    "Bell (|00>+|11>)/sqrt2": StateVector(2, [s, 0, 0, s]),
    "GHZ (L=3)": StateVector(3, [s, 0, 0, 0, 0, 0, 0, s]),
    "W (L=3)": StateVector(3, np.array([0, 1, 1, 0, 1, 0, 0, 0]) / np.sqrt(3)),
    "periodic L=5 r=3 l=0": make_periodic_state(PeriodicStateSpec(5, 3, 0)),
}

print(f"{'state':28s} {'P_max':>9s} {'G':>9s}")
for name, state in zoo.items():
    res = maximize(state, restarts=8, rng_seed=0)
    print(f"{name:28s} {res.p_max:9.6f} {res.g:9.6f}")

grid = brute_force_pmax(zoo["Bell (|00>+|11>)/sqrt2"], grid_resolution=24)
opt = maximize(zoo["Bell (|00>+|11>)/sqrt2"], restarts=8, rng_seed=0).p_max
print(f"\nBell cross-check: ascent {opt:.6f} vs grid {grid:.6f} (exact 0.5)")
