"""Command-line front end.

Subcommands: factor, trace, groverian, sweep, periodic-study. Every run
is deterministic given its flags; all randomness flows from the single
--seed value, which is echoed in the comment line of any CSV written.

Exit codes: 0 success, 1 algorithmic failure (factoring attempts
exhausted), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .experiments import (
    DEFAULT_SEED,
    _substream,
    run_fig4,
    run_periodic_study,
    sweep_csv_text,
    periodic_csv_text,
    trace_csv_text,
    trace_single_state,
    write_sweep_csv,
)
from .groverian import maximize
from .shor import ShorInstance, factor, preprocess, smallest_factor
from .statevector import (
    PeriodicStateSpec,
    make_periodic_state,
    make_random_isotropic_state,
    make_random_product_state,
    read_state_json,
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


@dataclass(frozen=True)
class RunConfig:
    """Resolved flag set of one invocation; the seed is always defined."""

    subcommand: str
    seed: int
    n: int | None = None
    y: int | None = None
    restarts: int | None = None
    out: str | None = None
    long_run: bool = False
    every_gate: bool = False
    fixed_shift: int = 0


def _cmd_factor(args) -> int:
    N = args.n
    if N < 4 or smallest_factor(N) is None:
        if N >= 2 and smallest_factor(N) is None:
            print(f"{N} is prime", file=sys.stderr)
        else:
            print(f"{N} is not a composite integer", file=sys.stderr)
        return EXIT_USAGE
    if args.y is not None and not 1 < args.y < N - 1:
        print(f"y must satisfy 1 < y < {N - 1}", file=sys.stderr)
        return EXIT_USAGE
    result = factor(N, rng_seed=args.seed, y=args.y, max_attempts=args.max_attempts)
    if args.log:
        Path(args.log).write_text(json.dumps(list(result.attempts), indent=2) + "\n")
    if result.succeeded:
        p = result.factors[0]
        print(f"{N} = {p} × {N // p}")
        return EXIT_OK
    print(
        f"no factors of {N} found within {args.max_attempts} attempts",
        file=sys.stderr,
    )
    return EXIT_FAILURE


def _cmd_trace(args) -> int:
    seed = args.seed
    if args.shor is not None:
        N, y = args.shor
        instance = ShorInstance(N, y)
        pre = preprocess(instance, fixed_shift=args.shift)
        state = pre.state
        experiment_id = f"shor-N{N}-y{y}"
    elif args.product:
        state, _ = make_random_product_state(args.num_qubits, _substream(seed, 1, 0))
        experiment_id = "product-1"
    elif args.random:
        state = make_random_isotropic_state(args.num_qubits, _substream(seed, 2, 0))
        experiment_id = "random-1"
    elif args.periodic is not None:
        L, r, shift = args.periodic
        state = make_periodic_state(PeriodicStateSpec(L, r, shift))
        experiment_id = f"periodic-L{L}-r{r}-l{shift}"
    else:
        state = read_state_json(args.file)
        experiment_id = f"file-{Path(args.file).stem}"
    records = trace_single_state(
        state,
        experiment_id,
        (seed, 30),
        restarts=args.restarts,
        every_gate=args.every_gate,
    )
    text = trace_csv_text(records, seed)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_groverian(args) -> int:
    state = read_state_json(args.state_file)
    rng = np.random.default_rng(np.random.SeedSequence([args.seed, 60]))
    result = maximize(state, restarts=args.restarts, rng_seed=rng)
    print(json.dumps(result.as_json_dict(), indent=2))
    return EXIT_OK


def _cmd_sweep(args) -> int:
    if args.n_max is not None:
        n_max = args.n_max
    else:
        n_max = 200 if args.long_run else 100
    records = run_fig4(n_max, rng_seed=args.seed, restarts=args.restarts)
    write_sweep_csv(records, args.out, args.seed)
    counts = Counter(rec.classification for rec in records)
    violations = sum(1 for rec in records if rec.groverian_g > rec.bound + 1e-6)
    max_g = max((rec.groverian_g for rec in records), default=0.0)
    print(f"wrote {len(records)} records to {args.out}")
    print(
        "classification counts: "
        + ", ".join(f"{name}={counts.get(name, 0)}"
                    for name in ("gcd_shortcut", "power_of_two_order", "entangled"))
    )
    print(f"max G = {max_g:.6f}")
    print(f"bound violations = {violations}")
    return EXIT_OK


def _parse_int_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise ValueError(f"expected a comma-separated integer list, got {text!r}") from exc
    if not values:
        raise ValueError("expected at least one integer")
    return values


def _cmd_periodic_study(args) -> int:
    L_values = _parse_int_list(args.l_values)
    r_values = _parse_int_list(args.r_values)
    records = run_periodic_study(
        L_values, r_values, rng_seed=args.seed, restarts=args.restarts
    )
    Path(args.out).write_text(periodic_csv_text(records, args.seed))
    print(f"wrote {len(records)} records to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shorent",
        description="Factoring simulator with per-gate entanglement tracking",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("factor", help="run the factoring pipeline end to end")
    p.add_argument("--n", type=int, required=True, help="composite integer to factor")
    p.add_argument("--y", type=int, default=None, help="fixed base (default: random bases)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--max-attempts", type=int, default=10)
    p.add_argument("--log", default=None, help="write the attempt log JSON here")
    p.set_defaults(handler=_cmd_factor)

    p = sub.add_parser("trace", help="trace G through the transform circuit")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--shor", type=int, nargs=2, metavar=("N", "Y"))
    source.add_argument("--product", action="store_true",
                        help="random product state (see --num-qubits)")
    source.add_argument("--random", action="store_true",
                        help="isotropic random state (see --num-qubits)")
    source.add_argument("--periodic", type=int, nargs=3, metavar=("L", "R", "SHIFT"))
    source.add_argument("--file", default=None, help="state file (JSON)")
    p.add_argument("--num-qubits", type=int, default=9)
    p.add_argument("--shift", type=int, default=0,
                   help="fixed pre-processing shift for --shor")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--every-gate", action="store_true",
                   help="evaluate G after every gate, not only phase gates")
    p.add_argument("--out", default=None, help="output CSV path (default: stdout)")
    p.set_defaults(handler=_cmd_trace)

    p = sub.add_parser("groverian", help="measure one state file")
    p.add_argument("state_file")
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(handler=_cmd_groverian)

    p = sub.add_parser("sweep", help="entanglement sweep over (N, y) cells")
    p.add_argument("--n-max", type=int, default=None,
                   help="largest N (default 100, or 200 with --long-run)")
    p.add_argument("--long-run", action="store_true")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--out", default="fig4_sweep.csv")
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("periodic-study", help="P_max and transform drift of periodic states")
    p.add_argument("--l-values", default="6,8,10", help="comma-separated qubit counts")
    p.add_argument("--r-values", default="2,3,4,6", help="comma-separated periods")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--out", default="periodic_study.csv")
    p.set_defaults(handler=_cmd_periodic_study)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
