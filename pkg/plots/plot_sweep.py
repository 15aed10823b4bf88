"""Render the entanglement sweep: G against N with the analytic ceiling.

Each (N, y) cell becomes one scatter point, colored by its
classification; the curve sqrt(1 - 1/(2N)) is drawn on top. After
rendering, every point is checked against the curve and the script
fails if any sits above it, since that would mean the CSV contradicts
the bound it was produced under.
"""

import argparse
import math
import sys

from common import SWEEP_COLUMNS, CsvFormatError, configure_backend, read_rows

STYLE = {
    "entangled": ("tab:blue", "o"),
    "power_of_two_order": ("tab:green", "s"),
    "gcd_shortcut": ("tab:gray", "x"),
}
FALLBACK_STYLE = ("tab:red", "d")


def render(rows, out_path):
    plt = configure_backend()
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    groups = {}
    for row in rows:
        groups.setdefault(row["classification"], []).append(
            (int(row["N"]), float(row["groverian_G"]))
        )
    for name in sorted(groups):
        color, marker = STYLE.get(name, FALLBACK_STYLE)
        ns = [p[0] for p in groups[name]]
        gs = [p[1] for p in groups[name]]
        ax.scatter(ns, gs, s=12, c=color, marker=marker, label=name)

    n_lo = min(int(r["N"]) for r in rows)
    n_hi = max(int(r["N"]) for r in rows)
    curve_n = [n_lo + (n_hi - n_lo) * i / 400.0 for i in range(401)]
    ax.plot(curve_n, [math.sqrt(1 - 1 / (2 * n)) for n in curve_n],
            color="black", linewidth=1.2, label="sqrt(1 - 1/(2N))")
    ax.set_xlabel("N")
    ax.set_ylabel("G")
    ax.set_ylim(-0.02, 1.02)
    ax.legend(fontsize=8, loc="lower right")
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)


def check_bound(rows):
    """Points above the analytic curve, as (N, y, G, ceiling) tuples."""
    bad = []
    for row in rows:
        n = int(row["N"])
        g = float(row["groverian_G"])
        ceiling = math.sqrt(1 - 1 / (2 * n))
        if g > ceiling + 1e-9:
            bad.append((n, row["y"], g, ceiling))
    return bad


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("csv", help="sweep CSV file")
    parser.add_argument("--out", default=None, help="image path (default: CSV stem)")
    parser.add_argument("--vector", action="store_true", help="write SVG instead of PNG")
    args = parser.parse_args(argv)

    from common import resolve_output

    out_path = resolve_output(args.out, args.csv, args.vector)
    try:
        rows = read_rows(args.csv, SWEEP_COLUMNS)
    except CsvFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    render(rows, out_path)
    bad = check_bound(rows)
    if bad:
        worst = max(bad, key=lambda item: item[2] - item[3])
        print(
            f"error: {len(bad)} point(s) above the bound curve, e.g. "
            f"N={worst[0]} y={worst[1]} G={worst[2]:.6f} > {worst[3]:.6f}",
            file=sys.stderr,
        )
        return 1
    print(f"wrote {out_path}: {len(rows)} points, bound check passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
