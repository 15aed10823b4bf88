"""Render per-gate entanglement traces from one or more trace CSVs.

One line per experiment id, gate ordinal on x, G on y with the full
[0, 1] range shown. The script never recomputes anything: whatever the
CSV says is what gets drawn.
"""

import argparse
import sys

from common import TRACE_COLUMNS, CsvFormatError, configure_backend, read_rows


def collect_series(paths):
    series = {}
    for path in paths:
        for row in read_rows(path, TRACE_COLUMNS):
            xs, ys = series.setdefault(row["experiment_id"], ([], []))
            xs.append(int(row["gate_index"]))
            ys.append(float(row["groverian_G"]))
    return series


def render(series, out_path):
    plt = configure_backend()
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for name in sorted(series):
        xs, ys = series[name]
        order = sorted(range(len(xs)), key=xs.__getitem__)
        ax.plot([xs[i] for i in order], [ys[i] for i in order],
                marker=".", markersize=3, linewidth=1.0, label=name)
    ax.set_xlabel("gate ordinal")
    ax.set_ylabel("G")
    ax.set_ylim(0.0, 1.0)
    ax.set_xlim(left=0)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("csv", nargs="+", help="trace CSV file(s)")
    parser.add_argument("--out", default=None, help="image path (default: first CSV stem)")
    parser.add_argument("--vector", action="store_true", help="write SVG instead of PNG")
    args = parser.parse_args(argv)

    from common import resolve_output

    out_path = resolve_output(args.out, args.csv[0], args.vector)
    try:
        series = collect_series(args.csv)
    except CsvFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    render(series, out_path)
    points = sum(len(xs) for xs, _ in series.values())
    print(f"wrote {out_path}: {len(series)} trace(s), {points} points")
    return 0


if __name__ == "__main__":
    sys.exit(main())
