"""CSV intake shared by the figure scripts.

The scripts are strict, read-only consumers of the simulator's CSV
outputs: a file whose header row differs from the documented column
contract is refused, comment lines starting with '#' are skipped, and
numeric fields are parsed here so the plot code only sees clean rows.
"""

import csv
from pathlib import Path

TRACE_COLUMNS = [
    "experiment_id",
    "gate_index",
    "gate_kind",
    "k",
    "m",
    "theta_radians",
    "groverian_G",
    "norm_error",
]

SWEEP_COLUMNS = ["N", "y", "r", "d", "groverian_G", "classification", "bound"]


class CsvFormatError(ValueError):
    pass


def read_rows(path, expected_columns):
    """Rows of one CSV as dicts keyed by the documented column names."""
    path = Path(path)
    if not path.exists():
        raise CsvFormatError(f"{path}: no such file")
    with path.open(newline="") as handle:
        lines = [line for line in handle if not line.startswith("#")]
    if not lines:
        raise CsvFormatError(f"{path}: no header row")
    reader = csv.reader(lines)
    header = next(reader)
    if header != expected_columns:
        raise CsvFormatError(
            f"{path}: header {','.join(header)!r} does not match the expected "
            f"columns {','.join(expected_columns)!r}"
        )
    rows = []
    for parts in reader:
        if len(parts) != len(expected_columns):
            raise CsvFormatError(
                f"{path}: row with {len(parts)} fields, expected {len(expected_columns)}"
            )
        rows.append(dict(zip(expected_columns, parts)))
    if not rows:
        raise CsvFormatError(f"{path}: no data rows")
    return rows


def resolve_output(out, first_input, vector):
    """Output path: explicit --out wins, otherwise the input stem.

    The suffix follows the requested format (raster by default).
    """
    suffix = ".svg" if vector else ".png"
    if out is not None:
        return Path(out)
    return Path(first_input).with_suffix(suffix)


def configure_backend():
    import matplotlib

    matplotlib.use("Agg")
    # fixed hash salt keeps vector output reproducible between runs
    matplotlib.rcParams["svg.hashsalt"] = "figures"
    import matplotlib.pyplot as pyplot

    return pyplot
