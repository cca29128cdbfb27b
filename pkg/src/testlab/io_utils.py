"""Small shared helpers for deterministic CSV/text output."""

import csv
import math


def format_value(x):
    """Deterministic, diff-friendly number formatting."""
    if isinstance(x, str):
        return x
    f = float(x)
    if math.isnan(f) or math.isinf(f):
        raise ValueError(f"non-finite value in output: {x!r}")
    if f == int(f) and abs(f) < 1e15:
        return str(int(f))
    return repr(f)


def write_csv(path, header, rows):
    """RFC-4180 CSV with LF line endings and formatted numbers."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(v) for v in row])


def read_csv(path):
    """Returns (header, rows) with rows as lists of strings."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            return [], []
        return header, [row for row in reader if row]
