"""Coverage-based testability labeling.

Testability of a class is the product of test effectiveness (mean
coverage over the adequacy criteria) and test efficiency (reciprocal of
test effort). Effort grows exponentially with the size of the minimized
influential-test suite normalized by the method count:

    effectiveness = mean(criterion coverages)
    omega         = max(0, (t - 1) / suite_size)   # avg minutes per test
    effort        = (1 + omega) ** (ceil(suite_size / nom) - 1)
    testability   = clamp(effectiveness / effort, 0, 1)

omega is clamped at zero so effort never drops below 1; an empty
minimized suite yields effort 1. Generation time t is in minutes.
Multiple generator runs per class are averaged field-wise before
labeling, so suite sizes may be non-integral; the ceiling applies after
the division.
"""

import math
from dataclasses import dataclass

from testlab.io_utils import read_csv, write_csv

FIXED_COVERAGE_COLUMNS = ("class_id", "run_id", "suite_size", "nom", "gen_time_minutes")


class EmptyCriteria(ValueError):
    pass


class ZeroSuite(ValueError):
    pass


class KeyMismatch(ValueError):
    pass


class EmptyComponent(ValueError):
    pass


class DataError(ValueError):
    """Invalid value in an input file; carries row and column."""

    def __init__(self, row, column, message):
        super().__init__(f"row {row}, column {column!r}: {message}")
        self.row = row
        self.column = column


@dataclass
class CoverageRecord:
    class_id: str
    criteria: dict
    suite_size: float
    nom: float
    gen_time: float

    def validate(self):
        if not self.criteria:
            raise EmptyCriteria(f"{self.class_id}: no coverage criteria")
        for name, level in self.criteria.items():
            if not 0.0 <= level <= 1.0:
                raise ValueError(
                    f"{self.class_id}: criterion {name!r} level {level} outside [0, 1]"
                )
        if self.nom < 1:
            raise ValueError(f"{self.class_id}: nom must be >= 1, got {self.nom}")
        if self.suite_size < 0:
            raise ValueError(f"{self.class_id}: negative suite_size")
        if self.gen_time < 0:
            raise ValueError(f"{self.class_id}: negative gen_time")


@dataclass
class TestabilityScore:
    class_id: str
    t_q: float
    t_e: float
    t_p: float
    testability: float


def test_effectiveness(record):
    """Mean coverage level over the criteria."""
    if not record.criteria:
        raise EmptyCriteria(f"{record.class_id}: no coverage criteria")
    keys = sorted(record.criteria)
    return sum(record.criteria[k] for k in keys) / len(keys)


def omega(record):
    """Average generation minutes per influential test, clamped at 0."""
    if record.suite_size == 0:
        raise ZeroSuite(f"{record.class_id}: empty minimized suite")
    return max(0.0, (record.gen_time - 1.0) / record.suite_size)


def test_effort(record):
    """(1 + omega) ** (ceil(|suite| / nom) - 1); 1 for an empty suite."""
    if record.suite_size == 0:
        return 1.0
    exponent = math.ceil(record.suite_size / record.nom) - 1
    return (1.0 + omega(record)) ** exponent


def testability(record):
    """Full score for one record."""
    record.validate()
    t_q = test_effectiveness(record)
    t_e = test_effort(record)
    t_p = 1.0 / t_e
    t = min(max(t_q / t_e, 0.0), 1.0)
    return TestabilityScore(record.class_id, t_q, t_e, t_p, t)


def component_testability(scores):
    """Mean testability over the classes of a component."""
    if not scores:
        raise EmptyComponent("component has no classes")
    return sum(s.testability for s in scores) / len(scores)


def average_runs(records):
    """Field-wise mean of one class's records across generator runs."""
    if not records:
        raise KeyMismatch("no records to average")
    first = records[0]
    keys = set(first.criteria)
    for r in records[1:]:
        if r.class_id != first.class_id:
            raise KeyMismatch(
                f"mixed class ids: {first.class_id!r} vs {r.class_id!r}"
            )
        if set(r.criteria) != keys:
            raise KeyMismatch(
                f"{first.class_id}: criteria keys differ across runs"
            )
    k = len(records)
    criteria = {
        name: sum(r.criteria[name] for r in records) / k for name in sorted(keys)
    }
    return CoverageRecord(
        class_id=first.class_id,
        criteria=criteria,
        suite_size=sum(r.suite_size for r in records) / k,
        nom=sum(r.nom for r in records) / k,
        gen_time=sum(r.gen_time for r in records) / k,
    )


def read_coverage(path, column_map=None):
    """Parse coverage.csv into per-run CoverageRecords.

    Any column outside the fixed set is treated as a coverage criterion.
    `column_map` renames input columns to the expected names, e.g.
    {"TARGET_CLASS": "class_id"}.
    """
    header, rows = read_csv(path)
    if column_map:
        header = [column_map.get(h, h) for h in header]
    required = ["class_id", "suite_size", "nom", "gen_time_minutes"]
    for col in required:
        if col not in header:
            raise DataError(1, col, "missing required column")
    idx = {h: i for i, h in enumerate(header)}
    criterion_cols = [h for h in header if h not in FIXED_COVERAGE_COLUMNS]
    if not criterion_cols:
        raise DataError(1, "<criteria>", "no coverage criterion columns found")
    records = []
    for rowno, row in enumerate(rows, start=2):
        if len(row) != len(header):
            raise DataError(rowno, "<row>", f"expected {len(header)} cells, got {len(row)}")

        def num(col):
            raw = row[idx[col]]
            try:
                return float(raw)
            except ValueError:
                raise DataError(rowno, col, f"not a number: {raw!r}") from None

        criteria = {}
        for col in criterion_cols:
            level = num(col)
            if not 0.0 <= level <= 1.0:
                raise DataError(rowno, col, f"coverage level {level} outside [0, 1]")
            criteria[col] = level
        rec = CoverageRecord(
            class_id=row[idx["class_id"]],
            criteria=criteria,
            suite_size=num("suite_size"),
            nom=num("nom"),
            gen_time=num("gen_time_minutes"),
        )
        try:
            rec.validate()
        except ValueError as exc:
            raise DataError(rowno, "<record>", str(exc)) from None
        records.append(rec)
    return records


def label_records(records):
    """Group per-run records by class, average, and score."""
    by_class = {}
    for rec in records:
        by_class.setdefault(rec.class_id, []).append(rec)
    scores = []
    for class_id in sorted(by_class):
        merged = average_runs(by_class[class_id])
        scores.append(testability(merged))
    return scores


def write_labels(path, scores):
    write_csv(
        path,
        ["class_id", "t_q", "t_e", "testability"],
        [[s.class_id, s.t_q, s.t_e, s.testability] for s in scores],
    )


def run_label(coverage_path, out_path, column_map=None):
    records = read_coverage(coverage_path, column_map=column_map)
    scores = label_records(records)
    write_labels(out_path, scores)
    return scores
