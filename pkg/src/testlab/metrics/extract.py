"""Project extraction: .java tree -> feature vectors -> features.csv.

The project index is built in a read-only first pass; per-class metric
computation is pure afterwards, so results never depend on scheduling
order. Files are visited in sorted path order for determinism.
"""

import os

from testlab.io_utils import write_csv
from testlab.java import parse_compilation_unit, tokenize
from testlab.metrics import classes as C
from testlab.metrics import packages as PK
from testlab.metrics.derive import SUB_METRIC_BASES, derive_sub_metrics, sub_metric_names
from testlab.metrics.lexical import compute_lexical_metrics
from testlab.metrics.manifest import SchemaMismatch, build_manifest


class ExtractionError(Exception):
    """Lex/parse failure, annotated with the offending file."""

    def __init__(self, file, cause):
        super().__init__(f"{file}: {cause}")
        self.file = file
        self.cause = cause


def iter_java_files(project_dir):
    found = []
    for root, dirs, files in os.walk(project_dir):
        dirs.sort()
        for name in sorted(files):
            if name.endswith(".java"):
                path = os.path.join(root, name)
                found.append(os.path.relpath(path, project_dir))
    return sorted(found)


def parse_project(project_dir):
    """Tokenize and parse every source file of the project."""
    units = []
    lexical_by_file = {}
    for rel in iter_java_files(project_dir):
        path = os.path.join(project_dir, rel)
        with open(path, encoding="utf-8", errors="replace") as fh:
            text = fh.read()
        try:
            stream = tokenize(text)
            unit = parse_compilation_unit(stream)
        except Exception as exc:  # LexError, ParseError
            raise ExtractionError(rel, exc) from exc
        units.append((rel, unit))
        lexical_by_file[rel] = compute_lexical_metrics(stream)
    return units, lexical_by_file


def class_metric_map(analysis, analyses):
    """Class block: single metrics plus the derived sub-metrics."""
    qname = analysis.info.qualified_name
    metrics = C.compute_class_metrics(qname, analyses)
    records = analysis.records
    if records:
        for base in SUB_METRIC_BASES:
            metrics.update(derive_sub_metrics(records, base))
    else:
        # a type without declared methods: statistics over the empty set
        for base in SUB_METRIC_BASES:
            for name in sub_metric_names(base):
                metrics[name] = 0.0
    return metrics


def assemble_feature_vector(class_id, class_metrics, package_context, lexical,
                            manifest):
    """Concatenate the blocks in manifest order."""
    values = []
    lex = lexical.as_dict()
    for entry in manifest.entries:
        if entry.block == "class":
            pool = class_metrics
        elif entry.block == "context":
            pool = package_context
        else:
            pool = lex
        if entry.name not in pool:
            raise SchemaMismatch(f"metric {entry.name!r} missing for {class_id}")
        value = float(pool[entry.name])
        if value != value or value in (float("inf"), float("-inf")):
            raise SchemaMismatch(f"non-finite {entry.name!r} for {class_id}")
        values.append(value)
    return values


def extract_project(project_dir, manifest=None):
    """Full extraction; returns (manifest, [(class_id, vector)])."""
    if manifest is None:
        manifest = build_manifest()
    units, lexical_by_file = parse_project(project_dir)
    index = C.build_project_index(units)
    analyses = C.analyze_project(index)

    metric_maps = {}
    for qname, analysis in analyses.items():
        metric_maps[qname] = class_metric_map(analysis, analyses)

    contexts = {}
    for package, qnames in index.by_package.items():
        entries = []
        for q in qnames:
            info = index.by_qname[q]
            entries.append(
                {
                    "metrics": metric_maps[q],
                    "kind": info.decl.kind,
                    "is_abstract": "abstract" in info.decl.modifiers,
                    "file": info.file,
                }
            )
        contexts[package] = PK.compute_package_context(entries)

    rows = []
    for qname in sorted(analyses):
        info = index.by_qname[qname]
        vector = assemble_feature_vector(
            qname,
            metric_maps[qname],
            contexts[info.package],
            lexical_by_file[info.file],
            manifest,
        )
        rows.append((qname, vector))
    return manifest, rows


def write_features(path, manifest, rows):
    header = ["class_id"] + manifest.names
    write_csv(path, header, [[cid] + vec for cid, vec in rows])


def run_extract(project_dir, out_path, manifest_path=None):
    manifest, rows = extract_project(project_dir)
    write_features(out_path, manifest, rows)
    if manifest_path:
        manifest.write(manifest_path)
    return manifest, rows
