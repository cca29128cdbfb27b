"""Package-level context metrics.

The statistical operators run across the classes of the enclosing
package: line counts, statement counts, total method complexity per
variant, and peak nesting get the full five-operator spread; plain
counters are summed. Four direct counters (classes, files, interfaces,
abstract classes) complete the block. The same context map is attached
to every class of the package.
"""

from testlab.metrics.derive import OPS, _stats

SPREAD_BASES = [
    ("PKLOC", "CSLOC"),
    ("PKNOST", "CSNOST"),
    ("PKCC", "CC_Sum_All"),
    ("PKCCModified", "CCModified_Sum_All"),
    ("PKCCStrict", "CCStrict_Sum_All"),
    ("PKCCEssential", "CCEssential_Sum_All"),
    ("PKNESTING", "NESTING_Max_All"),
]

SUM_BASES = [
    "NOSM", "NOSA", "NOIM", "NOIA", "NOM", "NOMNAMM", "NOCON",
    "NODM", "NOPM", "NOPRM", "NOPLM", "NOAMM",
]

DIRECT_COUNTERS = ["PKNOCS", "PKNOFL", "PKNOI", "PKNOAC"]


def package_metric_names():
    names = []
    for pk_name, _src in SPREAD_BASES:
        for op in OPS:
            names.append(f"{pk_name}_{op}")
    names.extend(f"PK{base}" for base in SUM_BASES)
    names.extend(DIRECT_COUNTERS)
    return names


def compute_package_context(class_entries):
    """Context metric map for one package.

    `class_entries` holds one dict per class of the package with keys
    `metrics` (class-level metric map), `kind`, `is_abstract`, `file`.
    """
    if not class_entries:
        raise ValueError("package context requires at least one class")
    out = {}
    for pk_name, src in SPREAD_BASES:
        stats = _stats([e["metrics"][src] for e in class_entries])
        for op in OPS:
            out[f"{pk_name}_{op}"] = stats[op]
    for base in SUM_BASES:
        out[f"PK{base}"] = float(sum(e["metrics"][f"CS{base}"] for e in class_entries))
    out["PKNOCS"] = float(sum(1 for e in class_entries if e["kind"] in ("class", "enum")))
    out["PKNOFL"] = float(len({e["file"] for e in class_entries}))
    out["PKNOI"] = float(sum(1 for e in class_entries if e["kind"] == "interface"))
    out["PKNOAC"] = float(
        sum(1 for e in class_entries if e["kind"] == "class" and e["is_abstract"])
    )
    return out
