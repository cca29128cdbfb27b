"""Systematic sub-metric derivation.

Applies {Min, Max, Mean, Sum, SD} across a class's methods, once over all
methods and once excluding accessors/mutators (the NAMM filter). The
cyclomatic base expands over its four variants, yielding 40 names; every
other base yields 10. SD is the population standard deviation. Statistics
over an empty method set are 0 by convention.
"""

import math

OPS = ["Min", "Max", "Mean", "Sum", "SD"]
FILTERS = ["All", "NAMM"]

CC_VARIANT_NAMES = ["CC", "CCModified", "CCStrict", "CCEssential"]

# base name -> MethodRecord attribute(s)
BASE_ATTRS = {
    "CC": ["cc", "cc_modified", "cc_strict", "cc_essential"],
    "LOC": ["loc"],
    "NOST": ["nost"],
    "NESTING": ["nesting"],
    "PATH": ["paths"],
    "KNOTS": ["knots"],
    "NOPARAM": ["params"],
}

SUB_METRIC_BASES = list(BASE_ATTRS)


def _stats(values):
    if not values:
        return {"Min": 0.0, "Max": 0.0, "Mean": 0.0, "Sum": 0.0, "SD": 0.0}
    n = len(values)
    total = float(sum(values))
    mean = total / n
    var = sum((v - mean) ** 2 for v in values) / n
    return {
        "Min": float(min(values)),
        "Max": float(max(values)),
        "Mean": mean,
        "Sum": total,
        "SD": math.sqrt(var),
    }


def sub_metric_names(base):
    """Ordered sub-metric names for a base metric."""
    if base == "CC":
        variants = CC_VARIANT_NAMES
    else:
        variants = [base]
    names = []
    for variant in variants:
        for op in OPS:
            for filt in FILTERS:
                names.append(f"{variant}_{op}_{filt}")
    return names


def derive_sub_metrics(records, base):
    """Derive the statistical sub-metrics of `base` over method records."""
    if not records:
        raise ValueError("derive_sub_metrics requires at least one method record")
    if base not in BASE_ATTRS:
        raise KeyError(f"unknown base metric {base!r}")
    attrs = BASE_ATTRS[base]
    variants = CC_VARIANT_NAMES if base == "CC" else [base]
    namm = [r for r in records if not r.is_accessor_or_mutator]
    out = {}
    for variant, attr in zip(variants, attrs):
        all_stats = _stats([getattr(r, attr) for r in records])
        namm_stats = _stats([getattr(r, attr) for r in namm])
        for op in OPS:
            out[f"{variant}_{op}_All"] = all_stats[op]
            out[f"{variant}_{op}_NAMM"] = namm_stats[op]
    return out
