"""Metric schema manifest.

The manifest is the single source of truth for metric names, their order,
the block each belongs to (class / context / lexical), and whether the
metric was generated systematically. The extractor writes it next to
features.csv and every downstream stage validates against it.
"""

import hashlib
from dataclasses import dataclass

from testlab.metrics.classes import CLASS_METRIC_NAMES
from testlab.metrics.derive import SUB_METRIC_BASES, sub_metric_names
from testlab.metrics.lexical import LEXICAL_METRIC_NAMES
from testlab.metrics.packages import DIRECT_COUNTERS, SUM_BASES, package_metric_names

MANIFEST_VERSION = "testlab-manifest/1"


class SchemaMismatch(Exception):
    pass


@dataclass(frozen=True)
class ManifestEntry:
    name: str
    block: str  # class | context | lexical
    systematic: bool


class MetricManifest:
    def __init__(self, entries):
        self.entries = list(entries)
        names = [e.name for e in self.entries]
        if len(set(names)) != len(names):
            raise SchemaMismatch("duplicate metric names in manifest")
        self.names = names
        self._by_name = {e.name: e for e in self.entries}

    def __len__(self):
        return len(self.entries)

    def __contains__(self, name):
        return name in self._by_name

    def block_of(self, name):
        return self._by_name[name].block

    def is_systematic(self, name):
        return self._by_name[name].systematic

    def dump(self):
        lines = [f"# {MANIFEST_VERSION}"]
        for e in self.entries:
            lines.append(f"{e.name}\t{e.block}\t{int(e.systematic)}")
        return "\n".join(lines) + "\n"

    def sha256(self):
        return hashlib.sha256(self.dump().encode("utf-8")).hexdigest()

    def write(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.dump())

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        return cls.parse(text)

    @classmethod
    def parse(cls, text):
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("#"):
            raise SchemaMismatch("manifest missing version header")
        if MANIFEST_VERSION not in lines[0]:
            raise SchemaMismatch(f"unsupported manifest version: {lines[0]!r}")
        entries = []
        for ln in lines[1:]:
            parts = ln.split("\t")
            if len(parts) != 3:
                raise SchemaMismatch(f"malformed manifest line: {ln!r}")
            name, block, systematic = parts
            if block not in ("class", "context", "lexical"):
                raise SchemaMismatch(f"unknown block {block!r} for {name}")
            entries.append(ManifestEntry(name, block, systematic == "1"))
        return cls(entries)


def build_manifest():
    """The canonical manifest of this extractor version."""
    entries = []
    for name in CLASS_METRIC_NAMES:
        entries.append(ManifestEntry(name, "class", False))
    for base in SUB_METRIC_BASES:
        for name in sub_metric_names(base):
            entries.append(ManifestEntry(name, "class", True))
    sums = {f"PK{b}" for b in SUM_BASES}
    direct = set(DIRECT_COUNTERS)
    for name in package_metric_names():
        entries.append(ManifestEntry(name, "context", name not in sums | direct))
    for name in LEXICAL_METRIC_NAMES:
        entries.append(ManifestEntry(name, "lexical", False))
    return MetricManifest(entries)
