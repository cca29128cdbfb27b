"""testlab: static source-code testability analysis toolkit.

Extracts lexical/structural metrics from Java sources, labels classes
with a coverage-based testability score, trains an ensemble regressor
on the labeled vectors, and reports feature importance and companion
quality attributes.
"""

__version__ = "0.1.0"
