"""Metric extraction: method, lexical, class, package, and derived metrics."""
