"""Invariants built on the cohomology engine: anchors, ends, finiteness dimensions, checks."""
