"""Coarse lattice layer: degrees, projections, box unions, order and Q-domains."""
