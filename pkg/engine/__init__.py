"""Exact degreewise cohomology through staircase cell decompositions."""
