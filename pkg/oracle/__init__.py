"""Naive per-degree recomputation used to check the cell engine."""
