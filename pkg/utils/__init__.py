"""Shared helpers: the error hierarchy and exact field arithmetic."""

__all__ = [
    "errors",
    "linalg",
]
