"""
Exact linear algebra over Q and GF(p).

Matrices are numpy arrays: object dtype holding Python ints (or Fractions) over
Q, int64 over GF(p). Rank over Q uses fraction-free (Bareiss) elimination so no
rationals are created; kernels go through a reduced row echelon form.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

import numpy as np
from sympy import isprime

from utils.errors import UsageError

_GF_PATTERN = re.compile(r"^GF\((\d+)\)$")


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: characteristic 0 means the rationals."""

    characteristic: int = 0

    @property
    def tag(self) -> str:
        if self.characteristic == 0:
            return "QQ"
        return f"GF({self.characteristic})"

    @property
    def dtype(self):
        return object if self.characteristic == 0 else np.int64

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return np.zeros((rows, cols), dtype=self.dtype)

    def coerce(self, matrix) -> np.ndarray:
        if self.characteristic == 0:
            return np.array(matrix, dtype=object)
        return np.asarray(matrix, dtype=np.int64) % self.characteristic

    def rank(self, matrix) -> int:
        """Rank of a matrix over this field."""
        A = self.coerce(matrix)
        if A.size == 0:
            return 0
        if self.characteristic == 0:
            return _bareiss_rank(A)
        _, pivots = _rref_mod(A, self.characteristic)
        return len(pivots)

    def nullspace(self, matrix) -> np.ndarray:
        """Basis of the right kernel, returned as the columns of a matrix."""
        A = self.coerce(matrix)
        rows, cols = A.shape
        if cols == 0:
            return self.zeros(0, 0)
        if rows == 0:
            return _identity(cols, self.dtype)
        if self.characteristic == 0:
            R, pivots = _rref_rational(A)
        else:
            R, pivots = _rref_mod(A, self.characteristic)
        free = [c for c in range(cols) if c not in pivots]
        basis = self.zeros(cols, len(free))
        for k, f in enumerate(free):
            basis[f, k] = 1
            for i, p in enumerate(pivots):
                basis[p, k] = -R[i, f]
        if self.characteristic:
            basis %= self.characteristic
            return basis
        return _clear_denominators(basis)

    def in_column_span(self, A, B) -> bool:
        """True iff every column of B is a combination of the columns of A."""
        B = self.coerce(B)
        if B.size == 0:
            return True
        A = self.coerce(A)
        if A.size == 0:
            return self.rank(B) == 0
        return self.rank(np.hstack([A, B])) == self.rank(A)


def parse_field(tag: str) -> FieldSpec:
    """Parse a field tag such as ``QQ`` or ``GF(101)``."""
    cleaned = tag.strip().replace(" ", "")
    if cleaned.upper() in ("QQ", "Q"):
        return FieldSpec(0)
    match = _GF_PATTERN.match(cleaned.upper())
    if not match:
        raise UsageError(f"unknown field tag {tag!r}; expected QQ or GF(p)")
    modulus = int(match.group(1))
    if not isprime(modulus):
        raise UsageError(f"GF({modulus}) is not a field: {modulus} is not prime")
    if modulus >= 2**31:
        raise UsageError(f"modulus {modulus} too large for int64 elimination")
    return FieldSpec(modulus)


def _identity(n: int, dtype) -> np.ndarray:
    eye = np.zeros((n, n), dtype=dtype)
    for i in range(n):
        eye[i, i] = 1
    return eye


def _bareiss_rank(A: np.ndarray) -> int:
    A = A.copy()
    m, n = A.shape
    prev = 1
    row = 0
    for col in range(n):
        pivot = next((r for r in range(row, m) if A[r, col] != 0), None)
        if pivot is None:
            continue
        if pivot != row:
            A[[row, pivot]] = A[[pivot, row]]
        for r in range(row + 1, m):
            A[r, col + 1 :] = (
                A[r, col + 1 :] * A[row, col] - A[r, col] * A[row, col + 1 :]
            ) // prev
            A[r, col] = 0
        prev = A[row, col]
        row += 1
        if row == m:
            break
    return row


def _rref_rational(A: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    R = np.array([[Fraction(v) for v in row] for row in A], dtype=object)
    m, n = R.shape
    pivots: List[int] = []
    row = 0
    for col in range(n):
        pivot = next((r for r in range(row, m) if R[r, col] != 0), None)
        if pivot is None:
            continue
        if pivot != row:
            R[[row, pivot]] = R[[pivot, row]]
        R[row] = R[row] / R[row, col]
        for r in range(m):
            if r != row and R[r, col] != 0:
                R[r] = R[r] - R[r, col] * R[row]
        pivots.append(col)
        row += 1
        if row == m:
            break
    return R, pivots


def _rref_mod(A: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    R = (np.asarray(A, dtype=np.int64) % p).copy()
    m, n = R.shape
    pivots: List[int] = []
    row = 0
    for col in range(n):
        pivot = next((r for r in range(row, m) if R[r, col] != 0), None)
        if pivot is None:
            continue
        if pivot != row:
            R[[row, pivot]] = R[[pivot, row]]
        inv = pow(int(R[row, col]), -1, p)
        R[row] = (R[row] * inv) % p
        for r in range(m):
            if r != row and R[r, col] != 0:
                R[r] = (R[r] - R[r, col] * R[row]) % p
        pivots.append(col)
        row += 1
        if row == m:
            break
    return R, pivots


def _clear_denominators(basis: np.ndarray) -> np.ndarray:
    """Scale each rational kernel vector to an integer vector."""
    out = np.zeros(basis.shape, dtype=object)
    for k in range(basis.shape[1]):
        column = [Fraction(v) for v in basis[:, k]]
        scale = math.lcm(*(v.denominator for v in column)) if column else 1
        for i, v in enumerate(column):
            out[i, k] = int(v * scale)
    return out
