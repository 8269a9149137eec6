from __future__ import annotations

import math
from fractions import Fraction

from .errors import InvalidInput, InvariantViolation


def encode_entry(x):
    x = Fraction(x)
    if x.denominator == 1:
        return x.numerator
    return f"{x.numerator}/{x.denominator}"


def decode_entry(value):
    if isinstance(value, bool):
        raise InvalidInput(f"not a matrix entry: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except ValueError as exc:
            raise InvalidInput(f"not a matrix entry: {value!r}") from exc
    raise InvalidInput(f"not a matrix entry: {value!r}")


class ExactMatrix:
    """Dense matrix over exact rationals."""

    __slots__ = ("_rows", "_ncols")

    def __init__(self, rows, ncols=None):
        self._rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if ncols is None:
            ncols = len(self._rows[0]) if self._rows else 0
        if any(len(row) != ncols for row in self._rows):
            raise InvalidInput("ragged matrix rows")
        self._ncols = ncols

    @classmethod
    def zeros(cls, nrows, ncols=None):
        ncols = nrows if ncols is None else ncols
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, size):
        return cls([[1 if i == j else 0 for j in range(size)] for i in range(size)], size)

    @classmethod
    def from_function(cls, nrows, ncols, entry):
        return cls([[entry(i, j) for j in range(ncols)] for i in range(nrows)], ncols)

    @classmethod
    def block_diagonal(cls, *blocks):
        size = sum(b.nrows for b in blocks)
        rows = [[Fraction(0)] * size for _ in range(size)]
        offset = 0
        for block in blocks:
            for i in range(block.nrows):
                for j in range(block.ncols):
                    rows[offset + i][offset + j] = block[i, j]
            offset += block.nrows
        return cls(rows, size)

    @classmethod
    def from_json(cls, data, ncols=None):
        return cls([[decode_entry(x) for x in row] for row in data], ncols)

    @property
    def nrows(self):
        return len(self._rows)

    @property
    def ncols(self):
        return self._ncols

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, index):
        i, j = index
        return self._rows[i][j]

    def row(self, i):
        return self._rows[i]

    def column(self, j):
        return tuple(row[j] for row in self._rows)

    def rows(self):
        return self._rows

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self):
        return f"ExactMatrix({self.to_json()})"

    def _check_shape(self, other):
        if self.shape != other.shape:
            raise InvalidInput(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._check_shape(other)
        return ExactMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.ncols
        )

    def __sub__(self, other):
        self._check_shape(other)
        return ExactMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.ncols
        )

    def __neg__(self):
        return ExactMatrix([[-a for a in r] for r in self._rows], self.ncols)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise InvalidInput(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.column(j) for j in range(other.ncols)]
        return ExactMatrix(
            [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self._rows],
            other.ncols,
        )

    def apply(self, vector):
        if len(vector) != self.ncols:
            raise InvalidInput(f"vector of length {len(vector)} against {self.shape}")
        return tuple(sum((a * b for a, b in zip(r, vector)), Fraction(0)) for r in self._rows)

    def transpose(self):
        return ExactMatrix([self.column(j) for j in range(self.ncols)], self.nrows)

    def first_rows(self, count):
        return ExactMatrix(self._rows[:count], self.ncols)

    def submatrix(self, row_indices, col_indices):
        return ExactMatrix(
            [[self._rows[i][j] for j in col_indices] for i in row_indices], len(col_indices)
        )

    def permuted(self, order):
        """Simultaneous row/column permutation: entry (a, b) is old (order[a], order[b])."""
        return self.submatrix(order, order)

    def is_square(self):
        return self.nrows == self.ncols

    def is_integral(self):
        return all(x.denominator == 1 for r in self._rows for x in r)

    def is_half_integral(self):
        return all(2 % x.denominator == 0 for r in self._rows for x in r)

    def is_symmetric(self):
        return self == self.transpose()

    def is_skew_symmetric(self):
        return self == -self.transpose()

    def to_json(self):
        return [[encode_entry(x) for x in r] for r in self._rows]

    def dump(self):
        return "\n".join("  [" + ", ".join(str(encode_entry(x)) for x in r) + "]" for r in self._rows)

    def _denominator_lcm(self):
        lcm = 1
        for r in self._rows:
            for x in r:
                lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        return lcm

    def determinant(self):
        if not self.is_square():
            raise InvalidInput(f"determinant of non-square {self.shape} matrix")
        scale = self._denominator_lcm()
        det = bareiss_determinant([[(x * scale).numerator for x in r] for r in self._rows])
        return Fraction(det, scale ** self.nrows)

    def inverse(self):
        """Exact inverse via fraction-free Gauss-Jordan; raises on singular input."""
        if not self.is_square():
            raise InvalidInput(f"inverse of non-square {self.shape} matrix")
        scale = self._denominator_lcm()
        det, right, pivot = fraction_free_inverse([[(x * scale).numerator for x in r] for r in self._rows])
        if det == 0:
            raise InvariantViolation("matrix is singular", self.dump())
        return ExactMatrix([[Fraction(x * scale, pivot) for x in r] for r in right], self.ncols)


def bareiss_determinant(rows):
    size = len(rows)
    if size == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(size - 1):
        if m[k][k] == 0:
            swap = next((p for p in range(k + 1, size) if m[p][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[size - 1][size - 1]


def fraction_free_inverse(rows):
    """Integer-preserving Gauss-Jordan on [B | I].

    Returns (det, right, pivot) where the left block ends as pivot*I,
    so that B^-1 = right / pivot and det = sign * pivot.
    """
    size = len(rows)
    if size == 0:
        return 1, [], 1
    m = [list(r) + [1 if i == j else 0 for j in range(size)] for i, r in enumerate(rows)]
    sign = 1
    prev = 1
    for k in range(size):
        if m[k][k] == 0:
            swap = next((p for p in range(k + 1, size) if m[p][k] != 0), None)
            if swap is None:
                return 0, [], 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot_row = m[k]
        pivot = pivot_row[k]
        for i in range(size):
            if i == k:
                continue
            row = m[i]
            factor = row[k]
            for j in range(2 * size):
                quotient, remainder = divmod(pivot * row[j] - factor * pivot_row[j], prev)
                if remainder:
                    raise InvariantViolation("inexact fraction-free elimination step")
                row[j] = quotient
        prev = pivot
    right = [r[size:] for r in m]
    return sign * prev, right, prev
