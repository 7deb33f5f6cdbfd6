"""Matrices whose entries are tensor elements over a common factor list.

Scalar (field) matrices are plain nested lists of scalars; they commute
past entries, so ``mat_mul`` accepts either kind on either side.
"""

from __future__ import annotations

from typing import List, Sequence

from .poly import TensorElem, tensor_mul
from .presentation import x_name


class ShapeError(ValueError):
    pass


class NcMatrix:
    def __init__(self, factors: Sequence, rows: List[List[TensorElem]]):
        self.factors = tuple(factors)
        self.rows = [list(r) for r in rows]
        if self.rows and len({len(r) for r in self.rows}) != 1:
            raise ShapeError("ragged matrix")
        for r in self.rows:
            for e in r:
                if e.factors != self.factors:
                    raise ValueError("matrix entries must share the factor list")

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @classmethod
    def generators(cls, pres, m: int, n: int, name=None) -> "NcMatrix":
        """m×n matrix of generators named by ``name(i, j)`` (1-based)."""
        name = name or x_name
        return cls((pres,), [[pres.element(pres.gen(name(i, j))) for j in range(1, n + 1)]
                             for i in range(1, m + 1)])

    @classmethod
    def identity(cls, factors, n: int) -> "NcMatrix":
        return cls(factors, [[TensorElem.scalar(factors, 1 if i == j else 0) for j in range(n)]
                             for i in range(n)])

    def __sub__(self, other: "NcMatrix") -> "NcMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"{self.shape} vs {other.shape}")
        return NcMatrix(self.factors, [[a - b for a, b in zip(r, s)]
                                       for r, s in zip(self.rows, other.rows)])

    def entries(self):
        for r in self.rows:
            yield from r

    def __repr__(self):
        return "NcMatrix(" + "; ".join(", ".join(e.format() for e in r) for r in self.rows) + ")"


def _shape(A):
    if isinstance(A, NcMatrix):
        return A.shape
    return (len(A), len(A[0]) if A else 0)


def mat_transpose(A):
    if isinstance(A, NcMatrix):
        m, n = A.shape
        return NcMatrix(A.factors, [[A.rows[i][j] for i in range(m)] for j in range(n)])
    return [list(c) for c in zip(*A)]


def mat_scalar(c, A: NcMatrix) -> NcMatrix:
    return NcMatrix(A.factors, [[e * c for e in r] for r in A.rows])


def mat_mul(A, B):
    """Matrix product; either side may be a field matrix (list of lists)."""
    (m, k), (k2, n) = _shape(A), _shape(B)
    if k != k2:
        raise ShapeError(f"cannot multiply {m}x{k} by {k2}x{n}")
    a_nc, b_nc = isinstance(A, NcMatrix), isinstance(B, NcMatrix)
    if not a_nc and not b_nc:
        return [[sum((A[i][l] * B[l][j] for l in range(k)), 0) for j in range(n)]
                for i in range(m)]
    factors = A.factors if a_nc else B.factors
    if a_nc and b_nc and A.factors != B.factors:
        raise ValueError("factor-list mismatch")
    rows = []
    for i in range(m):
        row = []
        for j in range(n):
            acc = TensorElem.scalar(factors, 0)
            for l in range(k):
                a, b = A[i][l] if not a_nc else A.rows[i][l], B[l][j] if not b_nc else B.rows[l][j]
                if a_nc and b_nc:
                    acc = acc + tensor_mul(a, b)
                elif a_nc:
                    if b:
                        acc = acc + a * b
                else:
                    if a:
                        acc = acc + b * a
            row.append(acc)
        rows.append(row)
    return NcMatrix(factors, rows)


def entrywise_relations(M: NcMatrix):
    """The entries of M (as single-factor polynomials), row-major."""
    return [e.to_poly() for e in M.entries()]
