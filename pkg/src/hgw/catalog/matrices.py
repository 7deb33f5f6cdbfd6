"""Exact matrices over the session field, and the small searches built on them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from gmpy2 import is_square, isqrt

from ..exact import QQ, CycloScalar, Field, format_scalar, mpq, root_of_unity, scalar_inv

DEFAULT_SEARCH_BOUND = 3


class SingularMatrixError(ValueError):
    pass


def _field_of(entries) -> Field:
    orders = {e.order for e in entries if isinstance(e, CycloScalar) and not e.is_rational()}
    if len(orders) > 1:
        raise ValueError(f"entries from several cyclotomic fields: {sorted(orders)}")
    return Field(orders.pop()) if orders else QQ


class FieldMatrix:
    """Rows of exact scalars.  Square matrices carry their exact inverse (or None if singular)."""

    def __init__(self, rows: Sequence[Sequence], field: Field | None = None):
        rows = [list(r) for r in rows]
        if not rows or len({len(r) for r in rows}) != 1:
            raise ValueError("a matrix needs equal-length nonempty rows")
        flat = [e for r in rows for e in r]
        self.field = field or _field_of(flat)
        self.rows: Tuple[Tuple, ...] = tuple(tuple(self.field.coerce(e) for e in r) for r in rows)
        self.shape = (len(rows), len(rows[0]))
        self._inverse: Optional[FieldMatrix] = None
        self._inverse_done = False

    # construction ---------------------------------------------------------------
    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "FieldMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], field)

    @classmethod
    def diag(cls, entries, field: Field | None = None) -> "FieldMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], field)

    # basic algebra --------------------------------------------------------------
    @property
    def is_square(self) -> bool:
        return self.shape[0] == self.shape[1]

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def tolist(self) -> List[List]:
        return [list(r) for r in self.rows]

    @property
    def T(self) -> "FieldMatrix":
        return FieldMatrix(list(zip(*self.rows)), self.field)

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        (m, k), (k2, n) = self.shape, other.shape
        if k != k2:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        return FieldMatrix([[sum((self.rows[i][l] * other.rows[l][j] for l in range(k)), mpq(0))
                             for j in range(n)] for i in range(m)], self.field)

    def scale(self, c) -> "FieldMatrix":
        return FieldMatrix([[c * e for e in r] for r in self.rows], self.field)

    def __pow__(self, k: int) -> "FieldMatrix":
        if k < 0:
            return self.inv() ** (-k)
        out = FieldMatrix.identity(self.shape[0], self.field)
        for _ in range(k):
            out = out @ self
        return out

    def trace(self):
        if not self.is_square:
            raise ValueError("trace of a non-square matrix")
        return sum((self.rows[i][i] for i in range(self.shape[0])), mpq(0))

    def __eq__(self, other):
        return isinstance(other, FieldMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    # inverse --------------------------------------------------------------------
    @property
    def inverse(self) -> Optional["FieldMatrix"]:
        if not self._inverse_done:
            self._inverse = _gauss_jordan_inverse(self) if self.is_square else None
            self._inverse_done = True
        return self._inverse

    @property
    def invertible(self) -> bool:
        return self.inverse is not None

    def inv(self) -> "FieldMatrix":
        if self.inverse is None:
            raise SingularMatrixError(f"matrix {self.label()} is not invertible")
        return self.inverse

    # display --------------------------------------------------------------------
    def label(self) -> str:
        return "[" + "; ".join(", ".join(format_scalar(e) for e in r) for r in self.rows) + "]"

    def __repr__(self):
        return f"FieldMatrix({self.label()})"


def _gauss_jordan_inverse(M: FieldMatrix) -> Optional[FieldMatrix]:
    n = M.shape[0]
    a = [list(r) + [mpq(1) if i == j else mpq(0) for j in range(n)] for i, r in enumerate(M.rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        s = scalar_inv(a[col][col])
        a[col] = [x * s for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                c = a[r][col]
                a[r] = [x - c * y for x, y in zip(a[r], a[col])]
    inv = FieldMatrix([r[n:] for r in a], M.field)
    assert inv @ M == FieldMatrix.identity(n, M.field)
    return inv


def as_matrix(M) -> FieldMatrix:
    return M if isinstance(M, FieldMatrix) else FieldMatrix(M)


def require_invertible(*mats: FieldMatrix) -> None:
    for M in mats:
        if not M.is_square or not M.invertible:
            raise SingularMatrixError(f"matrix {M.label()} is not invertible")


# ---------------------------------------------------------------------------
# invariants and named matrices

def trace_invariant(E: FieldMatrix):
    """tr(E · ᵗ(E⁻¹)), the matching condition for bilinear-form algebras."""
    require_invertible(E)
    return (E @ E.inv().T).trace()


def F_q(q) -> FieldMatrix:
    """diag(q, q⁻¹)."""
    return FieldMatrix.diag([q, scalar_inv(mpq(q) if not isinstance(q, CycloScalar) else q)])


def F_q_symmetrizer(q) -> FieldMatrix:
    """G = [[0, 1], [q, 0]] with F_q = ᵗG G⁻¹."""
    return FieldMatrix([[0, 1], [q, 0]])


def triangular_example(q, alpha) -> Tuple[FieldMatrix, FieldMatrix]:
    """F = [[q, α], [0, q⁻¹]] and its symmetrizer K = [[αq/(1−q), 1], [q, 0]] (q ≠ 1)."""
    q, alpha = mpq(q), mpq(alpha)
    if q == 1:
        raise ValueError("the symmetrizer formula needs q != 1")
    return (FieldMatrix([[q, alpha], [0, 1 / q]]),
            FieldMatrix([[alpha * q / (1 - q), 1], [q, 0]]))


def root_diagonal(order: int) -> FieldMatrix:
    """Diag(ξ, 1, ξ⁻¹) over Q(ξ_order)."""
    f = Field(order)
    return FieldMatrix.diag([root_of_unity(order, 1), 1, root_of_unity(order, -1)], f)


# ---------------------------------------------------------------------------
# symmetrizers: F = ᵗK K⁻¹, equivalently F K = ᵗK

def verify_symmetrizer(F: FieldMatrix, K: FieldMatrix) -> bool:
    if not (F.is_square and K.is_square and F.shape == K.shape and K.invertible):
        return False
    return K.T @ K.inv() == F


def _nullspace(rows: List[List], ncols: int) -> List[List]:
    """Basis of the right nullspace of a matrix given as rows (exact RREF)."""
    a = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        s = scalar_inv(a[r][c])
        a[r] = [x * s for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [mpq(0)] * ncols
        v[fc] = mpq(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fc]
        basis.append(v)
    return basis


def find_symmetrizer(F: FieldMatrix, bound: int = DEFAULT_SEARCH_BOUND) -> Optional[FieldMatrix]:
    """An invertible K with F = ᵗK K⁻¹, or None.

    The condition F K = ᵗK is linear in K; the solution space is computed
    exactly and small integer combinations of its basis (coefficients in
    [1, bound]) are tried for invertibility.
    """
    n = F.shape[0]
    idx = {(i, j): i * n + j for i in range(n) for j in range(n)}
    rows = []
    for i in range(n):
        for j in range(n):
            row = [mpq(0)] * (n * n)
            for k in range(n):
                row[idx[(k, j)]] = row[idx[(k, j)]] + F[i, k]
            row[idx[(j, i)]] = row[idx[(j, i)]] - 1
            rows.append(row)
    basis = _nullspace(rows, n * n)
    if not basis:
        return None
    for coeffs in itertools.product(range(1, bound + 1), repeat=len(basis)):
        v = [sum((c * b[t] for c, b in zip(coeffs, basis)), mpq(0)) for t in range(n * n)]
        K = FieldMatrix([[v[idx[(i, j)]] for j in range(n)] for i in range(n)], F.field)
        if K.invertible and verify_symmetrizer(F, K):
            return K
    return None


# ---------------------------------------------------------------------------
# the monic quadratics q² + b q + 1 = 0

@dataclass
class QuadraticData:
    coefficients: tuple      # (1, b, 1)
    roots: List              # exact roots found in the session field (possibly empty)
    searched: str            # description of the candidate set

    def __str__(self):
        c = ", ".join(format_scalar(x) for x in self.coefficients)
        r = ", ".join(format_scalar(x) for x in self.roots) or "none found"
        return f"q^2 + b q + 1 with coefficients ({c}); roots: {r} [{self.searched}]"


def _rational_sqrt(x):
    x = mpq(x)
    if x < 0:
        return None
    num, den = x.numerator, x.denominator
    if is_square(num) and is_square(den):
        return mpq(isqrt(num), isqrt(den))
    return None


def _quadratic(b, field: Field) -> QuadraticData:
    coeffs = (mpq(1), b, mpq(1))
    roots = []
    if not isinstance(b, CycloScalar) or b.is_rational():
        bb = b.coeffs[0] if isinstance(b, CycloScalar) else mpq(b)
        s = _rational_sqrt(bb * bb - 4)
        if s is not None:
            roots = sorted({(-bb + s) / 2, (-bb - s) / 2})
        return QuadraticData(coeffs, roots, "rational root test")
    for k in range(field.order):
        for sign in (1, -1):
            r = root_of_unity(field.order, k) * sign
            if r * r + b * r + 1 == 0 and r not in roots:
                roots.append(r)
    return QuadraticData(coeffs, roots, f"candidates ±xi^k in Q(xi_{field.order})")


def trace_quadratic(F: FieldMatrix) -> QuadraticData:
    """Data of q² − tr(F) q + 1 = 0 (cosovereign family)."""
    return _quadratic(-F.trace(), F.field)


def bilinear_quadratic(E: FieldMatrix) -> QuadraticData:
    """Data of q² + tr(E ᵗE⁻¹) q + 1 = 0 (bilinear-form family)."""
    return _quadratic(trace_invariant(E), E.field)


# ---------------------------------------------------------------------------
# matched trace-invariant search

def integer_matrices(n: int, bound: int):
    """Integer n×n matrices with entries in [−bound, bound], smallest sup-norm first."""
    for b in range(0, bound + 1):
        for entries in itertools.product(range(-b, b + 1), repeat=n * n):
            if max(abs(e) for e in entries) == b:
                yield FieldMatrix([entries[i * n:(i + 1) * n] for i in range(n)])


def find_matching_matrix(target, n: int, bound: int = DEFAULT_SEARCH_BOUND) -> Optional[FieldMatrix]:
    """First invertible integer n×n matrix F with trace_invariant(F) = target."""
    for F in integer_matrices(n, bound):
        if F.invertible and trace_invariant(F) == target:
            return F
    return None


def find_matching_pair(m: int, n: int, E: FieldMatrix | None = None,
                       bound: int = DEFAULT_SEARCH_BOUND) -> Optional[Tuple[FieldMatrix, FieldMatrix]]:
    """(E, F) ∈ GL_m × GL_n with equal trace invariants; E defaults to the identity."""
    E = E or FieldMatrix.identity(m)
    F = find_matching_matrix(trace_invariant(E), n, bound)
    return (E, F) if F is not None else None
