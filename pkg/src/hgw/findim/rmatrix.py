"""AST matrices, the cyclotomic R-matrix and the presentations O_{q,p}(S_mn)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

from ..exact import Field, root_of_unity
from ..ncalg.poly import Alphabet, NcPoly, add_term
from ..ncalg.presentation import Presentation, x_name


def blockstar(i: int, m: int) -> int:
    """The block index i* = ceil(i/m) of a point 1 <= i <= mn."""
    if i < 1:
        raise ValueError(f"index must be >= 1, got {i}")
    return -(-i // m)


@dataclass(frozen=True)
class ASTMatrix:
    """p_ij = xi_m^{e_ij} with e_ii = 0 and e_ij + e_ji = 0 (mod m)."""

    n: int
    m: int
    exponents: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        e = self.exponents
        if len(e) != self.n or any(len(r) != self.n for r in e):
            raise ValueError("exponent grid must be n x n")
        for i in range(self.n):
            if e[i][i] % self.m:
                raise ValueError("AST matrix needs p_ii = 1")
            for j in range(self.n):
                if (e[i][j] + e[j][i]) % self.m:
                    raise ValueError("AST matrix needs p_ij p_ji = 1")

    @classmethod
    def from_upper(cls, m: int, n: int, upper=None) -> "ASTMatrix":
        """Build from strict-upper-triangle exponents ``{(i, j): e}`` (1-based, i < j)."""
        upper = dict(upper or {})
        grid = [[0] * n for _ in range(n)]
        for (i, j), v in upper.items():
            if not 1 <= i < j <= n:
                raise ValueError(f"entry ({i},{j}) is not strictly upper triangular")
            grid[i - 1][j - 1] = v % m
            grid[j - 1][i - 1] = (-v) % m
        return cls(n, m, tuple(tuple(r) for r in grid))

    @classmethod
    def trivial(cls, m: int, n: int) -> "ASTMatrix":
        return cls.from_upper(m, n, {})

    def exp(self, i: int, j: int) -> int:
        """Exponent of p_ij, 1-based block indices."""
        return self.exponents[i - 1][j - 1] % self.m

    def entry(self, i: int, j: int):
        return root_of_unity(self.m, self.exp(i, j))

    def upper(self) -> dict:
        return {(i + 1, j + 1): self.exponents[i][j] % self.m
                for i in range(self.n) for j in range(i + 1, self.n)
                if self.exponents[i][j] % self.m}

    def label(self) -> str:
        up = self.upper()
        if not up:
            return "1"
        return ",".join(f"e{i}{j}={v}" for (i, j), v in sorted(up.items()))


class RMatrix:
    """R[i][j][l][k] = R_{ij}^{lk}(p), indices 1..mn (stored 0-based)."""

    def __init__(self, p: ASTMatrix, data):
        self.p = p
        self.m = p.m
        self.n = p.n
        self.size = p.m * p.n
        self.data = data

    def __call__(self, i, j, l, k):
        return self.data[i - 1][j - 1][l - 1][k - 1]

    def check_symmetry(self):
        """First index tuple with R_{ij}^{lk} != R_{kl}^{ji}, or None."""
        N = self.size
        for i, j, l, k in itertools.product(range(1, N + 1), repeat=4):
            if self(i, j, l, k) != self(k, l, j, i):
                return (i, j, l, k)
        return None


@lru_cache(maxsize=None)
def rmatrix(p: ASTMatrix) -> RMatrix:
    """R_{ij}^{lk}(p) = d(i*,k*) d(j*,l*) sum_{r,s} xi^{r(i-k)+s(j-l)} p_{j*i*}^{rs}."""
    m, N = p.m, p.m * p.n
    data = [[[[0] * N for _ in range(N)] for _ in range(N)] for _ in range(N)]
    for i, j, l, k in itertools.product(range(1, N + 1), repeat=4):
        if blockstar(i, m) != blockstar(k, m) or blockstar(j, m) != blockstar(l, m):
            continue
        e = p.exp(blockstar(j, m), blockstar(i, m))
        total = 0
        for r in range(m):
            for s in range(m):
                total = total + root_of_unity(m, r * (i - k) + s * (j - l) + e * r * s)
        data[i - 1][j - 1][l - 1][k - 1] = total
    return RMatrix(p, data)


def _normalize(r: NcPoly):
    # canonical scalar multiple used for duplicate pruning
    lw = r.leading_word()
    c = r.terms[lw]
    return frozenset((w, a / c) for w, a in r.terms.items())


def _relations1_terms(N, g):
    raw = []
    for i, j, k in itertools.product(range(1, N + 1), repeat=3):
        t = {(g(i, j), g(i, k)): 1}
        if j == k:
            add_term(t, (g(i, j),), -1)
        raw.append(t)
        t = {(g(j, i), g(k, i)): 1}
        if j == k:
            add_term(t, (g(j, i),), -1)
        raw.append(t)
    for i in range(1, N + 1):
        t = {(g(i, l),): 1 for l in range(1, N + 1)}
        t[()] = -1
        raw.append(t)
        t = {(g(l, i),): 1 for l in range(1, N + 1)}
        t[()] = -1
        raw.append(t)
    return raw


def _generator_alphabet(N):
    return Alphabet(x_name(i, j) for i in range(1, N + 1) for j in range(1, N + 1))


@lru_cache(maxsize=None)
def relations1_presentation(N: int) -> Presentation:
    """Only the orthogonality relations: row/column orthogonal idempotents summing to 1."""
    A = _generator_alphabet(N)
    rels = _dedup(A, _relations1_terms(N, lambda i, j: A.index[x_name(i, j)]))
    return Presentation(f"orthogonality[{N}]", A, rels)


def _dedup(A, raw):
    seen = set()
    rels = []
    for t in raw:
        r = NcPoly(A, t)
        if r.is_zero():
            continue
        key = _normalize(r)
        if key in seen:
            continue
        seen.add(key)
        rels.append(r)
    return rels


@lru_cache(maxsize=None)
def build_Oqp(q: ASTMatrix, p: ASTMatrix) -> Presentation:
    """Presentation of O_{q,p}(S_mn): orthogonality relations and the FRT relations."""
    if (q.m, q.n) != (p.m, p.n):
        raise ValueError("q and p must have the same m and n")
    m, n = p.m, p.n
    N = m * n
    field = Field(m)
    A = _generator_alphabet(N)

    def g(i, j):
        return A.index[x_name(i, j)]

    raw = _relations1_terms(N, g)
    count1 = len(raw)
    Rp, Rq = rmatrix(p), rmatrix(q)
    for i, j, a, b in itertools.product(range(1, N + 1), repeat=4):
        t: dict = {}
        for k in range(1, N + 1):
            for l in range(1, N + 1):
                c = Rp(i, j, l, k)
                if c:
                    add_term(t, (g(a, l), g(b, k)), c)
                c = Rq(l, k, a, b)
                if c:
                    add_term(t, (g(l, i), g(k, j)), -c)
        raw.append(t)

    rels = _dedup(A, raw)
    name = f"O_{{{q.label()};{p.label()}}}(S_{N})"
    return Presentation(name, A, rels, field,
                        meta={"family": "Oqp", "q": q, "p": p, "raw_relation_count": len(raw),
                              "relations1_count": count1})
