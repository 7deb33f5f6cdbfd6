"""Finite-dimensional algebras and bialgebras given by sparse structure constants.

Vectors are dicts ``basis index -> nonzero scalar``.  ``mult[(i, j)]`` is the
vector e_i e_j (absent when zero); ``comult[i]`` maps pairs (j, k) to the
coefficient of e_j ⊗ e_k in Δ(e_i).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from ..exact import mpq
from ..ncalg.poly import add_scaled, add_term

Vec = Dict[int, object]


@dataclass
class FDCheck:
    name: str
    ok: bool
    witness: str | None = None
    count: int = 0


class AxiomError(ValueError):
    pass


def vec_add(u: Vec, v: Vec, c=1) -> Vec:
    out = dict(u)
    add_scaled(out, v, c)
    return out


def vec_scale(u: Vec, c) -> Vec:
    return {k: a * c for k, a in u.items()} if c else {}


def vec_str(labels, u: Vec) -> str:
    if not u:
        return "0"
    return " + ".join(f"({c})*{labels[k]}" for k, c in sorted(u.items()))


class FinDimAlgebra:
    def __init__(self, name: str, labels: Sequence[str], mult: Dict[Tuple[int, int], Vec],
                 unit: Vec, check: bool = True):
        self.name = name
        self.labels = list(labels)
        self.mult = {k: v for k, v in mult.items() if v}
        self.unit = dict(unit)
        if check:
            for c in (self.check_associativity(), self.check_unit()):
                if not c.ok:
                    raise AxiomError(f"{name}: {c.name} fails at {c.witness}")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def one(self) -> Vec:
        return dict(self.unit)

    def basis(self, i: int) -> Vec:
        return {i: mpq(1)}

    def mul(self, u: Vec, v: Vec) -> Vec:
        out: Vec = {}
        mult = self.mult
        for i, a in u.items():
            for j, b in v.items():
                t = mult.get((i, j))
                if t:
                    ab = a * b
                    for k, c in t.items():
                        add_term(out, k, ab * c)
        return out

    def product(self, vecs) -> Vec:
        out = self.one()
        for v in vecs:
            out = self.mul(out, v)
        return out

    def check_associativity(self) -> FDCheck:
        n = self.dim
        count = 0
        for i in range(n):
            for j in range(n):
                ij = self.mult.get((i, j), {})
                for k in range(n):
                    count += 1
                    left = self.mul(ij, {k: 1})
                    right = self.mul({i: 1}, self.mult.get((j, k), {}))
                    if left != right:
                        return FDCheck("associativity", False,
                                       f"({self.labels[i]}, {self.labels[j]}, {self.labels[k]})", count)
        return FDCheck("associativity", True, None, count)

    def check_unit(self) -> FDCheck:
        for i in range(self.dim):
            e = {i: 1}
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                return FDCheck("unit", False, self.labels[i], i + 1)
        return FDCheck("unit", True, None, self.dim)

    def opposite(self, name=None) -> "FinDimAlgebra":
        return FinDimAlgebra(name or f"{self.name}^op", self.labels,
                             {(j, i): v for (i, j), v in self.mult.items()}, self.unit, check=False)

    def __repr__(self):
        return f"FinDimAlgebra({self.name}, dim={self.dim})"


class TensorAlgebra:
    """A⊗B with basis pairs, multiplied factorwise (structure constants never materialized)."""

    def __init__(self, left: FinDimAlgebra, right: FinDimAlgebra):
        self.left, self.right = left, right
        self.name = f"{left.name}⊗{right.name}"

    def one(self):
        return {(i, j): a * b for i, a in self.left.unit.items() for j, b in self.right.unit.items()}

    def mul(self, u, v):
        out = {}
        L, R = self.left.mult, self.right.mult
        for (i, j), a in u.items():
            for (k, l), b in v.items():
                x = L.get((i, k))
                if not x:
                    continue
                y = R.get((j, l))
                if not y:
                    continue
                ab = a * b
                for p, c in x.items():
                    for q, d in y.items():
                        add_term(out, (p, q), ab * c * d)
        return out


class FinDimBialgebra:
    def __init__(self, algebra: FinDimAlgebra, comult: List[dict], counit: Sequence,
                 antipode: Optional[List[Vec]] = None, check: bool = True):
        self.algebra = algebra
        self.comult = comult
        self.counit = list(counit)
        self.antipode = antipode
        if check:
            for c in self.check_all():
                if not c.ok:
                    raise AxiomError(f"{algebra.name}: {c.name} fails at {c.witness}")

    @property
    def name(self):
        return self.algebra.name

    @property
    def dim(self):
        return self.algebra.dim

    @property
    def labels(self):
        return self.algebra.labels

    # linear extensions ------------------------------------------------------
    def delta(self, u: Vec) -> dict:
        out: dict = {}
        for i, a in u.items():
            for jk, c in self.comult[i].items():
                add_term(out, jk, a * c)
        return out

    def eps(self, u: Vec):
        return sum((a * self.counit[i] for i, a in u.items()), mpq(0))

    def S(self, u: Vec) -> Vec:
        out: Vec = {}
        for i, a in u.items():
            add_scaled(out, self.antipode[i], a)
        return out

    def iterated(self, i: int, k: int) -> dict:
        """Δ^(k) of a basis element as a map from (k+1)-tuples to coefficients."""
        terms = {(i,): mpq(1)}
        for _ in range(k):
            nxt: dict = {}
            for tup, c in terms.items():
                for (a, b), d in self.comult[tup[-1]].items():
                    add_term(nxt, tup[:-1] + (a, b), c * d)
            terms = nxt
        return terms

    # axioms ------------------------------------------------------------------
    def check_coassociativity(self) -> FDCheck:
        for i in range(self.dim):
            left: dict = {}
            right: dict = {}
            for (a, b), c in self.comult[i].items():
                for (x, y), d in self.comult[a].items():
                    add_term(left, (x, y, b), c * d)
                for (x, y), d in self.comult[b].items():
                    add_term(right, (a, x, y), c * d)
            if left != right:
                return FDCheck("coassociativity", False, self.labels[i], i + 1)
        return FDCheck("coassociativity", True, None, self.dim)

    def check_counit(self) -> FDCheck:
        for i in range(self.dim):
            left: Vec = {}
            right: Vec = {}
            for (a, b), c in self.comult[i].items():
                add_term(left, b, c * self.counit[a])
                add_term(right, a, c * self.counit[b])
            if left != {i: 1} or right != {i: 1}:
                return FDCheck("counit", False, self.labels[i], i + 1)
        return FDCheck("counit", True, None, self.dim)

    def check_multiplicative(self) -> FDCheck:
        A = self.algebra
        T = TensorAlgebra(A, A)
        n = self.dim
        if self.delta(A.unit) != T.one() or self.eps(A.unit) != 1:
            return FDCheck("Δ, ε multiplicative", False, "unit", 0)
        for i in range(n):
            di = self.comult[i]
            for j in range(n):
                prod = A.mult.get((i, j), {})
                if self.delta(prod) != T.mul(di, self.comult[j]):
                    return FDCheck("Δ multiplicative", False,
                                   f"({self.labels[i]}, {self.labels[j]})", i * n + j + 1)
                if self.eps(prod) != self.counit[i] * self.counit[j]:
                    return FDCheck("ε multiplicative", False,
                                   f"({self.labels[i]}, {self.labels[j]})", i * n + j + 1)
        return FDCheck("Δ, ε multiplicative", True, None, n * n)

    def check_antipode(self) -> FDCheck:
        if self.antipode is None:
            return FDCheck("antipode", True, "absent", 0)
        A = self.algebra
        for i in range(self.dim):
            target = vec_scale(A.unit, self.counit[i])
            left: Vec = {}
            right: Vec = {}
            for (a, b), c in self.comult[i].items():
                add_scaled(left, A.mul(self.antipode[a], {b: 1}), c)
                add_scaled(right, A.mul({a: 1}, self.antipode[b]), c)
            if left != target or right != target:
                return FDCheck("antipode", False, self.labels[i], i + 1)
        return FDCheck("antipode", True, None, self.dim)

    def check_all(self) -> List[FDCheck]:
        return [self.algebra.check_associativity(), self.algebra.check_unit(),
                self.check_coassociativity(), self.check_counit(),
                self.check_multiplicative(), self.check_antipode()]

    def __repr__(self):
        return f"FinDimBialgebra({self.name}, dim={self.dim})"
