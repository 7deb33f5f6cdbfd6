"""Symmetric groups, their function algebras, the abelian subgroup H and the map π."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from ..exact import mpq, root_of_unity
from ..ncalg.poly import add_scaled, add_term
from .algebra import FDCheck, FinDimAlgebra, FinDimBialgebra, Vec
from .rmatrix import blockstar

ROW = "row"        # x_ij(g) = [g(j) = i]
COLUMN = "column"  # x_ij(g) = [g(i) = j]
DEFAULT_CONVENTION = ROW

MAX_SYMMETRIC_DEGREE = 5
MAX_H_ORDER = 64


class CapacityError(ValueError):
    pass


class PermGroup:
    """S_N; elements are tuples of images of 0..N-1, composed as (gh)(x) = g(h(x))."""

    def __init__(self, N: int, max_degree: int = MAX_SYMMETRIC_DEGREE):
        if N > max_degree:
            raise CapacityError(f"S_{N} exceeds the capacity limit S_{max_degree}")
        self.N = N
        self.elements: List[Tuple[int, ...]] = list(itertools.permutations(range(N)))
        self.index = {g: k for k, g in enumerate(self.elements)}
        self.identity = self.index[tuple(range(N))]
        n = len(self.elements)
        self.mul = [[self.index[tuple(g[h[x]] for x in range(N))] for h in self.elements]
                    for g in self.elements]
        self.inv = [self.index[tuple(sorted(range(N), key=lambda x: g[x]))] for g in self.elements]
        assert all(self.mul[k][self.inv[k]] == self.identity for k in range(n))

    def __len__(self):
        return len(self.elements)

    def label(self, k: int) -> str:
        return "e[" + ",".join(str(x + 1) for x in self.elements[k]) + "]"

    def from_cycle(self, cycle) -> int:
        """Element index of a cycle given with 1-based points."""
        img = list(range(self.N))
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            img[a - 1] = b - 1
        return self.index[tuple(img)]


def build_function_algebra(G: PermGroup) -> FinDimBialgebra:
    """k^G: e_g e_h = δ e_g, Δ(e_g) = Σ_{ab=g} e_a ⊗ e_b, ε(e_g) = [g = 1], S(e_g) = e_{g⁻¹}."""
    n = len(G)
    one = mpq(1)
    mult = {(k, k): {k: one} for k in range(n)}
    alg = FinDimAlgebra(f"O(S_{G.N})", [G.label(k) for k in range(n)], mult,
                        {k: one for k in range(n)}, check=False)
    comult = [dict() for _ in range(n)]
    for a in range(n):
        for b in range(n):
            comult[G.mul[a][b]][(a, b)] = one
    counit = [one if k == G.identity else mpq(0) for k in range(n)]
    antipode = [{G.inv[k]: one} for k in range(n)]
    H = FinDimBialgebra(alg, comult, counit, antipode, check=False)
    H.group = G
    return H


def x_generator(G: PermGroup, i: int, j: int, convention: str = DEFAULT_CONVENTION) -> Vec:
    """The coordinate function x_ij as a vector of the function algebra (1-based i, j)."""
    out = {}
    for k, g in enumerate(G.elements):
        hit = g[j - 1] == i - 1 if convention == ROW else g[i - 1] == j - 1
        if hit:
            out[k] = mpq(1)
    return out


def e_as_monomial(G: PermGroup, k: int, convention: str = DEFAULT_CONVENTION):
    """e_g as a product of generators: the (i, j) pairs with x_ij(g) = 1, one per column."""
    g = G.elements[k]
    if convention == ROW:
        return [(g[j] + 1, j + 1) for j in range(G.N)]
    return [(i + 1, g[i] + 1) for i in range(G.N)]


@dataclass
class GroupAlgebraH:
    """k[H] for H = <t_1, ..., t_n> ≅ (Z/m)^n inside S_mn, t_i = (m(i-1)+1 ... mi)."""

    m: int
    n: int
    bialgebra: FinDimBialgebra
    exponents: List[Tuple[int, ...]]
    index: Dict[Tuple[int, ...], int]
    embedding: List[Tuple[int, ...]] = field(default_factory=list)  # permutation of each element

    def element(self, a) -> int:
        return self.index[tuple(x % self.m for x in a)]

    def t(self, i: int, power: int = 1) -> int:
        a = [0] * self.n
        a[i - 1] = power
        return self.element(a)


def t_cycle(m: int, i: int):
    return list(range(m * (i - 1) + 1, m * i + 1))


def build_group_algebra_H(m: int, n: int, max_order: int = MAX_H_ORDER) -> GroupAlgebraH:
    if m ** n > max_order:
        raise CapacityError(f"|H| = {m ** n} exceeds the capacity limit {max_order}")
    exps = list(itertools.product(range(m), repeat=n))
    index = {a: k for k, a in enumerate(exps)}
    one = mpq(1)
    mult = {}
    for a in exps:
        for b in exps:
            c = tuple((x + y) % m for x, y in zip(a, b))
            mult[(index[a], index[b])] = {index[c]: one}
    labels = ["t^(" + ",".join(map(str, a)) + ")" for a in exps]
    alg = FinDimAlgebra(f"k[H_{m}^{n}]", labels, mult, {index[(0,) * n]: one}, check=False)
    comult = [{(k, k): one} for k in range(len(exps))]
    antipode = [{index[tuple((-x) % m for x in a)]: one} for a in exps]
    B = FinDimBialgebra(alg, comult, [one] * len(exps), antipode, check=False)
    emb = []
    N = m * n
    for a in exps:
        img = list(range(N))
        for i, e in enumerate(a):
            block = [x - 1 for x in t_cycle(m, i + 1)]
            for r, x in enumerate(block):
                img[x] = block[(r + e) % m]
        emb.append(tuple(img))
    return GroupAlgebraH(m, n, B, exps, index, emb)


# ---------------------------------------------------------------------------
# π : O(S_mn) → k[H]

@dataclass
class PiMorphism:
    H: GroupAlgebraH
    G: PermGroup
    convention: str
    x_images: Dict[Tuple[int, int], Vec]
    e_images: List[Vec]
    checks: List[FDCheck]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def __call__(self, u: Vec) -> Vec:
        out: Vec = {}
        for k, a in u.items():
            add_scaled(out, self.e_images[k], a)
        return out


def pi_x_image(H: GroupAlgebraH, i: int, j: int) -> Vec:
    """(δ_{i*j*}/m) Σ_k ξ^{k(j-i)} t_{i*}^k."""
    m = H.m
    if blockstar(i, m) != blockstar(j, m):
        return {}
    out: Vec = {}
    for k in range(m):
        add_term(out, H.t(blockstar(i, m), k), root_of_unity(m, k * (j - i)) / m)
    return out


def pi_morphism(m: int, n: int, convention: str = DEFAULT_CONVENTION,
                G: PermGroup | None = None, H: GroupAlgebraH | None = None) -> PiMorphism:
    """Build π from the generator formula and check it exhaustively.

    Checks: orthogonality relations on the images, that π extended through the
    monomials e_g is an algebra morphism on all of O(S_mn), and that it
    commutes with the coproducts.
    """
    N = m * n
    G = G or PermGroup(N)
    H = H or build_group_algebra_H(m, n)
    Hb = H.bialgebra
    KH = Hb.algebra
    xs = {(i, j): pi_x_image(H, i, j) for i in range(1, N + 1) for j in range(1, N + 1)}
    checks = []

    bad = None
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            for k in range(1, N + 1):
                want = xs[(i, j)] if j == k else {}
                if KH.mul(xs[(i, j)], xs[(i, k)]) != want or KH.mul(xs[(j, i)], xs[(k, i)]) != (
                        xs[(j, i)] if j == k else {}):
                    bad = bad or f"x{i}{j}·x{i}{k}"
        row, col = {}, {}
        for l in range(1, N + 1):
            add_scaled(row, xs[(i, l)], 1)
            add_scaled(col, xs[(l, i)], 1)
        if row != KH.unit or col != KH.unit:
            bad = bad or f"sums at index {i}"
    checks.append(FDCheck("π respects the orthogonality relations", bad is None, bad, N ** 3))

    F = build_function_algebra(G)
    e_images = [KH.product(xs[ij] for ij in e_as_monomial(G, k, convention)) for k in range(len(G))]
    bad = None
    for a in range(len(G)):
        if KH.mul(e_images[a], e_images[a]) != e_images[a]:
            bad = bad or F.labels[a]
        for b in range(a + 1, len(G)):
            if KH.mul(e_images[a], e_images[b]):
                bad = bad or f"{F.labels[a]}·{F.labels[b]}"
    total: Vec = {}
    for v in e_images:
        add_scaled(total, v, 1)
    if total != KH.unit:
        bad = bad or "Σ e_g ↦ 1"
    checks.append(FDCheck("π algebra morphism on O(S_mn)", bad is None, bad, len(G) ** 2))

    # the generator images must agree with π(x_ij) computed through the e_g
    bad = None
    for (i, j), img in xs.items():
        via = {}
        for k, c in x_generator(G, i, j, convention).items():
            add_scaled(via, e_images[k], c)
        if via != img:
            bad = bad or f"x{i}{j}"
    checks.append(FDCheck("π(x_ij) matches its expansion through e_g", bad is None, bad, N * N))

    bad = None
    for (i, j), img in xs.items():
        left = Hb.delta(img)
        right: dict = {}
        xij = x_generator(G, i, j, convention)
        for k, c in xij.items():
            for (a, b), d in F.comult[k].items():
                for u, s in e_images[a].items():
                    for v, t in e_images[b].items():
                        add_term(right, (u, v), c * d * s * t)
        if left != right:
            bad = bad or f"x{i}{j}"
    checks.append(FDCheck("π coalgebra morphism on the x_ij", bad is None, bad, N * N))
    return PiMorphism(H, G, convention, xs, e_images, checks)
