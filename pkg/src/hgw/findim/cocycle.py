"""2-cocycles on finite-dimensional Hopf algebras and the deformed products."""

from __future__ import annotations

from typing import Dict, List

from ..exact import mpq, root_of_unity, scalar_inv
from ..ncalg.poly import add_scaled
from .algebra import FDCheck, FinDimAlgebra, FinDimBialgebra, Vec
from .groups import GroupAlgebraH, PiMorphism
from .rmatrix import ASTMatrix


def ast_cocycle(H: GroupAlgebraH, p: ASTMatrix):
    """σ_p(t^a, t^b) = Π_{i<j} p_ij^{a_i b_j} as a table over element indices."""
    if (p.m, p.n) != (H.m, H.n):
        raise ValueError("AST matrix does not match H")
    size = len(H.exponents)
    table = [[None] * size for _ in range(size)]
    for a, ia in H.index.items():
        for b, ib in H.index.items():
            e = sum(p.exp(i + 1, j + 1) * a[i] * b[j]
                    for i in range(H.n) for j in range(i + 1, H.n))
            table[ia][ib] = root_of_unity(H.m, e)
    return table


class Cocycle2:
    """Bilinear forms σ, σ̄ on a finite-dimensional bialgebra, stored on basis pairs."""

    def __init__(self, base: FinDimBialgebra, sigma: List[list], sigma_bar: List[list]):
        self.base = base
        self.sigma = sigma
        self.sigma_bar = sigma_bar

    def value(self, u: Vec, v: Vec, bar: bool = False):
        t = self.sigma_bar if bar else self.sigma
        out = mpq(0)
        for i, a in u.items():
            row = t[i]
            for j, b in v.items():
                c = row[j]
                if c:
                    out = out + a * b * c
        return out

    def _cocycle_identity(self, s, lhs_first: bool) -> FDCheck:
        # σ(a1,b1)σ(a2b2,c) = σ(b1,c1)σ(a,b2c2) (σ), or the mirrored σ̄ identity
        H = self.base
        A = H.algebra
        n = H.dim
        name = "cocycle identity" if lhs_first else "inverse cocycle identity"
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if lhs_first:
                        left = 0
                        for (a1, a2), x in H.comult[a].items():
                            for (b1, b2), y in H.comult[b].items():
                                s1 = s[a1][b1]
                                if not s1:
                                    continue
                                for k, z in A.mult.get((a2, b2), {}).items():
                                    left = left + x * y * z * s1 * s[k][c]
                        right = 0
                        for (b1, b2), x in H.comult[b].items():
                            for (c1, c2), y in H.comult[c].items():
                                s1 = s[b1][c1]
                                if not s1:
                                    continue
                                for k, z in A.mult.get((b2, c2), {}).items():
                                    right = right + x * y * z * s1 * s[a][k]
                    else:
                        # σ̄(a1b1,c)σ̄(a2,b2) = σ̄(a,b1c1)σ̄(b2,c2)
                        left = 0
                        for (a1, a2), x in H.comult[a].items():
                            for (b1, b2), y in H.comult[b].items():
                                s2 = s[a2][b2]
                                if not s2:
                                    continue
                                for k, z in A.mult.get((a1, b1), {}).items():
                                    left = left + x * y * z * s2 * s[k][c]
                        right = 0
                        for (b1, b2), x in H.comult[b].items():
                            for (c1, c2), y in H.comult[c].items():
                                s2 = s[b2][c2]
                                if not s2:
                                    continue
                                for k, z in A.mult.get((b1, c1), {}).items():
                                    right = right + x * y * z * s2 * s[a][k]
                    if left != right:
                        L = H.labels
                        return FDCheck(name, False, f"({L[a]}, {L[b]}, {L[c]})", a * n * n + b * n + c + 1)
        return FDCheck(name, True, None, n ** 3)

    def check_normalized(self) -> FDCheck:
        H = self.base
        one = H.algebra.unit
        for t in (self.sigma, self.sigma_bar):
            for a in range(H.dim):
                e = {a: 1}
                eps = H.counit[a]
                bar = t is self.sigma_bar
                if self.value(e, one, bar) != eps or self.value(one, e, bar) != eps:
                    return FDCheck("normalization", False, H.labels[a], a + 1)
        return FDCheck("normalization", True, None, 2 * H.dim)

    def convolution(self, s, t):
        """(s*t)(a, b) = Σ s(a1, b1) t(a2, b2) as a table."""
        H = self.base
        n = H.dim
        out = [[mpq(0)] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                v = mpq(0)
                for (a1, a2), x in H.comult[a].items():
                    for (b1, b2), y in H.comult[b].items():
                        p = s[a1][b1]
                        if p:
                            q = t[a2][b2]
                            if q:
                                v = v + x * y * p * q
                out[a][b] = v
        return out

    def check_inverse(self) -> FDCheck:
        H = self.base
        n = H.dim
        for s, t in ((self.sigma, self.sigma_bar), (self.sigma_bar, self.sigma)):
            conv = self.convolution(s, t)
            for a in range(n):
                for b in range(n):
                    if conv[a][b] != H.counit[a] * H.counit[b]:
                        return FDCheck("σ∗σ̄ = ε⊗ε", False, f"({H.labels[a]}, {H.labels[b]})", a * n + b + 1)
        return FDCheck("σ∗σ̄ = ε⊗ε", True, None, 2 * n * n)

    def check_all(self) -> List[FDCheck]:
        return [self.check_normalized(), self._cocycle_identity(self.sigma, True),
                self._cocycle_identity(self.sigma_bar, False), self.check_inverse()]


def group_cocycle(H: GroupAlgebraH, table) -> Cocycle2:
    inv = [[scalar_inv(c) for c in row] for row in table]
    return Cocycle2(H.bialgebra, table, inv)


def trivial_cocycle(A: FinDimBialgebra) -> Cocycle2:
    t = [[A.counit[a] * A.counit[b] for b in range(A.dim)] for a in range(A.dim)]
    return Cocycle2(A, t, [list(r) for r in t])


def pullback_cocycle(sigma_H: Cocycle2, pi: PiMorphism, A: FinDimBialgebra) -> Cocycle2:
    """σ(a, b) = σ_H(π(a), π(b)) and σ̄ likewise from the group-level inverse."""
    if not pi.ok:
        raise ValueError("π failed its checks; refusing to pull back")
    n = A.dim
    imgs = pi.e_images

    def pull(tab):
        out = [[mpq(0)] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                v = mpq(0)
                for u, x in imgs[a].items():
                    for w, y in imgs[b].items():
                        v = v + x * y * tab[u][w]
                out[a][b] = v
        return out

    return Cocycle2(A, pull(sigma_H.sigma), pull(sigma_H.sigma_bar))


def closed_form_sigma(p: ASTMatrix, i: int, j: int, k: int, l: int):
    """δ_ij δ_kl if i* ≥ k*, else (δ_{i*j*}δ_{k*l*}/m²) Σ_{r,s} ξ^{r(j-i)+s(l-k)} p_{i*k*}^{rs}."""
    from .rmatrix import blockstar
    m = p.m
    bi, bj, bk, bl = (blockstar(x, m) for x in (i, j, k, l))
    if bi >= bk:
        return mpq(1) if (i == j and k == l) else mpq(0)
    if bi != bj or bk != bl:
        return mpq(0)
    e = p.exp(bi, bk)
    tot = 0
    for r in range(m):
        for s in range(m):
            tot = tot + root_of_unity(m, r * (j - i) + s * (l - k) + e * r * s)
    return tot / (m * m)


# ---------------------------------------------------------------------------
# deformations

def _sweedler2(H: FinDimBialgebra):
    return [H.iterated(i, 2) for i in range(H.dim)]


def deform_left(A: FinDimBialgebra, c: Cocycle2, check: bool = True) -> FinDimAlgebra:
    """_σA: a · b = σ(a1, b1) a2 b2."""
    s = c.sigma
    mult = {}
    for a in range(A.dim):
        for b in range(A.dim):
            out: Vec = {}
            for (a1, a2), x in A.comult[a].items():
                for (b1, b2), y in A.comult[b].items():
                    v = s[a1][b1]
                    if v:
                        add_scaled(out, A.algebra.mult.get((a2, b2), {}), x * y * v)
            if out:
                mult[(a, b)] = out
    return FinDimAlgebra(f"_σ{A.name}", A.labels, mult, A.algebra.unit, check=check)


def deform_right(A: FinDimBialgebra, c: Cocycle2, check: bool = True) -> FinDimAlgebra:
    """A_σ̄: a · b = σ̄(a2, b2) a1 b1."""
    s = c.sigma_bar
    mult = {}
    for a in range(A.dim):
        for b in range(A.dim):
            out: Vec = {}
            for (a1, a2), x in A.comult[a].items():
                for (b1, b2), y in A.comult[b].items():
                    v = s[a2][b2]
                    if v:
                        add_scaled(out, A.algebra.mult.get((a1, b1), {}), x * y * v)
            if out:
                mult[(a, b)] = out
    return FinDimAlgebra(f"{A.name}_σ̄", A.labels, mult, A.algebra.unit, check=check)


def deform_both(A: FinDimBialgebra, c: Cocycle2, check: bool = True) -> FinDimBialgebra:
    """_σA_σ̄ with product σ(a1,b1) σ̄(a3,b3) a2 b2, the same coalgebra, and S^σ."""
    s, sb = c.sigma, c.sigma_bar
    d2 = _sweedler2(A)
    # group the second Sweedler expansion of b by its middle leg
    by_mid = []
    for b in range(A.dim):
        g: Dict[int, list] = {}
        for (b1, b2, b3), y in d2[b].items():
            g.setdefault(b2, []).append((b1, b3, y))
        by_mid.append(g)
    M = A.algebra.mult
    mult = {}
    for a in range(A.dim):
        for b in range(A.dim):
            out: Vec = {}
            gb = by_mid[b]
            for (a1, a2, a3), x in d2[a].items():
                sa1, sba3 = s[a1], sb[a3]
                for b2, rows in gb.items():
                    prod = M.get((a2, b2))
                    if not prod:
                        continue
                    coef = 0
                    for b1, b3, y in rows:
                        u = sa1[b1]
                        if u:
                            w = sba3[b3]
                            if w:
                                coef = coef + y * u * w
                    if coef:
                        add_scaled(out, prod, x * coef)
            if out:
                mult[(a, b)] = out
    alg = FinDimAlgebra(f"_σ{A.name}_σ̄", A.labels, mult, A.algebra.unit, check=check)
    anti = antipode_sigma(A, c) if A.antipode is not None else None
    return FinDimBialgebra(alg, A.comult, A.counit, anti, check=check)


def _functional_u(A: FinDimBialgebra, c: Cocycle2):
    # u(x) = σ(x1, S(x2))
    out = []
    for x in range(A.dim):
        v = mpq(0)
        for (x1, x2), k in A.comult[x].items():
            v = v + k * c.value({x1: 1}, A.antipode[x2])
        out.append(v)
    return out


def _functional_v(A: FinDimBialgebra, c: Cocycle2):
    # v(x) = σ̄(S(x1), x2)
    out = []
    for x in range(A.dim):
        v = mpq(0)
        for (x1, x2), k in A.comult[x].items():
            v = v + k * c.value(A.antipode[x1], {x2: 1}, bar=True)
        out.append(v)
    return out


def antipode_sigma(A: FinDimBialgebra, c: Cocycle2) -> List[Vec]:
    """S^σ(a) = σ(a1, S(a2)) σ̄(S(a4), a5) S(a3), computed as u(a1) S(a2) v(a3)."""
    u, v = _functional_u(A, c), _functional_v(A, c)
    out = []
    for a in range(A.dim):
        r: Vec = {}
        for (a1, a2, a3), x in A.iterated(a, 2).items():
            k = u[a1] * v[a3]
            if k:
                add_scaled(r, A.antipode[a2], x * k)
        out.append(r)
    return out


def phi_map(A: FinDimBialgebra, c: Cocycle2) -> List[Vec]:
    """φ(a) = σ(a1, S(a2)) S(a3), the generalized antipode _σA → A_σ̄."""
    u = _functional_u(A, c)
    out = []
    for a in range(A.dim):
        r: Vec = {}
        for (a1, a2), x in A.comult[a].items():
            k = u[a1]
            if k:
                add_scaled(r, A.antipode[a2], x * k)
        out.append(r)
    return out
