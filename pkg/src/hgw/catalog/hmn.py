"""Level-truncated presentations H(m, n) of free-Hopf-algebra type and their systems.

H(m, n) has generators x^(α)_ij for every α ≥ 0; only levels 0..A are
materialized, with the relations linking levels α and α+1 for α < A.
Each relation touches two adjacent levels, so any single axiom instance is
faithfully represented once the truncation contains the levels it uses.
The antipode-type map shifts levels up by one, so on a truncation at A it
is defined on levels 0..A−1 only; checks needing level A of T are skipped
and counted in the report.
"""

from __future__ import annotations

from functools import lru_cache

from ..ncalg.matrix import NcMatrix, entrywise_relations, mat_mul, mat_transpose
from ..ncalg.morphism import AlgMorphism
from ..ncalg.presentation import Presentation, free_algebra, x_name
from ..report import CheckResult
from ..system import (Bialgebra, BicomoduleAlgebra, HopfGaloisSystem, comatrix_morphism,
                      well_defined_check)
from .bef import BEF_NONZERO, build_BEF, check_trace_match, x_matrix
from .matrices import FieldMatrix, find_matching_pair

DEFAULT_ALPHA_CAP = 3


class CapMismatch(ValueError):
    pass


def level_name(a: int):
    return lambda i, j: x_name(i, j, f"x{a}_")


def _check_sizes(m, n, A):
    if m < 1 or n < 1:
        raise ValueError("sizes must be positive")
    if A < 1:
        raise ValueError("the truncation level must be at least 1")


@lru_cache(maxsize=None)
def build_Hmn(m: int, n: int, alpha_cap: int = DEFAULT_ALPHA_CAP) -> Presentation:
    """Levels 0..A of m×n generators; x^(α) ᵗx^(α+1) = I_m and ᵗx^(α+1) x^(α) = I_n for α < A."""
    _check_sizes(m, n, alpha_cap)
    names = [level_name(a)(i, j) for a in range(alpha_cap + 1)
             for i in range(1, m + 1) for j in range(1, n + 1)]
    free = free_algebra("free", names)
    X = [NcMatrix.generators(free, m, n, level_name(a)) for a in range(alpha_cap + 1)]
    Im, In = NcMatrix.identity(X[0].factors, m), NcMatrix.identity(X[0].factors, n)
    rels = []
    for a in range(alpha_cap):
        up = mat_transpose(X[a + 1])
        rels += entrywise_relations(mat_mul(X[a], up) - Im)
        rels += entrywise_relations(mat_mul(up, X[a]) - In)
    label = f"H({m})" if m == n else f"H({m},{n})"
    return Presentation(f"{label}[levels 0..{alpha_cap}]", free.alphabet, rels,
                        meta={"family": "Hmn", "m": m, "n": n, "alpha_cap": alpha_cap})


def _blocks(m, p, n, A):
    return [(level_name(a), level_name(a), level_name(a), m, p, n) for a in range(A + 1)]


def hmn_delta(m: int, n: int, p: int, alpha_cap: int = DEFAULT_ALPHA_CAP,
              name: str | None = None) -> AlgMorphism:
    """δ^p_{m,n} : H(m,n) → H(m,p) ⊗ H(p,n), level by level."""
    return comatrix_morphism(name or "delta^p_{m,n}", build_Hmn(m, n, alpha_cap),
                             build_Hmn(m, p, alpha_cap), build_Hmn(p, n, alpha_cap),
                             _blocks(m, p, n, alpha_cap))


def hmn_counit(m: int, alpha_cap: int = DEFAULT_ALPHA_CAP) -> AlgMorphism:
    imgs = {level_name(a)(i, j): int(i == j) for a in range(alpha_cap + 1)
            for i in range(1, m + 1) for j in range(1, m + 1)}
    return AlgMorphism("eps", build_Hmn(m, m, alpha_cap), (), imgs)


def hmn_phi(m: int, n: int, alpha_cap: int = DEFAULT_ALPHA_CAP, codomain_cap: int | None = None,
            partial: bool = False, name: str = "phi") -> AlgMorphism:
    """φ : H(n,m) → H(m,n)^op, x^(α) ↦ ᵗx^(α+1).

    A full map needs ``codomain_cap >= alpha_cap + 1``.  With ``partial``
    the map is defined on the levels whose image exists in the codomain.
    """
    cod_cap = alpha_cap + 1 if codomain_cap is None else codomain_cap
    if cod_cap < alpha_cap + 1 and not partial:
        raise CapMismatch(f"φ on levels 0..{alpha_cap} needs codomain levels 0..{alpha_cap + 1}; "
                          f"got 0..{cod_cap}")
    T, Z = build_Hmn(n, m, alpha_cap), build_Hmn(m, n, cod_cap)
    imgs = {}
    for a in range(min(alpha_cap, cod_cap - 1) + 1):
        nxt = NcMatrix.generators(Z, m, n, level_name(a + 1))
        for i in range(1, n + 1):
            for j in range(1, m + 1):
                imgs[level_name(a)(i, j)] = nxt[j - 1, i - 1]
    return AlgMorphism(name, T, (Z,), imgs, anti=True)


def hmn_hopf(m: int, alpha_cap: int = DEFAULT_ALPHA_CAP) -> Bialgebra:
    return Bialgebra(build_Hmn(m, m, alpha_cap), hmn_delta(m, m, m, alpha_cap, "Delta"),
                     hmn_counit(m, alpha_cap), hmn_phi(m, m, alpha_cap, alpha_cap, True, "S"))


def hmn_to_bef(E: FieldMatrix, F: FieldMatrix, alpha_cap: int = DEFAULT_ALPHA_CAP,
               check_trace: bool = True, inverse_right_factor: bool = False) -> AlgMorphism:
    """H(m,n) → B(E,F), level by level.

    Level α+1 is the transpose of the two-sided inverse of level α, starting
    from f(x^(0)) = x with x⁻¹ = F⁻¹ ᵗx E.  Unrolled, with L = E⁻¹ ᵗE and
    R = ᵗF⁻¹ F:

        f(x^(2k))   = L^k x R^k
        f(x^(2k+1)) = ᵗE L^k x R^k ᵗF⁻¹.

    ``inverse_right_factor`` uses R = F⁻¹ ᵗF, the inverse of the factor above;
    it agrees with the unrolled map only when F⁻¹ ᵗF is an involution,
    e.g. F symmetric, and otherwise fails from level 2 on.
    """
    if check_trace:
        check_trace_match(E, F)
    m, n = E.shape[0], F.shape[0]
    B = build_BEF(E, F)
    x = x_matrix(B, m, n)
    L = E.inv() @ E.T
    R = F.inv() @ F.T if inverse_right_factor else F.T.inv() @ F
    imgs = {}
    for a in range(alpha_cap + 1):
        k = a // 2
        img = mat_mul(mat_mul((L ** k).tolist(), x), (R ** k).tolist())
        if a % 2:
            img = mat_mul(mat_mul(E.T.tolist(), img), F.T.inv().tolist())
        for i in range(1, m + 1):
            for j in range(1, n + 1):
                imgs[level_name(a)(i, j)] = img[i - 1, j - 1]
    return AlgMorphism("H(m,n) -> B(E,F)", build_Hmn(m, n, alpha_cap), (B,), imgs)


def hmn_nonzero_evidence(E, F, alpha_cap, red) -> CheckResult:
    f = hmn_to_bef(E, F, alpha_cap)
    res = well_defined_check("H(m,n) -> B(E,F)", f, red)
    res.name = f"nonzero:{f.domain.name} via {f.codomain[0].name}"
    res.assumptions.append(BEF_NONZERO)
    res.detail = (res.detail + "; " if res.detail else "") + "surjective: f(x^(0)) = x"
    return res


def build_hmn_system(m: int, n: int, alpha_cap: int = DEFAULT_ALPHA_CAP, pair=None) -> HopfGaloisSystem:
    """(H(m), H(n), H(m,n), H(n,m)) on levels 0..A with comatrix coactions and S = φ.

    Nonzero evidence for Z and T goes through B(E,F) and B(F,E) for a pair
    with equal trace invariants (searched when not given).
    """
    if m < 2 or n < 2:
        raise ValueError("both sizes must be at least 2")
    A_, B_ = hmn_hopf(m, alpha_cap), hmn_hopf(n, alpha_cap)
    Z, T = build_Hmn(m, n, alpha_cap), build_Hmn(n, m, alpha_cap)
    sys = HopfGaloisSystem(
        f"free Hopf type m={m} n={n} levels 0..{alpha_cap}", A_, B_,
        BicomoduleAlgebra(Z, hmn_delta(m, n, m, alpha_cap, "alpha"),
                          hmn_delta(m, n, n, alpha_cap, "beta")), T,
        hmn_delta(m, m, n, alpha_cap, "gamma"), hmn_delta(n, n, m, alpha_cap, "delta"),
        hmn_phi(m, n, alpha_cap, alpha_cap, True, "S"),
        notes=[f"A = {A_.name}, B = {B_.name}, Z = {Z.name}, T = {T.name}",
               f"truncated at level {alpha_cap}: S is defined on levels 0..{alpha_cap - 1} of T; "
               f"instances needing S on level {alpha_cap} are skipped"])
    if pair is None:
        pair = find_matching_pair(m, n)
    if pair is None:
        sys.assumptions.append("nonzero-ness of H(m,n) not evidenced (no matching pair found)")
    else:
        E, F = pair
        sys.evidence.append(lambda red: hmn_nonzero_evidence(E, F, alpha_cap, red))
        sys.evidence.append(lambda red: hmn_nonzero_evidence(F, E, alpha_cap, red))
    return sys
