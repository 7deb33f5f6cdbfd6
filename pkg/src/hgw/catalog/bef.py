"""Algebras B(E, F) of pairs of bilinear forms and their Hopf-Galois systems."""

from __future__ import annotations

from functools import lru_cache

from ..ncalg.matrix import NcMatrix, entrywise_relations, mat_mul, mat_transpose
from ..ncalg.morphism import AlgMorphism
from ..ncalg.presentation import Presentation, free_algebra, x_name
from ..report import CheckResult
from ..system import (Bialgebra, BicomoduleAlgebra, HopfGaloisSystem, comatrix_morphism,
                      well_defined_check)
from .matrices import FieldMatrix, require_invertible, trace_invariant

BEF_NONZERO = ("B(E,F) is a nonzero algebra when m, n >= 2 and the trace invariants agree "
               "(cited result on bilinear-form algebras; not checked here)")


class TraceMismatch(ValueError):
    pass


def _label(E: FieldMatrix, F: FieldMatrix) -> str:
    return f"B({E.label()})" if E == F else f"B({E.label()},{F.label()})"


def _common_field(*mats):
    fields = {M.field for M in mats}
    if len(fields) != 1:
        raise ValueError(f"matrices over different fields: {fields}")
    return fields.pop()


def x_matrix(P: Presentation, m: int, n: int, name=x_name) -> NcMatrix:
    return NcMatrix.generators(P, m, n, name)


def _identity_minus(M: NcMatrix, n: int) -> NcMatrix:
    return M - NcMatrix.identity(M.factors, n)


@lru_cache(maxsize=None)
def build_BEF(E: FieldMatrix, F: FieldMatrix) -> Presentation:
    """Generators x_ij (m×n); relations F⁻¹ ᵗx E x = I_n and x F⁻¹ ᵗx E = I_m entrywise."""
    require_invertible(E, F)
    field = _common_field(E, F)
    m, n = E.shape[0], F.shape[0]
    names = [x_name(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
    free = free_algebra("free", names, field)
    x = x_matrix(free, m, n)
    xt = mat_transpose(x)
    Fi = F.inv().tolist()
    Et = E.tolist()
    r1 = _identity_minus(mat_mul(mat_mul(mat_mul(Fi, xt), Et), x), n)
    r2 = _identity_minus(mat_mul(mat_mul(mat_mul(x, Fi), xt), Et), m)
    rels = entrywise_relations(r1) + entrywise_relations(r2)
    return Presentation(_label(E, F), free.alphabet, rels, field,
                        meta={"family": "BEF", "E": E, "F": F})


def bef_delta(E: FieldMatrix, F: FieldMatrix, G: FieldMatrix, name: str | None = None) -> AlgMorphism:
    """δ^G_{E,F} : B(E,F) → B(E,G) ⊗ B(G,F), x_ij ↦ Σ_k x_ik ⊗ x_kj."""
    m, n, p = E.shape[0], F.shape[0], G.shape[0]
    return comatrix_morphism(name or "delta^G_{E,F}", build_BEF(E, F), build_BEF(E, G),
                             build_BEF(G, F), [(x_name, x_name, x_name, m, p, n)])


def bef_counit(E: FieldMatrix) -> AlgMorphism:
    m = E.shape[0]
    return AlgMorphism("eps", build_BEF(E, E), (),
                       {x_name(i, j): int(i == j) for i in range(1, m + 1) for j in range(1, m + 1)})


def bef_phi(E: FieldMatrix, F: FieldMatrix, name: str = "phi") -> AlgMorphism:
    """φ : B(F,E) → B(E,F)^op, x ↦ F⁻¹ ᵗx E (an anti-morphism)."""
    Z, T = build_BEF(E, F), build_BEF(F, E)
    m, n = E.shape[0], F.shape[0]
    img = mat_mul(mat_mul(F.inv().tolist(), mat_transpose(x_matrix(Z, m, n))), E.tolist())
    return AlgMorphism(name, T, (Z,), {x_name(i, j): img[i - 1, j - 1]
                                       for i in range(1, n + 1) for j in range(1, m + 1)},
                       anti=True)


def bef_hopf(E: FieldMatrix) -> Bialgebra:
    """B(E) with comatrix coproduct, ε(x_ij) = δ_ij and antipode x ↦ E⁻¹ ᵗx E."""
    return Bialgebra(build_BEF(E, E), bef_delta(E, E, E, "Delta"), bef_counit(E),
                     bef_phi(E, E, "S"))


def check_trace_match(E: FieldMatrix, F: FieldMatrix) -> None:
    a, b = trace_invariant(E), trace_invariant(F)
    if a != b:
        raise TraceMismatch(f"trace invariants differ: tr(E ᵗE⁻¹) = {a}, tr(F ᵗF⁻¹) = {b}")


def counit_evidence(P: Presentation, counit: AlgMorphism, red) -> CheckResult:
    """A well-defined character P → k shows P ≠ 0."""
    res = well_defined_check("counit character", counit, red)
    res.name = f"nonzero:{P.name} via a character"
    return res


def build_bef_system(E: FieldMatrix, F: FieldMatrix) -> HopfGaloisSystem:
    """(B(E), B(F), B(E,F), B(F,E)) with α = δ^E_{E,F}, β = δ^F_{E,F}, γ = δ^F_{E,E}, δ = δ^E_{F,F}, S = φ."""
    require_invertible(E, F)
    if E.shape[0] < 2 or F.shape[0] < 2:
        raise ValueError("both matrices must have size at least 2")
    check_trace_match(E, F)
    A, B = bef_hopf(E), bef_hopf(F)
    Z, T = build_BEF(E, F), build_BEF(F, E)
    sys = HopfGaloisSystem(
        f"bilinear forms E={E.label()} F={F.label()}", A, B,
        BicomoduleAlgebra(Z, bef_delta(E, F, E, "alpha"), bef_delta(E, F, F, "beta")), T,
        bef_delta(E, E, F, "gamma"), bef_delta(F, F, E, "delta"), bef_phi(E, F, "S"),
        notes=[f"A = {A.name}, B = {B.name}, Z = {Z.name}, T = {T.name}",
               f"trace invariant {trace_invariant(E)}"])
    if E == F:
        sys.evidence.append(lambda red: counit_evidence(Z, A.counit, red))
    else:
        sys.assumptions.append(BEF_NONZERO)
    return sys


def bef_phi_square(E: FieldMatrix, F: FieldMatrix) -> AlgMorphism:
    """The expected value of φ_{E,F}∘φ_{F,E} on B(E,F): x ↦ E⁻¹ ᵗE x ᵗF⁻¹ F."""
    Z = build_BEF(E, F)
    m, n = E.shape[0], F.shape[0]
    left = (E.inv() @ E.T).tolist()
    right = (F.inv().T @ F).tolist()
    img = mat_mul(mat_mul(left, x_matrix(Z, m, n)), right)
    return AlgMorphism("E^-1 tE x tF^-1 F", Z, (Z,),
                       {x_name(i, j): img[i - 1, j - 1] for i in range(1, m + 1) for j in range(1, n + 1)})

