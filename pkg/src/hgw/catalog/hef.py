"""Universal cosovereign-type algebras H(E, F), their isomorphisms, and systems."""

from __future__ import annotations

from functools import lru_cache

from ..ncalg.matrix import NcMatrix, entrywise_relations, mat_mul, mat_transpose
from ..ncalg.morphism import AlgMorphism
from ..ncalg.presentation import Presentation, free_algebra, x_name
from ..report import CheckResult
from ..system import (Bialgebra, BicomoduleAlgebra, HopfGaloisSystem, comatrix_morphism,
                      well_defined_check)
from .bef import _common_field, build_BEF, counit_evidence, x_matrix
from .matrices import FieldMatrix, require_invertible, verify_symmetrizer

HEF_NONZERO_ASSUMED = "H(E,F) is assumed nonzero (user override; no representation evidence)"
BGK_NONZERO = ("B(G,K) is a nonzero algebra when its trace invariants agree "
               "(cited result on bilinear-form algebras; not checked here)")


class HypothesisError(ValueError):
    pass


def u_name(i, j):
    return x_name(i, j, "u")


def v_name(i, j):
    return x_name(i, j, "v")


def _label(E, F):
    return f"H({E.label()})" if E == F else f"H({E.label()},{F.label()})"


def _matrices(P, m, n):
    return NcMatrix.generators(P, m, n, u_name), NcMatrix.generators(P, m, n, v_name)


def _entries(M: NcMatrix, name):
    m, n = M.shape
    return {name(i, j): M[i - 1, j - 1] for i in range(1, m + 1) for j in range(1, n + 1)}


@lru_cache(maxsize=None)
def build_HEF(E: FieldMatrix, F: FieldMatrix) -> Presentation:
    """Generators u_ij then v_ij (m×n).

    Relations, entrywise: u ᵗv = I_m, v F ᵗu E⁻¹ = I_m, ᵗv u = I_n, F ᵗu E⁻¹ v = I_n.
    """
    require_invertible(E, F)
    field = _common_field(E, F)
    m, n = E.shape[0], F.shape[0]
    names = ([u_name(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
             + [v_name(i, j) for i in range(1, m + 1) for j in range(1, n + 1)])
    free = free_algebra("free", names, field)
    u, v = _matrices(free, m, n)
    ut, vt = mat_transpose(u), mat_transpose(v)
    Fl, Ei = F.tolist(), E.inv().tolist()
    Im = NcMatrix.identity(u.factors, m)
    In = NcMatrix.identity(u.factors, n)
    rels = []
    for M, I in ((mat_mul(u, vt), Im), (mat_mul(mat_mul(mat_mul(v, Fl), ut), Ei), Im),
                 (mat_mul(vt, u), In), (mat_mul(mat_mul(mat_mul(Fl, ut), Ei), v), In)):
        rels += entrywise_relations(M - I)
    return Presentation(_label(E, F), free.alphabet, rels, field,
                        meta={"family": "HEF", "E": E, "F": F})


def hef_delta(E, F, G, name: str | None = None) -> AlgMorphism:
    """δ^G_{E,F} : H(E,F) → H(E,G) ⊗ H(G,F) on both the u and the v family."""
    m, n, p = E.shape[0], F.shape[0], G.shape[0]
    return comatrix_morphism(name or "delta^G_{E,F}", build_HEF(E, F), build_HEF(E, G),
                             build_HEF(G, F), [(u_name, u_name, u_name, m, p, n),
                                               (v_name, v_name, v_name, m, p, n)])


def hef_counit(E) -> AlgMorphism:
    m = E.shape[0]
    imgs = {}
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            imgs[u_name(i, j)] = imgs[v_name(i, j)] = int(i == j)
    return AlgMorphism("eps", build_HEF(E, E), (), imgs)


def hef_phi(E, F, name: str = "phi", drop_Einv: bool = False) -> AlgMorphism:
    """φ : H(F,E) → H(E,F)^op with u ↦ ᵗv and v ↦ F ᵗu E⁻¹.

    ``drop_Einv`` builds the corrupted map v ↦ F ᵗu used as a negative control.
    """
    Z, T = build_HEF(E, F), build_HEF(F, E)
    m, n = E.shape[0], F.shape[0]
    u, v = _matrices(Z, m, n)
    vimg = mat_mul(F.tolist(), mat_transpose(u))
    if not drop_Einv:
        vimg = mat_mul(vimg, E.inv().tolist())
    imgs = {**_entries(mat_transpose(v), u_name), **_entries(vimg, v_name)}
    return AlgMorphism(name, T, (Z,), imgs, anti=True)


def hef_hopf(E) -> Bialgebra:
    return Bialgebra(build_HEF(E, E), hef_delta(E, E, E, "Delta"), hef_counit(E), hef_phi(E, E, "S"))


# ---------------------------------------------------------------------------
# isomorphisms

def _uv_morphism(name, src, dst, m, n, uimg: NcMatrix, vimg: NcMatrix) -> AlgMorphism:
    return AlgMorphism(name, src, (dst,), {**_entries(uimg, u_name), **_entries(vimg, v_name)})


def hef_iso_conjugate(E, F, P, Q) -> AlgMorphism:
    """H(E,F) → H(PEP⁻¹, QFQ⁻¹): u ↦ ᵗP u ᵗQ⁻¹, v ↦ P⁻¹ v Q."""
    require_invertible(E, F, P, Q)
    E2, F2 = P @ E @ P.inv(), Q @ F @ Q.inv()
    dst = build_HEF(E2, F2)
    m, n = E.shape[0], F.shape[0]
    u, v = _matrices(dst, m, n)
    return _uv_morphism("conjugation", build_HEF(E, F), dst, m, n,
                        mat_mul(mat_mul(P.T.tolist(), u), Q.inv().T.tolist()),
                        mat_mul(mat_mul(P.inv().tolist(), v), Q.tolist()))


def hef_iso_conjugate_inverse(E, F, P, Q) -> AlgMorphism:
    """The inverse candidate H(PEP⁻¹, QFQ⁻¹) → H(E,F): conjugation by P⁻¹, Q⁻¹."""
    E2, F2 = P @ E @ P.inv(), Q @ F @ Q.inv()
    f = hef_iso_conjugate(E2, F2, P.inv(), Q.inv())
    if f.codomain[0] is not build_HEF(E, F):
        raise AssertionError("conjugating back must land in H(E,F)")
    f.name = "conjugation inverse"
    return f


def hef_iso_transpose(E, F) -> AlgMorphism:
    """H(E,F) → H(ᵗE⁻¹, ᵗF⁻¹): u ↦ v, v ↦ E u F⁻¹."""
    require_invertible(E, F)
    dst = build_HEF(E.inv().T, F.inv().T)
    m, n = E.shape[0], F.shape[0]
    u, v = _matrices(dst, m, n)
    return _uv_morphism("transpose", build_HEF(E, F), dst, m, n, v,
                        mat_mul(mat_mul(E.tolist(), u), F.inv().tolist()))


def hef_iso_transpose_inverse(E, F) -> AlgMorphism:
    """H(ᵗE⁻¹, ᵗF⁻¹) → H(E,F): u ↦ E⁻¹ v F, v ↦ u."""
    require_invertible(E, F)
    src, dst = build_HEF(E.inv().T, F.inv().T), build_HEF(E, F)
    m, n = E.shape[0], F.shape[0]
    u, v = _matrices(dst, m, n)
    return _uv_morphism("transpose inverse", src, dst, m, n,
                        mat_mul(mat_mul(E.inv().tolist(), v), F.tolist()), u)


def hef_transpose_square(E, F) -> AlgMorphism:
    """Expected g'∘g on H(E,F): u ↦ ᵗE⁻¹ u ᵗF, v ↦ E v F⁻¹."""
    P = build_HEF(E, F)
    m, n = E.shape[0], F.shape[0]
    u, v = _matrices(P, m, n)
    return _uv_morphism("transpose twice", P, P, m, n,
                        mat_mul(mat_mul(E.inv().T.tolist(), u), F.T.tolist()),
                        mat_mul(mat_mul(E.tolist(), v), F.inv().tolist()))


# ---------------------------------------------------------------------------
# map into B(G, K) and nonzero evidence

def hef_to_bef(E, F, G, K) -> AlgMorphism:
    """H(E,F) → B(G,K): u ↦ x, v ↦ ᵗG x ᵗK⁻¹, for E = ᵗG G⁻¹, F = ᵗK K⁻¹, tr E = tr F."""
    require_invertible(E, F, G, K)
    if not verify_symmetrizer(E, G):
        raise HypothesisError(f"E = ᵗG G⁻¹ fails for E = {E.label()}, G = {G.label()}")
    if not verify_symmetrizer(F, K):
        raise HypothesisError(f"F = ᵗK K⁻¹ fails for F = {F.label()}, K = {K.label()}")
    if E.trace() != F.trace():
        raise HypothesisError(f"tr(E) = {E.trace()} differs from tr(F) = {F.trace()}")
    m, n = E.shape[0], F.shape[0]
    B = build_BEF(G, K)
    x = x_matrix(B, m, n)
    return _uv_morphism("H(E,F) -> B(G,K)", build_HEF(E, F), B, m, n, x,
                        mat_mul(mat_mul(G.T.tolist(), x), K.inv().T.tolist()))


def hef_nonzero_evidence(E, F, G, K, red) -> CheckResult:
    f = hef_to_bef(E, F, G, K)
    res = well_defined_check("H(E,F) -> B(G,K)", f, red)
    res.name = f"nonzero:{f.domain.name} via B(G,K)"
    res.assumptions.append(BGK_NONZERO)
    res.detail = (res.detail + "; " if res.detail else "") + "surjective: the x_ij are images of the u_ij"
    return res


def build_hef_system(E, F, symmetrizers=None, assume_nonzero: bool = False,
                     corrupt_phi: bool = False) -> HopfGaloisSystem:
    """(H(E), H(F), H(E,F), H(F,E)) with comatrix coactions on u and v, S = φ.

    Nonzero evidence, in order of preference: a character (E = F), the map
    into B(G,K) for ``symmetrizers = (G, K)``, or the explicit override.
    """
    require_invertible(E, F)
    A, B = hef_hopf(E), hef_hopf(F)
    Z, T = build_HEF(E, F), build_HEF(F, E)
    sys = HopfGaloisSystem(
        f"cosovereign E={E.label()} F={F.label()}", A, B,
        BicomoduleAlgebra(Z, hef_delta(E, F, E, "alpha"), hef_delta(E, F, F, "beta")), T,
        hef_delta(E, E, F, "gamma"), hef_delta(F, F, E, "delta"),
        hef_phi(E, F, "S", drop_Einv=corrupt_phi),
        notes=[f"A = {A.name}, B = {B.name}, Z = {Z.name}, T = {T.name}"])
    if E == F:
        sys.evidence.append(lambda red: counit_evidence(Z, A.counit, red))
    elif symmetrizers is not None:
        G, K = symmetrizers
        hef_to_bef(E, F, G, K)  # raises HypothesisError early
        sys.evidence.append(lambda red: hef_nonzero_evidence(E, F, G, K, red))
        # T = H(F,E) maps onto B(K,G) in the same way
        sys.evidence.append(lambda red: hef_nonzero_evidence(F, E, K, G, red))
    elif assume_nonzero:
        sys.assumptions.append(HEF_NONZERO_ASSUMED)
    else:
        raise HypothesisError("H(E,F) nonzero-ness needs symmetrizers (G, K) or an explicit override")
    return sys

