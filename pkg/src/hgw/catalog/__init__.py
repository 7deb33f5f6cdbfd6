"""Catalog of example families: B(E,F), H(E,F) and the level-truncated H(m,n)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict

from .bef import (BEF_NONZERO, TraceMismatch, bef_counit, bef_delta, bef_hopf, bef_phi,
                  bef_phi_square, build_BEF, build_bef_system, check_trace_match)
from .hef import (HypothesisError, build_hef_system, build_HEF, hef_counit, hef_delta, hef_hopf,
                  hef_iso_conjugate, hef_iso_conjugate_inverse, hef_iso_transpose,
                  hef_iso_transpose_inverse, hef_nonzero_evidence, hef_phi, hef_to_bef,
                  hef_transpose_square)
from .hmn import (DEFAULT_ALPHA_CAP, CapMismatch, build_Hmn, build_hmn_system, hmn_counit,
                  hmn_delta, hmn_hopf, hmn_phi, hmn_to_bef)
from .matrices import (FieldMatrix, QuadraticData, SingularMatrixError, F_q, F_q_symmetrizer,
                       bilinear_quadratic, trace_quadratic, find_matching_matrix,
                       find_matching_pair, find_symmetrizer, require_invertible, root_diagonal,
                       trace_invariant, triangular_example, verify_symmetrizer)

FAMILIES = ("BEF", "HEF", "Hmn")


@dataclass
class CatalogEntry:
    family: str
    parameters: Dict
    presentation: object
    builders: Dict[str, Callable] = field(default_factory=dict)


def catalog_entry(family: str, **params) -> CatalogEntry:
    """Validate parameters for a family and build its presentation plus morphism builders."""
    fam = family.upper() if family.lower() != "hmn" else "Hmn"
    if fam == "BEF":
        E, F = params["E"], params.get("F", params["E"])
        require_invertible(E, F)
        return CatalogEntry(fam, {"E": E, "F": F}, build_BEF(E, F), {
            "delta": lambda G: bef_delta(E, F, G), "phi": lambda: bef_phi(F, E),
            "system": lambda: build_bef_system(E, F)})
    if fam == "HEF":
        E, F = params["E"], params.get("F", params["E"])
        require_invertible(E, F)
        return CatalogEntry(fam, {"E": E, "F": F}, build_HEF(E, F), {
            "delta": lambda G: hef_delta(E, F, G), "phi": lambda: hef_phi(F, E),
            "transpose": lambda: hef_iso_transpose(E, F),
            "conjugate": lambda P, Q: hef_iso_conjugate(E, F, P, Q)})
    if fam == "Hmn":
        m, n = int(params["m"]), int(params.get("n", params["m"]))
        A = int(params.get("alpha_cap", DEFAULT_ALPHA_CAP))
        if m < 2 or n < 2:
            raise ValueError("H(m,n) needs m, n >= 2")
        return CatalogEntry(fam, {"m": m, "n": n, "alpha_cap": A}, build_Hmn(m, n, A), {
            "delta": lambda p: hmn_delta(m, n, p, A), "phi": lambda: hmn_phi(n, m, A),
            "system": lambda: build_hmn_system(m, n, A)})
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
