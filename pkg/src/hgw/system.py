"""Hopf-Galois systems and their verifier.

A system is a quadruple (A, B, Z, T) of presented algebras with

    Δ_A, ε_A, Δ_B, ε_B      bialgebra structure on A and B
    α : Z → A⊗Z, β : Z → Z⊗B  commuting coactions
    γ : A → Z⊗T, δ : B → T⊗Z  algebra morphisms
    S : T → Z                 an algebra anti-morphism

Every identity between algebra morphisms is checked on generators only:
two (anti-)morphisms that agree on generators agree everywhere.

The two antipode-type identities

    m_Z (1⊗S) γ(a) = ε_A(a) 1,      m_Z (S⊗1) δ(b) = ε_B(b) 1

are not identities between morphisms, but they still reduce to
generators.  Write γ(a) = Σ a'⊗a'' and let L(a) = Σ a' S(a'').  If L(a) =
ε(a)1 and L(b) = ε(b)1, then since γ(ab) = Σ a'b'⊗a''b'' and S reverses
products,

    L(ab) = Σ a' b' S(b'') S(a'') = Σ a' (ε(b)1) S(a'') = ε(b) L(a) = ε(ab) 1.

So the set where the identity holds contains 1, is a subspace, and is
closed under products; it is the whole algebra once it contains the
generators.  The δ identity telescopes the same way from the inside out.
This is why S must be an anti-morphism: it is the hypothesis that makes
the telescoping valid, and it is checked (well-definedness into Z^op)
before the identities are trusted.

The Galois maps and their candidate inverses are

    κ_l = (1⊗m)(α⊗1)          : Z⊗Z → A⊗Z
    κ_r = (m⊗1)(1⊗β)          : Z⊗Z → Z⊗B
    η_l = (1⊗m)(1⊗S⊗1)(γ⊗1)   : A⊗Z → Z⊗Z
    η_r = (m⊗1)(1⊗S⊗1)(1⊗δ)   : Z⊗B → Z⊗Z

and the four compositions with the identity are checked on a spanning set
of low-degree tensors.  That is bounded-degree evidence only.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional

from .ncalg.ideal import DEFAULT_DEGREE_CAP, Reducer
from .ncalg.morphism import (AlgMorphism, apply_morphism, compose, identity_morphism,
                             morphism_well_defined, morphisms_equal, multiply_factors)
from .ncalg.poly import TensorElem
from .report import FAILED, VERIFIED, CheckResult, VerificationReport, from_zero_checks

ANTI_NOTE = ("S is represented as an algebra anti-morphism T -> Z^op; a bare linear S "
             "is outside the checked model")
GALOIS_NOTE = ("Galois inverse identities are bounded-degree evidence on low-degree "
               "tensors, not a proof of bijectivity")


@dataclass
class Bialgebra:
    carrier: object
    delta: AlgMorphism
    counit: AlgMorphism
    antipode: Optional[AlgMorphism] = None

    @property
    def name(self):
        return self.carrier.name


@dataclass
class BicomoduleAlgebra:
    carrier: object
    alpha: AlgMorphism
    beta: AlgMorphism

    @property
    def name(self):
        return self.carrier.name


@dataclass
class HopfGaloisSystem:
    name: str
    A: Bialgebra
    B: Bialgebra
    Z: BicomoduleAlgebra
    T: object
    gamma: AlgMorphism
    delta: AlgMorphism
    S: AlgMorphism
    assumptions: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    # extra CheckResults, or callables reducer -> CheckResult evaluated at verification time
    evidence: list = field(default_factory=list)

    def structure_maps(self):
        return [("Delta_A", self.A.delta), ("eps_A", self.A.counit),
                ("Delta_B", self.B.delta), ("eps_B", self.B.counit),
                ("alpha", self.Z.alpha), ("beta", self.Z.beta),
                ("gamma", self.gamma), ("delta", self.delta), ("S", self.S)]

    def presentations(self):
        seen, out = set(), []
        for p in (self.A.carrier, self.B.carrier, self.Z.carrier, self.T):
            if id(p) not in seen:
                seen.add(id(p))
                out.append(p)
        return out


# ---------------------------------------------------------------------------
# constructors

def comatrix_morphism(name: str, domain, left, right, blocks) -> AlgMorphism:
    """x_ij ↦ Σ_k x_ik ⊗ x_kj for every generator family in ``blocks``.

    Each block is ``(dom, lft, rgt, rows, inner, cols)``: three functions
    (i, j) -> generator name for the domain and the two codomain factors,
    and the index ranges.
    """
    factors = (left, right)
    images = {}
    for dom, ln, rn, rows, inner, cols in blocks:
        for i in range(1, rows + 1):
            for j in range(1, cols + 1):
                terms = {}
                for k in range(1, inner + 1):
                    w = ((left.alphabet.index[ln(i, k)],), (right.alphabet.index[rn(k, j)],))
                    terms[w] = 1
                images[dom(i, j)] = TensorElem(factors, terms)
    return AlgMorphism(name, domain, factors, images)


def hopf_algebra_system(name: str, H: Bialgebra) -> HopfGaloisSystem:
    """Package a Hopf algebra as the system A = B = Z = T with every coaction Δ."""
    if H.antipode is None:
        raise ValueError("a Hopf algebra system needs an antipode")
    Z = BicomoduleAlgebra(H.carrier, H.delta, H.delta)
    return HopfGaloisSystem(name, H, H, Z, H.carrier, H.delta, H.delta, H.antipode,
                            notes=["degenerate system: A = B = Z = T with all coactions Δ"])


# ---------------------------------------------------------------------------
# checks

def _reducer(cap_or_reducer) -> Reducer:
    if isinstance(cap_or_reducer, Reducer):
        return cap_or_reducer
    return Reducer(DEFAULT_DEGREE_CAP if cap_or_reducer is None else cap_or_reducer)


def well_defined_check(label: str, f: AlgMorphism, red: Reducer) -> CheckResult:
    t0 = time.perf_counter()
    wd = morphism_well_defined(f, red)
    pairs = [(f"relation {c.index}: {c.relation}", c.result) for c in wd.checks if not c.skipped]
    res = from_zero_checks(f"well-defined:{label}", red.cap, pairs)
    if wd.skipped:
        extra = f"{wd.skipped} relation(s) outside the truncation skipped"
        res.detail = f"{res.detail}; {extra}" if res.detail else extra
    res.seconds = time.perf_counter() - t0
    return res


def _equal_check(name: str, f: AlgMorphism, g: AlgMorphism, red: Reducer) -> CheckResult:
    t0 = time.perf_counter()
    eq = morphisms_equal(f, g, red)
    res = from_zero_checks(name, red.cap, [(f"generator {e.generator}", e.result) for e in eq])
    res.seconds = time.perf_counter() - t0
    return res


def check_bialgebra(H: Bialgebra, cap=None, label: str | None = None,
                    include_well_defined: bool = True) -> VerificationReport:
    red = _reducer(cap)
    label = label or H.name
    rep = VerificationReport(f"bialgebra {label}")
    if include_well_defined:
        for nm, f in (("Delta", H.delta), ("eps", H.counit)):
            rep.add(well_defined_check(f"{nm}[{label}]", f, red))
    D = H.delta
    rep.add(_equal_check(f"coassociativity[{label}]",
                         compose(D, D, 0, reducer=red), compose(D, D, 1, reducer=red), red))
    ident = identity_morphism(H.carrier)
    rep.add(_equal_check(f"left counit[{label}]", compose(H.counit, D, 0, reducer=red), ident, red))
    rep.add(_equal_check(f"right counit[{label}]", compose(H.counit, D, 1, reducer=red), ident, red))
    return rep


def check_bicomodule(Z: BicomoduleAlgebra, A: Bialgebra, B: Bialgebra, cap=None,
                     include_well_defined: bool = True) -> VerificationReport:
    red = _reducer(cap)
    rep = VerificationReport(f"bicomodule algebra {Z.name}")
    al, be = Z.alpha, Z.beta
    if include_well_defined:
        rep.add(well_defined_check("alpha", al, red))
        rep.add(well_defined_check("beta", be, red))
    ident = identity_morphism(Z.carrier)
    rep.add(_equal_check("alpha coassociativity",
                         compose(A.delta, al, 0, reducer=red), compose(al, al, 1, reducer=red), red))
    rep.add(_equal_check("alpha counit", compose(A.counit, al, 0, reducer=red), ident, red))
    rep.add(_equal_check("beta coassociativity",
                         compose(be, be, 0, reducer=red), compose(B.delta, be, 1, reducer=red), red))
    rep.add(_equal_check("beta counit", compose(B.counit, be, 1, reducer=red), ident, red))
    rep.add(_equal_check("alpha/beta compatibility",
                         compose(be, al, 1, reducer=red), compose(al, be, 0, reducer=red), red))
    return rep


def check_hg3(sys: HopfGaloisSystem, cap=None) -> VerificationReport:
    red = _reducer(cap)
    rep = VerificationReport(f"HG3 {sys.name}")
    al, be, ga, de = sys.Z.alpha, sys.Z.beta, sys.gamma, sys.delta
    # (γ⊗1_Z)∘α = (1_Z⊗δ)∘β : Z → Z⊗T⊗Z
    rep.add(_equal_check("HG3 square on Z",
                         compose(ga, al, 0, reducer=red), compose(de, be, 1, reducer=red), red))
    # (α⊗1_T)∘γ = (1_A⊗γ)∘Δ_A : A → A⊗Z⊗T
    rep.add(_equal_check("HG3 square on A",
                         compose(al, ga, 0, reducer=red), compose(ga, sys.A.delta, 1, reducer=red), red))
    # (1_T⊗β)∘δ = (δ⊗1_B)∘Δ_B : B → T⊗Z⊗B
    rep.add(_equal_check("HG3 square on B",
                         compose(be, de, 1, reducer=red), compose(de, sys.B.delta, 0, reducer=red), red))
    return rep


def _antipode_identity(m: AlgMorphism, S: AlgMorphism, counit: AlgMorphism, s_pos: int,
                       red: Reducer, Zp):
    """[(gen, ZeroCheck)] for m_Z∘(S at s_pos)∘m(g) − ε(g)·1 over the generators of m's domain."""
    out = []
    skipped = 0
    for g, img in sorted(m.images.items()):
        name = m.domain.alphabet.names[g]
        try:
            t = apply_morphism(S, img, s_pos, red)
        except KeyError:
            skipped += 1
            continue
        t = multiply_factors(t, 0, red)
        eps = counit.images.get(g)
        if eps is None:
            skipped += 1
            continue
        c = eps.terms.get((), 0)
        diff = t - TensorElem.scalar((Zp,), c)
        out.append((f"generator {name}", red.check_zero(diff)))
    return out, skipped


def check_hg4(sys: HopfGaloisSystem, cap=None, include_well_defined: bool = True) -> VerificationReport:
    red = _reducer(cap)
    rep = VerificationReport(f"HG4 {sys.name}", header=[ANTI_NOTE])
    if not sys.S.anti:
        rep.add(CheckResult("S-not-antimorphism", FAILED, red.cap,
                            detail="S must be supplied as an anti-morphism T -> Z^op"))
        return rep
    if include_well_defined:
        pre = rep.add(well_defined_check("S", sys.S, red))
        if pre.verdict != VERIFIED:
            rep.add(CheckResult("S-not-antimorphism", pre.verdict, red.cap,
                                detail="HG4 aborted: S is not a well-defined anti-morphism",
                                witness=pre.witness))
            return rep
    Zp = sys.Z.carrier
    for label, mor, eps, pos in (("HG4 left: m(1⊗S)γ = ε_A", sys.gamma, sys.A.counit, 1),
                                 ("HG4 right: m(S⊗1)δ = ε_B", sys.delta, sys.B.counit, 0)):
        t0 = time.perf_counter()
        pairs, skipped = _antipode_identity(mor, sys.S, eps, pos, red, Zp)
        res = from_zero_checks(label, red.cap, pairs)
        if skipped:
            res.detail = (res.detail + "; " if res.detail else "") + \
                f"{skipped} generator(s) beyond the truncation skipped"
        res.seconds = time.perf_counter() - t0
        rep.add(res)
    return rep


# ---------------------------------------------------------------------------
# Galois maps

def galois_kl(sys: HopfGaloisSystem, t: TensorElem, reducer: Reducer | None = None) -> TensorElem:
    """κ_l = (1_A⊗m_Z)(α⊗1_Z) on Z⊗Z."""
    return multiply_factors(apply_morphism(sys.Z.alpha, t, 0, reducer), 1, reducer)


def galois_kr(sys: HopfGaloisSystem, t: TensorElem, reducer: Reducer | None = None) -> TensorElem:
    """κ_r = (m_Z⊗1_B)(1_Z⊗β) on Z⊗Z."""
    return multiply_factors(apply_morphism(sys.Z.beta, t, 1, reducer), 0, reducer)


def galois_eta_l(sys: HopfGaloisSystem, t: TensorElem, reducer: Reducer | None = None) -> TensorElem:
    """η_l = (1_Z⊗m_Z)(1_Z⊗S⊗1_Z)(γ⊗1_Z) on A⊗Z."""
    u = apply_morphism(sys.gamma, t, 0, reducer)
    u = apply_morphism(sys.S, u, 1, reducer)
    return multiply_factors(u, 1, reducer)


def galois_eta_r(sys: HopfGaloisSystem, t: TensorElem, reducer: Reducer | None = None) -> TensorElem:
    """η_r = (m_Z⊗1_Z)(1_Z⊗S⊗1_Z)(1_Z⊗δ) on Z⊗B."""
    u = apply_morphism(sys.delta, t, 1, reducer)
    u = apply_morphism(sys.S, u, 1, reducer)
    return multiply_factors(u, 0, reducer)


def spanning_words(pres, red: Reducer, max_len: int, mode: str = "standard"):
    """Words spanning the degree <= max_len part of the quotient.

    ``standard``: words that are not leading words of the ideal basis (each
    word of length <= max_len reduces to a combination of these).
    ``all``: every word.  Both give the same verdicts by linearity.
    """
    from .ncalg.ideal import words_up_to
    if mode == "all":
        return list(words_up_to(pres.ngens(), max_len))
    b = red.basis(pres)
    if b is None:
        return list(words_up_to(pres.ngens(), max_len))
    return b.standard_words(min(max_len, b.cap))


def check_galois_inverses(sys: HopfGaloisSystem, cap=None, arg_degree: int | None = None,
                          mode: str = "standard", workers: int = 1) -> VerificationReport:
    red = _reducer(cap)
    d0 = red.cap - 1 if arg_degree is None else arg_degree
    rep = VerificationReport(f"Galois inverses {sys.name}",
                             header=[GALOIS_NOTE + f" (argument degree <= {d0}, cap {red.cap})"])
    Zp, Ap, Bp = sys.Z.carrier, sys.A.carrier, sys.B.carrier
    zw = spanning_words(Zp, red, d0, mode)
    aw = spanning_words(Ap, red, d0, mode)
    bw = spanning_words(Bp, red, d0, mode)

    def pairs(P, Q, wp, wq):
        return [TensorElem._raw((P, Q), {(u, v): 1}) for u in wp for v in wq]

    def fmt(t):
        return t.format()

    tasks = [
        ("eta_l∘kappa_l = id on Z⊗Z", pairs(Zp, Zp, zw, zw),
         lambda t: galois_eta_l(sys, galois_kl(sys, t, red), red)),
        ("kappa_l∘eta_l = id on A⊗Z", pairs(Ap, Zp, aw, zw),
         lambda t: galois_kl(sys, galois_eta_l(sys, t, red), red)),
        ("eta_r∘kappa_r = id on Z⊗Z", pairs(Zp, Zp, zw, zw),
         lambda t: galois_eta_r(sys, galois_kr(sys, t, red), red)),
        ("kappa_r∘eta_r = id on Z⊗B", pairs(Zp, Bp, zw, bw),
         lambda t: galois_kr(sys, galois_eta_r(sys, t, red), red)),
    ]
    for label, args, fn in tasks:
        t0 = time.perf_counter()

        def one(t, fn=fn):
            try:
                return red.check_zero(fn(t) - red.nf(t))
            except KeyError:
                return None

        if workers > 1:
            with ThreadPoolExecutor(workers) as ex:
                results = list(ex.map(one, args))
        else:
            results = [one(t) for t in args]
        labelled = [(fmt(t), z) for t, z in zip(args, results) if z is not None]
        skipped = sum(1 for z in results if z is None)
        res = from_zero_checks(label, red.cap, labelled)
        if skipped:
            res.detail = (res.detail + "; " if res.detail else "") + \
                f"{skipped} argument(s) need levels beyond the truncation"
        res.seconds = time.perf_counter() - t0
        rep.add(res)
    return rep


def verify_system(sys: HopfGaloisSystem, cap=None, galois: bool = True, arg_degree=None,
                  mode: str = "standard", workers: int = 1) -> VerificationReport:
    """Well-definedness of the structure maps, HG1 to HG4, then the Galois inverses."""
    red = _reducer(cap)
    rep = VerificationReport(f"Hopf-Galois system {sys.name}", header=[ANTI_NOTE] + list(sys.notes),
                             assumptions=list(sys.assumptions))
    for nm, f in sys.structure_maps():
        rep.add(well_defined_check(nm, f, red))
    if rep.verdict != VERIFIED:
        rep.header.append("stopped: a structure map is not well defined at this cap")
        return rep
    for lab, H in (("A", sys.A), ("B", sys.B)):
        rep.extend(check_bialgebra(H, red, label=lab, include_well_defined=False))
    rep.extend(check_bicomodule(sys.Z, sys.A, sys.B, red, include_well_defined=False))
    rep.extend(check_hg3(sys, red))
    rep.extend(check_hg4(sys, red, include_well_defined=False))
    if galois:
        rep.extend(check_galois_inverses(sys, red, arg_degree, mode, workers))
    for ev in sys.evidence:
        rep.add(ev(red) if callable(ev) else ev)
    return rep


# ---------------------------------------------------------------------------
# structural equality (used by the session round trip)

def same_presentation(P, Q) -> bool:
    return P is Q or P.same_as(Q)


def same_morphism(f: AlgMorphism, g: AlgMorphism) -> bool:
    """Same domain, codomain factors, orientation and generator images."""
    if f.anti != g.anti or not same_presentation(f.domain, g.domain):
        return False
    if len(f.codomain) != len(g.codomain):
        return False
    if not all(same_presentation(a, b) for a, b in zip(f.codomain, g.codomain)):
        return False
    if set(f.images) != set(g.images):
        return False
    return all(f.images[k].terms == g.images[k].terms for k in f.images)


def same_system(s: HopfGaloisSystem, t: HopfGaloisSystem) -> bool:
    """Equal carriers, structure maps (including the antipodes of A and B) and assumptions."""
    carriers = ((s.A.carrier, t.A.carrier), (s.B.carrier, t.B.carrier),
                (s.Z.carrier, t.Z.carrier), (s.T, t.T))
    if not all(same_presentation(a, b) for a, b in carriers):
        return False
    for (_, f), (_, g) in zip(s.structure_maps(), t.structure_maps()):
        if not same_morphism(f, g):
            return False
    for a, b in ((s.A.antipode, t.A.antipode), (s.B.antipode, t.B.antipode)):
        if (a is None) != (b is None) or (a is not None and not same_morphism(a, b)):
            return False
    return list(s.assumptions) == list(t.assumptions)
