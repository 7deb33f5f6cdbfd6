import pytest

from hgw.catalog import bef_hopf, build_bef_system
from hgw.findim.smn import smn_bialgebra
from hgw.group_algebras import (cyclic_group_hopf, group_algebra_system, laurent_hopf,
                                laurent_presentation)
from hgw.ncalg.ideal import Reducer
from hgw.ncalg.morphism import AlgMorphism
from hgw.ncalg.poly import TensorElem
from hgw.report import FAILED, INCONCLUSIVE, VERIFIED, VerificationReport
from hgw.system import (Bialgebra, BicomoduleAlgebra, check_bialgebra,
                        check_bicomodule, check_galois_inverses, check_hg3, check_hg4,
                        galois_eta_l, galois_eta_r, galois_kl, galois_kr, hopf_algebra_system,
                        same_system, verify_system)


def simple(P, *parts):
    return TensorElem.simple(tuple(P for _ in parts), [P.alphabet.word(*w) for w in parts])


# -- bialgebras -----------------------------------------------------------------------

def test_laurent_bialgebra():
    rep = check_bialgebra(laurent_hopf(), 3)
    assert rep.verdict == VERIFIED
    assert {c.name for c in rep.checks} >= {"coassociativity[k[Z]]", "left counit[k[Z]]"}


def test_Op_bialgebra_at_three(p12, red3):
    assert check_bialgebra(smn_bialgebra(p12), red3).verdict == VERIFIED


def test_zero_counit_fails_with_witness(I2, red3):
    H = bef_hopf(I2)
    zero = AlgMorphism("eps0", H.carrier, (), {g: 0 for g in H.carrier.generators})
    rep = check_bialgebra(Bialgebra(H.carrier, H.delta, zero, H.antipode), red3)
    assert rep.verdict == FAILED
    bad = rep.get("left counit[" + H.name + "]")
    assert bad.verdict == FAILED and bad.witness


def test_report_text_and_dict():
    rep = check_bialgebra(cyclic_group_hopf(2), 2)
    txt = rep.to_text(timing=False)
    assert "overall: verified" in txt
    d = rep.to_dict(timing=False)
    assert d["verdict"] == VERIFIED and all("seconds" not in c for c in d["checks"])


# -- bicomodules --------------------------------------------------------------------

def test_regular_bicomodule(I2, red3):
    H = bef_hopf(I2)
    Z = BicomoduleAlgebra(H.carrier, H.delta, H.delta)
    assert check_bicomodule(Z, H, H, red3).verdict == VERIFIED


def test_transposed_beta_breaks_compatibility(I2, red3):
    H = bef_hopf(I2)
    P = H.carrier
    # β(x_ij) = Σ_k x_kj ⊗ x_ik: indices transposed
    imgs = {}
    for i in (1, 2):
        for j in (1, 2):
            t = TensorElem.scalar((P, P), 0)
            for k in (1, 2):
                t = t + simple(P, [f"x{k}{j}"], [f"x{i}{k}"])
            imgs[f"x{i}{j}"] = t
    beta = AlgMorphism("beta'", P, (P, P), imgs)
    rep = check_bicomodule(BicomoduleAlgebra(P, H.delta, beta), H, H, red3,
                           include_well_defined=False)
    assert rep.get("alpha/beta compatibility").verdict == FAILED


# -- HG3 and HG4 ------------------------------------------------------------------------

def test_degenerate_hg3_is_coassociativity(red3):
    sys = group_algebra_system(3)
    rep = check_hg3(sys, red3)
    assert rep.verdict == VERIFIED and len(rep.checks) == 3


def test_bef_identity_hg3(I2, red3):
    assert check_hg3(build_bef_system(I2, I2), red3).verdict == VERIFIED


def test_grouplike_hg4(red3):
    assert check_hg4(group_algebra_system(None), red3).verdict == VERIFIED


def test_hef_identity_hg4(I2, red3):
    from hgw.catalog import build_hef_system
    assert check_hg4(build_hef_system(I2, I2), red3).verdict == VERIFIED


def test_hg4_requires_anti_morphism(red3):
    sys = group_algebra_system(2)
    S = sys.S
    sys.S = AlgMorphism("S", S.domain, S.codomain, S.images, anti=False)
    rep = check_hg4(sys, red3)
    assert rep.verdict == FAILED and rep.checks[0].name == "S-not-antimorphism"


# -- Galois maps -------------------------------------------------------------------------

def test_galois_maps_on_units(red3):
    sys = group_algebra_system(None)
    P = sys.Z.carrier
    one = TensorElem.scalar((P, P), 1)
    assert galois_kl(sys, one) == one
    assert galois_eta_l(sys, one) == one
    assert galois_kr(sys, one) == one
    assert galois_eta_r(sys, one) == one


def test_galois_maps_on_grouplike():
    sys = group_algebra_system(None)
    P = laurent_presentation()
    g1 = simple(P, ["g"], [])
    assert galois_kl(sys, g1) == simple(P, ["g"], ["g"])
    assert galois_eta_l(sys, g1) == simple(P, ["g"], ["h"])


def test_kappa_l_on_Op_generator(p12, red3):
    from hgw.findim.smn import build_smn_system
    sys = build_smn_system(p12, p12, evidence=False)
    Z, A = sys.Z.carrier, sys.A.carrier
    got = galois_kl(sys, simple(Z, ["x12"], []))
    want = TensorElem((A, Z), {((A.alphabet.index[f"x1{k}"],), (Z.alphabet.index[f"x{k}2"],)): 1
                               for k in range(1, 5)})
    assert got == want


def test_eta_inverts_kappa_on_Op_generator_pairs(p12, red3):
    from hgw.findim.smn import build_smn_system
    sys = build_smn_system(p12, p12, evidence=False)
    Z = sys.Z.carrier
    for a, b in (("x11", "x23"), ("x34", "x12"), ("x44", "x44")):
        t = simple(Z, [a], [b])
        assert red3.check_zero(galois_eta_l(sys, galois_kl(sys, t, red3), red3) - t).ok
        assert red3.check_zero(galois_eta_r(sys, galois_kr(sys, t, red3), red3) - t).ok


def test_kappa_l_matches_sweedler_expansion(I2):
    # degenerate case: κ_l(a⊗b) = Σ a1 ⊗ a2 b, expanded by hand from Δ on generators
    H = bef_hopf(I2)
    sys = hopf_algebra_system("B(I2)", H)
    P = H.carrier
    from hgw.ncalg.ideal import words_up_to
    from hgw.ncalg.poly import tensor_mul
    for u in words_up_to(P.ngens(), 2):
        du = TensorElem.scalar((P, P), 1)
        for g in u:
            du = tensor_mul(du, H.delta.images[g])
        for v in words_up_to(P.ngens(), 3 - len(u)):
            want = TensorElem((P, P), {(a1, a2 + v): c for (a1, a2), c in du.terms.items()})
            assert galois_kl(sys, TensorElem._raw((P, P), {(u, v): 1})) == want


def test_galois_inverses_degenerate():
    rep = check_galois_inverses(group_algebra_system(2), 3)
    assert rep.verdict == VERIFIED and len(rep.checks) == 4


def test_galois_inverses_bef_identity(I2, red3):
    rep = check_galois_inverses(build_bef_system(I2, I2), red3)
    assert rep.verdict == VERIFIED


def test_galois_modes_agree(I2):
    sys = build_bef_system(I2, I2)
    a = check_galois_inverses(sys, Reducer(3), 1, mode="standard")
    b = check_galois_inverses(sys, Reducer(3), 1, mode="all")
    assert a.verdict == b.verdict == VERIFIED
    assert sum(c.count for c in b.checks) >= sum(c.count for c in a.checks)


# -- full runs on small systems -----------------------------------------------------------

@pytest.mark.parametrize("order", [1, 2, 3, None])
def test_degenerate_systems(order):
    rep = verify_system(group_algebra_system(order), 3)
    assert rep.verdict == VERIFIED


def test_large_cyclic_order_is_inconclusive_not_wrong():
    rep = verify_system(group_algebra_system(5), 3)
    assert rep.verdict == INCONCLUSIVE
    assert all(c.verdict != FAILED for c in rep.checks)


def test_parallel_matches_serial(I2):
    sys = build_bef_system(I2, I2)
    a = verify_system(sys, Reducer(3), workers=1).to_dict(timing=False)
    b = verify_system(sys, Reducer(3), workers=4).to_dict(timing=False)
    assert a == b


def test_lazy_evidence_runs_at_verification(I2):
    sys = build_bef_system(I2, I2)
    assert callable(sys.evidence[0])
    rep = verify_system(sys, 2, galois=False)
    assert rep.checks[-1].name.startswith("nonzero:")


def test_same_system_detects_changes(I2):
    s, t = build_bef_system(I2, I2), build_bef_system(I2, I2)
    assert same_system(s, t)
    t.assumptions.append("extra")
    assert not same_system(s, t)


def test_report_merging():
    rep = VerificationReport("x")
    rep.extend(check_bialgebra(cyclic_group_hopf(2), 2))
    assert rep.ok and len(rep.checks) == 5
