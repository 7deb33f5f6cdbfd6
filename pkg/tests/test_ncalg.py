import pytest
from hypothesis import given
from hypothesis import strategies as st

from hgw.catalog import FieldMatrix, bef_hopf, build_BEF
from hgw.catalog.bef import x_matrix
from hgw.exact import mpq
from hgw.findim.smn import smn_bialgebra
from hgw.ncalg.ideal import (CapacityError, DegreeCapError, Reducer, Verdict, ideal_basis,
                             is_zero_mod, normal_form)
from hgw.ncalg.matrix import NcMatrix, ShapeError, mat_mul, mat_scalar, mat_transpose
from hgw.ncalg.morphism import (AlgMorphism, DomainMismatch, apply_morphism, compose,
                                identity_morphism, morphism_well_defined, morphisms_equal)
from hgw.ncalg.poly import NcPoly, TensorElem, poly_mul, tensor_mul
from hgw.ncalg.presentation import Presentation, free_algebra, x_name
from oracles import in_truncated_ideal, rank, truncated_ideal_rows

FREE = free_algebra("F", ["x11", "x12", "x21", "x22"])
x11, x12, x21, x22 = FREE.gens()


def words(P, *names):
    return P.alphabet.word(*names)


# -- polynomials and tensors --------------------------------------------------------

def test_poly_mul_examples():
    assert poly_mul(x11, x12).terms == {words(FREE, "x11", "x12"): 1}
    assert poly_mul(x11 + x12, FREE.one()) == x11 + x12
    got = poly_mul(x11 - x12, x11 + x12)
    want = x11 * x11 + x11 * x12 - x12 * x11 - x12 * x12
    assert got == want and len(got.terms) == 4


def test_tensor_mul_examples():
    P = free_algebra("P", ["x", "y", "z", "w", "a", "b"])
    fac = (P, P)

    def s(u, v):
        return TensorElem.simple(fac, [words(P, *u), words(P, *v)])

    assert tensor_mul(s(["x"], []), s([], ["y"])) == s(["x"], ["y"])
    t = s(["x", "y"], ["z"]) + s(["w"], [])
    assert tensor_mul(TensorElem.scalar(fac, 1), t) == t
    got = tensor_mul(s(["x"], ["y"]) + s(["a"], ["b"]), s(["z"], ["w"]))
    assert got == s(["x", "z"], ["y", "w"]) + s(["a", "z"], ["b", "w"])


def test_tensor_factor_mismatch():
    P, Q = free_algebra("P", ["x"]), free_algebra("Q", ["x"])
    with pytest.raises(ValueError):
        TensorElem.scalar((P,), 1) + TensorElem.scalar((Q,), 1)


# -- ideal bases -----------------------------------------------------------------------

def test_free_algebra_has_empty_basis():
    for D in (1, 2, 3):
        assert ideal_basis(FREE, D).dimension == 0


def test_single_relation_basis():
    P0 = free_algebra("a", ["a"])
    a = P0.gen("a")
    P = Presentation("a2", P0.alphabet, [a * a - 1])
    B = ideal_basis(P, 2)
    assert B.rows() == [a * a - 1]


def test_bef_identity_basis_dimension_matches_dense_oracle(I2):
    P = build_BEF(I2, I2)
    B = ideal_basis(P, 3)
    rows = truncated_ideal_rows(P.relations, P.ngens(), 3)
    assert sum(4 ** k for k in range(4)) == 85
    assert B.dimension == rank(rows)


def test_basis_dimension_on_other_presentations():
    # O_p(S_2) (2x2 generators, rational) and a cyclic group algebra
    from hgw.findim.rmatrix import ASTMatrix, build_Oqp
    from hgw.group_algebras import cyclic_group_presentation
    for P, D in ((build_Oqp(ASTMatrix.trivial(2, 1), ASTMatrix.trivial(2, 1)), 3),
                 (cyclic_group_presentation(3), 5)):
        assert ideal_basis(P, D).dimension == rank(truncated_ideal_rows(P.relations, P.ngens(), D))


def test_cap_below_relation_degree():
    P = build_BEF(FieldMatrix.identity(2), FieldMatrix.identity(2))
    with pytest.raises(DegreeCapError):
        ideal_basis(P, 1)


def test_capacity_limit_is_explicit():
    P = build_BEF(FieldMatrix.identity(2), FieldMatrix.identity(2))
    with pytest.raises(CapacityError):
        ideal_basis(P, 3, capacity=50)


# -- normal forms ------------------------------------------------------------------------

def test_relations_reduce_to_zero(I2):
    P = build_BEF(I2, I2)
    B = ideal_basis(P, 3)
    for r in P.relations:
        assert normal_form(P.element(r), [B]).is_zero()


def test_normal_form_of_unit(I2):
    P = build_BEF(I2, I2)
    B = ideal_basis(P, 3)
    one = TensorElem.scalar((P, P), 1)
    assert normal_form(one, [B, B]) == one


def test_orthogonality_sum_reduces_to_one(I2):
    P = build_BEF(I2, I2)
    g = P.gen
    t = P.element(g("x11") * g("x11") + g("x21") * g("x21"))
    assert normal_form(t, [ideal_basis(P, 3)]) == P.element(P.one())
    assert in_truncated_ideal((g("x11") * g("x11") + g("x21") * g("x21") - 1).terms,
                              P.relations, P.ngens(), 2)


def test_is_zero_mod_examples(I2):
    P = build_BEF(I2, I2)
    assert is_zero_mod(TensorElem.scalar((P,), 0), 3).verdict is Verdict.VERIFIED
    z = is_zero_mod(TensorElem.scalar((P,), 1), 3)
    assert z.verdict is Verdict.NONZERO and z.witness is not None


def test_is_zero_mod_inconclusive_below_relation_degree(I2):
    P = build_BEF(I2, I2)
    z = is_zero_mod(P.element(P.gen("x11")), 1)
    assert z.verdict is Verdict.INCONCLUSIVE
    assert "below relation degree" in z.reason


def test_hef_to_bef_relation_image_vanishes():
    from hgw.catalog import F_q, F_q_symmetrizer, hef_to_bef
    Fq, G = F_q(2), F_q_symmetrizer(2)
    f = hef_to_bef(Fq, Fq, G, G)
    # the relations ᵗv u - I of H(E,F) are the third block of entries
    n = 2
    block = f.domain.relations[2 * n * n:3 * n * n]
    for r in block:
        assert is_zero_mod(f(r), 3).verdict is Verdict.VERIFIED


# -- morphisms ------------------------------------------------------------------------------

def test_apply_identity():
    t = FREE.element(x11 * x12 - 3 * x21)
    assert apply_morphism(identity_morphism(FREE), t) == t


def test_apply_single_generator_morphism():
    X = free_algebra("X", ["x"])
    Y = free_algebra("Y", ["y"])
    f = AlgMorphism("f", X, (Y,), {"x": Y.gen("y")})
    x, y = X.gen("x"), Y.gen("y")
    assert f(x * x) == Y.element(y * y)


def test_apply_anti_morphism_reverses():
    X = free_algebra("X", ["x1", "x2"])
    Y = free_algebra("Y", ["y1", "y2"])
    f = AlgMorphism("f", X, (Y,), {"x1": Y.gen("y1"), "x2": Y.gen("y2")}, anti=True)
    assert f(X.gen("x1") * X.gen("x2")) == Y.element(Y.gen("y2") * Y.gen("y1"))


def test_apply_at_wrong_factor_is_refused():
    X = free_algebra("X", ["x"])
    with pytest.raises(DomainMismatch):
        apply_morphism(identity_morphism(X), TensorElem.scalar((FREE,), 1))


def test_identity_is_well_defined(I2):
    wd = morphism_well_defined(identity_morphism(build_BEF(I2, I2)), 2)
    assert wd.verdict is Verdict.VERIFIED and len(wd.checks) == 8


def test_bef_phi_identity_well_defined_at_two(I2):
    from hgw.catalog import bef_phi
    assert morphism_well_defined(bef_phi(I2, I2), 2).verdict is Verdict.VERIFIED


def corrupted_phi(E, F):
    """φ(x) = ᵗx, dropping both matrix factors."""
    Z, T = build_BEF(E, F), build_BEF(F, E)
    m, n = E.shape[0], F.shape[0]
    img = mat_transpose(x_matrix(Z, m, n))
    return AlgMorphism("bad phi", T, (Z,), {x_name(i, j): img[i - 1, j - 1]
                                            for i in range(1, n + 1) for j in range(1, m + 1)},
                       anti=True)


def test_corrupted_phi_has_witness_outside_ideal():
    E = FieldMatrix([[1, 2], [0, 1]])
    F = FieldMatrix([[1, 0], [-2, 1]])
    from hgw.catalog import trace_invariant
    assert trace_invariant(E) == trace_invariant(F)
    wd = morphism_well_defined(corrupted_phi(E, F), 2)
    assert wd.verdict is Verdict.NONZERO
    bad = wd.first_bad()
    w = bad.result.witness
    assert not w.is_zero()
    Z = build_BEF(E, F)
    # the reduced witness differs from the image by an ideal element and is itself not in I_2
    assert not in_truncated_ideal(w.to_poly().terms, Z.relations, Z.ngens(), 2)
    img = corrupted_phi(E, F)(bad.relation)
    assert in_truncated_ideal((img.to_poly() - w.to_poly()).terms, Z.relations, Z.ngens(), 2)


def test_coassociativity_on_Op_generators(p12, red3):
    H = smn_bialgebra(p12)
    D = H.delta
    left, right = compose(D, D, 0), compose(D, D, 1)
    # expanded without reduction: both sides are Σ_{k,l} x_ik ⊗ x_kl ⊗ x_lj
    assert all(left.images[g] == right.images[g] for g in left.images)
    assert all(e.result.ok for e in morphisms_equal(left, right, red3))


def test_syntactically_equal_morphisms():
    f = identity_morphism(FREE)
    assert all(e.result.ok for e in morphisms_equal(f, f, 2))


def flipped(D: AlgMorphism) -> AlgMorphism:
    P, Q = D.codomain
    assert P is Q
    imgs = {g: TensorElem(D.codomain, {(b, a): c for (a, b), c in t.terms.items()})
            for g, t in D.images.items()}
    return AlgMorphism("flipped", D.domain, D.codomain, imgs)


def test_flipped_coproduct_is_different(I2):
    H = bef_hopf(I2)
    eq = morphisms_equal(H.delta, flipped(H.delta), 3)
    bad = [e for e in eq if e.result.verdict is Verdict.NONZERO]
    assert bad and all(not e.result.witness.is_zero() for e in bad)


def test_morphism_comparison_needs_same_orientation(I2):
    from hgw.catalog import bef_phi
    phi = bef_phi(I2, I2)
    with pytest.raises(DomainMismatch):
        morphisms_equal(phi, identity_morphism(phi.domain), 2)


# -- matrices ------------------------------------------------------------------------------

def test_matrix_identities():
    A = NcMatrix.generators(FREE, 2, 2)
    I = [[1, 0], [0, 1]]
    assert mat_mul(I, A).rows == A.rows
    assert mat_mul(A, I).rows == A.rows
    assert mat_transpose(mat_transpose(A)).rows == A.rows
    assert mat_scalar(mpq(1), A).rows == A.rows
    assert mat_mul([[1, 2], [3, 4]], [[0, 1], [1, 0]]) == [[2, 1], [4, 3]]


def test_matrix_shape_errors():
    A = NcMatrix.generators(FREE, 2, 2)
    with pytest.raises(ShapeError):
        mat_mul([[1, 2, 3]], A)


def test_matrix_product_entries():
    A = NcMatrix.generators(FREE, 2, 2)
    P = mat_mul(A, A)
    assert P[0, 1] == FREE.element(x11 * x12 + x12 * x22)


# -- properties --------------------------------------------------------------------------

BEF_I2 = build_BEF(FieldMatrix.identity(2), FieldMatrix.identity(2))
GENS = list(BEF_I2.generators)


@st.composite
def polys(draw, P=BEF_I2, max_len=3, max_terms=4):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        w = tuple(draw(st.lists(st.integers(0, P.ngens() - 1), max_size=max_len)))
        terms[w] = mpq(draw(st.integers(-3, 3)), draw(st.integers(1, 3)))
    return NcPoly(P.alphabet, terms)


@given(polys(), polys(), polys())
def test_poly_mul_associative(a, b, c):
    assert poly_mul(poly_mul(a, b), c) == poly_mul(a, poly_mul(b, c))


@given(polys())
def test_normal_form_idempotent(a):
    B = ideal_basis(BEF_I2, 3)
    once = B.normal_form(a)
    assert B.normal_form(once) == once


@given(polys(max_len=1), polys(max_len=2))
def test_normal_form_multiplicative_within_cap(a, b):
    B = ideal_basis(BEF_I2, 3)
    assert B.normal_form(a * b) == B.normal_form(B.normal_form(a) * B.normal_form(b))


@given(polys(max_len=2), polys(max_len=2))
def test_morphisms_are_multiplicative(a, b):
    H = bef_hopf(FieldMatrix.identity(2))
    D, S = H.delta, H.antipode
    assert D(a * b) == D(a) * D(b)
    assert S(a * b) == S(b) * S(a)


@given(polys(max_len=2))
def test_reduced_application_agrees(a):
    red = Reducer(3)
    H = bef_hopf(FieldMatrix.identity(2))
    assert red.nf(H.delta(a, red)) == red.nf(H.delta(a))
