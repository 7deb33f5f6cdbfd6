import itertools
import random

import pytest

from hgw.exact import mpq, root_of_unity
from hgw.findim.algebra import AxiomError, FinDimAlgebra
from hgw.findim.cocycle import (ast_cocycle, deform_both, deform_left, deform_right, group_cocycle,
                                phi_map, trivial_cocycle)
from hgw.findim.groups import (COLUMN, ROW, CapacityError, PermGroup, build_function_algebra,
                               build_group_algebra_H, pi_morphism, x_generator)
from hgw.findim.represent import findim_representation_check
from hgw.findim.rmatrix import ASTMatrix, blockstar, build_Oqp, relations1_presentation, rmatrix
from hgw.findim.smn import (cocycle_closed_form_check, compare_with_function_algebra,
                            deformation_cross_check, deformation_data, deformed_relations_check,
                            phi_oracle, resolve_convention, x_images)
from hgw.report import VERIFIED
from oracles import close, embed, rmatrix_numeric


@pytest.mark.parametrize("i,m,want", [(1, 2, 1), (2, 2, 1), (3, 2, 2), (4, 2, 2), (5, 3, 2)])
def test_blockstar(i, m, want):
    assert blockstar(i, m) == want


# -- function algebras -----------------------------------------------------------------

def test_function_algebra_small_groups():
    A1 = build_function_algebra(PermGroup(1))
    assert A1.dim == 1 and A1.algebra.one() == {0: 1}
    G2 = PermGroup(2)
    A2 = build_function_algebra(G2)
    e, t = G2.identity, 1 - G2.identity
    assert A2.delta({e: mpq(1)}) == {(e, e): 1, (t, t): 1}


def test_function_algebra_s4_axioms():
    A = build_function_algebra(PermGroup(4))
    assert A.dim == 24
    assert all(c.ok for c in A.check_all())


@pytest.mark.parametrize("conv", [ROW, COLUMN])
def test_x_generator_orthogonality(conv):
    G = PermGroup(4)
    A = build_function_algebra(G).algebra
    for i in range(1, 5):
        s = {}
        for l in range(1, 5):
            for k, c in x_generator(G, i, l, conv).items():
                s[k] = s.get(k, 0) + c
        assert s == A.one()
        for j, k in itertools.product(range(1, 5), repeat=2):
            prod = A.mul(x_generator(G, i, j, conv), x_generator(G, i, k, conv))
            assert prod == (x_generator(G, i, j, conv) if j == k else {})


def test_permutation_group_capacity():
    with pytest.raises(CapacityError):
        PermGroup(6)


def test_nonassociative_table_is_refused():
    mult = {(0, 0): {0: mpq(1)}, (0, 1): {1: mpq(1)}, (1, 0): {0: mpq(1)}, (1, 1): {0: mpq(1)}}
    with pytest.raises(AxiomError):
        FinDimAlgebra("bad", ["a", "b"], mult, {0: mpq(1)})


# -- the group H and its cocycle ----------------------------------------------------------

def test_group_algebra_H():
    assert build_group_algebra_H(2, 1).bialgebra.dim == 2
    H = build_group_algebra_H(2, 2)
    assert H.bialgebra.dim == 4
    G = PermGroup(4)
    assert G.index[H.embedding[H.t(1)]] == G.from_cycle([1, 2])
    assert G.index[H.embedding[H.t(2)]] == G.from_cycle([3, 4])


def test_ast_cocycle_values():
    p = ASTMatrix.from_upper(2, 2, {(1, 2): 1})
    H = build_group_algebra_H(2, 2)
    s = ast_cocycle(H, p)
    t1, t2 = H.t(1), H.t(2)
    assert s[t1][t1] == 1 and s[t2][t2] == 1 and s[t2][t1] == 1
    assert s[t1][t2] == p.entry(1, 2) == -1
    t12 = H.element((1, 1))
    assert s[t12][t2] == p.entry(1, 2)


def test_ast_cocycle_order_three():
    p = ASTMatrix.from_upper(3, 2, {(1, 2): 1})
    H = build_group_algebra_H(3, 2)
    s = ast_cocycle(H, p)
    assert s[H.t(1)][H.t(2)] == root_of_unity(3, 1)
    assert s[H.element((2, 0))][H.element((0, 2))] == root_of_unity(3, 4)
    c = group_cocycle(H, s)
    assert all(ch.ok for ch in c.check_all())


def test_pi_values():
    pi = pi_morphism(2, 2)
    assert pi.ok
    H = pi.H
    one_H = H.bialgebra.algebra.one()
    for i in range(1, 5):
        row = {}
        for l in range(1, 5):
            for k, c in pi.x_images[(i, l)].items():
                row[k] = row.get(k, 0) + c
        row = {k: c for k, c in row.items() if c}
        assert row == one_H
    for i, j in itertools.product(range(1, 5), repeat=2):
        if blockstar(i, 2) != blockstar(j, 2):
            assert pi.x_images[(i, j)] == {}


def test_pullback_is_normalized():
    d = deformation_data(ASTMatrix.from_upper(2, 2, {(1, 2): 1}))
    A, c = d.A, d.cocycle
    one = A.algebra.one()
    for a in range(A.dim):
        assert c.value(one, {a: 1}) == A.counit[a]
        assert c.value({a: 1}, one) == A.counit[a]
    assert all(ch.ok for ch in d.checks)


def test_trivial_cocycle_leaves_algebra_unchanged():
    A = build_function_algebra(PermGroup(3))
    c = trivial_cocycle(A)
    assert deform_left(A, c).mult == A.algebra.mult
    assert deform_right(A, c).mult == A.algebra.mult
    assert deform_both(A, c).algebra.mult == A.algebra.mult


def test_closed_form_on_all_generator_pairs():
    for p in (ASTMatrix.from_upper(2, 2, {(1, 2): 1}), ASTMatrix.trivial(2, 2)):
        c = cocycle_closed_form_check(p)
        assert c.ok and c.count == 256


def test_phi_map_matches_group_oracle():
    d = deformation_data(ASTMatrix.from_upper(2, 2, {(1, 2): 1}))
    assert phi_map(d.A, d.cocycle) == phi_oracle(d.G, d.cocycle)


# -- the R-matrix --------------------------------------------------------------------------

def random_ast(rng):
    m = rng.randint(2, 3)
    n = rng.randint(1, 3)
    upper = {(i, j): rng.randrange(m) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    return ASTMatrix.from_upper(m, n, upper)


def test_rmatrix_symmetry_random():
    rng = random.Random(20240611)
    for _ in range(100):
        assert rmatrix(random_ast(rng)).check_symmetry() is None


def test_rmatrix_matches_numeric_oracle():
    rng = random.Random(7)
    for _ in range(5):
        p = random_ast(rng)
        R = rmatrix(p)
        N = p.m * p.n
        for i, j, l, k in itertools.product(range(1, N + 1), repeat=4):
            assert close(embed(R(i, j, l, k), p.m), rmatrix_numeric(p.m, p.n, p.upper(), i, j, l, k))


@pytest.mark.parametrize("m,n", [(2, 1), (2, 2), (3, 1), (3, 2), (2, 3)])
def test_rmatrix_at_trivial_p(m, n):
    R = rmatrix(ASTMatrix.trivial(m, n))
    N = m * n
    for i, j, l, k in itertools.product(range(1, N + 1), repeat=4):
        assert R(i, j, l, k) == (m * m if (i == k and j == l) else 0)


def test_rmatrix_block_support():
    p = ASTMatrix.from_upper(2, 2, {(1, 2): 1})
    R = rmatrix(p)
    for i, j, l, k in itertools.product(range(1, 5), repeat=4):
        if blockstar(i, 2) != blockstar(k, 2) or blockstar(j, 2) != blockstar(l, 2):
            assert R(i, j, l, k) == 0


def test_ast_matrix_validation():
    p = ASTMatrix.from_upper(3, 3, {(1, 2): 1, (2, 3): 2})
    assert p.entry(2, 1) == root_of_unity(3, -1)
    assert p.entry(1, 1) == 1
    assert p.label() != ASTMatrix.trivial(3, 3).label()


# -- presentations and representations --------------------------------------------------------

def test_oqp_relation_counts():
    p = ASTMatrix.from_upper(2, 2, {(1, 2): 1})
    P = build_Oqp(p, p)
    N = 4
    assert P.meta["relations1_count"] == 2 * N ** 3 + 2 * N
    assert P.meta["raw_relation_count"] == 2 * N ** 3 + 2 * N + N ** 4
    assert len(P.relations) <= P.meta["raw_relation_count"]
    assert P.ngens() == N * N and P.field.order == 2
    # p = q is one presentation shared by A, B, Z, T
    assert build_Oqp(p, p) is P


def test_relations_presentation_name():
    assert relations1_presentation(4).name == "orthogonality[4]"


def test_deformed_relations_witness():
    r = deformed_relations_check(ASTMatrix.from_upper(2, 2, {(1, 2): 1}))
    assert r.verified and r.nonzero


@pytest.mark.parametrize("N", [2, 3, 4])
def test_undeformed_function_algebra_is_a_representation(N):
    one = ASTMatrix.trivial(N, 1)
    G = PermGroup(N)
    r = findim_representation_check(build_Oqp(one, one), x_images(G), build_function_algebra(G).algebra)
    assert r.verified and r.nonzero


def test_wrong_deformation_is_caught():
    p = ASTMatrix.from_upper(2, 2, {(1, 2): 1})
    one = ASTMatrix.trivial(2, 2)
    d = deformation_data(p)
    pres = build_Oqp(p, one)
    for target in (d.A.algebra, deform_right(d.A, d.cocycle, check=False)):
        r = findim_representation_check(pres, x_images(d.G), target)
        assert not r.verified and not r.nonzero
        assert r.bad_relation is not None and r.relation


def test_convention_resolution():
    res = resolve_convention()
    assert res["chosen"] == ROW
    assert all(res[ROW].values())


@pytest.mark.parametrize("N", [2, 3, 4])
def test_trivial_parameters_match_function_algebra(N):
    assert all(c.ok for c in compare_with_function_algebra(N))


def test_cross_check_trivial_cocycle():
    p = ASTMatrix.trivial(2, 2)
    rep = deformation_cross_check(p)
    assert rep.verdict == VERIFIED
    names = [c.name for c in rep.checks]
    assert any(n.startswith("HG4 left chain") for n in names)
    assert any(n.startswith("HG4 right chain") for n in names)


def test_cross_check_with_cocycle_is_exhaustive():
    rep = deformation_cross_check(ASTMatrix.from_upper(2, 2, {(1, 2): 1}))
    assert rep.verdict == VERIFIED
    assert rep.get("φ is an anti-morphism _σA → A_σ̄").count == 24 * 24
