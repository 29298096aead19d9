from fractions import Fraction

import pytest

from hopfpar.io import dumps, hopf_from_dict, hopf_to_dict, loads
from hopfpar.linalg import LinearMap, rank
from hopfpar.structures import (
    FinDimHopfAlgebra, Groupoid, algebra_characters, change_basis,
    coalgebra_grouplikes, comatrix_coalgebra, cyclic_group_table, dual_hopf,
    group_algebra, groupoid_coalgebra, h4_selfduality_isomorphism,
    is_hopf_morphism, kc2, pair_groupoid, sweedler_h4, trivial_hopf,
    validate_group_table, verify_coalgebra, verify_hopf,
)


def test_kc2_is_hopf():
    assert verify_hopf(kc2()).passed


def test_trivial_group_is_one_dim_hopf():
    H = trivial_hopf()
    assert H.dim == 1
    assert verify_hopf(H).passed


def test_c3_antipode_is_inversion_permutation():
    H = group_algebra(cyclic_group_table(3))
    assert verify_hopf(H).passed
    # S(u_1) = u_2, S(u_2) = u_1
    assert H.antipode.apply([0, 1, 0]) == [0, 0, 1]
    assert H.antipode.apply([0, 0, 1]) == [0, 1, 0]


def test_corrupted_antipode_fails_with_witness():
    H = kc2()
    bad = LinearMap.from_rows([[1, 1], [0, 1]])  # S(u_g) = u_e + u_g
    H2 = FinDimHopfAlgebra(H.algebra, H.coalgebra, bad)
    rep = verify_hopf(H2)
    assert not rep.passed
    fails = [c for c in rep.failures() if c.axiom_id.startswith("antipode")]
    assert fails
    # witness at the u_g basis column
    assert fails[0].witness is not None and fails[0].witness[0] == 1
    assert not fails[0].residual.is_zero()


def test_non_group_table_rejected_with_witness():
    with pytest.raises(ValueError, match="associative|identity|inverse"):
        validate_group_table([[0, 1], [1, 1]])


def test_sweedler_h4_passes_all_axioms():
    H = sweedler_h4()
    assert verify_hopf(H).passed


def test_sweedler_h4_relations():
    H = sweedler_h4()
    one, g, x, y = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    assert H.product(x, g) == [Fraction(0), Fraction(0), Fraction(0), Fraction(1)]
    assert H.product(g, x) == [Fraction(0), Fraction(0), Fraction(0), Fraction(-1)]
    assert H.product(g, g) == [Fraction(1), Fraction(0), Fraction(0), Fraction(0)]
    # Δ(g) = g⊗g
    dg = H.coalgebra.comult_of(g)
    expect = [Fraction(0)] * 16
    expect[1 * 4 + 1] = Fraction(1)
    assert dg == expect
    # S²(x) = -x and S⁴ = id, S⁻¹ = S³
    S = H.antipode
    assert (S @ S).apply(x) == [-c for c in map(Fraction, x)]
    S4 = S @ S @ S @ S
    assert S4 == LinearMap.identity(4)
    assert H.antipode_inverse == S @ S @ S


def test_dual_of_kc2_structure():
    D = dual_hopf(kc2())
    assert verify_hopf(D).passed
    # p_e · p_e = p_e
    pe = [1, 0]
    assert D.product(pe, pe) == [Fraction(1), Fraction(0)]
    # Δ*(p_e) = p_e⊗p_e + p_g⊗p_g
    assert D.coalgebra.comult_of(pe) == [Fraction(1), Fraction(0),
                                         Fraction(0), Fraction(1)]


def test_double_dual_is_identity_on_structure_constants():
    for H in (kc2(), sweedler_h4(), group_algebra(cyclic_group_table(3))):
        DD = dual_hopf(dual_hopf(H))
        assert DD.algebra.mult == H.algebra.mult
        assert DD.coalgebra.comult == H.coalgebra.comult
        assert DD.antipode == H.antipode


def test_h4_self_duality():
    H = sweedler_h4()
    phi, rep = h4_selfduality_isomorphism(H)
    assert rep.passed
    assert rank(phi) == 4
    # it is genuinely a Hopf morphism onto the dual
    assert is_hopf_morphism(H, dual_hopf(H), phi).passed


def test_comatrix_coalgebra_small():
    C1 = comatrix_coalgebra(1)
    assert C1.dim == 1 and verify_coalgebra(C1).passed
    C2 = comatrix_coalgebra(2)
    assert verify_coalgebra(C2).passed
    # Δ(e_12) = e_11⊗e_12 + e_12⊗e_22 with e_ij at index i*2+j
    d = C2.comult_of([0, 1, 0, 0])
    expect = [Fraction(0)] * 16
    expect[0 * 4 + 1] = Fraction(1)
    expect[1 * 4 + 3] = Fraction(1)
    assert d == expect


def test_groupoid_two_objects_iso_pair():
    # two objects, one invertible arrow between them (plus identities
    # and the inverse): 4 arrows, all grouplike
    G = pair_groupoid(2)
    assert G.n_arrows == 4
    C = groupoid_coalgebra(G)
    assert verify_coalgebra(C).passed
    for a in range(4):
        v = [Fraction(i == a) for i in range(4)]
        assert C.is_grouplike(v)


def test_malformed_groupoid_rejected():
    with pytest.raises(ValueError, match="identity|composable|composite"):
        Groupoid(1, [0, 0], [0, 0], {}, [0])


def test_group_algebra_basis_grouplike():
    H = group_algebra(cyclic_group_table(3))
    for g in range(3):
        v = [Fraction(i == g) for i in range(3)]
        assert H.coalgebra.is_grouplike(v)


def test_characters_of_kc2_dual_quotient_style_algebra():
    # dual of kC2 is the functions algebra; its characters are evaluation
    # at the two group elements
    D = dual_hopf(kc2())
    chars, full = algebra_characters(D.algebra)
    assert full
    assert sorted(map(tuple, chars)) == [(0, 1), (1, 0)]


def test_grouplikes_of_kc2():
    gls, full = coalgebra_grouplikes(kc2().coalgebra)
    assert full
    assert sorted(map(tuple, gls)) == [(0, 1), (1, 0)]


def test_change_basis_preserves_hopf():
    H = kc2()
    P = LinearMap.from_rows([[1, 1], [0, 1]])
    H2 = change_basis(H, P)
    assert verify_hopf(H2).passed
    # new first basis vector is u_e, i.e. still the unit
    assert H2.unit_vec == [Fraction(1), Fraction(0)]


def test_json_round_trip():
    for H in (kc2(), sweedler_h4()):
        text = dumps(hopf_to_dict(H))
        H2 = hopf_from_dict(loads(text))
        assert H2.algebra.mult == H.algebra.mult
        assert H2.coalgebra.comult == H.coalgebra.comult
        assert H2.antipode == H.antipode
        assert verify_hopf(H2).passed
        # byte determinism
        assert dumps(hopf_to_dict(H2)) == text
