import random
from fractions import Fraction

import pytest

from hopfpar.linalg import LinearMap, Subspace, rank
from hopfpar.pairings import (
    Pairing, adjoint, is_left_nondegenerate, is_nondegenerate,
    is_right_nondegenerate, perp, perp_left, reduced_pairing,
    subcoalgebra_check, tensor_pairing, transport_algebra_structure,
    verify_ideal,
)
from hopfpar.structures import dual_hopf, kc2, verify_algebra


def test_identity_form_nondegenerate():
    P = Pairing.evaluation(3)
    assert is_left_nondegenerate(P) and is_right_nondegenerate(P)


def test_zero_form_degenerate():
    P = Pairing.from_matrix([[0, 0], [0, 0]])
    assert not is_left_nondegenerate(P)
    assert not is_right_nondegenerate(P)


def test_rank_one_form_degenerate_both_sides():
    P = Pairing.from_matrix([[1, 0], [1, 0]])
    assert not is_left_nondegenerate(P)
    assert not is_right_nondegenerate(P)


def test_adjoint_of_identity_is_identity():
    P = Pairing.evaluation(3)
    g = adjoint(P, P, LinearMap.identity(3))
    assert g == LinearMap.identity(3)


def test_adjoint_under_evaluation_is_transpose():
    rng = random.Random(3)
    P = Pairing.evaluation(3)
    Q = Pairing.evaluation(2)
    f = LinearMap.from_rows([[rng.randint(-4, 4) for _ in range(3)]
                             for _ in range(2)])
    g = adjoint(P, Q, f)
    assert g == f.transpose()


def test_adjoint_uniqueness_when_right_nondegenerate():
    # Lemma: adjoints are unique when the source pairing separates the right side
    P = Pairing.from_matrix([[1, 0], [0, 2]])
    Q = Pairing.evaluation(2)
    f = LinearMap.from_rows([[1, 2], [3, 4]])
    g1 = adjoint(P, Q, f)
    assert g1 is not None
    # any solution of F_P g = fᵀ F_Q is unique since F_P has full column rank
    assert rank(P.form_map()) == 2


def test_adjoint_of_kc2_antipode_is_dual_antipode():
    H = kc2()
    D = dual_hopf(H)
    # evaluation pairing between H and H*
    P = Pairing.evaluation(2)
    g = adjoint(P, P, H.antipode)
    assert g == D.antipode


def test_perp_trivial_cases():
    P = Pairing.evaluation(3)
    assert perp(P, Subspace.full(3)) == Subspace.zero(3)
    assert perp(P, Subspace.zero(3)) == Subspace.full(3)
    assert perp_left(P, Subspace.full(3)) == Subspace.zero(3)


def test_double_perp_for_nondegenerate_pairing():
    rng = random.Random(5)
    for _ in range(20):
        P = Pairing.evaluation(4)
        k = rng.randint(0, 4)
        W = Subspace.span(4, [[Fraction(rng.randint(-3, 3)) for _ in range(4)]
                              for _ in range(k)])
        again = perp_left(P, perp(P, W))
        assert again.contains_subspace(W)
        assert again == W  # nondegenerate: equality


def test_tensor_pairing_identity_and_rank():
    P = Pairing.evaluation(2)
    T = tensor_pairing(P, P)
    assert T.form_map() == LinearMap.identity(4)
    Q = Pairing.from_matrix([[1, 1], [0, 1]])
    T2 = tensor_pairing(Q, Q)
    assert rank(T2.form_map()) == 4
    Z = Pairing.from_matrix([[0, 0], [0, 0]])
    assert tensor_pairing(P, Z).form_map().is_zero()


def test_reduced_pairing_with_ideal():
    # pairing of (kC2)* against kC2 by evaluation; J = span{u_e - u_g} is an
    # ideal of kC2, J^perp = span{p_e + p_g} is the span of the counit.
    H = kc2()
    P = Pairing.evaluation(2)
    J = Subspace.span(2, [[1, -1]])
    ok, _ = verify_ideal(H.algebra, J)
    assert ok
    D = dual_hopf(H)
    reduced, Jperp, _, rep = reduced_pairing(P, J, algebra=H.algebra,
                                             coalgebra=D.coalgebra)
    assert rep.passed
    assert Jperp == Subspace.span(2, [[1, 1]])
    assert reduced.left_dim == 1 and reduced.right_dim == 1
    assert is_nondegenerate(reduced)


def test_reduced_pairing_rejects_non_ideal():
    H = kc2()
    P = Pairing.evaluation(2)
    NotIdeal = Subspace.span(2, [[1, 0]])  # not closed under u_g ·
    with pytest.raises(ValueError, match="ideal"):
        reduced_pairing(P, NotIdeal, algebra=H.algebra)


def test_subcoalgebra_check():
    H = kc2()
    assert subcoalgebra_check(H.coalgebra, Subspace.span(2, [[1, 0]]))
    assert not subcoalgebra_check(H.coalgebra, Subspace.span(2, [[1, 1]]))


def test_transport_coalgebra_to_algebra():
    # transporting kC2's coalgebra across the evaluation pairing gives the
    # dual algebra, which satisfies the algebra axioms
    H = kc2()
    P = Pairing.evaluation(2)
    A = transport_algebra_structure(P, H.coalgebra)
    assert verify_algebra(A).passed
    D = dual_hopf(H)
    assert A.mult == D.algebra.mult
    assert A.unit == D.algebra.unit
