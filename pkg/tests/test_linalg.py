import random
from fractions import Fraction

import pytest

from hopfpar.linalg import (
    LinearMap, Subspace, Tensor, contract, flip, identity, image, kernel,
    perm_map, quotient, rank, rref, scalar, solve, tensor_product, twist,
)


def rand_map(rng, n, m, span=4):
    return LinearMap.from_rows(
        [[Fraction(rng.randint(-span, span), rng.randint(1, 3))
          for _ in range(m)] for _ in range(n)])


def test_scalar_rejects_floats():
    with pytest.raises(TypeError):
        scalar(0.5)
    assert scalar("3/4") == Fraction(3, 4)


def test_kernel_zero_map_is_full():
    f = LinearMap.zeros(3, 3)
    assert kernel(f) == Subspace.full(3)


def test_kernel_identity_is_zero():
    assert kernel(identity(4)) == Subspace.zero(4)


def test_kernel_hand_row_reduction():
    # oracle: [[1,1],[2,2]] row-reduces to [[1,1]], kernel spanned by (1,-1)
    f = LinearMap.from_rows([[1, 1], [2, 2]])
    k = kernel(f)
    assert k.dim == 1
    assert k.contains([1, -1])


def test_image_hand_row_reduction():
    f = LinearMap.from_rows([[1, 1], [2, 2]])
    im = image(f)
    assert im.dim == 1
    assert im.contains([1, 2])


def test_rank_nullity_random():
    rng = random.Random(11)
    for _ in range(60):
        n, m = rng.randint(1, 5), rng.randint(1, 5)
        f = rand_map(rng, n, m)
        assert rank(f) + kernel(f).dim == m


def test_quotient_zero_subspace():
    qdim, proj, sect = quotient(3, Subspace.zero(3))
    assert qdim == 3
    assert proj == identity(3)


def test_quotient_coordinate():
    qdim, proj, sect = quotient(2, Subspace.span(2, [[1, 0]]))
    assert qdim == 1
    assert proj.compose(sect) == identity(1)


def test_quotient_properties_random():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(1, 6)
        k = rng.randint(0, n)
        W = Subspace.span(n, [[Fraction(rng.randint(-3, 3)) for _ in range(n)]
                              for _ in range(k)])
        qdim, proj, sect = quotient(n, W)
        assert qdim == n - W.dim
        assert proj.compose(sect) == identity(qdim)
        assert kernel(proj) == W


def test_subspace_equality_is_canonical():
    a = Subspace.span(3, [[1, 1, 0], [0, 0, 1]])
    b = Subspace.span(3, [[2, 2, 2], [0, 0, -5]])
    assert a == b
    assert a.basis == b.basis


def test_tensor_product_identities():
    assert tensor_product(identity(2), identity(3)) == identity(6)


def test_twist_squares_to_identity():
    t = twist(2, 2)
    assert t.compose(t) == identity(4)


def test_twist_entries():
    t = twist(2, 3)
    v = [0, 1, 0, 0, 0, 0]  # e_0 ⊗ f_1
    assert t.apply(v) == [0, 0, 1, 0, 0, 0]  # f_1 ⊗ e_0


def test_contract_evaluation():
    # contract e_i ⊗ e^j over the pair = delta_ij
    for i in range(3):
        for j in range(3):
            t = Tensor.zeros((3, 3))
            t[i, j] = 1
            c = contract(t, (0, 1))
            assert c.data[0] == (1 if i == j else 0)


def test_flip_involution():
    t = Tensor.from_nested([[1, 2], [3, 4]])
    assert flip(flip(t, (0, 1)), (0, 1)) == t


def test_perm_map_three_factors():
    p = perm_map([2, 2, 2], (2, 0, 1))
    # basis vector e_a ⊗ e_b ⊗ e_c maps to e_c ⊗ e_a ⊗ e_b
    v = [0] * 8
    v[0b011] = 1  # (a,b,c) = (0,1,1)
    out = p.apply(v)
    assert out[0b101] == 1 and sum(map(abs, out)) == 1


def test_solve_consistent_and_inconsistent():
    f = LinearMap.from_rows([[1, 1], [2, 2]])
    x = solve(f, [3, 6])
    assert x is not None and f.apply(x) == [Fraction(3), Fraction(6)]
    assert solve(f, [3, 5]) is None


def test_rref_canonical_form():
    pivots, rows = rref([[0, 2, 4], [1, 1, 1]])
    assert pivots == [0, 1]
    assert rows == [[1, 0, -1], [0, 1, 2]]


def test_intersection_and_sum():
    a = Subspace.span(3, [[1, 0, 0], [0, 1, 0]])
    b = Subspace.span(3, [[0, 1, 0], [0, 0, 1]])
    assert a.intersection(b) == Subspace.span(3, [[0, 1, 0]])
    assert a.sum_with(b) == Subspace.full(3)


def test_tensor_transpose_matches_manual():
    t = Tensor.from_nested([[[1, 2], [3, 4]], [[5, 6], [7, 8]]])
    u = t.transpose((1, 0, 2))
    for i in range(2):
        for j in range(2):
            for k in range(2):
                assert u[i, j, k] == t[j, i, k]
