"""Dual pairings between spaces carrying optional (co)algebra structure:
nondegeneracy rank tests, adjoint maps, annihilators, reduced pairings.

A Pairing is a plain bilinear form; (co)algebra structure is attached
contextually by the caller (reduced_pairing, transport checks) rather than
stored on the object.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import (
    LinearMap, Subspace, Tensor, kernel, quotient, rank, solve,
)
from .report import VerificationReport, check_true
from .structures import FinDimAlgebra, FinDimCoalgebra

ZERO = Fraction(0)
ONE = Fraction(1)


class Pairing:
    """Bilinear form ⟨-,-⟩: left ⊗ right -> k, form[i][j] = ⟨e_i, f_j⟩."""

    def __init__(self, left_dim, right_dim, form: Tensor):
        self.left_dim = int(left_dim)
        self.right_dim = int(right_dim)
        assert form.shape == (self.left_dim, self.right_dim)
        self.form = form

    @classmethod
    def from_matrix(cls, rows):
        t = Tensor.from_nested(rows)
        return cls(t.shape[0], t.shape[1], t)

    @classmethod
    def evaluation(cls, n):
        """⟨e_i, e^j⟩ = δ_ij (V paired with its dual basis)."""
        t = Tensor.zeros((n, n))
        for i in range(n):
            t[i, i] = ONE
        return cls(n, n, t)

    def value(self, v, w):
        acc = ZERO
        for i, a in enumerate(v):
            if not a:
                continue
            for j, b in enumerate(w):
                if b:
                    acc += a * self.form[i, j] * b
        return acc

    def form_map(self) -> LinearMap:
        """The form as a matrix left_dim x right_dim."""
        rows = [[self.form[i, j] for j in range(self.right_dim)]
                for i in range(self.left_dim)]
        return LinearMap(self.left_dim, self.right_dim, rows)

    def flip(self) -> "Pairing":
        t = Tensor.zeros((self.right_dim, self.left_dim))
        for i in range(self.left_dim):
            for j in range(self.right_dim):
                t[j, i] = self.form[i, j]
        return Pairing(self.right_dim, self.left_dim, t)


def is_left_nondegenerate(P: Pairing) -> bool:
    """No nonzero left vector pairs to zero with everything: full row rank."""
    return rank(P.form_map()) == P.left_dim


def is_right_nondegenerate(P: Pairing) -> bool:
    return rank(P.form_map()) == P.right_dim


def is_nondegenerate(P: Pairing) -> bool:
    return is_left_nondegenerate(P) and is_right_nondegenerate(P)


def adjoint(P: Pairing, Q: Pairing, f: LinearMap) -> LinearMap | None:
    """g with ⟨f(v), ŵ⟩_Q = ⟨v, g(ŵ)⟩_P, i.e. F_P·g = fᵀ·F_Q.

    Returns None when no solution exists (f not dualizable for these
    pairings); unique when P is right-nondegenerate.
    """
    assert f.domain_dim == P.left_dim and f.codomain_dim == Q.left_dim
    FP = P.form_map()
    rhs = f.transpose() @ Q.form_map()
    cols = []
    for j in range(Q.right_dim):
        x = solve(FP, rhs.column(j))
        if x is None:
            return None
        cols.append(x)
    return LinearMap.from_function(P.right_dim, Q.right_dim,
                                   lambda j: cols[j])


def perp(P: Pairing, W: Subspace) -> Subspace:
    """Right annihilator {w' : ⟨w, w'⟩ = 0 for all w in W}."""
    assert W.ambient_dim == P.left_dim
    if W.dim == 0:
        return Subspace.full(P.right_dim)
    Ft = P.form_map().transpose()
    rows = [Ft.apply(w) for w in W.basis]
    return kernel(LinearMap(len(rows), P.right_dim, rows))


def perp_left(P: Pairing, Z: Subspace) -> Subspace:
    """Left annihilator {v : ⟨v, z⟩ = 0 for all z in Z}."""
    return perp(P.flip(), Z)


def tensor_pairing(P: Pairing, Q: Pairing) -> Pairing:
    """⟪v⊗w, v̂⊗ŵ⟫ = ⟨v,v̂⟩⟨w,ŵ⟩ (Kronecker form)."""
    t = P.form_map().tensor(Q.form_map())
    form = Tensor.zeros((P.left_dim * Q.left_dim, P.right_dim * Q.right_dim))
    for i in range(form.shape[0]):
        for j in range(form.shape[1]):
            form[i, j] = t.rows[i][j]
    return Pairing(form.shape[0], form.shape[1], form)


def verify_ideal(A: FinDimAlgebra, J: Subspace):
    """Check J is a two-sided ideal; returns (ok, witness) with the witness
    a pair (basis index, ideal basis vector) whose product leaves J."""
    n = A.dim
    for v in J.basis:
        for j in range(n):
            ej = [ONE if t == j else ZERO for t in range(n)]
            for prod in (A.product(ej, v), A.product(v, ej)):
                if not J.contains(prod):
                    return False, (j, v, prod)
    return True, None


def reduced_pairing(P: Pairing, J: Subspace, algebra: FinDimAlgebra | None = None,
                    coalgebra: FinDimCoalgebra | None = None):
    """Reduce a pairing (C, A) along an ideal J of the right side A.

    Returns (reduced: Pairing, Jperp: Subspace, quotient data, report).
    The induced pairing is ⟨⟨c, a+J⟩⟩ = ⟨c, a⟩ on J^perp x A/J; when a
    coalgebra is attached on the left, certifies J^perp is a subcoalgebra.
    """
    rep = VerificationReport("reduced pairing")
    assert J.ambient_dim == P.right_dim
    if algebra is not None:
        ok, witness = verify_ideal(algebra, J)
        if not ok:
            raise ValueError("J is not a two-sided ideal; witness product "
                             "%r leaves J" % (witness,))
        rep.add(check_true("J is a two-sided ideal", True))
    Jperp = perp_left(P, J)
    qdim, proj, sect = quotient(P.right_dim, J)
    form = Tensor.zeros((Jperp.dim, qdim))
    for i, c in enumerate(Jperp.basis):
        for j in range(qdim):
            form[i, j] = P.value(c, sect.column(j))
    reduced = Pairing(Jperp.dim, qdim, form)
    # the pairing is constant on J-cosets by construction of J^perp
    for i, c in enumerate(Jperp.basis):
        for z in J.basis:
            assert P.value(c, z) == 0
    if coalgebra is not None:
        sub = _is_subcoalgebra(coalgebra, Jperp)
        rep.add(check_true("J^perp is a subcoalgebra", sub))
    return reduced, Jperp, (qdim, proj, sect), rep


def _is_subcoalgebra(C: FinDimCoalgebra, D: Subspace) -> bool:
    """Δ(D) ⊆ D⊗D, checked against the Kronecker basis of D⊗D."""
    n = C.dim
    pairs = []
    for u in D.basis:
        for v in D.basis:
            pairs.append([u[i] * v[j] for i in range(n) for j in range(n)])
    DD = Subspace.span(n * n, pairs)
    return all(DD.contains(C.comult_of(b)) for b in D.basis)


def subcoalgebra_check(C: FinDimCoalgebra, D: Subspace) -> bool:
    return _is_subcoalgebra(C, D)


def transport_algebra_structure(P: Pairing, C: FinDimCoalgebra) -> FinDimAlgebra:
    """Transpose a coalgebra on the left of a nondegenerate pairing to an
    algebra on the right: ⟨c, ab⟩ = ⟨c_(1), a⟩⟨c_(2), b⟩, ⟨c, 1⟩ = ε(c)."""
    assert C.dim == P.left_dim
    assert is_nondegenerate(P), "transport needs a nondegenerate pairing"
    n = P.right_dim
    F = P.form_map()
    mult = Tensor.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            # target functional c ↦ ⟨c_(1), e_i⟩⟨c_(2), e_j⟩
            target = []
            for c in range(C.dim):
                acc = ZERO
                for a in range(C.dim):
                    for b in range(C.dim):
                        co = C.comult[a, b, c]
                        if co:
                            acc += co * P.form[a, i] * P.form[b, j]
                target.append(acc)
            prod = solve(F, target)
            assert prod is not None
            for k in range(n):
                mult[k, i, j] = prod[k]
    unit = solve(F, list(C.counit.data))
    assert unit is not None
    return FinDimAlgebra(n, mult, Tensor((n,), unit))
