"""Structure-constant presentations of algebras, coalgebras and Hopf algebras,
with exact axiom verifiers and builders for the worked example objects
(group algebras, the four-dimensional Sweedler algebra, duals, comatrix and
groupoid coalgebras).

Conventions: mult[k, i, j] is the coefficient of e_k in e_i·e_j and
comult[i, j, k] the coefficient of e_i⊗e_j in Δ(e_k), both against the stored
ordered basis.  All maps between these objects are matrices in those bases.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import (
    LinearMap, Subspace, Tensor, identity, inverse, kernel, scalar,
    tensor_many, twist,
)
from .report import Check, VerificationReport, check_map_equal, check_true

ZERO = Fraction(0)
ONE = Fraction(1)


class FinDimAlgebra:
    """Unital associative algebra by structure constants over Q."""

    def __init__(self, dim, mult: Tensor, unit: Tensor):
        self.dim = int(dim)
        assert mult.shape == (self.dim,) * 3
        assert unit.shape == (self.dim,)
        self.mult = mult
        self.unit = unit

    def mult_map(self) -> LinearMap:
        n = self.dim
        rows = [[ZERO] * (n * n) for _ in range(n)]
        for k in range(n):
            for i in range(n):
                for j in range(n):
                    c = self.mult[k, i, j]
                    if c:
                        rows[k][i * n + j] = c
        return LinearMap(n, n * n, rows)

    def unit_map(self) -> LinearMap:
        return LinearMap(self.dim, 1, [[c] for c in self.unit.data])

    @property
    def unit_vec(self):
        return list(self.unit.data)

    def product(self, a, b):
        n = self.dim
        out = [ZERO] * n
        for i in range(n):
            ai = a[i]
            if not ai:
                continue
            for j in range(n):
                bj = b[j]
                if not bj:
                    continue
                for k in range(n):
                    c = self.mult[k, i, j]
                    if c:
                        out[k] += ai * bj * c
        return out

    def is_commutative(self) -> bool:
        n = self.dim
        return all(self.mult[k, i, j] == self.mult[k, j, i]
                   for k in range(n) for i in range(n) for j in range(i))

    def left_multiplication(self, a) -> LinearMap:
        return LinearMap.from_function(
            self.dim, self.dim,
            lambda j: self.product(a, [ONE if t == j else ZERO
                                       for t in range(self.dim)]))


class FinDimCoalgebra:
    """Coassociative counital coalgebra by structure constants over Q."""

    def __init__(self, dim, comult: Tensor, counit: Tensor):
        self.dim = int(dim)
        assert comult.shape == (self.dim,) * 3
        assert counit.shape == (self.dim,)
        self.comult = comult
        self.counit = counit

    def comult_map(self) -> LinearMap:
        n = self.dim
        rows = [[ZERO] * n for _ in range(n * n)]
        for k in range(n):
            for i in range(n):
                for j in range(n):
                    c = self.comult[i, j, k]
                    if c:
                        rows[i * n + j][k] = c
        return LinearMap(n * n, n, rows)

    def counit_map(self) -> LinearMap:
        return LinearMap(1, self.dim, [list(self.counit.data)])

    def counit_of(self, v):
        return sum((c * x for c, x in zip(self.counit.data, v)), ZERO)

    def comult_of(self, v):
        """Δ(v) as a vector of length dim² (row-major in the two factors)."""
        return self.comult_map().apply(v)

    def iterated_comult(self, n: int) -> LinearMap:
        """Δ^{n-1}: C -> C⊗...⊗C (n factors); n=1 is the identity."""
        assert n >= 1
        out = identity(self.dim)
        d = self.comult_map()
        for k in range(n - 1):
            # expand the last factor
            out = (identity(self.dim ** k).tensor(d)).compose(out)
        return out

    def opposite(self) -> "FinDimCoalgebra":
        n = self.dim
        comult = Tensor.zeros((n, n, n))
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    comult[i, j, k] = self.comult[j, i, k]
        return FinDimCoalgebra(n, comult, self.counit)

    def is_grouplike(self, v) -> bool:
        n = self.dim
        dv = self.comult_of(v)
        vv = [v[i] * v[j] for i in range(n) for j in range(n)]
        return dv == vv and self.counit_of(v) == 1


class FinDimHopfAlgebra:
    """Hopf algebra: compatible algebra+coalgebra with antipode (and optional
    stored antipode inverse, needed on the dual side of the σ map)."""

    def __init__(self, algebra: FinDimAlgebra, coalgebra: FinDimCoalgebra,
                 antipode: LinearMap, antipode_inverse: LinearMap | None = None):
        assert algebra.dim == coalgebra.dim
        self.algebra = algebra
        self.coalgebra = coalgebra
        assert antipode.domain_dim == antipode.codomain_dim == algebra.dim
        self.antipode = antipode
        self.antipode_inverse = antipode_inverse

    @property
    def dim(self):
        return self.algebra.dim

    def mult_map(self):
        return self.algebra.mult_map()

    def comult_map(self):
        return self.coalgebra.comult_map()

    def unit_map(self):
        return self.algebra.unit_map()

    def counit_map(self):
        return self.coalgebra.counit_map()

    @property
    def unit_vec(self):
        return self.algebra.unit_vec

    def product(self, a, b):
        return self.algebra.product(a, b)

    def counit_of(self, v):
        return self.coalgebra.counit_of(v)

    def S(self):
        return self.antipode

    def S_inv(self):
        if self.antipode_inverse is None:
            self.antipode_inverse = inverse(self.antipode)
        return self.antipode_inverse

    def iterated_comult(self, n):
        return self.coalgebra.iterated_comult(n)


# ---------------------------------------------------------------------------
# verifiers
# ---------------------------------------------------------------------------

def verify_algebra(A: FinDimAlgebra) -> VerificationReport:
    rep = VerificationReport("algebra(dim=%d)" % A.dim)
    n = A.dim
    m = A.mult_map()
    i1 = identity(n)
    rep.add(check_map_equal(
        "associativity m(m⊗I)=m(I⊗m)",
        m @ m.tensor(i1), m @ i1.tensor(m),
        in_shape=(n, n, n), out_shape=(n,)))
    u = A.unit_map()
    rep.add(check_map_equal("left unit", m @ u.tensor(i1), i1,
                            in_shape=(n,), out_shape=(n,)))
    rep.add(check_map_equal("right unit", m @ i1.tensor(u), i1,
                            in_shape=(n,), out_shape=(n,)))
    return rep


def verify_coalgebra(C: FinDimCoalgebra) -> VerificationReport:
    rep = VerificationReport("coalgebra(dim=%d)" % C.dim)
    n = C.dim
    d = C.comult_map()
    i1 = identity(n)
    rep.add(check_map_equal(
        "coassociativity (Δ⊗I)Δ=(I⊗Δ)Δ",
        d.tensor(i1) @ d, i1.tensor(d) @ d,
        in_shape=(n,), out_shape=(n, n, n)))
    e = C.counit_map()
    rep.add(check_map_equal("left counit", e.tensor(i1) @ d, i1,
                            in_shape=(n,), out_shape=(n,)))
    rep.add(check_map_equal("right counit", i1.tensor(e) @ d, i1,
                            in_shape=(n,), out_shape=(n,)))
    return rep


def verify_bialgebra(H: FinDimHopfAlgebra) -> VerificationReport:
    rep = VerificationReport("bialgebra(dim=%d)" % H.dim)
    rep.extend(verify_algebra(H.algebra))
    rep.extend(verify_coalgebra(H.coalgebra))
    n = H.dim
    m, d = H.mult_map(), H.comult_map()
    u, e = H.unit_map(), H.counit_map()
    i1 = identity(n)
    tau = twist(n, n)
    rep.add(check_map_equal(
        "Δ multiplicative",
        d @ m, m.tensor(m) @ i1.tensor(tau).tensor(i1) @ d.tensor(d),
        in_shape=(n, n), out_shape=(n, n)))
    rep.add(check_map_equal("Δ unital", d @ u, u.tensor(u),
                            in_shape=(1,), out_shape=(n, n)))
    rep.add(check_map_equal("ε multiplicative", e @ m, e.tensor(e),
                            in_shape=(n, n), out_shape=(1,)))
    rep.add(check_map_equal("ε unital", e @ u, identity(1)))
    return rep


def verify_hopf(H: FinDimHopfAlgebra) -> VerificationReport:
    rep = verify_bialgebra(H)
    rep.subject = "hopf(dim=%d)" % H.dim
    n = H.dim
    m, d = H.mult_map(), H.comult_map()
    u, e = H.unit_map(), H.counit_map()
    i1 = identity(n)
    S = H.antipode
    eta_eps = u @ e
    rep.add(check_map_equal("antipode m(S⊗I)Δ=ηε", m @ S.tensor(i1) @ d,
                            eta_eps, in_shape=(n,), out_shape=(n,)))
    rep.add(check_map_equal("antipode m(I⊗S)Δ=ηε", m @ i1.tensor(S) @ d,
                            eta_eps, in_shape=(n,), out_shape=(n,)))
    if H.antipode_inverse is not None:
        rep.add(check_map_equal("S⁻¹S=id", H.antipode_inverse @ S, i1))
        rep.add(check_map_equal("SS⁻¹=id", S @ H.antipode_inverse, i1))
    return rep


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def validate_group_table(table) -> tuple[int, list[int]] | None:
    """Return (identity index, inverse list) or raise with a witness."""
    n = len(table)
    for row in table:
        assert len(row) == n
        for v in row:
            if not (0 <= v < n):
                raise ValueError("table entry out of range: %r" % (v,))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if table[table[i][j]][k] != table[i][table[j][k]]:
                    raise ValueError(
                        "not associative at triple (%d, %d, %d)" % (i, j, k))
    e = None
    for c in range(n):
        if all(table[c][i] == i and table[i][c] == i for i in range(n)):
            e = c
            break
    if e is None:
        raise ValueError("no identity element")
    inv = [None] * n
    for i in range(n):
        for j in range(n):
            if table[i][j] == e and table[j][i] == e:
                inv[i] = j
                break
        if inv[i] is None:
            raise ValueError("element %d has no inverse" % i)
    return e, inv


def group_algebra(table) -> FinDimHopfAlgebra:
    """Group Hopf algebra kG from a multiplication table of indices: every
    basis vector is grouplike and S permutes the basis by inversion."""
    e, inv = validate_group_table(table)
    n = len(table)
    mult = Tensor.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            mult[table[i][j], i, j] = ONE
    unit = Tensor.zeros((n,))
    unit[e] = ONE
    comult = Tensor.zeros((n, n, n))
    for g in range(n):
        comult[g, g, g] = ONE
    counit = Tensor((n,), [ONE] * n)
    S = LinearMap.from_function(n, n,
                                lambda j: [ONE if i == inv[j] else ZERO
                                           for i in range(n)])
    return FinDimHopfAlgebra(FinDimAlgebra(n, mult, unit),
                             FinDimCoalgebra(n, comult, counit), S, S)


def cyclic_group_table(n: int):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def trivial_hopf() -> FinDimHopfAlgebra:
    return group_algebra([[0]])


def kc2() -> FinDimHopfAlgebra:
    """Group algebra of C2 on the basis {u_e, u_g}."""
    return group_algebra(cyclic_group_table(2))


def sweedler_h4() -> FinDimHopfAlgebra:
    """Sweedler's four-dimensional Hopf algebra on the basis {1, g, x, y}
    with g²=1, xg=y=-gx, Δ(x)=g⊗x+x⊗1, Δ(y)=1⊗y+y⊗g.

    The antipode of a bialgebra is unique; for this comultiplication it is
    S(x)=y, S(y)=-x (S²=-1 on span{x,y}, so S has order 4 and S⁻¹=S³).
    """
    n = 4
    I, G, X, Y = 0, 1, 2, 3
    mult = Tensor.zeros((n, n, n))

    def set_prod(i, j, terms):
        for k, c in terms:
            mult[k, i, j] = scalar(c)

    set_prod(I, I, [(I, 1)])
    set_prod(I, G, [(G, 1)])
    set_prod(I, X, [(X, 1)])
    set_prod(I, Y, [(Y, 1)])
    set_prod(G, I, [(G, 1)])
    set_prod(G, G, [(I, 1)])
    set_prod(G, X, [(Y, -1)])   # gx = -y
    set_prod(G, Y, [(X, -1)])   # gy = -x
    set_prod(X, I, [(X, 1)])
    set_prod(X, G, [(Y, 1)])    # xg = y
    set_prod(X, X, [])          # x² = 0
    set_prod(X, Y, [])          # xy = x²g = 0
    set_prod(Y, I, [(Y, 1)])
    set_prod(Y, G, [(X, 1)])    # yg = x
    set_prod(Y, X, [])          # yx = 0
    set_prod(Y, Y, [])          # y² = 0
    unit = Tensor.zeros((n,))
    unit[I] = ONE

    comult = Tensor.zeros((n, n, n))
    comult[I, I, I] = ONE
    comult[G, G, G] = ONE
    comult[G, X, X] = ONE       # Δ(x) = g⊗x + x⊗1
    comult[X, I, X] = ONE
    comult[I, Y, Y] = ONE       # Δ(y) = 1⊗y + y⊗g
    comult[Y, G, Y] = ONE
    counit = Tensor((n,), [ONE, ONE, ZERO, ZERO])

    S = LinearMap.zeros(n, n)
    S.rows[I][I] = ONE
    S.rows[G][G] = ONE
    S.rows[Y][X] = ONE          # S(x) = y
    S.rows[X][Y] = -ONE         # S(y) = -x
    S3 = S @ S @ S
    return FinDimHopfAlgebra(FinDimAlgebra(n, mult, unit),
                             FinDimCoalgebra(n, comult, counit), S, S3)


def dual_hopf(H: FinDimHopfAlgebra) -> FinDimHopfAlgebra:
    """Dual Hopf algebra on the dual basis: multiplication is the transpose
    of Δ, comultiplication the transpose of multiplication, S the transpose."""
    n = H.dim
    mult = Tensor.zeros((n, n, n))
    for k in range(n):
        for i in range(n):
            for j in range(n):
                mult[k, i, j] = H.coalgebra.comult[i, j, k]
    unit = Tensor((n,), list(H.coalgebra.counit.data))
    comult = Tensor.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                comult[i, j, k] = H.algebra.mult[k, i, j]
    counit = Tensor((n,), list(H.algebra.unit.data))
    S = H.antipode.transpose()
    S_inv = (H.antipode_inverse.transpose()
             if H.antipode_inverse is not None else None)
    return FinDimHopfAlgebra(FinDimAlgebra(n, mult, unit),
                             FinDimCoalgebra(n, comult, counit), S, S_inv)


def change_basis(H: FinDimHopfAlgebra, P: LinearMap) -> FinDimHopfAlgebra:
    """Rewrite all structure constants in the basis f_j = Σ_i P[i][j] e_i."""
    n = H.dim
    assert P.codomain_dim == P.domain_dim == n
    Pinv = inverse(P)
    m = Pinv @ H.mult_map() @ P.tensor(P)
    d = Pinv.tensor(Pinv) @ H.comult_map() @ P
    mult = Tensor.zeros((n, n, n))
    comult = Tensor.zeros((n, n, n))
    for k in range(n):
        for i in range(n):
            for j in range(n):
                mult[k, i, j] = m.rows[k][i * n + j]
                comult[i, j, k] = d.rows[i * n + j][k]
    unit = Tensor((n,), Pinv.apply(H.unit_vec))
    counit = Tensor((n,), (H.counit_map() @ P).rows[0])
    S = Pinv @ H.antipode @ P
    S_inv = (Pinv @ H.antipode_inverse @ P
             if H.antipode_inverse is not None else None)
    return FinDimHopfAlgebra(FinDimAlgebra(n, mult, unit),
                             FinDimCoalgebra(n, comult, counit), S, S_inv)


def matrix_algebra(n: int) -> FinDimAlgebra:
    """End(k^n) on the basis e_{ij} (index i*n+j): e_ij e_kl = δ_jk e_il."""
    d = n * n
    mult = Tensor.zeros((d, d, d))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                mult[i * n + k, i * n + j, j * n + k] = ONE
    unit = Tensor.zeros((d,))
    for i in range(n):
        unit[i * n + i] = ONE
    return FinDimAlgebra(d, mult, unit)


def comatrix_coalgebra(n: int) -> FinDimCoalgebra:
    """Comatrix coalgebra on basis e_{ij} (index i*n+j):
    Δ(e_ij) = Σ_k e_ik ⊗ e_kj, ε(e_ij) = δ_ij."""
    assert n >= 1
    d = n * n
    comult = Tensor.zeros((d, d, d))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                comult[i * n + k, k * n + j, i * n + j] = ONE
    counit = Tensor.zeros((d,))
    for i in range(n):
        counit[i * n + i] = ONE
    return FinDimCoalgebra(d, comult, counit)


class Groupoid:
    """Small concrete groupoid: objects and arrows are indices, src/tgt are
    object indices per arrow, comp[(a, b)] = a∘b when tgt(b) == src(a)."""

    def __init__(self, n_objects, src, tgt, comp, identities):
        self.n_objects = int(n_objects)
        self.src = list(src)
        self.tgt = list(tgt)
        self.n_arrows = len(self.src)
        assert len(self.tgt) == self.n_arrows
        self.comp = dict(comp)
        self.identities = list(identities)
        self.validate()

    def composable(self, a, b):
        return self.tgt[b] == self.src[a]

    def validate(self):
        n = self.n_arrows
        assert len(self.identities) == self.n_objects
        for x, i in enumerate(self.identities):
            if not (self.src[i] == self.tgt[i] == x):
                raise ValueError("identity arrow %d not a loop at object %d"
                                 % (i, x))
        for (a, b), c in self.comp.items():
            if not self.composable(a, b):
                raise ValueError("composite stored for non-composable pair "
                                 "(%d, %d)" % (a, b))
            if self.src[c] != self.src[b] or self.tgt[c] != self.tgt[a]:
                raise ValueError("composite (%d, %d) has wrong endpoints"
                                 % (a, b))
        for a in range(n):
            for b in range(n):
                if self.composable(a, b) and (a, b) not in self.comp:
                    raise ValueError("missing composite for pair (%d, %d)"
                                     % (a, b))
        for a in range(n):
            if self.comp[(a, self.identities[self.src[a]])] != a:
                raise ValueError("right identity fails at arrow %d" % a)
            if self.comp[(self.identities[self.tgt[a]], a)] != a:
                raise ValueError("left identity fails at arrow %d" % a)
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.composable(b, c) and self.composable(a, b):
                        if self.comp[(self.comp[(a, b)], c)] != \
                           self.comp[(a, self.comp[(b, c)])]:
                            raise ValueError(
                                "associativity fails at (%d, %d, %d)"
                                % (a, b, c))
        self.inverses = [None] * n
        for a in range(n):
            for b in range(n):
                if (self.composable(a, b) and self.composable(b, a)
                        and self.comp[(a, b)] == self.identities[self.tgt[a]]
                        and self.comp[(b, a)] == self.identities[self.src[a]]):
                    self.inverses[a] = b
                    break
            if self.inverses[a] is None:
                raise ValueError("arrow %d has no inverse" % a)


def groupoid_coalgebra(G: Groupoid) -> FinDimCoalgebra:
    """Coalgebra with the arrows of G as a basis of grouplike elements."""
    n = G.n_arrows
    comult = Tensor.zeros((n, n, n))
    for a in range(n):
        comult[a, a, a] = ONE
    counit = Tensor((n,), [ONE] * n)
    return FinDimCoalgebra(n, comult, counit)


def group_as_groupoid(table) -> Groupoid:
    e, inv = validate_group_table(table)
    n = len(table)
    comp = {(a, b): table[a][b] for a in range(n) for b in range(n)}
    return Groupoid(1, [0] * n, [0] * n, comp, [e])


def pair_groupoid(n: int) -> Groupoid:
    """Indiscrete groupoid on n objects: one arrow (i <- j) per ordered pair."""
    arrows = [(i, j) for i in range(n) for j in range(n)]
    index = {ar: t for t, ar in enumerate(arrows)}
    src = [j for (i, j) in arrows]
    tgt = [i for (i, j) in arrows]
    comp = {}
    for t1, (i, j) in enumerate(arrows):
        for t2, (k, l) in enumerate(arrows):
            if j == k:
                comp[(t1, t2)] = index[(i, l)]
    identities = [index[(i, i)] for i in range(n)]
    return Groupoid(n, src, tgt, comp, identities)


# ---------------------------------------------------------------------------
# grouplikes and characters
# ---------------------------------------------------------------------------

def dual_algebra_of_coalgebra(C: FinDimCoalgebra) -> FinDimAlgebra:
    n = C.dim
    mult = Tensor.zeros((n, n, n))
    for k in range(n):
        for i in range(n):
            for j in range(n):
                mult[k, i, j] = C.comult[i, j, k]
    return FinDimAlgebra(n, mult, Tensor((n,), list(C.counit.data)))


def two_sided_ideal(A: FinDimAlgebra, generators) -> Subspace:
    """Smallest two-sided ideal containing the generators (closure by
    repeated left/right multiplication with basis vectors)."""
    n = A.dim
    space = Subspace.span(n, [list(g) for g in generators])
    while True:
        new_vecs = []
        for v in space.basis:
            for j in range(n):
                ej = [ONE if t == j else ZERO for t in range(n)]
                for w in (A.product(ej, v), A.product(v, ej)):
                    if not space.contains(w):
                        new_vecs.append(w)
        if not new_vecs:
            return space
        space = space.sum_with(Subspace.span(n, new_vecs))


def quotient_algebra(A: FinDimAlgebra, I: Subspace):
    """Quotient by a two-sided ideal; returns (Q, projection, section)."""
    from .linalg import quotient as lin_quotient
    n = A.dim
    qdim, proj, sect = lin_quotient(n, I)
    assert qdim > 0, "quotient by the whole algebra"
    mult = Tensor.zeros((qdim, qdim, qdim))
    for i in range(qdim):
        si = sect.column(i)
        for j in range(qdim):
            prod = proj.apply(A.product(si, sect.column(j)))
            for k in range(qdim):
                mult[k, i, j] = prod[k]
    unit = Tensor((qdim,), proj.apply(A.unit_vec))
    return FinDimAlgebra(qdim, mult, unit), proj, sect


def abelianization(A: FinDimAlgebra):
    """A / ([A,A]) with the projection map."""
    n = A.dim
    gens = []
    for i in range(n):
        ei = [ONE if t == i else ZERO for t in range(n)]
        for j in range(i):
            ej = [ONE if t == j else ZERO for t in range(n)]
            comm = [a - b for a, b in zip(A.product(ei, ej),
                                          A.product(ej, ei))]
            if any(c != 0 for c in comm):
                gens.append(comm)
    if not gens:
        return A, identity(n)
    ideal = two_sided_ideal(A, gens)
    Q, proj, _ = quotient_algebra(A, ideal)
    return Q, proj


def minimal_polynomial(M: LinearMap):
    """Monic minimal polynomial of a square matrix, as a coefficient list
    [c_0, ..., c_d] with c_d = 1 (Krylov on the full space)."""
    from .linalg import rref
    n = M.domain_dim
    powers = [identity(n)]
    while True:
        powers.append(M @ powers[-1])
        rows = [[p.rows[i][j] for i in range(n) for j in range(n)]
                for p in powers]
        pivots, red = rref(rows)
        if len(red) < len(rows):
            # last power is dependent on the smaller ones
            d = len(powers) - 1
            target = [powers[d].rows[i][j] for i in range(n) for j in range(n)]
            A = LinearMap.from_function(
                n * n, d, lambda t: [powers[t].rows[i][j]
                                     for i in range(n) for j in range(n)])
            from .linalg import solve
            x = solve(A, target)
            assert x is not None
            coeffs = [-c for c in x] + [ONE]
            return coeffs
        if len(powers) > n + 1:
            raise AssertionError("minimal polynomial search overran degree")


def algebra_characters(A: FinDimAlgebra):
    """All algebra maps A -> Q of a commutative A, by successive idempotent
    splitting along exactly factored minimal polynomials.

    Returns (characters, fully_split).  characters are rows (functionals on
    the A basis), each exactly verified multiplicative and unital;
    fully_split is False when some block resisted rational splitting (then
    the list is still correct but possibly incomplete).
    """
    import sympy

    n = A.dim
    if not A.is_commutative():
        # characters kill commutators, so factor through the abelianization
        Q, proj = abelianization(A)
        chars, full = algebra_characters(Q)
        pulled = []
        for chi in chars:
            back = [sum((c * proj.rows[t][j] for t, c in enumerate(chi)),
                        ZERO) for j in range(n)]
            if _is_character(A, back):
                pulled.append(back)
            else:
                full = False
        return pulled, full
    xsym = sympy.Symbol("x")

    # a block is (unit idempotent vector u, Subspace basis of u·A)
    def block_space(u):
        cols = [A.product(u, [ONE if t == j else ZERO for t in range(n)])
                for j in range(n)]
        return Subspace.span(n, cols)

    blocks = [(A.unit_vec, block_space(A.unit_vec))]
    fully_split = True
    for gidx in range(n):
        g = [ONE if t == gidx else ZERO for t in range(n)]
        new_blocks = []
        for (u, space) in blocks:
            if space.dim == 1:
                new_blocks.append((u, space))
                continue
            gu = A.product(g, u)
            # multiplication by gu restricted to the block
            inc = space.inclusion()
            coords = space.projection_onto_coordinates()
            Mg = coords @ A.left_multiplication(gu) @ inc
            coeffs = minimal_polynomial(Mg)
            poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator)
                               for c in reversed(coeffs)], xsym, domain="QQ")
            _, factors = poly.factor_list()
            if len(factors) == 1:
                new_blocks.append((u, space))
                continue
            primaries = [f ** e for (f, e) in factors]
            for i, fe in enumerate(primaries):
                rest = poly.quo(fe)
                # s·rest ≡ 1 mod fe gives the idempotent (s·rest)(gu)·u
                s, _, h = sympy.gcdex(rest.as_expr(), fe.as_expr(), xsym)
                assert sympy.simplify(h - 1) == 0
                epoly = sympy.Poly(sympy.expand(s * rest.as_expr()), xsym,
                                   domain="QQ")
                uvec = _eval_poly_at_element(A, epoly, gu, u)
                assert A.product(uvec, uvec) == uvec, "idempotent check"
                new_blocks.append((uvec, block_space(uvec)))
        blocks = new_blocks

    characters = []
    for (u, space) in blocks:
        if space.dim != 1:
            fully_split = False
            continue
        # on a 1-dim block a·u = χ(a)·u; read χ off in block coordinates
        piv = next(i for i, c in enumerate(u) if c != 0)
        chi = []
        ok = True
        for j in range(n):
            ej = [ONE if t == j else ZERO for t in range(n)]
            prod = A.product(ej, u)
            if any(prod[i] * u[piv] != prod[piv] * u[i] for i in range(n)):
                ok = False
                break
            chi.append(prod[piv] / u[piv])
        if ok and _is_character(A, chi):
            characters.append(chi)
        else:
            fully_split = False
    return characters, fully_split


def _eval_poly_at_element(A: FinDimAlgebra, poly, elem, unit):
    """poly(elem) computed inside the unital block with given unit (Horner)."""
    import sympy

    coeffs = poly.all_coeffs()  # highest degree first
    acc = [ZERO] * A.dim
    for c in coeffs:
        acc = A.product(acc, elem)
        c = sympy.Rational(c)
        fc = Fraction(int(c.p), int(c.q))
        acc = [a + fc * ub for a, ub in zip(acc, unit)]
    return acc


def _is_character(A: FinDimAlgebra, chi) -> bool:
    n = A.dim
    if sum((c * u for c, u in zip(chi, A.unit_vec)), ZERO) != 1:
        return False
    for i in range(n):
        for j in range(n):
            lhs = sum((A.mult[k, i, j] * chi[k] for k in range(n)), ZERO)
            if lhs != chi[i] * chi[j]:
                return False
    return True


def coalgebra_grouplikes(C: FinDimCoalgebra):
    """Grouplike elements of C = rational characters of the dual algebra.
    Returns (grouplikes, complete) where complete means the search certified
    the list exhaustive over Q."""
    A = dual_algebra_of_coalgebra(C)
    chars, full = algebra_characters(A)
    gls = [list(c) for c in chars]
    for g in gls:
        assert C.is_grouplike(g)
    return gls, full


# ---------------------------------------------------------------------------
# Hopf isomorphisms (the self-duality of H4)
# ---------------------------------------------------------------------------

def is_hopf_morphism(H1: FinDimHopfAlgebra, H2: FinDimHopfAlgebra,
                     phi: LinearMap) -> VerificationReport:
    rep = VerificationReport("hopf morphism")
    n1, n2 = H1.dim, H2.dim
    rep.add(check_map_equal("algebra map", phi @ H1.mult_map(),
                            H2.mult_map() @ phi.tensor(phi),
                            in_shape=(n1, n1), out_shape=(n2,)))
    rep.add(check_map_equal("unit", phi @ H1.unit_map(), H2.unit_map()))
    rep.add(check_map_equal("coalgebra map", H2.comult_map() @ phi,
                            phi.tensor(phi) @ H1.comult_map(),
                            in_shape=(n1,), out_shape=(n2, n2)))
    rep.add(check_map_equal("counit", H2.counit_map() @ phi,
                            H1.counit_map()))
    rep.add(check_map_equal("antipode", phi @ H1.antipode,
                            H2.antipode @ phi))
    return rep


def h4_selfduality_isomorphism(H4: FinDimHopfAlgebra):
    """Explicit Hopf isomorphism H4 -> H4*, found by finite search/solve:
    send 1 to the counit, g to the non-trivial character, and solve the
    linear skew-primitivity system for the image of x."""
    D = dual_hopf(H4)
    n = 4
    gls, full = coalgebra_grouplikes(D.coalgebra)
    assert full and len(gls) == 2
    unit_img = D.unit_vec
    for gamma in gls:
        if gamma == unit_img:
            continue
        # homogeneous linear constraints on v := φ(x):
        #   Δ*(v) = γ⊗v + v⊗1*,  ε*(v) = 0,  v·γ + γ·v = 0
        rows = []
        dmap = D.comult_map()
        for r in range(n * n):
            i, j = divmod(r, n)
            row = [dmap.rows[r][c]
                   - (gamma[i] * (ONE if j == c else ZERO))
                   - ((ONE if i == c else ZERO) * unit_img[j])
                   for c in range(n)]
            rows.append(row)
        rows.append(list(D.coalgebra.counit.data))
        anti = (D.algebra.left_multiplication(gamma)
                + _right_multiplication(D.algebra, gamma))
        for r in range(n):
            rows.append(list(anti.rows[r]))
        Amap = LinearMap.from_rows(rows)
        ker = kernel(Amap)
        for v in ker.basis:
            if all(c == 0 for c in v):
                continue
            phi = LinearMap.from_function(n, n, lambda j, v=v, gamma=gamma: {
                0: list(unit_img),
                1: list(gamma),
                2: list(v),
                3: D.product(v, gamma),
            }[j])
            rep = is_hopf_morphism(H4, D, phi)
            from .linalg import rank
            if rep.passed and rank(phi) == n:
                return phi, rep
    raise AssertionError("no self-duality isomorphism found")


def _right_multiplication(A: FinDimAlgebra, a) -> LinearMap:
    return LinearMap.from_function(
        A.dim, A.dim,
        lambda j: A.product([ONE if t == j else ZERO for t in range(A.dim)], a))
