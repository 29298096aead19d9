"""Exact dense linear algebra over the rationals.

Everything downstream (structure constants, axiom checks, quotients) is
expressed through the three carriers defined here: Tensor (dense multi-index
arrays of Fractions), LinearMap (matrices with domain/codomain bookkeeping)
and Subspace (canonical reduced-echelon bases).  No floats anywhere; equality
is exact entrywise equality.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product


def scalar(x) -> Fraction:
    """Coerce ints, 'p/q' strings and Fractions to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("floats are not allowed; use Fraction or 'p/q' strings")
    return Fraction(x)


QQ = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)


def _strides(shape):
    strides = [1] * len(shape)
    for i in range(len(shape) - 2, -1, -1):
        strides[i] = strides[i + 1] * shape[i + 1]
    return strides


class Tensor:
    """Dense array of rationals with row-major flat storage."""

    __slots__ = ("shape", "data")

    def __init__(self, shape, data):
        shape = tuple(int(d) for d in shape)
        assert all(d >= 0 for d in shape)
        size = 1
        for d in shape:
            size *= d
        assert len(data) == size, (len(data), shape)
        self.shape = shape
        self.data = data

    @classmethod
    def zeros(cls, shape):
        size = 1
        for d in shape:
            size *= d
        return cls(shape, [ZERO] * size)

    @classmethod
    def from_nested(cls, nested):
        shape = []
        probe = nested
        while isinstance(probe, (list, tuple)):
            shape.append(len(probe))
            probe = probe[0] if len(probe) else None
        flat = []

        def walk(node, depth):
            if depth == len(shape):
                flat.append(scalar(node))
                return
            assert len(node) == shape[depth], "ragged nesting"
            for sub in node:
                walk(sub, depth + 1)

        walk(nested, 0)
        return cls(tuple(shape), flat)

    def to_nested(self):
        def build(depth, offset, strides):
            if depth == len(self.shape):
                return self.data[offset]
            return [build(depth + 1, offset + i * strides[depth], strides)
                    for i in range(self.shape[depth])]

        return build(0, 0, _strides(self.shape))

    def __getitem__(self, idx):
        if isinstance(idx, int):
            idx = (idx,)
        assert len(idx) == len(self.shape)
        strides = _strides(self.shape)
        flat = 0
        for i, s, d in zip(idx, strides, self.shape):
            assert 0 <= i < d, "index out of range"
            flat += i * s
        return self.data[flat]

    def __setitem__(self, idx, value):
        if isinstance(idx, int):
            idx = (idx,)
        strides = _strides(self.shape)
        flat = sum(i * s for i, s in zip(idx, strides))
        self.data[flat] = scalar(value)

    def __eq__(self, other):
        return (isinstance(other, Tensor) and self.shape == other.shape
                and self.data == other.data)

    def __hash__(self):
        return hash((self.shape, tuple(self.data)))

    def __add__(self, other):
        assert self.shape == other.shape
        return Tensor(self.shape, [a + b for a, b in zip(self.data, other.data)])

    def __sub__(self, other):
        assert self.shape == other.shape
        return Tensor(self.shape, [a - b for a, b in zip(self.data, other.data)])

    def __neg__(self):
        return Tensor(self.shape, [-a for a in self.data])

    def scale(self, c):
        c = scalar(c)
        return Tensor(self.shape, [c * a for a in self.data])

    def is_zero(self):
        return all(a == 0 for a in self.data)

    def reshape(self, shape):
        shape = tuple(int(d) for d in shape)
        size = 1
        for d in shape:
            size *= d
        assert size == len(self.data)
        return Tensor(shape, list(self.data))

    def transpose(self, perm):
        """Permute axes, numpy semantics: result.shape[k] = shape[perm[k]]."""
        perm = tuple(perm)
        assert sorted(perm) == list(range(len(self.shape)))
        new_shape = tuple(self.shape[p] for p in perm)
        old_strides = _strides(self.shape)
        out = [ZERO] * len(self.data)
        new_strides = _strides(new_shape)
        for idx in product(*[range(d) for d in new_shape]):
            old_flat = sum(idx[k] * old_strides[perm[k]] for k in range(len(perm)))
            new_flat = sum(idx[k] * new_strides[k] for k in range(len(perm)))
            out[new_flat] = self.data[old_flat]
        return Tensor(new_shape, out)

    def kron(self, other):
        """Tensor (outer) product, axes of self first."""
        new_shape = self.shape + other.shape
        out = []
        for a in self.data:
            if a == 0:
                out.extend([ZERO] * len(other.data))
            else:
                out.extend([a * b for b in other.data])
        return Tensor(new_shape, out)

    def __repr__(self):
        return "Tensor(%r, %r)" % (self.shape, [str(a) for a in self.data])


def contract(t: Tensor, axes) -> Tensor:
    """Sum over one matched pair of axes (i, j), exact trace semantics."""
    i, j = axes
    assert i != j
    i, j = min(i, j), max(i, j)
    assert t.shape[i] == t.shape[j], "contracted axes must have equal dimension"
    n = len(t.shape)
    keep = [k for k in range(n) if k not in (i, j)]
    new_shape = tuple(t.shape[k] for k in keep)
    out = Tensor.zeros(new_shape)
    strides = _strides(t.shape)
    new_strides = _strides(new_shape)
    for idx in product(*[range(t.shape[k]) for k in keep]):
        base = sum(v * strides[k] for v, k in zip(idx, keep))
        acc = ZERO
        for s in range(t.shape[i]):
            acc += t.data[base + s * (strides[i] + strides[j])]
        out.data[sum(v * s for v, s in zip(idx, new_strides))] = acc
    return out


def flip(t: Tensor, axes) -> Tensor:
    """Swap two axes (the twist map on the corresponding factors)."""
    i, j = axes
    perm = list(range(len(t.shape)))
    perm[i], perm[j] = perm[j], perm[i]
    return t.transpose(perm)


class LinearMap:
    """Matrix with explicit domain/codomain dimensions; rows index codomain."""

    __slots__ = ("codomain_dim", "domain_dim", "rows")

    def __init__(self, codomain_dim, domain_dim, rows):
        self.codomain_dim = int(codomain_dim)
        self.domain_dim = int(domain_dim)
        assert len(rows) == self.codomain_dim
        for r in rows:
            assert len(r) == self.domain_dim
        self.rows = rows

    @classmethod
    def from_rows(cls, rows):
        rows = [[scalar(x) for x in r] for r in rows]
        return cls(len(rows), len(rows[0]) if rows else 0, rows)

    @classmethod
    def zeros(cls, codomain_dim, domain_dim):
        return cls(codomain_dim, domain_dim,
                   [[ZERO] * domain_dim for _ in range(codomain_dim)])

    @classmethod
    def identity(cls, n):
        return cls(n, n, [[ONE if i == j else ZERO for j in range(n)]
                          for i in range(n)])

    @classmethod
    def from_function(cls, codomain_dim, domain_dim, fn):
        """Columns are fn(j), the image of the j-th basis vector."""
        cols = [fn(j) for j in range(domain_dim)]
        for c in cols:
            assert len(c) == codomain_dim
        rows = [[cols[j][i] for j in range(domain_dim)] for i in range(codomain_dim)]
        return cls(codomain_dim, domain_dim, rows)

    @property
    def matrix(self) -> Tensor:
        flat = []
        for r in self.rows:
            flat.extend(r)
        return Tensor((self.codomain_dim, self.domain_dim), flat)

    def column(self, j):
        return [r[j] for r in self.rows]

    def apply(self, vec):
        assert len(vec) == self.domain_dim
        out = []
        for r in self.rows:
            acc = ZERO
            for a, x in zip(r, vec):
                if a and x:
                    acc += a * x
            out.append(acc)
        return out

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other."""
        assert self.domain_dim == other.codomain_dim, \
            "composition dimension mismatch: %d vs %d" % (self.domain_dim,
                                                          other.codomain_dim)
        n, m, k = self.codomain_dim, other.domain_dim, self.domain_dim
        out = [[ZERO] * m for _ in range(n)]
        for i in range(n):
            row = self.rows[i]
            orow = out[i]
            for t in range(k):
                a = row[t]
                if a == 0:
                    continue
                brow = other.rows[t]
                for j in range(m):
                    b = brow[j]
                    if b:
                        orow[j] += a * b
        return LinearMap(n, m, out)

    def __matmul__(self, other):
        return self.compose(other)

    def __add__(self, other):
        assert (self.codomain_dim, self.domain_dim) == \
               (other.codomain_dim, other.domain_dim)
        return LinearMap(self.codomain_dim, self.domain_dim,
                         [[a + b for a, b in zip(r1, r2)]
                          for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        assert (self.codomain_dim, self.domain_dim) == \
               (other.codomain_dim, other.domain_dim)
        return LinearMap(self.codomain_dim, self.domain_dim,
                         [[a - b for a, b in zip(r1, r2)]
                          for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        return LinearMap(self.codomain_dim, self.domain_dim,
                         [[-a for a in r] for r in self.rows])

    def scale(self, c):
        c = scalar(c)
        return LinearMap(self.codomain_dim, self.domain_dim,
                         [[c * a for a in r] for r in self.rows])

    def __eq__(self, other):
        return (isinstance(other, LinearMap)
                and self.codomain_dim == other.codomain_dim
                and self.domain_dim == other.domain_dim
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.codomain_dim, self.domain_dim,
                     tuple(tuple(r) for r in self.rows)))

    def is_zero(self):
        return all(a == 0 for r in self.rows for a in r)

    def transpose(self) -> "LinearMap":
        return LinearMap(self.domain_dim, self.codomain_dim,
                         [[self.rows[i][j] for i in range(self.codomain_dim)]
                          for j in range(self.domain_dim)])

    def tensor(self, other: "LinearMap") -> "LinearMap":
        """Kronecker product, Kronecker-product index convention."""
        n1, m1 = self.codomain_dim, self.domain_dim
        n2, m2 = other.codomain_dim, other.domain_dim
        out = [[ZERO] * (m1 * m2) for _ in range(n1 * n2)]
        for i1 in range(n1):
            r1 = self.rows[i1]
            for j1 in range(m1):
                a = r1[j1]
                if a == 0:
                    continue
                for i2 in range(n2):
                    r2 = other.rows[i2]
                    orow = out[i1 * n2 + i2]
                    base = j1 * m2
                    for j2 in range(m2):
                        b = r2[j2]
                        if b:
                            orow[base + j2] += a * b
        return LinearMap(n1 * n2, m1 * m2, out)

    def __repr__(self):
        return "LinearMap(%d <- %d)" % (self.codomain_dim, self.domain_dim)


def tensor_product(f: LinearMap, g: LinearMap) -> LinearMap:
    return f.tensor(g)


def tensor_many(maps) -> LinearMap:
    maps = list(maps)
    out = maps[0]
    for f in maps[1:]:
        out = out.tensor(f)
    return out


def identity(n) -> LinearMap:
    return LinearMap.identity(n)


def twist(m, n) -> LinearMap:
    """The flip v⊗w -> w⊗v as a map k^m ⊗ k^n -> k^n ⊗ k^m."""
    out = LinearMap.zeros(m * n, m * n)
    for i in range(m):
        for j in range(n):
            out.rows[j * m + i][i * n + j] = ONE
    return out


def perm_map(dims, perm) -> LinearMap:
    """Permutation of tensor factors: factor k of the output is factor perm[k]
    of the input (numpy transpose semantics on coordinates)."""
    perm = tuple(perm)
    assert sorted(perm) == list(range(len(dims)))
    out_dims = [dims[p] for p in perm]
    size = 1
    for d in dims:
        size *= d
    in_strides = _strides(tuple(dims))
    out = LinearMap.zeros(size, size)
    for idx in product(*[range(d) for d in out_dims]):
        src = sum(idx[k] * in_strides[perm[k]] for k in range(len(perm)))
        dst_strides = _strides(tuple(out_dims))
        dst = sum(idx[k] * dst_strides[k] for k in range(len(perm)))
        out.rows[dst][src] = ONE
    return out


# ---------------------------------------------------------------------------
# echelon forms, kernels, images, quotients
# ---------------------------------------------------------------------------

def rref(rows):
    """Reduced row echelon form with leading coefficient 1 and increasing
    pivot columns.  Returns (pivot_columns, reduced_nonzero_rows)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    out = []
    rank = 0
    for col in range(ncols):
        sel = None
        for i in range(rank, len(rows)):
            if rows[i][col] != 0:
                sel = i
                break
        if sel is None:
            continue
        rows[rank], rows[sel] = rows[sel], rows[rank]
        pr = rows[rank]
        inv = ONE / pr[col]
        if inv != 1:
            rows[rank] = pr = [a * inv for a in pr]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                c = rows[i][col]
                rows[i] = [a - c * b for a, b in zip(rows[i], pr)]
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    out = rows[:rank]
    return pivots, out


class Subspace:
    """Subspace of k^n held as a canonical reduced-echelon basis, so equality
    of subspaces is equality of basis lists."""

    __slots__ = ("ambient_dim", "basis", "_pivots")

    def __init__(self, ambient_dim, basis_rows, _canonical=False):
        self.ambient_dim = int(ambient_dim)
        if _canonical:
            self.basis = basis_rows
            self._pivots = [next(j for j, a in enumerate(r) if a != 0)
                            for r in basis_rows]
        else:
            pivots, rows = rref(basis_rows)
            self.basis = rows
            self._pivots = pivots
        for r in self.basis:
            assert len(r) == self.ambient_dim

    @classmethod
    def zero(cls, ambient_dim):
        return cls(ambient_dim, [])

    @classmethod
    def full(cls, ambient_dim):
        return cls(ambient_dim,
                   [[ONE if i == j else ZERO for j in range(ambient_dim)]
                    for i in range(ambient_dim)])

    @classmethod
    def span(cls, ambient_dim, vectors):
        return cls(ambient_dim, [list(v) for v in vectors])

    @property
    def dim(self):
        return len(self.basis)

    def reduce(self, vec):
        """Residue of vec after eliminating all pivot coordinates."""
        vec = list(vec)
        for row, p in zip(self.basis, self._pivots):
            c = vec[p]
            if c != 0:
                vec = [a - c * b for a, b in zip(vec, row)]
        return vec

    def contains(self, vec):
        return all(a == 0 for a in self.reduce(vec))

    def contains_subspace(self, other):
        return all(self.contains(r) for r in other.basis)

    def coordinates(self, vec):
        """Coefficients of vec in the echelon basis, or None if outside."""
        res = self.reduce(vec)
        if any(a != 0 for a in res):
            return None
        return [vec[p] for p in self._pivots]

    def __eq__(self, other):
        return (isinstance(other, Subspace)
                and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient_dim, tuple(tuple(r) for r in self.basis)))

    def sum_with(self, other):
        assert self.ambient_dim == other.ambient_dim
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def intersection(self, other):
        """Via the kernel of the stacked coordinate map (Zassenhaus-free,
        fine at desk scale)."""
        assert self.ambient_dim == other.ambient_dim
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambient_dim)
        # solve a·B1 + b·B2 = 0; intersection vectors are a·B1
        rows = []
        k1, k2 = len(self.basis), len(other.basis)
        for j in range(self.ambient_dim):
            rows.append([self.basis[i][j] for i in range(k1)]
                        + [other.basis[i][j] for i in range(k2)])
        A = LinearMap.from_rows(rows) if rows else LinearMap.zeros(0, k1 + k2)
        K = kernel(A)
        vecs = []
        for r in K.basis:
            a = r[:k1]
            vec = [ZERO] * self.ambient_dim
            for c, row in zip(a, self.basis):
                if c:
                    vec = [x + c * y for x, y in zip(vec, row)]
            vecs.append(vec)
        return Subspace.span(self.ambient_dim, vecs)

    def inclusion(self) -> LinearMap:
        """Basis inclusion k^dim -> k^ambient."""
        return LinearMap.from_function(self.ambient_dim, self.dim,
                                       lambda j: list(self.basis[j]))

    def projection_onto_coordinates(self) -> LinearMap:
        """Left inverse of inclusion(), reading off pivot coordinates of
        vectors that lie in the subspace."""
        out = LinearMap.zeros(self.dim, self.ambient_dim)
        for i, p in enumerate(self._pivots):
            out.rows[i][p] = ONE
        return out

    def __repr__(self):
        return "Subspace(dim %d of k^%d)" % (self.dim, self.ambient_dim)


def kernel(f: LinearMap) -> Subspace:
    """Exact null space; rank + dim kernel = domain_dim."""
    pivots, rows = rref(f.rows)
    n = f.domain_dim
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for j in free:
        vec = [ZERO] * n
        vec[j] = ONE
        for row, p in zip(rows, pivots):
            if row[j] != 0:
                vec[p] = -row[j]
        basis.append(vec)
    return Subspace(n, basis)


def image(f: LinearMap) -> Subspace:
    """Column space."""
    cols = [[f.rows[i][j] for i in range(f.codomain_dim)]
            for j in range(f.domain_dim)]
    return Subspace(f.codomain_dim, cols)


def rank(f: LinearMap) -> int:
    pivots, _ = rref(f.rows)
    return len(pivots)


def quotient(V_dim: int, W: Subspace):
    """Quotient k^V_dim / W.

    Returns (quotient_dim, projection, section) with projection∘section = id
    on the quotient and kernel(projection) = W.
    """
    assert W.ambient_dim == V_dim
    pivot_set = set(W._pivots)
    free = [j for j in range(V_dim) if j not in pivot_set]
    qdim = len(free)
    proj = LinearMap.zeros(qdim, V_dim)
    for j in range(V_dim):
        res = W.reduce([ONE if t == j else ZERO for t in range(V_dim)])
        for i, fcol in enumerate(free):
            proj.rows[i][j] = res[fcol]
    sect = LinearMap.zeros(V_dim, qdim)
    for i, fcol in enumerate(free):
        sect.rows[fcol][i] = ONE
    return qdim, proj, sect


def solve(f: LinearMap, target):
    """One solution x of f(x) = target, or None."""
    assert len(target) == f.codomain_dim
    aug = [list(r) + [t] for r, t in zip(f.rows, target)]
    pivots, rows = rref(aug)
    n = f.domain_dim
    if n in pivots:
        return None  # pivot in the augmented column: inconsistent
    x = [ZERO] * n
    for row, p in zip(rows, pivots):
        x[p] = row[n]
    return x


def solve_unique(f: LinearMap, target):
    """Solution of f(x) = target when f is injective; None if inconsistent."""
    x = solve(f, target)
    if x is None:
        return None
    assert kernel(f).dim == 0, "solve_unique on a non-injective map"
    return x


def preimage_subspace(f: LinearMap, W: Subspace) -> Subspace:
    """f^{-1}(W) as a subspace of the domain."""
    _, proj, _ = quotient(f.codomain_dim, W)
    return kernel(proj.compose(f))


def inverse(f: LinearMap) -> LinearMap:
    assert f.codomain_dim == f.domain_dim, "inverse of a non-square map"
    n = f.domain_dim
    aug = [list(r) + [ONE if i == j else ZERO for j in range(n)]
           for i, r in enumerate(f.rows)]
    pivots, rows = rref(aug)
    assert pivots == list(range(n)), "matrix is singular"
    return LinearMap(n, n, [r[n:] for r in rows])
