"""Exact linear algebra over Z: Hermite/Smith forms, kernels, cokernels.

All matrices are lists (or tuples) of rows of Python ints; a matrix acts on
the *right* of row vectors throughout the package, so the kernel of M is
{x : x M = 0}.  Empty matrices are allowed: a 0 x n matrix has rank 0 and
its cokernel is Z^n.

Python ints are arbitrary precision, so nothing here can overflow.  Pivots
are chosen by minimal absolute value, which keeps intermediate entries
small on the structured matrices this package produces.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass


def xgcd(a, b):
    """Return (x, y, g) with x*a + y*b == g == gcd(a, b), g >= 0."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    if not a:
        return []
    nb = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * cols
        for i in range(nb):
            c = row[i]
            if c:
                brow = b[i]
                for j in range(cols):
                    acc[j] += c * brow[j]
        out.append(acc)
    return out


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    return [[c * x for x in row] for row in a]


def mat_transpose(a, ncols=None):
    if not a:
        return [[] for _ in range(ncols)] if ncols else []
    return [list(col) for col in zip(*a)]


def is_identity(a):
    return all(
        x == (1 if i == j else 0) for i, row in enumerate(a) for j, x in enumerate(row)
    )


class _Echelon:
    """Incremental integer row echelon form (pivot per row, sorted by column).

    add() keeps the row space unchanged; the stored rows stay independent.
    """

    __slots__ = ("ncols", "rows", "pivcol")

    def __init__(self, ncols):
        self.ncols = ncols
        self.rows = []
        self.pivcol = []

    def add(self, vec):
        rows, pivcol, n = self.rows, self.pivcol, self.ncols
        vec = list(vec)
        j = 0
        while True:
            while j < n and vec[j] == 0:
                j += 1
            if j == n:
                return
            i = bisect_left(pivcol, j)
            if i == len(rows) or pivcol[i] != j:
                if vec[j] < 0:
                    vec = [-x for x in vec]
                rows.insert(i, vec)
                pivcol.insert(i, j)
                return
            row = rows[i]
            a, b = row[j], vec[j]
            if b % a == 0:
                q = b // a
                for k in range(j, n):
                    vec[k] -= q * row[k]
            else:
                x, y, g = xgcd(a, b)
                ag, bg = a // g, b // g
                for k in range(j, n):
                    ra, va = row[k], vec[k]
                    row[k] = x * ra + y * va
                    vec[k] = ag * va - bg * ra

    def reduce_off_pivots(self):
        # Canonical form: positive pivots, entries above a pivot in [0, pivot).
        # For each upper row, reduce against the lower rows left to right:
        # subtracting a row with pivot column c only touches columns >= c, so
        # later pivots are cleaned up after earlier ones disturb them.
        rows, pivcol = self.rows, self.pivcol
        for i2 in range(len(rows) - 2, -1, -1):
            for i in range(i2 + 1, len(rows)):
                j = pivcol[i]
                q = rows[i2][j] // rows[i][j]
                if q:
                    r2, r1 = rows[i2], rows[i]
                    for k in range(j, self.ncols):
                        r2[k] -= q * r1[k]


def hnf(rows, ncols):
    """Canonical row Hermite normal form of the given row span.

    Rows come back sorted by pivot column, with positive pivots and the
    entries above each pivot reduced into [0, pivot).  Two generating sets
    span the same subgroup of Z^ncols iff their hnf() outputs are equal.
    """
    ech = _Echelon(ncols)
    for r in rows:
        ech.add(r)
    ech.reduce_off_pivots()
    return ech.rows


@dataclass(frozen=True)
class AbelianInvariants:
    """Isomorphism type of a finitely generated abelian group.

    invariant_factors is the chain d1 | d2 | ... with every factor > 1;
    free_rank counts the Z summands.
    """

    invariant_factors: tuple
    free_rank: int

    def __post_init__(self):
        facs = self.invariant_factors
        assert all(f > 1 for f in facs)
        assert all(facs[i + 1] % facs[i] == 0 for i in range(len(facs) - 1))

    @property
    def is_trivial(self):
        return not self.invariant_factors and self.free_rank == 0

    @property
    def is_finite(self):
        return self.free_rank == 0

    def order(self):
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        n = 1
        for f in self.invariant_factors:
            n *= f
        return n


@dataclass(frozen=True)
class Submodule:
    """A subgroup of Z^ambient_rank, stored as a canonical Hermite basis.

    Equality of Submodules is literal equality of the stored data, which by
    canonicity is equality as subgroups.
    """

    ambient_rank: int
    basis: tuple

    @classmethod
    def from_rows(cls, ambient_rank, rows):
        for r in rows:
            assert len(r) == ambient_rank
        reduced = hnf(rows, ambient_rank)
        return cls(ambient_rank, tuple(tuple(r) for r in reduced))

    @classmethod
    def zero(cls, ambient_rank):
        return cls(ambient_rank, ())

    @classmethod
    def full(cls, ambient_rank):
        return cls.from_rows(ambient_rank, identity_matrix(ambient_rank))

    @property
    def rank(self):
        return len(self.basis)

    def coords_of(self, vec):
        """Express vec in the stored basis; None if vec is not in the span."""
        assert len(vec) == self.ambient_rank
        vec = list(vec)
        coords = [0] * len(self.basis)
        for i, row in enumerate(self.basis):
            j = next(k for k, x in enumerate(row) if x)  # pivot column
            if vec[j]:
                if vec[j] % row[j]:
                    return None
                q = vec[j] // row[j]
                coords[i] = q
                for k in range(j, self.ambient_rank):
                    vec[k] -= q * row[k]
        if any(vec):
            return None
        return coords

    def contains(self, vec):
        return self.coords_of(vec) is not None

    def contains_submodule(self, other):
        return all(self.contains(list(r)) for r in other.basis)

    def coords_matrix(self, rows):
        """Coordinates of several vectors at once; all must lie in the span."""
        out = []
        for r in rows:
            c = self.coords_of(list(r))
            assert c is not None, "vector not in submodule span"
            out.append(c)
        return out

    def intersect(self, other):
        if self.ambient_rank != other.ambient_rank:
            raise ValueError("ambient rank mismatch")
        # x = u A = v B  <=>  (u, v) in ker [A; -B]; read off u A.
        a, b = list(self.basis), list(other.basis)
        stacked = [list(r) for r in a] + [[-x for x in r] for r in b]
        ker = kernel_basis(stacked, self.ambient_rank)
        rows = []
        for kr in ker.basis:
            u = kr[: len(a)]
            vec = [0] * self.ambient_rank
            for c, arow in zip(u, a):
                if c:
                    for j in range(self.ambient_rank):
                        vec[j] += c * arow[j]
            rows.append(vec)
        return Submodule.from_rows(self.ambient_rank, rows)

    def sum(self, other):
        if self.ambient_rank != other.ambient_rank:
            raise ValueError("ambient rank mismatch")
        return Submodule.from_rows(
            self.ambient_rank, list(self.basis) + list(other.basis)
        )

    def saturate(self):
        """Smallest saturated subgroup containing this one (same Q-span)."""
        if not self.basis:
            return self
        return _saturate_via_kernel(self)

    def scaled(self, c):
        return Submodule.from_rows(
            self.ambient_rank, [[c * x for x in row] for row in self.basis]
        )

    def image_under(self, matrix, out_cols):
        """Image submodule under the right-action matrix (ambient -> out_cols)."""
        rows = mat_mul([list(r) for r in self.basis], matrix)
        return Submodule.from_rows(out_cols, rows)


def _saturate_via_kernel(sub):
    # v is in the saturation iff v is orthogonal to every integer vector w
    # (as a column) with basis . w = 0; kernels are saturated by construction.
    n = sub.ambient_rank
    bt = [list(col) for col in zip(*sub.basis)]  # n x rank
    ortho = kernel_basis(bt, sub.rank)  # subgroup of Z^n pairing to 0 with all of sub
    if not ortho.basis:
        return Submodule.full(n)
    ot = [list(col) for col in zip(*ortho.basis)]  # n x ortho.rank
    return kernel_basis(ot, ortho.rank)


def kernel_basis(m, ncols):
    """Integer kernel {x : x M = 0} of an nrows x ncols matrix, as a Submodule.

    The result is saturated: it contains every integer solution.
    """
    nrows = len(m)
    ech = _Echelon(ncols + nrows)
    for i, row in enumerate(m):
        assert len(row) == ncols
        aug = list(row) + [0] * nrows
        aug[ncols + i] = 1
        ech.add(aug)
    rows = []
    for row, piv in zip(ech.rows, ech.pivcol):
        if piv >= ncols:
            rows.append(row[ncols:])
    return Submodule.from_rows(nrows, rows)


def solve_left(m, b):
    """Some integer x with x M = b, or None when no integer solution exists."""
    nrows = len(m)
    ncols = len(b)
    ech = _Echelon(ncols + nrows)
    for i, row in enumerate(m):
        assert len(row) == ncols
        aug = list(row) + [0] * nrows
        aug[ncols + i] = 1
        ech.add(aug)
    vec = list(b)
    coeff = [0] * nrows
    for row, piv in zip(ech.rows, ech.pivcol):
        if piv >= ncols:
            break
        if vec[piv]:
            if vec[piv] % row[piv]:
                return None
            q = vec[piv] // row[piv]
            for k in range(piv, ncols):
                vec[k] -= q * row[k]
            for k in range(nrows):
                coeff[k] -= q * row[ncols + k]
    if any(vec):
        return None
    return [-c for c in coeff]


def _min_abs_pivot(d, t):
    """Position of the entry of minimal absolute value in d[t:][t:], or None."""
    best = None
    best_val = None
    for i in range(t, len(d)):
        row = d[i]
        for j in range(t, len(row)):
            v = row[j]
            if v:
                a = abs(v)
                if best is None or a < best_val:
                    best, best_val = (i, j), a
                    if a == 1:
                        return best
    return best


def snf(m):
    """Smith normal form with transforms: U, D, V with U M V = D exactly.

    U and V are unimodular; D is diagonal with d_i | d_{i+1} and d_i >= 0.
    """
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    d = [list(row) for row in m]
    u = identity_matrix(nrows)
    v = identity_matrix(ncols)
    _snf_reduce(d, nrows, ncols, u, v)
    return u, d, v


def snf_diagonal(m, ncols=None):
    """Just the diagonal of the Smith normal form (no transform bookkeeping)."""
    nrows = len(m)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    d = [list(row) for row in m]
    _snf_reduce(d, nrows, ncols, None, None)
    return [d[i][i] for i in range(min(nrows, ncols))]


def _snf_reduce(d, nrows, ncols, u, v):
    def row_op(i1, i2, q):
        # row i2 -= q * row i1
        r1, r2 = d[i1], d[i2]
        for k in range(ncols):
            r2[k] -= q * r1[k]
        if u is not None:
            r1, r2 = u[i1], u[i2]
            for k in range(nrows):
                r2[k] -= q * r1[k]

    def col_op(j1, j2, q):
        for row in d:
            row[j2] -= q * row[j1]
        if v is not None:
            for row in v:
                row[j2] -= q * row[j1]

    def swap_rows(i1, i2):
        d[i1], d[i2] = d[i2], d[i1]
        if u is not None:
            u[i1], u[i2] = u[i2], u[i1]

    def swap_cols(j1, j2):
        for row in d:
            row[j1], row[j2] = row[j2], row[j1]
        if v is not None:
            for row in v:
                row[j1], row[j2] = row[j2], row[j1]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        if u is not None:
            u[i] = [-x for x in u[i]]

    t = 0
    nmin = min(nrows, ncols)
    while t < nmin:
        pos = _min_abs_pivot(d, t)
        if pos is None:
            break
        pi, pj = pos
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        while True:
            # clear column t below/above, then row t
            dirty = False
            for i in range(t + 1, nrows):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    row_op(t, i, q)
                    if d[i][t]:  # remainder smaller than pivot: swap up
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, ncols):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    col_op(t, j, q)
                    if d[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                break
        if d[t][t] < 0:
            negate_row(t)
        t += 1
    def col_combo(j1, j2, x, y, z, w):
        # [c_j1, c_j2] <- [x c_j1 + y c_j2, z c_j1 + w c_j2], det +-1
        for row in d:
            a1, a2 = row[j1], row[j2]
            row[j1] = x * a1 + y * a2
            row[j2] = z * a1 + w * a2
        if v is not None:
            for row in v:
                a1, a2 = row[j1], row[j2]
                row[j1] = x * a1 + y * a2
                row[j2] = z * a1 + w * a2

    # enforce the divisibility chain on diag(a, b): replace with diag(g, ab/g)
    for t in range(nmin - 1):
        for s in range(t + 1, nmin):
            a, b = d[t][t], d[s][s]
            if a and b % a:
                row_op(s, t, -1)  # row t += row s: row t is now (a at t, b at s)
                x, y, g = xgcd(a, b)
                col_combo(t, s, x, y, -b // g, a // g)
                # row t = (g, 0); row s = (y*b, a*b/g); clear the (s, t) entry
                q = d[s][t] // g
                row_op(t, s, q)
                if d[s][s] < 0:
                    negate_row(s)
        if d[t][t] < 0:
            negate_row(t)


def cokernel_invariants(m, ncols=None):
    """Structure of Z^ncols / rowspace(M) as AbelianInvariants."""
    nrows = len(m)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    if nrows == 0 or ncols == 0:
        return AbelianInvariants((), ncols)
    # HNF first: cheap, and caps the SNF input at ncols rows.
    reduced = hnf(m, ncols)
    diag = snf_diagonal(reduced, ncols)
    nonzero = [x for x in diag if x]
    factors = tuple(x for x in nonzero if x > 1)
    return AbelianInvariants(factors, ncols - len(nonzero))


def quotient_structure(num, den):
    """Structure of num/den for Submodules den <= num of the same ambient."""
    assert num.ambient_rank == den.ambient_rank
    coords = num.coords_matrix(den.basis)
    return cokernel_invariants(coords, num.rank)


def mod_p_rank(m, p, ncols=None):
    """Rank of M over Z/p for p a prime (or prime power), via the SNF diagonal."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    diag = snf_diagonal(hnf(m, ncols), ncols)
    return sum(1 for x in diag if x % p)


def mod_p_rref(rows, ncols, p):
    """Reduced row echelon form over the field Z/p.

    Returns (pivot_rows, pivot_cols); zero rows are dropped.
    """
    mat = [[x % p for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][c], -1, p)
        mat[r] = [(x * inv) % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    return mat[:r], pivots


def mod_p_kernel(rows, ncols, p):
    """Basis of {x : x*M = 0 over Z/p}, via an identity augmentation."""
    nrows = len(rows)
    aug = [
        list(row) + [int(i == j) for j in range(nrows)]
        for i, row in enumerate(rows)
    ]
    red, _ = mod_p_rref(aug, ncols + nrows, p)
    return [row[ncols:] for row in red if not any(row[:ncols])]


def mod_p_solve(rows, b, p):
    """Some x with x*M = b over Z/p, or None if b is not in the row space."""
    nrows = len(rows)
    ncols = len(b)
    aug = [
        list(row) + [int(i == j) for j in range(nrows)]
        for i, row in enumerate(rows)
    ]
    red, pivots = mod_p_rref(aug, ncols + nrows, p)
    residual = [x % p for x in b]
    combo = [0] * nrows
    for row, c in zip(red, pivots):
        if c >= ncols:
            break
        f = residual[c]
        if f:
            residual = [(x - f * y) % p for x, y in zip(residual, row[:ncols])]
            combo = [(x + f * y) % p for x, y in zip(combo, row[ncols:])]
    if any(residual):
        return None
    return combo
