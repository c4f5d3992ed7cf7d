"""Lattices with bilinear forms, root systems, and monodromy transformations.

Two kinds of objects live here.  LatticeWithForm is a free Z-module with an
integer Gram matrix, either symmetric or antisymmetric; it supports the
classical transvection attached to a vanishing vector, quadratic refinements,
mod-p radicals, and reflection-group enumeration.  HermitianModule is a free
module over the rank-one group ring Z[y]/(y^d - 1) carrying a sesquilinear
Gram matrix; it supports the order-d generalization of the transvection.

Vectors are rows and matrices act on the right throughout, matching linalg.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .groupring import GroupRingElement, RingShape
from .linalg import (
    cokernel_invariants,
    identity_matrix,
    mat_mul,
    mat_transpose,
    mod_p_kernel,
    mod_p_rref,
    mod_p_solve,
)

WEYL_ENUMERATION_CAP = 4_000_000

# Entries of reflection-group elements written in the simple-root basis are
# small, so reducing mod this prime loses nothing while keeping BFS keys
# single bytes.
_MATRIX_HASH_PRIME = 251


class EnumerationCapExceeded(RuntimeError):
    """Raised when a group enumeration grows past its element cap."""


_DYNKIN_EDGES = {
    # Bourbaki numbering: the branch node is 4, the short tail is 2.
    "E6": ((1, 3), (3, 4), (2, 4), (4, 5), (5, 6)),
    "E7": ((1, 3), (3, 4), (2, 4), (4, 5), (5, 6), (6, 7)),
}


def cartan_matrix(name):
    """Cartan matrix of type A_k (name "A<k>"), E6 or E7, simply laced."""
    if name in _DYNKIN_EDGES:
        edges = _DYNKIN_EDGES[name]
        rank = int(name[1])
    elif name.startswith("A") and name[1:].isdigit() and int(name[1:]) >= 1:
        rank = int(name[1:])
        edges = tuple((i, i + 1) for i in range(1, rank))
    else:
        raise ValueError("unknown lattice type: %r" % (name,))
    gram = [[2 * int(i == j) for j in range(rank)] for i in range(rank)]
    for a, b in edges:
        gram[a - 1][b - 1] = -1
        gram[b - 1][a - 1] = -1
    return gram


@dataclass(frozen=True)
class LatticeWithForm:
    """Free Z-module with an integer Gram matrix of declared parity.

    vanishing_vectors marks distinguished classes (for root lattices, the
    simple roots); transvections and quadratic refinements refer to them.
    """

    rank: int
    gram: tuple
    parity: str
    vanishing_vectors: tuple = ()

    def __post_init__(self):
        assert self.parity in ("symmetric", "antisymmetric")
        assert len(self.gram) == self.rank
        for row in self.gram:
            assert len(row) == self.rank
        for i in range(self.rank):
            for j in range(self.rank):
                if self.parity == "symmetric":
                    assert self.gram[i][j] == self.gram[j][i]
                else:
                    assert self.gram[i][j] == -self.gram[j][i]
        for v in self.vanishing_vectors:
            assert len(v) == self.rank

    def pairing(self, x, y):
        return sum(
            x[i] * self.gram[i][j] * y[j]
            for i in range(self.rank)
            for j in range(self.rank)
        )

    def is_even(self):
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))


def root_lattice(name, sign=-1):
    """Root lattice of the named type with Gram = sign * Cartan matrix.

    The simple roots are the standard basis vectors and are recorded as the
    vanishing vectors.  sign = -1 gives the negative definite form that takes
    the value -2 on roots.
    """
    assert sign in (1, -1)
    cartan = cartan_matrix(name)
    rank = len(cartan)
    gram = tuple(tuple(sign * x for x in row) for row in cartan)
    basis = tuple(
        tuple(int(i == j) for j in range(rank)) for i in range(rank)
    )
    return LatticeWithForm(rank, gram, "symmetric", basis)


def simple_reflection_matrix(lat, i):
    """Reflection in the i-th basis root, as a matrix acting on row vectors.

    s_i(a) = a - 2 (a.delta_i)/(delta_i.delta_i) delta_i; integral because
    the basis vector has square +-2 and the Gram is +-Cartan.
    """
    dd = lat.gram[i][i]
    assert dd in (2, -2)
    sign = dd // 2
    t = [list(row) for row in identity_matrix(lat.rank)]
    for k in range(lat.rank):
        t[k][i] -= sign * lat.gram[k][i]
    return [tuple(row) for row in t]


def all_roots(lat):
    """All roots of a root lattice: the orbit of the basis under reflections.

    Returns a sorted tuple, so the count and the set are deterministic.
    """
    gens = [simple_reflection_matrix(lat, i) for i in range(lat.rank)]
    seen = set(lat.vanishing_vectors)
    frontier = list(lat.vanishing_vectors)
    while frontier:
        vec = frontier.pop()
        for g in gens:
            img = tuple(
                sum(vec[k] * g[k][j] for k in range(lat.rank))
                for j in range(lat.rank)
            )
            if img not in seen:
                seen.add(img)
                frontier.append(img)
    return tuple(sorted(seen))


def discriminant_group(lat):
    """Invariant factors of the dual quotient, from the Gram matrix."""
    return cokernel_invariants([list(r) for r in lat.gram], lat.rank)


def _transvection_sign(n):
    return -1 if (n * (n + 1) // 2) % 2 else 1


def pl_transvection(lat, delta, n_parity):
    """Monodromy transformation a -> a + (-1)^{n(n+1)/2} (a.delta) delta.

    In the symmetric case n must be odd, written n = 2m+1, and delta must
    satisfy delta.delta = (-1)^m 2; the result is then an orthogonal
    reflection (an involution).  In the antisymmetric case n must be even and
    the result is a symplectic transvection.  The exponent n(n+1)/2 is forced
    by requiring the reflection property together with that value of
    delta.delta; the variant n(n-1)/2 sends delta to 3*delta.
    """
    n = n_parity
    s = _transvection_sign(n)
    dd = lat.pairing(delta, delta)
    if lat.parity == "symmetric":
        if n % 2 == 0:
            raise ValueError("symmetric case needs odd n")
        m = (n - 1) // 2
        expected = 2 if m % 2 == 0 else -2
        if dd != expected:
            raise ValueError(
                "vanishing vector must have square %d, got %d" % (expected, dd)
            )
    else:
        if n % 2:
            raise ValueError("antisymmetric case needs even n")
    w = [
        sum(lat.gram[k][j] * delta[j] for j in range(lat.rank))
        for k in range(lat.rank)
    ]
    t = [
        tuple(int(k == j) + s * w[k] * delta[j] for j in range(lat.rank))
        for k in range(lat.rank)
    ]
    gram = [list(r) for r in lat.gram]
    assert mat_mul(mat_mul(t, gram), mat_transpose(t)) == gram
    if lat.parity == "symmetric":
        assert mat_mul(t, t) == identity_matrix(lat.rank)
    return t


def quadratic_refinement(lat, n):
    """Quadratic refinement of the form, per parity of n.

    Odd n: the symmetric form must be even; q(x) = x.x/2 is the integral
    refinement and q(delta) is compared with the predicted (-1)^{(n-1)(n-2)/2}
    on every vanishing vector.  Even n: searches for an F_2-valued q on the
    mod-2 reduction with q(x+y) = q(x)+q(y)+x.y and q = 1 on the images of
    the vanishing vectors, reporting the solution or infeasibility.
    """
    if n % 2:
        if lat.parity != "symmetric":
            raise ValueError("odd-n refinement needs a symmetric form")
        if not lat.is_even():
            raise ValueError("form is not even; no integral refinement")

        def q(v):
            return lat.pairing(v, v) // 2

        expected = _transvection_sign(n - 2)  # (-1)^{(n-1)(n-2)/2}
        values = tuple(q(v) for v in lat.vanishing_vectors)
        return {
            "parity": "integral",
            "basis_values": tuple(q(b) for b in identity_matrix(lat.rank)),
            "vanishing_values": values,
            "expected_vanishing_value": expected,
            "vanishing_match": all(v == expected for v in values),
            "feasible": True,
        }

    # Even n: q is determined by its basis values q_i in F_2 via
    # q(sum x_i e_i) = sum x_i q_i + sum_{i<j} x_i x_j (e_i.e_j)  (mod 2).
    def cross_term(v):
        return sum(
            v[i] * v[j] * lat.gram[i][j]
            for i in range(lat.rank)
            for j in range(i + 1, lat.rank)
        ) % 2

    rows = []
    rhs = []
    for v in lat.vanishing_vectors:
        rows.append([x % 2 for x in v])
        rhs.append((1 - cross_term(v)) % 2)
    aug = [row + [b] for row, b in zip(rows, rhs)]
    red, pivots = mod_p_rref(aug, lat.rank + 1, 2)
    if lat.rank in pivots:
        return {"parity": "mod2", "feasible": False, "basis_values": None}
    q_basis = [0] * lat.rank
    for row, c in zip(red, pivots):
        q_basis[c] = row[lat.rank]

    def q2(v):
        return (
            sum(v[i] * q_basis[i] for i in range(lat.rank)) + cross_term(v)
        ) % 2

    assert all(q2(v) == 1 for v in lat.vanishing_vectors)
    return {
        "parity": "mod2",
        "feasible": True,
        "basis_values": tuple(q_basis),
        "vanishing_values": tuple(q2(v) for v in lat.vanishing_vectors),
    }


@dataclass(frozen=True)
class ModPQuotient:
    """Reduction of a form mod p: radical, nondegenerate quotient, lift."""

    p: int
    dim: int
    radical_dim: int
    quotient_gram: tuple
    projection: tuple
    support: tuple

    @property
    def quotient_dim(self):
        return self.dim - self.radical_dim


def mod_p_quotient(lat, p):
    """Radical of the Gram matrix mod p and the induced quotient form.

    The quotient basis is the set of standard basis vectors indexed by
    `support` (complementary to the radical pivots); `projection` maps each
    ambient basis vector to its quotient coordinates mod p.
    """
    gram = [list(r) for r in lat.gram]
    radical = mod_p_kernel(gram, lat.rank, p)
    _, rad_pivots = mod_p_rref(radical, lat.rank, p) if radical else ([], [])
    support = tuple(j for j in range(lat.rank) if j not in rad_pivots)
    qdim = len(support)
    quotient_gram = tuple(
        tuple(lat.gram[a][b] % p for b in support) for a in support
    )
    _, qpivots = mod_p_rref([list(r) for r in quotient_gram], qdim, p)
    assert len(qpivots) == qdim, "quotient form is degenerate"
    # Coset representatives: solve e_j = sum c_i e_{support[i]} + radical.
    solve_rows = [
        [int(k == s) for k in range(lat.rank)] for s in support
    ] + radical
    projection = []
    for j in range(lat.rank):
        target = [int(k == j) for k in range(lat.rank)]
        x = mod_p_solve(solve_rows, target, p)
        assert x is not None
        projection.append(tuple(x[:qdim]))
    projection = tuple(projection)
    # The projection intertwines the forms since the radical is orthogonal
    # to everything mod p.
    for i in range(lat.rank):
        for j in range(lat.rank):
            paired = sum(
                projection[i][a] * quotient_gram[a][b] * projection[j][b]
                for a in range(qdim)
                for b in range(qdim)
            )
            assert paired % p == lat.gram[i][j] % p
    return ModPQuotient(
        p, lat.rank, len(radical), quotient_gram, projection, support
    )


def _matrix_group_order(generators, modulus, cap):
    """Order of the matrix group generated mod `modulus`, by batched BFS.

    Deterministic: the result is a count over a closure, independent of
    visit order.  Raises EnumerationCapExceeded beyond `cap` elements.
    """
    rank = len(generators[0])
    gens = [np.array(g, dtype=np.int64) % modulus for g in generators]
    ident = np.eye(rank, dtype=np.uint8)
    visited = {ident.tobytes()}
    frontier = ident.reshape(1, rank, rank)
    while frontier.shape[0]:
        produced = []
        for g in gens:
            prod = (frontier.astype(np.int64) @ g) % modulus
            produced.append(prod.astype(np.uint8).reshape(-1, rank * rank))
        batch = np.unique(np.concatenate(produced), axis=0)
        fresh = []
        for row in batch:
            key = row.tobytes()
            if key not in visited:
                visited.add(key)
                fresh.append(row)
        if len(visited) > cap:
            raise EnumerationCapExceeded(
                "matrix group enumeration passed %d elements" % cap
            )
        if fresh:
            frontier = np.stack(fresh).reshape(-1, rank, rank)
        else:
            frontier = np.empty((0, rank, rank), dtype=np.uint8)
    return len(visited)


@dataclass(frozen=True)
class WeylOrders:
    image_order: int
    group_order: int
    faithful: bool


def weyl_image_order(lat, p, cap=WEYL_ENUMERATION_CAP):
    """Orders of the reflection group and of its image on the mod-p quotient.

    The group itself is enumerated over Z in the simple-root basis; entries
    of its elements are far below _MATRIX_HASH_PRIME in absolute value, so
    reducing mod that prime is faithful and keeps the BFS keys compact.
    """
    gens = [simple_reflection_matrix(lat, i) for i in range(lat.rank)]
    group_order = _matrix_group_order(gens, _MATRIX_HASH_PRIME, cap)
    quot = mod_p_quotient(lat, p)
    qdim = quot.quotient_dim
    qgens = []
    for g in gens:
        rows = []
        for a, s in enumerate(quot.support):
            image = g[s]  # image of the quotient basis vector e_s
            row = [0] * qdim
            for j in range(lat.rank):
                if image[j]:
                    for b in range(qdim):
                        row[b] += image[j] * quot.projection[j][b]
            rows.append([x % p for x in row])
        qgens.append(rows)
    image_order = _matrix_group_order(qgens, p, cap)
    return WeylOrders(image_order, group_order, image_order == group_order)


def _ring_one(d):
    return GroupRingElement.one(RingShape(d, 1))


def _ring_y(d):
    return GroupRingElement.generator(RingShape(d, 1), 0)


@dataclass(frozen=True)
class HermitianModule:
    """Free module over Z[y]/(y^d - 1) with a sesquilinear Gram matrix.

    gram[i][j] is the ring-valued pairing <b_i, b_j>; the conjugate-transpose
    of the matrix equals its (-1)^n_parity multiple (bar applies y -> y^{-1}).
    seifert, when present, is an unsymmetrized refinement of the pairing with
    seifert + (-1)^n_parity * conjugate-transpose(seifert) = gram; it is the
    data the monodromy formula consumes.
    """

    d: int
    rank: int
    gram: tuple
    n_parity: int
    seifert: tuple = None

    def __post_init__(self):
        sgn = -1 if self.n_parity % 2 else 1
        for i in range(self.rank):
            for j in range(self.rank):
                assert self.gram[i][j].bar() == self.gram[j][i].scaled(sgn)
        if self.seifert is not None:
            for i in range(self.rank):
                for j in range(self.rank):
                    sym = self.seifert[i][j] + self.seifert[j][i].bar().scaled(
                        sgn
                    )
                    assert sym == self.gram[i][j]

    def pairing_matrix(self):
        """The matrix the transvection formula pairs against."""
        return self.seifert if self.seifert is not None else self.gram

    def herm_pairing(self, x, y, matrix=None):
        """<x, y> = sum_i sum_j x_i matrix[i][j] bar(y_j), ring valued."""
        m = self.gram if matrix is None else matrix
        acc = _ring_one(self.d).scaled(0)
        for i in range(self.rank):
            for j in range(self.rank):
                acc = acc + x[i] * m[i][j] * y[j].bar()
        return acc


def standard_a_model(d, n):
    """The rank-one hermitian module of a cyclic-cover degeneration.

    Over Z[y]/(y^d - 1) with a single generator e, unsymmetrized pairing
    <e, e> = (-1)^{(n+1)n/2} (y - 1) and Gram its symmetrization.  The
    underlying Z-module of e's span mod the norm element is the A_{d-1}
    lattice; see integer_realization.  The symmetrized Gram is annihilated
    by the norm element, so the form descends to that quotient.
    """
    s = _transvection_sign(n)
    gamma = (_ring_y(d) - _ring_one(d)).scaled(s)
    sgn = -1 if n % 2 else 1
    gram = ((gamma + gamma.bar().scaled(sgn),),)
    return HermitianModule(d, 1, gram, n % 2, ((gamma,),))


def _herm_identity(d, rank):
    one = _ring_one(d)
    zero = one.scaled(0)
    return tuple(
        tuple(one if i == j else zero for j in range(rank)) for i in range(rank)
    )


def herm_mat_mul(a, b):
    rank = len(a)
    inner = len(b)
    out = []
    for i in range(rank):
        row = []
        for j in range(len(b[0])):
            acc = a[i][0] * b[0][j]
            for k in range(1, inner):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def pham_reflection(module, delta_hat, n):
    """Order-d monodromy transformation attached to a vanishing generator.

    T(a) = a + (-1)^{(n+1)n/2} <a, delta> delta, where <,> pairs against the
    module's unsymmetrized (seifert) matrix when present.  Returns the rank x
    rank matrix over the ring, acting on coordinate rows on the right.
    Preserves the symmetrized hermitian form; on the standard model it is
    multiplication by y, of order exactly d.
    """
    d = module.d
    s = _transvection_sign(n)
    b = module.pairing_matrix()
    one = _ring_one(d)
    # <b_i, delta> for each basis vector b_i.
    basis = [
        tuple(one if k == i else one.scaled(0) for k in range(module.rank))
        for i in range(module.rank)
    ]
    pairings = [module.herm_pairing(e, delta_hat, b) for e in basis]
    self_pairing = module.herm_pairing(delta_hat, delta_hat, b)
    t_scalar = one + self_pairing.scaled(s)
    if not (t_scalar * t_scalar.bar()) == one:
        raise ValueError(
            "vanishing generator does not span a unitary line: "
            "1 + s<delta,delta> is not a unitary ring element"
        )
    t = []
    for i in range(module.rank):
        row = []
        for k in range(module.rank):
            entry = one if i == k else one.scaled(0)
            row.append(entry + (pairings[i] * delta_hat[k]).scaled(s))
        t.append(tuple(row))
    t = tuple(t)
    # Exact form preservation: <Ta, Tb> = <a, b> on the symmetrized Gram.
    conj_t = tuple(
        tuple(t[j][i].bar() for j in range(module.rank))
        for i in range(module.rank)
    )
    assert herm_mat_mul(herm_mat_mul(t, module.gram), conj_t) == module.gram
    return t


def herm_matrix_order(module, t, cap=64):
    """Multiplicative order of a ring matrix, or None past the cap."""
    ident = _herm_identity(module.d, module.rank)
    acc = t
    for k in range(1, cap + 1):
        if acc == ident:
            return k
        acc = herm_mat_mul(acc, t)
    return None


def integer_realization(module):
    """Z-model of a rank-one module modulo the norm element.

    Basis e, y e, ..., y^{d-2} e of the quotient by u = 1 + y + ... +
    y^{d-1}; requires the Gram entry to be annihilated by u so the pairing
    descends.  Returns (gram, reduce) where gram is the (d-1) x (d-1)
    integer matrix and reduce maps a ring matrix to its integer matrix on
    this basis.
    """
    assert module.rank == 1
    d = module.d
    shape = RingShape(d, 1)
    gamma = module.gram[0][0]
    u = GroupRingElement(shape, (1,) * d)
    assert (u * gamma).is_zero(), "Gram entry must kill the norm element"
    # (y^i e . y^j e) = coefficient of y^{j-i} in the Gram entry.
    gram = [
        [gamma.coeffs[(j - i) % d] for j in range(d - 1)] for i in range(d - 1)
    ]

    def reduce_to_z(t):
        rows = []
        for i in range(d - 1):
            img = GroupRingElement.monomial(shape, (i,)) * t[0][0]
            row = [img.coeffs[k] for k in range(d - 1)]
            top = img.coeffs[d - 1]  # y^{d-1} = -(1 + y + ... + y^{d-2})
            rows.append([x - top for x in row])
        return rows

    return gram, reduce_to_z
