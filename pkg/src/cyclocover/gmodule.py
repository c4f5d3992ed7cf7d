"""Modules with an order-d automorphism, their invariants/coinvariants, and
the two structural maps induced by the group-sum operator and by g0 - 1.

Everything is presented: a module is generators/relations in explicit
integer coordinates, a map is a matrix together with a well-definedness
certificate (its check that relations land in relations).  A failing
certificate localizes a bug to a coordinate instead of silently producing
a wrong quotient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .linalg import (
    AbelianInvariants,
    Submodule,
    cokernel_invariants,
    identity_matrix,
    is_identity,
    kernel_basis,
    mat_mul,
    mat_sub,
    quotient_structure,
    snf,
)


@dataclass(frozen=True)
class Presentation:
    """The abelian group Z^gens_rank / rowspace(relations)."""

    gens_rank: int
    relations: Submodule

    def __post_init__(self):
        assert self.relations.ambient_rank == self.gens_rank

    @classmethod
    def free(cls, rank):
        return cls(rank, Submodule.zero(rank))

    @classmethod
    def from_relation_rows(cls, gens_rank, rows):
        return cls(gens_rank, Submodule.from_rows(gens_rank, rows))

    def structure(self):
        return cokernel_invariants(list(self.relations.basis), self.gens_rank)

    def order(self):
        return self.structure().order()

    def is_trivial(self):
        return self.structure().is_trivial

    def contains_zero_class(self, vec):
        """Whether the generator-coordinate vector represents 0."""
        return self.relations.contains(list(vec))

    def smith_generators(self):
        """Rows x_i in generator coordinates with [x_i] generating the cyclic
        summands of the structure, matching structure() order (torsion first,
        factors of 1 dropped)."""
        rels = list(self.relations.basis)
        if not rels:
            return identity_matrix(self.gens_rank), self.structure()
        u, dmat, v = snf([list(r) for r in rels])
        # columns of V index the new generators; generator i of the quotient
        # is the i-th row of V^{-T}; equivalently the dual basis.  We only
        # need representatives: rows of inverse-transpose of V = rows of the
        # adjugate scaled; easier: new coords x' = x V, so representatives of
        # the new generators are the rows of V^{-1}.  V is unimodular, invert
        # by solving.
        vinv = _unimodular_inverse(v)
        gens = []
        struct = self.structure()
        diag = [dmat[i][i] for i in range(min(len(dmat), self.gens_rank))]
        # torsion generators with d_i > 1, then free generators (d_i absent/0)
        for i, d in enumerate(diag):
            if d > 1:
                gens.append(vinv[i])
        for i in range(self.gens_rank):
            if i >= len(diag) or diag[i] == 0:
                gens.append(vinv[i])
        return gens, struct


def _unimodular_inverse(v):
    n = len(v)
    # Gauss-Jordan over Q would lose exactness; use the adjugate via repeated
    # integer elimination: for unimodular V, solve V^T x = e_i exactly.
    from .linalg import solve_left

    rows = []
    for i in range(n):
        e = [1 if j == i else 0 for j in range(n)]
        x = solve_left(v, e)
        assert x is not None
        rows.append(x)
    return rows


@dataclass(frozen=True)
class PresentedMap:
    """A homomorphism between presented groups, as a matrix on generators.

    matrix is dom.gens_rank x cod.gens_rank and acts on the right of
    generator-coordinate rows.
    """

    dom: Presentation
    cod: Presentation
    matrix: tuple

    @classmethod
    def build(cls, dom, cod, matrix, check=True):
        m = tuple(tuple(r) for r in matrix)
        pm = cls(dom, cod, m)
        if check and not pm.well_defined():
            raise ValueError("map does not send relations into relations")
        return pm

    def well_defined(self):
        """Certificate: every domain relation maps into the codomain relations."""
        imgs = mat_mul([list(r) for r in self.dom.relations.basis], self._mat())
        return all(self.cod.relations.contains(row) for row in imgs)

    def _mat(self):
        return [list(r) for r in self.matrix]

    def apply(self, vec):
        return mat_mul([list(vec)], self._mat())[0]

    def compose(self, other):
        """self then other (matrices multiply left-to-right)."""
        assert self.cod.gens_rank == other.dom.gens_rank
        return PresentedMap.build(
            self.dom, other.cod, mat_mul(self._mat(), other._mat()), check=False
        )

    def cokernel(self):
        rows = self._mat() + [list(r) for r in self.cod.relations.basis]
        return cokernel_invariants(rows, self.cod.gens_rank)

    def kernel_structure(self):
        """Isomorphism type of the kernel of the induced map."""
        pre = self.preimage_submodule(self.cod.relations)
        return quotient_structure(pre, self.dom.relations)

    def preimage_submodule(self, target):
        """{x in Z^dom : x . matrix in span(target)} as a Submodule."""
        assert target.ambient_rank == self.cod.gens_rank
        stacked = self._mat() + [[-x for x in r] for r in target.basis]
        ker = kernel_basis(stacked, self.cod.gens_rank)
        rows = [list(r[: self.dom.gens_rank]) for r in ker.basis]
        return Submodule.from_rows(self.dom.gens_rank, rows)

    def is_surjective(self):
        return self.cokernel().is_trivial

    def is_injective(self):
        return self.kernel_structure().is_trivial

    def is_isomorphism(self):
        return self.is_surjective() and self.is_injective()

    def solve_preimage(self, target_vec):
        """x with x.matrix == target_vec modulo codomain relations, or None."""
        from .linalg import solve_left

        stacked = self._mat() + [list(r) for r in self.cod.relations.basis]
        sol = solve_left(stacked, list(target_vec))
        if sol is None:
            return None
        return sol[: self.dom.gens_rank]

    def equals(self, other):
        """Same induced map on the quotients (difference kills all generators)."""
        assert self.dom.gens_rank == other.dom.gens_rank
        assert self.cod == other.cod
        diff = mat_sub(self._mat(), other._mat())
        return all(self.cod.relations.contains(row) for row in diff)


@dataclass(frozen=True)
class EquivariantModule:
    """A subquotient A/B of Z^ambient_rank with an order-d automorphism.

    The action matrix acts on the right of row vectors and must preserve
    both A and B; this is asserted at construction.
    """

    ambient_rank: int
    gens: Submodule
    rels: Submodule
    action: tuple
    order: int

    @classmethod
    def build(cls, ambient_rank, gens, rels, action, order):
        action = tuple(tuple(r) for r in action)
        mod = cls(ambient_rank, gens, rels, action, order)
        g = mod._action()
        power = identity_matrix(ambient_rank)
        for _ in range(order):
            power = mat_mul(power, g)
        assert is_identity(power), "action order does not divide d"
        assert gens.contains_submodule(gens.image_under(g, ambient_rank)), (
            "action does not preserve generators"
        )
        assert rels.contains_submodule(rels.image_under(g, ambient_rank)), (
            "action does not preserve relations"
        )
        assert gens.contains_submodule(rels), "relations not inside generators"
        return mod

    @classmethod
    def regular(cls, d):
        """Z[mu_d] as a module over itself: the regular representation."""
        perm = [[0] * d for _ in range(d)]
        for i in range(d):
            perm[i][(i + 1) % d] = 1
        return cls.build(d, Submodule.full(d), Submodule.zero(d), perm, d)

    @classmethod
    def trivial(cls, d):
        """Z with the trivial mu_d-action."""
        return cls.build(1, Submodule.full(1), Submodule.zero(1), [[1]], d)

    @classmethod
    def augmentation_ideal(cls, d):
        """I_d = ker(epsilon) inside Z[mu_d], with the restricted action."""
        ones = [[1] for _ in range(d)]
        sub = kernel_basis(ones, 1)
        perm = [[0] * d for _ in range(d)]
        for i in range(d):
            perm[i][(i + 1) % d] = 1
        return cls.build(d, sub, Submodule.zero(d), perm, d)

    def _action(self):
        return [list(r) for r in self.action]

    def action_minus_one(self):
        return mat_sub(self._action(), identity_matrix(self.ambient_rank))

    def norm_matrix(self):
        """Sum of all powers of the action: the group-sum operator."""
        g = self._action()
        acc = identity_matrix(self.ambient_rank)
        total = identity_matrix(self.ambient_rank)
        for _ in range(self.order - 1):
            acc = mat_mul(acc, g)
            total = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(total, acc)]
        return total

    def presentation(self):
        """Generators = basis of A; relations = coordinates of B."""
        rel_rows = self.gens.coords_matrix(self.rels.basis)
        return Presentation.from_relation_rows(self.gens.rank, rel_rows)


def invariants(mod):
    """The submodule of invariant classes, as an EquivariantModule.

    Computed as the full preimage {a in A : a(g-1) in B}, so for torsion-free
    modules this is exactly A intersected with ker(g-1)."""
    gm1 = mod.action_minus_one()
    a_rows = [list(r) for r in mod.gens.basis]
    moved = mat_mul(a_rows, gm1)
    stacked = moved + [[-x for x in r] for r in mod.rels.basis]
    ker = kernel_basis(stacked, mod.ambient_rank)
    rows = []
    for kr in ker.basis:
        coeffs = kr[: len(a_rows)]
        vec = [0] * mod.ambient_rank
        for c, row in zip(coeffs, a_rows):
            if c:
                for j in range(mod.ambient_rank):
                    vec[j] += c * row[j]
        rows.append(vec)
    inv = Submodule.from_rows(mod.ambient_rank, rows).sum(mod.rels)
    return EquivariantModule.build(
        mod.ambient_rank, inv, mod.rels, mod.action, mod.order
    )


def coinvariants(mod):
    """(structure of M/(g-1)M, projection as a PresentedMap from M's presentation)."""
    gm1 = mod.action_minus_one()
    a_rows = [list(r) for r in mod.gens.basis]
    moved = mat_mul(a_rows, gm1)
    rel_rows = [list(r) for r in mod.rels.basis] + moved
    coords = mod.gens.coords_matrix(rel_rows)
    pres = Presentation.from_relation_rows(mod.gens.rank, coords)
    proj = PresentedMap.build(
        mod.presentation(), pres, identity_matrix(mod.gens.rank), check=True
    )
    return pres.structure(), proj


def r_map(mod):
    """The map (M/M^G)_G -> Z/d (x) M^G induced by the group-sum operator.

    Domain presentation: generators = basis of A, relations = B, the lifted
    invariants, and (g-1)A.  Codomain: generators = basis of the invariant
    submodule X, relations = B and d*X.  The matrix sends a to its group sum
    in X-coordinates; well-definedness is certified by the relation check.
    """
    inv = invariants(mod)
    x_sub = inv.gens
    a_rows = [list(r) for r in mod.gens.basis]
    gm1 = mod.action_minus_one()

    dom_rel_ambient = (
        [list(r) for r in mod.rels.basis]
        + [list(r) for r in x_sub.basis]
        + mat_mul(a_rows, gm1)
    )
    dom = Presentation.from_relation_rows(
        mod.gens.rank, mod.gens.coords_matrix(dom_rel_ambient)
    )

    cod_rel_ambient = [list(r) for r in mod.rels.basis] + [
        [mod.order * x for x in r] for r in x_sub.basis
    ]
    cod = Presentation.from_relation_rows(
        x_sub.rank, x_sub.coords_matrix(cod_rel_ambient)
    )

    norm = mod.norm_matrix()
    images = mat_mul(a_rows, norm)
    matrix = x_sub.coords_matrix(images)  # group sums are invariant classes
    return PresentedMap.build(dom, cod, matrix, check=True)


def s_map(mod, generator_power=1):
    """The map Z/d (x) M_G -> (IM)_G sending [m] to [(g0 - 1) m].

    generator_power selects g0 = g^generator_power; it must generate mu_d.
    """
    if math.gcd(generator_power, mod.order) != 1:
        raise ValueError("chosen power does not generate the cyclic group")
    g = mod._action()
    g0 = identity_matrix(mod.ambient_rank)
    for _ in range(generator_power):
        g0 = mat_mul(g0, g)
    g0m1 = mat_sub(g0, identity_matrix(mod.ambient_rank))

    a_rows = [list(r) for r in mod.gens.basis]
    gm1 = mod.action_minus_one()
    moved = mat_mul(a_rows, gm1)

    # domain: A / (B + dA + (g-1)A)
    dom_rel_ambient = (
        [list(r) for r in mod.rels.basis]
        + [[mod.order * x for x in r] for r in a_rows]
        + moved
    )
    dom = Presentation.from_relation_rows(
        mod.gens.rank, mod.gens.coords_matrix(dom_rel_ambient)
    )

    # codomain: IM / (B + (g-1)IM) where IM = span((g-1)A) + B
    im_sub = Submodule.from_rows(mod.ambient_rank, moved).sum(mod.rels)
    im_rows = [list(r) for r in im_sub.basis]
    cod_rel_ambient = [list(r) for r in mod.rels.basis] + mat_mul(im_rows, gm1)
    cod = Presentation.from_relation_rows(
        im_sub.rank, im_sub.coords_matrix(cod_rel_ambient)
    )

    images = mat_mul(a_rows, g0m1)
    matrix = im_sub.coords_matrix(images)
    return PresentedMap.build(dom, cod, matrix, check=True)
