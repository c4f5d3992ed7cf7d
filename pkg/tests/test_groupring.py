"""Multi-variable cyclic group rings and the distinguished elements."""

from hypothesis import given
from hypothesis import strategies as st

from cyclocover.groupring import (
    GroupRingElement,
    RingShape,
    ideal_basis,
    one_minus_y,
    phi,
    u_elem,
)
from cyclocover.linalg import mat_mul

shapes = st.tuples(
    st.integers(min_value=2, max_value=5), st.integers(min_value=1, max_value=3)
).map(lambda t: RingShape(*t))


def elements(shape):
    rank = shape.ambient_rank
    return st.lists(
        st.integers(min_value=-3, max_value=3), min_size=rank, max_size=rank
    ).map(lambda c: GroupRingElement(shape, tuple(c)))


@given(shapes.flatmap(lambda s: st.tuples(elements(s), elements(s), elements(s))))
def test_ring_axioms(triple):
    a, b, c = triple
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    one = GroupRingElement.one(a.shape)
    assert a * one == a


@given(shapes.flatmap(lambda s: st.tuples(elements(s), elements(s))))
def test_bar_is_an_involutive_ring_map(pair):
    a, b = pair
    assert a.bar().bar() == a
    assert (a * b).bar() == a.bar() * b.bar()
    assert (a + b).bar() == a.bar() + b.bar()


@given(shapes.flatmap(lambda s: st.tuples(elements(s), elements(s))))
def test_mult_matrix_represents_multiplication(pair):
    a, b = pair
    prod = mat_mul([list(a.coeffs)], b.mult_matrix())[0]
    assert tuple(prod) == (a * b).coeffs


@given(shapes.flatmap(lambda s: st.tuples(elements(s), elements(s))))
def test_augmentation_is_a_ring_map(pair):
    a, b = pair
    assert (a * b).augmentation() == a.augmentation() * b.augmentation()
    assert (a + b).augmentation() == a.augmentation() + b.augmentation()


@given(shapes.flatmap(elements), st.integers(min_value=1, max_value=2))
def test_embed_is_multiplicative_and_injective_on_coeffs(a, extra):
    e = a.embed(extra)
    assert e.shape.m == a.shape.m + extra
    one = GroupRingElement.one(a.shape)
    assert one.embed(extra) == GroupRingElement.one(e.shape)
    b = a * a
    assert b.embed(extra) == e * e


@given(st.integers(min_value=2, max_value=6), st.integers(min_value=1, max_value=3))
def test_u_annihilates_one_minus_y(d, m):
    for k in range(m):
        u = u_elem(d, m, k)
        assert (one_minus_y(d, m, k) * u).is_zero()
        assert u.augmentation() == d


@given(st.integers(min_value=2, max_value=5), st.integers(min_value=0, max_value=2))
def test_phi_recursion(d, n):
    """phi_n = phi_{n-1} (embedded) * product over earlier factors of u/(...)
    is checked through the defining product: phi_n * prod(1 - y_k) has
    augmentation 0 for n >= 0, and phi_n has rank (d-1)^{n+1} as an ideal."""
    p = phi(d, n)
    assert p.shape == RingShape(d, n + 1)
    ideal = ideal_basis([p])
    assert ideal.rank == (d - 1) ** (n + 1)


@given(st.integers(min_value=2, max_value=5))
def test_phi_base_case(d):
    # phi_0 generates the augmentation ideal of Z[mu_d]: rank d-1 and every
    # basis vector has augmentation zero.
    ideal = ideal_basis([phi(d, 0)])
    assert ideal.rank == d - 1
    shape = RingShape(d, 1)
    for row in ideal.basis:
        assert sum(row) % d == 0


def test_ideal_basis_of_unit_is_full():
    shape = RingShape(3, 1)
    assert ideal_basis([GroupRingElement.one(shape)]).rank == 3


def test_one_minus_y_default_is_last_factor():
    d, m = 3, 2
    assert one_minus_y(d, m) == one_minus_y(d, m, m - 1)
