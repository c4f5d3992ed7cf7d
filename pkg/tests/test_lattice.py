"""Root lattices, their forms mod p, and the monodromy transformations."""

import pytest

from cyclocover.groupring import GroupRingElement
from cyclocover.lattice import (
    EnumerationCapExceeded,
    HermitianModule,
    all_roots,
    cartan_matrix,
    discriminant_group,
    herm_mat_mul,
    herm_matrix_order,
    integer_realization,
    mod_p_quotient,
    pham_reflection,
    pl_transvection,
    quadratic_refinement,
    root_lattice,
    simple_reflection_matrix,
    standard_a_model,
    weyl_image_order,
)
from cyclocover.linalg import identity_matrix, mat_mul, mat_transpose


def test_cartan_matrices():
    a2 = cartan_matrix("A2")
    assert a2 == [[2, -1], [-1, 2]]
    e6 = cartan_matrix("E6")
    assert len(e6) == 6 and all(e6[i][i] == 2 for i in range(6))
    assert sum(x == -1 for row in e6 for x in row) == 10  # 5 edges, two ends
    e7 = cartan_matrix("E7")
    assert sum(x == -1 for row in e7 for x in row) == 12


@pytest.mark.parametrize(
    "name,count", [("A1", 2), ("A2", 6), ("A3", 12), ("E6", 72), ("E7", 126)]
)
def test_root_counts(name, count):
    lat = root_lattice(name, -1)
    assert len(all_roots(lat)) == count


@pytest.mark.parametrize(
    "name,factors", [("A1", (2,)), ("A2", (3,)), ("E6", (3,)), ("E7", (2,))]
)
def test_discriminant_groups(name, factors):
    lat = root_lattice(name, -1)
    assert discriminant_group(lat).invariant_factors == factors


@pytest.mark.parametrize("name", ["A2", "E6", "E7"])
def test_simple_reflections_preserve_form(name):
    lat = root_lattice(name, -1)
    gram = [list(r) for r in lat.gram]
    for i in range(lat.rank):
        s = simple_reflection_matrix(lat, i)
        assert mat_mul(mat_mul(s, gram), mat_transpose(s)) == gram
        assert mat_mul(s, s) == identity_matrix(lat.rank)


def test_pl_transvection_is_a_form_preserving_involution():
    lat = root_lattice("E6", -1)
    gram = [list(r) for r in lat.gram]
    for delta in lat.vanishing_vectors:
        t = pl_transvection(lat, delta, 3)
        assert mat_mul(mat_mul(t, gram), mat_transpose(t)) == gram
        assert mat_mul(t, t) == identity_matrix(lat.rank)
        # delta itself is sent to -delta (a reflection in the mirror).
        image = mat_mul([list(delta)], t)[0]
        assert image == [-x for x in delta]


def test_quadratic_refinement_e6():
    lat = root_lattice("E6", -1)
    ref = quadratic_refinement(lat, 3)
    assert ref["parity"] == "integral"
    assert ref["expected_vanishing_value"] == -1
    assert ref["vanishing_match"]


def test_quadratic_refinement_even_case_feasible():
    lat = root_lattice("A2", -1)
    # Antisymmetric setup is not available from a root lattice; exercise the
    # mod-2 branch on the symmetric gram treated as an F2 form.
    ref = quadratic_refinement(lat, 2)
    assert ref["parity"] == "mod2"
    assert ref["feasible"]


def test_mod_p_quotients():
    e6 = root_lattice("E6", -1)
    q6 = mod_p_quotient(e6, 3)
    assert (q6.dim, q6.radical_dim, q6.quotient_dim) == (6, 1, 5)
    e7 = root_lattice("E7", -1)
    q7 = mod_p_quotient(e7, 2)
    assert (q7.dim, q7.radical_dim, q7.quotient_dim) == (7, 1, 6)
    # mod 5 both forms are nondegenerate
    assert mod_p_quotient(e6, 5).radical_dim == 0


def test_weyl_image_order_e6(e6_weyl):
    # |W(E6)| = 51840 (degree product 2*5*6*8*9*12); image mod 3 is faithful.
    orders, _ = e6_weyl
    assert 2 * 5 * 6 * 8 * 9 * 12 == 51840
    assert orders.group_order == 51840
    assert orders.image_order == 51840
    assert orders.faithful


def test_weyl_small_cap_raises():
    lat = root_lattice("E6", -1)
    with pytest.raises(EnumerationCapExceeded):
        weyl_image_order(lat, 3, cap=100)


@pytest.mark.slow
def test_weyl_image_order_e7(e7_weyl):
    # |W(E7)| = 2903040; the center {+-1} dies mod 2: index-2 image.
    orders, _ = e7_weyl
    assert orders.group_order == 2903040
    assert orders.image_order == 1451520
    assert not orders.faithful


@pytest.mark.parametrize("d", [2, 3, 4, 5])
@pytest.mark.parametrize("n", [2, 4])
def test_pham_reflection_order_and_unitarity(d, n):
    module = standard_a_model(d, n)
    one = GroupRingElement.one(module.gram[0][0].shape)
    t = pham_reflection(module, (one,), n)
    assert herm_matrix_order(module, t) == d
    # t^d = identity but no smaller power is.
    power = t
    for _ in range(d - 1):
        assert not all(
            power[i][j] == (one if i == j else one - one)
            for i in range(module.rank)
            for j in range(module.rank)
        )
        power = herm_mat_mul(power, t)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_standard_model_integer_realization_is_cartan_chain(d):
    module = standard_a_model(d, 2)
    gram, reduce_to_z = integer_realization(module)
    assert len(gram) == d - 1
    for i in range(d - 1):
        assert abs(gram[i][i]) == 2
        for j in range(d - 1):
            if abs(i - j) == 1:
                assert abs(gram[i][j]) == 1
            elif i != j:
                assert gram[i][j] == 0


def test_pham_reflection_rejects_nonunitary_vector():
    module = standard_a_model(3, 2)
    two = GroupRingElement.one(module.gram[0][0].shape).scaled(2)
    with pytest.raises(ValueError):
        pham_reflection(module, (two,), 2)


def test_hermitian_module_validates_gram():
    module = standard_a_model(3, 2)
    assert isinstance(module, HermitianModule)
    g = module.gram[0][0]
    assert g.bar() == g.scaled(1)  # hermitian diagonal entry is bar-symmetric
