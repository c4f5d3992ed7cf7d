"""The tower of homology models and the verified statements."""

import pytest

from cyclocover.fermat import (
    AmbientCapExceeded,
    FermatCase,
    build_diagram,
    coinvariants_cross_check,
    hp_prime_model,
    hp_z_presentation,
    hp_z_relations,
    ideal_phi,
    invariants_two_ways,
    primitive_pair,
    primitive_rank,
    rank_table,
    verify_compare,
    verify_complex,
    verify_main,
)

GRID = [(n, d) for n in (1, 2, 3) for d in (2, 3, 4, 5)]
SMALL = [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)]


def test_primitive_rank_frozen_values():
    # Independently computed from (d-1)((d-1)^{n+1}+(-1)^n)/d.
    assert [primitive_rank(n, 2) for n in range(5)] == [1, 0, 1, 0, 1]
    assert [primitive_rank(n, 3) for n in range(5)] == [2, 2, 6, 10, 22]
    assert [primitive_rank(n, 4) for n in range(5)] == [3, 6, 21, 60, 183]
    assert [primitive_rank(n, 5) for n in range(5)] == [4, 12, 52, 204, 820]


def test_cap_enforced():
    with pytest.raises(AmbientCapExceeded):
        FermatCase(4, 7, 1024)
    FermatCase(4, 3, 1024)  # 243 <= 1024


@pytest.mark.parametrize("n,d", SMALL)
def test_model_ranks(n, d):
    assert ideal_phi(d, n + 1).rank == (d - 1) ** (n + 1)
    assert hp_prime_model(d, n + 1).rank == primitive_rank(n, d)
    pres = hp_z_presentation(d, n + 1)
    assert pres.structure().free_rank == primitive_rank(n, d)
    assert pres.structure().invariant_factors == ()


@pytest.mark.parametrize("n,d", SMALL)
def test_relations_sit_inside_the_ideal(n, d):
    rels = hp_z_relations(d, n + 1)
    ideal = ideal_phi(d, n + 1)
    assert ideal.contains_submodule(rels)
    assert rels.rank == primitive_rank(n - 1, d)


@pytest.mark.parametrize("n,d", GRID)
def test_invariants_two_ways(n, d):
    assert invariants_two_ways(FermatCase(n, d))["pass"]


@pytest.mark.parametrize("n,d", GRID)
def test_verify_compare(n, d):
    rep = verify_compare(FermatCase(n, d))
    assert rep["pass"], rep
    assert rep["kernel_factors"] == [] and rep["kernel_free_rank"] == 0
    if n % 2 == 1:
        assert rep["cokernel_factors"] == []
        assert rep["remark_product_equals_intersection"]
    else:
        assert rep["cokernel_factors"] == [d]
        assert rep["mod_d_kernel_factors"] == [d]
        assert rep["mod_d_cokernel_factors"] == [d]


def test_verify_compare_composite_even_case():
    rep = verify_compare(FermatCase(2, 6))
    assert rep["mod_d_kernel_factors"] == [6]
    assert rep["mod_d_cokernel_factors"] == [6]


@pytest.mark.parametrize("n,d", GRID)
def test_verify_main(n, d):
    rep = verify_main(FermatCase(n, d))
    assert rep["first_surjective"], rep
    assert rep["kernel_cyclic_dividing_d"], rep
    assert rep["middle_isomorphism"], rep
    assert rep["factorization_commutes"], rep
    if d in (2, 3, 5):
        assert rep["prime_checks_pass"], rep
        expected = primitive_rank(n - 1, d) + (-1) ** n
        assert rep["covariant_corner_dims"] == [expected, expected]


def test_verify_main_quartic_fourfold():
    # n=4, d=3: both corners 10+1=11, identified image dimension 10.
    rep = verify_main(FermatCase(4, 3))
    assert rep["covariant_corner_dims"] == [11, 11]
    assert rep["iota_image_dim"] == 10
    assert rep["pass"]


@pytest.mark.parametrize("n,d", [(3, 3)])
def test_verify_main_cubic_threefold_kernel(n, d):
    # s maps the 6-dimensional mod-3 primitive space onto the 5-dimensional
    # covariant corner; kernel order 3.
    rep = verify_main(FermatCase(n, d))
    assert rep["covariant_corner_dims"] == [5, 5]
    assert rep["mod_p_primitive_dim"] == 6
    assert rep["kernel_order"] == 3


@pytest.mark.parametrize("n,d", [(n, d) for n in (1, 2, 3) for d in (2, 3)])
def test_verify_complex(n, d):
    rep = verify_complex(FermatCase(n, d))
    assert rep["d_squared_zero"]
    assert rep["augmentation_compatible"]
    assert rep["pass"], rep
    # Homology is cyclic of order d exactly in the degrees -k with n-k odd;
    # the uniform all-degrees expectation only survives at n = 1.
    assert rep["uniform_claim_holds"] == (n == 1)
    for k in range(n + 1):
        entry = rep["homology"][str(-k)]
        if k < n and (n - k) % 2 == 1:
            assert entry["factors"] == [d]
        else:
            assert entry["factors"] == []
        assert entry["free_rank"] == 0


def test_rank_table_consistency():
    table = rank_table(8, 6)
    assert table["pass"]
    assert table["cubic_half_ranks_n0_to_6"] == [1, 1, 3, 5, 11, 21, 43]


@pytest.mark.parametrize("n,d", SMALL)
def test_coinvariants_cross_check(n, d):
    assert coinvariants_cross_check(FermatCase(n, d))["pass"]


@pytest.mark.parametrize("n,d", [(1, 4), (2, 4), (1, 6)])
def test_diagram_denominator_variants_reported(n, d):
    diagram = build_diagram(FermatCase(n, d))
    assert isinstance(diagram.denominator_variants_agree, bool)


@pytest.mark.parametrize("n,d", SMALL)
def test_iota_matrix_shape(n, d):
    pair = primitive_pair(FermatCase(n, d))
    assert len(pair.iota.matrix) == pair.hp_z.gens_rank
    assert pair.hp_z_cohom.rank == primitive_rank(n, d)
