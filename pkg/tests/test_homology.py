import random
import warnings
from fractions import Fraction

import pytest

from gradedhecke.hecke import HeckeAlgebra
from gradedhecke.homology import (FinDimAlgebra, HomologyError,
                                  SizeBoundExceeded, crossed_point_module,
                                  crossed_product_census, cyclic_homology,
                                  hochschild_boundary, hochschild_homology,
                                  hp_census_hecke, connes_boundary,
                                  verify_basis_theorem, verify_mixed_identities)
from gradedhecke.rootdata import build_root_datum
from gradedhecke.weyl import enumerate_group, make_diagram_automorphism

Q = Fraction


def cyclic_group_algebra(n):
    return FinDimAlgebra.group_algebra(list(range(n)),
                                       lambda a, b: (a + b) % n,
                                       label=f"Q[Z{n}]")


def test_structure_constant_validation():
    bad = (((Q(0),),),)
    with pytest.raises(HomologyError):
        FinDimAlgebra(dim=1, mult=bad, unit=(Q(1),))


def test_hh_ground_field():
    assert hochschild_homology(FinDimAlgebra.ground_field(), 2) == [1, 0, 0]


def test_hh_matrix_algebra():
    assert hochschild_homology(FinDimAlgebra.matrix_algebra(2), 2) == [1, 0, 0]


def test_hh_group_algebras_count_classes():
    s2 = cyclic_group_algebra(2)
    assert hochschild_homology(s2, 1) == [2, 0]
    z4 = cyclic_group_algebra(4)
    assert hochschild_homology(z4, 1)[0] == 4
    s3 = FinDimAlgebra.of_weyl_group(
        enumerate_group(build_root_datum("A2", 2)))
    assert hochschild_homology(s3, 1) == [3, 0]


def test_hc_ground_field():
    # periodicity of the point: HC = (1, 0, 1)
    assert cyclic_homology(FinDimAlgebra.ground_field(), 2) == [1, 0, 1]


def test_hc0_equals_hh0():
    for a in (FinDimAlgebra.ground_field(), cyclic_group_algebra(2),
              FinDimAlgebra.matrix_algebra(2)):
        assert cyclic_homology(a, 0)[0] == hochschild_homology(a, 0)[0]


def test_mixed_identities_exact():
    for a in (cyclic_group_algebra(2), FinDimAlgebra.matrix_algebra(2)):
        verify_mixed_identities(a, 2)


def test_b_squared_zero():
    a = cyclic_group_algebra(3)
    rng = random.Random(3)
    b2 = hochschild_boundary(a, 2)
    b1 = hochschild_boundary(a, 1)
    for _ in range(5):
        chain = [Q(rng.randint(-3, 3)) for _ in range(a.dim ** 3)]
        bx = [sum(row[i] * chain[i] for i in range(len(chain)))
              for row in b2]
        bbx = [sum(row[i] * bx[i] for i in range(len(bx))) for row in b1]
        assert not any(bbx)


def test_size_bound():
    with pytest.raises(SizeBoundExceeded):
        hochschild_homology(FinDimAlgebra.matrix_algebra(2), 4, bound=100)


def test_crossed_census_a1():
    census = crossed_product_census(build_root_datum("A1", 1), truncation=12)
    assert census.totals[0].coeffs == (2, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1)
    assert census.totals[1].coeffs == (0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0)
    assert (census.hp0, census.hp1) == (2, 0)
    assert len(census.entries) == 2
    # identity class contributes Q[alpha^2]; point class only constants
    assert census.entries[0].series[0].coeffs[:4] == (1, 0, 1, 0)
    assert census.entries[1].series[0].coeffs[:4] == (1, 0, 0, 0)
    assert census.entries[1].series[1].coeffs == (0,) * 13


def test_crossed_census_vanishing_above_dim():
    for label, amb in (("A1", 1), ("A2", 2), ("B2", 2)):
        census = crossed_product_census(build_root_datum(label, amb),
                                        truncation=8)
        for entry in census.entries:
            for n in range(entry.fixed_dim + 1, amb + 1):
                assert entry.series[n].coeffs == (0,) * 9
        assert census.totals[0].coeffs[0] == census.class_count


def test_crossed_census_empty_datum_with_gamma():
    # R empty with nontrivial Gamma: the census is driven by Gamma alone
    d = build_root_datum("empty", 2)
    g = make_diagram_automorphism(d, "swap", [[0, 1], [1, 0]])
    census = crossed_product_census(d, [g], truncation=6)
    assert census.class_count == 2
    assert (census.hp0, census.hp1) == (2, 0)
    # identity class: swap-invariants 1; x1+x2; {x1^2+x2^2, x1 x2};
    # swap class: the fixed line contributes 1; u; u^2
    assert census.totals[0].coeffs[:3] == (2, 2, 3)


@pytest.mark.parametrize("label,amb,gammas,expect", [
    ("A1", 1, False, (2, 0)), ("A2", 2, False, (3, 0)),
    ("B2", 2, False, (5, 0)), ("G2", 2, False, (6, 0)),
    ("A1xA1", 2, True, (5, 0)),
])
def test_hp_census(label, amb, gammas, expect):
    d = build_root_datum(label, amb)
    gs = [make_diagram_automorphism(d, "swap", [[0, 1], [1, 0]])] \
        if gammas else []
    for k in (0, 1, 2, 5):
        alg = HeckeAlgebra(d, k, gs)
        rep = hp_census_hecke(alg)
        assert (rep.hp0, rep.hp1) == expect
        assert rep.k_values == tuple([Q(k)] * d.rank)


def test_point_module_examples():
    s2 = [(1, 0)]
    rep = crossed_point_module(s2, 0)
    assert rep.stabilizer_order == 1 and rep.constituents == 1 and rep.match
    s2_fix = [(1, 0, 2)]
    rep = crossed_point_module(s2_fix, 2)
    assert rep.stabilizer_classes == 2 and rep.constituents == 2 and rep.match
    # same orbit gives isomorphic modules; different orbits do not
    s2_two_orbits = [(1, 0, 3, 2)]
    rep = crossed_point_module(s2_two_orbits, 0, compare_point=2)
    assert rep.iso_within_orbit
    assert rep.noniso_across_orbits is True


def test_point_module_z4_rationality():
    # Z4 fixed point: four complex constituents although only three exist
    # over Q; the center-of-commutant count sees the complex answer
    z4 = [(1, 2, 3, 0, 4)]
    rep = crossed_point_module(z4, 4)
    assert rep.stabilizer_order == 4
    assert rep.stabilizer_classes == 4
    assert rep.constituents == 4 and rep.match


def test_verify_basis_a1():
    alg = HeckeAlgebra(build_root_datum("A1", 1), 1)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rep = verify_basis_theorem(alg)
    assert rep.passed
    assert rep.trace_matrix == ((Q(1), Q(-1)), (Q(2), Q(0)))
    assert rep.matrix_rank == 2 == rep.class_count == rep.hp0


def test_verify_basis_a2():
    for k in (0, 1):
        alg = HeckeAlgebra(build_root_datum("A2", 2), k)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            rep = verify_basis_theorem(alg)
        assert rep.passed and rep.matrix_rank == 3


def test_verify_basis_k0_character_table():
    # at k = 0 the trace matrix is the character table of W': full rank by
    # orthogonality of irreducible characters
    alg = HeckeAlgebra(build_root_datum("A2", 2), 0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rep = verify_basis_theorem(alg)
    rows = sorted(rep.trace_matrix)
    assert rows == [(Q(1), Q(-1), Q(1)), (Q(1), Q(1), Q(1)),
                    (Q(2), Q(0), Q(-1))]


def test_verify_basis_falsification_flag():
    # an incomplete catalog (missing the Steinberg stratum) must trip the
    # falsification flag rather than being absorbed
    from gradedhecke.modules import DSCatalogEntry, one_dim_modules, \
        parabolic_algebra
    alg = HeckeAlgebra(build_root_datum("A1", 1), 1)
    _, sub = parabolic_algebra(alg, [])
    only_empty = [DSCatalogEntry(P=(), module=one_dim_modules(sub)[0])]
    rep = verify_basis_theorem(alg, catalog=only_empty)
    assert not rep.passed
    assert rep.irr0_count == 1 and rep.class_count == 2
    assert not rep.counts_match
