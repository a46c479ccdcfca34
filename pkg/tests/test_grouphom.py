"""Finite groups, G-modules and integral group homology."""

import pytest

from src.core.complexes import CokernelZ, homology_cokernel_z
from src.core.errors import AxiomViolation, CapExceeded, NotCyclicGroup
from src.core.exactla import ExactMatrix
from src.core.grouphom import (
    FinGroup,
    GModule,
    abelianization_invariants,
    cyclic_generator,
    cyclic_group_oracle,
    group_homology,
    homomorphism_chain_map,
    permutation_sign,
    small_groups,
)


def signature(spaces):
    return [(h.dim, h.torsion) for h in spaces]


@pytest.mark.parametrize("q", [2, 3, 5])
def test_cyclic_group_homology(q):
    trivial = GModule.trivial(FinGroup.cyclic(q), 1, "Z")
    expected = [(1, ()), (0, (q,)), (0, ()), (0, (q,)), (0, ())]
    assert signature(group_homology(trivial, 4)) == expected
    assert signature(cyclic_group_oracle(trivial, q, 4)) == expected


def test_rational_homology_of_a_finite_group_is_concentrated_in_degree_zero():
    trivial = GModule.trivial(FinGroup.cyclic(3), 1, "Q")
    assert [h.dim for h in group_homology(trivial, 3)] == [1, 0, 0, 0]


def test_regular_module_is_acyclic():
    regular = GModule.regular(FinGroup.cyclic(3))
    assert signature(group_homology(regular, 2)) == [(1, ()), (0, ()), (0, ())]


def test_symmetric_group():
    s3 = FinGroup.symmetric(3)
    assert s3.order == 6
    assert not s3.is_abelian
    h = group_homology(GModule.trivial(s3, 1, "Z"), 1)
    assert (h[1].dim, h[1].torsion) == (0, (2,))
    assert h[1].describe() == "Z/2"


def test_sign_module_coinvariants():
    s3 = FinGroup.symmetric(3)
    h0 = group_homology(GModule.sign(s3), 0)[0]
    assert (h0.dim, h0.torsion) == (0, (2,))


def test_permutation_sign():
    assert permutation_sign((1, 0, 2)) == -1
    assert permutation_sign((1, 2, 0)) == 1


def test_abelianization():
    assert abelianization_invariants(FinGroup.symmetric(3)) == CokernelZ(0, (2,))
    assert abelianization_invariants(FinGroup.cyclic(4)) == CokernelZ(0, (4,))


def test_cyclic_generator_rejects_non_cyclic_groups():
    assert cyclic_generator(FinGroup.cyclic(4), 4) == 1
    with pytest.raises(NotCyclicGroup):
        cyclic_generator(FinGroup.symmetric(3), 6)


def test_group_order_cap():
    with pytest.raises(CapExceeded):
        FinGroup.cyclic(9)


def test_degree_cap():
    with pytest.raises(CapExceeded):
        group_homology(GModule.trivial(FinGroup.cyclic(2)), 5)


def test_table_must_be_associative():
    # a Latin square with identity 0 that is not a group
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(AxiomViolation):
        FinGroup.from_table(table)


def test_action_must_be_multiplicative():
    c2 = FinGroup.cyclic(2)
    double = ExactMatrix.from_rows([[2]], "Z")
    with pytest.raises(AxiomViolation):
        GModule(c2, 1, (ExactMatrix.identity(1, "Z"), double), "Z")


def test_module_from_generators():
    c4 = FinGroup.cyclic(4)
    rotate = ExactMatrix.from_rows([[0, -1], [1, 0]], "Z")
    module = GModule.from_generators(c4, 2, {1: rotate})
    assert module.action[2] == rotate @ rotate
    assert signature(group_homology(module, 3)) == signature(cyclic_group_oracle(module, 4, 3))


def test_induced_maps_on_first_homology():
    c2, c4 = FinGroup.cyclic(2), FinGroup.cyclic(4)
    onto = homomorphism_chain_map([0, 1, 0, 1], c4, GModule.trivial(c2), 2)
    assert homology_cokernel_z(onto, 1).is_zero
    into = homomorphism_chain_map([0, 2], c2, GModule.trivial(c4), 2)
    assert homology_cokernel_z(into, 1) == CokernelZ(0, (2,))


def test_homomorphism_is_checked():
    c2, c3 = FinGroup.cyclic(2), FinGroup.cyclic(3)
    with pytest.raises(AxiomViolation):
        homomorphism_chain_map([0, 1], c2, GModule.trivial(c3), 1)


def test_small_groups_fit_the_cap():
    assert [g.order for g in small_groups()] == [1, 2, 3, 4, 5, 6, 4, 6, 8]
