"""Hochschild, cyclic and λ homology of small algebras."""

import random

import pytest

from src.core.algebras import Bimodule, StructAlgebra, unitalize
from src.core.errors import AxiomViolation, ValidationFailure
from src.core.exactla import rank
from src.core.freegraded import (
    GradedFreeAlgebra,
    hopf_hc_odd,
    truncated_algebra,
    unital_presentation,
    zero_mult_presentation,
)
from src.core.generators import random_algebra
from src.core.hochcyclic import (
    cyclic_homology,
    cyclic_nonunital,
    cyclic_weight,
    enveloping_outer,
    h1_via_omega,
    hochschild,
    hochschild_weight,
    lambda_complex,
    lambda_homology,
    lambda_weight,
    magnus_check,
    magnus_h1,
    sbi_sequence,
)


def test_ground_field():
    q = StructAlgebra.ground_field()
    assert hochschild(q, None, 3)[0].dims == (1, 0, 0, 0)
    assert cyclic_homology(q, 3)[0].dims == (1, 0, 1, 0)
    assert cyclic_homology(q, 3, reduced=True)[0].dims == (0, 0, 0, 0)
    assert lambda_homology(q, 3)[0].dims == (1, 0, 1, 0)


def test_product_of_fields_doubles_everything():
    qq = StructAlgebra.product_field(2)
    assert hochschild(qq, None, 2)[0].dims == (2, 0, 0)
    assert cyclic_homology(qq, 4)[0].dims == (2, 0, 2, 0, 2)


def test_weights_add_up_to_the_ungraded_answer(dual_numbers):
    total = hochschild(dual_numbers, None, 3)[0].dims
    rows = hochschild(dual_numbers, None, 3, max_weight=4)
    assert [r.weight for r in rows] == [0, 1, 2, 3, 4]
    assert tuple(sum(r.dims[n] for r in rows) for n in range(4)) == total


def test_regular_bimodule_is_the_default(dual_numbers):
    regular = Bimodule.regular(dual_numbers)
    assert hochschild(dual_numbers, regular, 2) == hochschild(dual_numbers, None, 2)


def test_first_hochschild_group_through_differentials(dual_numbers):
    assert h1_via_omega(dual_numbers) == hochschild(dual_numbers, None, 1)[0].dims[1]


def test_lambda_complex_matches_bicomplex(dual_numbers):
    for w in range(0, 4):
        assert lambda_weight(dual_numbers, 3, w) == cyclic_weight(dual_numbers, 3, False, w)


def test_nonunital_cyclic_homology_of_square_zero_algebra():
    v2 = StructAlgebra.zero_multiplication(2)
    rows = cyclic_nonunital(v2, 1, max_weight=3)
    assert [r.dims[1] for r in rows] == [0, 0, 1, 0]
    assert lambda_weight(v2, 1, 2).dims == cyclic_weight(unitalize(v2), 1, True, 2).dims
    with pytest.raises(ValidationFailure):
        cyclic_nonunital(StructAlgebra.ground_field(), 1)


def test_hochschild_needs_a_unit():
    with pytest.raises(ValidationFailure):
        hochschild(StructAlgebra.zero_multiplication(2), None, 1)


def test_weights_need_a_graded_algebra():
    with pytest.raises(ValidationFailure):
        hochschild(StructAlgebra.product_field(2), None, 2, max_weight=2)


def test_free_algebra_hochschild_counts_necklaces():
    t = truncated_algebra(GradedFreeAlgebra.uniform(2, 3, unital=True))
    assert hochschild_weight(t, None, 2, 2).dims == (3, 3, 0)
    assert hochschild_weight(t, None, 2, 3).dims == (4, 4, 0)


@pytest.mark.parametrize(
    "algebra",
    [StructAlgebra.ground_field(), StructAlgebra.dual_numbers(), StructAlgebra.product_field(2)],
    ids=lambda a: a.name,
)
def test_sbi_sequence_is_exact(algebra):
    result = sbi_sequence(algebra, 4)
    assert result.sequence.exact
    assert result.hochschild == hochschild(algebra, None, 4)[0].dims
    assert result.cyclic == cyclic_homology(algebra, 4)[0].dims


def test_magnus_agrees_for_square_zero_algebra():
    rows = magnus_check(zero_mult_presentation(2, 4), 4)
    assert [r.weight for r in rows] == [1, 2, 3, 4]
    assert all(r.agree for r in rows)


def test_structure_constants_must_be_associative():
    table = [[[0, 1], [0, 0]], [[1, 0], [0, 0]]]
    with pytest.raises(AxiomViolation):
        StructAlgebra.from_dense(2, table)


def test_unit_must_be_a_unit():
    with pytest.raises(AxiomViolation):
        StructAlgebra.from_dense(1, [[[0]]], unit=[1])


def test_magnus_kernel_matches_generic_hochschild():
    w_max = 3
    p = zero_mult_presentation(2, w_max)
    q = unital_presentation(p)
    t = truncated_algebra(q.free)
    words = [word for w in range(w_max + 1) for word in q.free.component(w)]
    pulled = enveloping_outer(q.target).pullback(t, [q.evaluate(word) for word in words])
    for w in range(1, w_max + 1):
        assert hochschild_weight(t, pulled, 1, w).dims[1] == magnus_h1(p, w)


def test_first_hochschild_group_on_random_algebras():
    rng = random.Random(31)
    for _ in range(20):
        a = random_algebra(rng)
        if not a.unital:
            a = unitalize(a)
        assert h1_via_omega(a) == hochschild(a, None, 1)[0].dims[1]


def test_lambda_complex_euler_identity():
    rng = random.Random(9)
    top = 3
    for _ in range(10):
        a = random_algebra(rng)
        chains = lambda_complex(a, top)
        homology = lambda_weight(a, top, None).dims
        alternating = sum((-1) ** n * h for n, h in enumerate(homology))
        spill = (-1) ** top * rank(chains.d(top + 1))
        assert chains.euler_characteristic(range(top + 1)) == alternating + spill


def test_sbi_ranks_of_a_product_of_fields():
    result = sbi_sequence(StructAlgebra.product_field(2), 5)
    assert [result.ranks(n) for n in range(6)] == [
        (2, 0, 0), (0, 0, 0), (0, 2, 0), (0, 0, 0), (0, 2, 0), (0, 0, 0)
    ]
    assert result.rank_mismatches() == []


@pytest.mark.parametrize(
    "algebra",
    [StructAlgebra.dual_numbers(), unitalize(StructAlgebra.truncated_polynomial(3))],
    ids=lambda a: a.name,
)
def test_sbi_ranks_add_up(algebra):
    result = sbi_sequence(algebra, 5)
    assert result.rank_mismatches() == []
    for n in range(5):
        i_n, _, b_n = result.ranks(n)
        assert result.hochschild[n] == i_n + b_n


@pytest.mark.parametrize("n", [0, 1])
def test_hopf_formula_matches_bicomplex_on_three_generators(n):
    p = zero_mult_presentation(3, 6)
    degree = 2 * n + 1
    hopf = [r.dim for r in hopf_hc_odd(p, n, 6)]
    plus = unitalize(p.target)
    assert hopf == [cyclic_weight(plus, degree, True, w).dims[degree] for w in range(1, 7)]
    if n == 1:
        assert hopf == [0, 0, 0, 21, 0, 0]


def test_magnus_agrees_on_three_generators():
    rows = magnus_check(zero_mult_presentation(3, 5), 5)
    assert [r.weight for r in rows] == [1, 2, 3, 4, 5]
    assert all(r.agree for r in rows)
