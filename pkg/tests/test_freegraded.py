"""Free graded algebras, ideal powers and the Hopf-type formula."""

import pytest

from src.core.algebras import StructAlgebra
from src.core.errors import (
    AxiomViolation,
    CapExceeded,
    TruncationOverflow,
    ValidationFailure,
)
from src.core.freegraded import (
    GradedFreeAlgebra,
    GradedPresentation,
    bracket_ideal_power,
    full_commutator_component,
    hopf_hc_odd,
    hopf_hc_odd_unital,
    identity_presentation,
    ideal_power_component,
    kernel_component,
    lemma56_dimension_check,
    magnus_quotient_dims,
    monogenic_presentation,
    necklace_count,
    redundant_presentation,
    truncated_algebra,
    unital_presentation,
    zero_mult_redundant_presentation,
)


def test_components_are_ordered_by_length():
    f = GradedFreeAlgebra(("t", "s"), (1, 2), 3)
    assert f.component(3) == [(0, 1), (1, 0), (0, 0, 0)]
    assert [f.dim(w) for w in range(4)] == [0, 1, 2, 3]
    with pytest.raises(TruncationOverflow):
        f.component(4)


def test_generator_cap():
    with pytest.raises(CapExceeded):
        GradedFreeAlgebra.uniform(4, 3)


@pytest.mark.parametrize(
    "m, w, expected",
    [(1, 5, 1), (2, 2, 3), (2, 4, 6), (2, 6, 14), (3, 3, 11)],
)
def test_necklace_count(m, w, expected):
    assert necklace_count(m, w) == expected


def test_commutators_and_necklaces_split_the_component():
    for m in (1, 2, 3):
        rows = lemma56_dimension_check(m, 5)
        assert all(row.holds for row in rows)
    f = GradedFreeAlgebra.uniform(2, 4)
    assert full_commutator_component(f, 4).dim == 16 - 6


def test_zero_multiplication_ideal_powers(v2_presentation):
    p = v2_presentation
    assert kernel_component(p, 1).dim == 0
    assert kernel_component(p, 2).dim == 4
    assert ideal_power_component(p, 2, 3).dim == 0
    assert ideal_power_component(p, 2, 4).dim == 16
    assert bracket_ideal_power(p, 0, 2).dim == 0


def test_hopf_formula_for_square_zero_algebra(v2_presentation):
    rows = hopf_hc_odd(v2_presentation, 0, 6)
    assert [r.dim for r in rows] == [0, 1, 0, 0, 0, 0]
    assert rows[1].numerator == 1


def test_hopf_formula_does_not_depend_on_the_presentation():
    for n in (0, 1):
        direct = [r.dim for r in hopf_hc_odd(monogenic_presentation(3, 6), n, 6)]
        redundant = [r.dim for r in hopf_hc_odd(redundant_presentation(3, 6), n, 6)]
        assert direct == redundant == [0] * 6


def test_hopf_formula_with_an_unused_generator(v2_presentation):
    extra = zero_mult_redundant_presentation(5)
    assert [r.dim for r in hopf_hc_odd(extra, 0, 5)] == [0, 1, 0, 0, 0]


def test_hopf_formula_needs_the_right_variant(v2_presentation):
    unital = unital_presentation(v2_presentation)
    with pytest.raises(ValidationFailure):
        hopf_hc_odd(unital, 0, 4)
    with pytest.raises(ValidationFailure):
        hopf_hc_odd_unital(v2_presentation, 0, 4)
    rows = hopf_hc_odd_unital(unital, 0, 4)
    assert [r.weight for r in rows] == [0, 1, 2, 3, 4]
    assert [r.dim for r in rows][1:] == [0, 1, 0, 0]


def test_identity_presentation_has_no_relations():
    p = identity_presentation(GradedFreeAlgebra.uniform(2, 3))
    assert all(kernel_component(p, w).dim == 0 for w in (1, 2, 3))
    assert magnus_quotient_dims(p, 3) == {1: 0, 2: 0, 3: 0}


def test_truncated_algebra_dimensions():
    t = truncated_algebra(GradedFreeAlgebra.uniform(2, 3, unital=True))
    assert t.dim == 1 + 2 + 4 + 8
    assert t.unit == {0: 1}


def test_presentation_must_be_surjective():
    f = GradedFreeAlgebra(("t",), (1,), 3)
    v2 = StructAlgebra.zero_multiplication(2)
    with pytest.raises(AxiomViolation):
        GradedPresentation(f, v2, [{0: 1}])


def test_generator_images_must_be_homogeneous():
    f = GradedFreeAlgebra(("s",), (2,), 3)
    with pytest.raises(AxiomViolation):
        GradedPresentation(f, StructAlgebra.truncated_polynomial(3), [{0: 1}])


@pytest.mark.parametrize("m", [1, 2, 3])
def test_commutators_span_word_minus_rotation(m):
    f = GradedFreeAlgebra.uniform(m, 5)
    for w in range(1, 6):
        rotations = [
            {word: 1, word[1:] + word[:1]: -1}
            for word in f.component(w)
            if word[1:] + word[:1] != word
        ]
        assert f.span_words(w, rotations).space == full_commutator_component(f, w).space


def test_commutators_respect_generator_weights():
    f = GradedFreeAlgebra(("t", "s"), (1, 2), 4)
    commutators = full_commutator_component(f, 3)
    assert commutators.dim == 1
    assert commutators.space.contains({f.index(3)[(0, 1)]: 1, f.index(3)[(1, 0)]: -1})
