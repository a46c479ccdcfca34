"""Finite rings, elementary matrices and the Γ generators over fiber products."""

import pytest

from src.core.errors import AxiomViolation, CapExceeded, ValidationFailure
from src.core.steinberg import (
    ElementaryMatrixGroupContext,
    FiniteRing,
    check_ring_hom,
    e_matrix,
    fiber_product,
    gamma_generators_trivial,
    projections,
    steinberg_relations_check,
    zmod_projection,
)
from src.models import AppConfig, RingConfig, set_config


def klein_ring() -> FiniteRing:
    """F2 x F2 with k standing for the bit pair (k >> 1, k & 1)."""
    add = [[a ^ b for b in range(4)] for a in range(4)]
    mul = [[a & b for b in range(4)] for a in range(4)]
    return FiniteRing.from_tables(add, mul, "F2xF2")


def test_zmod_ring():
    r = FiniteRing.zmod(6)
    assert (r.size, r.zero, r.one) == (6, 0, 1)
    assert r.neg(2) == 4
    assert r.mul(4, 5) == 2


def test_table_ring_locates_zero_and_one():
    r = klein_ring()
    assert (r.zero, r.one) == (0, 3)


def test_ring_axioms_are_checked():
    add = [[(a + b) % 3 for b in range(3)] for a in range(3)]
    mul = [[0, 0, 0], [0, 1, 2], [0, 2, 2]]
    with pytest.raises(AxiomViolation):
        FiniteRing.from_tables(add, mul, "broken")


def test_elementary_matrix():
    ctx = ElementaryMatrixGroupContext(FiniteRing.zmod(4), 3)
    assert e_matrix(ctx, 1, 2, 3) == ((1, 3, 0), (0, 1, 0), (0, 0, 1))
    with pytest.raises(ValidationFailure):
        e_matrix(ctx, 2, 2, 1)
    with pytest.raises(ValidationFailure):
        e_matrix(ctx, 1, 4, 1)


def test_two_by_two_is_rejected():
    with pytest.raises(ValidationFailure):
        ElementaryMatrixGroupContext(FiniteRing.zmod(2), 2)


@pytest.mark.parametrize("m", [2, 4, 6])
def test_steinberg_relations_hold(m):
    verdict = steinberg_relations_check(ElementaryMatrixGroupContext(FiniteRing.zmod(m), 3))
    assert verdict.passed
    assert verdict.counts == {
        "additivity": 6 * m * m,
        "commutator": 6 * m * m,
        "commuting": 18 * m * m,
    }


def test_steinberg_relations_over_a_product_ring():
    verdict = steinberg_relations_check(ElementaryMatrixGroupContext(klein_ring(), 3))
    assert verdict.passed


def test_relation_budget():
    set_config(AppConfig(ring=RingConfig(exhaustive_budget=100)))
    with pytest.raises(CapExceeded):
        steinberg_relations_check(ElementaryMatrixGroupContext(FiniteRing.zmod(4), 3))


def test_ring_homomorphisms():
    check_ring_hom(FiniteRing.zmod(4), FiniteRing.zmod(2), zmod_projection(4, 2))
    with pytest.raises(AxiomViolation):
        check_ring_hom(FiniteRing.zmod(4), FiniteRing.zmod(3), zmod_projection(4, 3))


def test_fiber_product_size_and_projections():
    d = fiber_product(FiniteRing.zmod(4), FiniteRing.zmod(2), zmod_projection(4, 2))
    assert d.size == 8
    first, second = projections(d)
    assert sorted(set(first)) == [0, 1, 2, 3]
    assert d.label(d.one) == "(1,1)"
    with pytest.raises(ValidationFailure):
        projections(FiniteRing.zmod(4))


def test_fiber_product_needs_a_surjection():
    diagonal = [0, 3]
    with pytest.raises(ValidationFailure):
        fiber_product(FiniteRing.zmod(2), klein_ring(), diagonal)


@pytest.mark.parametrize("m, k, pairs, size", [(4, 2, 4, 8), (9, 3, 9, 27)])
def test_gamma_generators_are_trivial(m, k, pairs, size):
    b, a = FiniteRing.zmod(m), FiniteRing.zmod(k)
    verdict = gamma_generators_trivial(b, a, zmod_projection(m, k))
    assert verdict.passed
    assert verdict.pairs == pairs
    assert verdict.trivial == pairs
    assert len(verdict.kernel) * b.size == size
