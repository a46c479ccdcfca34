"""Seeded generators used by the property checks."""

import random

import pytest

from src.core.exactla import ExactMatrix
from src.core.fincat import (
    DiagramFunctor,
    derived_colim,
    has_pairwise_coproducts,
    is_strongly_connected,
)
from src.core.generators import (
    random_algebra,
    random_group_module,
    random_join_semilattice,
    random_poset,
    random_strongly_connected,
    random_terminal_category,
    random_transformation_monoid,
    random_unimodular,
)
from src.core.grouphom import FinGroup


def test_same_seed_same_objects():
    first, second = random.Random(5), random.Random(5)
    a = random_poset(first, 4)
    b = random_poset(second, 4)
    assert [m.name for m in a.morphisms] == [m.name for m in b.morphisms]
    x, y = random_algebra(first), random_algebra(second)
    assert (x.dim, x.table, x.unit) == (y.dim, y.table, y.unit)


@pytest.mark.parametrize("seed", range(5))
def test_unimodular_pair_is_inverse(seed):
    p, p_inv = random_unimodular(random.Random(seed), 3)
    assert p @ p_inv == ExactMatrix.identity(3)


@pytest.mark.parametrize("seed", range(5))
def test_transformation_monoid_has_identity(seed):
    table, e = random_transformation_monoid(random.Random(seed), max_size=5)
    assert len(table) <= 5
    assert all(table[e][x] == x and table[x][e] == x for x in range(len(table)))


@pytest.mark.parametrize("seed", range(3))
def test_terminal_category_has_trivial_derived_colimits(seed):
    c = random_terminal_category(random.Random(seed))
    assert "T" in c.objects
    spaces = derived_colim(c, DiagramFunctor.constant(c, 1), 2)
    assert [h.dim for h in spaces] == [1, 0, 0]


@pytest.mark.parametrize("seed", range(3))
def test_codiscrete_monoid_category_is_strongly_connected(seed):
    c, table, _ = random_strongly_connected(random.Random(seed))
    assert is_strongly_connected(c)
    assert len(c.morphisms) == len(c.objects) ** 2 * len(table)


@pytest.mark.parametrize("seed", range(3))
def test_join_semilattice_has_coproducts(seed):
    assert has_pairwise_coproducts(random_join_semilattice(random.Random(seed))).exists


@pytest.mark.parametrize("seed", range(3))
def test_random_group_module_is_a_module(seed):
    s3 = FinGroup.symmetric(3)
    module = random_group_module(random.Random(seed), s3)
    assert 1 <= module.rank <= 2
    assert module.action[0] == ExactMatrix.identity(module.rank, "Z")


@pytest.mark.parametrize("seed", range(5))
def test_random_algebra_fits(seed):
    a = random_algebra(random.Random(seed))
    assert 1 <= a.dim <= 3
    assert a.weights is None
