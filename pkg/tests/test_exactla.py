"""Exact matrices, subspaces and Smith normal form."""

import random

import pytest

from src.core.errors import CoefficientModeError, ContainmentError, DocumentError
from src.core.exactla import (
    ExactMatrix,
    Subspace,
    divisibility_chain,
    format_scalar,
    invariant_factors,
    kernel,
    parse_scalar,
    quotient_dim,
    rank,
    snf,
    subspace_intersect,
    subspace_sum,
    verify_snf,
)
from src.core.generators import random_low_rank, random_subspace
from src.models import AppConfig, set_config
from src.models.config import LinalgConfig


def test_parse_scalar_reduces_rationals():
    assert format_scalar(parse_scalar("3/6")) == "1/2"
    assert format_scalar(parse_scalar("-4/2")) == "-2"
    assert format_scalar(parse_scalar(7, "Z")) == "7"


@pytest.mark.parametrize("value", ["1/0", "x", "1/2/3", True])
def test_parse_scalar_rejects_malformed(value):
    with pytest.raises(DocumentError):
        parse_scalar(value)


def test_parse_scalar_integer_mode_rejects_fractions():
    with pytest.raises(DocumentError):
        parse_scalar("1/2", "Z")
    assert format_scalar(parse_scalar("4/2", "Z")) == "2"


def test_matrix_strings_are_exact():
    m = ExactMatrix.from_rows([["1/2", 1], [0, "-3/9"]])
    assert m.to_strings() == [["1/2", "1"], ["0", "-1/3"]]
    assert (m @ ExactMatrix.identity(2)) == m


def test_mixed_modes_are_rejected():
    q = ExactMatrix.identity(2, "Q")
    z = ExactMatrix.identity(2, "Z")
    with pytest.raises(CoefficientModeError):
        q @ z


def test_rank_and_kernel():
    m = ExactMatrix.from_rows([[1, 2], [2, 4]])
    assert rank(m) == 1
    ker = kernel(m)
    assert ker.dim == 1
    assert ker.contains({0: -2, 1: 1})
    assert not ker.contains({0: 1})


def test_sum_and_intersection():
    x = Subspace.span([{0: 1}, {1: 1}], 3)
    y = Subspace.span([{1: 1}, {2: 1}], 3)
    assert subspace_sum(x, y).dim == 3
    meet = subspace_intersect(x, y)
    assert meet.dim == 1
    assert meet.contains({1: 5})


def test_quotient_dim_checks_containment():
    big = Subspace.full(2)
    line = Subspace.span([{0: 1}], 2)
    assert quotient_dim(big, line) == 1
    with pytest.raises(ContainmentError) as info:
        quotient_dim(line, Subspace.span([{1: 1}], 2))
    assert info.value.witness == {1: "1"}


def test_invariant_factors_form_a_divisibility_chain():
    assert invariant_factors(ExactMatrix.diagonal([2, 4], "Z")) == [2, 4]
    assert invariant_factors(ExactMatrix.diagonal([4, 6], "Z")) == [2, 12]
    assert divisibility_chain([6, 1, 0, 10]) == [1, 2, 30]


def test_invariant_factors_need_integer_mode():
    with pytest.raises(CoefficientModeError):
        invariant_factors(ExactMatrix.identity(2))


def test_snf_transforms_are_unimodular():
    m = ExactMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], "Z")
    form = snf(m)
    assert form.invariant_factors == (2, 6, 12)
    assert form.torsion == (2, 6, 12)
    verify_snf(m, form)


def test_snf_of_a_rank_deficient_matrix():
    m = ExactMatrix.from_rows([[1, 1], [1, 1]], "Z")
    form = snf(m)
    assert form.invariant_factors == (1,)
    assert form.rank == 1
    assert form.torsion == ()


@pytest.mark.parametrize("seed", range(4))
def test_rank_is_transpose_invariant(seed):
    rng = random.Random(seed)
    for _ in range(25):
        m = random_low_rank(rng, rng.randint(1, 7), rng.randint(1, 7))
        ker = kernel(m)
        assert rank(m) == rank(m.transpose())
        assert rank(m) + ker.dim == m.cols
        assert all(not m.apply(v) for v in ker.rows())


def test_modular_law_on_random_subspaces():
    rng = random.Random(20)
    for _ in range(100):
        n = rng.randint(1, 12)
        a, b = random_subspace(rng, n), random_subspace(rng, n)
        total, meet = subspace_sum(a, b), subspace_intersect(a, b)
        assert a.dim + b.dim == total.dim + meet.dim
        assert all(a.contains(v) and b.contains(v) for v in meet.rows())


def test_dense_and_sparse_elimination_agree():
    rng = random.Random(8)
    matrices = [random_low_rank(rng, rng.randint(2, 9), rng.randint(2, 9)) for _ in range(20)]
    dense = [(rank(m), kernel(m)) for m in matrices]
    set_config(AppConfig(linalg=LinalgConfig(dense_dim_cutoff=0, dense_fill_ratio=1.0)))
    sparse = [(rank(m), kernel(m)) for m in matrices]
    assert sparse == dense
