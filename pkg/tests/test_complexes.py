"""Chain complexes, total complexes, chain maps and long exact sequences."""

import random

import pytest

from src.core.complexes import (
    ChainComplex,
    ChainMap,
    DoubleComplex,
    HomologyClassSpace,
    check_short_exact,
    homology,
    homology_q,
    homology_z,
    induced_on_homology,
    les_check,
    totalize,
)
from src.core.errors import (
    CoefficientModeError,
    DimensionMismatch,
    InvariantViolation,
    NotExactSequence,
    TruncationOverflow,
)
from src.core.exactla import ExactMatrix
from src.core.generators import random_complex, random_split_sequence, tensor_double_complex


def one(value: int = 1, mode: str = "Q") -> ExactMatrix:
    return ExactMatrix.from_rows([[value]], mode)


def test_integer_homology_sees_torsion():
    c = ChainComplex.from_list([1, 1], [one(2, "Z")], mode="Z")
    h0, h1 = homology_z(c)
    assert (h0.dim, h0.torsion) == (0, (2,))
    assert h1.is_zero
    assert h0.describe() == "Z/2"
    assert [h.dim for h in homology_q(c)] == [0, 0]


def test_homology_dispatches_on_mode():
    c = ChainComplex.from_list([2, 1], [ExactMatrix.from_rows([[1], [0]], "Z")], mode="Z")
    assert [(h.dim, h.torsion) for h in homology(c)] == [(1, ()), (0, ())]


def test_describe():
    assert HomologyClassSpace(0, 1, "Z", (2,)).describe() == "Z + Z/2"
    assert HomologyClassSpace(3, 2, "Q").describe() == "Q^2"
    assert HomologyClassSpace(1, 0, "Z").describe() == "0"


def test_integer_homology_rejects_rational_complexes():
    c = ChainComplex.from_list([1], [], mode="Q")
    with pytest.raises(CoefficientModeError):
        homology_z(c)


def test_d_squared_must_vanish():
    with pytest.raises(InvariantViolation):
        ChainComplex.from_list([1, 1, 1], [one(), one()])


def test_differential_shape_is_checked():
    with pytest.raises(DimensionMismatch):
        ChainComplex.from_list([2, 1], [one()])


def test_truncated_top_degree_is_not_trusted():
    c = ChainComplex.from_list([1, 1], [ExactMatrix.zeros(1, 1)], truncated=True)
    assert list(c.trusted_degrees) == [0]
    assert homology_q(c)[0].dim == 1
    with pytest.raises(TruncationOverflow):
        homology_q(c, [1])


def test_totalize_square():
    dims = {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1}
    dc = DoubleComplex(
        dims,
        horizontal={(1, 0): one(), (1, 1): one()},
        vertical={(0, 1): one(), (1, 1): one()},
    )
    tot = totalize(dc)
    assert tot.dims == (1, 2, 1)
    assert tot.euler_characteristic() == 0
    assert [h.dim for h in homology_q(tot)] == [0, 0, 0]


def test_double_complex_must_commute():
    dims = {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1}
    with pytest.raises(InvariantViolation):
        DoubleComplex(
            dims,
            horizontal={(1, 0): one(), (1, 1): one(2)},
            vertical={(0, 1): one(), (1, 1): one()},
        )


def test_chain_map_must_commute():
    c = ChainComplex.from_list([1, 1], [one()])
    with pytest.raises(InvariantViolation):
        ChainMap(c, c, {0: one(), 1: ExactMatrix.zeros(1, 1)})


def test_identity_induces_identity():
    c = ChainComplex.from_list([2], [])
    f = ChainMap(c, c, {0: ExactMatrix.identity(2)})
    assert induced_on_homology(f, 0) == ExactMatrix.identity(2)


def _ses():
    a = ChainComplex.from_list([1], [], name="A")
    b = ChainComplex.from_list([1, 1], [one()], name="B")
    c = ChainComplex.from_list([0, 1], [ExactMatrix.zeros(0, 1)], name="C")
    f = ChainMap(a, b, {0: one()}, "f")
    g = ChainMap(b, c, {1: one()}, "g")
    return f, g


def test_les_uses_the_connecting_map():
    f, g = _ses()
    les = les_check(f, g)
    assert les.exact
    assert les.top_degree == 1
    assert les.maps["C1->A0"] == one()
    les.raise_if_inexact()


def test_short_exactness_is_checked():
    f, g = _ses()
    broken = ChainMap(f.source, f.target, {0: ExactMatrix.zeros(1, 1)}, "zero")
    with pytest.raises(NotExactSequence):
        check_short_exact(broken, g)


@pytest.mark.parametrize("seed", range(5))
def test_random_split_sequences_have_exact_homology_sequences(seed):
    rng = random.Random(seed)
    for _ in range(10):
        f, g = random_split_sequence(rng, lo=rng.randint(-1, 1), length=rng.randint(2, 4))
        les = les_check(f, g)
        assert les.exact, les.failures


def test_euler_characteristic_of_random_complexes():
    rng = random.Random(4)
    for _ in range(20):
        c = random_complex(rng, length=5)
        assert c.euler_characteristic() == sum(
            (-1) ** h.degree * h.dim for h in homology_q(c)
        )


def test_transposed_double_complex_has_the_same_total_homology():
    rng = random.Random(12)
    for _ in range(10):
        x = random_complex(rng, length=3, max_pieces=1)
        y = random_complex(rng, length=3, max_pieces=1)
        dc = tensor_double_complex(x, y)
        direct = [h.dim for h in homology_q(totalize(dc))]
        assert [h.dim for h in homology_q(totalize(dc.transpose()))] == direct
        hx, hy = homology_q(x), homology_q(y)
        kunneth = [
            sum(hx[p].dim * hy[n - p].dim for p in range(3) if 0 <= n - p < 3)
            for n in range(5)
        ]
        assert direct == kunneth
