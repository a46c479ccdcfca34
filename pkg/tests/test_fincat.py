"""Finite categories, diagram functors and derived colimits."""

import pytest

from src.core.errors import (
    AxiomViolation,
    CapExceeded,
    CoefficientModeError,
    NotStronglyConnected,
)
from src.core.exactla import ExactMatrix
from src.core.fincat import (
    CategoryFunctor,
    DiagramFunctor,
    FinCategory,
    colim0_coeq,
    colim_long_exact_sequence,
    derived_colim,
    external_tensor,
    functor_chain_map,
    has_pairwise_coproducts,
    is_strongly_connected,
    nerve_chains,
    precompose,
    transformation_chain_map,
)
from src.models import AppConfig, CategoryConfig, set_config

C2_TABLE = [[0, 1], [1, 0]]


def dims(spaces):
    return [h.dim for h in spaces]


def test_poset_builder_closes_transitively(chain_category):
    names = [m.name for m in chain_category.morphisms]
    assert "a<=c" in names
    assert len(chain_category.hom("a", "c")) == 1
    assert chain_category.hom("c", "a") == []
    assert not is_strongly_connected(chain_category)


def test_poset_builder_rejects_cycles():
    with pytest.raises(AxiomViolation):
        FinCategory.from_poset(["x", "y"], [("x", "y"), ("y", "x")])


def test_missing_composite_is_rejected():
    with pytest.raises(AxiomViolation) as info:
        FinCategory.create(["x", "y", "z"], [("f", "x", "y"), ("g", "y", "z")], [])
    assert "compose(g, f)" in str(info.value)


def test_category_cap():
    set_config(AppConfig(category=CategoryConfig(max_morphisms=3)))
    with pytest.raises(CapExceeded):
        FinCategory.from_poset(["a", "b", "c"], [("a", "b"), ("b", "c")])


def test_normalized_nerve_skips_identities(chain_category):
    assert len(nerve_chains(chain_category, 1)) == 3
    assert len(nerve_chains(chain_category, 1, normalized=False)) == 6
    assert len(nerve_chains(chain_category, 2)) == 1


def test_constant_functor_on_terminal_category(chain_category):
    m = DiagramFunctor.constant(chain_category, 2)
    assert dims(derived_colim(chain_category, m, 3)) == [2, 0, 0, 0]


def test_pushout_of_zeros_has_colim_one(span_category):
    m = DiagramFunctor.create(
        span_category,
        {"a": 1, "b": 0, "c": 0},
        {"a<=b": ExactMatrix.zeros(0, 1), "a<=c": ExactMatrix.zeros(0, 1)},
    )
    assert dims(derived_colim(span_category, m, 2)) == [0, 1, 0]


def test_integer_colim_of_c2_has_torsion():
    c = FinCategory.from_monoid(C2_TABLE, 0)
    m = DiagramFunctor.constant(c, 1, "Z")
    got = [(h.dim, h.torsion) for h in derived_colim(c, m, 3)]
    assert got == [(1, ()), (0, (2,)), (0, ()), (0, (2,))]


def test_unnormalized_nerve_agrees():
    c = FinCategory.from_monoid(C2_TABLE, 0)
    m = DiagramFunctor.constant(c, 1)
    assert dims(derived_colim(c, m, 3, normalized=False)) == dims(derived_colim(c, m, 3))


def test_functoriality_is_checked(chain_category):
    with pytest.raises(AxiomViolation):
        DiagramFunctor.create(
            chain_category,
            {"a": 1, "b": 1, "c": 1},
            {
                "a<=b": ExactMatrix.from_rows([[2]]),
                "b<=c": ExactMatrix.from_rows([[3]]),
                "a<=c": ExactMatrix.from_rows([[5]]),
            },
        )


def test_coequalizer_matches_nerve_on_a_monoid():
    c = FinCategory.from_monoid(C2_TABLE, 0)
    sign = DiagramFunctor.create(c, {"*": 1}, {"g1": ExactMatrix.from_rows([[-1]])})
    assert is_strongly_connected(c)
    assert colim0_coeq(c, sign, "*").dim == 0
    assert derived_colim(c, sign, 0)[0].dim == 0
    trivial = DiagramFunctor.constant(c, 1)
    assert colim0_coeq(c, trivial, "*").dim == 1


def test_coequalizer_needs_strong_connectivity(span_category):
    m = DiagramFunctor.constant(span_category, 1)
    with pytest.raises(NotStronglyConnected):
        colim0_coeq(span_category, m, "a")


def test_pairwise_coproducts():
    assert has_pairwise_coproducts(
        FinCategory.from_poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
    ).exists
    report = has_pairwise_coproducts(FinCategory.discrete(["x", "y"]))
    assert not report.exists
    assert report.missing == ("x", "y")


def test_external_tensor_is_rational_only(chain_category):
    m = DiagramFunctor.constant(chain_category, 1, "Z")
    with pytest.raises(CoefficientModeError):
        external_tensor(chain_category, m, m)


def test_external_tensor_multiplies_dimensions(chain_category):
    m = DiagramFunctor.constant(chain_category, 2)
    n = DiagramFunctor.constant(chain_category, 3)
    assert external_tensor(chain_category, m, n).dims == {"a": 6, "b": 6, "c": 6}


def test_adjoining_a_terminal_object():
    c = FinCategory.discrete(["p", "q"])
    assert dims(derived_colim(c, DiagramFunctor.constant(c, 1), 1)) == [2, 0]
    t = c.with_terminal()
    assert "T" in t.objects
    assert dims(derived_colim(t, DiagramFunctor.constant(t, 1), 2)) == [1, 0, 0]


def test_precompose_along_an_object_inclusion(chain_category):
    point = FinCategory.discrete(["u"])
    phi = CategoryFunctor(point, chain_category, {"u": "c"}, {"id_u": "id_c"})
    m = DiagramFunctor.create(
        chain_category,
        {"a": 1, "b": 1, "c": 2},
        {
            "a<=b": ExactMatrix.identity(1),
            "b<=c": ExactMatrix.from_rows([[1], [0]]),
            "a<=c": ExactMatrix.from_rows([[1], [0]]),
        },
    )
    assert precompose(m, phi).dims == {"u": 2}


def test_long_exact_sequence_of_a_split_extension(chain_category):
    sub = DiagramFunctor.constant(chain_category, 1)
    middle = DiagramFunctor.constant(chain_category, 2)
    quotient = DiagramFunctor.constant(chain_category, 1)
    inclusion = {obj: ExactMatrix.from_rows([[1], [0]]) for obj in chain_category.objects}
    projection = {obj: ExactMatrix.from_rows([[0, 1]]) for obj in chain_category.objects}
    les = colim_long_exact_sequence(
        chain_category, sub, middle, quotient, inclusion, projection, 2
    )
    assert les.exact


def test_transformation_must_be_natural(chain_category):
    m = DiagramFunctor.constant(chain_category, 1)
    eta = {"a": ExactMatrix.from_rows([[1]]), "b": ExactMatrix.from_rows([[2]]),
           "c": ExactMatrix.from_rows([[2]])}
    with pytest.raises(AxiomViolation):
        transformation_chain_map(chain_category, m, m, eta, 1)


def test_functor_chain_map_of_an_inclusion(chain_category):
    point = FinCategory.discrete(["u"])
    phi = CategoryFunctor(point, chain_category, {"u": "c"}, {"id_u": "id_c"})
    m = DiagramFunctor.constant(chain_category, 1)
    f = functor_chain_map(phi, m, 1)
    assert f.maps[0].shape == (3, 1)
