"""JSON documents: schema checks and object construction."""

from pathlib import Path

import pytest

from src.core.errors import AxiomViolation, DocumentError, ValidationFailure
from src.core.fincat import derived_colim
from src.models.documents import AlgebraDoc, GroupDoc, RingDoc
from src.services.document_service import DocumentService, read_document

CATEGORY = {
    "objects": ["a", "b"],
    "morphisms": [{"name": "f", "dom": "a", "cod": "b"}],
}
FUNCTOR = {"dims": {"a": 1, "b": 1}, "maps": {"f": [[0]]}}
V2 = {
    "dim": 2,
    "table": [[[0, 0], [0, 0]], [[0, 0], [0, 0]]],
    "weights": [1, 1],
    "name": "V2",
}
PRESENTATION = {
    "generators": [{"name": "x"}, {"name": "y"}],
    "algebra": V2,
    "images": {"x": [1, 0], "y": [0, 1]},
}


def test_unreadable_file(tmp_path):
    with pytest.raises(DocumentError):
        read_document(tmp_path / "missing.json", GroupDoc)


def test_malformed_json(write_json):
    path = write_json("group.json", '{"table": [[0]')
    with pytest.raises(DocumentError) as info:
        read_document(Path(path), GroupDoc)
    assert "Malformed JSON" in str(info.value)


def test_extra_fields_are_rejected(write_json):
    path = write_json("group.json", {"table": [[0]], "order": 1})
    with pytest.raises(DocumentError):
        read_document(Path(path), GroupDoc)


@pytest.mark.parametrize(
    "model, payload",
    [
        (AlgebraDoc, {"dim": 1, "unital": True, "table": [[[1]]]}),
        (AlgebraDoc, {"dim": 1, "unit": [1], "table": [[[1]]]}),
        (GroupDoc, {"table": [[0]], "perm_generators": [[0]]}),
        (GroupDoc, {}),
        (RingDoc, {"zmod": 4, "add": [[0]], "mul": [[0]]}),
    ],
)
def test_either_or_fields(write_json, model, payload):
    with pytest.raises(DocumentError):
        read_document(Path(write_json("doc.json", payload)), model)


def test_category_and_functor_load(write_json):
    docs = DocumentService({
        "category": write_json("c.json", CATEGORY),
        "functor": write_json("m.json", FUNCTOR),
    })
    inputs = docs.load_all()
    c, m = inputs["category"], inputs["functor"]
    assert {x.name for x in c.morphisms} == {"f", "id_a", "id_b"}
    assert [h.dim for h in derived_colim(c, m, 1)] == [1, 0]


def test_functor_matrix_shape_is_checked(write_json):
    docs = DocumentService({
        "category": write_json("c.json", CATEGORY),
        "functor": write_json("m.json", {"dims": {"a": 1, "b": 2}, "maps": {"f": [[1]]}}),
    })
    with pytest.raises(DocumentError):
        docs.load_all()


def test_unknown_role():
    with pytest.raises(ValidationFailure):
        DocumentService({"poset": "p.json"})


def test_functor_needs_its_category(write_json):
    docs = DocumentService({"functor": write_json("m.json", FUNCTOR)})
    with pytest.raises(ValidationFailure):
        docs.load_all()


def test_presentation_needs_a_weight_bound(write_json):
    docs = DocumentService({"presentation": write_json("p.json", PRESENTATION)})
    with pytest.raises(ValidationFailure):
        docs.load_all()
    presentation = docs.load_all(max_weight=4)["presentation"]
    assert presentation.free.generators == ("x", "y")


def test_group_and_module_load(write_json):
    docs = DocumentService({
        "group": write_json("g.json", {"perm_generators": [[1, 0, 2], [1, 2, 0]]}),
        "module": write_json("m.json", {"rank": 1, "action": {"1": [[-1]], "2": [[1]]}}),
    })
    inputs = docs.load_all()
    assert inputs["group"].order == 6
    assert inputs["module"].rank == 1


def test_ring_homomorphism_documents(write_json):
    docs = DocumentService({
        "ring": write_json("r.json", {"zmod": 4}),
        "target": write_json("t.json", {"zmod": 2}),
        "hom": write_json("h.json", {"map": [0, 1, 0, 1]}),
    })
    inputs = docs.load_all()
    assert (inputs["ring"].size, inputs["target"].size) == (4, 2)
    assert inputs["hom"] == [0, 1, 0, 1]


def test_axiom_failures_keep_their_type(write_json):
    algebra = {"dim": 2, "table": [[[0, 1], [0, 0]], [[1, 0], [0, 0]]]}
    docs = DocumentService({"algebra": write_json("a.json", algebra)})
    with pytest.raises(AxiomViolation):
        docs.load_all()
