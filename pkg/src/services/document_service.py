"""Document Service - read JSON documents and build validated engine objects.

Schema errors, unreadable files and malformed JSON all surface as
``DocumentError`` carrying the file path; axiom failures found while building
the engine object keep their own error type.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Type, TypeVar

from pydantic import BaseModel, ValidationError

from ..core.algebras import Bimodule, StructAlgebra
from ..core.errors import DocumentError, ValidationFailure
from ..core.exactla import ExactMatrix, parse_scalar
from ..core.fincat import DiagramFunctor, FinCategory
from ..core.freegraded import GradedFreeAlgebra, GradedPresentation
from ..core.grouphom import FinGroup, GModule
from ..core.steinberg import FiniteRing
from ..models.documents import (
    AlgebraDoc,
    BimoduleDoc,
    CategoryDoc,
    FunctorDoc,
    GroupDoc,
    HomomorphismDoc,
    MatrixRows,
    ModuleDoc,
    PresentationDoc,
    RingDoc,
)

logger = logging.getLogger(__name__)

DocT = TypeVar("DocT", bound=BaseModel)


def read_document(path: Path, model: Type[DocT]) -> DocT:
    """Parse a JSON file into a document model."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise DocumentError(f"Cannot read document: {e.strerror}", location=str(path)) from e
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(
            f"Malformed JSON: {e.msg} at line {e.lineno}", location=str(path)
        ) from e
    try:
        doc = model.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"]) or "<root>"
        raise DocumentError(
            f"{model.__name__}: {first['msg']}", location=f"{path}: {where}"
        ) from e
    logger.debug(f"Loaded {model.__name__} from {path}")
    return doc


def _matrix(rows: MatrixRows, shape: tuple, mode: str, where: str) -> ExactMatrix:
    r, c = shape
    if len(rows) != r or any(len(row) != c for row in rows):
        raise DocumentError(f"Matrix must be {r}x{c}", location=where)
    return ExactMatrix.from_rows(rows, mode, c)  # type: ignore[arg-type]


def build_category(doc: CategoryDoc) -> FinCategory:
    return FinCategory.create(
        doc.objects,
        [(m.name, m.dom, m.cod) for m in doc.morphisms],
        [tuple(t) for t in doc.compose],  # type: ignore[misc]
    )


def build_functor(doc: FunctorDoc, category: FinCategory) -> DiagramFunctor:
    missing = [obj for obj in category.objects if obj not in doc.dims]
    if missing:
        raise DocumentError(f"No dimension for objects {missing}", location="functor.dims")
    maps: Dict[str, ExactMatrix] = {}
    for m in category.morphisms:
        rows = doc.maps.get(m.name)
        if rows is None:
            continue
        shape = (doc.dims[m.cod], doc.dims[m.dom])
        maps[m.name] = _matrix(rows, shape, doc.coeff, f"functor.maps.{m.name}")
    unknown = sorted(set(doc.maps) - {m.name for m in category.morphisms})
    if unknown:
        raise DocumentError(f"Maps for unknown morphisms {unknown}", location="functor.maps")
    return DiagramFunctor.create(category, doc.dims, maps, doc.coeff)


def build_group(doc: GroupDoc) -> FinGroup:
    if doc.table is not None:
        return FinGroup.from_table(doc.table, doc.name)
    assert doc.perm_generators is not None
    return FinGroup.from_permutations(doc.perm_generators, doc.name)


def build_module(doc: ModuleDoc, group: FinGroup) -> GModule:
    action: Dict[int, ExactMatrix] = {}
    for key, rows in doc.action.items():
        try:
            g = int(key)
        except ValueError as e:
            raise DocumentError(
                f"Element index {key!r} is not an integer", location="module.action"
            ) from e
        action[g] = _matrix(rows, (doc.rank, doc.rank), doc.coeff, f"module.action.{key}")
    return GModule.from_generators(group, doc.rank, action, doc.coeff)


def build_algebra(doc: AlgebraDoc) -> StructAlgebra:
    return StructAlgebra.from_dense(
        doc.dim, doc.table, doc.unit if doc.unital else None, doc.weights, doc.name
    )


def build_bimodule(doc: BimoduleDoc, algebra: StructAlgebra) -> Bimodule:
    if len(doc.left) != algebra.dim or len(doc.right) != doc.dim:
        raise DocumentError(
            "left needs one entry per algebra basis vector, right one per module basis vector",
            location="bimodule",
        )
    for rows in list(doc.left) + list(doc.right):
        if any(len(vec) != doc.dim for vec in rows):
            raise DocumentError(f"Coordinates must have length {doc.dim}", location="bimodule")
    return Bimodule.from_dense(algebra, doc.dim, doc.left, doc.right, doc.weights)


def build_presentation(doc: PresentationDoc, max_weight: int) -> GradedPresentation:
    target = build_algebra(doc.algebra)
    free = GradedFreeAlgebra(
        tuple(g.name for g in doc.generators),
        tuple(g.weight for g in doc.generators),
        max_weight,
        unital=target.unital,
    )
    images = []
    for g in doc.generators:
        coeffs = doc.images[g.name]
        if len(coeffs) != target.dim:
            raise DocumentError(
                f"Image of {g.name} needs {target.dim} coordinates", location=f"images.{g.name}"
            )
        images.append({k: v for k, c in enumerate(coeffs) if (v := parse_scalar(c))})
    return GradedPresentation(free, target, images, doc.name)


def build_ring(doc: RingDoc) -> FiniteRing:
    if doc.zmod is not None:
        return FiniteRing.zmod(doc.zmod)
    assert doc.add is not None and doc.mul is not None
    return FiniteRing.from_tables(doc.add, doc.mul, doc.name or "R")


def build_homomorphism(doc: HomomorphismDoc) -> List[int]:
    return list(doc.images)


class DocumentService:
    """Loads the documents a job names, in dependency order.

    Usage:
        docs = DocumentService({"category": "c.json", "functor": "m.json"})
        inputs = docs.load_all(max_weight=6)
    """

    ORDER = (
        "category", "functor", "group", "module", "algebra", "bimodule",
        "presentation", "ring", "target", "hom",
    )

    def __init__(self, paths: Dict[str, str]):
        unknown = sorted(set(paths) - set(self.ORDER))
        if unknown:
            raise ValidationFailure(f"Unknown document roles {unknown}")
        self.paths = {role: Path(p) for role, p in paths.items()}

    def _read(self, role: str, model: Type[DocT]) -> Optional[DocT]:
        path = self.paths.get(role)
        return read_document(path, model) if path is not None else None

    def load_all(self, max_weight: Optional[int] = None) -> Dict[str, Any]:
        out: Dict[str, Any] = {}
        if (cat := self._read("category", CategoryDoc)) is not None:
            out["category"] = build_category(cat)
        if (fun := self._read("functor", FunctorDoc)) is not None:
            if "category" not in out:
                raise ValidationFailure("A functor document needs --category")
            out["functor"] = build_functor(fun, out["category"])
        if (grp := self._read("group", GroupDoc)) is not None:
            out["group"] = build_group(grp)
        if (mod := self._read("module", ModuleDoc)) is not None:
            if "group" not in out:
                raise ValidationFailure("A module document needs --group")
            out["module"] = build_module(mod, out["group"])
        if (alg := self._read("algebra", AlgebraDoc)) is not None:
            out["algebra"] = build_algebra(alg)
        if (bim := self._read("bimodule", BimoduleDoc)) is not None:
            if "algebra" not in out:
                raise ValidationFailure("A bimodule document needs --algebra")
            out["bimodule"] = build_bimodule(bim, out["algebra"])
        if (pres := self._read("presentation", PresentationDoc)) is not None:
            if max_weight is None:
                raise ValidationFailure("A presentation needs --max-weight")
            out["presentation"] = build_presentation(pres, max_weight)
        for role in ("ring", "target"):
            if (ring := self._read(role, RingDoc)) is not None:
                out[role] = build_ring(ring)
        if (hom := self._read("hom", HomomorphismDoc)) is not None:
            out["hom"] = build_homomorphism(hom)
        logger.info(f"Loaded documents: {sorted(out)}")
        return out
