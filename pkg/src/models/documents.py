"""Input document schemas.

Documents are UTF-8 JSON. Scalars are integers or "p/q" strings; matrices are
row-major lists of rows.
"""

from typing import Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

Scalar = Union[int, str]
MatrixRows = List[List[Scalar]]
Coeff = Literal["Q", "Z"]


class DocumentModel(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class MorphismDoc(DocumentModel):
    name: str
    dom: str
    cod: str


class CategoryDoc(DocumentModel):
    """A finite category; identities named ``id_<object>`` are added unless listed."""
    objects: List[str] = Field(min_length=1, description="Object labels")
    morphisms: List[MorphismDoc] = Field(default_factory=list)
    compose: List[Tuple[str, str, str]] = Field(
        default_factory=list,
        description="(g, f, g∘f) triples; composites with identities may be omitted"
    )


class FunctorDoc(DocumentModel):
    coeff: Coeff = "Q"
    dims: Dict[str, int] = Field(description="Rank at every object")
    maps: Dict[str, MatrixRows] = Field(
        default_factory=dict,
        description="M(f) of shape dim(cod) x dim(dom); identities may be omitted"
    )

    @model_validator(mode="after")
    def _check_dims(self) -> "FunctorDoc":
        bad = [obj for obj, d in self.dims.items() if d < 0]
        if bad:
            raise ValueError(f"negative dimension at {bad}")
        return self


class GroupDoc(DocumentModel):
    """Either a multiplication table or permutation generators."""
    table: Optional[List[List[int]]] = None
    perm_generators: Optional[List[List[int]]] = None
    name: str = "G"

    @model_validator(mode="after")
    def _one_source(self) -> "GroupDoc":
        if (self.table is None) == (self.perm_generators is None):
            raise ValueError("give exactly one of 'table' and 'perm_generators'")
        return self


class ModuleDoc(DocumentModel):
    coeff: Coeff = "Z"
    rank: int = Field(ge=0)
    action: Dict[str, MatrixRows] = Field(
        default_factory=dict,
        description="Element index -> matrix; extended multiplicatively"
    )


class AlgebraDoc(DocumentModel):
    dim: int = Field(ge=0)
    unital: bool = False
    unit: Optional[List[Scalar]] = None
    table: List[List[List[Scalar]]] = Field(description="table[i][j][k] = c_ij^k")
    weights: Optional[List[int]] = None
    name: str = "A"

    @model_validator(mode="after")
    def _unit_given(self) -> "AlgebraDoc":
        if self.unital and self.unit is None:
            raise ValueError("a unital algebra needs its unit")
        if not self.unital and self.unit is not None:
            raise ValueError("unit given for an algebra marked non-unital")
        return self


class BimoduleDoc(DocumentModel):
    dim: int = Field(ge=0)
    left: List[MatrixRows] = Field(description="left[i][j]: coordinates of e_i·m_j")
    right: List[MatrixRows] = Field(description="right[j][i]: coordinates of m_j·e_i")
    weights: Optional[List[int]] = None


class GeneratorDoc(DocumentModel):
    name: str
    weight: int = Field(default=1, ge=1)


class PresentationDoc(DocumentModel):
    """A graded free algebra mapping onto a graded algebra."""
    generators: List[GeneratorDoc] = Field(min_length=1)
    algebra: AlgebraDoc
    images: Dict[str, List[Scalar]] = Field(
        description="Generator name -> coefficient vector in the algebra's basis"
    )
    name: str = "F->A"

    @model_validator(mode="after")
    def _images_match(self) -> "PresentationDoc":
        names = [g.name for g in self.generators]
        missing = [n for n in names if n not in self.images]
        extra = [n for n in self.images if n not in names]
        if missing or extra:
            raise ValueError(f"images must cover the generators (missing {missing}, extra {extra})")
        if self.algebra.weights is None:
            raise ValueError("the presented algebra needs weights")
        return self


class RingDoc(DocumentModel):
    """Either ``zmod`` or explicit tables."""
    zmod: Optional[int] = Field(default=None, ge=1)
    add: Optional[List[List[int]]] = None
    mul: Optional[List[List[int]]] = None
    name: Optional[str] = None

    @model_validator(mode="after")
    def _one_source(self) -> "RingDoc":
        tables = self.add is not None and self.mul is not None
        if (self.zmod is not None) == tables:
            raise ValueError("give either 'zmod' or both 'add' and 'mul'")
        return self


class HomomorphismDoc(DocumentModel):
    images: List[int] = Field(alias="map", description="Image of every source element")
