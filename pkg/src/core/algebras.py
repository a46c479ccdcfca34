"""Finite-dimensional associative algebras and bimodules by structure constants."""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy import QQ

from .errors import AxiomViolation, DimensionMismatch, ValidationFailure
from .exactla import ExactMatrix, Vector, parse_scalar, vec_axpy

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class StructAlgebra:
    """An algebra over Q with e_i·e_j = Σ_k table[(i, j)][k] e_k.

    ``unit`` is None for a non-unital algebra. When ``weights`` is given the
    multiplication must be homogeneous. ``trusted`` skips the exhaustive axiom
    checks for algebras the engine builds itself.
    """

    dim: int
    table: Dict[Tuple[int, int], Vector]
    unit: Optional[Vector] = None
    weights: Optional[Tuple[int, ...]] = None
    name: str = "A"
    trusted: bool = field(default=False, repr=False)

    def __post_init__(self) -> None:
        if self.dim < 0:
            raise DimensionMismatch(f"Negative algebra dimension {self.dim}")
        if self.weights is not None and len(self.weights) != self.dim:
            raise DimensionMismatch(f"{len(self.weights)} weights for dimension {self.dim}")
        for (i, j), vec in self.table.items():
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise DimensionMismatch(f"Product index ({i},{j}) out of range")
            if any(not (0 <= k < self.dim) for k in vec):
                raise DimensionMismatch(f"Product e{i}·e{j} has a coordinate out of range")
        if self.unit is not None and any(not (0 <= k < self.dim) for k in self.unit):
            raise DimensionMismatch("Unit has a coordinate out of range")
        if self.trusted:
            return
        self._check_grading()
        self._check_associative()
        self._check_unit()

    def _check_grading(self) -> None:
        if self.weights is None:
            return
        w = self.weights
        if any(x < 0 for x in w):
            raise AxiomViolation("Weights must be non-negative")
        for (i, j), vec in self.table.items():
            for k in vec:
                if w[k] != w[i] + w[j]:
                    raise AxiomViolation(
                        "Multiplication does not respect the grading", location=f"e{i}·e{j}"
                    )
        if self.unit is not None and any(w[k] != 0 for k in self.unit):
            raise AxiomViolation("Unit is not of weight 0")

    def _check_associative(self) -> None:
        for i, j, k in product(range(self.dim), repeat=3):
            left = self.mul(self.basis_product(i, j), {k: QQ.one})
            right = self.mul({i: QQ.one}, self.basis_product(j, k))
            if left != right:
                raise AxiomViolation("Associativity fails", location=f"(e{i}, e{j}, e{k})")

    def _check_unit(self) -> None:
        if self.unit is None:
            return
        for i in range(self.dim):
            e = {i: QQ.one}
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                raise AxiomViolation("Unit law fails", location=f"e{i}")

    # -- arithmetic ---------------------------------------------------------------

    @property
    def unital(self) -> bool:
        return self.unit is not None

    @property
    def graded(self) -> bool:
        return self.weights is not None

    def basis_product(self, i: int, j: int) -> Vector:
        return self.table.get((i, j), {})

    def mul(self, x: Vector, y: Vector) -> Vector:
        out: Vector = {}
        for i, a in x.items():
            for j, b in y.items():
                vec_axpy(out, a * b, self.basis_product(i, j))
        return out

    def weight(self, i: int) -> int:
        return self.weights[i] if self.weights is not None else 0

    def indices_of_weight(self, w: int) -> List[int]:
        if self.weights is None:
            return list(range(self.dim)) if w == 0 else []
        return [i for i, x in enumerate(self.weights) if x == w]

    @cached_property
    def max_weight(self) -> int:
        return max(self.weights, default=0) if self.weights is not None else 0

    def left_matrix(self, i: int) -> ExactMatrix:
        """Matrix of x -> e_i·x."""
        entries = {
            (k, j): v for j in range(self.dim) for k, v in self.basis_product(i, j).items()
        }
        return ExactMatrix.from_entries(entries, self.dim, self.dim)

    def right_matrix(self, i: int) -> ExactMatrix:
        """Matrix of x -> x·e_i."""
        entries = {
            (k, j): v for j in range(self.dim) for k, v in self.basis_product(j, i).items()
        }
        return ExactMatrix.from_entries(entries, self.dim, self.dim)

    def multiplication_matrix(self) -> ExactMatrix:
        """A⊗A -> A with e_i⊗e_j at column i·dim + j."""
        n = self.dim
        entries = {
            (k, i * n + j): v for (i, j), vec in self.table.items() for k, v in vec.items()
        }
        return ExactMatrix.from_entries(entries, n, n * n)

    # -- unit-adapted basis -------------------------------------------------------

    def unit_pivot(self) -> int:
        """Index of the basis vector replaced by the unit in the adapted basis."""
        if self.unit is None:
            raise ValidationFailure("Algebra has no unit")
        candidates = [k for k in sorted(self.unit) if self.weight(k) == 0]
        if not candidates:
            raise AxiomViolation("Unit has no weight-0 coordinate")
        return candidates[0]

    def unit_adapted(self) -> "StructAlgebra":
        """Same algebra in a basis whose ``unit_pivot()``-th vector is the unit.

        The remaining basis vectors span a complement of the unit line, which
        stands for Ā = A/k·1.
        """
        p = self.unit_pivot()
        assert self.unit is not None
        if self.unit == {p: QQ.one}:
            return self
        u = self.unit
        up = u[p]

        def to_new(x: Vector) -> Vector:
            out = {k: v for k, v in x.items() if k != p}
            c = x.get(p)
            if c:
                vec_axpy(out, -c / up, {k: v for k, v in u.items() if k != p})
                out[p] = c / up
            return out

        def old_basis(k: int) -> Vector:
            return dict(u) if k == p else {k: QQ.one}

        table: Dict[Tuple[int, int], Vector] = {}
        for i in range(self.dim):
            for j in range(self.dim):
                vec = to_new(self.mul(old_basis(i), old_basis(j)))
                if vec:
                    table[(i, j)] = vec
        logger.debug(f"Rebased {self.name} so that the unit is e{p}")
        return StructAlgebra(
            self.dim, table, {p: QQ.one}, self.weights, self.name, trusted=True
        )

    # -- builders -------------------------------------------------------------------

    @classmethod
    def from_dense(
        cls,
        dim: int,
        table: Sequence[Sequence[Sequence[Any]]],
        unit: Optional[Sequence[Any]] = None,
        weights: Optional[Sequence[int]] = None,
        name: str = "A",
    ) -> "StructAlgebra":
        """Build from table[i][j][k] = c_ij^k with "p/q" strings or integers."""
        if len(table) != dim or any(len(row) != dim for row in table):
            raise DimensionMismatch(f"Structure table is not {dim}x{dim}")
        sparse: Dict[Tuple[int, int], Vector] = {}
        for i, row in enumerate(table):
            for j, coeffs in enumerate(row):
                if len(coeffs) != dim:
                    raise DimensionMismatch(f"Product e{i}·e{j} has {len(coeffs)} coordinates")
                vec = {k: parse_scalar(c) for k, c in enumerate(coeffs)}
                vec = {k: v for k, v in vec.items() if v}
                if vec:
                    sparse[(i, j)] = vec
        unit_vec = None
        if unit is not None:
            if len(unit) != dim:
                raise DimensionMismatch(f"Unit has {len(unit)} coordinates")
            unit_vec = {k: parse_scalar(c) for k, c in enumerate(unit) if parse_scalar(c)}
        return cls(dim, sparse, unit_vec, tuple(weights) if weights is not None else None, name)

    @classmethod
    def ground_field(cls) -> "StructAlgebra":
        return cls(1, {(0, 0): {0: QQ.one}}, {0: QQ.one}, (0,), "Q")

    @classmethod
    def dual_numbers(cls) -> "StructAlgebra":
        """Q[ε]/(ε²) with ε of weight 1."""
        return cls(2, {(0, 0): {0: QQ.one}, (0, 1): {1: QQ.one}, (1, 0): {1: QQ.one}},
                   {0: QQ.one}, (0, 1), "Q[e]")

    @classmethod
    def product_field(cls, copies: int = 2) -> "StructAlgebra":
        """Q × ... × Q with orthogonal idempotents."""
        table = {(i, i): {i: QQ.one} for i in range(copies)}
        unit = {i: QQ.one for i in range(copies)}
        return cls(copies, table, unit, None, "x".join(["Q"] * copies))

    @classmethod
    def zero_multiplication(cls, dim: int) -> "StructAlgebra":
        """Non-unital V with all products zero, V in weight 1."""
        return cls(dim, {}, None, tuple([1] * dim), f"V{dim}")

    @classmethod
    def truncated_polynomial(cls, power: int) -> "StructAlgebra":
        """Non-unital tQ[t]/(t^power) on the basis t, ..., t^(power-1)."""
        n = power - 1
        table = {
            (i, j): {i + j + 1: QQ.one} for i in range(n) for j in range(n) if i + j + 1 < n
        }
        return cls(n, table, None, tuple(range(1, power)), f"tQ[t]/(t^{power})")


@dataclass(frozen=True, eq=False)
class Bimodule:
    """A bimodule over a StructAlgebra.

    ``left[i]`` is the matrix of m -> e_i·m and ``right[i]`` that of m -> m·e_i.
    """

    algebra: StructAlgebra
    dim: int
    left: Tuple[ExactMatrix, ...]
    right: Tuple[ExactMatrix, ...]
    weights: Optional[Tuple[int, ...]] = None
    trusted: bool = field(default=False, repr=False)

    def __post_init__(self) -> None:
        a = self.algebra
        if len(self.left) != a.dim or len(self.right) != a.dim:
            raise DimensionMismatch("Bimodule needs one action matrix per algebra basis vector")
        for mat in self.left + self.right:
            if mat.shape != (self.dim, self.dim):
                raise DimensionMismatch(f"Action matrix has shape {mat.shape}")
        if self.weights is not None and len(self.weights) != self.dim:
            raise DimensionMismatch("Bimodule weights do not match its dimension")
        if self.trusted:
            return
        for i, j in product(range(a.dim), repeat=2):
            ij = self.combine(self.left, a.basis_product(i, j))
            if ij != self.left[i] @ self.left[j]:
                raise AxiomViolation("Left action is not associative", location=f"(e{i}, e{j})")
            ij = self.combine(self.right, a.basis_product(i, j))
            if ij != self.right[j] @ self.right[i]:
                raise AxiomViolation("Right action is not associative", location=f"(e{i}, e{j})")
            if self.left[i] @ self.right[j] != self.right[j] @ self.left[i]:
                raise AxiomViolation("Left and right actions do not commute",
                                     location=f"(e{i}, e{j})")
        if a.unit is not None:
            eye = ExactMatrix.identity(self.dim)
            if self.combine(self.left, a.unit) != eye or self.combine(self.right, a.unit) != eye:
                raise AxiomViolation("Unit does not act as the identity")

    def combine(self, mats: Sequence[ExactMatrix], coeffs: Vector) -> ExactMatrix:
        out = ExactMatrix.zeros(self.dim, self.dim)
        for k, c in coeffs.items():
            out = out + mats[k].scale(c)
        return out

    def act_left(self, x: Vector, m: Vector) -> Vector:
        out: Vector = {}
        for i, c in x.items():
            vec_axpy(out, c, self.left[i].apply(m))
        return out

    def act_right(self, m: Vector, x: Vector) -> Vector:
        out: Vector = {}
        for i, c in x.items():
            vec_axpy(out, c, self.right[i].apply(m))
        return out

    def weight(self, k: int) -> int:
        return self.weights[k] if self.weights is not None else 0

    @classmethod
    def regular(cls, algebra: StructAlgebra) -> "Bimodule":
        return cls(
            algebra,
            algebra.dim,
            tuple(algebra.left_matrix(i) for i in range(algebra.dim)),
            tuple(algebra.right_matrix(i) for i in range(algebra.dim)),
            algebra.weights,
            trusted=True,
        )

    @classmethod
    def from_dense(
        cls,
        algebra: StructAlgebra,
        dim: int,
        left: Sequence[Sequence[Sequence[Any]]],
        right: Sequence[Sequence[Sequence[Any]]],
        weights: Optional[Sequence[int]] = None,
    ) -> "Bimodule":
        """``left[i][j]`` holds e_i·m_j and ``right[j][i]`` holds m_j·e_i."""
        lefts = []
        for i in range(algebra.dim):
            entries = {
                (k, j): parse_scalar(v)
                for j in range(dim) for k, v in enumerate(left[i][j])
            }
            lefts.append(ExactMatrix.from_entries(entries, dim, dim))
        rights = []
        for i in range(algebra.dim):
            entries = {
                (k, j): parse_scalar(v)
                for j in range(dim) for k, v in enumerate(right[j][i])
            }
            rights.append(ExactMatrix.from_entries(entries, dim, dim))
        return cls(
            algebra, dim, tuple(lefts), tuple(rights),
            tuple(weights) if weights is not None else None,
        )

    def pullback(self, source: StructAlgebra, images: Sequence[Vector]) -> "Bimodule":
        """Restrict scalars along the algebra map e_i -> images[i]."""
        if len(images) != source.dim:
            raise DimensionMismatch("One image per source basis vector is required")
        lefts = tuple(self.combine(self.left, img) for img in images)
        rights = tuple(self.combine(self.right, img) for img in images)
        return Bimodule(source, self.dim, lefts, rights, self.weights, trusted=self.trusted)


def unitalize(a: StructAlgebra) -> StructAlgebra:
    """A_+ = Q·1 ⊕ A with the unit at index 0 and A embedded as an ideal."""
    n = a.dim + 1
    table: Dict[Tuple[int, int], Vector] = {}
    for k in range(n):
        table[(0, k)] = {k: QQ.one}
        table[(k, 0)] = {k: QQ.one}
    for (i, j), vec in a.table.items():
        table[(i + 1, j + 1)] = {k + 1: v for k, v in vec.items()}
    weights = (0,) + a.weights if a.weights is not None else None
    return StructAlgebra(n, table, {0: QQ.one}, weights, f"{a.name}+", trusted=True)
