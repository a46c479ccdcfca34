"""Exact linear algebra over the rationals and the integers.

All matrices wrap a sympy ``DomainMatrix`` over ``QQ`` (rational mode) or ``ZZ``
(integer mode). Matrices act on column vectors; subspaces are stored as row
bases in canonical reduced row echelon form, so two equal subspaces always have
identical basis matrices.

Rational elimination runs fraction-free (sympy's ``CD`` methods: clear
denominators, then Bareiss-style elimination over ``ZZ``). The dense variant is
used once a matrix is small or filled enough (see ``LinalgConfig``).

Integer matrices are only ever diagonalized by the Smith normal form routines
at the bottom of this module.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Any, Dict, Iterable, List, Literal, Optional, Sequence, Set, Tuple

from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from ..models.config import get_config
from .errors import (
    CoefficientModeError,
    ContainmentError,
    DimensionMismatch,
    DocumentError,
    InvariantViolation,
)

logger = logging.getLogger(__name__)

Mode = Literal["Q", "Z"]
Vector = Dict[int, Any]

_DOMAINS = {"Q": QQ, "Z": ZZ}


# ---------------------------------------------------------------------------
# Scalars
# ---------------------------------------------------------------------------

def domain_of(mode: Mode) -> Any:
    return _DOMAINS[mode]


def parse_scalar(value: Any, mode: Mode = "Q") -> Any:
    """Parse an int, a "p/q" string or a domain element into the given mode.

    Raises:
        DocumentError: If the value is malformed or not integral in integer mode
    """
    if isinstance(value, bool):
        raise DocumentError(f"Boolean is not a scalar: {value!r}")
    if isinstance(value, int):
        return _DOMAINS[mode](value)
    if isinstance(value, str):
        text = value.strip()
        try:
            if "/" in text:
                num_text, den_text = text.split("/", 1)
                num, den = int(num_text), int(den_text)
            else:
                num, den = int(text), 1
        except ValueError as e:
            raise DocumentError(f"Malformed rational {value!r}") from e
        if den == 0:
            raise DocumentError(f"Zero denominator in {value!r}")
        q = QQ(num, den)
        if mode == "Z":
            if q.denominator != 1:
                raise DocumentError(f"Non-integer {value!r} in integer mode")
            return ZZ(int(q.numerator))
        return q
    try:
        return _DOMAINS[mode].convert(value)
    except Exception as e:  # sympy raises CoercionFailed
        raise DocumentError(f"Cannot read scalar {value!r} in mode {mode}") from e


def format_scalar(value: Any) -> str:
    """Render a scalar as "p" or "p/q" with a positive reduced denominator."""
    q = QQ.convert(value)
    num, den = int(q.numerator), int(q.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


# ---------------------------------------------------------------------------
# Sparse vectors
# ---------------------------------------------------------------------------

def vec_axpy(target: Vector, coeff: Any, source: Vector) -> None:
    """target += coeff * source, in place, dropping zeros."""
    if not coeff:
        return
    for k, v in source.items():
        value = target.get(k, 0) + coeff * v
        if value:
            target[k] = value
        else:
            target.pop(k, None)


def vec_scale(source: Vector, coeff: Any) -> Vector:
    if not coeff:
        return {}
    return {k: coeff * v for k, v in source.items()}


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ExactMatrix:
    """Exact matrix over QQ or ZZ, sparse by default with a dense fallback."""

    rep: DomainMatrix

    @property
    def mode(self) -> Mode:
        return "Z" if self.rep.domain == ZZ else "Q"

    @property
    def rows(self) -> int:
        return int(self.rep.shape[0])

    @property
    def cols(self) -> int:
        return int(self.rep.shape[1])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    # -- construction -------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int, mode: Mode = "Q") -> "ExactMatrix":
        if rows < 0 or cols < 0:
            raise DimensionMismatch(f"Negative shape {rows}x{cols}")
        return cls(DomainMatrix.from_dok({}, (rows, cols), _DOMAINS[mode]))

    @classmethod
    def identity(cls, n: int, mode: Mode = "Q") -> "ExactMatrix":
        one = _DOMAINS[mode].one
        return cls(DomainMatrix.from_dok({(i, i): one for i in range(n)}, (n, n), _DOMAINS[mode]))

    @classmethod
    def from_entries(
        cls,
        entries: Dict[Tuple[int, int], Any],
        rows: int,
        cols: int,
        mode: Mode = "Q",
    ) -> "ExactMatrix":
        """Build from a (row, col) -> value map; zero values are dropped."""
        domain = _DOMAINS[mode]
        dok = {}
        for (i, j), value in entries.items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise DimensionMismatch(f"Entry ({i},{j}) outside {rows}x{cols}")
            v = domain.convert(value)
            if v:
                dok[(i, j)] = v
        return cls(DomainMatrix.from_dok(dok, (rows, cols), domain))

    @classmethod
    def from_rows(
        cls,
        rows: Sequence[Sequence[Any]],
        mode: Mode = "Q",
        cols: Optional[int] = None,
    ) -> "ExactMatrix":
        """Build from row-major values (ints, "p/q" strings or domain elements)."""
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        entries: Dict[Tuple[int, int], Any] = {}
        for i, row in enumerate(rows):
            if len(row) != width:
                raise DimensionMismatch(f"Row {i} has length {len(row)}, expected {width}")
            for j, value in enumerate(row):
                v = parse_scalar(value, mode)
                if v:
                    entries[(i, j)] = v
        return cls.from_entries(entries, len(rows), width, mode)

    @classmethod
    def from_vectors(cls, vectors: Sequence[Vector], cols: int, mode: Mode = "Q") -> "ExactMatrix":
        """Stack sparse row vectors."""
        entries = {(i, j): v for i, vec in enumerate(vectors) for j, v in vec.items()}
        return cls.from_entries(entries, len(vectors), cols, mode)

    @classmethod
    def diagonal(cls, values: Sequence[Any], mode: Mode = "Q") -> "ExactMatrix":
        n = len(values)
        return cls.from_entries({(i, i): v for i, v in enumerate(values)}, n, n, mode)

    @classmethod
    def hstack(cls, blocks: Sequence["ExactMatrix"], rows: Optional[int] = None) -> "ExactMatrix":
        if not blocks:
            return cls.zeros(rows or 0, 0)
        height = blocks[0].rows
        mode = blocks[0].mode
        entries: Dict[Tuple[int, int], Any] = {}
        offset = 0
        for block in blocks:
            if block.rows != height:
                raise DimensionMismatch(f"hstack of {block.rows} rows onto {height}")
            for (i, j), v in block.entries.items():
                entries[(i, j + offset)] = v
            offset += block.cols
        return cls.from_entries(entries, height, offset, mode)

    @classmethod
    def vstack(cls, blocks: Sequence["ExactMatrix"], cols: Optional[int] = None) -> "ExactMatrix":
        if not blocks:
            return cls.zeros(0, cols or 0)
        width = blocks[0].cols
        mode = blocks[0].mode
        entries: Dict[Tuple[int, int], Any] = {}
        offset = 0
        for block in blocks:
            if block.cols != width:
                raise DimensionMismatch(f"vstack of {block.cols} columns onto {width}")
            for (i, j), v in block.entries.items():
                entries[(i + offset, j)] = v
            offset += block.rows
        return cls.from_entries(entries, offset, width, mode)

    @classmethod
    def block_diagonal(cls, blocks: Sequence["ExactMatrix"], mode: Mode = "Q") -> "ExactMatrix":
        entries: Dict[Tuple[int, int], Any] = {}
        r0 = c0 = 0
        for block in blocks:
            for (i, j), v in block.entries.items():
                entries[(i + r0, j + c0)] = v
            r0 += block.rows
            c0 += block.cols
        return cls.from_entries(entries, r0, c0, mode)

    # -- access ---------------------------------------------------------------

    @cached_property
    def entries(self) -> Dict[Tuple[int, int], Any]:
        """Nonzero entries as a (row, col) -> value map."""
        return {k: v for k, v in self.rep.to_dok().items() if v}

    @cached_property
    def row_vectors(self) -> List[Vector]:
        out: List[Vector] = [{} for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    @cached_property
    def column_vectors(self) -> List[Vector]:
        out: List[Vector] = [{} for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            out[j][i] = v
        return out

    def to_rows(self) -> List[List[Any]]:
        zero = self.rep.domain.zero
        grid = [[zero] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            grid[i][j] = v
        return grid

    def to_strings(self) -> List[List[str]]:
        return [[format_scalar(v) for v in row] for row in self.to_rows()]

    def nnz(self) -> int:
        return len(self.entries)

    def fill_ratio(self) -> float:
        size = self.rows * self.cols
        return self.nnz() / size if size else 0.0

    def is_zero(self) -> bool:
        return not self.entries

    def __getitem__(self, key: Tuple[int, int]) -> Any:
        return self.entries.get(key, self.rep.domain.zero)

    # -- arithmetic -----------------------------------------------------------

    def _check_mode(self, other: "ExactMatrix", op: str) -> None:
        if self.mode != other.mode:
            raise CoefficientModeError(f"{op} mixes modes {self.mode} and {other.mode}")

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_mode(other, "matmul")
        if self.cols != other.rows:
            raise DimensionMismatch(f"matmul {self.shape} @ {other.shape}")
        if self.nnz() == 0 or other.nnz() == 0:
            return ExactMatrix.zeros(self.rows, other.cols, self.mode)
        return ExactMatrix(self.rep.to_sparse().matmul(other.rep.to_sparse()))

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_mode(other, "add")
        if self.shape != other.shape:
            raise DimensionMismatch(f"add {self.shape} + {other.shape}")
        return ExactMatrix(self.rep.to_sparse() + other.rep.to_sparse())

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_mode(other, "sub")
        if self.shape != other.shape:
            raise DimensionMismatch(f"sub {self.shape} - {other.shape}")
        return ExactMatrix(self.rep.to_sparse() - other.rep.to_sparse())

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(-self.rep)

    def scale(self, coeff: Any) -> "ExactMatrix":
        c = self.rep.domain.convert(coeff)
        return ExactMatrix.from_entries(
            {k: c * v for k, v in self.entries.items()}, self.rows, self.cols, self.mode
        )

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.rep.transpose())

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_mode(other, "kron")
        entries = {
            (i * other.rows + k, j * other.cols + l): a * b
            for (i, j), a in self.entries.items()
            for (k, l), b in other.entries.items()
        }
        return ExactMatrix.from_entries(
            entries, self.rows * other.rows, self.cols * other.cols, self.mode
        )

    def select_rows(self, indices: Sequence[int]) -> "ExactMatrix":
        rows = self.row_vectors
        return ExactMatrix.from_vectors([rows[i] for i in indices], self.cols, self.mode)

    def select_columns(self, indices: Sequence[int]) -> "ExactMatrix":
        return self.transpose().select_rows(indices).transpose()

    def apply(self, vector: Vector) -> Vector:
        """Matrix times a sparse column vector."""
        out: Vector = {}
        cols = self.column_vectors
        for j, v in vector.items():
            vec_axpy(out, v, cols[j])
        return out

    def to_q(self) -> "ExactMatrix":
        if self.mode == "Q":
            return self
        return ExactMatrix(self.rep.convert_to(QQ))

    def to_z(self) -> "ExactMatrix":
        """Convert a rational matrix with integral entries to integer mode."""
        if self.mode == "Z":
            return self
        for key, v in self.entries.items():
            if QQ.convert(v).denominator != 1:
                raise CoefficientModeError(f"Entry {key} = {format_scalar(v)} is not integral")
        return ExactMatrix(self.rep.convert_to(ZZ))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.mode == other.mode and (
            self.entries == other.entries
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols}, {self.mode}, nnz={self.nnz()})"


# ---------------------------------------------------------------------------
# Subspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Subspace:
    """Row space of ``basis``; the basis is in canonical reduced row echelon form."""

    ambient_dim: int
    basis: ExactMatrix
    pivots: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.basis.rows

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ExactMatrix.zeros(0, ambient_dim), ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ExactMatrix.identity(ambient_dim), tuple(range(ambient_dim)))

    @classmethod
    def span(cls, vectors: Sequence[Vector], ambient_dim: int) -> "Subspace":
        if not vectors:
            return cls.zero(ambient_dim)
        return row_space(ExactMatrix.from_vectors(vectors, ambient_dim))

    def rows(self) -> List[Vector]:
        return self.basis.row_vectors

    def reduce(self, vector: Vector) -> Vector:
        """Remainder of ``vector`` after clearing every pivot column."""
        out = {k: QQ.convert(v) for k, v in vector.items() if v}
        for row, p in zip(self.basis.row_vectors, self.pivots):
            c = out.get(p)
            if c:
                vec_axpy(out, -c, row)
        return out

    def contains(self, vector: Vector) -> bool:
        return not self.reduce(vector)

    def witness_outside(self, other: "Subspace") -> Optional[Vector]:
        """First basis row of ``other`` that is not in this subspace, if any."""
        for row in other.rows():
            if not self.contains(row):
                return row
        return None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


@dataclass(frozen=True)
class RrefResult:
    rank: int
    row_space: Subspace
    kernel: Subspace


def _prefer_dense(m: ExactMatrix) -> bool:
    cfg = get_config().linalg
    if max(m.rows, m.cols) < cfg.dense_dim_cutoff:
        return True
    return m.fill_ratio() >= cfg.dense_fill_ratio


def _require_rational(m: ExactMatrix, op: str) -> None:
    if m.mode != "Q":
        raise CoefficientModeError(f"{op} needs rational mode; use snf for integer matrices")


def _echelon(m: ExactMatrix) -> Tuple[List[Vector], Tuple[int, ...]]:
    """Nonzero rows of the reduced row echelon form, with pivots."""
    if m.rows == 0 or m.cols == 0 or m.is_zero():
        return [], ()
    method = "CD_dense" if _prefer_dense(m) else "CD"
    logger.debug(f"rref {m.rows}x{m.cols} nnz={m.nnz()} method={method}")
    reduced, pivots = m.rep.rref(method=method)
    rank = len(pivots)
    dok = reduced.to_dok()
    rows: List[Vector] = [{} for _ in range(rank)]
    for (i, j), v in dok.items():
        if i < rank and v:
            rows[i][j] = v
    return rows, tuple(int(p) for p in pivots)


def _kernel_from_echelon(rows: List[Vector], pivots: Tuple[int, ...], cols: int) -> Subspace:
    pivot_set = set(pivots)
    free = [j for j in range(cols) if j not in pivot_set]
    if not free:
        return Subspace.zero(cols)
    position = {j: k for k, j in enumerate(free)}
    vectors: List[Vector] = [{j: QQ.one} for j in free]
    for row, p in zip(rows, pivots):
        for j, v in row.items():
            if j != p:
                vectors[position[j]][p] = -v
    reduced, reduced_pivots = _echelon(ExactMatrix.from_vectors(vectors, cols))
    return Subspace(cols, ExactMatrix.from_vectors(reduced, cols), reduced_pivots)


def rref(m: ExactMatrix) -> RrefResult:
    """Rank, canonical row space and canonical right kernel of ``m``.

    Raises:
        CoefficientModeError: For integer-mode input
    """
    _require_rational(m, "rref")
    rows, pivots = _echelon(m)
    basis = ExactMatrix.from_vectors(rows, m.cols)
    row_space = Subspace(m.cols, basis, pivots)
    if len(pivots) == m.cols:
        kernel = Subspace.zero(m.cols)
    elif not pivots:
        kernel = Subspace.full(m.cols)
    else:
        kernel = _kernel_from_echelon(rows, pivots, m.cols)
    return RrefResult(len(pivots), row_space, kernel)


def rank(m: ExactMatrix) -> int:
    if m.mode == "Z":
        return sum(1 for f in invariant_factors(m) if f)
    return len(_echelon(m)[1])


def row_space(m: ExactMatrix) -> Subspace:
    _require_rational(m, "row_space")
    rows, pivots = _echelon(m)
    return Subspace(m.cols, ExactMatrix.from_vectors(rows, m.cols), pivots)


def column_space(m: ExactMatrix) -> Subspace:
    """Image of ``m`` as a subspace of its codomain."""
    return row_space(m.transpose())


def kernel(m: ExactMatrix) -> Subspace:
    return rref(m).kernel


def solve_in_basis(basis: ExactMatrix, vectors: ExactMatrix) -> ExactMatrix:
    """Coefficients C with C·basis = vectors, for a basis of independent rows.

    Raises:
        InvariantViolation: If some vector is outside the span of the basis
    """
    _require_rational(basis, "solve_in_basis")
    k, n = basis.shape
    if vectors.cols != n:
        raise DimensionMismatch(f"Vectors of length {vectors.cols} against basis of length {n}")
    r = vectors.rows
    if r == 0:
        return ExactMatrix.zeros(0, k)
    if k == 0:
        if vectors.is_zero():
            return ExactMatrix.zeros(r, 0)
        raise InvariantViolation("Vector outside the zero span", witness=vectors.row_vectors[0])
    augmented = ExactMatrix.hstack([basis.transpose(), vectors.to_q().transpose()])
    rows, pivots = _echelon(augmented)
    if pivots != tuple(range(k)):
        bad = [p - k for p in pivots if p >= k]
        witness = vectors.row_vectors[bad[0]] if bad else None
        raise InvariantViolation("Vector outside the span of the basis", witness=witness)
    entries = {(j - k, i): v for i, row in enumerate(rows) for j, v in row.items() if j >= k}
    return ExactMatrix.from_entries(entries, r, k)


class EchelonAccumulator:
    """Incrementally built semi-echelon row basis over QQ."""

    def __init__(self, ambient_dim: int):
        self.ambient_dim = ambient_dim
        self._rows: Dict[int, Vector] = {}

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, vector: Vector) -> Vector:
        out = {k: QQ.convert(v) for k, v in vector.items() if v}
        while True:
            hits = [k for k in out if k in self._rows]
            if not hits:
                return out
            p = min(hits)
            vec_axpy(out, -out[p], self._rows[p])

    def add(self, vector: Vector) -> bool:
        """Add ``vector`` if it is independent of the rows so far."""
        rest = self.reduce(vector)
        if not rest:
            return False
        p = min(rest)
        lead = rest[p]
        self._rows[p] = {k: v / lead for k, v in rest.items()}
        return True


# ---------------------------------------------------------------------------
# Subspace lattice
# ---------------------------------------------------------------------------

def _check_ambient(a: Subspace, b: Subspace, op: str) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"{op}: ambient dimensions {a.ambient_dim} and {b.ambient_dim}")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b, "subspace_sum")
    if a.dim == 0:
        return b
    if b.dim == 0 or a.dim == a.ambient_dim:
        return a
    return row_space(ExactMatrix.vstack([a.basis, b.basis]))


def subspace_sum_all(spaces: Iterable[Subspace], ambient_dim: int) -> Subspace:
    """Sum of many subspaces in one elimination."""
    blocks = [s.basis for s in spaces if s.dim]
    if not blocks:
        return Subspace.zero(ambient_dim)
    return row_space(ExactMatrix.vstack(blocks))


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """a ∩ b from the left kernel of the stacked bases [a; b]."""
    _check_ambient(a, b, "subspace_intersect")
    n = a.ambient_dim
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(n)
    if a.dim == n:
        return b
    if b.dim == n:
        return a
    stacked = ExactMatrix.vstack([a.basis, b.basis])
    relations = kernel(stacked.transpose())
    if relations.dim == 0:
        return Subspace.zero(n)
    coefficients = relations.basis.select_columns(range(a.dim))
    return row_space(coefficients @ a.basis)


def quotient_dim(big: Subspace, small: Subspace) -> int:
    """dim(big) - dim(small) after checking small ⊆ big.

    Raises:
        ContainmentError: With a witness vector of ``small`` outside ``big``
    """
    _check_ambient(big, small, "quotient_dim")
    witness = big.witness_outside(small)
    if witness is not None:
        rendered = {k: format_scalar(v) for k, v in sorted(witness.items())}
        raise ContainmentError(
            f"Subspace of dim {small.dim} is not contained in subspace of dim {big.dim}",
            witness=rendered,
        )
    return big.dim - small.dim


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SmithForm:
    """U·m·V = diag(invariant_factors) padded with zeros."""

    invariant_factors: Tuple[int, ...]
    left: ExactMatrix
    right: ExactMatrix

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def torsion(self) -> Tuple[int, ...]:
        return tuple(f for f in self.invariant_factors if f > 1)


def _require_integer(m: ExactMatrix, op: str) -> None:
    if m.mode != "Z":
        raise CoefficientModeError(f"{op} needs integer mode")


def divisibility_chain(diagonal: Iterable[int]) -> List[int]:
    """Invariant factors of a diagonal integer matrix (nonzero entries only)."""
    values = [abs(int(d)) for d in diagonal if d]
    units = [d for d in values if d == 1]
    rest = sorted(d for d in values if d != 1)
    for i in range(len(rest)):
        for j in range(i + 1, len(rest)):
            a, b = rest[i], rest[j]
            g = gcd(a, b)
            rest[i], rest[j] = g, a // g * b
    ones = units + [d for d in rest if d == 1]
    return ones + [d for d in rest if d != 1]


def _choose_pivot(
    rows: Dict[int, Dict[int, int]],
    cols: Dict[int, Set[int]],
) -> Optional[Tuple[int, int]]:
    """A unit entry in a shortest row (fewest column hits), else the smallest entry."""
    for r in sorted(rows, key=lambda i: (len(rows[i]), i)):
        units = [c for c, v in rows[r].items() if v in (1, -1)]
        if units:
            c = min(units, key=lambda j: (len(cols[j]), j))
            return r, c
    best: Optional[Tuple[int, int, int]] = None
    for r, row in rows.items():
        for c, v in row.items():
            if best is None or (abs(v), r, c) < best:
                best = (abs(v), r, c)
    return None if best is None else (best[1], best[2])


def _row_combine(
    rows: Dict[int, Dict[int, int]],
    cols: Dict[int, Set[int]],
    target: int,
    coeff: int,
    source: int,
) -> None:
    """row[target] -= coeff * row[source]."""
    trow = rows[target]
    for c, v in rows[source].items():
        value = trow.get(c, 0) - coeff * v
        if value:
            if c not in trow:
                cols[c].add(target)
            trow[c] = value
        elif c in trow:
            del trow[c]
            cols[c].discard(target)
    if not trow:
        del rows[target]


def _col_combine(
    rows: Dict[int, Dict[int, int]],
    cols: Dict[int, Set[int]],
    target: int,
    coeff: int,
    source: int,
) -> None:
    """col[target] -= coeff * col[source]."""
    for r in list(cols[source]):
        row = rows[r]
        value = row.get(target, 0) - coeff * row[source]
        if value:
            if target not in row:
                cols.setdefault(target, set()).add(r)
            row[target] = value
        elif target in row:
            del row[target]
            cols[target].discard(r)


def invariant_factors(m: ExactMatrix) -> List[int]:
    """Nonzero invariant factors of an integer matrix, by sparse elimination.

    Pivots are chosen smallest-first (units preferred, short rows preferred);
    the resulting diagonal is normalized to a divisibility chain afterwards.
    """
    _require_integer(m, "invariant_factors")
    rows: Dict[int, Dict[int, int]] = {}
    cols: Dict[int, Set[int]] = {}
    for (i, j), v in m.entries.items():
        rows.setdefault(i, {})[j] = int(v)
        cols.setdefault(j, set()).add(i)
    diagonal: List[int] = []
    while rows:
        choice = _choose_pivot(rows, cols)
        if choice is None:
            break
        r, c = choice
        p = rows[r][c]
        for r2 in sorted(cols[c] - {r}):
            q = rows[r2][c] // p
            _row_combine(rows, cols, r2, q, r)
        if abs(p) != 1:
            for c2 in sorted(set(rows[r]) - {c}):
                q = rows[r][c2] // p
                _col_combine(rows, cols, c2, q, c)
            leftovers = len(cols[c]) > 1 or len(rows[r]) > 1
            if leftovers:
                continue
        diagonal.append(p)
        for c2 in rows[r]:
            cols[c2].discard(r)
        del rows[r]
        for r2 in list(cols.get(c, ())):
            rows[r2].pop(c, None)
            if not rows[r2]:
                del rows[r2]
        cols.pop(c, None)
    return divisibility_chain(diagonal)


def snf(m: ExactMatrix) -> SmithForm:
    """Smith normal form with unimodular transforms, U·m·V = D.

    Dense elimination: the smallest nonzero entry of the trailing block is moved to
    the corner, its row and column are cleared by Euclidean steps, and a row is
    folded in whenever some trailing entry is not divisible by the corner.
    """
    _require_integer(m, "snf")
    nr, nc = m.shape
    a = [[int(v) for v in row] for row in m.to_rows()]
    left = [[int(i == j) for j in range(nr)] for i in range(nr)]
    right = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(target: int, coeff: int, source: int) -> None:
        a[target] = [x + coeff * y for x, y in zip(a[target], a[source])]
        left[target] = [x + coeff * y for x, y in zip(left[target], left[source])]

    def add_col(target: int, coeff: int, source: int) -> None:
        for row in a:
            row[target] += coeff * row[source]
        for row in right:
            row[target] += coeff * row[source]

    factors: List[int] = []
    for s in range(min(nr, nc)):
        nonzero = [(abs(a[i][j]), i, j) for i in range(s, nr) for j in range(s, nc) if a[i][j]]
        if not nonzero:
            break
        _, i0, j0 = min(nonzero)
        swap_rows(s, i0)
        swap_cols(s, j0)
        while True:
            for i in range(s + 1, nr):
                if a[i][s]:
                    add_row(i, -(a[i][s] // a[s][s]), s)
            for j in range(s + 1, nc):
                if a[s][j]:
                    add_col(j, -(a[s][j] // a[s][s]), s)
            edge = [(abs(a[i][s]), i, s) for i in range(s + 1, nr) if a[i][s]]
            edge += [(abs(a[s][j]), s, j) for j in range(s + 1, nc) if a[s][j]]
            if edge:
                _, i1, j1 = min(edge)
                if i1 != s:
                    swap_rows(s, i1)
                else:
                    swap_cols(s, j1)
                continue
            bad = next(
                (i for i in range(s + 1, nr) for j in range(s + 1, nc) if a[i][j] % a[s][s]),
                None,
            )
            if bad is None:
                break
            add_row(s, 1, bad)
        if a[s][s] < 0:
            a[s] = [-x for x in a[s]]
            left[s] = [-x for x in left[s]]
        factors.append(a[s][s])

    result = SmithForm(
        tuple(factors),
        ExactMatrix.from_rows(left, "Z", cols=nr),
        ExactMatrix.from_rows(right, "Z", cols=nc),
    )
    if get_config().linalg.check_invariants:
        verify_snf(m, result)
    return result


def verify_snf(m: ExactMatrix, form: SmithForm) -> None:
    """Assert U·m·V = D and the divisibility chain.

    Raises:
        InvariantViolation: If either identity fails
    """
    product = form.left @ m @ form.right
    expected = {(i, i): ZZ(f) for i, f in enumerate(form.invariant_factors)}
    if product.entries != expected:
        raise InvariantViolation("U·m·V is not the Smith diagonal", location="snf")
    for f, g in zip(form.invariant_factors, form.invariant_factors[1:]):
        if g % f:
            raise InvariantViolation(f"Invariant factor {f} does not divide {g}", location="snf")
