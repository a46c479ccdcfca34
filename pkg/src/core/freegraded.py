"""Weight-graded free algebras, ideal powers, commutators and Hopf-type formulas.

Every computation happens inside one weight component of the free algebra
F = T(V) (or T̄(V) without unit). A component is spanned by the generator
words of that total weight, ordered by length and then lexicographically by
generator index.
"""

import logging
import threading
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Sequence, Tuple

from sympy import divisors, totient

from ..models.config import get_config
from .algebras import StructAlgebra, unitalize
from .errors import (
    AxiomViolation,
    CapExceeded,
    DimensionMismatch,
    InvariantViolation,
    TruncationOverflow,
    ValidationFailure,
)
from .exactla import (
    ExactMatrix,
    Subspace,
    Vector,
    kernel,
    quotient_dim,
    rank,
    subspace_intersect,
    subspace_sum,
    subspace_sum_all,
)

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]


@dataclass(frozen=True, eq=False)
class GradedFreeAlgebra:
    """T(V) or T̄(V) on weighted generators, truncated at ``max_weight``."""

    generators: Tuple[str, ...]
    weights: Tuple[int, ...]
    max_weight: int
    unital: bool = False

    def __post_init__(self) -> None:
        cfg = get_config().graded
        if not self.generators:
            raise ValidationFailure("A free algebra needs at least one generator")
        if len(self.generators) > cfg.max_generators:
            raise CapExceeded(f"{len(self.generators)} generators exceed {cfg.max_generators}")
        if self.max_weight > cfg.max_weight:
            raise CapExceeded(f"Weight {self.max_weight} exceeds {cfg.max_weight}")
        if len(self.weights) != len(self.generators):
            raise DimensionMismatch("One weight per generator is required")
        if any(w < 1 for w in self.weights):
            raise ValidationFailure("Generator weights must be positive")
        if len(set(self.generators)) != len(self.generators):
            raise ValidationFailure("Duplicate generator names")

    @classmethod
    def uniform(cls, m: int, max_weight: int, unital: bool = False) -> "GradedFreeAlgebra":
        """m generators x, y, z (then g3, g4, ...) of weight 1."""
        names = ["x", "y", "z"][:m] if m <= 3 else [f"g{i}" for i in range(m)]
        return cls(tuple(names), tuple([1] * m), max_weight, unital)

    @property
    def rank(self) -> int:
        return len(self.generators)

    @cached_property
    def _components(self) -> List[List[Word]]:
        words: List[List[Word]] = [[()]] + [[] for _ in range(self.max_weight)]
        for w in range(1, self.max_weight + 1):
            for g, wg in enumerate(self.weights):
                if wg <= w:
                    words[w].extend((g,) + rest for rest in words[w - wg])
        for w in range(self.max_weight + 1):
            words[w].sort(key=lambda word: (len(word), word))
        if not self.unital:
            words[0] = []
        return words

    @cached_property
    def _indexes(self) -> List[Dict[Word, int]]:
        return [{word: i for i, word in enumerate(ws)} for ws in self._components]

    def _check_weight(self, w: int) -> None:
        if w < 0:
            raise ValidationFailure(f"Negative weight {w}")
        if w > self.max_weight:
            raise TruncationOverflow(f"Weight {w} is above the truncation {self.max_weight}")

    def component(self, w: int) -> List[Word]:
        self._check_weight(w)
        return self._components[w]

    def index(self, w: int) -> Dict[Word, int]:
        self._check_weight(w)
        return self._indexes[w]

    def dim(self, w: int) -> int:
        return len(self.component(w))

    def word_weight(self, word: Word) -> int:
        return sum(self.weights[g] for g in word)

    def label(self, word: Word) -> str:
        return "".join(self.generators[g] for g in word) if word else "1"

    def full(self, w: int) -> "WeightSubspace":
        return WeightSubspace(w, Subspace.full(self.dim(w)))

    def zero(self, w: int) -> "WeightSubspace":
        return WeightSubspace(w, Subspace.zero(self.dim(w)))

    def span_words(self, w: int, vectors: Sequence[Dict[Word, object]]) -> "WeightSubspace":
        """Subspace spanned by linear combinations of words of weight w."""
        index = self.index(w)
        rows: List[Vector] = []
        for vec in vectors:
            row: Vector = {}
            for word, c in vec.items():
                if word not in index:
                    raise DimensionMismatch(f"Word {self.label(word)} is not of weight {w}")
                row[index[word]] = c
            rows.append({k: v for k, v in row.items() if v})
        return WeightSubspace(w, Subspace.span([r for r in rows if r], self.dim(w)))


@dataclass(frozen=True, eq=False)
class WeightSubspace:
    weight: int
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim


# ---------------------------------------------------------------------------
# Products and commutators
# ---------------------------------------------------------------------------

def _product_vectors(
    f: GradedFreeAlgebra, a: WeightSubspace, b: WeightSubspace, commutator: bool
) -> List[Vector]:
    wa, wb = a.weight, b.weight
    w = wa + wb
    f._check_weight(w)
    words_a, words_b = f.component(wa), f.component(wb)
    index = f.index(w)
    out: List[Vector] = []
    for x in a.space.rows():
        for y in b.space.rows():
            vec: Vector = {}
            for i, cx in x.items():
                for j, cy in y.items():
                    c = cx * cy
                    k = index[words_a[i] + words_b[j]]
                    vec[k] = vec.get(k, 0) + c
                    if commutator:
                        k = index[words_b[j] + words_a[i]]
                        vec[k] = vec.get(k, 0) - c
            vec = {k: v for k, v in vec.items() if v}
            if vec:
                out.append(vec)
    return out


def component_product(f: GradedFreeAlgebra, a: WeightSubspace, b: WeightSubspace) -> WeightSubspace:
    """span{xy : x ∈ a, y ∈ b} in weight wa + wb.

    Raises:
        TruncationOverflow: If wa + wb exceeds the truncation weight
    """
    w = a.weight + b.weight
    f._check_weight(w)
    if a.dim == 0 or b.dim == 0:
        return f.zero(w)
    return WeightSubspace(w, Subspace.span(_product_vectors(f, a, b, False), f.dim(w)))


def commutator_component(
    f: GradedFreeAlgebra, a: WeightSubspace, b: WeightSubspace
) -> WeightSubspace:
    """span{xy - yx : x ∈ a, y ∈ b} in weight wa + wb."""
    w = a.weight + b.weight
    f._check_weight(w)
    if a.dim == 0 or b.dim == 0:
        return f.zero(w)
    return WeightSubspace(w, Subspace.span(_product_vectors(f, a, b, True), f.dim(w)))


def full_commutator_component(f: GradedFreeAlgebra, w: int) -> WeightSubspace:
    """[F,F]_w as the sum of [F_u, F_{w-u}] over 0 < u <= w/2."""
    f._check_weight(w)
    rows: List[Vector] = []
    for u in range(1, w // 2 + 1):
        if f.dim(u) and f.dim(w - u):
            rows.extend(_product_vectors(f, f.full(u), f.full(w - u), True))
    return WeightSubspace(w, Subspace.span(rows, f.dim(w)))


def necklace_count(m: int, w: int) -> int:
    """Number of rotation classes of words of length w over m letters."""
    if m < 1 or w < 1:
        raise ValidationFailure(f"necklace_count needs m >= 1 and w >= 1, got {m}, {w}")
    total = sum(int(totient(d)) * m ** (w // d) for d in divisors(w))
    return total // w


# ---------------------------------------------------------------------------
# Presentations
# ---------------------------------------------------------------------------

class GradedPresentation:
    """A weight-preserving surjection F ↠ A given by generator images.

    ``images[g]`` is a vector over the basis of A, homogeneous of the
    generator's weight. Ideal powers are memoized behind a lock.
    """

    def __init__(
        self,
        free: GradedFreeAlgebra,
        target: StructAlgebra,
        images: Sequence[Vector],
        name: str = "F->A",
    ):
        self.free = free
        self.target = target
        self.images: Tuple[Vector, ...] = tuple(dict(v) for v in images)
        self.name = name
        self._eval_cache: Dict[Word, Vector] = {}
        self._powers: Dict[Tuple[int, int], WeightSubspace] = {}
        self._lock = threading.Lock()
        self._validate()

    def _validate(self) -> None:
        f, a = self.free, self.target
        if a.weights is None:
            raise ValidationFailure("Presentation target must be weight-graded")
        if f.unital != a.unital:
            raise ValidationFailure("Free algebra and target disagree on having a unit")
        if len(self.images) != f.rank:
            raise DimensionMismatch(f"{len(self.images)} images for {f.rank} generators")
        for g, img in enumerate(self.images):
            for k in img:
                if not (0 <= k < a.dim):
                    raise DimensionMismatch(f"Image of {f.generators[g]} has index {k}")
                if a.weight(k) != f.weights[g]:
                    raise AxiomViolation(
                        "Generator image is not homogeneous of the generator's weight",
                        location=f.generators[g],
                    )
        for w in range(0 if f.unital else 1, f.max_weight + 1):
            target_dim = len(a.indices_of_weight(w))
            if target_dim and rank(self.evaluation_matrix(w)) != target_dim:
                raise AxiomViolation("Presentation is not surjective", location=f"weight {w}")

    def evaluate(self, word: Word) -> Vector:
        """Image of a word in A."""
        cached = self._eval_cache.get(word)
        if cached is not None:
            return cached
        if not word:
            value = dict(self.target.unit or {})
        elif len(word) == 1:
            value = self.images[word[0]]
        else:
            value = self.target.mul(self.evaluate(word[:-1]), self.images[word[-1]])
        self._eval_cache[word] = value
        return value

    def evaluation_matrix(self, w: int) -> ExactMatrix:
        """F_w -> A_w with A_w in the order of ``target.indices_of_weight(w)``."""
        rows = {k: r for r, k in enumerate(self.target.indices_of_weight(w))}
        words = self.free.component(w)
        entries = {
            (rows[k], j): v
            for j, word in enumerate(words)
            for k, v in self.evaluate(word).items()
        }
        return ExactMatrix.from_entries(entries, len(rows), len(words))

    def kernel_component(self, w: int) -> WeightSubspace:
        return kernel_component(self, w)

    def ideal_power_component(self, n: int, w: int) -> WeightSubspace:
        return ideal_power_component(self, n, w)


def kernel_component(p: GradedPresentation, w: int) -> WeightSubspace:
    """R_w = ker(F_w -> A_w)."""
    f = p.free
    f._check_weight(w)
    if not p.target.indices_of_weight(w):
        return f.full(w)
    return WeightSubspace(w, kernel(p.evaluation_matrix(w)))


def ideal_power_component(p: GradedPresentation, n: int, w: int) -> WeightSubspace:
    """(R^n)_w = Σ_u R_u · (R^{n-1})_{w-u}, with R^0 = F."""
    if n < 0:
        raise ValidationFailure(f"Ideal power must be non-negative, got {n}")
    f = p.free
    f._check_weight(w)
    if n == 0:
        return f.full(w)
    key = (n, w)
    with p._lock:
        cached = p._powers.get(key)
    if cached is not None:
        logger.debug(f"R^{n} weight {w} from cache")
        return cached
    if n == 1:
        result = kernel_component(p, w)
    else:
        parts = []
        for u in range(1, w):
            r = ideal_power_component(p, 1, u)
            if r.dim == 0:
                continue
            rest = ideal_power_component(p, n - 1, w - u)
            if rest.dim:
                parts.append(component_product(f, r, rest).space)
        result = WeightSubspace(w, subspace_sum_all(parts, f.dim(w)))
    with p._lock:
        p._powers.setdefault(key, result)
    return result


def bracket_ideal_power(p: GradedPresentation, n: int, w: int) -> WeightSubspace:
    """[R, R^n]_w = Σ_u [R_u, (R^n)_{w-u}]."""
    f = p.free
    parts = []
    for u in range(1, w + 1):
        r = ideal_power_component(p, 1, u)
        if r.dim == 0:
            continue
        rest = ideal_power_component(p, n, w - u)
        if rest.dim:
            parts.append(commutator_component(f, r, rest).space)
    return WeightSubspace(w, subspace_sum_all(parts, f.dim(w)))


# ---------------------------------------------------------------------------
# Hopf-type formulas
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HopfWeight:
    weight: int
    numerator: int
    denominator: int

    @property
    def dim(self) -> int:
        return self.numerator - self.denominator


def _hopf_weight(p: GradedPresentation, n: int, w: int, numerator: Subspace) -> HopfWeight:
    denominator = bracket_ideal_power(p, n, w)
    try:
        quotient_dim(numerator, denominator.space)
    except InvariantViolation as e:
        e.location = f"weight {w}, n={n}"
        raise
    return HopfWeight(w, numerator.dim, denominator.dim)


def hopf_hc_odd(p: GradedPresentation, n: int, w_max: int) -> List[HopfWeight]:
    """dim (R^{n+1} ∩ [F,F]) / [R, R^n] per weight 1..w_max.

    Raises:
        ContainmentError: If [R, R^n] is not inside R^{n+1} ∩ [F,F]
    """
    if p.free.unital:
        raise ValidationFailure(
            "hopf_hc_odd needs a presentation by T̄(V); use hopf_hc_odd_unital"
        )
    if n < 0:
        raise ValidationFailure(f"n must be non-negative, got {n}")
    p.free._check_weight(w_max)
    rows = []
    for w in range(1, w_max + 1):
        power = ideal_power_component(p, n + 1, w).space
        numerator = subspace_intersect(power, full_commutator_component(p.free, w).space)
        rows.append(_hopf_weight(p, n, w, numerator))
    return rows


def hopf_hc_odd_unital(p: GradedPresentation, n: int, w_max: int) -> List[HopfWeight]:
    """Unital variant with numerator R^{n+1} ∩ ([F,F] + k·1), weights 0..w_max.

    For w >= 1 the unit line contributes nothing and the numerator is checked
    to equal R^{n+1} ∩ [F,F].
    """
    f = p.free
    if not f.unital:
        raise ValidationFailure("hopf_hc_odd_unital needs a presentation by T(V)")
    f._check_weight(w_max)
    rows = []
    for w in range(0, w_max + 1):
        power = ideal_power_component(p, n + 1, w).space
        commutators = full_commutator_component(f, w).space
        unit_line = Subspace.full(1) if w == 0 else Subspace.zero(f.dim(w))
        numerator = subspace_intersect(power, subspace_sum(commutators, unit_line))
        if w >= 1 and numerator != subspace_intersect(power, commutators):
            raise InvariantViolation("Unit line changed a positive-weight numerator",
                                     location=f"weight {w}")
        rows.append(_hopf_weight(p, n, w, numerator))
    return rows


@dataclass(frozen=True)
class NecklaceSplitRow:
    weight: int
    total: int
    necklaces: int
    commutators: int

    @property
    def holds(self) -> bool:
        return self.total == self.necklaces + self.commutators


def lemma56_dimension_check(m: int, w_max: int) -> List[NecklaceSplitRow]:
    """m^w = necklace_count(m, w) + dim [F,F]_w per weight 1..w_max."""
    f = GradedFreeAlgebra.uniform(m, w_max)
    rows = []
    for w in range(1, w_max + 1):
        row = NecklaceSplitRow(w, m ** w, necklace_count(m, w), full_commutator_component(f, w).dim)
        logger.debug(f"necklace split m={m} w={w}: {row}")
        rows.append(row)
    return rows


def magnus_quotient_dims(p: GradedPresentation, w_max: int) -> Dict[int, int]:
    """dim (R/R²)_w per weight 1..w_max."""
    out = {}
    for w in range(1, w_max + 1):
        r = ideal_power_component(p, 1, w)
        r2 = ideal_power_component(p, 2, w)
        out[w] = quotient_dim(r.space, r2.space)
    return out


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

def truncated_algebra(f: GradedFreeAlgebra) -> StructAlgebra:
    """T(V)_{≤W} (or T̄(V)_{≤W}) as a graded algebra; products above W vanish."""
    words: List[Word] = []
    weights: List[int] = []
    for w in range(0 if f.unital else 1, f.max_weight + 1):
        for word in f.component(w):
            words.append(word)
            weights.append(w)
    position = {word: i for i, word in enumerate(words)}
    table: Dict[Tuple[int, int], Vector] = {}
    for i, x in enumerate(words):
        for j, y in enumerate(words):
            k = position.get(x + y)
            if k is not None:
                table[(i, j)] = {k: 1}
    unit = {position[()]: 1} if f.unital else None
    name = ("T" if f.unital else "T̄") + f"({','.join(f.generators)})<={f.max_weight}"
    return StructAlgebra(len(words), table, unit, tuple(weights), name, trusted=True)


def identity_presentation(f: GradedFreeAlgebra) -> GradedPresentation:
    """F ↠ F_{≤W} sending each generator to itself."""
    target = truncated_algebra(f)
    offset = 1 if f.unital else 0
    images = []
    for g, wg in enumerate(f.weights):
        start = offset + sum(f.dim(w) for w in range(1, wg))
        images.append({start + f.index(wg)[(g,)]: 1})
    return GradedPresentation(f, target, images, name=f"id {target.name}")


def zero_mult_presentation(dim: int, w_max: int) -> GradedPresentation:
    """T̄(Q^dim) ↠ the dim-dimensional algebra with zero multiplication."""
    f = GradedFreeAlgebra.uniform(dim, w_max)
    target = StructAlgebra.zero_multiplication(dim)
    return GradedPresentation(f, target, [{g: 1} for g in range(dim)], name=f"V{dim}")


def monogenic_presentation(power: int, w_max: int) -> GradedPresentation:
    """T̄(Qt) ↠ tQ[t]/(t^power)."""
    f = GradedFreeAlgebra(("t",), (1,), w_max)
    target = StructAlgebra.truncated_polynomial(power)
    return GradedPresentation(f, target, [{0: 1}], name=f"t^{power}")


def redundant_presentation(power: int, w_max: int) -> GradedPresentation:
    """T̄(Qt ⊕ Qs) with s of weight 2 ↠ tQ[t]/(t^power), s -> t²."""
    f = GradedFreeAlgebra(("t", "s"), (1, 2), w_max)
    target = StructAlgebra.truncated_polynomial(power)
    return GradedPresentation(f, target, [{0: 1}, {1: 1}], name=f"t,s^{power}")


def zero_mult_redundant_presentation(w_max: int) -> GradedPresentation:
    """T̄(Qx ⊕ Qy ⊕ Qz) ↠ 2-dim zero multiplication, z -> 0."""
    f = GradedFreeAlgebra(("x", "y", "z"), (1, 1, 1), w_max)
    target = StructAlgebra.zero_multiplication(2)
    return GradedPresentation(f, target, [{0: 1}, {1: 1}, {}], name="V2 (x,y,z)")


def unital_presentation(p: GradedPresentation) -> GradedPresentation:
    """T(V) ↠ A_+ from T̄(V) ↠ A, with the unit adjoined at index 0."""
    f = p.free
    unital_free = GradedFreeAlgebra(f.generators, f.weights, f.max_weight, unital=True)
    target = unitalize(p.target)
    images = [{k + 1: v for k, v in img.items()} for img in p.images]
    return GradedPresentation(unital_free, target, images, name=f"{p.name}+")
