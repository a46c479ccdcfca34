"""Finite rings, elementary matrices and the Steinberg relations they satisfy.

St(A) itself is never built. The relation families are checked as matrix
identities inside E_N(A) for a fixed size N >= 3, which is enough since each
family involves at most three distinct indices.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from ..models.config import get_config
from .errors import AxiomViolation, CapExceeded, ValidationFailure

logger = logging.getLogger(__name__)

Table = Tuple[Tuple[int, ...], ...]
RingMatrix = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True, eq=False)
class FiniteRing:
    """Ring on elements 0..n-1 given by addition and multiplication tables.

    ``components`` is set for fiber products and lists the pair each element
    stands for.
    """

    add_table: Table
    mul_table: Table
    zero: int
    one: int
    name: str = "R"
    components: Optional[Tuple[Tuple[int, int], ...]] = None

    def __post_init__(self) -> None:
        n = len(self.add_table)
        if n == 0:
            raise AxiomViolation("A ring needs at least one element")
        budget = get_config().ring.exhaustive_budget
        if n ** 3 > budget:
            raise CapExceeded(f"Ring of size {n} is too large for exhaustive axiom checks")
        for name, table in (("addition", self.add_table), ("multiplication", self.mul_table)):
            if len(table) != n or any(len(row) != n for row in table):
                raise AxiomViolation(f"The {name} table is not {n}x{n}", location=self.name)
            if any(not (0 <= x < n) for row in table for x in row):
                raise AxiomViolation(f"The {name} table leaves the carrier", location=self.name)
        self._check_axioms()

    def _check_axioms(self) -> None:
        n, add, mul = self.size, self.add_table, self.mul_table
        z, u = self.zero, self.one
        for x in range(n):
            if add[z][x] != x or add[x][z] != x:
                raise AxiomViolation("Zero is not neutral", location=f"{self.name}: {x}")
            if z not in add[x]:
                raise AxiomViolation("Element has no negative", location=f"{self.name}: {x}")
            if mul[u][x] != x or mul[x][u] != x:
                raise AxiomViolation("One is not a unit", location=f"{self.name}: {x}")
            for y in range(n):
                if add[x][y] != add[y][x]:
                    raise AxiomViolation(
                        "Addition is not commutative", location=f"{self.name}: ({x}, {y})"
                    )
        for x, y, w in product(range(n), repeat=3):
            loc = f"{self.name}: ({x}, {y}, {w})"
            if add[add[x][y]][w] != add[x][add[y][w]]:
                raise AxiomViolation("Addition is not associative", location=loc)
            if mul[mul[x][y]][w] != mul[x][mul[y][w]]:
                raise AxiomViolation("Multiplication is not associative", location=loc)
            if mul[x][add[y][w]] != add[mul[x][y]][mul[x][w]]:
                raise AxiomViolation("Left distributivity fails", location=loc)
            if mul[add[x][y]][w] != add[mul[x][w]][mul[y][w]]:
                raise AxiomViolation("Right distributivity fails", location=loc)

    @property
    def size(self) -> int:
        return len(self.add_table)

    def add(self, x: int, y: int) -> int:
        return self.add_table[x][y]

    def mul(self, x: int, y: int) -> int:
        return self.mul_table[x][y]

    @cached_property
    def negatives(self) -> Tuple[int, ...]:
        return tuple(row.index(self.zero) for row in self.add_table)

    def neg(self, x: int) -> int:
        return self.negatives[x]

    def label(self, x: int) -> str:
        if self.components is not None:
            a, b = self.components[x]
            return f"({a},{b})"
        return str(x)

    @classmethod
    def zmod(cls, m: int) -> "FiniteRing":
        """Z/m with element k standing for the residue of k."""
        if m < 1:
            raise ValidationFailure(f"Modulus must be positive, got {m}")
        add = tuple(tuple((x + y) % m for y in range(m)) for x in range(m))
        mul = tuple(tuple((x * y) % m for y in range(m)) for x in range(m))
        return cls(add, mul, 0, 1 % m, f"Z/{m}")

    @classmethod
    def from_tables(
        cls, add: Sequence[Sequence[int]], mul: Sequence[Sequence[int]], name: str = "R"
    ) -> "FiniteRing":
        """Ring from explicit tables; zero and one are located, not assumed."""
        add_t = tuple(tuple(int(x) for x in row) for row in add)
        mul_t = tuple(tuple(int(x) for x in row) for row in mul)
        n = len(add_t)
        if len(mul_t) != n or any(len(row) != n for row in add_t + mul_t):
            raise AxiomViolation("Ring tables must both be square of the same size", location=name)
        zero = next((z for z in range(n) if all(add_t[z][x] == x for x in range(n))), None)
        one = next(
            (u for u in range(n) if all(mul_t[u][x] == x and mul_t[x][u] == x for x in range(n))),
            None,
        )
        if zero is None:
            raise AxiomViolation("Addition table has no zero", location=name)
        if one is None:
            raise AxiomViolation("Multiplication table has no unit", location=name)
        return cls(add_t, mul_t, zero, one, name)


def check_ring_hom(source: FiniteRing, target: FiniteRing, images: Sequence[int]) -> None:
    """Raise unless ``images`` defines a unital ring homomorphism."""
    if len(images) != source.size:
        raise ValidationFailure(
            f"Homomorphism needs {source.size} images, got {len(images)}",
            location=f"{source.name} -> {target.name}",
        )
    if any(not (0 <= y < target.size) for y in images):
        raise ValidationFailure("Image outside the target ring", location=f"-> {target.name}")
    if images[source.one] != target.one:
        raise AxiomViolation("Homomorphism does not preserve one", location=source.name)
    for x in range(source.size):
        for y in range(source.size):
            loc = f"{source.name} -> {target.name} at ({x}, {y})"
            if images[source.add(x, y)] != target.add(images[x], images[y]):
                raise AxiomViolation("Map is not additive", location=loc)
            if images[source.mul(x, y)] != target.mul(images[x], images[y]):
                raise AxiomViolation("Map is not multiplicative", location=loc)


def zmod_projection(m: int, k: int) -> List[int]:
    """Reduction Z/m -> Z/k; a homomorphism only when k divides m."""
    return [x % k for x in range(m)]


# ---------------------------------------------------------------------------
# Elementary matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ElementaryMatrixGroupContext:
    ring: FiniteRing
    size: int = 3

    def __post_init__(self) -> None:
        if self.size < 3:
            raise ValidationFailure(
                f"Steinberg relations need three indices, got N = {self.size}"
            )

    @cached_property
    def identity(self) -> RingMatrix:
        r = self.ring
        return tuple(
            tuple(r.one if i == j else r.zero for j in range(self.size)) for i in range(self.size)
        )

    def mul(self, x: RingMatrix, y: RingMatrix) -> RingMatrix:
        r, n = self.ring, self.size
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = r.zero
                for k in range(n):
                    acc = r.add(acc, r.mul(x[i][k], y[k][j]))
                row.append(acc)
            rows.append(tuple(row))
        return tuple(rows)


def e_matrix(ctx: ElementaryMatrixGroupContext, i: int, j: int, x: int) -> RingMatrix:
    """Identity plus ``x`` at (i, j); indices are 1-based."""
    n = ctx.size
    if i == j:
        raise ValidationFailure(f"Elementary matrix needs i != j, got i = j = {i}")
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValidationFailure(f"Index ({i}, {j}) outside 1..{n}")
    if not (0 <= x < ctx.ring.size):
        raise ValidationFailure(f"{x} is not an element of {ctx.ring.name}")
    rows = [list(row) for row in ctx.identity]
    rows[i - 1][j - 1] = x
    return tuple(tuple(row) for row in rows)


def commutator(
    ctx: ElementaryMatrixGroupContext,
    a: RingMatrix,
    a_inv: RingMatrix,
    b: RingMatrix,
    b_inv: RingMatrix,
) -> RingMatrix:
    """[a, b] = a·b·a⁻¹·b⁻¹."""
    return ctx.mul(ctx.mul(ctx.mul(a, b), a_inv), b_inv)


@dataclass(frozen=True)
class RelationViolation:
    family: str
    indices: Tuple[int, ...]
    x: int
    y: int
    detail: str


@dataclass
class SteinbergVerdict:
    ring: str
    size: int
    counts: Dict[str, int] = field(default_factory=dict)
    violations: List[RelationViolation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def _index_tuples(n: int) -> Dict[str, List[Tuple[int, ...]]]:
    idx = range(1, n + 1)
    pairs = [(i, j) for i in idx for j in idx if i != j]
    return {
        "additivity": list(pairs),
        "commutator": [(i, j, k) for (i, j) in pairs for k in idx if k != j and k != i],
        "commuting": [
            (i, j, i2, j2) for (i, j) in pairs for (i2, j2) in pairs if i != j2 and j != i2
        ],
    }


def steinberg_relations_check(ctx: ElementaryMatrixGroupContext) -> SteinbergVerdict:
    """Check the three relation families for all ring elements x, y.

    - e_ij(x)·e_ij(y) = e_ij(x+y)
    - [e_ij(x), e_jk(y)] = e_ik(xy) for i != k
    - [e_ij(x), e_i'j'(y)] = 1 for i != j' and j != i'
    """
    r = ctx.ring
    tuples = _index_tuples(ctx.size)
    total = r.size ** 2 * sum(len(t) for t in tuples.values())
    budget = get_config().ring.exhaustive_budget
    if total > budget:
        raise CapExceeded(f"{total} relation instances exceed the budget of {budget}")

    cache: Dict[Tuple[int, int, int], RingMatrix] = {}

    def e(i: int, j: int, x: int) -> RingMatrix:
        key = (i, j, x)
        if key not in cache:
            cache[key] = e_matrix(ctx, i, j, x)
        return cache[key]

    verdict = SteinbergVerdict(r.name, ctx.size)
    elements = range(r.size)
    for family, idx in tuples.items():
        verdict.counts[family] = len(idx) * r.size ** 2
        for t in idx:
            for x, y in product(elements, repeat=2):
                if family == "additivity":
                    i, j = t
                    lhs = ctx.mul(e(i, j, x), e(i, j, y))
                    rhs = e(i, j, r.add(x, y))
                elif family == "commutator":
                    i, j, k = t
                    lhs = commutator(
                        ctx, e(i, j, x), e(i, j, r.neg(x)), e(j, k, y), e(j, k, r.neg(y))
                    )
                    rhs = e(i, k, r.mul(x, y))
                else:
                    i, j, i2, j2 = t
                    lhs = commutator(
                        ctx, e(i, j, x), e(i, j, r.neg(x)), e(i2, j2, y), e(i2, j2, r.neg(y))
                    )
                    rhs = ctx.identity
                if lhs != rhs:
                    verdict.violations.append(
                        RelationViolation(family, t, x, y, f"got {lhs}, expected {rhs}")
                    )
    logger.info(
        f"Steinberg relations over {r.name}, N = {ctx.size}: "
        f"{sum(verdict.counts.values())} instances, {len(verdict.violations)} violations"
    )
    return verdict


# ---------------------------------------------------------------------------
# Fiber products and Γ generators
# ---------------------------------------------------------------------------

def fiber_product(b: FiniteRing, a: FiniteRing, f: Sequence[int]) -> FiniteRing:
    """D = B ×_A B = {(x, y) : f(x) = f(y)} with componentwise operations."""
    check_ring_hom(b, a, f)
    if set(f) != set(range(a.size)):
        raise ValidationFailure(
            f"{b.name} -> {a.name} is not surjective", location=f"{b.name} -> {a.name}"
        )
    pairs = tuple((x, y) for x in range(b.size) for y in range(b.size) if f[x] == f[y])
    index = {pr: k for k, pr in enumerate(pairs)}

    def table(op: str) -> Table:
        fn = b.add if op == "add" else b.mul
        return tuple(
            tuple(index[(fn(x1, x2), fn(y1, y2))] for (x2, y2) in pairs) for (x1, y1) in pairs
        )

    d = FiniteRing(
        table("add"),
        table("mul"),
        index[(b.zero, b.zero)],
        index[(b.one, b.one)],
        f"{b.name}x_{a.name}{b.name}",
        pairs,
    )
    logger.debug(f"Fiber product {d.name} has {d.size} elements")
    return d


def projections(d: FiniteRing) -> Tuple[List[int], List[int]]:
    if d.components is None:
        raise ValidationFailure(f"{d.name} is not a fiber product")
    return [x for x, _ in d.components], [y for _, y in d.components]


@dataclass
class GammaVerdict:
    ring: str
    size: int
    kernel: Tuple[int, ...]
    pairs: int = 0
    trivial: int = 0
    violations: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations and self.trivial == self.pairs


def gamma_generators_trivial(
    b: FiniteRing, a: FiniteRing, f: Sequence[int], size: int = 3
) -> GammaVerdict:
    """[e_12((x,0)), e_21((0,y))] over D = B ×_A B for all x, y in ker f.

    Each commutator must be the identity in E_N(D), and its images under both
    projections D -> B must be the identity in E_N(B).
    """
    d = fiber_product(b, a, f)
    p1, p2 = projections(d)
    check_ring_hom(d, b, p1)
    check_ring_hom(d, b, p2)
    kernel = tuple(x for x in range(b.size) if f[x] == a.zero)
    budget = get_config().ring.exhaustive_budget
    if len(kernel) ** 2 > budget:
        raise CapExceeded(f"{len(kernel) ** 2} kernel pairs exceed the budget of {budget}")

    ctx = ElementaryMatrixGroupContext(d, size)
    ctx_b = ElementaryMatrixGroupContext(b, size)
    index = {pr: k for k, pr in enumerate(d.components or ())}
    verdict = GammaVerdict(d.name, size, kernel)

    def project(m: RingMatrix, proj: Sequence[int]) -> RingMatrix:
        return tuple(tuple(proj[v] for v in row) for row in m)

    for x, y in product(kernel, repeat=2):
        verdict.pairs += 1
        u, v = index[(x, b.zero)], index[(b.zero, y)]
        if d.mul(u, v) != d.zero or d.mul(v, u) != d.zero:
            verdict.violations.append(f"({x},0)·(0,{y}) is not zero in {d.name}")
            continue
        g = commutator(
            ctx, e_matrix(ctx, 1, 2, u), e_matrix(ctx, 1, 2, d.neg(u)),
            e_matrix(ctx, 2, 1, v), e_matrix(ctx, 2, 1, d.neg(v)),
        )
        if g != ctx.identity:
            verdict.violations.append(f"commutator for x={x}, y={y} is {g}")
            continue
        if any(project(g, proj) != ctx_b.identity for proj in (p1, p2)):
            verdict.violations.append(f"projection of the x={x}, y={y} commutator is not trivial")
            continue
        verdict.trivial += 1
    logger.info(f"Γ generators over {d.name}: {verdict.trivial}/{verdict.pairs} trivial")
    return verdict
