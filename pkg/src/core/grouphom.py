"""Homology of finite groups as derived colimits over the one-object category."""

import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from ..models.config import get_config
from .complexes import (
    ChainComplex,
    ChainMap,
    CokernelZ,
    HomologyClassSpace,
    homology_q,
    homology_z,
)
from .errors import (
    AxiomViolation,
    CapExceeded,
    DimensionMismatch,
    NotCyclicGroup,
    ValidationFailure,
)
from .exactla import ExactMatrix, Mode, invariant_factors
from .fincat import (
    CategoryFunctor,
    DiagramFunctor,
    FinCategory,
    derived_colim,
    functor_chain_map,
)

logger = logging.getLogger(__name__)

Permutation = Tuple[int, ...]


@dataclass(frozen=True, eq=False)
class FinGroup:
    """Finite group on elements 0..n-1 with ``table[g][h] = g·h``."""

    table: Tuple[Tuple[int, ...], ...]
    identity: int = 0
    name: str = "G"
    permutations: Optional[Tuple[Permutation, ...]] = None

    def __post_init__(self) -> None:
        n = len(self.table)
        if n == 0:
            raise AxiomViolation("A group needs at least one element")
        cap = get_config().group.max_order
        if n > cap:
            raise CapExceeded(f"Group order {n} exceeds the cap of {cap}")
        for g, row in enumerate(self.table):
            if len(row) != n or any(not (0 <= x < n) for x in row):
                raise AxiomViolation("Multiplication table is not square", location=f"row {g}")
        e = self.identity
        for g in range(n):
            if self.table[e][g] != g or self.table[g][e] != g:
                raise AxiomViolation("Identity law fails", location=f"element {g}")
            if e not in self.table[g]:
                raise AxiomViolation("Element has no inverse", location=f"element {g}")
        for g in range(n):
            for h in range(n):
                gh = self.table[g][h]
                for k in range(n):
                    if self.table[gh][k] != self.table[g][self.table[h][k]]:
                        raise AxiomViolation(
                            "Associativity fails", location=f"({g}, {h}, {k})"
                        )

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    @cached_property
    def inverses(self) -> Tuple[int, ...]:
        return tuple(row.index(self.identity) for row in self.table)

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.table[x][g]
            k += 1
        return k

    @cached_property
    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[g][h] == self.table[h][g] for g in range(n) for h in range(n))

    # -- builders -----------------------------------------------------------------

    @classmethod
    def cyclic(cls, q: int) -> "FinGroup":
        """Z/q with element k standing for t^k."""
        if q < 1:
            raise ValidationFailure(f"Cyclic group order must be positive, got {q}")
        table = tuple(tuple((a + b) % q for b in range(q)) for a in range(q))
        return cls(table, 0, f"C{q}")

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], name: str = "G") -> "FinGroup":
        """Group from a table; the identity is located, not assumed."""
        rows = tuple(tuple(int(x) for x in row) for row in table)
        n = len(rows)
        for e in range(n):
            if all(rows[e][g] == g and rows[g][e] == g for g in range(n)):
                return cls(rows, e, name)
        raise AxiomViolation("Table has no identity element")

    @classmethod
    def from_permutations(cls, generators: Sequence[Sequence[int]], name: str = "G") -> "FinGroup":
        """Closure of permutation generators.

        Elements are ordered identity first, then the generators, then in
        breadth-first order of discovery. Products compose right to left:
        (σ·τ)(x) = σ(τ(x)).
        """
        if not generators:
            raise ValidationFailure("At least one generator is required")
        degree = len(generators[0])
        gens: List[Permutation] = []
        for g in generators:
            perm = tuple(int(x) for x in g)
            if len(perm) != degree or sorted(perm) != list(range(degree)):
                raise AxiomViolation(f"Not a permutation of 0..{degree - 1}: {list(g)}")
            gens.append(perm)
        ident = tuple(range(degree))
        cap = get_config().group.max_order
        elements: List[Permutation] = [ident]
        seen = {ident: 0}
        for perm in gens:
            if perm not in seen:
                seen[perm] = len(elements)
                elements.append(perm)
        queue = deque(elements)
        while queue:
            x = queue.popleft()
            for s in gens:
                y = tuple(x[s[i]] for i in range(degree))
                if y not in seen:
                    if len(elements) >= cap:
                        raise CapExceeded(f"Generated group exceeds order {cap}")
                    seen[y] = len(elements)
                    elements.append(y)
                    queue.append(y)
        table = tuple(
            tuple(seen[tuple(a[b[i]] for i in range(degree))] for b in elements)
            for a in elements
        )
        return cls(table, 0, name, tuple(elements))

    @classmethod
    def symmetric(cls, k: int) -> "FinGroup":
        if k < 1:
            raise ValidationFailure(f"Symmetric group degree must be positive, got {k}")
        if k == 1:
            return cls(((0,),), 0, "S1", ((0,),))
        swap = (1, 0) + tuple(range(2, k))
        cycle = tuple((i + 1) % k for i in range(k))
        return cls.from_permutations([swap, cycle], name=f"S{k}")


def permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# ---------------------------------------------------------------------------
# Modules
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GModule:
    """A free module of finite rank with a left action ρ: G -> GL_rank."""

    group: FinGroup
    rank: int
    action: Tuple[ExactMatrix, ...]
    mode: Mode = "Z"

    def __post_init__(self) -> None:
        g = self.group
        if len(self.action) != g.order:
            raise DimensionMismatch(
                f"Action has {len(self.action)} matrices for {g.order} elements"
            )
        for k, mat in enumerate(self.action):
            if mat.shape != (self.rank, self.rank) or mat.mode != self.mode:
                raise DimensionMismatch(f"ρ({k}) has shape {mat.shape} in mode {mat.mode}")
        if self.action[g.identity] != ExactMatrix.identity(self.rank, self.mode):
            raise AxiomViolation("Identity does not act trivially")
        for a in range(g.order):
            for b in range(g.order):
                if self.action[g.mul(a, b)] != self.action[a] @ self.action[b]:
                    raise AxiomViolation("Action is not multiplicative", location=f"({a}, {b})")

    @classmethod
    def trivial(cls, group: FinGroup, rank: int = 1, mode: Mode = "Z") -> "GModule":
        eye = ExactMatrix.identity(rank, mode)
        return cls(group, rank, tuple(eye for _ in range(group.order)), mode)

    @classmethod
    def regular(cls, group: FinGroup, mode: Mode = "Z") -> "GModule":
        n = group.order
        action = tuple(
            ExactMatrix.from_entries({(group.mul(g, h), h): 1 for h in range(n)}, n, n, mode)
            for g in range(n)
        )
        return cls(group, n, action, mode)

    @classmethod
    def sign(cls, group: FinGroup, mode: Mode = "Z") -> "GModule":
        if group.permutations is None:
            raise ValidationFailure("Sign module needs a permutation group")
        action = tuple(
            ExactMatrix.diagonal([permutation_sign(p)], mode) for p in group.permutations
        )
        return cls(group, 1, action, mode)

    @classmethod
    def from_generators(
        cls,
        group: FinGroup,
        rank: int,
        generators: Dict[int, ExactMatrix],
        mode: Mode = "Z",
    ) -> "GModule":
        """Extend the action of some elements multiplicatively to the whole group.

        Raises:
            AxiomViolation: If the elements do not generate, or the extension is inconsistent
        """
        known: Dict[int, ExactMatrix] = {group.identity: ExactMatrix.identity(rank, mode)}
        for g, mat in generators.items():
            if not (0 <= g < group.order):
                raise ValidationFailure(f"Element index {g} out of range")
            if g in known and known[g] != mat:
                raise AxiomViolation("Identity must act trivially", location=f"element {g}")
            known[g] = mat
        queue = deque(sorted(known))
        while queue:
            x = queue.popleft()
            for s, mat in sorted(generators.items()):
                y = group.mul(x, s)
                value = known[x] @ mat
                if y not in known:
                    known[y] = value
                    queue.append(y)
                elif known[y] != value:
                    raise AxiomViolation(
                        "Generator action is inconsistent", location=f"element {y}"
                    )
        if len(known) != group.order:
            raise AxiomViolation("Given elements do not generate the group")
        return cls(group, rank, tuple(known[g] for g in range(group.order)), mode)


def as_category(group: FinGroup) -> FinCategory:
    return FinCategory.from_monoid(group.table, group.identity)


def module_functor(module: GModule) -> DiagramFunctor:
    """The module as a functor on ``as_category(group)``."""
    c = as_category(module.group)
    return DiagramFunctor(
        c,
        {"*": module.rank},
        {c.morphisms[g].name: module.action[g] for g in range(module.group.order)},
        module.mode,
    )


def _check_caps(group: FinGroup, max_degree: int) -> None:
    cfg = get_config().group
    if group.order > cfg.max_order:
        raise CapExceeded(f"Group order {group.order} exceeds {cfg.max_order}")
    if max_degree > cfg.max_degree:
        raise CapExceeded(f"Degree {max_degree} exceeds {cfg.max_degree}")


def group_homology(module: GModule, max_degree: int) -> List[HomologyClassSpace]:
    """H_0..H_N(G; M) via the normalized nerve of the one-object category."""
    _check_caps(module.group, max_degree)
    f = module_functor(module)
    return derived_colim(f.category, f, max_degree, normalized=True)


def cyclic_generator(group: FinGroup, q: int) -> int:
    """Smallest element of order q.

    Raises:
        NotCyclicGroup: If the group is not cyclic of order q
    """
    if group.order != q:
        raise NotCyclicGroup(f"Group has order {group.order}, expected {q}")
    for g in range(group.order):
        if group.element_order(g) == q:
            return g
    raise NotCyclicGroup(f"Group of order {q} has no element of order {q}")


def cyclic_resolution_complex(module: GModule, q: int, max_degree: int) -> ChainComplex:
    """M <-(t-1)- M <-N- M <-(t-1)- ... through degree N+1."""
    t = cyclic_generator(module.group, q)
    eye = ExactMatrix.identity(module.rank, module.mode)
    minus = module.action[t] - eye
    norm = ExactMatrix.zeros(module.rank, module.rank, module.mode)
    for mat in module.action:
        norm = norm + mat
    diffs = [minus if k % 2 == 1 else norm for k in range(1, max_degree + 2)]
    return ChainComplex.from_list(
        [module.rank] * (max_degree + 2), diffs, 0, module.mode, True, f"periodic C{q}"
    )


def cyclic_group_oracle(module: GModule, q: int, max_degree: int) -> List[HomologyClassSpace]:
    """Group homology of a cyclic group from its periodic resolution."""
    _check_caps(module.group, max_degree)
    c = cyclic_resolution_complex(module, q, max_degree)
    degrees = range(max_degree + 1)
    if module.mode == "Z":
        return homology_z(c, degrees)
    return homology_q(c, degrees)


def abelianization_invariants(group: FinGroup) -> CokernelZ:
    """G/[G,G] as Z^n modulo the relations e_g + e_h - e_{gh}."""
    n = group.order
    entries: Dict[Tuple[int, int], int] = {}
    row = 0
    for g in range(n):
        for h in range(n):
            gh = group.mul(g, h)
            for col, v in ((g, 1), (h, 1), (gh, -1)):
                entries[(row, col)] = entries.get((row, col), 0) + v
            row += 1
    relations = ExactMatrix.from_entries(entries, row, n, "Z")
    factors = [abs(f) for f in invariant_factors(relations) if f]
    return CokernelZ(n - len(factors), tuple(sorted(f for f in factors if f > 1)))


def homomorphism_chain_map(
    phi: Sequence[int],
    source: FinGroup,
    module: GModule,
    max_degree: int,
) -> ChainMap:
    """Chain map on nerve complexes induced by φ: source -> module.group.

    The source complex has coefficients in the restriction φ*M.
    """
    target = module.group
    if len(phi) != source.order or any(not (0 <= x < target.order) for x in phi):
        raise ValidationFailure("Homomorphism table has the wrong shape")
    for a in range(source.order):
        for b in range(source.order):
            if phi[source.mul(a, b)] != target.mul(phi[a], phi[b]):
                raise AxiomViolation("Map is not a homomorphism", location=f"({a}, {b})")
    mf = module_functor(module)
    s_cat, t_cat = as_category(source), mf.category
    functor = CategoryFunctor(
        s_cat,
        t_cat,
        {"*": "*"},
        {s_cat.morphisms[g].name: t_cat.morphisms[phi[g]].name for g in range(source.order)},
    )
    return functor_chain_map(functor, mf, max_degree, normalized=True)


def small_groups() -> List[FinGroup]:
    """All isomorphism types of order at most 6, plus C8."""
    groups = [FinGroup.cyclic(q) for q in range(1, 7)]
    v4 = tuple(tuple(a ^ b for b in range(4)) for a in range(4))
    groups.append(FinGroup(v4, 0, "C2xC2"))
    groups.append(FinGroup.symmetric(3))
    groups.append(FinGroup.cyclic(8))
    return groups
