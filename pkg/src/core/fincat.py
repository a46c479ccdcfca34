"""Finite categories, module-valued diagrams and derived colimits.

A chain (a_1, ..., a_n) of the nerve is a sequence of composable morphisms
with dom(a_i) = cod(a_{i+1}):

    x_0 <-a_1- x_1 <-a_2- ... <-a_n- x_n

Its summand in C_n(C, M) is M(x_n) = M(dom a_n). The faces are
d_0 (drop a_1), d_i (replace a_i, a_{i+1} by a_i∘a_{i+1}) and d_n (drop a_n,
acting by M(a_n)); the boundary is the alternating sum. Degree-0 chains are
the objects themselves.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..models.config import get_config
from .complexes import (
    ChainComplex,
    ChainMap,
    HomologyClassSpace,
    LongExactSequence,
    homology_q,
    homology_z,
    les_check,
)
from .errors import (
    AxiomViolation,
    CapExceeded,
    CoefficientModeError,
    DimensionMismatch,
    NotStronglyConnected,
    ValidationFailure,
)
from .exactla import ExactMatrix, Mode, Subspace, kernel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Morphism:
    name: str
    dom: str
    cod: str


@dataclass(frozen=True, eq=False)
class FinCategory:
    """A finite category given by its full composition table.

    ``composition[(g, f)]`` is the index of g∘f for every pair of morphism
    indices with cod(f) = dom(g).
    """

    objects: Tuple[str, ...]
    morphisms: Tuple[Morphism, ...]
    identities: Dict[str, int]
    composition: Dict[Tuple[int, int], int]

    def __post_init__(self) -> None:
        cap = get_config().category.max_morphisms
        if len(self.morphisms) > cap:
            raise CapExceeded(f"{len(self.morphisms)} morphisms exceed the cap of {cap}")
        if len(set(self.objects)) != len(self.objects):
            raise AxiomViolation("Duplicate object labels")
        names = [m.name for m in self.morphisms]
        if len(set(names)) != len(names):
            raise AxiomViolation("Duplicate morphism labels")
        objs = set(self.objects)
        for m in self.morphisms:
            if m.dom not in objs or m.cod not in objs:
                raise AxiomViolation(f"Morphism {m.name} has unknown endpoint", location=m.name)
        for obj in self.objects:
            i = self.identities.get(obj)
            if i is None:
                raise AxiomViolation(f"No identity for object {obj}", location=obj)
            if self.morphisms[i].dom != obj or self.morphisms[i].cod != obj:
                raise AxiomViolation(f"Identity of {obj} is not an endomorphism", location=obj)
        self._check_table()

    def _check_table(self) -> None:
        mors = self.morphisms
        for f, g in product(range(len(mors)), repeat=2):
            if mors[f].cod != mors[g].dom:
                continue
            gf = self.composition.get((g, f))
            where = f"compose({mors[g].name}, {mors[f].name})"
            if gf is None:
                raise AxiomViolation("Composition missing", location=where)
            if mors[gf].dom != mors[f].dom or mors[gf].cod != mors[g].cod:
                raise AxiomViolation("Composite has wrong endpoints", location=where)
        for f, m in enumerate(mors):
            if self.composition[(self.identities[m.cod], f)] != f:
                raise AxiomViolation("Left identity law fails", location=m.name)
            if self.composition[(f, self.identities[m.dom])] != f:
                raise AxiomViolation("Right identity law fails", location=m.name)
        for f in range(len(mors)):
            for g in self.by_dom[mors[f].cod]:
                gf = self.composition[(g, f)]
                for h in self.by_dom[mors[g].cod]:
                    if self.composition[(h, gf)] != self.composition[(self.composition[(h, g)], f)]:
                        raise AxiomViolation(
                            "Associativity fails",
                            location=f"({mors[h].name}, {mors[g].name}, {mors[f].name})",
                        )

    # -- indexes ----------------------------------------------------------------

    @cached_property
    def index(self) -> Dict[str, int]:
        return {m.name: i for i, m in enumerate(self.morphisms)}

    @cached_property
    def by_dom(self) -> Dict[str, List[int]]:
        out: Dict[str, List[int]] = {obj: [] for obj in self.objects}
        for i, m in enumerate(self.morphisms):
            out[m.dom].append(i)
        return out

    @cached_property
    def by_cod(self) -> Dict[str, List[int]]:
        out: Dict[str, List[int]] = {obj: [] for obj in self.objects}
        for i, m in enumerate(self.morphisms):
            out[m.cod].append(i)
        return out

    @cached_property
    def identity_set(self) -> frozenset:
        return frozenset(self.identities.values())

    def hom(self, dom: str, cod: str) -> List[int]:
        return [i for i in self.by_dom[dom] if self.morphisms[i].cod == cod]

    def compose(self, g: int, f: int) -> int:
        return self.composition[(g, f)]

    def is_identity(self, i: int) -> bool:
        return i in self.identity_set

    # -- builders -----------------------------------------------------------------

    @classmethod
    def create(
        cls,
        objects: Sequence[str],
        morphisms: Sequence[Tuple[str, str, str]],
        compose: Sequence[Tuple[str, str, str]],
        identities: Optional[Dict[str, str]] = None,
    ) -> "FinCategory":
        """Build from labels; identities named ``id_<object>`` are added when absent.

        Args:
            objects: Object labels
            morphisms: (name, dom, cod) triples
            compose: (g, f, g∘f) name triples; composites with identities are implied
            identities: Optional explicit object -> identity morphism name map
        """
        mors = [Morphism(n, d, c) for n, d, c in morphisms]
        names = {m.name for m in mors}
        ident_names: Dict[str, str] = dict(identities or {})
        for obj in objects:
            if obj not in ident_names:
                ident_names[obj] = f"id_{obj}"
            if ident_names[obj] not in names:
                mors.append(Morphism(ident_names[obj], obj, obj))
                names.add(ident_names[obj])
        index = {m.name: i for i, m in enumerate(mors)}
        table: Dict[Tuple[int, int], int] = {}
        for g, f, gf in compose:
            for label in (g, f, gf):
                if label not in index:
                    raise AxiomViolation(f"Unknown morphism {label} in composition table")
            key = (index[g], index[f])
            if key in table and table[key] != index[gf]:
                raise AxiomViolation("Conflicting composites", location=f"compose({g}, {f})")
            table[key] = index[gf]
        idents = {obj: index[name] for obj, name in ident_names.items()}
        for i, m in enumerate(mors):
            table.setdefault((idents[m.cod], i), i)
            table.setdefault((i, idents[m.dom]), i)
        return cls(tuple(objects), tuple(mors), idents, table)

    @classmethod
    def from_monoid(
        cls,
        table: Sequence[Sequence[int]],
        identity: int,
        names: Optional[Sequence[str]] = None,
        obj: str = "*",
    ) -> "FinCategory":
        """One-object category; g∘f is the product table[g][f]."""
        labels = list(names) if names else [
            f"id_{obj}" if i == identity else f"g{i}" for i in range(len(table))
        ]
        mors = tuple(Morphism(label, obj, obj) for label in labels)
        composition = {
            (g, f): table[g][f] for g in range(len(table)) for f in range(len(table))
        }
        return cls((obj,), mors, {obj: identity}, composition)

    @classmethod
    def from_poset(cls, elements: Sequence[str], leq: Iterable[Tuple[str, str]]) -> "FinCategory":
        """Thin category with a morphism a -> b whenever a <= b (closed transitively)."""
        order = {(a, a) for a in elements} | set(leq)
        changed = True
        while changed:
            changed = False
            for a, b in list(order):
                for c, d in list(order):
                    if b == c and (a, d) not in order:
                        order.add((a, d))
                        changed = True
        for a, b in order:
            if a != b and (b, a) in order:
                raise AxiomViolation(f"Relation is not antisymmetric: {a}, {b}")
        rank = {e: i for i, e in enumerate(elements)}
        pairs = sorted(order, key=lambda ab: (rank[ab[0]], rank[ab[1]]))
        mors = [
            (f"id_{a}" if a == b else f"{a}<={b}", a, b) for a, b in pairs
        ]
        label = {(a, b): name for name, a, b in mors}
        compose = [
            (label[(b, c)], label[(a, b)], label[(a, c)])
            for a, b in pairs
            for b2, c in pairs
            if b == b2
        ]
        return cls.create(elements, mors, compose)

    @classmethod
    def discrete(cls, objects: Sequence[str]) -> "FinCategory":
        return cls.create(objects, [], [])

    @classmethod
    def codiscrete_monoid(
        cls,
        count: int,
        table: Sequence[Sequence[int]],
        identity: int,
    ) -> "FinCategory":
        """Objects 0..count-1 with every hom-set a copy of the monoid; strongly connected."""
        objects = [f"o{i}" for i in range(count)]
        size = len(table)
        mors = []
        for a, b in product(range(count), repeat=2):
            for x in range(size):
                name = f"id_o{a}" if a == b and x == identity else f"m{x}:{a}->{b}"
                mors.append((name, f"o{a}", f"o{b}"))
        label = {(mors[k][1], mors[k][2], k % size): mors[k][0] for k in range(len(mors))}
        compose = []
        for a, b, c in product(range(count), repeat=3):
            for x, y in product(range(size), repeat=2):
                # y: a -> b, x: b -> c, composite x·y: a -> c
                compose.append((
                    label[(f"o{b}", f"o{c}", x)],
                    label[(f"o{a}", f"o{b}", y)],
                    label[(f"o{a}", f"o{c}", table[x][y])],
                ))
        return cls.create(objects, mors, compose)

    def with_terminal(self, name: str = "T") -> "FinCategory":
        """Adjoin a terminal object with one morphism from every object."""
        if name in self.objects:
            raise AxiomViolation(f"Object {name} already exists")
        mors = [(m.name, m.dom, m.cod) for m in self.morphisms]
        to_top = {obj: f"!{obj}" for obj in self.objects}
        mors += [(to_top[obj], obj, name) for obj in self.objects]
        compose = [
            (self.morphisms[g].name, self.morphisms[f].name, self.morphisms[gf].name)
            for (g, f), gf in self.composition.items()
        ]
        for i, m in enumerate(self.morphisms):
            compose.append((to_top[m.cod], m.name, to_top[m.dom]))
        idents = {obj: self.morphisms[i].name for obj, i in self.identities.items()}
        return FinCategory.create(list(self.objects) + [name], mors, compose, idents)

    def disjoint_union(self, other: "FinCategory") -> "FinCategory":
        def tag(prefix: str, cat: "FinCategory") -> Tuple[list, list, dict]:
            mors = [(f"{prefix}{m.name}", f"{prefix}{m.dom}", f"{prefix}{m.cod}")
                    for m in cat.morphisms]
            comp = [
                (mors[g][0], mors[f][0], mors[gf][0]) for (g, f), gf in cat.composition.items()
            ]
            ids = {f"{prefix}{obj}": mors[i][0] for obj, i in cat.identities.items()}
            return mors, comp, ids

        m1, c1, i1 = tag("L.", self)
        m2, c2, i2 = tag("R.", other)
        objects = [f"L.{o}" for o in self.objects] + [f"R.{o}" for o in other.objects]
        return FinCategory.create(objects, m1 + m2, c1 + c2, {**i1, **i2})


# ---------------------------------------------------------------------------
# Functors
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DiagramFunctor:
    """A functor M: C -> free modules of finite rank over Q or Z.

    ``maps`` holds M(f) for every morphism name, of shape dim(cod) x dim(dom).
    """

    category: FinCategory
    dims: Dict[str, int]
    maps: Dict[str, ExactMatrix]
    mode: Mode = "Q"

    def __post_init__(self) -> None:
        c = self.category
        for obj in c.objects:
            if obj not in self.dims:
                raise AxiomViolation(f"Functor has no value at object {obj}", location=obj)
        for i, m in enumerate(c.morphisms):
            mat = self.maps.get(m.name)
            if mat is None:
                raise AxiomViolation(f"Functor has no matrix for {m.name}", location=m.name)
            if mat.shape != (self.dims[m.cod], self.dims[m.dom]):
                raise DimensionMismatch(
                    f"M({m.name}) has shape {mat.shape}, expected "
                    f"{(self.dims[m.cod], self.dims[m.dom])}",
                    location=m.name,
                )
            if mat.mode != self.mode:
                raise CoefficientModeError(f"M({m.name}) is in mode {mat.mode}", location=m.name)
            if c.is_identity(i) and mat != ExactMatrix.identity(self.dims[m.dom], self.mode):
                raise AxiomViolation("Identity is not sent to an identity", location=m.name)
        for (g, f), gf in c.composition.items():
            if self.matrix(gf) != self.matrix(g) @ self.matrix(f):
                names = (c.morphisms[g].name, c.morphisms[f].name)
                raise AxiomViolation("Functor does not respect composition", location=str(names))

    def matrix(self, i: int) -> ExactMatrix:
        return self.maps[self.category.morphisms[i].name]

    @classmethod
    def create(
        cls,
        category: FinCategory,
        dims: Dict[str, int],
        maps: Dict[str, ExactMatrix],
        mode: Mode = "Q",
    ) -> "DiagramFunctor":
        """Fill in identity matrices for identity morphisms that were not given."""
        full = dict(maps)
        for obj, i in category.identities.items():
            full.setdefault(category.morphisms[i].name, ExactMatrix.identity(dims[obj], mode))
        return cls(category, dict(dims), full, mode)

    @classmethod
    def constant(cls, category: FinCategory, dim: int, mode: Mode = "Q") -> "DiagramFunctor":
        eye = ExactMatrix.identity(dim, mode)
        return cls(
            category,
            {obj: dim for obj in category.objects},
            {m.name: eye for m in category.morphisms},
            mode,
        )

    def to_q(self) -> "DiagramFunctor":
        if self.mode == "Q":
            return self
        return DiagramFunctor(
            self.category, self.dims, {k: v.to_q() for k, v in self.maps.items()}, "Q"
        )


@dataclass(frozen=True, eq=False)
class CategoryFunctor:
    """A functor between finite categories, given on objects and morphisms."""

    source: FinCategory
    target: FinCategory
    on_objects: Dict[str, str]
    on_morphisms: Dict[str, str]

    def __post_init__(self) -> None:
        s, t = self.source, self.target
        for obj in s.objects:
            if self.on_objects.get(obj) not in t.objects:
                raise AxiomViolation(f"No image for object {obj}", location=obj)
        for m in s.morphisms:
            image = self.on_morphisms.get(m.name)
            if image is None or image not in t.index:
                raise AxiomViolation(f"No image for morphism {m.name}", location=m.name)
            tm = t.morphisms[t.index[image]]
            if tm.dom != self.on_objects[m.dom] or tm.cod != self.on_objects[m.cod]:
                raise AxiomViolation("Image has wrong endpoints", location=m.name)
        for obj, i in s.identities.items():
            image = t.index[self.on_morphisms[s.morphisms[i].name]]
            if image != t.identities[self.on_objects[obj]]:
                raise AxiomViolation("Identity is not preserved", location=obj)
        for (g, f), gf in s.composition.items():
            lhs = self.apply(gf)
            if lhs != t.compose(self.apply(g), self.apply(f)):
                raise AxiomViolation("Composition is not preserved", location=s.morphisms[gf].name)

    def apply(self, i: int) -> int:
        return self.target.index[self.on_morphisms[self.source.morphisms[i].name]]


def precompose(m: DiagramFunctor, phi: CategoryFunctor) -> DiagramFunctor:
    """M∘Φ on the source category of Φ."""
    s = phi.source
    return DiagramFunctor(
        s,
        {obj: m.dims[phi.on_objects[obj]] for obj in s.objects},
        {mor.name: m.maps[phi.on_morphisms[mor.name]] for mor in s.morphisms},
        m.mode,
    )


# ---------------------------------------------------------------------------
# Nerve
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NerveChain:
    """A chain of n composable morphisms, or an object when n = 0."""

    degree: int
    morphisms: Tuple[int, ...] = ()
    obj: Optional[str] = None

    def base(self, c: FinCategory) -> str:
        """The object whose module value indexes the summand: dom of the last morphism."""
        if self.degree == 0:
            assert self.obj is not None
            return self.obj
        return c.morphisms[self.morphisms[-1]].dom

    def label(self, c: FinCategory) -> str:
        if self.degree == 0:
            return str(self.obj)
        return "(" + ", ".join(c.morphisms[i].name for i in self.morphisms) + ")"


def nerve_chains(c: FinCategory, n: int, normalized: bool = True) -> List[NerveChain]:
    """All chains of n composable morphisms in lexicographic index order.

    With ``normalized`` the chains containing an identity are left out.
    """
    if n < 0:
        raise ValidationFailure(f"Negative nerve degree {n}")
    if n == 0:
        return [NerveChain(0, (), obj) for obj in c.objects]
    allowed = [
        i for i in range(len(c.morphisms)) if not (normalized and c.is_identity(i))
    ]
    allowed_set = set(allowed)
    chains: List[Tuple[int, ...]] = [(i,) for i in allowed]
    for _ in range(n - 1):
        extended = []
        for chain in chains:
            last = c.morphisms[chain[-1]]
            for j in c.by_cod[last.dom]:
                if j in allowed_set:
                    extended.append(chain + (j,))
        chains = extended
    return [NerveChain(n, chain) for chain in chains]


def _face(c: FinCategory, chain: NerveChain, i: int) -> Tuple[object, bool]:
    """The i-th face as a lookup key, and whether it is degenerate."""
    mors = chain.morphisms
    n = chain.degree
    if n == 1:
        m = c.morphisms[mors[0]]
        return (m.dom if i == 0 else m.cod), False
    if i == 0:
        face = mors[1:]
    elif i == n:
        face = mors[:-1]
    else:
        face = mors[: i - 1] + (c.compose(mors[i - 1], mors[i]),) + mors[i + 1:]
    return face, any(c.is_identity(j) for j in face)


def colim_complex(
    c: FinCategory,
    m: DiagramFunctor,
    max_degree: int,
    normalized: Optional[bool] = None,
) -> ChainComplex:
    """The nerve complex C_0..C_{N+1}(C, M); homology is trusted through degree N."""
    if max_degree < 0:
        raise ValidationFailure(f"Negative max degree {max_degree}")
    if m.category is not c:
        raise ValidationFailure("Functor is defined on a different category")
    norm = get_config().category.normalized if normalized is None else normalized
    top = max_degree + 1
    layers = [nerve_chains(c, k, norm) for k in range(top + 1)]
    offsets: List[Dict[object, int]] = []
    dims = []
    for k, chains in enumerate(layers):
        table: Dict[object, int] = {}
        offset = 0
        for chain in chains:
            key: object = chain.obj if k == 0 else chain.morphisms
            table[key] = offset
            offset += m.dims[chain.base(c)]
        offsets.append(table)
        dims.append(offset)
    logger.debug(f"Nerve complex dims {dims} (normalized={norm})")

    differentials: Dict[int, ExactMatrix] = {}
    for k in range(1, top + 1):
        entries: Dict[Tuple[int, int], object] = {}
        for chain in layers[k]:
            col0 = offsets[k][chain.morphisms]
            size = m.dims[chain.base(c)]
            for i in range(k + 1):
                face, degenerate = _face(c, chain, i)
                if degenerate and norm:
                    continue
                row0 = offsets[k - 1][face]
                sign = -1 if i % 2 else 1
                if i < k:
                    for j in range(size):
                        key = (row0 + j, col0 + j)
                        entries[key] = entries.get(key, 0) + sign
                else:
                    for (r, s), v in m.matrix(chain.morphisms[-1]).entries.items():
                        key = (row0 + r, col0 + s)
                        entries[key] = entries.get(key, 0) + sign * v
        differentials[k] = ExactMatrix.from_entries(entries, dims[k - 1], dims[k], m.mode)
    return ChainComplex(0, tuple(dims), differentials, m.mode, True, "nerve")


def derived_colim(
    c: FinCategory,
    m: DiagramFunctor,
    max_degree: int,
    normalized: Optional[bool] = None,
) -> List[HomologyClassSpace]:
    """colim_0..colim_N of M, with torsion for integer functors."""
    complex_ = colim_complex(c, m, max_degree, normalized)
    degrees = range(max_degree + 1)
    if m.mode == "Z":
        return homology_z(complex_, degrees)
    return homology_q(complex_, degrees)


# ---------------------------------------------------------------------------
# Shape of the category
# ---------------------------------------------------------------------------

def is_strongly_connected(c: FinCategory) -> bool:
    return all(c.hom(a, b) for a in c.objects for b in c.objects)


@dataclass(frozen=True)
class Coequalizer:
    """M(c_0) modulo the relations; ``projection`` has the relations as kernel."""

    base_object: str
    dim: int
    projection: ExactMatrix
    relations: Subspace


def colim0_coeq(c: FinCategory, m: DiagramFunctor, base_object: str) -> Coequalizer:
    """The largest constant quotient of M, computed at ``base_object``.

    Raises:
        NotStronglyConnected: If some hom-set is empty
    """
    if not is_strongly_connected(c):
        raise NotStronglyConnected("colim0_coeq needs a strongly connected category")
    if base_object not in c.objects:
        raise ValidationFailure(f"Unknown object {base_object}")
    mq = m.to_q()
    n = mq.dims[base_object]
    relations: List[Dict[int, object]] = []
    for obj in c.objects:
        parallel = c.hom(obj, base_object)
        first = mq.matrix(parallel[0])
        for other in parallel[1:]:
            relations.extend((mq.matrix(other) - first).column_vectors)
    rel = Subspace.span([r for r in relations if r], n)
    projection = kernel(rel.basis).basis if rel.dim else ExactMatrix.identity(n)
    return Coequalizer(base_object, n - rel.dim, projection, rel)


@dataclass(frozen=True)
class CoproductReport:
    exists: bool
    table: Dict[Tuple[str, str], Tuple[str, str, str]]
    missing: Optional[Tuple[str, str]] = None


def _is_coproduct(c: FinCategory, a: str, b: str, s: str, ia: int, ib: int) -> bool:
    for t in c.objects:
        into_t = c.hom(s, t)
        for f in c.hom(a, t):
            for g in c.hom(b, t):
                matches = sum(
                    1 for h in into_t if c.compose(h, ia) == f and c.compose(h, ib) == g
                )
                if matches != 1:
                    return False
    return True


def has_pairwise_coproducts(c: FinCategory) -> CoproductReport:
    """Brute-force search for a coproduct of every ordered pair of objects."""
    table: Dict[Tuple[str, str], Tuple[str, str, str]] = {}
    for a in c.objects:
        for b in c.objects:
            found = None
            for s in c.objects:
                for ia in c.hom(a, s):
                    for ib in c.hom(b, s):
                        if _is_coproduct(c, a, b, s, ia, ib):
                            found = (s, c.morphisms[ia].name, c.morphisms[ib].name)
                            break
                    if found:
                        break
                if found:
                    break
            if found is None:
                return CoproductReport(False, table, (a, b))
            table[(a, b)] = found
    return CoproductReport(True, table)


def external_tensor(c: FinCategory, phi: DiagramFunctor, psi: DiagramFunctor) -> DiagramFunctor:
    """Objectwise tensor product Φ⊗Ψ over Q (Kronecker products of the matrices)."""
    if phi.mode != "Q" or psi.mode != "Q":
        raise CoefficientModeError("external_tensor is defined over a field only")
    return DiagramFunctor(
        c,
        {obj: phi.dims[obj] * psi.dims[obj] for obj in c.objects},
        {mor.name: phi.maps[mor.name].kron(psi.maps[mor.name]) for mor in c.morphisms},
        "Q",
    )


# ---------------------------------------------------------------------------
# Naturality
# ---------------------------------------------------------------------------

def _chain_offsets(c: FinCategory, m: DiagramFunctor, layer: List[NerveChain]) -> Dict[object, int]:
    table: Dict[object, int] = {}
    offset = 0
    for chain in layer:
        table[chain.obj if chain.degree == 0 else chain.morphisms] = offset
        offset += m.dims[chain.base(c)]
    return table


def functor_chain_map(
    phi: CategoryFunctor,
    m: DiagramFunctor,
    max_degree: int,
    normalized: Optional[bool] = None,
) -> ChainMap:
    """C(C, M∘Φ) -> C(D, M), (a_1..a_n) ⊗ x -> (Φa_1..Φa_n) ⊗ x."""
    norm = get_config().category.normalized if normalized is None else normalized
    s, t = phi.source, phi.target
    pulled = precompose(m, phi)
    source = colim_complex(s, pulled, max_degree, norm)
    target = colim_complex(t, m, max_degree, norm)
    maps: Dict[int, ExactMatrix] = {}
    for k in range(max_degree + 2):
        src_layer = nerve_chains(s, k, norm)
        src_off = _chain_offsets(s, pulled, src_layer)
        tgt_off = _chain_offsets(t, m, nerve_chains(t, k, norm))
        entries: Dict[Tuple[int, int], object] = {}
        for chain in src_layer:
            size = pulled.dims[chain.base(s)]
            if k == 0:
                image: object = phi.on_objects[str(chain.obj)]
                col0 = src_off[chain.obj]
            else:
                image = tuple(phi.apply(i) for i in chain.morphisms)
                col0 = src_off[chain.morphisms]
                if norm and any(t.is_identity(j) for j in image):  # type: ignore[union-attr]
                    continue
            row0 = tgt_off[image]
            for j in range(size):
                entries[(row0 + j, col0 + j)] = 1
        maps[k] = ExactMatrix.from_entries(entries, target.dim(k), source.dim(k), m.mode)
    return ChainMap(source, target, maps, "Φ_*")


def transformation_chain_map(
    c: FinCategory,
    source: DiagramFunctor,
    target: DiagramFunctor,
    eta: Dict[str, ExactMatrix],
    max_degree: int,
    normalized: Optional[bool] = None,
) -> ChainMap:
    """Chain map induced by a natural transformation η: M -> M'.

    Raises:
        AxiomViolation: If η is not natural
    """
    for mor in c.morphisms:
        if eta[mor.cod] @ source.maps[mor.name] != target.maps[mor.name] @ eta[mor.dom]:
            raise AxiomViolation("Transformation is not natural", location=mor.name)
    norm = get_config().category.normalized if normalized is None else normalized
    src = colim_complex(c, source, max_degree, norm)
    tgt = colim_complex(c, target, max_degree, norm)
    maps: Dict[int, ExactMatrix] = {}
    for k in range(max_degree + 2):
        layer = nerve_chains(c, k, norm)
        blocks = [eta[chain.base(c)] for chain in layer]
        maps[k] = ExactMatrix.block_diagonal(blocks, source.mode)
    return ChainMap(src, tgt, maps, "η_*")


def colim_long_exact_sequence(
    c: FinCategory,
    sub: DiagramFunctor,
    middle: DiagramFunctor,
    quotient: DiagramFunctor,
    inclusion: Dict[str, ExactMatrix],
    projection: Dict[str, ExactMatrix],
    max_degree: int,
) -> LongExactSequence:
    """Long exact sequence of derived colimits for 0 -> M' -> M -> M'' -> 0."""
    f = transformation_chain_map(c, sub, middle, inclusion, max_degree)
    g = transformation_chain_map(c, middle, quotient, projection, max_degree)
    return les_check(f, g, labels=("M'", "M", "M''"))
