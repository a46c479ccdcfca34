"""Seeded random categories, functors, modules and algebras for property checks.

Every generator takes a ``random.Random`` so a fixed seed reproduces the same
objects in the same order.
"""

import logging
import random
from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import QQ

from .algebras import StructAlgebra, unitalize
from .complexes import ChainComplex, ChainMap, DoubleComplex
from .errors import AxiomViolation
from .exactla import ExactMatrix, Mode, Subspace, Vector
from .fincat import DiagramFunctor, FinCategory
from .grouphom import FinGroup, GModule

logger = logging.getLogger(__name__)

Transformation = Tuple[int, ...]


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------

def random_unimodular(
    rng: random.Random, n: int, steps: int = 4, mode: Mode = "Q"
) -> Tuple[ExactMatrix, ExactMatrix]:
    """A product of elementary integer matrices and its inverse."""
    p = ExactMatrix.identity(n, mode)
    p_inv = ExactMatrix.identity(n, mode)
    if n < 2:
        return p, p_inv
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.choice((-1, 1))
        e = ExactMatrix.from_entries({**{(k, k): 1 for k in range(n)}, (i, j): c}, n, n, mode)
        e_inv = ExactMatrix.from_entries({**{(k, k): 1 for k in range(n)}, (i, j): -c}, n, n, mode)
        p = e @ p
        p_inv = p_inv @ e_inv
    return p, p_inv


def random_matrix(
    rng: random.Random,
    rows: int,
    cols: int,
    density: float = 0.5,
    bound: int = 3,
    mode: Mode = "Q",
) -> ExactMatrix:
    """Sparse integer entries in [-bound, bound]."""
    entries = {
        (i, j): rng.randint(-bound, bound)
        for i in range(rows)
        for j in range(cols)
        if rng.random() < density
    }
    return ExactMatrix.from_entries(entries, rows, cols, mode)


def random_low_rank(
    rng: random.Random, rows: int, cols: int, mode: Mode = "Q"
) -> ExactMatrix:
    """Product through a random inner dimension, so rank deficiency is common."""
    inner = rng.randint(1, max(1, min(rows, cols)))
    return random_matrix(rng, rows, inner, mode=mode) @ random_matrix(rng, inner, cols, mode=mode)


def random_subspace(rng: random.Random, ambient_dim: int, max_vectors: int = 6) -> Subspace:
    count = rng.randint(0, max_vectors)
    return Subspace.span(random_matrix(rng, count, ambient_dim).row_vectors, ambient_dim)


# ---------------------------------------------------------------------------
# Complexes
# ---------------------------------------------------------------------------

@dataclass
class _SphereDisk:
    """Direct sum of spheres (a basis vector with d = 0) and disks (Q -id-> Q).

    In degree n the basis is ordered spheres, disk tops, disk bottoms; ``spheres[k]``
    lists the sphere coordinates in degree lo+k.
    """

    lo: int
    dims: List[int]
    differentials: Dict[int, ExactMatrix]
    spheres: List[List[int]]


def _sphere_disk(
    rng: random.Random, lo: int, length: int, max_pieces: int, mode: Mode
) -> _SphereDisk:
    spheres = [rng.randint(0, max_pieces) for _ in range(length)]
    tops = [0] + [rng.randint(0, max_pieces) for _ in range(length - 1)]
    bottoms = tops[1:] + [0]
    dims = [s + t + b for s, t, b in zip(spheres, tops, bottoms)]
    differentials: Dict[int, ExactMatrix] = {}
    for k in range(1, length):
        entries = {
            (spheres[k - 1] + tops[k - 1] + i, spheres[k] + i): 1 for i in range(tops[k])
        }
        differentials[lo + k] = ExactMatrix.from_entries(entries, dims[k - 1], dims[k], mode)
    return _SphereDisk(lo, dims, differentials, [list(range(s)) for s in spheres])


def _conjugate(
    rng: random.Random, lo: int, dims: Sequence[int], d: Dict[int, ExactMatrix], mode: Mode
) -> Tuple[Dict[int, ExactMatrix], List[Tuple[ExactMatrix, ExactMatrix]]]:
    """d_n -> P_{n-1} d_n P_n⁻¹ for random unimodular P; returns the new maps and the P pairs."""
    change = [random_unimodular(rng, n, mode=mode) for n in dims]
    out = {n: change[n - 1 - lo][0] @ m @ change[n - lo][1] for n, m in d.items()}
    return out, change


def random_complex(
    rng: random.Random, lo: int = 0, length: int = 4, max_pieces: int = 2, mode: Mode = "Q"
) -> ChainComplex:
    """Spheres and disks in degrees lo..lo+length-1 under a change of basis per degree."""
    sd = _sphere_disk(rng, lo, length, max_pieces, mode)
    d, _ = _conjugate(rng, lo, sd.dims, sd.differentials, mode)
    return ChainComplex(lo, tuple(sd.dims), d, mode, False, "X")


def random_split_sequence(
    rng: random.Random, lo: int = 0, length: int = 4, max_pieces: int = 2, mode: Mode = "Q"
) -> Tuple[ChainMap, ChainMap]:
    """0 -> A -> B -> C -> 0 split in every degree but usually not as complexes.

    B_n = A_n ⊕ C_n with d_B = [[d_A, h], [0, d_C]]. The corner h is the
    coboundary s d_C - d_A s of a random s plus a random map from the spheres of
    C to the spheres of A one degree down; that second part is what the
    connecting map sees. All three complexes are then conjugated.
    """
    a = _sphere_disk(rng, lo, length, max_pieces, mode)
    c = _sphere_disk(rng, lo, length, max_pieces, mode)
    s = [random_matrix(rng, a.dims[k], c.dims[k], mode=mode) for k in range(length)]

    def da(n: int) -> ExactMatrix:
        return a.differentials[n]

    def dc(n: int) -> ExactMatrix:
        return c.differentials[n]

    b_dims = [x + y for x, y in zip(a.dims, c.dims)]
    b_d: Dict[int, ExactMatrix] = {}
    for k in range(1, length):
        n = lo + k
        twist = s[k - 1] @ dc(n) - da(n) @ s[k]
        linked = {
            (i, j): rng.choice((-1, 0, 1)) for i in a.spheres[k - 1] for j in c.spheres[k]
        }
        corner = twist + ExactMatrix.from_entries(linked, a.dims[k - 1], c.dims[k], mode)
        top = ExactMatrix.hstack([da(n), corner])
        bottom = ExactMatrix.hstack([ExactMatrix.zeros(c.dims[k - 1], a.dims[k], mode), dc(n)])
        b_d[n] = ExactMatrix.vstack([top, bottom], cols=b_dims[k])

    a_d, pa = _conjugate(rng, lo, a.dims, a.differentials, mode)
    c_d, pc = _conjugate(rng, lo, c.dims, c.differentials, mode)
    b_d, pb = _conjugate(rng, lo, b_dims, b_d, mode)
    ca = ChainComplex(lo, tuple(a.dims), a_d, mode, False, "A")
    cb = ChainComplex(lo, tuple(b_dims), b_d, mode, False, "B")
    cc = ChainComplex(lo, tuple(c.dims), c_d, mode, False, "C")
    inclusion, projection = {}, {}
    for k in range(length):
        x, y = a.dims[k], c.dims[k]
        inc = ExactMatrix.vstack(
            [ExactMatrix.identity(x, mode), ExactMatrix.zeros(y, x, mode)], cols=x
        )
        proj = ExactMatrix.hstack(
            [ExactMatrix.zeros(y, x, mode), ExactMatrix.identity(y, mode)], rows=y
        )
        inclusion[lo + k] = pb[k][0] @ inc @ pa[k][1]
        projection[lo + k] = pc[k][0] @ proj @ pb[k][1]
    return ChainMap(ca, cb, inclusion, "f"), ChainMap(cb, cc, projection, "g")


def tensor_double_complex(x: ChainComplex, y: ChainComplex) -> DoubleComplex:
    """(X ⊗ Y)_{p,q} = X_p ⊗ Y_q with d^h = d_X ⊗ 1 and d^v = 1 ⊗ d_Y."""
    dims = {(p, q): x.dim(p) * y.dim(q) for p in x.degrees for q in y.degrees}
    horizontal = {
        (p, q): x.d(p).kron(ExactMatrix.identity(y.dim(q), x.mode))
        for p in x.degrees
        for q in y.degrees
    }
    vertical = {
        (p, q): ExactMatrix.identity(x.dim(p), x.mode).kron(y.d(q))
        for p in x.degrees
        for q in y.degrees
    }
    return DoubleComplex(dims, horizontal, vertical, x.mode, False, "X⊗Y")


# ---------------------------------------------------------------------------
# Categories
# ---------------------------------------------------------------------------

def random_poset(rng: random.Random, size: int, density: float = 0.4) -> FinCategory:
    """Poset on p0..p{size-1}; relations only go up in index order."""
    elements = [f"p{i}" for i in range(size)]
    leq = [
        (elements[i], elements[j])
        for i in range(size)
        for j in range(i + 1, size)
        if rng.random() < density
    ]
    return FinCategory.from_poset(elements, leq)


def random_transformation_monoid(
    rng: random.Random, points: int = 3, max_size: int = 6, generators: int = 2
) -> Tuple[List[List[int]], int]:
    """Monoid generated by random self-maps of {0..points-1}.

    Returns the table with ``table[x][y]`` the index of x∘y and the index of
    the identity. Generators are redrawn until the closure fits ``max_size``.
    """
    identity: Transformation = tuple(range(points))
    while True:
        gens = [
            tuple(rng.randrange(points) for _ in range(points))
            for _ in range(rng.randint(1, generators))
        ]
        elements: List[Transformation] = [identity]
        seen = {identity}
        k = 0
        while k < len(elements) and len(elements) <= max_size:
            x = elements[k]
            for g in gens:
                y = tuple(g[x[p]] for p in range(points))
                if y not in seen:
                    seen.add(y)
                    elements.append(y)
            k += 1
        if len(elements) <= max_size:
            break
    index = {t: i for i, t in enumerate(elements)}
    table = [
        [index[tuple(x[y[p]] for p in range(points))] for y in elements] for x in elements
    ]
    return table, 0


def random_terminal_category(
    rng: random.Random, max_objects: int = 5, max_morphisms: int = 20
) -> FinCategory:
    """A small poset or monoid category with a terminal object adjoined."""
    while True:
        if rng.random() < 0.5:
            c = random_poset(rng, rng.randint(1, max_objects - 1))
        else:
            table, e = random_transformation_monoid(rng, max_size=min(6, max_morphisms - 2))
            c = FinCategory.from_monoid(table, e)
        c = c.with_terminal()
        if len(c.objects) <= max_objects and len(c.morphisms) <= max_morphisms:
            return c


def monoid_labels(
    count: int, size: int, identity: int
) -> Dict[str, Tuple[int, int, int]]:
    """Morphism name -> (monoid element, dom index, cod index) for ``codiscrete_monoid``."""
    out = {}
    for a, b in product(range(count), repeat=2):
        for x in range(size):
            name = f"id_o{a}" if a == b and x == identity else f"m{x}:{a}->{b}"
            out[name] = (x, a, b)
    return out


def random_strongly_connected(
    rng: random.Random, max_objects: int = 3, max_morphisms: int = 20
) -> Tuple[FinCategory, List[List[int]], int]:
    """Codiscrete category over a random transformation monoid.

    Returns the category with the monoid table and identity it was built from.
    """
    count = rng.randint(1, max_objects)
    size = max(1, min(6, max_morphisms // count ** 2))
    table, e = random_transformation_monoid(rng, max_size=size)
    return FinCategory.codiscrete_monoid(count, table, e), table, e


def random_join_semilattice(rng: random.Random, max_size: int = 6, bits: int = 3) -> FinCategory:
    """Union-closed family of subsets of {0..bits-1} ordered by inclusion."""
    while True:
        family = {rng.randrange(1, 2 ** bits) for _ in range(rng.randint(1, 3))}
        changed = True
        while changed:
            changed = False
            for x, y in list(product(family, repeat=2)):
                if x | y not in family:
                    family.add(x | y)
                    changed = True
        if len(family) <= max_size:
            break
    members = sorted(family)
    names = [f"s{x}" for x in members]
    leq = [
        (f"s{x}", f"s{y}") for x in members for y in members if x != y and x & y == x
    ]
    return FinCategory.from_poset(names, leq)


# ---------------------------------------------------------------------------
# Functors
# ---------------------------------------------------------------------------

def _leq(c: FinCategory, a: str, b: str) -> bool:
    return bool(c.hom(a, b))


def random_interval_functor(
    rng: random.Random, c: FinCategory, summands: int = 2, mode: Mode = "Q"
) -> DiagramFunctor:
    """Sum of interval modules on a poset, conjugated objectwise.

    An interval {x : a <= x <= b} carries Q with identity maps inside it and
    zero maps leaving it; each object then gets a random change of basis.
    """
    objs = list(c.objects)
    intervals: List[List[str]] = []
    for _ in range(summands):
        a = rng.choice(objs)
        ups = [b for b in objs if _leq(c, a, b)]
        b = rng.choice(ups)
        intervals.append([x for x in objs if _leq(c, a, x) and _leq(c, x, b)])
    slots = {x: [k for k, iv in enumerate(intervals) if x in iv] for x in objs}
    dims = {x: len(slots[x]) for x in objs}
    change = {x: random_unimodular(rng, dims[x], mode=mode) for x in objs}
    maps: Dict[str, ExactMatrix] = {}
    for m in c.morphisms:
        entries = {
            (slots[m.cod].index(k), col): 1
            for col, k in enumerate(slots[m.dom])
            if k in slots[m.cod]
        }
        raw = ExactMatrix.from_entries(entries, dims[m.cod], dims[m.dom], mode)
        maps[m.name] = change[m.cod][0] @ raw @ change[m.dom][1]
    return DiagramFunctor(c, dims, maps, mode)


def random_monoid_functor(
    rng: random.Random,
    c: FinCategory,
    table: Sequence[Sequence[int]],
    identity: int,
    mode: Mode = "Q",
) -> DiagramFunctor:
    """P_b ρ(x) P_a⁻¹ on a codiscrete monoid category.

    ρ is the left regular representation of the monoid and P_a a random change
    of basis at object a.
    """
    size = len(table)
    rho = [
        ExactMatrix.from_entries({(table[x][y], y): 1 for y in range(size)}, size, size, mode)
        for x in range(size)
    ]
    count = len(c.objects)
    change = [random_unimodular(rng, size, mode=mode) for _ in range(count)]
    labels = monoid_labels(count, size, identity)
    maps = {
        name: change[b][0] @ rho[x] @ change[a][1] for name, (x, a, b) in labels.items()
    }
    return DiagramFunctor(c, {obj: size for obj in c.objects}, maps, mode)


def random_constant_functor(rng: random.Random, c: FinCategory, max_dim: int = 3) -> DiagramFunctor:
    return DiagramFunctor.constant(c, rng.randint(1, max_dim))


# ---------------------------------------------------------------------------
# Group modules
# ---------------------------------------------------------------------------

def random_group_module(rng: random.Random, group: FinGroup, mode: Mode = "Z") -> GModule:
    """Sum of trivial, sign and regular pieces under a unimodular change of basis."""
    pieces = [GModule.trivial(group, 1, mode)]
    if group.permutations is not None:
        pieces.append(GModule.sign(group, mode))
    if group.order <= 4:
        pieces.append(GModule.regular(group, mode))
    chosen = [rng.choice(pieces) for _ in range(rng.randint(1, 2))]
    rank = sum(p.rank for p in chosen)
    p, p_inv = random_unimodular(rng, rank, mode=mode)
    action = tuple(
        p @ ExactMatrix.block_diagonal([piece.action[g] for piece in chosen], mode) @ p_inv
        for g in range(group.order)
    )
    return GModule(group, rank, action, mode)


# ---------------------------------------------------------------------------
# Algebras
# ---------------------------------------------------------------------------

def _random_table(rng: random.Random, dim: int, zero_bias: float) -> Dict[Tuple[int, int], Vector]:
    table: Dict[Tuple[int, int], Vector] = {}
    for i, j in product(range(dim), repeat=2):
        if rng.random() < zero_bias:
            continue
        table[(i, j)] = {rng.randrange(dim): QQ.one}
    return table


def change_basis(a: StructAlgebra, p: ExactMatrix, p_inv: ExactMatrix) -> StructAlgebra:
    """The same algebra in the basis given by the columns of ``p``; weights are dropped."""
    cols = p.column_vectors
    table: Dict[Tuple[int, int], Vector] = {}
    for i, j in product(range(a.dim), repeat=2):
        vec = p_inv.apply(a.mul(cols[i], cols[j]))
        if vec:
            table[(i, j)] = vec
    unit = p_inv.apply(a.unit) if a.unit is not None else None
    return StructAlgebra(a.dim, table, unit, None, a.name)


def random_algebra(
    rng: random.Random, max_dim: int = 3, zero_bias: float = 0.6, attempts: int = 500
) -> StructAlgebra:
    """Associative algebra of dimension <= max_dim.

    Candidates are random monomial structure constants filtered by the
    associativity check; half of the draws are unitalized. A random change of
    basis then hides the monomial shape.
    """
    for _ in range(attempts):
        unital = rng.random() < 0.5
        dim = rng.randint(1, max_dim - 1 if unital else max_dim)
        try:
            a = StructAlgebra(dim, _random_table(rng, dim, zero_bias), None, None, "A")
        except AxiomViolation:
            continue
        if unital:
            a = unitalize(a)
        p, p_inv = random_unimodular(rng, a.dim)
        out = change_basis(a, p, p_inv)
        logger.debug(f"random algebra of dim {out.dim}, unital={out.unital}")
        return out
    raise AxiomViolation(f"No associative table found in {attempts} attempts")


def random_graded_algebra(
    rng: random.Random, max_dim: int = 3, attempts: int = 500
) -> Optional[StructAlgebra]:
    """Non-unital algebra with positive weights, products homogeneous."""
    for _ in range(attempts):
        dim = rng.randint(1, max_dim)
        weights = tuple(rng.randint(1, 2) for _ in range(dim))
        table: Dict[Tuple[int, int], Vector] = {}
        for i, j in product(range(dim), repeat=2):
            targets = [k for k in range(dim) if weights[k] == weights[i] + weights[j]]
            if targets and rng.random() < 0.5:
                table[(i, j)] = {rng.choice(targets): QQ.one}
        try:
            return StructAlgebra(dim, table, None, weights, "A")
        except AxiomViolation:
            continue
    return None
