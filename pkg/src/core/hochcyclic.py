"""Hochschild and cyclic homology of finite-dimensional algebras over Q.

Conventions (normalized chains, Ā = A/Q·1):

- Hochschild boundary on M⊗Ā^{⊗n}:
  b(m, a_1..a_n) = (m·a_1, a_2..) + Σ_{0<i<n} (-1)^i (.., a_i·a_{i+1}, ..)
                   + (-1)^n (a_n·m, a_1..a_{n-1})
- Connes operator on A⊗Ā^{⊗n}:
  B(a_0..a_n) = Σ_i (-1)^{ni} (1, a_i..a_n, a_0..a_{i-1}), zero when a_0 is the unit
- The (b, B) bicomplex has C_{q-p} at position (p, q), q >= p; B is horizontal and
  (-1)^p b vertical, so its total differential is b + B.
- The cyclic operator on A^{⊗(n+1)} is t(a_0..a_n) = (-1)^n (a_n, a_0..a_{n-1}).

Algebras with a unit are first rebased so that the unit is a basis vector;
the other basis vectors then span Ā.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from sympy import QQ

from .algebras import Bimodule, StructAlgebra, unitalize
from .complexes import (
    ChainComplex,
    ChainMap,
    DoubleComplex,
    LongExactSequence,
    homology_q,
    les_check,
    totalize,
)
from .errors import DimensionMismatch, InvariantViolation, ValidationFailure
from .exactla import ExactMatrix, Subspace, Vector, kernel, rank, solve_in_basis, vec_axpy
from .freegraded import GradedPresentation, magnus_quotient_dims

logger = logging.getLogger(__name__)

Chain = Tuple[int, ...]

__all__ = [
    "Bimodule",
    "CyclicBicomplexSpec",
    "StructAlgebra",
    "WeightRow",
    "cyclic_bicomplex",
    "cyclic_homology",
    "cyclic_nonunital",
    "cyclic_weight",
    "enveloping_outer",
    "h1_via_omega",
    "hochschild",
    "hochschild_complex",
    "hochschild_weight",
    "lambda_complex",
    "lambda_homology",
    "lambda_weight",
    "magnus_check",
    "omega",
    "sbi_sequence",
    "unitalize",
]


@dataclass(frozen=True)
class WeightRow:
    """Homology dimensions in degrees 0..N for one weight (None when ungraded)."""

    weight: Optional[int]
    dims: Tuple[int, ...]


def _weights_for(a: StructAlgebra, max_weight: Optional[int]) -> List[Optional[int]]:
    if max_weight is None:
        return [None]
    if not a.graded:
        raise ValidationFailure("Per-weight output needs a weight-graded algebra")
    if max_weight < 0:
        raise ValidationFailure(f"Negative max weight {max_weight}")
    return list(range(max_weight + 1))


def _require_unital(a: StructAlgebra, op: str) -> None:
    if not a.unital:
        raise ValidationFailure(f"{op} needs a unital algebra; unitalize it first")


# ---------------------------------------------------------------------------
# Tensor bases
# ---------------------------------------------------------------------------

class TensorBasis:
    """Tuples (h, t_1..t_n) with h from ``heads`` and t_i from ``tails``.

    With a weight, only tuples of that total weight are kept. Tuples are in
    lexicographic order of indices.
    """

    def __init__(
        self,
        heads: Sequence[int],
        tails: Sequence[int],
        length: int,
        weight: Optional[int],
        head_weight: Callable[[int], int],
        tail_weight: Callable[[int], int],
    ):
        self.length = length
        self.weight = weight
        tails = sorted(tails)
        min_tail = min((tail_weight(t) for t in tails), default=0)
        out: List[Chain] = []

        def extend(prefix: Chain, slots: int, remaining: Optional[int]) -> Iterator[Chain]:
            if slots == 0:
                if remaining is None or remaining == 0:
                    yield prefix
                return
            for t in tails:
                if remaining is None:
                    yield from extend(prefix + (t,), slots - 1, None)
                    continue
                left = remaining - tail_weight(t)
                if left < (slots - 1) * min_tail:
                    continue
                yield from extend(prefix + (t,), slots - 1, left)

        for h in sorted(heads):
            rest = None if weight is None else weight - head_weight(h)
            if rest is not None and rest < length * min_tail:
                continue
            out.extend(extend((h,), length, rest))
        self.chains = out
        self.index: Dict[Chain, int] = {c: i for i, c in enumerate(out)}

    def __len__(self) -> int:
        return len(self.chains)


def _bar_indices(a: StructAlgebra) -> List[int]:
    p = a.unit_pivot()
    return [k for k in range(a.dim) if k != p]


def _add(entries: Dict[Tuple[int, int], object], key: Tuple[int, int], value: object) -> None:
    entries[key] = entries.get(key, 0) + value  # type: ignore[operator]


# ---------------------------------------------------------------------------
# Hochschild
# ---------------------------------------------------------------------------

def _hochschild_boundary(
    a: StructAlgebra,
    module: Optional[Bimodule],
    src: TensorBasis,
    tgt: TensorBasis,
    drop_unit_head: bool = False,
) -> ExactMatrix:
    """Matrix of b: src -> tgt; ``a`` is unit-adapted.

    Without a module the coefficients are A itself. With ``drop_unit_head`` the
    target heads live in Ā and the unit coordinate of the head is discarded.
    """
    p = a.unit_pivot()
    n = src.length

    def right(m: int, x: int) -> Vector:
        if module is None:
            return a.basis_product(m, x)
        return module.right[x].column_vectors[m]

    def left(x: int, m: int) -> Vector:
        if module is None:
            return a.basis_product(x, m)
        return module.left[x].column_vectors[m]

    entries: Dict[Tuple[int, int], object] = {}

    def put(chain: Chain, col: int, value: object) -> None:
        if drop_unit_head and chain[0] == p:
            return
        row = tgt.index.get(chain)
        if row is None:
            raise InvariantViolation(f"Boundary left the weight component: {chain}")
        _add(entries, (row, col), value)

    for col, chain in enumerate(src.chains):
        m, bars = chain[0], chain[1:]
        for k, c in right(m, bars[0]).items():
            put((k,) + bars[1:], col, c)
        for i in range(1, n):
            sign = -1 if i % 2 else 1
            for k, c in a.basis_product(bars[i - 1], bars[i]).items():
                if k != p:
                    put((m,) + bars[: i - 1] + (k,) + bars[i + 1:], col, sign * c)
        sign = -1 if n % 2 else 1
        for k, c in left(bars[-1], m).items():
            put((k,) + bars[:-1], col, sign * c)
    return ExactMatrix.from_entries(entries, len(tgt), len(src))


def _hochschild_bases(
    a: StructAlgebra, module: Optional[Bimodule], top: int, weight: Optional[int]
) -> List[TensorBasis]:
    heads = range(module.dim) if module is not None else range(a.dim)
    head_weight = module.weight if module is not None else a.weight
    bar = _bar_indices(a)
    return [
        TensorBasis(heads, bar, k, weight, head_weight, a.weight) for k in range(top + 1)
    ]


def hochschild_complex(
    a: StructAlgebra,
    module: Optional[Bimodule] = None,
    max_degree: int = 4,
    weight: Optional[int] = None,
) -> ChainComplex:
    """Normalized Hochschild complex M⊗Ā^{⊗n}, n = 0..N+1, in one weight."""
    _require_unital(a, "hochschild")
    adapted = a.unit_adapted()
    if module is not None:
        if module.algebra.dim != a.dim:
            raise DimensionMismatch("Bimodule is over an algebra of another dimension")
        if adapted is not a:
            p = adapted.unit_pivot()
            module = module.pullback(
                adapted, [dict(a.unit or {}) if k == p else {k: QQ.one} for k in range(a.dim)]
            )
    head_weights = module.weights if module is not None else adapted.weights
    if weight is not None and head_weights is None:
        raise ValidationFailure("Per-weight Hochschild homology needs a graded bimodule")
    bases = _hochschild_bases(adapted, module, max_degree + 1, weight)
    diffs = [
        _hochschild_boundary(adapted, module, bases[k], bases[k - 1])
        for k in range(1, max_degree + 2)
    ]
    logger.debug(f"Hochschild complex of {a.name} weight {weight}: {[len(b) for b in bases]}")
    return ChainComplex.from_list(
        [len(b) for b in bases], diffs, 0, "Q", True, f"C({a.name})"
    )


def hochschild_weight(
    a: StructAlgebra, module: Optional[Bimodule], max_degree: int, weight: Optional[int]
) -> WeightRow:
    c = hochschild_complex(a, module, max_degree, weight)
    return WeightRow(weight, tuple(h.dim for h in homology_q(c, range(max_degree + 1))))


def hochschild(
    a: StructAlgebra,
    module: Optional[Bimodule] = None,
    max_degree: int = 4,
    max_weight: Optional[int] = None,
) -> List[WeightRow]:
    """dim H_0..H_N(A, M), per weight 0..W when ``max_weight`` is given."""
    return [hochschild_weight(a, module, max_degree, w) for w in _weights_for(a, max_weight)]


# ---------------------------------------------------------------------------
# Ω(A) and H_1
# ---------------------------------------------------------------------------

def _outer(a: StructAlgebra, vec: Vector, left: Optional[int], right: Optional[int]) -> Vector:
    """e_left·(x⊗y)·e_right on a vector of A⊗A; None leaves a side untouched."""
    n = a.dim
    out: Vector = {}
    for idx, c in vec.items():
        i, j = divmod(idx, n)
        xs = a.basis_product(left, i) if left is not None else {i: QQ.one}
        ys = a.basis_product(j, right) if right is not None else {j: QQ.one}
        for k, u in xs.items():
            for l, v in ys.items():
                vec_axpy(out, c * u * v, {k * n + l: QQ.one})
    return out


@dataclass(frozen=True, eq=False)
class Omega:
    """Ω(A) = ker(A⊗A -> A) with a row basis inside A⊗A and its bimodule structure."""

    basis: Subspace
    bimodule: Bimodule

    @property
    def dim(self) -> int:
        return self.basis.dim


def omega(a: StructAlgebra) -> Omega:
    _require_unital(a, "omega")
    om = kernel(a.multiplication_matrix())
    d = om.dim
    lefts, rights = [], []
    for x in range(a.dim):
        for side in ("left", "right"):
            images = [
                _outer(a, row, x if side == "left" else None, x if side == "right" else None)
                for row in om.rows()
            ]
            coords = (
                solve_in_basis(om.basis, ExactMatrix.from_vectors(images, a.dim * a.dim))
                if d else ExactMatrix.zeros(0, 0)
            )
            (lefts if side == "left" else rights).append(coords.transpose())
    bimodule = Bimodule(a, d, tuple(lefts), tuple(rights), trusted=True)
    return Omega(om, bimodule)


def h1_via_omega(a: StructAlgebra, module: Optional[Bimodule] = None) -> int:
    """dim ker(Ω(A)⊗_{A^e}M -> M), ((x⊗y)⊗m) -> y·m·x."""
    _require_unital(a, "h1_via_omega")
    m = module or Bimodule.regular(a)
    n, dm = a.dim, m.dim
    om = kernel(a.multiplication_matrix())
    d = om.dim
    if d == 0 or dm == 0:
        return 0

    def act(x: int, vec: Vector, y: int) -> Vector:
        return m.act_left({x: QQ.one}, m.act_right(vec, {y: QQ.one}))

    images = []
    for row in om.rows():
        for x in range(n):
            for y in range(n):
                images.append(_outer(a, row, x, y))
    coords = solve_in_basis(om.basis, ExactMatrix.from_vectors(images, n * n)).row_vectors

    relations: List[Vector] = []
    t = 0
    for r in range(d):
        for x in range(n):
            for y in range(n):
                for s in range(dm):
                    vec: Vector = {}
                    for r2, c in coords[t].items():
                        vec_axpy(vec, c, {r2 * dm + s: QQ.one})
                    for s2, c in act(y, {s: QQ.one}, x).items():
                        vec_axpy(vec, -c, {r * dm + s2: QQ.one})
                    if vec:
                        relations.append(vec)
                t += 1
    rel = Subspace.span(relations, d * dm)

    alpha: Dict[Tuple[int, int], object] = {}
    for r, row in enumerate(om.rows()):
        for s in range(dm):
            out: Vector = {}
            for idx, c in row.items():
                i, j = divmod(idx, n)
                vec_axpy(out, c, act(j, {s: QQ.one}, i))
            for k, v in out.items():
                alpha[(k, r * dm + s)] = v
    alpha_m = ExactMatrix.from_entries(alpha, dm, d * dm)
    if rel.dim and not (alpha_m @ rel.basis.transpose()).is_zero():
        raise InvariantViolation("α does not vanish on the A^e-relations of Ω⊗M")
    return d * dm - rel.dim - rank(alpha_m)


def enveloping_outer(b: StructAlgebra) -> Bimodule:
    """B⊗B with a'(x⊗y)b' = a'x⊗yb'; weights add."""
    n = b.dim
    eye = ExactMatrix.identity(n)
    weights = (
        tuple(b.weight(i) + b.weight(j) for i in range(n) for j in range(n))
        if b.graded else None
    )
    return Bimodule(
        b,
        n * n,
        tuple(b.left_matrix(i).kron(eye) for i in range(n)),
        tuple(eye.kron(b.right_matrix(i)) for i in range(n)),
        weights,
        trusted=True,
    )


@dataclass(frozen=True)
class MagnusRow:
    weight: int
    h1: int
    quotient: int

    @property
    def agree(self) -> bool:
        return self.h1 == self.quotient


def magnus_h1(p: GradedPresentation, w: int) -> int:
    """dim H_1(F, A_+⊗A_+)_w as the kernel of M⊗V -> M, m⊗v -> m·v - v·m."""
    target = p.target
    b = target if target.unital else unitalize(target)
    shift = 0 if target.unital else 1
    images = [{k + shift: v for k, v in img.items()} for img in p.images]
    f = p.free
    n = b.dim
    pairs = [(i, j) for i in range(n) for j in range(n)]
    targets = [(i, j) for (i, j) in pairs if b.weight(i) + b.weight(j) == w]
    codomain = {pair: k for k, pair in enumerate(targets)}
    domain = [
        (i, j, g)
        for (i, j) in pairs
        for g in range(f.rank)
        if b.weight(i) + b.weight(j) + f.weights[g] == w
    ]
    entries: Dict[Tuple[int, int], object] = {}
    for col, (i, j, g) in enumerate(domain):
        for k, c in b.mul({j: QQ.one}, images[g]).items():
            _add(entries, (codomain[(i, k)], col), c)
        for k, c in b.mul(images[g], {i: QQ.one}).items():
            _add(entries, (codomain[(k, j)], col), -c)
    phi = ExactMatrix.from_entries(entries, len(codomain), len(domain))
    return len(domain) - rank(phi)


def magnus_check(p: GradedPresentation, w_max: int) -> List[MagnusRow]:
    """dim H_1(F, A^e)_w against dim (R/R²)_w for w = 1..w_max."""
    quotients = magnus_quotient_dims(p, w_max)
    rows = [MagnusRow(w, magnus_h1(p, w), quotients[w]) for w in range(1, w_max + 1)]
    for row in rows:
        logger.debug(f"magnus {p.name} weight {row.weight}: {row.h1} vs {row.quotient}")
    return rows


# ---------------------------------------------------------------------------
# Cyclic homology
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CyclicBicomplexSpec:
    algebra: StructAlgebra
    max_degree: int
    reduced: bool = False
    weight: Optional[int] = None


def _connes_b(a: StructAlgebra, src: TensorBasis, tgt: TensorBasis) -> ExactMatrix:
    """Matrix of B: A⊗Ā^{⊗n} -> A⊗Ā^{⊗(n+1)}; ``a`` is unit-adapted."""
    p = a.unit_pivot()
    n = src.length
    entries: Dict[Tuple[int, int], object] = {}
    for col, chain in enumerate(src.chains):
        if chain[0] == p:
            continue
        for i in range(n + 1):
            sign = -1 if (n * i) % 2 else 1
            image = (p,) + chain[i:] + chain[:i]
            row = tgt.index.get(image)
            if row is None:
                raise InvariantViolation(f"B left the weight component: {image}")
            _add(entries, (row, col), sign)
    return ExactMatrix.from_entries(entries, len(tgt), len(src))


def cyclic_bicomplex(spec: CyclicBicomplexSpec) -> DoubleComplex:
    """The (b, B) bicomplex through total degree N+1.

    In reduced mode the ground field's bicomplex is divided out: only the
    diagonal entries change, from A to Ā.
    """
    a = spec.algebra
    _require_unital(a, "cyclic_bicomplex")
    if spec.max_degree < 0:
        raise ValidationFailure(f"Negative max degree {spec.max_degree}")
    if spec.weight is not None and not a.graded:
        raise ValidationFailure("Per-weight cyclic homology needs a graded algebra")
    adapted = a.unit_adapted()
    bar = _bar_indices(adapted)
    top = spec.max_degree + 1
    full = [
        TensorBasis(range(adapted.dim), bar, k, spec.weight, adapted.weight, adapted.weight)
        for k in range(top + 1)
    ]
    reduced0 = TensorBasis(bar, bar, 0, spec.weight, adapted.weight, adapted.weight)

    def space(k: int) -> TensorBasis:
        return reduced0 if spec.reduced and k == 0 else full[k]

    b_maps = {
        k: _hochschild_boundary(adapted, None, space(k), space(k - 1),
                                drop_unit_head=spec.reduced and k == 1)
        for k in range(1, top + 1)
    }
    big_b = {k: _connes_b(adapted, space(k), space(k + 1)) for k in range(0, top)}

    dims: Dict[Tuple[int, int], int] = {}
    horizontal: Dict[Tuple[int, int], ExactMatrix] = {}
    vertical: Dict[Tuple[int, int], ExactMatrix] = {}
    for p in range(top // 2 + 1):
        for q in range(p, top - p + 1):
            k = q - p
            dims[(p, q)] = len(space(k))
            if k >= 1:
                vertical[(p, q)] = b_maps[k].scale(-1) if p % 2 else b_maps[k]
            if p >= 1:
                horizontal[(p, q)] = big_b[k]
    name = f"{'reduced ' if spec.reduced else ''}bicomplex({a.name})"
    return DoubleComplex(dims, horizontal, vertical, "Q", True, name)


def cyclic_weight(
    a: StructAlgebra, max_degree: int, reduced: bool, weight: Optional[int]
) -> WeightRow:
    tot = totalize(cyclic_bicomplex(CyclicBicomplexSpec(a, max_degree, reduced, weight)))
    return WeightRow(weight, tuple(h.dim for h in homology_q(tot, range(max_degree + 1))))


def cyclic_homology(
    a: StructAlgebra,
    max_degree: int,
    reduced: bool = False,
    max_weight: Optional[int] = None,
) -> List[WeightRow]:
    """dim HC_0..HC_N (or HC̄ when ``reduced``) from the bicomplex."""
    return [cyclic_weight(a, max_degree, reduced, w) for w in _weights_for(a, max_weight)]


def cyclic_nonunital(
    a: StructAlgebra, max_degree: int, max_weight: Optional[int] = None
) -> List[WeightRow]:
    """HC_*(A) := HC̄_*(A_+) for an algebra without unit."""
    if a.unital:
        raise ValidationFailure("cyclic_nonunital expects an algebra without unit")
    return cyclic_homology(unitalize(a), max_degree, True, max_weight)


# ---------------------------------------------------------------------------
# Connes' λ-complex
# ---------------------------------------------------------------------------

def _orbit_class(chain: Chain) -> Optional[Tuple[Chain, int]]:
    """Minimal rotation of a chain and the sign relating them in the coinvariants.

    Returns None when the chain is zero in the coinvariants.
    """
    n = len(chain) - 1
    best, best_k = chain, 0
    for k in range(1, n + 1):
        rotated = chain[n + 1 - k:] + chain[: n + 1 - k]
        if rotated == chain and (n * k) % 2:
            return None
        if rotated < best:
            best, best_k = rotated, k
    return best, (-1 if (n * best_k) % 2 else 1)


def lambda_complex(
    a: StructAlgebra, max_degree: int, weight: Optional[int] = None
) -> ChainComplex:
    """C^λ_n = (A^{⊗(n+1)})_{C_{n+1}} with the Hochschild boundary, n = 0..N+1."""
    if weight is not None and not a.graded:
        raise ValidationFailure("Per-weight λ-complex needs a graded algebra")
    indices = range(a.dim)
    top = max_degree + 1
    bases: List[List[Chain]] = []
    positions: List[Dict[Chain, int]] = []
    for n in range(top + 1):
        raw = TensorBasis(indices, indices, n, weight, a.weight, a.weight)
        reps = [c for c in raw.chains if (cls := _orbit_class(c)) is not None and cls[0] == c]
        bases.append(reps)
        positions.append({c: i for i, c in enumerate(reps)})

    diffs = []
    for n in range(1, top + 1):
        entries: Dict[Tuple[int, int], object] = {}
        for col, chain in enumerate(bases[n]):
            terms: List[Tuple[Chain, object]] = []
            for i in range(n):
                sign = -1 if i % 2 else 1
                for k, c in a.basis_product(chain[i], chain[i + 1]).items():
                    terms.append((chain[:i] + (k,) + chain[i + 2:], sign * c))
            sign = -1 if n % 2 else 1
            for k, c in a.basis_product(chain[n], chain[0]).items():
                terms.append(((k,) + chain[1:n], sign * c))
            for image, c in terms:
                cls = _orbit_class(image)
                if cls is None:
                    continue
                rep, s = cls
                _add(entries, (positions[n - 1][rep], col), s * c)
        diffs.append(ExactMatrix.from_entries(entries, len(bases[n - 1]), len(bases[n])))
    return ChainComplex.from_list(
        [len(b) for b in bases], diffs, 0, "Q", True, f"Cλ({a.name})"
    )


def lambda_weight(a: StructAlgebra, max_degree: int, weight: Optional[int]) -> WeightRow:
    c = lambda_complex(a, max_degree, weight)
    return WeightRow(weight, tuple(h.dim for h in homology_q(c, range(max_degree + 1))))


def lambda_homology(
    a: StructAlgebra, max_degree: int, max_weight: Optional[int] = None
) -> List[WeightRow]:
    return [lambda_weight(a, max_degree, w) for w in _weights_for(a, max_weight)]


# ---------------------------------------------------------------------------
# SBI
# ---------------------------------------------------------------------------

@dataclass
class SbiResult:
    weight: Optional[int]
    hochschild: Tuple[int, ...]
    cyclic: Tuple[int, ...]
    sequence: LongExactSequence

    def ranks(self, n: int) -> Tuple[int, int, int]:
        """Ranks of I: HH_n -> HC_n, S: HC_n -> HC_{n-2} and B: HC_{n-1} -> HH_n."""
        maps = self.sequence.maps
        i_map = maps.get(f"HH{n}->HC{n}")
        s_map = maps.get(f"HC{n}->HC[-2]{n}")
        b_map = maps.get(f"HC[-2]{n + 1}->HH{n}")
        r = [rank(m) if m is not None else 0 for m in (i_map, s_map, b_map)]
        return r[0], r[1], r[2]

    def rank_mismatches(self) -> List[str]:
        """Degrees where the I/S/B ranks do not add up to the HH and HC dimensions.

        Exactness splits dim HH_n = rk I_n + rk B_n, dim HC_n = rk I_n + rk S_n
        and dim HC_{n-2} = rk S_n + rk B_{n-1}. HH at the top degree is skipped
        because B into it comes from the first untrusted degree.
        """
        top = self.sequence.top_degree
        out: List[str] = []
        for n in range(top + 1):
            i_n, s_n, b_n = self.ranks(n)
            if n < top and self.hochschild[n] != i_n + b_n:
                out.append(f"HH_{n}: dim {self.hochschild[n]}, rk I {i_n} + rk B {b_n}")
            if self.cyclic[n] != i_n + s_n:
                out.append(f"HC_{n}: dim {self.cyclic[n]}, rk I {i_n} + rk S {s_n}")
            if n >= 2:
                b_prev = self.ranks(n - 1)[2]
                if self.cyclic[n - 2] != s_n + b_prev:
                    out.append(f"HC_{n - 2}: dim {self.cyclic[n - 2]}, rk S {s_n} + rk B {b_prev}")
            elif s_n:
                out.append(f"S_{n} has rank {s_n} into a zero group")
        return out


def sbi_sequence(a: StructAlgebra, max_degree: int, weight: Optional[int] = None) -> SbiResult:
    """HH_n -I-> HC_n -S-> HC_{n-2} -B-> HH_{n-1} from the column filtration.

    Column 0 of the bicomplex is the Hochschild complex; the quotient by it is
    the bicomplex shifted by two.
    """
    dc = cyclic_bicomplex(CyclicBicomplexSpec(a, max_degree, False, weight))
    tot = totalize(dc)
    top = max_degree + 1
    col = [dc.dim((0, q)) for q in range(top + 1)]
    hoch = ChainComplex.from_list(
        col, [dc.v((0, q)) for q in range(1, top + 1)], 0, "Q", True, "HH"
    )
    shifted_dims = [0, 0] + [tot.dim(n) for n in range(0, top - 1)]
    shifted_diffs = [ExactMatrix.zeros(0, 0), ExactMatrix.zeros(0, tot.dim(0))] + [
        tot.d(n) for n in range(1, top - 1)
    ]
    shifted = ChainComplex.from_list(shifted_dims, shifted_diffs, 0, "Q", True, "HC[-2]")

    inclusion = {}
    projection = {}
    for n in range(top + 1):
        rest = tot.dim(n) - col[n]
        inclusion[n] = ExactMatrix.vstack(
            [ExactMatrix.identity(col[n]), ExactMatrix.zeros(rest, col[n])], cols=col[n]
        )
        projection[n] = ExactMatrix.hstack(
            [ExactMatrix.zeros(rest, col[n]), ExactMatrix.identity(rest)], rows=rest
        )
    i_map = ChainMap(hoch, tot, inclusion, "I")
    s_map = ChainMap(tot, shifted, projection, "S")
    les = les_check(i_map, s_map, labels=("HH", "HC", "HC[-2]"))
    hh = tuple(h.dim for h in homology_q(hoch, range(max_degree + 1)))
    hc = tuple(h.dim for h in homology_q(tot, range(max_degree + 1)))
    return SbiResult(weight, hh, hc, les)
