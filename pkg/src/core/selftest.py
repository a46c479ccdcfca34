"""Seeded self-test: every engine layer checked against an independent route.

Each criterion draws its own ``random.Random`` from the seed and its position,
so the criteria can run in any order (or in parallel) and still see the same
objects. A criterion never raises; engine errors become a failed verdict.
"""

import logging
import random
from dataclasses import dataclass, field
from typing import Callable, List, Sequence, Tuple

from ..models import JobReport, ReportTable, Verdict
from .algebras import StructAlgebra, unitalize
from .complexes import HomologyClassSpace, homology_cokernel_z
from .errors import EngineError
from .fincat import (
    colim0_coeq,
    derived_colim,
    external_tensor,
    has_pairwise_coproducts,
    is_strongly_connected,
)
from .freegraded import (
    GradedFreeAlgebra,
    GradedPresentation,
    hopf_hc_odd,
    hopf_hc_odd_unital,
    lemma56_dimension_check,
    monogenic_presentation,
    necklace_count,
    redundant_presentation,
    truncated_algebra,
    unital_presentation,
    zero_mult_presentation,
    zero_mult_redundant_presentation,
)
from .generators import (
    random_algebra,
    random_constant_functor,
    random_group_module,
    random_interval_functor,
    random_join_semilattice,
    random_monoid_functor,
    random_strongly_connected,
    random_terminal_category,
)
from .grouphom import (
    FinGroup,
    GModule,
    cyclic_group_oracle,
    group_homology,
    homomorphism_chain_map,
)
from .hochcyclic import cyclic_weight, hochschild_weight, lambda_weight, magnus_check, sbi_sequence
from .steinberg import (
    ElementaryMatrixGroupContext,
    FiniteRing,
    gamma_generators_trivial,
    steinberg_relations_check,
    zmod_projection,
)

logger = logging.getLogger(__name__)


@dataclass
class Tally:
    """Counts checks and keeps the first few mismatches."""

    checked: int = 0
    failures: List[str] = field(default_factory=list)

    def expect(self, condition: bool, message: str) -> None:
        self.checked += 1
        if not condition:
            self.failures.append(message)

    @property
    def detail(self) -> str:
        if not self.failures:
            return f"{self.checked} checks passed"
        return f"{len(self.failures)}/{self.checked} failed; first: {self.failures[0]}"


@dataclass(frozen=True)
class Criterion:
    name: str
    check: Callable[[random.Random, Tally], None]


# ---------------------------------------------------------------------------
# Derived colimits
# ---------------------------------------------------------------------------

def _terminal_constant(rng: random.Random, tally: Tally) -> None:
    for _ in range(20):
        c = random_terminal_category(rng)
        m = random_constant_functor(rng, c)
        d = m.dims[c.objects[0]]
        got = [h.dim for h in derived_colim(c, m, 3)]
        tally.expect(got == [d, 0, 0, 0], f"constant Q^{d} on {c.objects}: {got}")


def _strongly_connected(rng: random.Random, tally: Tally) -> None:
    for _ in range(20):
        c, table, e = random_strongly_connected(rng)
        m = random_monoid_functor(rng, c, table, e)
        tally.expect(is_strongly_connected(c), f"{c.objects} is not strongly connected")
        coeq = colim0_coeq(c, m, c.objects[0]).dim
        nerve = derived_colim(c, m, 0)[0].dim
        tally.expect(coeq == nerve, f"monoid of order {len(table)}: coeq {coeq}, nerve {nerve}")


def _kunneth(rng: random.Random, tally: Tally) -> None:
    top = 3
    for _ in range(5):
        c = random_join_semilattice(rng)
        tally.expect(has_pairwise_coproducts(c).exists, f"{c.objects} lacks a coproduct")
        phi = random_interval_functor(rng, c)
        psi = random_interval_functor(rng, c)
        left = [h.dim for h in derived_colim(c, phi, top)]
        right = [h.dim for h in derived_colim(c, psi, top)]
        tensor = [h.dim for h in derived_colim(c, external_tensor(c, phi, psi), top)]
        expected = [sum(left[i] * right[n - i] for i in range(n + 1)) for n in range(top + 1)]
        tally.expect(tensor == expected, f"{c.objects}: tensor {tensor}, Künneth {expected}")


# ---------------------------------------------------------------------------
# Group homology
# ---------------------------------------------------------------------------

def _signature(spaces: Sequence[HomologyClassSpace]) -> List[Tuple[int, Tuple[int, ...]]]:
    return [(h.dim, tuple(h.torsion)) for h in spaces]


def _cyclic_groups(rng: random.Random, tally: Tally) -> None:
    top = 4
    for q in (2, 3):
        group = FinGroup.cyclic(q)
        trivial = GModule.trivial(group, 1, "Z")
        nerve = _signature(group_homology(trivial, top))
        known = [(1, ())] + [(0, (q,)) if n % 2 else (0, ()) for n in range(1, top + 1)]
        tally.expect(nerve == known, f"H_*(C{q}; Z) = {nerve}")
        oracle = _signature(cyclic_group_oracle(trivial, q, top))
        tally.expect(nerve == oracle, f"C{q}: nerve {nerve}, periodic {oracle}")
        module = random_group_module(rng, group)
        nerve = _signature(group_homology(module, 3))
        oracle = _signature(cyclic_group_oracle(module, q, 3))
        tally.expect(nerve == oracle, f"C{q} rank {module.rank}: nerve {nerve}, periodic {oracle}")
    s3 = FinGroup.symmetric(3)
    h1 = _signature(group_homology(GModule.trivial(s3, 1, "Z"), 1))[1]
    tally.expect(h1 == (0, (2,)), f"H_1(S3; Z) = {h1}")
    c2 = GModule.trivial(FinGroup.cyclic(2), 1, "Z")
    induced = homomorphism_chain_map([0, 1, 0, 1], FinGroup.cyclic(4), c2, 2)
    coker = homology_cokernel_z(induced, 1)
    tally.expect(
        coker.free_rank == 0 and not coker.torsion, f"H_1(C4) -> H_1(C2) has cokernel {coker}"
    )


# ---------------------------------------------------------------------------
# Free algebras and necklaces
# ---------------------------------------------------------------------------

def _free_cyclic(rng: random.Random, tally: Tally) -> None:
    top, w_max = 4, 5
    for m in (1, 2):
        t = truncated_algebra(GradedFreeAlgebra.uniform(m, w_max, unital=True))
        for w in range(0, w_max + 1):
            dims = cyclic_weight(t, top, True, w).dims
            expected = (necklace_count(m, w) if w else 0,) + (0,) * top
            tally.expect(dims == expected, f"HC̄(T(Q^{m}))_{w} = {dims}")


def _necklace_split(rng: random.Random, tally: Tally) -> None:
    for m in (1, 2, 3):
        for row in lemma56_dimension_check(m, 6):
            tally.expect(row.holds, f"m={m} w={row.weight}: {row}")
    for m in (1, 2):
        t = truncated_algebra(GradedFreeAlgebra.uniform(m, 4, unital=True))
        for w in range(1, 5):
            dims = hochschild_weight(t, None, 3, w).dims
            k = necklace_count(m, w)
            tally.expect(dims == (k, k, 0, 0), f"HH(T(Q^{m}))_{w} = {dims}, necklaces {k}")


# ---------------------------------------------------------------------------
# Hopf formula and Magnus
# ---------------------------------------------------------------------------

def _presentations(w_max: int) -> List[GradedPresentation]:
    return [
        zero_mult_presentation(1, w_max),
        zero_mult_presentation(2, w_max),
        zero_mult_presentation(3, w_max),
        monogenic_presentation(3, w_max),
        redundant_presentation(3, w_max),
        zero_mult_redundant_presentation(w_max),
    ]


def _hopf(rng: random.Random, tally: Tally) -> None:
    presentations = _presentations(6)
    by_name = {}
    for p in presentations:
        plus = unitalize(p.target)
        w_max = p.free.max_weight
        for n in (0, 1):
            degree = 2 * n + 1
            hopf = [h.dim for h in hopf_hc_odd(p, n, w_max)]
            bicomplex = [cyclic_weight(plus, degree, True, w).dims[degree]
                         for w in range(1, w_max + 1)]
            tally.expect(hopf == bicomplex, f"{p.name} n={n}: hopf {hopf}, bicomplex {bicomplex}")
            by_name[(p.name, n)] = hopf
    tally.expect(by_name[("V2", 0)] == [0, 1, 0, 0, 0, 0], f"HC_1(V2) = {by_name[('V2', 0)]}")
    for n in (0, 1):
        tally.expect(not any(by_name[("t^3", n)]), f"HC_{2 * n + 1}(t^3) = {by_name[('t^3', n)]}")
        for a, b in (("t^3", "t,s^3"), ("V2", "V2 (x,y,z)")):
            tally.expect(by_name[(a, n)] == by_name[(b, n)],
                         f"n={n}: {a} gives {by_name[(a, n)]}, {b} gives {by_name[(b, n)]}")
    for p in (presentations[1], presentations[3]):
        up = unital_presentation(p)
        hopf = [h.dim for h in hopf_hc_odd_unital(up, 0, 4)]
        bicomplex = [cyclic_weight(up.target, 1, True, w).dims[1] for w in range(0, 5)]
        tally.expect(hopf == bicomplex, f"{up.name}: hopf {hopf}, bicomplex {bicomplex}")


def _magnus(rng: random.Random, tally: Tally) -> None:
    for p in _presentations(5):
        for row in magnus_check(p, p.free.max_weight):
            tally.expect(row.agree, f"{p.name} weight {row.weight}: {row}")


# ---------------------------------------------------------------------------
# Cyclic homology
# ---------------------------------------------------------------------------

def _sbi(rng: random.Random, tally: Tally) -> None:
    for a in (StructAlgebra.ground_field(), StructAlgebra.dual_numbers(),
              StructAlgebra.product_field(2)):
        res = sbi_sequence(a, 5)
        tally.expect(res.sequence.exact, f"SBI of {a.name}: {res.sequence.failures[:1]}")
        mismatches = res.rank_mismatches()
        tally.expect(not mismatches, f"SBI ranks of {a.name}: {mismatches[:1]}")
    periodic = sbi_sequence(StructAlgebra.product_field(2), 5)
    for n in (2, 4):
        tally.expect(
            periodic.ranks(n)[1] == 2, f"S on HC_{n}(Q×Q) has rank {periodic.ranks(n)[1]}"
        )


def _lambda_vs_bicomplex(rng: random.Random, tally: Tally) -> None:
    top = 4
    for _ in range(10):
        a = random_algebra(rng)
        if a.unital:
            bicomplex = cyclic_weight(a, top, False, None).dims
        else:
            bicomplex = cyclic_weight(unitalize(a), top, True, None).dims
        lam = lambda_weight(a, top, None).dims
        tally.expect(
            bicomplex == lam,
            f"dim {a.dim} unital={a.unital}: bicomplex {bicomplex}, λ {lam}",
        )


# ---------------------------------------------------------------------------
# Steinberg layer
# ---------------------------------------------------------------------------

def _steinberg(rng: random.Random, tally: Tally) -> None:
    for m in (4, 6):
        verdict = steinberg_relations_check(ElementaryMatrixGroupContext(FiniteRing.zmod(m), 3))
        tally.expect(verdict.passed, f"Z/{m}: {verdict.violations[:1]}")
    for m, k, pairs in ((4, 2, 4), (9, 3, 9)):
        b, a = FiniteRing.zmod(m), FiniteRing.zmod(k)
        gamma = gamma_generators_trivial(b, a, zmod_projection(m, k))
        tally.expect(gamma.passed, f"Z/{m} -> Z/{k}: {gamma.violations[:1]}")
        tally.expect(gamma.pairs == pairs, f"Z/{m} -> Z/{k}: {gamma.pairs} pairs")
        tally.expect(len(gamma.kernel) * b.size == m * m // k,
                     f"Z/{m} -> Z/{k}: |D| = {len(gamma.kernel) * b.size}")


CRITERIA: Tuple[Criterion, ...] = (
    Criterion("colim of constant functor on terminal categories", _terminal_constant),
    Criterion("colim_0 by coequalizer on strongly connected categories", _strongly_connected),
    Criterion("Künneth on join-semilattices", _kunneth),
    Criterion("integral homology of cyclic groups and S3", _cyclic_groups),
    Criterion("HC̄ of free algebras", _free_cyclic),
    Criterion("necklace split and HH of free algebras", _necklace_split),
    Criterion("Hopf formula against the bicomplex", _hopf),
    Criterion("SBI exactness", _sbi),
    Criterion("λ-complex against the bicomplex", _lambda_vs_bicomplex),
    Criterion("H_1(F, A^e) = R/R²", _magnus),
    Criterion("Steinberg relations and Γ generators", _steinberg),
)


def run_criterion(index: int, seed: int) -> Verdict:
    criterion = CRITERIA[index]
    rng = random.Random(seed * 100 + index)
    tally = Tally()
    try:
        criterion.check(rng, tally)
    except EngineError as e:
        logger.error(f"Selftest criterion '{criterion.name}' raised: {e}")
        return Verdict(name=criterion.name, passed=False, detail=f"{type(e).__name__}: {e}")
    logger.info(f"Selftest '{criterion.name}': {tally.detail}")
    return Verdict(name=criterion.name, passed=not tally.failures, detail=tally.detail)


def selftest_report(seed: int, verdicts: Sequence[Verdict]) -> JobReport:
    table = ReportTable(
        title=f"selftest (seed {seed})",
        columns=["#", "criterion", "result"],
        rows=[
            [str(k + 1), v.name, "PASS" if v.passed else "FAIL"]
            for k, v in enumerate(verdicts)
        ],
    )
    return JobReport(command="selftest", tables=[table], verdicts=list(verdicts))
