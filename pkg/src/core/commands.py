"""Command handlers: one async function per CLI command.

Each handler reads the engine objects the LOAD stage put into the context,
runs the computation off the event loop and returns a ``JobReport``.
Independent per-weight work is fanned out with ``asyncio.to_thread`` under a
semaphore; results are collected in input order.
"""

import asyncio
import logging
from typing import Awaitable, Callable, Dict, List, Optional, Sequence, Tuple, TypeVar

from ..models import AppConfig, JobContext, JobReport, ReportTable, Verdict
from .algebras import StructAlgebra, unitalize
from .complexes import HomologyClassSpace
from .errors import CoefficientModeError, NotCyclicGroup, ValidationFailure
from .fincat import DiagramFunctor, derived_colim
from .freegraded import (
    GradedPresentation,
    hopf_hc_odd,
    hopf_hc_odd_unital,
    lemma56_dimension_check,
)
from .grouphom import (
    FinGroup,
    GModule,
    abelianization_invariants,
    cyclic_generator,
    cyclic_group_oracle,
    group_homology,
)
from .hochcyclic import (
    WeightRow,
    cyclic_weight,
    h1_via_omega,
    hochschild_weight,
    lambda_weight,
    magnus_check,
    sbi_sequence,
)
from .selftest import CRITERIA, run_criterion, selftest_report
from .steinberg import (
    ElementaryMatrixGroupContext,
    gamma_generators_trivial,
    steinberg_relations_check,
)

logger = logging.getLogger(__name__)

T = TypeVar("T")

CommandHandler = Callable[[JobContext, AppConfig], Awaitable[JobReport]]

# Documents each command cannot run without
REQUIRED: Dict[str, Tuple[str, ...]] = {
    "colim": ("category", "functor"),
    "group-homology": ("group",),
    "hochschild": ("algebra",),
    "cyclic": ("algebra",),
    "cyclic-reduced": ("algebra",),
    "hopf": ("presentation",),
    "lemma56": (),
    "magnus-check": ("presentation",),
    "sbi": ("algebra",),
    "steinberg-check": ("ring",),
    "gamma-check": ("ring", "target", "hom"),
    "selftest": (),
}


async def run_parallel(config: AppConfig, calls: Sequence[Callable[[], T]]) -> List[T]:
    """Run blocking calls in worker threads, at most ``config.threads`` at a time."""
    semaphore = asyncio.Semaphore(config.threads)

    async def one(call: Callable[[], T]) -> T:
        async with semaphore:
            return await asyncio.to_thread(call)

    return list(await asyncio.gather(*(one(c) for c in calls)))


def _weight_label(w: Optional[int]) -> str:
    return "-" if w is None else str(w)


def _weights(a: StructAlgebra, max_weight: Optional[int], start: int = 0) -> List[Optional[int]]:
    if max_weight is None:
        return [None]
    if not a.graded:
        raise ValidationFailure("--max-weight needs an algebra with weights")
    return list(range(start, max_weight + 1))


def _dims_table(title: str, prefix: str, rows: Sequence[WeightRow], degrees: int) -> ReportTable:
    return ReportTable(
        title=title,
        columns=["weight"] + [f"{prefix}_{n}" for n in range(degrees + 1)],
        rows=[[_weight_label(r.weight)] + [str(d) for d in r.dims] for r in rows],
    )


def _homology_table(title: str, spaces: Sequence[HomologyClassSpace]) -> ReportTable:
    if spaces and spaces[0].mode == "Z":
        return ReportTable(
            title=title,
            columns=["n", "rank", "torsion", "group"],
            rows=[
                [str(h.degree), str(h.dim), ",".join(str(t) for t in h.torsion) or "-",
                 h.describe()]
                for h in spaces
            ],
        )
    return ReportTable(
        title=title,
        columns=["n", "dim"],
        rows=[[str(h.degree), str(h.dim)] for h in spaces],
    )


# ---------------------------------------------------------------------------
# Derived colimits and group homology
# ---------------------------------------------------------------------------

async def colim_command(ctx: JobContext, config: AppConfig) -> JobReport:
    job = ctx.job
    category = ctx.inputs["category"]
    functor: DiagramFunctor = ctx.inputs["functor"]
    if job.coeff == "Z" and functor.mode == "Q":
        raise CoefficientModeError("Integer coefficients need a functor document with coeff Z")
    if job.coeff == "Q" and functor.mode == "Z":
        functor = functor.to_q()
    spaces = await asyncio.to_thread(
        derived_colim, category, functor, job.max_degree, job.normalized
    )
    logger.info(f"colim over {len(category.objects)} objects: {[h.describe() for h in spaces]}")
    return JobReport(command=job.command, tables=[_homology_table("colim_n", spaces)])


def _module_in_mode(module: GModule, coeff: str) -> GModule:
    if module.mode == coeff:
        return module
    if coeff == "Z":
        raise CoefficientModeError("Integer coefficients need a module document with coeff Z")
    return GModule(module.group, module.rank, tuple(m.to_q() for m in module.action), "Q")


def _cyclic_order(group: FinGroup) -> Optional[int]:
    try:
        cyclic_generator(group, group.order)
    except NotCyclicGroup:
        return None
    return group.order


async def group_homology_command(ctx: JobContext, config: AppConfig) -> JobReport:
    job = ctx.job
    group: FinGroup = ctx.inputs["group"]
    given = ctx.inputs.get("module")
    module = _module_in_mode(given, job.coeff) if given else GModule.trivial(group, 1, job.coeff)
    spaces = await asyncio.to_thread(group_homology, module, job.max_degree)
    report = JobReport(
        command=job.command, tables=[_homology_table(f"H_n({group.name})", spaces)]
    )
    q = _cyclic_order(group)
    if q is not None:
        oracle = await asyncio.to_thread(cyclic_group_oracle, module, q, job.max_degree)
        mismatched = [
            h.degree for h, o in zip(spaces, oracle) if (h.dim, h.torsion) != (o.dim, o.torsion)
        ]
        report.verdicts.append(Verdict(
            name="nerve = periodic resolution",
            passed=not mismatched,
            detail="all degrees agree" if not mismatched else f"degrees {mismatched} differ",
        ))
    if given is None and job.coeff == "Z" and job.max_degree >= 1:
        ab = abelianization_invariants(group)
        h1 = spaces[1]
        passed = (h1.dim, h1.torsion) == (ab.free_rank, ab.torsion)
        report.verdicts.append(Verdict(
            name="H_1 = abelianization",
            passed=passed,
            detail=f"G^ab torsion {list(ab.torsion)}",
        ))
    return report


# ---------------------------------------------------------------------------
# Hochschild and cyclic homology
# ---------------------------------------------------------------------------

async def hochschild_command(ctx: JobContext, config: AppConfig) -> JobReport:
    job = ctx.job
    a: StructAlgebra = ctx.inputs["algebra"]
    module = ctx.inputs.get("bimodule")
    weights = _weights(a, job.max_weight)
    rows = await run_parallel(config, [
        (lambda w=w: hochschild_weight(a, module, job.max_degree, w)) for w in weights
    ])
    report = JobReport(
        command=job.command,
        tables=[_dims_table(f"HH_n({a.name})", "HH", rows, job.max_degree)],
    )
    if job.max_degree >= 1:
        total, omega_h1 = await run_parallel(config, [
            lambda: hochschild_weight(a, module, 1, None).dims[1],
            lambda: h1_via_omega(a, module),
        ])
        report.verdicts.append(Verdict(
            name="H_1 via Ω(A)",
            passed=total == omega_h1,
            detail=f"complex {total}, Ω⊗M {omega_h1}",
        ))
    return report


def _disagreements(left: Sequence[WeightRow], right: Sequence[WeightRow]) -> List[str]:
    return [_weight_label(x.weight) for x, y in zip(left, right) if x.dims != y.dims]


async def cyclic_command(ctx: JobContext, config: AppConfig) -> JobReport:
    job = ctx.job
    a: StructAlgebra = ctx.inputs["algebra"]
    n = job.max_degree
    if a.unital:
        weights = _weights(a, job.max_weight)
        bicomplex = [(lambda w=w: cyclic_weight(a, n, False, w)) for w in weights]
    else:
        plus = unitalize(a)
        weights = _weights(a, job.max_weight, start=1)
        bicomplex = [(lambda w=w: cyclic_weight(plus, n, True, w)) for w in weights]
    lam = [(lambda w=w: lambda_weight(a, n, w)) for w in weights]
    rows = await run_parallel(config, bicomplex + lam)
    via_b, via_l = rows[: len(weights)], rows[len(weights):]
    bad = _disagreements(via_b, via_l)
    return JobReport(
        command=job.command,
        tables=[
            _dims_table(f"HC_n({a.name}) via (b, B) bicomplex", "HC", via_b, n),
            _dims_table(f"HC_n({a.name}) via λ-complex", "HC", via_l, n),
        ],
        verdicts=[Verdict(
            name="bicomplex = λ-complex",
            passed=not bad,
            detail="AGREE" if not bad else f"DISAGREE at weights {bad}",
        )],
    )


async def cyclic_reduced_command(ctx: JobContext, config: AppConfig) -> JobReport:
    job = ctx.job
    a: StructAlgebra = ctx.inputs["algebra"]
    n = job.max_degree
    if not a.unital:
        plus = unitalize(a)
        weights = _weights(a, job.max_weight, start=1)
        rows = await run_parallel(config, [
            (lambda w=w: cyclic_weight(plus, n, True, w)) for w in weights
        ])
        return JobReport(
            command=job.command,
            tables=[_dims_table(f"HC_n({a.name}) = HC̄_n({a.name}_+)", "HC", rows, n)],
        )
    weights = _weights(a, job.max_weight)
    calls = [(lambda w=w: cyclic_weight(a, n, True, w)) for w in weights]
    calls += [(lambda w=w: cyclic_weight(a, n, False, w)) for w in weights]
    rows = await run_parallel(config, calls)
    reduced, full = rows[: len(weights)], rows[len(weights):]
    bad = []
    for r, f in zip(reduced, full):
        ground = [1 if k % 2 == 0 and r.weight in (None, 0) else 0 for k in range(n + 1)]
        if [x - g for x, g in zip(f.dims, ground)] != list(r.dims):
            bad.append(_weight_label(r.weight))
    return JobReport(
        command=job.command,
        tables=[_dims_table(f"HC̄_n({a.name})", "HC̄", reduced, n)],
        verdicts=[Verdict(
            name="HC̄ = HC - HC(Q)",
            passed=not bad,
            detail="AGREE" if not bad else f"DISAGREE at weights {bad}",
        )],
    )


async def hopf_command(ctx: JobContext, config: AppConfig) -> JobReport:
    job = ctx.job
    p: GradedPresentation = ctx.inputs["presentation"]
    w_max = p.free.max_weight
    degree = 2 * job.n + 1
    if p.free.unital:
        hopf = await asyncio.to_thread(hopf_hc_odd_unital, p, job.n, w_max)
        calls = [
            (lambda w=w: cyclic_weight(p.target, degree, True, w)) for w in range(w_max + 1)
        ]
    else:
        hopf = await asyncio.to_thread(hopf_hc_odd, p, job.n, w_max)
        plus = unitalize(p.target)
        calls = [(lambda w=w: cyclic_weight(plus, degree, True, w)) for w in range(1, w_max + 1)]
    cyclic = await run_parallel(config, calls)
    rows, bad = [], []
    for h, c in zip(hopf, cyclic):
        agree = h.dim == c.dims[degree]
        if not agree:
            bad.append(h.weight)
        rows.append([
            str(h.weight), str(h.numerator), str(h.denominator), str(h.dim),
            str(c.dims[degree]), "AGREE" if agree else "DISAGREE",
        ])
    table = ReportTable(
        title=f"HC_{degree} of {p.target.name} from {p.name}",
        columns=["weight", "numerator", "denominator", "hopf", "bicomplex", "verdict"],
        rows=rows,
    )
    return JobReport(
        command=job.command,
        tables=[table],
        verdicts=[Verdict(
            name="hopf formula = bicomplex",
            passed=not bad,
            detail="AGREE" if not bad else f"DISAGREE at weights {bad}",
        )],
    )


async def lemma56_command(ctx: JobContext, config: AppConfig) -> JobReport:
    job = ctx.job
    w_max = job.max_weight if job.max_weight is not None else 6
    rows = await asyncio.to_thread(lemma56_dimension_check, job.generators, w_max)
    table = ReportTable(
        title=f"m^w = necklaces + dim [F,F]_w for m = {job.generators}",
        columns=["weight", "m^w", "necklaces", "[F,F]_w", "holds"],
        rows=[
            [str(r.weight), str(r.total), str(r.necklaces), str(r.commutators),
             "yes" if r.holds else "no"]
            for r in rows
        ],
    )
    failed = [r.weight for r in rows if not r.holds]
    return JobReport(
        command=job.command,
        tables=[table],
        verdicts=[Verdict(
            name="dimension identity",
            passed=not failed,
            detail="holds in every weight" if not failed else f"fails at weights {failed}",
        )],
    )


async def magnus_command(ctx: JobContext, config: AppConfig) -> JobReport:
    job = ctx.job
    p: GradedPresentation = ctx.inputs["presentation"]
    rows = await asyncio.to_thread(magnus_check, p, p.free.max_weight)
    table = ReportTable(
        title=f"H_1(F, A^e) against R/R² for {p.name}",
        columns=["weight", "H_1", "R/R²", "verdict"],
        rows=[
            [str(r.weight), str(r.h1), str(r.quotient), "AGREE" if r.agree else "DISAGREE"]
            for r in rows
        ],
    )
    bad = [r.weight for r in rows if not r.agree]
    return JobReport(
        command=job.command,
        tables=[table],
        verdicts=[Verdict(
            name="H_1(F, A^e) = R/R²",
            passed=not bad,
            detail="AGREE" if not bad else f"DISAGREE at weights {bad}",
        )],
    )


async def sbi_command(ctx: JobContext, config: AppConfig) -> JobReport:
    job = ctx.job
    a: StructAlgebra = ctx.inputs["algebra"]
    weights = _weights(a, job.max_weight)
    results = await run_parallel(config, [
        (lambda w=w: sbi_sequence(a, job.max_degree, w)) for w in weights
    ])
    rows = []
    failures: List[str] = []
    for res in results:
        for n in range(job.max_degree + 1):
            i, s, b = res.ranks(n)
            rows.append([
                _weight_label(res.weight), str(n), str(res.hochschild[n]), str(res.cyclic[n]),
                str(i), str(s), str(b),
            ])
        failures.extend(f"weight {_weight_label(res.weight)}: {f}" for f in res.sequence.failures)
    table = ReportTable(
        title=f"SBI sequence of {a.name}",
        columns=["weight", "n", "HH_n", "HC_n", "rank I", "rank S", "rank B"],
        rows=rows,
    )
    return JobReport(
        command=job.command,
        tables=[table],
        verdicts=[Verdict(
            name="exactness",
            passed=not failures,
            detail="exact at every node" if not failures else failures[0],
        )],
    )


# ---------------------------------------------------------------------------
# Steinberg layer
# ---------------------------------------------------------------------------

async def steinberg_command(ctx: JobContext, config: AppConfig) -> JobReport:
    job = ctx.job
    ring = ctx.inputs["ring"]
    verdict = await asyncio.to_thread(
        steinberg_relations_check, ElementaryMatrixGroupContext(ring, job.size)
    )
    table = ReportTable(
        title=f"Steinberg relations in E_{job.size}({ring.name})",
        columns=["family", "instances", "violations"],
        rows=[
            [family, str(count), str(sum(v.family == family for v in verdict.violations))]
            for family, count in verdict.counts.items()
        ],
    )
    first = verdict.violations[0] if verdict.violations else None
    return JobReport(
        command=job.command,
        tables=[table],
        verdicts=[Verdict(
            name="relations hold",
            passed=verdict.passed,
            detail="all instances hold" if first is None
            else f"{first.family} {first.indices} x={first.x} y={first.y}",
        )],
    )


async def gamma_command(ctx: JobContext, config: AppConfig) -> JobReport:
    job = ctx.job
    b, a, f = ctx.inputs["ring"], ctx.inputs["target"], ctx.inputs["hom"]
    verdict = await asyncio.to_thread(gamma_generators_trivial, b, a, f, job.size)
    table = ReportTable(
        title=f"Γ generators over {verdict.ring}",
        columns=["|D|", "ker f", "pairs", "trivial"],
        rows=[[
            str(len(verdict.kernel) * b.size), ",".join(str(x) for x in verdict.kernel),
            str(verdict.pairs), str(verdict.trivial),
        ]],
    )
    return JobReport(
        command=job.command,
        tables=[table],
        verdicts=[Verdict(
            name="Γ generators trivial",
            passed=verdict.passed,
            detail=f"{verdict.trivial}/{verdict.pairs} commutators are the identity"
            if verdict.passed else verdict.violations[0],
        )],
    )


async def selftest_command(ctx: JobContext, config: AppConfig) -> JobReport:
    seed = ctx.job.seed if ctx.job.seed is not None else config.seed
    verdicts = await run_parallel(config, [
        (lambda k=k: run_criterion(k, seed)) for k in range(len(CRITERIA))
    ])
    return selftest_report(seed, verdicts)


COMMANDS: Dict[str, CommandHandler] = {
    "colim": colim_command,
    "group-homology": group_homology_command,
    "hochschild": hochschild_command,
    "cyclic": cyclic_command,
    "cyclic-reduced": cyclic_reduced_command,
    "hopf": hopf_command,
    "lemma56": lemma56_command,
    "magnus-check": magnus_command,
    "sbi": sbi_command,
    "steinberg-check": steinberg_command,
    "gamma-check": gamma_command,
    "selftest": selftest_command,
}
