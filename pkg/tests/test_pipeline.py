"""Job runner stages and the parallel helper."""

import time

import pytest

from src.core.commands import COMMANDS, run_parallel
from src.core.errors import UnknownCommand, ValidationFailure
from src.core.pipeline import JobRunner, Stage
from src.models import AppConfig, JobContext, JobReport, JobSpec, Verdict

DUAL_NUMBERS = {
    "dim": 2,
    "unital": True,
    "unit": [1, 0],
    "table": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
    "weights": [0, 1],
    "name": "Q[e]",
}


async def test_necklace_job_runs_every_stage():
    runner = JobRunner(AppConfig())
    job = JobSpec(command="lemma56", generators=2, max_weight=4)
    ctx = await runner.run(JobContext(job=job))
    assert ctx.report.ok
    assert ctx.report.exit_code == 0
    assert ctx.rendered.startswith("== lemma56 ==")
    assert runner.pipeline_state.completed == ["LOAD", "COMPUTE", "RENDER"]
    assert runner.current_stage == Stage.COMPLETE
    assert [row[0] for row in ctx.report.tables[0].rows] == ["1", "2", "3", "4"]


async def test_unknown_command_fails_at_load():
    runner = JobRunner(AppConfig())
    with pytest.raises(UnknownCommand):
        await runner.run(JobContext(job=JobSpec(command="homotopy")))
    assert runner.current_stage == Stage.ERROR
    assert runner.pipeline_state.errors[0].startswith("LOAD")


async def test_missing_documents_are_reported():
    runner = JobRunner(AppConfig())
    with pytest.raises(ValidationFailure) as info:
        await runner.run(JobContext(job=JobSpec(command="colim")))
    assert "--category" in str(info.value)


async def test_document_job(write_json):
    job = JobSpec(
        command="hochschild",
        documents={"algebra": write_json("a.json", DUAL_NUMBERS)},
        max_degree=2,
    )
    ctx = await JobRunner(AppConfig()).run(JobContext(job=job))
    assert ctx.report.ok
    assert ctx.inputs["algebra"].dim == 2


async def test_json_rendering_round_trips():
    job = JobSpec(command="lemma56", generators=1, max_weight=3, as_json=True)
    ctx = await JobRunner(AppConfig()).run(JobContext(job=job))
    assert JobReport.model_validate_json(ctx.rendered) == ctx.report


async def test_failed_verdict_sets_exit_code(monkeypatch):
    async def broken(ctx, config):
        return JobReport(command="lemma56", verdicts=[Verdict(name="x", passed=False)])

    monkeypatch.setitem(COMMANDS, "lemma56", broken)
    ctx = await JobRunner(AppConfig()).run(JobContext(job=JobSpec(command="lemma56")))
    assert not ctx.report.ok
    assert ctx.report.exit_code == 3


async def test_run_parallel_keeps_order():
    def slow(k):
        time.sleep(0.01 * (3 - k))
        return k

    calls = [(lambda k=k: slow(k)) for k in range(4)]
    assert await run_parallel(AppConfig(threads=2), calls) == [0, 1, 2, 3]
