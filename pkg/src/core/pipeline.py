"""Job Runner - state machine for one CLI invocation.

LOAD reads and validates the documents, COMPUTE runs the command handler,
RENDER turns the report into text or JSON. Every stage is an async
``(JobContext, AppConfig) -> JobContext`` function.
"""

import logging
from enum import Enum, auto
from typing import Awaitable, Callable, Dict

from ..models import AppConfig, JobContext, PipelineStage
from ..services.document_service import DocumentService
from ..services.report_service import render
from .commands import COMMANDS, REQUIRED
from .errors import EngineError, UnknownCommand, ValidationFailure

logger = logging.getLogger(__name__)


class Stage(Enum):
    """Job stages in execution order."""
    IDLE = auto()
    LOAD = auto()
    COMPUTE = auto()
    RENDER = auto()
    COMPLETE = auto()
    ERROR = auto()


StageHandler = Callable[[JobContext, AppConfig], Awaitable[JobContext]]


async def load_documents(ctx: JobContext, config: AppConfig) -> JobContext:
    """Build engine objects for every document the job names."""
    job = ctx.job
    missing = [role for role in REQUIRED[job.command] if role not in job.documents]
    if missing:
        flags = ", ".join(f"--{role}" for role in missing)
        raise ValidationFailure(f"{job.command} needs {flags}", location="arguments")
    inputs = DocumentService(job.documents).load_all(max_weight=job.max_weight)
    return ctx.model_copy(update={"inputs": inputs})


async def compute(ctx: JobContext, config: AppConfig) -> JobContext:
    """Run the command handler; a failed verdict marks the report as an oracle mismatch."""
    report = await COMMANDS[ctx.job.command](ctx, config)
    failed = [v.name for v in report.verdicts if not v.passed]
    if failed:
        logger.warning(f"{ctx.job.command}: failed verdicts {failed}")
        report = report.model_copy(update={"ok": False, "exit_code": 3})
    return ctx.model_copy(update={"report": report})


async def render_report(ctx: JobContext, config: AppConfig) -> JobContext:
    assert ctx.report is not None
    return ctx.model_copy(update={"rendered": render(ctx.report, ctx.job.as_json)})


class JobRunner:
    """State machine for a single job.

    Manages the flow: IDLE → LOAD → COMPUTE → RENDER → COMPLETE

    Usage:
        runner = JobRunner(config)
        ctx = await runner.run(JobContext(job=JobSpec(command="lemma56", generators=2)))
        print(ctx.rendered, end="")
    """

    TRANSITIONS: Dict[Stage, Stage] = {
        Stage.IDLE: Stage.LOAD,
        Stage.LOAD: Stage.COMPUTE,
        Stage.COMPUTE: Stage.RENDER,
        Stage.RENDER: Stage.COMPLETE,
    }

    HANDLERS: Dict[Stage, StageHandler] = {
        Stage.LOAD: load_documents,
        Stage.COMPUTE: compute,
        Stage.RENDER: render_report,
    }

    def __init__(self, config: AppConfig):
        self.config = config
        self._current_stage = Stage.IDLE
        self._pipeline_state = PipelineStage()

    @property
    def current_stage(self) -> Stage:
        return self._current_stage

    @property
    def pipeline_state(self) -> PipelineStage:
        return self._pipeline_state

    def _validate_preconditions(self, ctx: JobContext) -> None:
        if self._current_stage == Stage.LOAD:
            if ctx.job.command not in COMMANDS:
                raise UnknownCommand(
                    f"Unknown command '{ctx.job.command}'; expected one of {sorted(COMMANDS)}"
                )
        elif self._current_stage == Stage.COMPUTE:
            missing = [r for r in REQUIRED[ctx.job.command] if r not in ctx.inputs]
            if missing:
                raise ValidationFailure(f"Documents not loaded: {missing}")
        elif self._current_stage == Stage.RENDER:
            if ctx.report is None:
                raise ValidationFailure("No report to render. COMPUTE stage may have failed.")

    async def _execute_stage(self, ctx: JobContext) -> JobContext:
        handler = self.HANDLERS.get(self._current_stage)
        if handler is None:
            logger.debug(f"No handler for stage {self._current_stage.name}, skipping")
            return ctx

        logger.info(f"Executing stage: {self._current_stage.name}")
        try:
            self._validate_preconditions(ctx)
            updated = await handler(ctx, self.config)
            self._pipeline_state.completed.append(self._current_stage.name)
            return updated
        except EngineError as e:
            logger.error(f"Stage {self._current_stage.name} failed: {e}")
            self._pipeline_state.errors.append(f"{self._current_stage.name}: {e}")
            self._current_stage = Stage.ERROR
            raise

    def _transition(self) -> None:
        next_stage = self.TRANSITIONS.get(self._current_stage)
        if next_stage is None:
            logger.warning(f"No transition defined from {self._current_stage.name}")
            return
        logger.debug(f"Transitioning: {self._current_stage.name} → {next_stage.name}")
        self._current_stage = next_stage
        self._pipeline_state.current = next_stage.name

    async def run(self, ctx: JobContext) -> JobContext:
        """Execute the job from IDLE to COMPLETE.

        Args:
            ctx: JobContext holding the JobSpec

        Returns:
            Final JobContext with the report and its rendering

        Raises:
            EngineError: If a stage fails; ``exit_code`` tells the CLI how
        """
        self._current_stage = Stage.IDLE
        self._pipeline_state = PipelineStage(current="IDLE")
        logger.info(f"Starting job: {ctx.job.command}")

        while self._current_stage not in (Stage.COMPLETE, Stage.ERROR):
            self._transition()
            ctx = await self._execute_stage(ctx)

        logger.info(f"Job {ctx.job.command} completed")
        return ctx

    async def run_stage(self, stage: Stage, ctx: JobContext) -> JobContext:
        """Execute a single stage (for testing or manual control)."""
        self._current_stage = stage
        return await self._execute_stage(ctx)
