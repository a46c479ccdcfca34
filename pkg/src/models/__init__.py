"""Pydantic models: settings, input documents and job state."""

from .config import (
    AppConfig,
    CategoryConfig,
    GradedConfig,
    GroupConfig,
    LinalgConfig,
    RingConfig,
    get_config,
    set_config,
)
from .documents import (
    AlgebraDoc,
    BimoduleDoc,
    CategoryDoc,
    FunctorDoc,
    GroupDoc,
    HomomorphismDoc,
    ModuleDoc,
    PresentationDoc,
    RingDoc,
)
from .state import JobContext, JobReport, JobSpec, PipelineStage, ReportTable, Verdict

__all__ = [
    "AppConfig",
    "CategoryConfig",
    "GradedConfig",
    "GroupConfig",
    "LinalgConfig",
    "RingConfig",
    "get_config",
    "set_config",
    "AlgebraDoc",
    "BimoduleDoc",
    "CategoryDoc",
    "FunctorDoc",
    "GroupDoc",
    "HomomorphismDoc",
    "ModuleDoc",
    "PresentationDoc",
    "RingDoc",
    "JobContext",
    "JobReport",
    "JobSpec",
    "PipelineStage",
    "ReportTable",
    "Verdict",
]
