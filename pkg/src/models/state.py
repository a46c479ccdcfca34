from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field


class JobSpec(BaseModel):
    """One CLI invocation: the command, its documents and its caps."""
    command: str
    documents: Dict[str, str] = Field(
        default_factory=dict,
        description="Document role (category, functor, ...) -> file path"
    )
    max_degree: int = Field(default=3, ge=0, description="Largest homological degree N")
    max_weight: Optional[int] = Field(
        default=None,
        ge=0,
        description="Largest weight W; None means ungraded output"
    )
    n: int = Field(default=0, ge=0, description="Hopf index n for HC_{2n+1}")
    generators: int = Field(default=1, ge=1, description="Generator count m for lemma56")
    size: int = Field(default=3, ge=3, description="Matrix size N of E_N")
    coeff: Literal["Q", "Z"] = "Q"
    normalized: bool = True
    as_json: bool = False
    seed: Optional[int] = None


class ReportTable(BaseModel):
    title: str
    columns: List[str]
    rows: List[List[str]] = Field(default_factory=list)


class Verdict(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class JobReport(BaseModel):
    """Everything a command prints; no timings or timestamps."""
    command: str
    ok: bool = True
    exit_code: int = 0
    tables: List[ReportTable] = Field(default_factory=list)
    verdicts: List[Verdict] = Field(default_factory=list)
    errors: List[str] = Field(default_factory=list)


class PipelineStage(BaseModel):
    """Tracks the current stage of the job runner."""
    current: str = "IDLE"
    completed: List[str] = Field(default_factory=list)
    errors: List[str] = Field(default_factory=list)


class JobContext(BaseModel):
    """State passed through LOAD -> COMPUTE -> RENDER."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    job: JobSpec
    inputs: Dict[str, Any] = Field(
        default_factory=dict,
        description="Engine objects built from the documents, keyed by role"
    )
    report: Optional[JobReport] = None
    rendered: str = ""
