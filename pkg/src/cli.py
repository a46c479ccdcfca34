"""homalg - command-line entry point.

Usage:
    homalg colim --category c.json --functor m.json --max-degree 3 --coeff Z
    homalg hopf --presentation p.json --n 0 --max-weight 6
    homalg selftest --seed 7
"""

import argparse
import asyncio
import logging
import os
import sys
from typing import Dict, List, Optional

from dotenv import load_dotenv
from pydantic import ValidationError

from .core.errors import EngineError
from .core.pipeline import JobRunner
from .models import AppConfig, JobContext, JobReport, JobSpec, set_config
from .services.report_service import render_json

logger = logging.getLogger(__name__)

DOCUMENT_FLAGS = (
    "category", "functor", "group", "module", "algebra", "bimodule",
    "presentation", "ring", "target", "hom",
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homalg",
        description="Exact derived colimits, group homology and cyclic homology.",
    )
    parser.add_argument("command", help="colim, group-homology, hochschild, cyclic, ...")
    docs = parser.add_argument_group("documents")
    for role in DOCUMENT_FLAGS:
        docs.add_argument(f"--{role}", metavar="PATH", help=f"{role} JSON document")
    parser.add_argument("--max-degree", type=int, default=3, help="largest degree N")
    parser.add_argument("--max-weight", type=int, default=None, help="largest weight W")
    parser.add_argument("--n", type=int, default=0, help="Hopf index: computes HC_{2n+1}")
    parser.add_argument("--generators", type=int, default=1, help="generator count for lemma56")
    parser.add_argument("--size", type=int, default=None, help="matrix size N of E_N")
    parser.add_argument("--coeff", choices=("Q", "Z"), default="Q")
    parser.add_argument("--unnormalized", action="store_true", help="use the full nerve")
    parser.add_argument("--json", action="store_true", help="machine-readable report")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--threads", type=int, default=None)
    parser.add_argument("--verbose", action="store_true", help="log INFO to stderr")
    parser.add_argument("--debug", action="store_true", help="log DEBUG to stderr")
    return parser


def configure_logging(verbose: bool, debug: bool) -> None:
    if debug or os.getenv("HOMALG_DEBUG", "").lower() in ("1", "true", "yes"):
        level = logging.DEBUG
    elif verbose:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def job_from_args(args: argparse.Namespace, config: AppConfig) -> JobSpec:
    documents: Dict[str, str] = {
        role: path for role in DOCUMENT_FLAGS if (path := getattr(args, role)) is not None
    }
    return JobSpec(
        command=args.command,
        documents=documents,
        max_degree=args.max_degree,
        max_weight=args.max_weight,
        n=args.n,
        generators=args.generators,
        size=args.size if args.size is not None else config.ring.matrix_size,
        coeff=args.coeff,
        normalized=not args.unnormalized,
        as_json=args.json,
        seed=args.seed,
    )


def _fail(command: str, exit_code: int, message: str, as_json: bool) -> int:
    if as_json:
        report = JobReport(command=command, ok=False, exit_code=exit_code, errors=[message])
        sys.stdout.write(render_json(report))
    else:
        print(f"error: {message}", file=sys.stderr)
    return exit_code


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose, args.debug)

    try:
        overrides = {"threads": args.threads} if args.threads is not None else {}
        config = AppConfig(**overrides)
        set_config(config)
        job = job_from_args(args, config)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"])
        return _fail(args.command, 2, f"{where}: {first['msg']}", args.json)

    try:
        ctx = asyncio.run(JobRunner(config).run(JobContext(job=job)))
    except EngineError as e:
        return _fail(job.command, e.exit_code, str(e), job.as_json)
    except Exception as e:
        logger.exception("Internal error")
        return _fail(job.command, 3, f"internal error: {e}", job.as_json)

    sys.stdout.write(ctx.rendered)
    assert ctx.report is not None
    return ctx.report.exit_code


if __name__ == "__main__":
    sys.exit(main())
