"""
I/O utilities for problem specs and reports.

Reads JSON problem specs into validated objects, renders reports as
canonical JSON or text, and writes sweep summaries into timestamped run
directories.
"""

import json
import logging
import math
from datetime import datetime, timezone
from functools import cached_property
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Union

from pydantic import ValidationError

from .enumerators import JacobiSet
from .config import get_config
from .errors import EquicodeError, SpecError
from .frobring import RingZk
from .gcode import Code, code_span
from .harmonic import HarmonicFn
from .models import ProblemSpec, Report, SweepSummary
from .permgrp import HaydenOperator, OrbitPartition, PermGroup, hayden, orbits, parse_group

logger = logging.getLogger(__name__)


class Problem:
    """
    A parsed spec: the code, the acting group G and its chosen subgroup H.

    θ_H is built on first use, so commands that only need the orbits or the
    dual code still run when |H| is not a unit mod k.
    """

    def __init__(self, spec: ProblemSpec, ring: RingZk, group: PermGroup, subgroup: PermGroup, code: Code):
        self.spec = spec
        self.ring = ring
        self.group = group
        self.subgroup = subgroup
        self.code = code

    @cached_property
    def partition(self) -> OrbitPartition:
        return orbits(self.subgroup)

    @cached_property
    def op(self) -> HaydenOperator:
        """θ_H of the subgroup; NotInvertible when gcd(|H|, k) > 1."""
        return hayden(self.ring, self.subgroup)

    def has_projection(self) -> bool:
        return math.gcd(self.subgroup.order, self.ring.k) == 1

    def jacobi_set(self) -> JacobiSet:
        t = self.partition.t
        return JacobiSet(t=t, places=tuple(p for p in self.spec.jacobi_set if p <= t))

    def harmonic(self) -> Optional[HarmonicFn]:
        if self.spec.harmonic is None:
            return None
        try:
            return HarmonicFn.from_json(self.spec.harmonic)
        except (KeyError, ValueError) as e:
            raise SpecError(f"invalid harmonic function: {e}") from e


def parse_problem_spec(data: Union[str, bytes, Dict[str, Any]]) -> ProblemSpec:
    """Validate a spec given as JSON text or an already decoded mapping."""
    try:
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        return ProblemSpec.model_validate(data)
    except json.JSONDecodeError as e:
        raise SpecError(f"spec is not valid JSON: {e}") from e
    except ValidationError as e:
        raise SpecError(f"invalid problem spec: {e}") from e


def load_problem_spec(path: Path) -> ProblemSpec:
    """Read and validate a problem spec file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, PermissionError) as e:
        raise SpecError(f"cannot read spec file {path}: {e}") from e
    logger.debug(f"Loaded problem spec from {path}")
    return parse_problem_spec(text)


def build_problem(spec: ProblemSpec, max_enum: Optional[int] = None) -> Problem:
    """Construct ring, groups and code from a validated spec."""
    ring = RingZk(k=spec.modulus)
    try:
        group = parse_group(spec.length, spec.group or ["()"])
        subgroup = group if spec.subgroup is None else parse_group(spec.length, spec.subgroup or ["()"])
    except ValueError as e:
        raise SpecError(f"invalid group generators: {e}") from e
    outside = [g.cycle_string() for g in subgroup.generators if g not in group.elements]
    if outside:
        raise SpecError(f"subgroup generators {outside} are not elements of the group")
    code = code_span(ring, spec.length, spec.generators, max_enum)
    return Problem(spec=spec, ring=ring, group=group, subgroup=subgroup, code=code)


def dumps_canonical(data: Any) -> str:
    """Sorted-key JSON, so output is byte-identical across runs."""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False)


def _text_value(value: Any) -> str:
    if isinstance(value, str):
        return value.replace("\n", "\n    ")
    return json.dumps(value, sort_keys=True, ensure_ascii=False)


def render_report_text(report: Report) -> str:
    status = "PASS" if report.passed else "FAIL"
    lines = [f"[{status}] {report.flavor}", f"  lhs: {_text_value(report.lhs)}", f"  rhs: {_text_value(report.rhs)}"]
    if report.witness is not None:
        lines.append(f"  witness: {_text_value(report.witness)}")
    for key in sorted(report.details):
        lines.append(f"  {key}: {_text_value(report.details[key])}")
    return "\n".join(lines)


def render_reports(reports: Iterable[Report], fmt: str = "json") -> str:
    reports = list(reports)
    if fmt == "text":
        return "\n".join(render_report_text(r) for r in reports)
    payload = [r.to_json() for r in reports]
    return dumps_canonical(payload[0] if len(payload) == 1 else payload)


def create_run_directory(check: str, seed: int, base_dir: Optional[Path] = None) -> Path:
    """
    Create ``<base_dir>/<check>_seed<seed>_<UTC stamp>`` for one sweep.

    Falls back to the current directory when the base cannot be created.
    """
    base = Path("runs") if base_dir is None else Path(base_dir)
    stamp = datetime.now(timezone.utc).strftime("%Y%m%dT%H%M%SZ")
    run_dir = base / f"{check}_seed{seed}_{stamp}"
    try:
        run_dir.mkdir(parents=True, exist_ok=True)
        logger.info(f"Created run directory: {run_dir}")
    except (OSError, PermissionError) as e:
        logger.error(f"Cannot create run directory {run_dir}: {e}")
        run_dir = Path(".")
    return run_dir


def write_run_metadata(run_dir: Path, check: str, seed: int, count: Optional[int]) -> Path:
    """run.json: what the sweep was asked to do and the sweep settings it ran with."""
    path = run_dir / "run.json"
    write_json({
        "check": check,
        "seed": seed,
        "requested": count,
        "started_at": datetime.now(timezone.utc).isoformat(),
        "sweep_settings": get_config().sweep.model_dump(),
    }, path)
    return path


def write_json(data: Any, path: Path) -> bool:
    """Write canonical JSON; returns False (and logs) on failure."""
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            f.write(dumps_canonical(data) + "\n")
            f.flush()
        logger.info(f"Wrote {path}")
        return True
    except (OSError, PermissionError) as e:
        logger.error(f"Cannot write {path}: {e}")
    except (TypeError, ValueError) as e:
        logger.error(f"Error serializing data for {path}: {e}")
    return False


def write_sweep_summary(summary: SweepSummary, run_dir: Path) -> Path:
    path = run_dir / f"sweep_{summary.check}_{summary.seed}.json"
    write_json(summary.model_dump(), path)
    return path


def write_error_log(error: EquicodeError, run_dir: Path, check: str, seed: int) -> None:
    """Append one JSON line per aborted sweep to errors.jsonl in the run directory."""
    entry = {
        "time": datetime.now(timezone.utc).isoformat(),
        "check": check,
        "seed": seed,
        "error": type(error).__name__,
        "message": str(error),
    }
    error_file = run_dir / "errors.jsonl"
    try:
        with open(error_file, "a", encoding="utf-8") as f:
            f.write(json.dumps(entry, sort_keys=True, ensure_ascii=False) + "\n")
    except (OSError, PermissionError) as e:
        logger.error(f"Cannot write to error log {error_file}: {e}")
        logger.error(f"Original error: {error}")
