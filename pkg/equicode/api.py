"""
FastAPI front end for equicode.

Stateless REST endpoints taking a ProblemSpec body and returning the same
JSON the command line prints.
"""

from datetime import datetime
from typing import Any, Dict, List, Optional

import uvicorn
from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .enumerators import cwe_g, cwe_h, h_weight_enum, jacobi_poly
from .errors import EquicodeError, SpecError
from .fixtures import run_z4_example
from .gcode import project_theta, verify_hayden, verify_orbit_matrix
from .harmonic import z_poly
from .io_utils import Problem, build_problem
from .lattice import construction_a, verify_glattice_correspondence, verify_lattice_hayden
from .macwilliams import FLAVORS, check_identity, default_harmonic
from .models import ProblemSpec
from .permgrp import HaydenOperator, orbit_length_matrix
from .theta import jacobi_formula_check, verify_jacobi_correspondence, verify_theta_correspondence


class OrbitsResponse(BaseModel):
    group_order: int
    subgroup_order: int
    orbits: str
    orbit_lengths: List[int]
    orbit_length_matrix: str


class EnumeratorResponse(BaseModel):
    flavor: str
    text: str
    poly: Dict[str, Any]


class ExampleResponse(BaseModel):
    passed: bool
    reports: List[Dict[str, Any]]


app = FastAPI(
    title="equicode API",
    description="Equivariant codes, MacWilliams identities and Construction-A lattices",
    version="1.0.0"
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


def _problem(spec: ProblemSpec) -> Problem:
    try:
        return build_problem(spec)
    except SpecError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except EquicodeError as e:
        raise HTTPException(status_code=422, detail=f"{type(e).__name__}: {e}")


def _run(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except SpecError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except EquicodeError as e:
        raise HTTPException(status_code=422, detail=f"{type(e).__name__}: {e}")


def _operator(problem: Problem) -> HaydenOperator:
    return _run(lambda: problem.op)


@app.get("/api/health")
async def health_check():
    """Health check endpoint."""
    return {"status": "healthy", "timestamp": datetime.now().isoformat()}


@app.get("/api/paper-example", response_model=ExampleResponse)
def worked_example():
    """Every value and identity of the worked Z_4 instance."""
    reports = run_z4_example()
    return ExampleResponse(passed=all(r.passed for r in reports), reports=[r.to_json() for r in reports])


@app.post("/api/orbits", response_model=OrbitsResponse)
def orbits(spec: ProblemSpec):
    problem = _problem(spec)
    p = problem.partition
    return OrbitsResponse(
        group_order=problem.group.order,
        subgroup_order=problem.subgroup.order,
        orbits=p.describe(),
        orbit_lengths=list(p.lengths),
        orbit_length_matrix=orbit_length_matrix(p).describe(),
    )


@app.post("/api/project")
def project(spec: ProblemSpec):
    problem = _problem(spec)
    projected = _run(project_theta, problem.code, _operator(problem))
    return {"code": problem.code.summary(), "projection": projected.summary()}


@app.post("/api/enumerators/{flavor}", response_model=EnumeratorResponse)
def enumerator(flavor: str, spec: ProblemSpec):
    """Enumerator of Cθ_H: hamming, cwe, cweg, harmonic or jacobi."""
    problem = _problem(spec)
    d = _run(project_theta, problem.code, _operator(problem))
    if flavor == "hamming":
        poly = h_weight_enum(d)
    elif flavor == "cwe":
        poly = cwe_h(d)
    elif flavor == "cweg":
        poly = _run(cwe_g, d, spec.genus)
    elif flavor == "harmonic":
        f = _run(problem.harmonic) or _run(default_harmonic, d.t, spec.harmonic_degree)
        poly = _run(z_poly, d, f)
    elif flavor == "jacobi":
        poly = _run(jacobi_poly, d, problem.jacobi_set())
    else:
        raise HTTPException(status_code=404, detail=f"Unknown enumerator flavor {flavor}")
    return EnumeratorResponse(flavor=flavor, text=poly.to_text(), poly=poly.to_json())


CHECK_NAMES = ("hayden", "orbit-matrix", "glattice", "lattice-hayden", "theta", "jacobi-theta",
               "jacobi-formula") + tuple(f"mw-{f}" for f in FLAVORS)


@app.post("/api/checks/{check}")
def run_check(check: str, spec: ProblemSpec, cutoff: Optional[str] = None, tol: Optional[float] = None,
              cross_validate: bool = False):
    """Run one identity check and return its report; a failed identity is still HTTP 200."""
    if check not in CHECK_NAMES:
        raise HTTPException(status_code=404, detail=f"Unknown check {check}; expected one of {list(CHECK_NAMES)}")
    problem = _problem(spec)
    code = problem.code
    if check == "jacobi-formula":
        return _run(jacobi_formula_check, construction_a(code), 1j, tol).to_json()
    op = _operator(problem)
    if check == "hayden":
        report = _run(verify_hayden, code, op)
    elif check == "orbit-matrix":
        report = _run(verify_orbit_matrix, code, op)
    elif check == "glattice":
        report = _run(verify_glattice_correspondence, code, problem.group, op)
    elif check == "lattice-hayden":
        report = _run(verify_lattice_hayden, construction_a(code), op.matrix_real, op.partition)
    elif check == "theta":
        report = _run(verify_theta_correspondence, code, op, spec.genus if spec.genus <= 2 else 2, cutoff)
    elif check == "jacobi-theta":
        report = _run(verify_jacobi_correspondence, code, op, problem.jacobi_set(), cutoff)
    else:
        report = _run(
            check_identity,
            check[len("mw-"):],
            code,
            op,
            genus=spec.genus,
            harmonic=_run(problem.harmonic),
            harmonic_degree=spec.harmonic_degree,
            jacobi_set=problem.jacobi_set(),
            cross_validate=cross_validate,
        )
    return report.to_json()


if __name__ == "__main__":
    uvicorn.run(app, host="0.0.0.0", port=8000)
