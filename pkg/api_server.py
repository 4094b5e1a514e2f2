"""
FastAPI backend for the maximal-subalgebra workbench
"""

import os
from typing import Any, Dict

from fastapi import Body, FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware

from src.parsers.commands import (
    ConductorCommand,
    CrucialCommand,
    CurveInfinityCommand,
    DefinedAtCommand,
    EquivCommand,
    GeneratorsCommand,
    MemberCommand,
    PuiseuxCommand,
    TangencyCommand,
)
from src.utils.config import get_settings
from src.utils.logging_setup import setup_logging
from src.workbench import EXIT_ERROR, MaxsubWorkbench

DEFAULT_CORS_ORIGINS = "http://localhost:3000,http://localhost:3001"

app = FastAPI(title="Maximal Subalgebra Workbench API")

# CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=[o.strip() for o in os.getenv("MAXSUB_CORS_ORIGINS", DEFAULT_CORS_ORIGINS).split(",") if o.strip()],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


def _run(command: Any) -> Dict[str, Any]:
    """Run a command; domain errors become HTTP 400, Undetermined stays a 200 payload."""
    code, payload = MaxsubWorkbench(get_settings()).run(command)
    if code == EXIT_ERROR:
        raise HTTPException(status_code=400, detail=payload)
    return payload


@app.get("/")
def root():
    return {"message": "Maximal Subalgebra Workbench API", "version": "1.0"}


@app.get("/health")
def health_check():
    settings = get_settings()
    return {
        "status": "healthy",
        "precision_cap": str(settings.precision_cap),
        "field": f"zeta:{settings.field_conductor}",
    }


@app.post("/api/member")
def member(request: MemberCommand):
    return _run(request)


@app.post("/api/crucial")
def crucial(request: CrucialCommand):
    return _run(request)


@app.post("/api/conductor")
def conductor(request: ConductorCommand):
    return _run(request)


@app.post("/api/generators")
def generators(request: GeneratorsCommand):
    return _run(request)


@app.post("/api/equiv")
def equiv(request: EquivCommand):
    return _run(request)


@app.post("/api/puiseux")
def puiseux(request: PuiseuxCommand):
    return _run(request)


@app.post("/api/curve-infinity")
def curve_infinity(request: CurveInfinityCommand):
    return _run(request)


@app.post("/api/defined-at")
def defined_at(request: DefinedAtCommand):
    return _run(request)


@app.post("/api/tangency")
def tangency(request: TangencyCommand):
    return _run(request)


@app.post("/api/run")
def run_command(document: Dict[str, Any] = Body(...)):
    """Any command document, tagged by its ``command`` field."""
    return _run(document)


if __name__ == "__main__":
    import uvicorn

    setup_logging()
    uvicorn.run(app, host=os.getenv("MAXSUB_API_HOST", "0.0.0.0"), port=int(os.getenv("MAXSUB_API_PORT", "8000")))
