"""FastAPI report service for alm-workbench."""

from __future__ import annotations

import argparse
import os
import sys
from typing import Any

import uvicorn
from fastapi import FastAPI, HTTPException
from opentelemetry.instrumentation.fastapi import FastAPIInstrumentor
from pydantic import BaseModel

from alm_workbench import __version__
from alm_workbench.algebra import FiniteAlgebra, parse_algebra
from alm_workbench.axioms import check_al_monoid
from alm_workbench.errors import AlmError
from alm_workbench.ideals import classify_all, distant_pairs, enumerate_ideals, radical
from alm_workbench.logs import log
from alm_workbench.spectrum import minimal_maximal_primes, separation_check, spectrum
from alm_workbench.theorems import verify_algebra
from alm_workbench.tracing import algebra_span, setup_tracing

# Initialize tracing
setup_tracing()

app = FastAPI(
    title="alm-workbench",
    description="Axiom, ideal, spectrum and theorem reports for finite AL-monoids",
    version=__version__,
    root_path=os.environ.get("ROOT_PATH", ""),
)

# Instrument FastAPI with OpenTelemetry
FastAPIInstrumentor.instrument_app(app)


class AlgebraDocument(BaseModel):
    document: str
    theorems: list[str] | None = None


def _parse(body: AlgebraDocument) -> FiniteAlgebra:
    try:
        return parse_algebra(body.document)
    except AlmError as e:
        raise HTTPException(status_code=422, detail=str(e)) from e


@app.get("/health")
async def health() -> dict[str, str]:
    """Health check endpoint."""
    return {"status": "healthy", "version": __version__}


@app.post("/api/check")
async def api_check(body: AlgebraDocument) -> dict[str, Any]:
    alg = _parse(body)
    with algebra_span("api.check", alg):
        return check_al_monoid(alg).to_dict()


@app.post("/api/ideals")
async def api_ideals(body: AlgebraDocument) -> dict[str, Any]:
    alg = _parse(body)
    with algebra_span("api.ideals", alg):
        try:
            ideals = classify_all(alg, enumerate_ideals(alg))
        except AlmError as e:
            raise HTTPException(status_code=422, detail=str(e)) from e
        return {
            "algebra": alg.name,
            "ideals": [I.to_dict() for I in ideals],
            "radical": list(radical(alg, ideals).labels()),
            "distant": distant_pairs(alg, ideals).to_dict(),
        }


@app.post("/api/spectrum")
async def api_spectrum(body: AlgebraDocument) -> dict[str, Any]:
    alg = _parse(body)
    with algebra_span("api.spectrum", alg):
        try:
            spec = spectrum(alg)
        except AlmError as e:
            raise HTTPException(status_code=422, detail=str(e)) from e
        return {
            "spectrum": spec.to_dict(),
            "separation": separation_check(alg, spec).to_dict(),
            "extremes": minimal_maximal_primes(alg, spec).to_dict(spec),
        }


@app.post("/api/verify")
async def api_verify(body: AlgebraDocument) -> dict[str, Any]:
    alg = _parse(body)
    try:
        return verify_algebra(alg, body.theorems).to_dict()
    except AlmError as e:
        raise HTTPException(status_code=422, detail=str(e)) from e


def main() -> int:
    """Run the report service."""
    parser = argparse.ArgumentParser(description="alm-workbench report service")
    parser.add_argument(
        "-p",
        "--port",
        type=int,
        default=int(os.environ.get("PORT", "8000")),
        help="Port to listen on (default: 8000)",
    )
    parser.add_argument(
        "--host",
        default=os.environ.get("HOST", "0.0.0.0"),
        help="Host to bind to (default: 0.0.0.0)",
    )
    args = parser.parse_args()

    log(f"Starting alm-workbench reports on http://{args.host}:{args.port}")
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


if __name__ == "__main__":
    sys.exit(main())
