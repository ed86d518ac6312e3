"""HTTP front of the engine: one POST route per command under /v1.

Error mapping: parse errors 400, domain/usage rejections 422, broken
internal invariants 500. A verify run that merely found counterexamples is
still a successful run (200 with passed=false).
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from . import service
from .errors import (
    InputValidationError,
    InternalInvariantError,
    ParseError,
    ResidueForgeError,
    UsageError,
)
from .schemas import (
    CechOmegaRequest,
    CechOmegaResponse,
    ChernRequest,
    ChernResponse,
    ErrorInfo,
    ErrorResponse,
    MilnorRequest,
    MilnorResponse,
    PairingRequest,
    PairingResponse,
    ResidueRequest,
    ResidueResponse,
    VerifyRequest,
    VerifyResponse,
)

app = FastAPI(title="residue-forge", version="0.1.0")


def error_payload(exc: ResidueForgeError) -> ErrorResponse:
    if isinstance(exc, ParseError):
        return ErrorResponse(
            error=ErrorInfo(
                kind="parse",
                message=exc.message,
                position=exc.position,
                expected=list(exc.expected) or None,
            )
        )
    if isinstance(exc, InputValidationError):
        return ErrorResponse(error=ErrorInfo(kind="validation", message=str(exc)))
    if isinstance(exc, UsageError):
        return ErrorResponse(error=ErrorInfo(kind="usage", message=str(exc)))
    return ErrorResponse(error=ErrorInfo(kind="internal", message=str(exc)))


def http_status(exc: ResidueForgeError) -> int:
    if isinstance(exc, ParseError):
        return 400
    if isinstance(exc, (InputValidationError, UsageError)):
        return 422
    return 500


@app.exception_handler(ResidueForgeError)
async def engine_error_handler(request: Request, exc: ResidueForgeError) -> JSONResponse:
    return JSONResponse(
        status_code=http_status(exc),
        content=error_payload(exc).model_dump(by_alias=True),
    )


@app.exception_handler(RequestValidationError)
async def request_shape_handler(request: Request, exc: RequestValidationError) -> JSONResponse:
    # malformed request bodies get the same envelope as engine rejections
    payload = ErrorResponse(error=ErrorInfo(kind="usage", message=str(exc.errors())))
    return JSONResponse(status_code=422, content=payload.model_dump(by_alias=True))


@app.post("/v1/milnor", response_model=MilnorResponse, response_model_by_alias=True)
def milnor(req: MilnorRequest) -> MilnorResponse:
    return service.run_milnor(req)


@app.post("/v1/residue", response_model=ResidueResponse, response_model_by_alias=True)
def residue(req: ResidueRequest) -> ResidueResponse:
    return service.run_residue(req)


@app.post("/v1/pairing", response_model=PairingResponse, response_model_by_alias=True)
def pairing(req: PairingRequest) -> PairingResponse:
    return service.run_pairing(req)


@app.post("/v1/chern", response_model=ChernResponse, response_model_by_alias=True)
def chern(req: ChernRequest) -> ChernResponse:
    return service.run_chern(req)


@app.post("/v1/cech-omega", response_model=CechOmegaResponse, response_model_by_alias=True)
def cech_omega(req: CechOmegaRequest) -> CechOmegaResponse:
    return service.run_cech_omega(req)


@app.post("/v1/verify", response_model=VerifyResponse, response_model_by_alias=True)
def verify(req: VerifyRequest) -> VerifyResponse:
    return service.run_verify(req)


@app.get("/v1/health")
def health() -> dict:
    return {"schema": "residue-forge/1", "status": "ok"}
