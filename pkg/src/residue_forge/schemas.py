"""Request and response models for the HTTP service and the CLI.

Every response carries "schema": "residue-forge/1". Rationals travel as
exact strings ("p/q", or "p" for integers); u-series as coefficient arrays
indexed by power together with an explicit shift; matrices row-major with
basis labels.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

SCHEMA_ID = "residue-forge/1"

Convention = Literal["hres", "saito", "canonical"]
Suite = Literal["all", "closedness", "flatness-u", "flatness-z", "char-eq", "symmetry"]


class _Response(BaseModel):
    schema_id: str = Field(SCHEMA_ID, serialization_alias="schema")


# -- requests ---------------------------------------------------------------


class MilnorRequest(BaseModel):
    f: str
    vars: Optional[str] = None


class ResidueRequest(BaseModel):
    f: str
    vars: Optional[str] = None
    h: str = "1"
    g: str = "1"


class PairingRequest(BaseModel):
    f: str
    vars: Optional[str] = None
    order: int = Field(4, ge=0)
    convention: Convention = "hres"


class ChernRequest(BaseModel):
    f: str
    vars: Optional[str] = None


class CechOmegaRequest(BaseModel):
    f: str
    vars: Optional[str] = None
    h: str = "1"
    order: int = Field(4, ge=0)
    negate: bool = False


class VerifyRequest(BaseModel):
    f: str
    vars: Optional[str] = None
    suite: Suite = "all"
    order: int = Field(4, ge=0)
    trials: int = Field(25, ge=0)
    seed: int = 0
    etas: Optional[list[str]] = None


# -- responses ----------------------------------------------------------------


class MilnorResponse(_Response):
    command: Literal["milnor"] = "milnor"
    f: str
    vars: list[str]
    mu: int
    basis: list[str]
    jacobian: list[str]


class ResidueResponse(_Response):
    command: Literal["residue"] = "residue"
    f: str
    vars: list[str]
    h: str
    g: str
    value: str


class SeriesPayload(BaseModel):
    shift: int
    coeffs: list[str]
    text: str


class PairingResponse(_Response):
    command: Literal["pairing"] = "pairing"
    f: str
    vars: list[str]
    convention: Convention
    order: int
    mu: int
    shift: int
    basis: list[str]
    matrix: list[list[SeriesPayload]]


class ChernResponse(_Response):
    command: Literal["chern"] = "chern"
    f: str
    vars: list[str]
    copies: list[str]
    delta: str
    hessian: str


class LocalizedPayload(BaseModel):
    num: str
    den_exponents: list[int]


class CechComponentPayload(BaseModel):
    alpha: list[int]
    dx: list[int]
    series: list[LocalizedPayload]


class CechOmegaResponse(_Response):
    command: Literal["cech-omega"] = "cech-omega"
    f: str
    vars: list[str]
    h: str
    order: int
    family: list[str]
    components: list[CechComponentPayload]


class FailurePayload(BaseModel):
    fingerprint: str
    expected: str
    got: str


class ReportPayload(BaseModel):
    suite: str
    f: str
    order: int
    trials: int
    seed: int
    instances: int
    failures: list[FailurePayload]
    smallest_failure: Optional[FailurePayload]
    passed: bool


class VerifyResponse(_Response):
    command: Literal["verify"] = "verify"
    f: str
    vars: list[str]
    suite: Suite
    order: int
    trials: int
    seed: int
    reports: list[ReportPayload]
    passed: bool


class ErrorInfo(BaseModel):
    kind: Literal["parse", "validation", "usage", "internal"]
    message: str
    position: Optional[int] = None
    expected: Optional[list[str]] = None


class ErrorResponse(_Response):
    error: ErrorInfo
