"""Transport-free implementations of every service command.

The FastAPI app and the CLI both call these functions; that is what makes
local and remote runs byte-identical.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .cech import omega_rep
from .errors import InputValidationError
from .pairing import chern_delta, get_milnor, pairing_matrix
from .parse import parse_poly, parse_var_names
from .poly import MultiPoly, VarSet, det_bareiss
from .residue import res_pairing
from .schemas import (
    CechComponentPayload,
    CechOmegaRequest,
    CechOmegaResponse,
    ChernRequest,
    ChernResponse,
    FailurePayload,
    LocalizedPayload,
    MilnorRequest,
    MilnorResponse,
    PairingRequest,
    PairingResponse,
    ReportPayload,
    ResidueRequest,
    ResidueResponse,
    SeriesPayload,
    VerifyRequest,
    VerifyResponse,
)
from .series import USeries
from .verify import run_suite

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def resolve_vars(f_text: str, vars_text: str | None) -> VarSet:
    """Declared variables, or the identifiers of f in order of first
    appearance when the declaration is omitted."""
    if vars_text is not None:
        return VarSet(parse_var_names(vars_text))
    seen: list[str] = []
    for name in _IDENT_RE.findall(f_text):
        if name not in seen:
            seen.append(name)
    if not seen:
        raise InputValidationError(
            "cannot infer variables from %r; pass an explicit list" % f_text
        )
    return VarSet(seen)


def format_series_text(coeffs: list[Fraction], shift: int) -> str:
    parts = [
        "%s u^%d" % (c, k + shift) for k, c in enumerate(coeffs) if c
    ]
    return " + ".join(parts) if parts else "0"


def series_payload(core: USeries, shift: int) -> SeriesPayload:
    coeffs = list(core.coeffs)
    return SeriesPayload(
        shift=shift,
        coeffs=[str(c) for c in coeffs],
        text=format_series_text(coeffs, shift),
    )


def run_milnor(req: MilnorRequest) -> MilnorResponse:
    vs = resolve_vars(req.f, req.vars)
    f = parse_poly(req.f, vs)
    milnor = get_milnor(f)
    return MilnorResponse(
        f=str(f),
        vars=list(vs.active),
        mu=milnor.mu,
        basis=[str(p) for p in milnor.basis_polys()],
        jacobian=[str(p) for p in milnor.jacobian],
    )


def run_residue(req: ResidueRequest) -> ResidueResponse:
    vs = resolve_vars(req.f, req.vars)
    f = parse_poly(req.f, vs)
    h = parse_poly(req.h, vs)
    g = parse_poly(req.g, vs)
    get_milnor(f)
    value = res_pairing(f, h, g)
    return ResidueResponse(
        f=str(f), vars=list(vs.active), h=str(h), g=str(g), value=str(value)
    )


def run_pairing(req: PairingRequest) -> PairingResponse:
    vs = resolve_vars(req.f, req.vars)
    f = parse_poly(req.f, vs)
    milnor = get_milnor(f)
    matrix = pairing_matrix(f, req.order, req.convention, milnor)
    return PairingResponse(
        f=str(f),
        vars=list(vs.active),
        convention=req.convention,
        order=req.order,
        mu=milnor.mu,
        shift=matrix.shift,
        basis=list(matrix.basis),
        matrix=[
            [series_payload(entry, matrix.shift) for entry in row]
            for row in matrix.entries
        ],
    )


def run_chern(req: ChernRequest) -> ChernResponse:
    vs = resolve_vars(req.f, req.vars)
    f = parse_poly(req.f, vs)
    kernel = chern_delta(f)
    hessian = det_bareiss([[f.diff(a).diff(b) for b in vs.active] for a in vs.active])
    return ChernResponse(
        f=str(f),
        vars=list(vs.active),
        copies=list(kernel.copies),
        delta=str(kernel.delta),
        hessian=str(hessian),
    )


def run_cech_omega(req: CechOmegaRequest) -> CechOmegaResponse:
    vs = resolve_vars(req.f, req.vars)
    f = parse_poly(req.f, vs)
    h = parse_poly(req.h, vs)
    get_milnor(f)
    element = omega_rep(f, h, req.order, negate=req.negate)
    components = []
    for key in element.sorted_keys():
        s, t = key
        series = element.components[key]
        components.append(
            CechComponentPayload(
                alpha=[i + 1 for i in s],
                dx=[i + 1 for i in t],
                series=[
                    LocalizedPayload(num=str(c.num), den_exponents=list(c.m))
                    for c in series.coeffs
                ],
            )
        )
    return CechOmegaResponse(
        f=str(f),
        vars=list(vs.active),
        h=str(h),
        order=req.order,
        family=[str(p) for p in element.family.polys],
        components=components,
    )


def run_verify(req: VerifyRequest) -> VerifyResponse:
    vs = resolve_vars(req.f, req.vars)
    f = parse_poly(req.f, vs)
    etas = None
    if req.etas is not None:
        etas = [parse_poly(text, vs) for text in req.etas]
    reports = run_suite(f, req.suite, req.order, req.trials, req.seed, etas)
    payloads = []
    for rep in reports:
        d = rep.to_dict()
        payloads.append(
            ReportPayload(
                suite=d["suite"],
                f=d["f"],
                order=d["order"],
                trials=d["trials"],
                seed=d["seed"],
                instances=d["instances"],
                failures=[FailurePayload(**x) for x in d["failures"]],
                smallest_failure=(
                    FailurePayload(**d["smallest_failure"])
                    if d["smallest_failure"]
                    else None
                ),
                passed=d["passed"],
            )
        )
    return VerifyResponse(
        f=str(f),
        vars=list(vs.active),
        suite=req.suite,
        order=req.order,
        trials=req.trials,
        seed=req.seed,
        reports=payloads,
        passed=all(p.passed for p in payloads),
    )
