"""Command-line client.

By default commands run in-process through the same service layer the HTTP
app uses; --url sends the identical request to a running server instead.
Exit codes: 0 success, 1 rejected input, 2 parse error, 3 a verify suite
found a counterexample, 4 broken internal invariant.
"""

from __future__ import annotations

import argparse
import json
import sys
import urllib.error
import urllib.request

from . import service
from .api import error_payload
from .errors import (
    InputValidationError,
    InternalInvariantError,
    ParseError,
    ResidueForgeError,
    UsageError,
)
from .schemas import (
    CechOmegaRequest,
    ChernRequest,
    MilnorRequest,
    PairingRequest,
    ResidueRequest,
    VerifyRequest,
)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_PARSE = 2
EXIT_COUNTEREXAMPLE = 3
EXIT_INTERNAL = 4

_CONVENTION_ALIASES = ("saito", "hres", "canonical")


def _exit_code(exc: ResidueForgeError) -> int:
    if isinstance(exc, ParseError):
        return EXIT_PARSE
    if isinstance(exc, (InputValidationError, UsageError)):
        return EXIT_VALIDATION
    return EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="residue-forge",
        description="Exact residue pairings of an isolated singularity.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--f", required=True, help="polynomial, e.g. 'x^3+y^3'")
        p.add_argument(
            "--vars",
            default=None,
            help="comma-separated active variables; inferred from --f when omitted",
        )
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--url", default=None, help="base URL of a running server")

    p = sub.add_parser("milnor", help="Milnor number and monomial basis")
    common(p)

    p = sub.add_parser("residue", help="residue pairing of h and g")
    common(p)
    p.add_argument("--h", default="1")
    p.add_argument("--g", default="1")

    p = sub.add_parser(
        "pairing",
        aliases=list(_CONVENTION_ALIASES),
        help="pairing matrix on the Milnor basis (aliases pick the convention)",
    )
    common(p)
    p.add_argument("--order", type=int, default=4)
    p.add_argument("--convention", choices=_CONVENTION_ALIASES, default=None)

    p = sub.add_parser("chern", help="divided-difference diagonal kernel")
    common(p)

    p = sub.add_parser("cech-omega", help="global representative of h dx")
    common(p)
    p.add_argument("--h", default="1")
    p.add_argument("--order", type=int, default=4)

    p = sub.add_parser("verify", help="identity suites")
    common(p)
    p.add_argument(
        "--suite",
        choices=("all", "closedness", "flatness-u", "flatness-z", "char-eq", "symmetry"),
        default="all",
    )
    p.add_argument("--order", type=int, default=4)
    p.add_argument("--trials", type=int, default=25)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--etas", default=None, help="comma-separated sections; Milnor basis when omitted")
    return parser


def _build_request(args: argparse.Namespace):
    cmd = args.command
    if cmd == "milnor":
        return "milnor", MilnorRequest(f=args.f, vars=args.vars)
    if cmd == "residue":
        return "residue", ResidueRequest(f=args.f, vars=args.vars, h=args.h, g=args.g)
    if cmd == "pairing" or cmd in _CONVENTION_ALIASES:
        convention = args.convention
        if convention is None:
            convention = cmd if cmd in _CONVENTION_ALIASES else "hres"
        return "pairing", PairingRequest(
            f=args.f, vars=args.vars, order=args.order, convention=convention
        )
    if cmd == "chern":
        return "chern", ChernRequest(f=args.f, vars=args.vars)
    if cmd == "cech-omega":
        return "cech-omega", CechOmegaRequest(
            f=args.f, vars=args.vars, h=args.h, order=args.order
        )
    if cmd == "verify":
        etas = args.etas.split(",") if args.etas else None
        return "verify", VerifyRequest(
            f=args.f,
            vars=args.vars,
            suite=args.suite,
            order=args.order,
            trials=args.trials,
            seed=args.seed,
            etas=etas,
        )
    raise UsageError("unknown command %r" % cmd)


_RUNNERS = {
    "milnor": service.run_milnor,
    "residue": service.run_residue,
    "pairing": service.run_pairing,
    "chern": service.run_chern,
    "cech-omega": service.run_cech_omega,
    "verify": service.run_verify,
}


def _render_text(payload: dict) -> str:
    cmd = payload.get("command")
    lines: list[str] = []
    if cmd == "milnor":
        lines.append("f = %s over (%s)" % (payload["f"], ", ".join(payload["vars"])))
        lines.append("mu = %d" % payload["mu"])
        lines.append("basis: %s" % ", ".join(payload["basis"]))
    elif cmd == "residue":
        lines.append("Res[%s * %s] = %s" % (payload["h"], payload["g"], payload["value"]))
    elif cmd == "pairing":
        lines.append(
            "%s pairing, order %d, basis %s"
            % (payload["convention"], payload["order"], ", ".join(payload["basis"]))
        )
        for label, row in zip(payload["basis"], payload["matrix"]):
            lines.append("%s: %s" % (label, " | ".join(e["text"] for e in row)))
    elif cmd == "chern":
        lines.append("delta = %s" % payload["delta"])
        lines.append("copies: %s" % ", ".join(payload["copies"]))
    elif cmd == "cech-omega":
        lines.append("family: %s" % "; ".join(payload["family"]))
        for comp in payload["components"]:
            gens = ["a%d" % i for i in comp["alpha"]] + ["dx%d" % i for i in comp["dx"]]
            terms = [
                "u^%d: (%s)/den^%s" % (k, c["num"], c["den_exponents"])
                for k, c in enumerate(comp["series"])
            ]
            lines.append("[%s] %s" % (" ".join(gens) or "1", "; ".join(terms)))
    elif cmd == "verify":
        for rep in payload["reports"]:
            lines.append(
                "%s: %s (%d checks, %d failures)"
                % (
                    rep["suite"],
                    "pass" if rep["passed"] else "FAIL",
                    rep["instances"],
                    len(rep["failures"]),
                )
            )
            if rep["smallest_failure"]:
                lines.append("  smallest: %s" % rep["smallest_failure"]["fingerprint"])
        lines.append("overall: %s" % ("pass" if payload["passed"] else "FAIL"))
    else:
        lines.append(json.dumps(payload, indent=2))
    return "\n".join(lines)


def _remote(url: str, command: str, request_model) -> tuple[int, dict]:
    body = json.dumps(request_model.model_dump()).encode()
    req = urllib.request.Request(
        url.rstrip("/") + "/v1/" + command,
        data=body,
        headers={"Content-Type": "application/json"},
        method="POST",
    )
    try:
        with urllib.request.urlopen(req) as resp:
            return resp.status, json.loads(resp.read().decode())
    except urllib.error.HTTPError as exc:
        return exc.code, json.loads(exc.read().decode())


def _status_to_exit(status: int) -> int:
    if status == 400:
        return EXIT_PARSE
    if status == 422:
        return EXIT_VALIDATION
    return EXIT_INTERNAL


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    command, request_model = _build_request(args)
    if args.url:
        status, payload = _remote(args.url, command, request_model)
        if status != 200:
            print(json.dumps(payload, indent=2))
            return _status_to_exit(status)
    else:
        try:
            payload = _RUNNERS[command](request_model).model_dump(by_alias=True)
        except ResidueForgeError as exc:
            err = error_payload(exc).model_dump(by_alias=True)
            if args.format == "json":
                print(json.dumps(err, indent=2))
            print(str(exc), file=sys.stderr)
            return _exit_code(exc)
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(_render_text(payload))
    if command == "verify" and not payload.get("passed", True):
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
