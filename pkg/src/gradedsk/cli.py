"""Command-line client for the compute service.

The CLI is a thin client over the same handlers the HTTP endpoints use:
it validates the input file against the command's request model, dispatches
in-process, and prints the response wrapped in a deterministic report
envelope (input hash, version, seed).  `gradedsk serve` starts the HTTP
server for remote use.

Exit codes: 1 for schema or value errors, 2 for unsupported cases, 3 for
exhausted budgets or precision.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from pydantic import ValidationError

from . import __version__
from .errors import BudgetExceededError, PrecisionExhaustedError, UnsupportedCaseError
from .service import api
from .service import models as m

COMMANDS = {
    "classify": (m.ClassifyRequest, api.handle_classify),
    "sk1": (m.SK1Request, api.handle_sk1),
    "sk1-brute": (m.SK1Request, lambda req: api.handle_sk1(req, brute=True)),
    "ck1": (m.SK1Request, api.handle_ck1),
    "sh1": (m.SK1Request, api.handle_sh1),
    "nondegenerate": (m.NondegenerateRequest, api.handle_nondegenerate),
    "skew-divisor": (m.SkewDivisorRequest, api.handle_skew_divisor),
    "skew-reduce": (m.SkewReduceRequest, api.handle_skew_reduce),
    "hensel": (m.HenselRequest, api.handle_hensel),
    "norm-preimage": (m.NormPreimageRequest, api.handle_norm_preimage),
    "wedderburn": (m.WedderburnRequest, api.handle_wedderburn),
    "congruence-check": (m.CongruenceRequest, api.handle_congruence),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gradedsk",
        description="exact reduced-Whitehead-group computations for graded division algebras",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, help=f"run the {name} computation on a JSON input file")
        p.add_argument("input", help="path to the JSON input file")
        p.add_argument("--precision", type=int, default=32)
        p.add_argument("--budget", type=int, default=10**6)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--out", default=None)
    serve = sub.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _summary_lines(command: str, result: dict) -> list[str]:
    lines = [f"{command}:"]
    for key, value in result.items():
        lines.append(f"  {key}: {json.dumps(value, sort_keys=True)}")
    return lines


def run_command(command: str, raw: bytes, precision: int, budget: int, seed: int):
    model_cls, handler = COMMANDS[command]
    data = json.loads(raw)
    options = data.get("options", {})
    options.setdefault("precision", precision)
    options.setdefault("budget", budget)
    options.setdefault("seed", seed)
    data["options"] = options
    request = model_cls.model_validate(data)
    response = handler(request)
    report = m.Report(
        command=command,
        version=__version__,
        input_sha256=hashlib.sha256(raw).hexdigest(),
        seed=request.options.seed,
        result=response.model_dump(),
    )
    return report


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "serve":
        import uvicorn

        from .service.app import app

        uvicorn.run(app, host=args.host, port=args.port)
        return 0
    try:
        raw = open(args.input, "rb").read()
    except OSError as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return 1
    try:
        report = run_command(args.command, raw, args.precision, args.budget, args.seed)
    except (json.JSONDecodeError, ValidationError, ValueError) as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 1
    except UnsupportedCaseError as exc:
        print(f"unsupported case: {exc}", file=sys.stderr)
        return 2
    except (BudgetExceededError, PrecisionExhaustedError) as exc:
        print(f"budget or precision exhausted: {exc}", file=sys.stderr)
        return 3
    payload = json.dumps(report.model_dump(), sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload)
    if args.format == "json":
        sys.stdout.write(payload)
    else:
        sys.stdout.write("\n".join(_summary_lines(args.command, report.result)) + "\n")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
