"""Command-line interface.

Exit codes: 0 ok, 1 verification failure, 2 parse error, 3 validation
failure, 4 unmet precondition (non-unital channel), 5 I/O error.
``CGPKIT_SEED`` supplies the default seed; an explicit ``--seed`` wins.
"""
import argparse
import csv
import io
import json
import os
import sys
from math import pi

import numpy as np

from .cgp import (
    cgp_curve_partial_swap,
    cgp_curve_rotation,
    exact_cgp,
    is_max_cgp_unitary,
    max_cgp,
    mc_cgp,
    unital_bound,
)
from .channels import (
    GateSpec,
    KrausChannel,
    channel_document,
    load_channel,
    load_unitary,
    make_gate,
    unitary_document,
    write_document,
)
from .core.arrays import check_unitary
from .exceptions import BadParameter, NotUnital, ParseError, ValidationError
from .oracle import reports_to_json, run_identity_battery

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_PRECONDITION = 4
EXIT_IO = 5


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _default_seed() -> int:
    raw = os.environ.get("CGPKIT_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise CliError(EXIT_PARSE, f"CGPKIT_SEED must be an integer, got {raw!r}") from None


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _require_readable(path) -> None:
    try:
        with open(path, "rb"):
            pass
    except OSError as exc:
        raise CliError(EXIT_IO, f"{path}: cannot read file: {exc.strerror}")


def cmd_exact(args) -> int:
    _require_readable(args.file)
    try:
        u = load_unitary(args.file)
    except ParseError as exc:
        raise CliError(EXIT_PARSE, str(exc))
    try:
        u = check_unitary(u)
    except ValidationError as exc:
        raise CliError(EXIT_VALIDATION, f"{args.file}: {exc}")
    n = u.shape[0]
    report = {"dim": n, "cgp": exact_cgp(u), "max_cgp": max_cgp(n), "is_max": is_max_cgp_unitary(u)}
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(report.keys())
        w.writerow([n, _fmt(report["cgp"]), _fmt(report["max_cgp"]), str(report["is_max"]).lower()])
        _emit(buf.getvalue())
    else:
        _emit(json.dumps(report))
    return EXIT_OK


def _load_channel_or_exit(path) -> KrausChannel:
    _require_readable(path)
    try:
        return load_channel(path)
    except ParseError as exc:
        raise CliError(EXIT_PARSE, str(exc))
    except ValidationError as exc:
        raise CliError(EXIT_VALIDATION, f"{path}: {exc}")


def cmd_estimate(args) -> int:
    ch = _load_channel_or_exit(args.file)
    seed = args.seed if args.seed is not None else _default_seed()
    if args.samples < 100:
        raise CliError(EXIT_PRECONDITION, f"--samples must be at least 100, got {args.samples}")
    try:
        est = mc_cgp(ch, args.samples, seed, args.workers)
    except BadParameter as exc:
        raise CliError(EXIT_PRECONDITION, str(exc))
    _emit(json.dumps(est.to_dict()))
    return EXIT_OK


def cmd_bound(args) -> int:
    ch = _load_channel_or_exit(args.file)
    try:
        bound = unital_bound(ch)
    except NotUnital as exc:
        raise CliError(EXIT_PRECONDITION, f"{args.file}: {exc}")
    _emit(json.dumps({"bound": bound, "unital": ch.unital}))
    return EXIT_OK


_SWEEPS = {
    "rotation": (cgp_curve_rotation, None),
    "partial-swap": (cgp_curve_partial_swap, (0.0, 1.0)),
}


def _parse_real(text: str) -> float:
    """Float, also accepting multiples of pi such as ``pi``, ``3pi/4``, ``0.5*pi``."""
    s = text.strip().lower().replace("*", "")
    if "pi" not in s:
        return float(s)
    head, _, tail = s.partition("pi")
    num = float(head) if head not in ("", "+", "-") else float(head + "1")
    den = float(tail[1:]) if tail.startswith("/") else 1.0
    if tail and not tail.startswith("/"):
        raise ValueError(text)
    return num * pi / den


def sweep_grid(lo: float, hi: float, steps: int) -> np.ndarray:
    """``steps`` uniformly spaced points with both endpoints hit exactly."""
    return np.linspace(lo, hi, steps)


def sweep_rows(gate: str, lo: float, hi: float, steps: int) -> list[tuple[float, float]]:
    curve, domain = _SWEEPS[gate]
    if steps < 2 or not hi > lo:
        raise BadParameter("need steps >= 2 and to > from")
    if domain is not None and (lo < domain[0] or hi > domain[1]):
        raise BadParameter(f"{gate} sweep range must lie in [{domain[0]}, {domain[1]}]")
    return [(float(x), curve(float(x))) for x in sweep_grid(lo, hi, steps)]


def cmd_sweep(args) -> int:
    try:
        lo, hi = _parse_real(args.start), _parse_real(args.stop)
        rows = sweep_rows(args.gate, lo, hi, args.steps)
    except (ValueError, BadParameter) as exc:
        raise CliError(EXIT_PARSE, f"bad sweep range: {exc}")
    lines = ["param,cgp"] + [f"{_fmt(x)},{_fmt(y)}" for x, y in rows]
    try:
        with open(args.out, "w", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise CliError(EXIT_IO, f"{args.out}: cannot write: {exc.strerror}")
    return EXIT_OK


def cmd_gate(args) -> int:
    try:
        spec = GateSpec.parse(args.name)
        u = make_gate(spec)
    except ParseError as exc:
        raise CliError(EXIT_PARSE, str(exc))
    except BadParameter as exc:
        raise CliError(EXIT_PARSE, f"unknown or malformed gate {args.name!r}: {exc}")
    except ValidationError as exc:
        raise CliError(EXIT_VALIDATION, str(exc))
    doc = channel_document(KrausChannel((u,))) if args.kraus else unitary_document(u)
    try:
        write_document(doc, args.out)
    except OSError as exc:
        raise CliError(EXIT_IO, f"{args.out}: cannot write: {exc.strerror}")
    return EXIT_OK


def cmd_verify(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    reports = run_identity_battery(seed, args.samples)
    _emit(reports_to_json(reports))
    failed = [r.name for r in reports if not r.passed]
    if failed:
        sys.stderr.write("failed identities: " + ", ".join(failed) + "\n")
        return EXIT_VERIFY
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cgpkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", help="exact CGP of a unitary gate file")
    p.add_argument("file")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("estimate", help="Monte Carlo CGP of a Kraus channel file")
    p.add_argument("file")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("bound", help="unital upper bound Q(B^T) for a channel file")
    p.add_argument("file")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("sweep", help="write a CGP curve as CSV (param,cgp)")
    p.add_argument("gate", choices=sorted(_SWEEPS))
    p.add_argument("--from", dest="start", default=None)
    p.add_argument("--to", dest="stop", default=None)
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("gate", help="write a gate file, e.g. hadamard, rotation:0.7853, fourier:4")
    p.add_argument("name")
    p.add_argument("--out", required=True)
    p.add_argument("--kraus", action="store_true", help="write as a one-operator Kraus channel")
    p.set_defaults(func=cmd_gate)

    p = sub.add_parser("verify", help="run the identity battery")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--samples", type=int, default=100_000)
    p.set_defaults(func=cmd_verify)
    return parser


def _fill_sweep_defaults(args) -> None:
    if args.command != "sweep":
        return
    if args.gate == "rotation":
        args.start = args.start or "0"
        args.stop = args.stop or "pi"
        args.steps = args.steps or 181
    else:
        args.start = args.start or "0"
        args.stop = args.stop or "1"
        args.steps = args.steps or 101


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _fill_sweep_defaults(args)
    try:
        return args.func(args)
    except CliError as exc:
        sys.stderr.write(f"cgpkit {args.command}: {exc}\n")
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
