"""Command-line front end.

Subcommands::

    grasspack bounds --n N --d D --c C [--field R|C]
    grasspack certify FRAME.json [--tol T]
    grasspack angles FRAME.json --i I --j J
    grasspack construct simplex --n N [-o OUT]
    grasspack construct orthoplex --d D [-o OUT]
    grasspack construct harmonic --modulus N --set k1,k2,... [-o OUT]
    grasspack construct tensor ETF.json --c C [-o OUT]
    grasspack pack --field R|C --d D --c C --n N [--criterion chordal|spectral]
                   [--seed S] [--restarts R] [--iters K] [-o OUT]

``--format json`` switches any report to a single machine-readable JSON
object on stdout. Frames are stored one per file in a JSON format whose
decimal serialization round-trips every entry bit-exactly.

Exit codes: 0 success, 1 invalid input (with a one-line diagnostic
naming the failing field), 2 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import bounds as bounds_mod
from . import construct as construct_mod
from . import metrics as metrics_mod
from . import optimize as optimize_mod
from .certify import Certificate, certify
from .linalg import DEFAULT_TOL, FieldTag, Mat, NumericalError
from .metrics import FusionFrame, SubspaceBasis

__all__ = ["frame_from_json_obj", "frame_to_json_obj", "load_frame", "main", "run", "save_frame"]


class _UsageError(ValueError):
    """Invalid command line; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; route through the
    # package's invalid-input path (exit 1) instead.
    def error(self, message):
        raise _UsageError(message)


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if x is None:
        return "n/a"
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _parse_field(value: str) -> FieldTag:
    try:
        return FieldTag(value)
    except ValueError:
        raise _UsageError(f"field: must be 'R' or 'C', got {value!r}") from None


# ---------------------------------------------------------------------------
# Frame file format


def frame_to_json_obj(f: FusionFrame) -> dict:
    """FrameFile object: real entries as numbers, complex as [re, im] pairs."""
    real = f.field is FieldTag.REAL
    bases = []
    for b in f.bases:
        arr = b.array
        if real:
            rows = [[float(arr[i, k].real) for k in range(f.c)] for i in range(f.d)]
        else:
            rows = [
                [[float(arr[i, k].real), float(arr[i, k].imag)] for k in range(f.c)]
                for i in range(f.d)
            ]
        bases.append(rows)
    return {"field": f.field.value, "d": f.d, "c": f.c, "n": f.n, "bases": bases}


def _entry_to_complex(entry, real: bool, where: str) -> complex:
    if real:
        if isinstance(entry, bool) or not isinstance(entry, (int, float)):
            raise _UsageError(f"{where}: real frames need numeric entries, got {entry!r}")
        return complex(float(entry), 0.0)
    if (
        not isinstance(entry, (list, tuple))
        or len(entry) != 2
        or any(isinstance(p, bool) or not isinstance(p, (int, float)) for p in entry)
    ):
        raise _UsageError(f"{where}: complex frames need [re, im] entries, got {entry!r}")
    return complex(float(entry[0]), float(entry[1]))


def frame_from_json_obj(obj, tol: float = DEFAULT_TOL) -> FusionFrame:
    """Parse and validate a FrameFile object.

    Shapes are checked against the declared (d, c, n) and every basis is
    re-verified to have orthonormal columns within ``tol``; diagnostics
    name the failing field (bases are numbered from 1).
    """
    if not isinstance(obj, dict):
        raise _UsageError("frame: top-level value must be an object")
    for key in ("field", "d", "c", "n", "bases"):
        if key not in obj:
            raise _UsageError(f"{key}: missing")
    field = _parse_field(obj["field"]) if isinstance(obj["field"], str) else None
    if field is None:
        raise _UsageError(f"field: must be 'R' or 'C', got {obj['field']!r}")
    for key in ("d", "c", "n"):
        if isinstance(obj[key], bool) or not isinstance(obj[key], int) or obj[key] < 1:
            raise _UsageError(f"{key}: must be a positive integer, got {obj[key]!r}")
    d, c, n = obj["d"], obj["c"], obj["n"]
    if c > d:
        raise _UsageError(f"c: subspace dimension {c} exceeds ambient dimension {d}")
    if not isinstance(obj["bases"], list) or len(obj["bases"]) != n:
        found = len(obj["bases"]) if isinstance(obj["bases"], list) else "non-list"
        raise _UsageError(f"bases: declared n = {n} but found {found}")

    real = field is FieldTag.REAL
    bases = []
    for idx, rows in enumerate(obj["bases"], start=1):
        name = f"bases[{idx}]"
        if not isinstance(rows, list) or len(rows) != d:
            found = len(rows) if isinstance(rows, list) else "non-list"
            raise _UsageError(f"{name}: expected {d} rows, found {found}")
        data = []
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != c:
                found = len(row) if isinstance(row, list) else "non-list"
                raise _UsageError(f"{name}: row {i + 1} has {found} entries, expected {c}")
            data.append([_entry_to_complex(e, real, name) for e in row])
        try:
            bases.append(SubspaceBasis(Mat(data, field), tol))
        except ValueError as exc:
            raise _UsageError(f"{name}: {exc}") from None
    return FusionFrame(bases)


def load_frame(path: str, tol: float = DEFAULT_TOL) -> FusionFrame:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise _UsageError(f"frame file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise _UsageError(f"frame file: not valid JSON ({exc})") from None
    return frame_from_json_obj(obj, tol)


def save_frame(f: FusionFrame, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(frame_to_json_obj(f), fh)
        fh.write("\n")


# ---------------------------------------------------------------------------
# Subcommands


def _emit_frame(frame: FusionFrame, output: str | None, as_json: bool, summary: dict) -> None:
    if output:
        save_frame(frame, output)
        if as_json:
            print(json.dumps({**summary, "output": output}))
        else:
            for key, val in summary.items():
                print(f"{key}: {_fmt(val)}")
            print(f"frame written: {output}")
    else:
        # Without an output path the frame itself is the output.
        print(json.dumps(frame_to_json_obj(frame)))


def _cmd_bounds(args) -> int:
    report = bounds_mod.bound_report(args.n, args.d, args.c, _parse_field(args.field))
    if args.format == "json":
        print(json.dumps(report.as_dict()))
        return 0
    print(f"parameters: n={report.n} d={report.d} c={report.c} field={report.field.value}")
    rows = [
        ("welch", report.welch),
        ("simplex chordal", report.simplex_chordal),
        ("simplex gram", report.simplex_gram),
        ("eitff spectral", report.eitff_spectral),
        ("orthoplex chordal", report.orthoplex_chordal),
        ("orthoplex gram", report.orthoplex_gram),
        ("gerzon limit", report.gerzon),
        ("traceless dim", report.traceless_dim),
    ]
    note_key = {"welch": "welch", "orthoplex chordal": "orthoplex", "orthoplex gram": "orthoplex"}
    for label, value in rows:
        line = f"{label + ':':<19}{_fmt(value)}"
        note = report.notes.get(note_key.get(label, ""), "")
        if value is None and note:
            line += f"  ({note})"
        print(line)
    return 0


def _print_certificate(cert: Certificate, frame: FusionFrame, as_json: bool) -> None:
    if as_json:
        print(json.dumps(cert.as_dict()))
        return
    print(
        f"frame: n={frame.n} d={frame.d} c={frame.c} field={frame.field.value} "
        f"tolerance={cert.tolerance:.1g}"
    )
    print(f"is_tight:         {_fmt(cert.is_tight)}  (residual {_fmt(cert.tight_residual)}, alpha {_fmt(cert.alpha)})")
    print(f"is_equichordal:   {_fmt(cert.is_equichordal)}  (beta {_fmt(cert.beta)}, deviation {_fmt(cert.beta_deviation)})")
    print(f"is_equiisoclinic: {_fmt(cert.is_equiisoclinic)}  (sigma_sq {_fmt(cert.sigma_sq)}, deviation {_fmt(cert.sigma_deviation)})")
    print(f"is_ectff:         {_fmt(cert.is_ectff)}")
    print(f"is_eitff:         {_fmt(cert.is_eitff)}")
    print(f"simplex_gap:      {_fmt(cert.simplex_gap)}")
    print(f"eitff_gap:        {_fmt(cert.eitff_gap)}")
    print(f"orthoplex_gap:    {_fmt(cert.orthoplex_gap)}")


def _cmd_certify(args) -> int:
    frame = load_frame(args.frame, args.tol)
    if frame.n < 2:
        raise _UsageError(f"n: certification needs n >= 2, got {frame.n}")
    cert = certify(frame, args.tol)
    _print_certificate(cert, frame, args.format == "json")
    return 0


def _cmd_angles(args) -> int:
    frame = load_frame(args.frame)
    for label, idx in (("i", args.i), ("j", args.j)):
        if not 1 <= idx <= frame.n:
            raise _UsageError(f"{label}: index {idx} out of range 1..{frame.n}")
    if args.i == args.j:
        raise _UsageError(f"j: indices must differ, got i = j = {args.i}")
    b1 = frame.bases[args.i - 1]
    b2 = frame.bases[args.j - 1]
    thetas = metrics_mod.principal_angles(b1, b2).thetas
    payload = {
        "i": args.i,
        "j": args.j,
        "principal_angles": [float(t) for t in thetas],
        "chordal_distance_sq": metrics_mod.chordal_distance_sq(b1, b2),
        "spectral_distance_sq": metrics_mod.spectral_distance_sq(b1, b2),
        "geodesic_distance": metrics_mod.geodesic_distance(b1, b2),
    }
    if args.format == "json":
        print(json.dumps(payload))
        return 0
    print(f"pair ({args.i}, {args.j}) of n={frame.n}")
    print("principal angles (rad): " + " ".join(_fmt(t) for t in payload["principal_angles"]))
    for key in ("chordal_distance_sq", "spectral_distance_sq", "geodesic_distance"):
        print(f"{key}: {_fmt(payload[key])}")
    return 0


def _parse_index_set(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise _UsageError(f"set: expected comma-separated integers, got {text!r}") from None


def _cmd_construct(args) -> int:
    if args.kind == "simplex":
        frame = construct_mod.regular_simplex(args.n)
    elif args.kind == "orthoplex":
        frame = construct_mod.orthoplex(args.d)
    elif args.kind == "harmonic":
        ds = construct_mod.DifferenceSet(args.modulus, _parse_index_set(args.set))
        frame = construct_mod.harmonic_etf(ds)
    else:  # tensor
        etf = load_frame(args.etf)
        frame = construct_mod.tensor_eitff(etf, args.c)
    summary = {"kind": args.kind, "n": frame.n, "d": frame.d, "c": frame.c, "field": frame.field.value}
    _emit_frame(frame, args.output, args.format == "json", summary)
    return 0


def _cmd_pack(args) -> int:
    criterion = (
        optimize_mod.Criterion.CHORDAL_OVERLAP
        if args.criterion == "chordal"
        else optimize_mod.Criterion.SPECTRAL_OVERLAP
    )
    config = optimize_mod.PackConfig(
        criterion=criterion,
        iterations=args.iters,
        restarts=args.restarts,
        seed=args.seed,
    )
    result = optimize_mod.pack(_parse_field(args.field), args.d, args.c, args.n, config)
    summary = {
        "criterion": args.criterion,
        "achieved": result.achieved,
        "bound": result.bound,
        "gap": result.gap,
        "restart_index": result.restart_index,
        "iterations_used": result.iterations_used,
        "is_ectff": result.certificate.is_ectff,
        "is_eitff": result.certificate.is_eitff,
    }
    if args.output:
        save_frame(result.frame, args.output)
    if args.format == "json":
        payload = dict(summary)
        payload["certificate"] = result.certificate.as_dict()
        if args.output:
            payload["output"] = args.output
        else:
            payload["frame"] = frame_to_json_obj(result.frame)
        print(json.dumps(payload))
        return 0
    for key, val in summary.items():
        print(f"{key}: {_fmt(val)}")
    if args.output:
        print(f"frame written: {args.output}")
    else:
        print(json.dumps(frame_to_json_obj(result.frame)))
    return 0


# ---------------------------------------------------------------------------
# Parser and entry point


def _build_parser() -> _Parser:
    parser = _Parser(prog="grasspack", description="Subspace packing toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    fmt = {"choices": ("human", "json"), "default": "human"}

    p = sub.add_parser("bounds", help="evaluate every packing bound for (n, d, c)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--field", default="R")
    p.add_argument("--format", **fmt)
    p.set_defaults(handler=_cmd_bounds)

    p = sub.add_parser("certify", help="certify the structure of a frame file")
    p.add_argument("frame")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--format", **fmt)
    p.set_defaults(handler=_cmd_certify)

    p = sub.add_parser("angles", help="principal angles and distances for one pair")
    p.add_argument("frame")
    p.add_argument("--i", type=int, required=True, help="first subspace, 1-based")
    p.add_argument("--j", type=int, required=True, help="second subspace, 1-based")
    p.add_argument("--format", **fmt)
    p.set_defaults(handler=_cmd_angles)

    p = sub.add_parser("construct", help="build a known packing and write it as a frame file")
    csub = p.add_subparsers(dest="kind", required=True)
    ps = csub.add_parser("simplex")
    ps.add_argument("--n", type=int, required=True)
    po = csub.add_parser("orthoplex")
    po.add_argument("--d", type=int, required=True)
    ph = csub.add_parser("harmonic")
    ph.add_argument("--modulus", type=int, required=True)
    ph.add_argument("--set", required=True, help="comma-separated residues, e.g. 1,2,4")
    pt = csub.add_parser("tensor")
    pt.add_argument("etf", help="frame file holding a c = 1 frame (ideally an ETF)")
    pt.add_argument("--c", type=int, required=True)
    for q in (ps, po, ph, pt):
        q.add_argument("-o", "--output", default=None)
        q.add_argument("--format", **fmt)
        q.set_defaults(handler=_cmd_construct)

    p = sub.add_parser("pack", help="numerically search for a packing")
    p.add_argument("--field", default="R")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--criterion", choices=("chordal", "spectral"), default="chordal")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--iters", type=int, default=2000)
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--format", **fmt)
    p.set_defaults(handler=_cmd_pack)

    return parser


def run(argv: Sequence[str]) -> int:
    """Execute one CLI invocation; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
        return args.handler(args)
    except (_UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # argparse --help
        code = exc.code
        return int(code) if isinstance(code, int) else 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
