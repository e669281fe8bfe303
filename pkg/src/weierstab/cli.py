"""``weier-stab`` command-line interface.

Exit codes: 0 success, 1 domain error (JSON error object on stderr),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .charge import build_charge, curve_charge, evaluate_on_curve, twist_identity_residual
from .config import ConfigError, RunConfig, load_config, with_overrides
from .exact import ZeroPolynomialError, as_rational, format_rational
from .fourier_mukai import transform
from .phase import InadmissibleChargeError, classify_limit_phase, compare_phases, theorem_A_scan
from .surface import (
    ChernClass,
    ClassFormatError,
    HNProfile,
    ParameterError,
    SurfaceParams,
    check_Fl_conditions,
    check_Tl_conditions,
    format_slope,
    mu_f,
    mu_theta_mf,
    twisted_ch1_pair,
    twisted_slope,
)
from .verify import run_all
from .walls import Box, CandidateCapError, find_walls, largest_wall, wall_grid_scan


class DomainError(Exception):
    def __init__(self, kind: str, message: str, fields: dict | None = None):
        super().__init__(message)
        self.kind = kind
        self.fields = fields or {}

    def to_json(self) -> dict:
        out = {"error": self.kind, "message": str(self)}
        if self.fields:
            out["fields"] = self.fields
        return out


def _load_json_arg(text: str, what: str) -> Any:
    if text.startswith("@"):
        try:
            text = Path(text[1:]).read_text()
        except OSError as exc:
            raise DomainError("io", f"cannot read {what} file: {exc}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError("malformed-json", f"{what} is not valid JSON: {exc}")


def _parse_class(text: str, what: str = "class") -> ChernClass:
    try:
        return ChernClass.from_json(_load_json_arg(text, what))
    except ClassFormatError as exc:
        raise DomainError("malformed-class", f"{what}: {exc}", exc.field_errors)


def _parse_class_list(path: str, what: str) -> list[ChernClass]:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise DomainError("io", f"cannot read {what}: {exc}")
    except json.JSONDecodeError as exc:
        raise DomainError("malformed-json", f"{what} is not valid JSON: {exc}")
    if not isinstance(data, list):
        raise DomainError("malformed-json", f"{what} must be a JSON array of classes")
    out = []
    for i, item in enumerate(data):
        try:
            out.append(ChernClass.from_json(item))
        except ClassFormatError as exc:
            raise DomainError("malformed-class", f"{what}[{i}]: {exc}", exc.field_errors)
    return out


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_transform(args, cfg: RunConfig):
    x = _parse_class(args.cls)
    return transform(x, cfg.params, args.functor, args.shift).to_json()


def cmd_charge(args, cfg: RunConfig):
    x = _parse_class(args.cls)
    if args.at is None:
        return {
            "charge": build_charge(x, cfg.params).to_json(),
            "curve": curve_charge(x, cfg.params).to_json(),
        }
    key, _, value = args.at.partition("=")
    if key.strip() != "u" or not value:
        raise DomainError("bad-argument", "--at expects u=<rational>")
    try:
        u0 = as_rational(value)
    except ValueError as exc:
        raise DomainError("bad-argument", str(exc))
    point = evaluate_on_curve(x, cfg.params, u0)
    return {k: format_rational(v) for k, v in point.items()}


def cmd_identity(args, cfg: RunConfig):
    x = _parse_class(args.cls)
    residual = twist_identity_residual(x, cfg.params)
    return {"status": "PASS" if residual.is_zero() else "FAIL", "residual": str(residual)}


def cmd_phase(args, cfg: RunConfig):
    p = cfg.params
    if args.phase_cmd == "compare":
        return compare_phases(_parse_class(args.left, "left"), _parse_class(args.right, "right"), p).to_json()
    if args.phase_cmd == "classify":
        return classify_limit_phase(_parse_class(args.cls), p).to_json()
    x = _parse_class(args.cls)
    candidates = _parse_class_list(args.candidates, "candidates")
    return theorem_A_scan(x, candidates, p).to_json()


def cmd_walls(args, cfg: RunConfig):
    x = _parse_class(args.cls)
    u_max = cfg.u_max if args.umax is None else _rational_arg(args.umax, "--umax")
    if args.against is not None:
        report = find_walls(x, _parse_class(args.against, "against"), cfg.params, u_max)
        out = report.to_json()
    else:
        try:
            box = Box.parse(args.box)
        except ValueError as exc:
            raise DomainError("bad-box", str(exc))
        reports = wall_grid_scan(x, box, cfg.params, u_max, cap=cfg.candidate_cap, workers=args.workers)
        top = largest_wall(reports)
        out = {
            "class": x.to_json(),
            "params": cfg.params.to_json(),
            "u_max": format_rational(u_max),
            "candidates": len(reports),
            "largest_wall_u": None if top is None else format_rational(top),
            "reports": [r.to_json() for r in reports],
        }
    if args.out:
        Path(args.out).write_text(json.dumps(out, indent=2) + "\n")
        return {"written": args.out}
    return out


def cmd_slope(args, cfg: RunConfig):
    x = _parse_class(args.cls)
    p = cfg.params
    out = {
        "mu_f": format_slope(mu_f(x)),
        "mu_theta_mf": format_slope(mu_theta_mf(x, p)),
        "twisted_slope": format_slope(twisted_slope(x, p)),
        "twisted_degree": format_rational(twisted_ch1_pair(x, p)),
    }
    if args.factors:
        factors = _parse_class_list(args.factors, "factors")
        try:
            profile = HNProfile(factors, total=x)
        except ValueError as exc:
            raise DomainError("bad-profile", str(exc))
        out["F_l"] = check_Fl_conditions(profile, p).to_json()
        out["T_l"] = check_Tl_conditions(profile, p).to_json()
    return out


def cmd_verify(args, cfg: RunConfig):
    results = run_all(cfg.seed, cfg.params)
    ok = all(r.ok for r in results)
    report = {
        "seed": cfg.seed,
        "params": cfg.params.to_json(),
        "suites": [r.to_json() for r in results],
        "status": "PASS" if ok else "FAIL",
    }
    return report, 0 if ok else 1


def _rational_arg(text: str, flag: str):
    try:
        return as_rational(text)
    except ValueError as exc:
        raise DomainError("bad-argument", f"{flag}: {exc}")


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def _cell(value) -> str:
    if isinstance(value, str):
        return value
    return json.dumps(value, separators=(",", ":"))


def render_table(obj) -> str:
    if isinstance(obj, dict) and isinstance(obj.get("suites"), list):
        head = {k: v for k, v in obj.items() if k != "suites"}
        return render_table(head) + "\n\n" + render_table(obj["suites"])
    if isinstance(obj, list) and obj and all(isinstance(r, dict) for r in obj):
        cols: list[str] = []
        for row in obj:
            cols.extend(k for k in row if k not in cols)
        rows = [[_cell(r.get(c, "")) for c in cols] for r in obj]
        widths = [max(len(c), *(len(r[i]) for r in rows)) for i, c in enumerate(cols)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
        lines += ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in rows]
        return "\n".join(lines)
    if isinstance(obj, dict):
        width = max((len(k) for k in obj), default=0)
        return "\n".join(f"{k.ljust(width)}  {_cell(v)}" for k, v in obj.items())
    return _cell(obj)


def emit(obj, fmt: str, stream) -> None:
    if fmt == "table":
        stream.write(render_table(obj) + "\n")
    else:
        stream.write(json.dumps(obj, separators=(",", ":")) + "\n")


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser, default) -> None:
    parser.add_argument("--config", default=default, help="config file (.toml or .json)")
    parser.add_argument(
        "--params", default=default,
        help='inline parameters, e.g. \'{"e":"0","m":"2","alpha":"1","lambda":"1"}\'',
    )
    parser.add_argument("--format", choices=("json", "table"), dest="fmt", default=default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weier-stab",
        description="Exact stability data on Weierstrass elliptic surfaces.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_common(parser, None)
    parser.set_defaults(config=None, params=None, fmt=None)
    # the same options are accepted after the subcommand too
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    add = lambda name, **kw: sub.add_parser(name, parents=[common], **kw)  # noqa: E731

    class_help = "Chern class as JSON {\"n\":..,\"d\":..,\"c\":..,\"s\":..} or @file"

    p = add("transform", help="apply Phi or Phi-hat to a class")
    p.add_argument("--functor", choices=("phi", "phihat"), required=True)
    p.add_argument("--class", dest="cls", required=True, help=class_help)
    p.add_argument("--shift", type=int, default=0)
    p.set_defaults(func=cmd_transform)

    p = add("charge", help="central charge in (u, v), or its value on the curve")
    p.add_argument("--class", dest="cls", required=True, help=class_help)
    p.add_argument("--at", help="evaluate on the curve at u=<rational>")
    p.set_defaults(func=cmd_charge)

    p = add("identity-check", help="check the twisted-degree / Re Z identity")
    p.add_argument("--class", dest="cls", required=True, help=class_help)
    p.set_defaults(func=cmd_identity)

    p = add("phase", help="eventual phase comparison and classification")
    psub = p.add_subparsers(dest="phase_cmd", required=True, metavar="ACTION")
    q = psub.add_parser("compare", parents=[common])
    q.add_argument("--left", required=True, help=class_help)
    q.add_argument("--right", required=True, help=class_help)
    q = psub.add_parser("classify", parents=[common])
    q.add_argument("--class", dest="cls", required=True, help=class_help)
    q = psub.add_parser("scan", parents=[common])
    q.add_argument("--class", dest="cls", required=True, help="torsion-free sheaf class E")
    q.add_argument("--candidates", required=True, help="JSON file with an array of subobject classes")
    p.set_defaults(func=cmd_phase)

    p = add("walls", help="locate mini-walls along the curve")
    p.add_argument("--class", dest="cls", required=True, help=class_help)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--box", help='candidate box, e.g. "n=0..0,d=0..0,c=0..2,s2=-2..2"')
    group.add_argument("--against", help="single second class")
    p.add_argument("--umax", help="upper end of the u range (default from config)")
    p.add_argument("--out", help="write the report to this file")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_walls)

    p = add("slope", help="slopes, twisted degree and optional F^l/T^l checks")
    p.add_argument("--class", dest="cls", required=True, help=class_help)
    p.add_argument("--factors", help="JSON file with HN factor classes summing to --class")
    p.set_defaults(func=cmd_slope)

    p = add("verify", help="replay the invariant suites")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def _resolve_config(args) -> RunConfig:
    try:
        cfg = load_config(args.config)
        params = None
        if args.params is not None:
            params = SurfaceParams.from_json(_load_json_arg(args.params, "params"))
        return with_overrides(cfg, params=params, output_format=args.fmt, seed=getattr(args, "seed", None))
    except ClassFormatError as exc:
        raise DomainError("malformed-params", str(exc), exc.field_errors)
    except (ConfigError, ParameterError) as exc:
        raise DomainError("config", str(exc))


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _resolve_config(args)
        result = args.func(args, cfg)
        code = 0
        if isinstance(result, tuple):
            result, code = result
    except DomainError as exc:
        emit(exc.to_json(), "json", stderr)
        return 1
    except (InadmissibleChargeError, ParameterError, CandidateCapError, ZeroPolynomialError, ValueError) as exc:
        emit({"error": type(exc).__name__, "message": str(exc)}, "json", stderr)
        return 1
    emit(result, cfg.output_format, stdout)
    return code


def entrypoint() -> None:
    sys.exit(main())
