"""Command-line front end.

Exit codes: 0 success, 2 validation failed, 3 isomorphism infeasible,
4 input error.  JSON output uses canonical key order and fraction strings,
so identical invocations give byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .berezin import CONVENTIONS, EXTRACTIONS, berezin_action_list
from .classification import (
    ConstraintViolation,
    NotFactorable,
    ReducedParams,
    expand,
    lemma_scan,
    reduce,
    sample_valid,
    variety_jacobian_rank,
)
from .conditions import CONDITION_IDS, evaluate_conditions
from .derivations import PRESETS, StructureConstants
from .isomorphism import (
    AutomorphismParams,
    InvalidAutomorphism,
    MODES,
    find_isomorphism,
    orbit_tangent_rank,
    transform,
)
from .kostant import derive_kk, kostant_action_list, read_constants
from .scalars import ScalarFormatError, format_scalar, parse_scalar

EXIT_OK, EXIT_INVALID, EXIT_INFEASIBLE, EXIT_INPUT = 0, 2, 3, 4
FORM_LABELS = {"1": "1", "C": "C*", "D": "D*", "W": "C*^D*"}


class InputError(Exception):
    """Bad user input; reported with exit code 4."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise InputError(message)


# ---------------------------------------------------------------- loading


def _read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def load_constants(path: str | None = None, preset: str | None = None) -> StructureConstants:
    """Constants from a preset name or a JSON file of canonical fraction strings."""
    if (path is None) == (preset is None):
        raise InputError("give exactly one of a preset or an input file")
    if preset is not None:
        try:
            return PRESETS[preset]
        except KeyError:
            raise InputError(f"unknown preset {preset!r} (choose from {', '.join(PRESETS)})") from None
    try:
        return StructureConstants.from_json(_read_json(path))
    except (ValueError, ScalarFormatError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"{path}: {exc}") from None


def _load_reduced(path: str) -> ReducedParams:
    data = _read_json(path)
    try:
        return ReducedParams.from_json(data)
    except ConstraintViolation:
        raise
    except (ValueError, ScalarFormatError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _scalar_arg(name: str, text: str):
    try:
        return parse_scalar(text)
    except ScalarFormatError as exc:
        raise InputError(f"--{name}: {exc}") from None


def _mode(arg: str | None) -> str:
    mode = arg or os.environ.get("SUPERLAB_MODE", "real")
    if mode not in MODES:
        raise InputError(f"mode must be one of {', '.join(MODES)}, not {mode!r}")
    return mode


# ---------------------------------------------------------------- rendering


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key, val in obj.items():
            if isinstance(val, (dict, list)) and val:
                lines.append(f"{pad}{key}:")
                lines.append(_text(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar_text(val)}")
    elif isinstance(obj, list):
        for val in obj:
            if isinstance(val, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(_text(val, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar_text(val)}")
    else:
        lines.append(pad + _scalar_text(obj))
    return "\n".join(line for line in lines if line)


def _scalar_text(val) -> str:
    if isinstance(val, bool):
        return "true" if val else "false"
    if isinstance(val, (dict, list)):
        return "{}" if isinstance(val, dict) else "[]"
    return str(val)


def _emit(report: dict, as_json: bool, text: str | None = None) -> str:
    if as_json:
        return _dump(report)
    return (text if text is not None else _text(report)) + "\n"


# ---------------------------------------------------------------- commands


def _verify_text(report) -> str:
    lines = []
    for cid in CONDITION_IDS:
        res = report.residuals[cid]
        lines.append(f"({cid}) residual {format_scalar(res)}  {'ok' if res == 0 else 'FAIL'}")
    lines.append(
        f"(xxv) det1 {format_scalar(report.det1)}, det2 {format_scalar(report.det2)}  "
        f"{'ok' if report.is_definite else 'FAIL'}"
    )
    failing = report.failing()
    lines.append("verdict: " + ("all 25 conditions hold" if not failing
                                 else "failing " + ", ".join(failing)))
    return "\n".join(lines)


def cmd_verify(args) -> tuple[int, str]:
    k = load_constants(args.input, args.preset)
    report = evaluate_conditions(k)
    data = report.to_json()
    data["failing"] = report.failing()
    code = EXIT_OK if report.passes_all else EXIT_INVALID
    return code, _emit(data, args.json, _verify_text(report))


def _action_trace(actions: dict, label: str) -> dict[str, str]:
    return {
        f"{X}.{label}[f_{{n,m}}{'' if form == '1' else FORM_LABELS[form]}]": comb.render(label)
        for (X, form), comb in actions.items()
    }


def cmd_derive(args) -> tuple[int, str]:
    if args.model == "kostant":
        actions = kostant_action_list()
        k = derive_kk()
        trace = _action_trace(actions, "Phi")
        extra = {}
    else:
        actions = berezin_action_list(args.convention, args.extraction)
        k = read_constants(
            {form: actions[("C", form)] for form in FORM_LABELS},
            {form: actions[("D", form)] for form in FORM_LABELS},
        )
        trace = _action_trace(actions, "F")
        extra = {"convention": args.convention, "extraction": args.extraction}
    report = evaluate_conditions(k)
    data = {"model": args.model, **extra, "constants": k.to_json(), "actions": trace,
            "passes_all": report.passes_all}
    text_lines = [f"{args.model} model" + (f" ({args.convention} chart, {args.extraction} extraction)"
                                            if extra else ""), "action list:"]
    text_lines += [f"  {lhs} = {rhs}" for lhs, rhs in trace.items()]
    text_lines.append("constants:")
    text_lines += [f"  {key} = {val}" for key, val in k.to_json().items()]
    text_lines.append("all 25 conditions hold" if report.passes_all
                      else "failing " + ", ".join(report.failing()))
    code = EXIT_OK if report.passes_all else EXIT_INVALID
    return code, _emit(data, args.json, "\n".join(text_lines))


def cmd_transform(args) -> tuple[int, str]:
    k = load_constants(args.input, args.preset)
    mode = _mode(args.mode)
    vals = {n: _scalar_arg(n, getattr(args, n)) for n in ("x", "y", "u", "v")}
    try:
        a = AutomorphismParams(args.kind, mode=mode, **vals)
    except InvalidAutomorphism as exc:
        raise InputError(str(exc)) from None
    out = transform(a, k, strict=args.strict)
    report = evaluate_conditions(out)
    data = {"automorphism": a.to_json(), "constants": out.to_json(),
            "passes_all": report.passes_all, "failing": report.failing()}
    code = EXIT_OK if report.passes_all else EXIT_INVALID
    return code, _emit(data, args.json)


def cmd_isomorphic(args) -> tuple[int, str]:
    files = list(args.files)
    if len(files) + (args.preset is not None) + (args.preset2 is not None) != 2:
        raise InputError("isomorphic needs exactly two structures (files or presets)")
    src = load_constants(None, args.preset) if args.preset else load_constants(files.pop(0))
    dst = load_constants(None, args.preset2) if args.preset2 else load_constants(files.pop(0))
    mode = _mode(args.mode)
    try:
        result = find_isomorphism(src, dst, mode)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    code = EXIT_OK if result.feasible else EXIT_INFEASIBLE
    return code, _emit(result.to_json(), args.json)


def cmd_classify(args) -> tuple[int, str]:
    if args.action == "sample":
        p = sample_valid(args.seed)
        data = {"seed": args.seed, "reduced": p.to_json(), "constants": expand(p).to_json()}
        return EXIT_OK, _emit(data, args.json)
    if args.action == "scan":
        grid = [_scalar_arg("grid", g.strip()) for g in args.grid.split(",") if g.strip()]
        try:
            report = lemma_scan(grid)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        code = EXIT_OK if not report.counterexamples else EXIT_INVALID
        return code, _emit(report.to_json(), args.json)
    if args.point is None:
        raise InputError("classify rank needs --point")
    p = _load_reduced(args.point)
    return EXIT_OK, _emit(variety_jacobian_rank(p).to_json(), args.json)


def cmd_rank(args) -> tuple[int, str]:
    k = load_constants(args.input, args.preset)
    mode = _mode(args.mode)
    p = reduce(k)
    data = {
        "reduced": p.to_json(),
        "variety": variety_jacobian_rank(p).to_json(),
        "orbit": {"mode": mode, **orbit_tangent_rank(k, mode).to_json()},
    }
    return EXIT_OK, _emit(data, args.json)


# ---------------------------------------------------------------- parser


def _add_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", choices=sorted(PRESETS), help="built-in constant table")
    p.add_argument("--in", dest="input", metavar="FILE", help="constants JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="superlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"superlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="evaluate all 25 conditions")
    _add_source(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("derive", help="derive constants from a model")
    p.add_argument("model", choices=("kostant", "berezin"))
    p.add_argument("--convention", choices=sorted(CONVENTIONS), default="unit",
                   help="odd-factor chart for the Berezin model")
    p.add_argument("--extraction", choices=EXTRACTIONS, default="right",
                   help="side on which the odd increment is read off")
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_derive)

    p = sub.add_parser("transform", help="apply an automorphism")
    _add_source(p)
    p.add_argument("--kind", choices=("plus", "minus"), required=True)
    for name in ("x", "y", "u", "v"):
        p.add_argument(f"--{name}", required=True)
    p.add_argument("--mode", choices=MODES)
    p.add_argument("--strict", action="store_true", help="cross-check the wedge columns")
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_transform)

    p = sub.add_parser("isomorphic", help="search for an isomorphism")
    p.add_argument("files", nargs="*", metavar="FILE")
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--preset2", choices=sorted(PRESETS))
    p.add_argument("--mode", choices=MODES)
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_isomorphic)

    p = sub.add_parser("classify", help="reduced parameters: sample, scan, rank")
    p.add_argument("action", choices=("sample", "scan", "rank"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid", default="-1,-1/2,0,1/2,1")
    p.add_argument("--point", metavar="FILE", help="reduced parameters JSON")
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("rank", help="variety and orbit tangent ranks at a structure")
    _add_source(p)
    p.add_argument("--mode", choices=MODES)
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_rank)
    return parser


def run(argv: list[str]) -> tuple[int, str, str]:
    """Run one invocation; returns (exit code, stdout text, stderr text)."""
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "preset", None) and getattr(args, "input", None):
            raise InputError("--preset and --in are mutually exclusive")
        code, out = args.run(args)
        return code, out, ""
    except InputError as exc:
        return EXIT_INPUT, "", f"error: {exc}\n"
    except (ConstraintViolation, NotFactorable) as exc:
        return EXIT_INVALID, "", f"invalid: {exc}\n"
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0), "", ""


def main(argv: list[str] | None = None) -> int:
    code, out, err = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code
