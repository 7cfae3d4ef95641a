"""Command-line interface: construction, brackets, module actions, verification.

Every command is pure (inputs via flags and files, outputs via stdout/files)
and emits canonical JSON.  Exit codes: 0 success, 1 verification failure,
2 parse/config error, 3 context mismatch, 4 window overflow.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import List, Optional

from .jsonio import algebra_from_spec, canonical_dumps, module_from_json
from .lie import ContextMismatch, LieContext, LieElem, bracket
from .modules import ModVec, WindowOverflowError, injectivity_diagnostic, weight_multiplicities
from .presets import MODULE_PRESETS, MODULE_PRESET_DESCRIPTIONS, VERIFY_PRESET_NAMES, verify_preset
from .reps import MatrixRep
from .verify import SUITE_NAMES, SuiteConfig, run_all, run_suite

EXIT_OK = 0
EXIT_SUITE_FAILED = 1
EXIT_PARSE = 2
EXIT_CONTEXT = 3
EXIT_WINDOW = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_PARSE) from None


def _emit(obj, out: Optional[str]):
    text = canonical_dumps(obj)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _infer_n(terms, flag_n: Optional[int]) -> int:
    if flag_n is not None:
        return flag_n
    for entry in terms:
        return len(entry["deg"])
    raise CliError("empty element and no --n flag: cannot infer the number of variables", EXIT_PARSE)


def cmd_bracket(args) -> int:
    x_terms = _load_json(args.x)
    y_terms = _load_json(args.y)
    try:
        n = _infer_n(x_terms or y_terms, args.n)
        algebra = algebra_from_spec(_load_json(args.balgebra) if args.balgebra.endswith(".json") else args.balgebra)
        ctx = LieContext(n, algebra)
        x = LieElem.from_json(ctx, x_terms)
        y = LieElem.from_json(ctx, y_terms)
    except ContextMismatch as exc:
        raise CliError(str(exc), EXIT_CONTEXT) from None
    except (ValueError, KeyError, TypeError) as exc:
        raise CliError(f"bad element input: {exc}", EXIT_PARSE) from None
    try:
        result = bracket(x, y)
    except ContextMismatch as exc:
        raise CliError(str(exc), EXIT_CONTEXT) from None
    _emit(result.to_json(), args.out)
    return EXIT_OK


def _load_module(args):
    if args.preset:
        if args.preset not in MODULE_PRESETS:
            raise CliError(f"unknown module preset {args.preset!r}", EXIT_PARSE)
        descriptor = MODULE_PRESETS[args.preset]
    elif args.module:
        descriptor = _load_json(args.module)
    else:
        raise CliError("need --module FILE or --preset NAME", EXIT_PARSE)
    try:
        return module_from_json(descriptor)
    except (ValueError, KeyError, TypeError) as exc:
        raise CliError(f"bad module descriptor: {exc}", EXIT_PARSE) from None


def cmd_act(args) -> int:
    module = _load_module(args)
    try:
        elem = LieElem.from_json(module.ctx, _load_json(args.element))
        vec = ModVec.from_json(module, _load_json(args.vector))
    except ContextMismatch as exc:
        raise CliError(str(exc), EXIT_CONTEXT) from None
    except WindowOverflowError as exc:
        raise CliError(str(exc), EXIT_WINDOW) from None
    except (ValueError, KeyError, TypeError) as exc:
        raise CliError(f"bad input: {exc}", EXIT_PARSE) from None
    try:
        result = module.act(elem, vec)
    except WindowOverflowError as exc:
        raise CliError(str(exc), EXIT_WINDOW) from None
    except ValueError as exc:
        raise CliError(str(exc), EXIT_CONTEXT) from None
    _emit(result.to_json(), args.out)
    return EXIT_OK


def cmd_weights(args) -> int:
    module = _load_module(args)
    table = weight_multiplicities(module)
    _emit({"weights": [{"deg": list(deg), "dim": dim} for deg, dim in sorted(table.items())]}, args.out)
    return EXIT_OK


def cmd_diagnose(args) -> int:
    module = _load_module(args)
    try:
        deg = tuple(int(x) for x in args.deg.split(","))
        b = None
        if args.b_index is not None:
            b = module.ctx.algebra.basis_elem(args.b_index)
        report = injectivity_diagnostic(module, deg, b)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PARSE) from None
    _emit(report.to_json(), args.out)
    return EXIT_OK


def _verify_config(args) -> SuiteConfig:
    try:
        cfg = verify_preset(args.preset) if args.preset else SuiteConfig()
        if args.config:
            cfg = SuiteConfig.from_json(_load_json(args.config))
        overrides = {}
        if args.n is not None:
            overrides["n"] = args.n
        if args.window is not None:
            overrides["window_k"] = args.window
        if args.seed is not None:
            overrides["seed"] = args.seed
        if args.c is not None:
            overrides["c"] = Fraction(args.c)
        if args.budget is not None:
            overrides["case_budget"] = args.budget
        if args.samples is not None:
            overrides["samples"] = args.samples
        if args.balgebra is not None:
            if args.balgebra.endswith(".json"):
                overrides["algebra_inline"] = algebra_from_spec(_load_json(args.balgebra))
            else:
                overrides["b_spec"] = args.balgebra
        if args.rep is not None:
            if args.rep.endswith(".json"):
                overrides["rep_inline"] = MatrixRep.from_json(_load_json(args.rep))
            else:
                overrides["rep_spec"] = args.rep
        if args.h_convention is not None:
            overrides["h_convention"] = args.h_convention
        if overrides:
            data = cfg.__dict__ | overrides
            cfg = SuiteConfig(**data)
        return cfg
    except (ValueError, KeyError, TypeError) as exc:
        raise CliError(f"bad verify configuration: {exc}", EXIT_PARSE) from None


def cmd_verify(args) -> int:
    cfg = _verify_config(args)
    started = time.monotonic()
    try:
        if args.all:
            verdicts = run_all(cfg)
        else:
            verdicts = [run_suite(args.suite, cfg)]
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PARSE) from None
    elapsed_ms = int((time.monotonic() - started) * 1000)
    payload = {
        "config": cfg.to_json(),
        "verdicts": [v.to_json(elapsed_ms=elapsed_ms if args.timings else None) for v in verdicts],
        "passed": all(v.passed for v in verdicts),
    }
    _emit(payload, args.out)
    return EXIT_OK if payload["passed"] else EXIT_SUITE_FAILED


def cmd_presets(args) -> int:
    _emit(
        {
            "modulePresets": [
                {"name": name, "description": MODULE_PRESET_DESCRIPTIONS[name], "descriptor": MODULE_PRESETS[name]}
                for name in sorted(MODULE_PRESETS)
            ],
            "verifyPresets": list(VERIFY_PRESET_NAMES),
        },
        args.out,
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="torusmod", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", help="bracket of two elements from JSON files")
    p.add_argument("--x", required=True, help="first element (JSON term list)")
    p.add_argument("--y", required=True, help="second element (JSON term list)")
    p.add_argument("--n", type=int, help="number of torus variables (inferred from the input when omitted)")
    p.add_argument("--balgebra", default="trivial", help="coefficient algebra: trivial | truncpoly:M | table.json")
    p.add_argument("--out", help="write output JSON here instead of stdout")
    p.set_defaults(func=cmd_bracket)

    for name, fn, extra in (
        ("act", cmd_act, ("element", "vector")),
        ("weights", cmd_weights, ()),
        ("diagnose-injectivity", cmd_diagnose, ("deg",)),
    ):
        p = sub.add_parser(name)
        p.add_argument("--module", help="module descriptor JSON file")
        p.add_argument("--preset", help="named module preset (see `torusmod presets`)")
        if "element" in extra:
            p.add_argument("--element", required=True, help="element JSON file")
            p.add_argument("--vector", required=True, help="module vector JSON file")
        if "deg" in extra:
            p.add_argument("--deg", required=True, help="nonzero degree, comma separated (e.g. 1,0)")
            p.add_argument("--b-index", type=int, help="coefficient-algebra basis index (default: unit)")
        p.add_argument("--out", help="write output JSON here instead of stdout")
        p.set_defaults(func=fn)

    p = sub.add_parser("verify", help="run property suites")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--all", action="store_true", help="run every suite")
    group.add_argument("--suite", choices=SUITE_NAMES, help="run one suite")
    p.add_argument("--preset", choices=VERIFY_PRESET_NAMES, help="configuration preset")
    p.add_argument("--config", help="SuiteConfig JSON file")
    p.add_argument("--n", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--c", help="zero-degree scalar, e.g. 2 or 3/2")
    p.add_argument("--budget", type=int, help="case budget before seed-sampling")
    p.add_argument("--samples", type=int, help="number of sampled parameter sets")
    p.add_argument("--balgebra", help="trivial | truncpoly:M | table.json")
    p.add_argument("--rep", help="natural | trivial | traceless-natural | rep.json")
    p.add_argument("--h-convention", choices=("split", "i<j", "i<=j", "all"))
    p.add_argument("--timings", action="store_true", help="include elapsedMs (breaks byte-for-byte determinism)")
    p.add_argument("--out", help="write verdict JSON here instead of stdout")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("presets", help="list named presets")
    p.add_argument("--out")
    p.set_defaults(func=cmd_presets)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
