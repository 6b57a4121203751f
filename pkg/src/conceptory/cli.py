"""Command-line entry point: ``conceptory laws|check|model|verify|prove``.

Exit codes: 0 pass or model found, 1 check failed or no model up to the
bound, 2 input error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import laws as L
from .kernel import (
    ParseError, UnboundName, check_derivation, parse_script, show, soundness_sample,
)
from .ontology import (
    BoundTooLarge, ModelFormatError, OntologyError, dump_model, find_model, load_model,
    load_theory, model_to_json, verify_model,
)

SCHEMA_VERSION = 1
OK, FAILED, INPUT_ERROR, INTERNAL = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None


def _emit_json(doc: dict) -> None:
    sys.stdout.write(json.dumps({"schema": SCHEMA_VERSION, **doc}, indent=2, sort_keys=False) + "\n")


def _theory(path: str):
    try:
        return load_theory(_read(path))
    except OntologyError as e:
        raise InputError(f"{path}: {e}") from None


# laws -----------------------------------------------------------------------------


def _short(value) -> str:
    if isinstance(value, list) and len(value) > 3:
        return f"<{len(value)} entries; see --format json>"
    return json.dumps(value)


def cmd_laws(args) -> int:
    try:
        cfg = L.LawSuiteConfig(args.size, args.mode, args.samples, args.seed,
                               tuple(args.law) if args.law else None)
    except ValueError as e:
        raise InputError(str(e)) from None
    reports = L.run_suite(cfg)
    ok = all(r.passed for r in reports if r.asserted)
    if args.format == "json":
        _emit_json({
            "command": "laws",
            "config": {"universe_size": cfg.universe_size, "mode": cfg.mode,
                       "samples": cfg.samples, "seed": cfg.seed},
            "passed": ok,
            "laws": [r.to_dict() for r in reports],
        })
        return OK if ok else FAILED
    out = sys.stdout
    out.write(f"universe size {cfg.universe_size}, mode {cfg.mode}")
    out.write(f", samples {cfg.samples}, seed {cfg.seed}\n" if cfg.mode == "random" else "\n")
    out.write(f"{'law':24}{'cases':>12}{'violations':>12}  status\n")
    for r in reports:
        status = ("PASS" if r.passed else "FAIL") if r.asserted else "reported"
        out.write(f"{r.name:24}{r.cases_checked:>12}{r.violation_count:>12}  {status}\n")
    for r in reports:
        for key, value in r.notes.items():
            out.write(f"note {r.name}.{key}: {_short(value)}\n")
        for v in r.violations:
            out.write(f"violation {r.name}: {v.claim}{v.args!r}\n")
    out.write("all asserted laws hold\n" if ok else "asserted laws violated\n")
    return OK if ok else FAILED


# ontology -------------------------------------------------------------------------


def cmd_check(args) -> int:
    t = _theory(args.file)
    if args.format == "json":
        _emit_json({"command": "check", "classes": t.classes,
                    "rels": {k: list(v) for k, v in t.rels.items()},
                    "judgments": [show(j) for j in t.judgments]})
    else:
        sys.stdout.write(t.listing())
    return OK


def cmd_model(args) -> int:
    t = _theory(args.file)
    try:
        m = find_model(t, args.max, args.nonempty)
    except BoundTooLarge as e:
        raise InputError(str(e)) from None
    if m is None:
        msg = f"UNSAT up to n={args.max}"
        if args.format == "json":
            _emit_json({"command": "model", "found": False, "bound": args.max})
        else:
            sys.stdout.write(msg + "\n")
        return FAILED
    report = verify_model(t, m)
    if not report.passed:
        sys.stderr.write("internal error: found model fails verification\n")
        return INTERNAL
    text = dump_model(m)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.format == "json":
        _emit_json({"command": "model", "found": True, "bound": args.max,
                    "model": model_to_json(m)})
    elif not args.out:
        sys.stdout.write(text)
    else:
        sys.stdout.write(f"model found at n={m.universe.size}, written to {args.out}\n")
    return OK


def cmd_verify(args) -> int:
    t = _theory(args.file)
    try:
        m = load_model(_read(args.model))
        report = verify_model(t, m)
    except ModelFormatError as e:
        raise InputError(f"{args.model}: {e}") from None
    except UnboundName as e:
        raise InputError(f"{args.model}: {e}") from None
    if args.format == "json":
        _emit_json({"command": "verify", "passed": report.passed,
                    "judgments": [{"judgment": show(r.judgment), "value": r.value, "line": r.line}
                                  for r in report.rows]})
    else:
        sys.stdout.write(report.describe())
    return OK if report.passed else FAILED


# proofs -------------------------------------------------------------------------------


def cmd_prove(args) -> int:
    text = _read(args.script)
    hyps = _theory(args.theory).judgments if args.theory else None
    try:
        d = parse_script(text)
    except ParseError as e:
        raise InputError(f"{args.script}: {e}") from None
    report = check_derivation(d, hyps)
    doc = {"command": "prove", "passed": report.ok, "steps": report.steps_checked,
           "failed_step": report.failed_step, "line": report.line, "reason": report.reason,
           "conclusion": show(report.conclusion) if report.conclusion is not None else None}
    code = OK if report.ok else FAILED
    if report.ok and args.soundness:
        sound = soundness_sample(d, args.soundness)
        doc["soundness"] = sound.to_dict()
        if not sound.ok:
            code = INTERNAL
    if args.format == "json":
        _emit_json(doc)
    else:
        sys.stdout.write(report.describe() + "\n")
        if "soundness" in doc:
            s = doc["soundness"]
            flag = " (vacuous)" if s["vacuous"] else ""
            sys.stdout.write(f"soundness at n={args.soundness}: {s['models']} models, "
                             f"{len(s['violations'])} violations{flag}\n")
            for v in s["violations"]:
                sys.stdout.write(f"  {v}\n")
    return code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="conceptory",
                                description="Finite relational models, laws and ontologies.")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = sub.add_parser("laws", help="check the algebraic laws")
    sp.add_argument("--size", type=int, default=2)
    sp.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    sp.add_argument("--samples", type=int, default=10_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--law", action="append", choices=sorted(L.LAWS), metavar="NAME",
                    help="restrict to this law (repeatable)")
    fmt(sp)
    sp.set_defaults(func=cmd_laws)

    sp = sub.add_parser("check", help="parse and compile an ontology")
    sp.add_argument("file")
    fmt(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("model", help="search for a finite model")
    sp.add_argument("file")
    sp.add_argument("--max", type=int, default=4)
    sp.add_argument("--nonempty", action="store_true")
    sp.add_argument("--out")
    fmt(sp)
    sp.set_defaults(func=cmd_model)

    sp = sub.add_parser("verify", help="evaluate an ontology in a model file")
    sp.add_argument("file")
    sp.add_argument("model")
    fmt(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("prove", help="check a proof script")
    sp.add_argument("script")
    sp.add_argument("--theory")
    sp.add_argument("--soundness", type=int, metavar="N", default=0,
                    help="also check the derivation in every model of size N")
    fmt(sp)
    sp.set_defaults(func=cmd_prove)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        sys.stderr.write(f"error: {e}\n")
        return INPUT_ERROR
    except Exception as e:  # anything else is a bug, not bad input
        sys.stderr.write(f"internal error: {type(e).__name__}: {e}\n")
        return INTERNAL


if __name__ == "__main__":
    sys.exit(main())
