"""Command-line surface.

Every subcommand reads JSON files, writes one JSON verdict to stdout, and
signals through the exit code: 0 for success or a true verdict, 1 for a
false verdict (not a member, not extendable, campaign failures), 2 for
malformed input.  Human-readable diagnostics go to stderr only.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from .campaigns import CAMPAIGNS, run_all, run_campaign
from .element import member_G
from .endo import afi_check, endo_apply, endomorphism_problems
from .fuzz import DEFAULT_SEED, FuzzConfig
from .group import validate
from .ideal import ideal_member, ideal_of
from .multiplication import (
    AlphaWitness,
    check_semantic_extension,
    check_syntactic_extension,
    constant_problems,
    product,
)
from .serialize import (
    SerializationError,
    constants_from_json,
    element_from_json,
    element_to_json,
    endo_from_json,
    group_from_json,
    ideal_from_json,
    ideal_to_json,
)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_BAD_INPUT = 2


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")


def _fail_input(message: str) -> int:
    sys.stderr.write(message + "\n")
    return EXIT_BAD_INPUT


def _load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise SerializationError(path, f"cannot read file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SerializationError(path, f"invalid JSON: {exc}") from None


def _load_group(path: str):
    spec = group_from_json(_load_json(path))
    report = validate(spec)
    return spec, report


def _residue_json(rc) -> dict:
    return {"residue": rc.residue, "modulus": rc.modulus}


def cmd_validate(args) -> int:
    spec, report = _load_group(args.group)
    if report.ok:
        _emit({"ok": True, "n": report.n})
        return EXIT_OK
    _emit({"ok": False, "problems": list(report.problems)})
    return EXIT_FALSE


def _require_valid_group(path: str):
    spec, report = _load_group(path)
    if not report.ok:
        raise SerializationError(path, "; ".join(report.problems))
    return spec


def cmd_member(args) -> int:
    spec = _require_valid_group(args.group)
    x = element_from_json(_load_json(args.element))
    cert = member_G(spec, x)
    if cert is None:
        _emit({"member": False})
        return EXIT_FALSE
    _emit({"member": True, "beta": _residue_json(cert.beta)})
    return EXIT_OK


def cmd_ideal(args) -> int:
    spec = _require_valid_group(args.group)
    g = element_from_json(_load_json(args.element))
    if member_G(spec, g) is None:
        _emit({"ok": False, "reason": "element is not a member of the group"})
        return EXIT_FALSE
    payload = ideal_to_json(ideal_of(spec, g))
    payload["ok"] = True
    _emit(payload)
    return EXIT_OK


def cmd_ideal_member(args) -> int:
    spec = _require_valid_group(args.group)
    ideal = ideal_from_json(spec, _load_json(args.ideal))
    x = element_from_json(_load_json(args.element))
    k = ideal_member(spec, ideal, x)
    if k is None:
        _emit({"member": False})
        return EXIT_FALSE
    _emit({"member": True, "k": k})
    return EXIT_OK


def cmd_mult_check(args) -> int:
    spec = _require_valid_group(args.group)
    u = constants_from_json(_load_json(args.constants))
    problems = constant_problems(spec, u)
    if problems:
        raise SerializationError(args.constants, "; ".join(problems))
    syn = check_syntactic_extension(spec, u)
    sem = check_semantic_extension(spec, u)
    payload: dict[str, Any] = {
        "syntactic": isinstance(syn, AlphaWitness),
        "semantic": bool(sem),
    }
    if isinstance(syn, AlphaWitness):
        payload["alpha"] = _residue_json(syn.alpha)
    else:
        payload["syntactic_failure"] = {"type": syn.tau, "clause": syn.clause}
    if not sem:
        payload["semantic_failure"] = {"product": sem.failing, "detail": sem.detail}
    _emit(payload)
    return EXIT_OK if sem else EXIT_FALSE


def cmd_mult_apply(args) -> int:
    spec = _require_valid_group(args.group)
    u = constants_from_json(_load_json(args.constants))
    problems = constant_problems(spec, u)
    if problems:
        raise SerializationError(args.constants, "; ".join(problems))
    x = element_from_json(_load_json(args.x))
    y = element_from_json(_load_json(args.y))
    result = product(spec, u, x, y)
    _emit({"product": element_to_json(result)})
    return EXIT_OK


def cmd_endo_apply(args) -> int:
    spec = _require_valid_group(args.group)
    phi = endo_from_json(_load_json(args.endo))
    problems = endomorphism_problems(spec, phi)
    if problems:
        raise SerializationError(args.endo, "; ".join(problems))
    x = element_from_json(_load_json(args.element))
    if member_G(spec, x) is None:
        _emit({"ok": False, "reason": "element is not a member of the group"})
        return EXIT_FALSE
    image = endo_apply(spec, phi, x)
    cert = member_G(spec, image)
    _emit({
        "ok": True,
        "image": element_to_json(image),
        "beta": _residue_json(cert.beta),
    })
    return EXIT_OK


def cmd_afi_check(args) -> int:
    spec = _require_valid_group(args.group)
    phi = endo_from_json(_load_json(args.endo))
    problems = endomorphism_problems(spec, phi)
    if problems:
        raise SerializationError(args.endo, "; ".join(problems))
    g = element_from_json(_load_json(args.element))
    if member_G(spec, g) is None:
        _emit({"ok": False, "reason": "element is not a member of the group"})
        return EXIT_FALSE
    verdict = afi_check(spec, g, phi)
    _emit({"afi": verdict.invariant, "k": verdict.witness})
    return EXIT_OK if verdict else EXIT_FALSE


def cmd_fuzz(args) -> int:
    cfg = FuzzConfig(seed=args.seed, samples=args.samples)
    if args.campaign == "all":
        reports = run_all(
            cfg, args.corpus, pivot_modulus_diagonal=args.pivot_modulus_diagonal
        )
    else:
        kwargs = {}
        if args.campaign == "principal-ideal" and args.pivot_modulus_diagonal:
            kwargs["pivot_modulus_diagonal"] = True
        elif args.pivot_modulus_diagonal:
            sys.stderr.write(
                "--pivot-modulus-diagonal only affects the principal-ideal campaign\n"
            )
        reports = [run_campaign(args.campaign, cfg, args.corpus, **kwargs)]
    payload = {"reports": [r.to_json_dict() for r in reports]}
    _emit(payload)
    failures = sum(r.failures for r in reports)
    return EXIT_OK if failures == 0 else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crq",
        description=(
            "Exact computations with reduced block-rigid groups with cyclic "
            "regulator quotient: membership, multiplications, principal "
            "absolute ideals, and invariance checks."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a group presentation")
    p.add_argument("group")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("member", help="decide group membership of an element")
    p.add_argument("group")
    p.add_argument("element")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("ideal", help="principal absolute ideal of a member")
    p.add_argument("group")
    p.add_argument("element")
    p.set_defaults(func=cmd_ideal)

    p = sub.add_parser("ideal-member", help="decide membership in a principal ideal")
    p.add_argument("group")
    p.add_argument("ideal")
    p.add_argument("element")
    p.set_defaults(func=cmd_ideal_member)

    p = sub.add_parser(
        "mult-check",
        help="dual verdict on structure constants: coefficient-level check "
        "and exact extendability",
    )
    p.add_argument("group")
    p.add_argument("constants")
    p.set_defaults(func=cmd_mult_check)

    p = sub.add_parser("mult-apply", help="product of two hull elements")
    p.add_argument("group")
    p.add_argument("constants")
    p.add_argument("x")
    p.add_argument("y")
    p.set_defaults(func=cmd_mult_apply)

    p = sub.add_parser("endo-apply", help="apply a parametric endomorphism")
    p.add_argument("group")
    p.add_argument("endo")
    p.add_argument("element")
    p.set_defaults(func=cmd_endo_apply)

    p = sub.add_parser(
        "afi-check", help="image of a member stays in its principal ideal"
    )
    p.add_argument("group")
    p.add_argument("endo")
    p.add_argument("element")
    p.set_defaults(func=cmd_afi_check)

    p = sub.add_parser("fuzz", help="run a randomized verification campaign")
    p.add_argument(
        "--campaign",
        default="all",
        choices=sorted(CAMPAIGNS) + ["all"],
    )
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--samples", type=int, default=FuzzConfig().samples)
    p.add_argument("--corpus", default=None, help="discrepancy corpus path (JSONL)")
    p.add_argument(
        "--pivot-modulus-diagonal",
        action="store_true",
        help="use the miscalibrated diagonal witness in the principal-ideal "
        "campaign (a knowingly broken variant; expect failures)",
    )
    p.set_defaults(func=cmd_fuzz)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SerializationError as exc:
        return _fail_input(f"input error at {exc.path}: {exc.message}")
    except ValueError as exc:
        return _fail_input(f"input error: {exc}")


if __name__ == "__main__":
    sys.exit(main())
