"""Command-line interface: ``runslab {dist,quotient,orbit,canon,verify}``.

Exit codes: 0 success, 1 a verification counterexample (or a violated
invariant), 2 invalid usage or input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import random
import sys

from . import __version__
from .enumeration import distribution
from .exceptions import DivisibilityError, InvalidInputError, InvariantViolation
from .group import (
    GroupElement,
    factored_form,
    generator_set,
    is_minimal,
    minimal_representative_with_mask,
    orbit_of,
    orbit_polynomial,
)
from .perm import MAX_N, Permutation, parse_permutation, run_count
from .verify import PROPERTIES, verify_all

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2

def dump_json(doc: dict) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _document(command: str, payload, ok: bool = True) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "payload": payload,
        "status": "ok" if ok else "failed",
    }


def _csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _perm_text(p) -> str:
    return Permutation._trusted(p).compact()


# -- commands -----------------------------------------------------------------


def cmd_dist(args) -> tuple[dict, str]:
    result = distribution(args.n, args.method, args.threads, args.force)
    payload = result.to_dict()
    if args.command == "quotient":
        quotient = result.polynomial.div_binomial_power(result.m)
        payload = {
            "n": result.n,
            "m": result.m,
            "method": result.method,
            "quotient": quotient.to_json(),
        }
        if args.format == "csv":
            text = _csv(["exponent", "coefficient"], list(quotient))
        else:
            text = f"Q_{result.n}(z) = {quotient}; m={result.m}\n"
        return _document(args.command, payload), text

    if args.format == "csv":
        return _document(args.command, payload), _csv(
            ["exponent", "coefficient"], list(result.polynomial)
        )
    lines = [f"R_{result.n}(z) = {result.polynomial}; m={result.m}"]
    if result.quotient is not None:
        lines.append(f"quotient: {result.quotient}")
    lines.append(f"multiplicity at z=-1: {result.multiplicity_at_minus_one}")
    lines.append(
        f"method: {result.method}, workers: {result.workers}, "
        f"elapsed: {result.elapsed:.3f}s"
    )
    return _document(args.command, payload), "\n".join(lines) + "\n"


def _resolve_perm(args) -> Permutation:
    if args.perm is None:
        raise InvalidInputError("--perm is required")
    if args.perm.strip().lower() == "random":
        if args.n is None:
            raise InvalidInputError("--perm random needs --n")
        if not 1 <= args.n <= MAX_N:
            raise InvalidInputError(f"n must be in 1..{MAX_N}, got {args.n}")
        entries = list(range(1, args.n + 1))
        random.Random(args.seed).shuffle(entries)
        return Permutation(entries)
    return parse_permutation(args.perm)


def cmd_orbit(args) -> tuple[dict, str]:
    p = _resolve_perm(args)
    orbit = orbit_of(p)
    gens = orbit.gens
    poly = orbit_polynomial(orbit)
    a = orbit.minimal_runs
    members = [
        {
            "mask": mask,
            "generators": list(GroupElement(mask).generators(gens)),
            "permutation": list(q),
            "runs": r,
        }
        for mask, (q, r) in enumerate(orbit.members)
    ]
    payload = {
        "permutation": list(p),
        "n": len(p),
        "m": gens.m,
        "generators": list(gens.indices),
        "members": members,
        "minimal": {
            "mask": orbit.minimal_mask,
            "permutation": list(orbit.minimal),
            "runs": a,
        },
        "polynomial": poly.to_json(),
        "factored": factored_form(a, gens.m),
    }
    if args.format == "csv":
        rows = [
            (m["mask"], _perm_text(m["permutation"]), m["runs"]) for m in members
        ]
        return _document("orbit", payload), _csv(["mask", "permutation", "runs"], rows)
    lines = [f"orbit of {p.compact()} (n={len(p)}, m={gens.m})"]
    for m in members:
        label = GroupElement(m["mask"]).label(gens)
        lines.append(f"  {label:<16} {_perm_text(m['permutation'])}  runs={m['runs']}")
    lines.append(f"minimal: {orbit.minimal.compact()} (runs={a})")
    factored = factored_form(a, gens.m)
    shown = str(poly) if str(poly) == factored else f"{poly} = {factored}"
    lines.append(f"polynomial: {shown}")
    return _document("orbit", payload), "\n".join(lines) + "\n"


def cmd_canon(args) -> tuple[dict, str]:
    p = _resolve_perm(args)
    gens = generator_set(len(p))
    q, g = minimal_representative_with_mask(p, gens)
    payload = {
        "input": list(p),
        "representative": list(q),
        "runs": run_count(q),
        "mask": g.mask,
        "generators_applied": list(g.generators(gens)),
        "is_minimal": is_minimal(q, gens),
    }
    if args.format == "csv":
        row = (_perm_text(p), q.compact(), payload["runs"], g.mask)
        return _document("canon", payload), _csv(
            ["input", "representative", "runs", "mask"], [row]
        )
    text = f"{q.compact()}  runs={payload['runs']}  mask={g.label(gens)}\n"
    return _document("canon", payload), text


def _parse_props(raw: str) -> list[str]:
    if raw.strip() == "all":
        return list(PROPERTIES)
    names = [s.strip() for s in raw.split(",") if s.strip()]
    unknown = [s for s in names if s not in PROPERTIES]
    if unknown or not names:
        raise InvalidInputError(
            f"unknown properties {unknown}; choose from {', '.join(PROPERTIES)} or 'all'"
        )
    return names


def cmd_verify(args) -> tuple[dict, str]:
    names = _parse_props(args.props)
    if args.n_min > args.n_max:
        raise InvalidInputError(f"--n-min {args.n_min} exceeds --n-max {args.n_max}")
    reports = verify_all(
        (args.n_min, args.n_max), names, workers=args.threads, force=args.force
    )
    ok = all(r.passed for r in reports)
    payload = {"reports": [r.to_dict() for r in reports], "all_passed": ok}
    if args.format == "csv":
        rows = []
        for r in reports:
            cx = ""
            if r.counterexample is not None:
                perm, detail = r.counterexample
                cx = detail if perm is None else f"{perm}: {detail}"
            rows.append((r.property, r.n_range[0], r.n_range[1], r.passed, r.checked, cx))
        text = _csv(["property", "n_min", "n_max", "passed", "checked", "counterexample"], rows)
    else:
        lines = []
        for r in reports:
            flag = "PASS" if r.passed else "FAIL"
            line = f"{flag} {r.property:<17} n={r.n_range[0]:<3} checked={r.checked}"
            if r.property == "divisibility":
                info = r.notes.get("multiplicity", {}).get(str(r.n_range[0]))
                if info:
                    line += f"  m={info['m']} multiplicity={info['multiplicity']}"
            lines.append(line)
            if r.counterexample is not None:
                perm, detail = r.counterexample
                where = "" if perm is None else f" at {perm}"
                lines.append(f"     counterexample{where}: {detail}")
        lines.append("all properties verified" if ok else "VERIFICATION FAILED")
        text = "\n".join(lines) + "\n"
    return _document("verify", payload, ok), text


# -- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="runslab",
        description="Alternating-run polynomials of permutations and the "
        "(Z/2)^m action that factors them.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument(
        "--threads",
        type=int,
        default=os.cpu_count() or 1,
        help="worker processes for enumeration (default: CPU count)",
    )
    common.add_argument(
        "--force", action="store_true", help="allow n above the default limits"
    )
    common.add_argument(
        "--seed", type=int, default=0, help="seed for --perm random (default: 0)"
    )

    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in (
        ("dist", "compute R_n(z)"),
        ("quotient", "compute R_n(z) / (1+z)^m only"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--method", choices=("brute", "orbit"), default="brute")

    for name, helptext in (
        ("orbit", "list the orbit of a permutation"),
        ("canon", "minimal representative of a permutation's orbit"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument(
            "--perm",
            required=True,
            help='"3 1 5 4 6 2", "315462", or "random" (with --n and --seed)',
        )
        p.add_argument("--n", type=int, help="length for --perm random")

    p = sub.add_parser("verify", parents=[common], help="run exhaustive property checks")
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument(
        "--props",
        default="all",
        help=f"comma-separated subset of: {', '.join(PROPERTIES)}; or 'all'",
    )
    return parser


COMMANDS = {
    "dist": cmd_dist,
    "quotient": cmd_dist,
    "orbit": cmd_orbit,
    "canon": cmd_canon,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    if args.threads < 1:
        parser.error("--threads must be >= 1")

    try:
        doc, text = COMMANDS[args.command](args)
    except InvalidInputError as exc:
        return _fail(args, str(exc), EXIT_USAGE)
    except (DivisibilityError, InvariantViolation) as exc:
        return _fail(args, str(exc), EXIT_COUNTEREXAMPLE)

    sys.stdout.write(dump_json(doc) if args.format == "json" else text)
    return EXIT_OK if doc["status"] == "ok" else EXIT_COUNTEREXAMPLE


def _fail(args, message: str, code: int) -> int:
    print(f"runslab {args.command}: error: {message}", file=sys.stderr)
    if args.format == "json":
        sys.stdout.write(dump_json(_document(args.command, {"error": message}, ok=False)))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
