"""Command-line interface: torikit <subcommand> <fanfile> [options].

Exit codes: 0 success, 1 validation or mathematical-precondition failure,
2 input/parse error.  Output is deterministic; --format json emits the
schema documented in the README.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import rings, stratification
from .picard import picard as compute_picard
from .errors import ParseError, ToricError
from .fan import (
    Fan,
    incompleteness_reasons,
    is_complete,
    is_smooth_fan,
    orbit_table,
    parse_fan,
    simplicial_complex,
    validate_fan,
)

EXIT_OK = 0
EXIT_PRECONDITION = 1
EXIT_INPUT = 2


@dataclass
class RunConfig:
    path: str
    command: str
    max_degree: int = 20
    fmt: str = "text"
    verbose: bool = False
    cone: int | None = None
    ordinary: bool = False
    equivariant: bool = False


def _load_fan(config: RunConfig) -> Fan:
    with open(config.path, "r", encoding="utf-8") as fh:
        text = fh.read()
    fan = parse_fan(text)
    for w in fan.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return fan


def _emit(config: RunConfig, payload: dict, text_lines: list[str]) -> None:
    if config.fmt == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            print(line)


def cmd_validate(config: RunConfig) -> int:
    fan = _load_fan(config)
    report = validate_fan(fan)
    smooth = is_smooth_fan(fan) if report.valid else None
    complete = is_complete(fan) if report.valid else None
    payload = {
        "command": "validate",
        "valid": report.valid,
        "violations": [
            {"kind": k, "message": m} for k, m in report.violations
        ],
        "smooth": smooth,
        "complete": complete,
    }
    if report.valid:
        flags = ["valid"]
        flags.append("smooth" if smooth else "not smooth")
        flags.append("complete" if complete else "not complete")
        lines = [", ".join(flags)]
    else:
        lines = ["invalid:"] + [f"  [{k}] {m}" for k, m in report.violations]
    _emit(config, payload, lines)
    return EXIT_OK if report.valid else EXIT_PRECONDITION


def _require_valid(fan: Fan) -> None:
    report = validate_fan(fan)
    if not report.valid:
        msgs = "; ".join(m for _, m in report.violations)
        raise ToricError(f"fan is not valid: {msgs}")


def cmd_orbits(config: RunConfig) -> int:
    fan = _load_fan(config)
    _require_valid(fan)
    table = orbit_table(fan)
    entries = []
    lines = [f"{len(table)} orbits"]
    for e in table.entries:
        entries.append(
            {
                "cone": list(e.rayset),
                "codim": e.codim,
                "stabilizer": {
                    "rank": e.stabilizer.rank,
                    "torsion": list(e.stabilizer.torsion),
                },
                "divisors": list(e.divisors),
            }
        )
        tors = (
            ""
            if not e.stabilizer.torsion
            else f" torsion {list(e.stabilizer.torsion)}"
        )
        lines.append(
            f"  orbit of cone {list(e.rayset)}: codim {e.codim}, "
            f"stabilizer character rank {e.stabilizer.rank}{tors}, "
            f"in divisors {list(e.divisors)}"
        )
    _emit(config, {"command": "orbits", "orbits": entries}, lines)
    return EXIT_OK


def cmd_betti(config: RunConfig) -> int:
    fan = _load_fan(config)
    _require_valid(fan)
    if config.ordinary:
        poly = stratification.ordinary_poincare_polynomial(fan)
        coeffs = poly + [0] * (2 * fan.n + 1 - len(poly))
        payload = {"command": "betti", "kind": "ordinary", "coefficients": coeffs}
        lines = [", ".join(str(c) for c in coeffs)]
    else:
        series = stratification.equivariant_poincare_series(fan)
        coeffs = series.coefficients(config.max_degree)
        payload = {
            "command": "betti",
            "kind": "equivariant",
            "numerator": list(series.numerator),
            "denominator_exponent": series.denominator_exponent,
            "coefficients": coeffs,
        }
        lines = [", ".join(str(c) for c in coeffs)]
    _emit(config, payload, lines)
    return EXIT_OK


def cmd_ring(config: RunConfig) -> int:
    fan = _load_fan(config)
    _require_valid(fan)
    pres = rings.sr_presentation(fan)
    report = rings.ordinary_cohomology(fan, config.max_degree)
    payload = {
        "command": "ring",
        "generators": pres.num_generators,
        "relations": [list(r) for r in pres.relations],
        "cohomology": [
            {
                "degree": p.degree,
                "rank": p.rank,
                "torsion": list(p.torsion),
                "basis": [list(b) for b in p.basis],
            }
            for p in report.pieces
        ],
    }
    lines = [
        f"Z[x_0..x_{pres.num_generators - 1}] modulo "
        + (
            ", ".join(
                "*".join(f"x_{v}" for v in r) for r in pres.relations
            )
            or "(no relations)"
        )
    ]
    for p in report.pieces:
        tors = f", torsion {list(p.torsion)}" if p.torsion else ""
        lines.append(f"  H^{p.degree}: rank {p.rank}{tors}")
    _emit(config, payload, lines)
    return EXIT_OK


def cmd_picard(config: RunConfig) -> int:
    fan = _load_fan(config)
    _require_valid(fan)
    rep = compute_picard(fan)
    payload = {
        "command": "picard",
        "equivariant": {
            "rank": rep.equivariant_rank,
            "torsion": list(rep.equivariant_torsion),
            "basis": [
                [list(chi) for chi in fam.chars]
                for fam in rep.equivariant_basis
            ],
        },
        "ordinary": {
            "rank": rep.ordinary_rank,
            "torsion": list(rep.ordinary_torsion or ()),
        },
        "maximal_cones": [list(c) for c in fan.maximal_cones],
    }
    tors = (
        "none"
        if not rep.ordinary_torsion
        else str(list(rep.ordinary_torsion))
    )
    lines = [
        f"Pic rank {rep.ordinary_rank}, torsion {tors}; "
        f"Pic_T rank {rep.equivariant_rank}"
    ]
    _emit(config, payload, lines)
    return EXIT_OK


def cmd_hilbert(config: RunConfig) -> int:
    fan = _load_fan(config)
    _require_valid(fan)
    cones = fan.cones
    if config.cone is not None:
        if config.cone < 0 or config.cone >= len(cones):
            raise ToricError(
                f"--cone {config.cone} out of range (fan has {len(cones)} cones)"
            )
        cones = (cones[config.cone],)
    entries = []
    lines = []
    for c in cones:
        basis = fan.cone(c).hilbert_basis()
        entries.append(
            {"cone": list(c), "hilbert_basis": [list(h) for h in basis]}
        )
        lines.append(f"cone {list(c)}: {[list(h) for h in basis]}")
    _emit(config, {"command": "hilbert", "cones": entries}, lines)
    return EXIT_OK


def cmd_certify(config: RunConfig) -> int:
    fan = _load_fan(config)
    _require_valid(fan)
    strat = stratification.stratify(fan)
    perfection = stratification.certify_perfection(strat)
    injectivity = rings.check_restriction_injectivity(fan, config.max_degree)
    payload = {
        "command": "certify",
        "perfection": {
            "certified": perfection.certified,
            "failures": [
                {"cone": list(c), "weight": list(w)}
                for c, w in perfection.failures
            ],
        },
        "injectivity": {
            "all_injective": injectivity.all_injective,
            "degrees": [
                {
                    "degree": e.degree,
                    "domain_rank": e.domain_rank,
                    "image_rank": e.image_rank,
                }
                for e in injectivity.entries
            ],
        },
    }
    lines = [
        "perfection: " + ("certified" if perfection.certified else "FAILED"),
        "restriction injectivity: "
        + ("holds" if injectivity.all_injective else "FAILED")
        + f" in all degrees <= {config.max_degree}",
    ]
    _emit(config, payload, lines)
    ok = perfection.certified and injectivity.all_injective
    return EXIT_OK if ok else EXIT_PRECONDITION


COMMANDS = {
    "validate": cmd_validate,
    "orbits": cmd_orbits,
    "betti": cmd_betti,
    "ring": cmd_ring,
    "picard": cmd_picard,
    "hilbert": cmd_hilbert,
    "certify": cmd_certify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torikit",
        description="Invariants of toric varieties from rational polyhedral fans",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("fanfile")
        p.add_argument("--max-degree", type=int, default=20)
        p.add_argument(
            "--format", choices=["text", "json"], default="text"
        )
        p.add_argument("-v", "--verbose", action="store_true")
        if name == "betti":
            group = p.add_mutually_exclusive_group()
            group.add_argument("--ordinary", action="store_true")
            group.add_argument("--equivariant", action="store_true")
        if name == "hilbert":
            p.add_argument("--cone", type=int, default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.max_degree < 0 or args.max_degree % 2 != 0:
        print("error: --max-degree must be even and >= 0", file=sys.stderr)
        return EXIT_INPUT
    config = RunConfig(
        path=args.fanfile,
        command=args.command,
        max_degree=args.max_degree,
        fmt=args.format,
        verbose=args.verbose,
        cone=getattr(args, "cone", None),
        ordinary=getattr(args, "ordinary", False),
        equivariant=getattr(args, "equivariant", False),
    )
    try:
        return COMMANDS[args.command](config)
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ToricError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
