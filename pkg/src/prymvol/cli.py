"""Command-line front end: ``prym info|volume|ogods|verify|gen``.

Exit codes: 0 success, 1 an identity failed, 2 parse or validation error,
3 method not applicable, 4 generation parameters infeasible.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import io
from .cover import DoubleCover, dilation_stats, validate
from .errors import GenerationError, InapplicableError, ParseError, PrymError
from .generate import MODES, random_cover_spec
from .homology import check_homology_identities, cycle_basis, gram_det
from .polynomial import MultiPoly
from .volumes import (
    METHODS,
    CheckResult,
    enumerate_ogods,
    jacobian_polynomial,
    prym_volume,
    route_agreement,
    verify_cd,
    verify_deformation_moves,
    verify_free_volume,
    verify_ogod_classification,
    verify_thm_a,
)

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_INAPPLICABLE, EXIT_INFEASIBLE = 0, 1, 2, 3, 4
IDENTITIES = ("thm-a", "thm-b", "main", "cd", "free-volume", "pushpull", "ogod-classify", "moves")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load_valid(path: str) -> DoubleCover:
    try:
        cover = io.load_cover(path)
    except PrymError as exc:
        raise CliError(str(exc), EXIT_INVALID) from exc
    report = validate(cover)
    if not report.ok:
        raise CliError(str(report), EXIT_INVALID)
    return cover


def cmd_info(args) -> int:
    c = _load_valid(args.file)
    s = dilation_stats(c).as_dict()
    parts = [f"g_base={s['g_base']}", f"g_total={s['g_total']}", f"h={s['h']}",
             f"m_d={s['m_d']}", f"n_d={s['n_d']}", f"d={s['d']}"]
    if "A" in s:
        parts += [f"A={s['A']}", f"B={s['B']}", f"C={s['C']}"]
    parts.append(f"class={s['class']}")
    print(" ".join(parts))
    return EXIT_OK


def _jacobian(c: DoubleCover, target: str, method: str) -> MultiPoly:
    if method == "kernel":
        raise InapplicableError("kernel method applies to the prym target only")
    if target == "jac-base":
        g, variables = c.base, None
    else:
        g, variables = c.total, c.length_variables()
    if method == "combinatorial":
        return jacobian_polynomial(g, variables)
    return gram_det(g, cycle_basis(g), True, variables)


def cmd_volume(args) -> int:
    c = _load_valid(args.file)
    lengths = None
    if args.eval:
        try:
            lengths = io.lengths_from_json(io.load_json(args.eval))
        except PrymError as exc:
            raise CliError(str(exc), EXIT_INVALID) from exc
    try:
        if args.target == "prym":
            value = prym_volume(c, args.method).value
        else:
            value = _jacobian(c, args.target, args.method)
    except InapplicableError as exc:
        raise CliError(str(exc), EXIT_INAPPLICABLE) from exc
    if lengths is None:
        print(value)
        return EXIT_OK
    full = {**c.base.lengths(), **lengths}
    try:
        print(value.eval(full))
    except KeyError as exc:
        raise CliError(f"no length given for variable {exc.args[0]}", EXIT_INVALID) from exc
    return EXIT_OK


def cmd_ogods(args) -> int:
    c = _load_valid(args.file)
    ogods = enumerate_ogods(c)
    if args.json:
        print(json.dumps([o.as_dict() for o in ogods], indent=2))
    else:
        for o in ogods:
            print(f"{{{','.join(o.edges)}}} rank={o.rank}")
    return EXIT_OK


def _homology_check(c: DoubleCover) -> list[CheckResult]:
    return [CheckResult(f"pushpull:{k}", "pass" if v else "fail") for k, v in check_homology_identities(c).items()]


def run_identity(c: DoubleCover, name: str) -> list[CheckResult]:
    if name == "thm-a":
        return [verify_thm_a(c)]
    if name == "thm-b":
        r = route_agreement(c)
        return [CheckResult("thm-b", r.status, r.detail)]
    if name == "main":
        return [route_agreement(c)]
    if name == "cd":
        return [verify_cd(c)]
    if name == "free-volume":
        return [verify_free_volume(c)]
    if name == "pushpull":
        return _homology_check(c)
    if name == "ogod-classify":
        return [verify_ogod_classification(c)]
    if name == "moves":
        return verify_deformation_moves(c)
    raise ValueError(name)


def cmd_verify(args) -> int:
    c = _load_valid(args.file)
    names = IDENTITIES if args.identity == "all" else (args.identity,)
    report = {}
    failed = False
    for name in names:
        checks = run_identity(c, name)
        statuses = {ch.status for ch in checks}
        status = "fail" if "fail" in statuses else ("pass" if "pass" in statuses else "skipped")
        failed |= status == "fail"
        report[name] = {"status": status,
                        "checks": [{"name": ch.name, "status": ch.status, "detail": ch.detail} for ch in checks]}
    print(json.dumps({"ok": not failed, "identities": report}, indent=2))
    return EXIT_FAILED if failed else EXIT_OK


def cmd_gen(args) -> int:
    try:
        spec, _ = random_cover_spec(args.vertices, args.edges, args.mode, args.seed)
    except GenerationError as exc:
        raise CliError(str(exc), EXIT_INFEASIBLE) from exc
    print(io.dumps(io.spec_to_json(spec)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prym", description="Jacobian and Prym volume polynomials of double covers of metric graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="print genera and dilation statistics")
    p.add_argument("file")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("volume", help="print a volume polynomial or its value")
    p.add_argument("file")
    p.add_argument("--target", choices=("jac-base", "jac-cover", "prym"), default="prym")
    p.add_argument("--method", choices=METHODS, default="combinatorial")
    p.add_argument("--eval", metavar="LENGTHS.json", help="evaluate at these edge lengths (missing edges use the file's)")
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("ogods", help="list odd genus one decompositions with ranks")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ogods)

    p = sub.add_parser("verify", help="check identities exactly; JSON report on stdout")
    p.add_argument("file")
    p.add_argument("--identity", choices=IDENTITIES + ("all",), default="all")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="emit a random cover as JSON")
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--edges", type=int, required=True)
    p.add_argument("--mode", choices=MODES, default="general")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"prym: {exc}", file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"prym: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
