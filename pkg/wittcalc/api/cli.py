"""
Command-line front end.

    python -m wittcalc.api.cli witt ghost --p 3 --m 2 --ring Z '[0,1]'
    python -m wittcalc.api.cli replay cex --json

Exit codes: 0 ok, 2 obstruction or counterexample produced, 1 usage or
computation error. Logs go to standard error.
"""

import argparse
import json
import logging
import sys
from typing import Any, List, Optional

from pydantic import ValidationError

from wittcalc.models import burnside
from wittcalc.models import free_tambara as ft
from wittcalc.models import witt
from wittcalc.models.groups import builtin_group
from wittcalc.models.polymap import (
    check_decomposition,
    congruence_check,
    cross_effect,
    degree_test,
    homogeneous_decompose,
)
from wittcalc.models.schemas import Report
from wittcalc.models.tambara import (
    TwistedWittRing,
    check_tambara,
    check_twisted_ghost_homomorphism,
    psi_check,
    twisted_ghost,
    twisted_witt_ops,
)
from wittcalc.services import check_service, descriptor_service, replay_service
from wittcalc.services.check_service import to_model, to_report
from wittcalc.services.descriptor_service import element_json, load_json, parse_element, parse_vector
from wittcalc.utils.constants import (
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    EXIT_ERROR,
    EXIT_OBSTRUCTION,
    EXIT_OK,
    FREE_TAMBARA_DEGREE,
    LOG_LEVEL,
)
from wittcalc.utils.errors import AlgebraError, NotInGhostImage

logger = logging.getLogger(__name__)

EXIT_CODES = {"ok": EXIT_OK, "obstruction": EXIT_OBSTRUCTION, "fail": EXIT_ERROR}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with 1, not argparse's default 2 (reserved for obstructions)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _ok(result: Any) -> Report:
    return Report(status="ok", payload=element_json(result))


# witt

def _witt_ring(args) -> witt.WittRing:
    return witt.WittRing(descriptor_service.build_ring(args.ring), witt.TruncationSet.p_typical(args.p, args.m))


def _need(args, count: int) -> List[str]:
    if len(args.values) != count:
        raise UsageError(f"{args.command} {args.op} takes {count} argument(s), got {len(args.values)}")
    return args.values


def run_witt(args) -> Report:
    op = args.op
    if op == "formula":
        formula = witt.universal_lift_formula(args.n, args.p, args.j)
        return _ok({"expression": str(formula.expression)})
    if op == "defect":
        if args.kind == "power":
            return _ok(witt.power_map_lift_defect(args.p))
        if args.kind == "composition":
            return _ok(witt.composition_defect(args.p, args.n, args.k))
        return _ok(witt.sum_defect(args.p))
    if op == "lift":
        f = descriptor_service.build_map(args.map, descriptor_service.build_ring(args.ring))
        (vector,) = _need(args, 1)
        return _ok(witt.lift_polymap(f, args.p, args.m, parse_vector(f.domain, vector)))
    ring = _witt_ring(args)
    base = ring.base
    if op in ("add", "mul"):
        u, v = (ring.vector(parse_vector(base, x)) for x in _need(args, 2))
        return _ok(witt.witt_add(u, v) if op == "add" else witt.witt_mul(u, v))
    if op == "teich":
        (a,) = _need(args, 1)
        return _ok(witt.teichmuller(parse_element(base, a), ring.trunc))
    (literal,) = _need(args, 1)
    values = parse_vector(base, literal)
    if op == "ghost":
        return _ok(witt.ghost(ring.vector(values)))
    if op == "unghost":
        return _ok(witt.unghost(values, ring.trunc, base))
    if op == "frob":
        return _ok(witt.frobenius(ring.vector(values)))
    if op == "versch":
        return _ok(witt.verschiebung(ring.vector(values)))
    if op == "dwork":
        return _ok({"member": witt.dwork_membership(values, args.p, samples=args.samples, seed=args.seed)})
    raise UsageError(f"unknown witt operation {op!r}")


# polymap

def run_polymap(args) -> Report:
    f = descriptor_service.build_map(args.map, descriptor_service.build_ring(args.ring))
    if args.op == "cr":
        if not args.values:
            raise UsageError("polymap cr needs at least one element")
        return _ok(cross_effect(f, [parse_element(f.domain, v) for v in args.values]))
    if args.op == "degree":
        return to_report([degree_test(f, args.n, args.samples, args.seed)])
    if args.op == "decompose":
        pieces = homogeneous_decompose(f, args.samples, args.seed)
        one = f.domain.one()
        values = {str(phi.degree_bound): phi(one) for phi in pieces}
        return to_report(check_decomposition(f, pieces, args.samples, args.seed), element_json(values))
    if args.op == "congruence":
        points = None
        if args.point:
            points = [tuple(parse_element(f.domain, v) for v in args.point)]
        result = congruence_check(f, args.p, args.k, args.samples, args.seed, points=points)
        if not result:
            return Report(status="obstruction", payload={"check": to_model(result).model_dump()},
                          witnesses=[element_json(result.witness)])
        return to_report([result])
    raise UsageError(f"unknown polymap operation {args.op!r}")


# burnside

def run_burnside(args) -> Report:
    if args.op == "obstruct-a4":
        return replay_service.replay_a4(args.samples, args.seed, p=args.p)
    ring = burnside.burnside_ring(args.group)
    if args.op == "marks":
        frame = ring.marks.frame()
        return Report(status="ok", payload={"columns": list(frame.columns), "index": list(frame.index),
                                            "marks": frame.values.tolist(), "text": frame.to_string()})
    if args.op == "mul":
        x, y = (parse_element(ring, v) for v in _need(args, 2))
        return _ok(burnside.burnside_mul(x, y))
    if args.op == "units":
        return _ok(burnside.units(ring))
    if args.op == "norm":
        group = builtin_group(args.group)
        if not args.sub:
            raise UsageError("burnside norm needs --sub")
        sub = ring.lattice.reps[ring.lattice.index_of_name(args.sub)]
        source = burnside.subgroup_ring(group, sub)
        (x,) = _need(args, 1)
        return _ok(burnside.norm(parse_element(source, x), group, sub, args.strategy))
    raise UsageError(f"unknown burnside operation {args.op!r}")


# tambara

def run_tambara(args) -> Report:
    if args.op == "psi-check":
        return to_report([psi_check(args.p, args.n, args.samples, args.seed)])
    t = descriptor_service.build_tambara(args.base, args.p)
    if args.op == "check":
        return to_report(check_tambara(t, args.samples, args.seed))
    if args.op == "witt":
        return to_report(check_service.witt_tambara_suite(t, args.p, args.m, args.samples, args.seed))
    if args.op == "twisted-ghost":
        (literal,) = _need(args, 1)
        return _ok(twisted_ghost(t, args.p, args.j, parse_vector(t.bottom, literal)))
    if args.op == "twisted-ops":
        ring = TwistedWittRing(t, args.p, args.m)
        result = None
        if args.values:
            u, v = (parse_vector(t.bottom, x) for x in _need(args, 2))
            result = element_json(twisted_witt_ops(ring, args.operation, ring.vector(u), ring.vector(v)))
        return to_report([check_twisted_ghost_homomorphism(ring, args.samples, args.seed)], result)
    raise UsageError(f"unknown tambara operation {args.op!r}")


# freetambara

def _free_bottom(t, literal):
    return t.bottom.parse(load_json(literal))


def run_freetambara(args) -> Report:
    pair = descriptor_service.build_presheaf_pair(args.pair)
    t = ft.free_tambara(pair)
    if args.op == "mul":
        a, b = (_free_bottom(t, v) for v in _need(args, 2))
        return _ok(ft.free_mul(a, b))
    if args.op == "res":
        (b,) = _need(args, 1)
        return _ok(t.res(_free_bottom(t, b)))
    if args.op in ("tr", "norm"):
        (a,) = _need(args, 1)
        return _ok((t.tr if args.op == "tr" else t.norm)(t.top.parse(a)))
    if args.op == "check":
        return to_report(check_service.free_tambara_suite(pair, args.samples, args.seed, args.degree))
    target = descriptor_service.build_tambara(args.target, args.p) if args.target else None
    if target is None:
        raise UsageError(f"freetambara {args.op} needs --target")
    if args.op == "extend":
        alpha = load_json(args.alpha or "{}")
        beta = load_json(args.beta or "{}")
        alpha = {k: parse_element(target.top, v) for k, v in alpha.items()}
        beta = {k: parse_element(target.bottom, v) for k, v in beta.items()}
        return to_report(check_service.adjunction_suite(t, target, alpha, beta, args.samples, args.seed))
    if args.op == "resolve":
        tops = [parse_element(target.top, v) for v in load_json(args.top_gens or "[]")]
        bottoms = [parse_element(target.bottom, v) for v in load_json(args.bottom_gens or "[]")]
        return to_report(check_service.resolution_suite(target, tops, bottoms, args.samples, args.seed))
    raise UsageError(f"unknown freetambara operation {args.op!r}")


# dp

def run_dp(args) -> Report:
    if args.op == "check":
        ring = descriptor_service.build_ring(args.ring)
        return to_report(check_service.divided_powers_suite(ring, args.degree, args.samples, args.seed))
    if args.op == "extend":
        phi = descriptor_service.build_map(args.map, descriptor_service.build_ring(args.ring))
        return to_report(check_service.homogeneous_extension_suite(phi, args.p, args.samples, args.seed))
    raise UsageError(f"unknown dp operation {args.op!r}")


def run_replay(args) -> Report:
    return replay_service.replay(args.name, args.samples, args.seed)


# Parser

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--samples", type=int, default=None,
                        help=f"sample budget (default {DEFAULT_SAMPLES})")

    parser = _Parser(prog="wittcalc", description="Exact Witt vector, Burnside and Tambara computations")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = commands.add_parser("witt", parents=[common], help="p-typical Witt vectors")
    p.add_argument("op", choices=["add", "mul", "ghost", "unghost", "teich", "frob", "versch", "dwork",
                                  "lift", "formula", "defect"])
    p.add_argument("values", nargs="*")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--ring", default="Z")
    p.add_argument("--map", default="identity")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--j", type=int, default=1)
    p.add_argument("--kind", choices=["power", "composition", "sum"], default="power")
    p.set_defaults(handler=run_witt)

    p = commands.add_parser("polymap", parents=[common], help="polynomial maps")
    p.add_argument("op", choices=["cr", "degree", "decompose", "congruence"])
    p.add_argument("values", nargs="*")
    p.add_argument("--map", required=True)
    p.add_argument("--ring", default="Z")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--point", nargs=2, metavar=("A", "C"))
    p.set_defaults(handler=run_polymap)

    p = commands.add_parser("burnside", parents=[common], help="Burnside rings")
    p.add_argument("op", choices=["marks", "mul", "norm", "units", "obstruct-a4"])
    p.add_argument("values", nargs="*")
    p.add_argument("--group", default="A4")
    p.add_argument("--sub")
    p.add_argument("--strategy", choices=["auto", "brute", "interpolation", "marks"], default="auto")
    p.add_argument("--p", type=int, default=3)
    p.set_defaults(handler=run_burnside)

    p = commands.add_parser("tambara", parents=[common], help="Z/2-Tambara functors")
    p.add_argument("op", choices=["check", "witt", "twisted-ghost", "twisted-ops", "psi-check"])
    p.add_argument("values", nargs="*")
    p.add_argument("--base", default="burnside:Z2")
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--j", type=int, default=1)
    p.add_argument("--operation", choices=["add", "mul"], default="add")
    p.set_defaults(handler=run_tambara)

    p = commands.add_parser("freetambara", parents=[common], help="free Z/2-Tambara functors")
    p.add_argument("op", choices=["mul", "res", "tr", "norm", "check", "extend", "resolve"])
    p.add_argument("values", nargs="*")
    p.add_argument("--pair", default='{"X": [["u", "ubar"]]}')
    p.add_argument("--target")
    p.add_argument("--alpha")
    p.add_argument("--beta")
    p.add_argument("--top-gens", dest="top_gens")
    p.add_argument("--bottom-gens", dest="bottom_gens")
    p.add_argument("--degree", type=int, default=FREE_TAMBARA_DEGREE)
    p.add_argument("--p", type=int, default=3)
    p.set_defaults(handler=run_freetambara)

    p = commands.add_parser("dp", parents=[common], help="divided powers")
    p.add_argument("op", choices=["check", "extend"])
    p.add_argument("--ring", default='{"type": "free", "basis": ["1", "x"], "mul": {"x*x": [["x", 2]]}}')
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--map", default="power:2")
    p.add_argument("--p", type=int, default=3)
    p.set_defaults(handler=run_dp)

    p = commands.add_parser("replay", parents=[common], help="replay an acceptance scenario")
    p.add_argument("name", choices=sorted(replay_service.SCENARIOS))
    p.set_defaults(handler=run_replay)
    return parser


def _render(value: Any) -> str:
    if isinstance(value, list):
        return "[" + ",".join(_render(v) for v in value) + "]"
    if isinstance(value, dict):
        if "text" in value:
            return value["text"]
        return "{" + ", ".join(f"{k}: {_render(v)}" for k, v in value.items()) + "}"
    return str(value)


def emit(report: Report, as_json: bool):
    if as_json:
        print(json.dumps(report.model_dump(mode="json"), sort_keys=True))
        return
    payload = report.payload
    if isinstance(payload, dict) and "checks" in payload:
        for check in payload["checks"]:
            mark = "PASS" if check["passed"] else "FAIL"
            print(f"{mark} {check['name']} ({check['samples']})")
        if "result" in payload:
            print(_render(payload["result"]))
    elif payload is not None:
        print(_render(payload))
    if report.status != "ok":
        print(f"status: {report.status}")
        for witness in report.witnesses:
            print(f"witness: {_render(witness)}")


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=LOG_LEVEL, stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    if args.samples is None:
        args.samples = DEFAULT_SAMPLES
    try:
        report = args.handler(args)
    except NotInGhostImage as e:
        report = Report(status="obstruction",
                        payload={"index": e.index, "residue": element_json(e.residue)},
                        witnesses=[{"index": e.index, "residue": element_json(e.residue)}])
    except (AlgebraError, ValidationError, ValueError, UsageError) as e:
        logger.debug("command failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    emit(report, args.json)
    return EXIT_CODES[report.status]


if __name__ == "__main__":
    sys.exit(main())
