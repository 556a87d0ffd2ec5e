"""Command line front end: ``lmc <subcommand> ...``.

Exit codes: 0 pass / feasible / facet, 1 meaningful negative (infeasible,
non-facet, disagreement), 2 input error, 3 enumeration guard tripped.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from dataclasses import dataclass, field
from typing import Any

from . import formats
from .facets import (
    VwCutContext,
    check_box_lower,
    check_box_upper,
    check_cut_conditions,
    check_cycle_path_facet,
    check_single_edge_cut_facet,
)
from .fixtures import named_fixture, parse_gen_spec
from .graph import GraphError, LiftedPair
from .inequality import LinearInequality, Tag, from_tag
from .lifting import (
    enumerate_lifted_multicuts,
    is_lifted_multicut,
    labeling_str,
    lift_labeling,
    parse_labeling,
    violated_inequalities,
)
from .partitions import NotAMulticut, enumerate_decompositions, enumerate_multicuts, subset_from_bits, subset_to_bits
from .polytope import InvalidInequality, affine_dimension, face
from .lifting import lifted_vertex_array
from .solver import CostFunction, InstanceTooLarge, max_nodes_guard, solve_branch_and_bound, solve_exact, solve_greedy
from .verify import SUITES, designated_cut_report, run_suite

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


class InputError(Exception):
    pass


@dataclass
class RunReport:
    command: list[str]
    input_digest: str
    seed: int
    result: Any
    timing: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "input_digest": self.input_digest,
            "seed": self.seed,
            "result": self.result,
            "timing": self.timing,
        }


# -- inputs ------------------------------------------------------------------------


def _read_json(path: str) -> Any:
    try:
        if path == "-":
            return json.load(sys.stdin)
        return formats.load_json(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg})") from None


def _load_pair(args) -> tuple[LiftedPair, Any]:
    """Resolve the pair from a file, ``--fixture`` or ``--gen``; also returns the fixture if any."""
    fx = None
    if getattr(args, "fixture", None):
        try:
            fx = named_fixture(args.fixture)
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
        pair = fx.pair
    elif getattr(args, "gen", None):
        pair = parse_gen_spec(args.gen, seed=args.seed)
    elif getattr(args, "pair", None):
        pair = formats.pair_from_json(_read_json(args.pair))
    else:
        raise InputError("no input: give a pair file, --fixture or --gen")
    return pair, fx


def _guard(args, pair: LiftedPair):
    limit = max_nodes_guard()
    if pair.n > limit and not args.force:
        raise InstanceTooLarge(f"{pair.n} nodes exceeds LMC_MAX_NODES={limit}; rerun with --force")


def _digest(obj: Any) -> str:
    return hashlib.sha256(formats.dumps(obj).encode()).hexdigest()


# -- subcommands -----------------------------------------------------------------------


def cmd_check(args) -> tuple[int, Any, Any]:
    pair, _ = _load_pair(args)
    x = parse_labeling(pair, args.labeling)
    ok = is_lifted_multicut(pair, x)
    viol = violated_inequalities(pair, x)
    if ok == bool(viol):
        raise RuntimeError("inequality and component tests disagree")  # pragma: no cover
    result = {
        "labeling": labeling_str(x),
        "feasible": ok,
        "violated": [dict(ineq.to_json(pair.edges), violation=str(ineq.violation(x))) for ineq in viol],
    }
    return (EXIT_OK if ok else EXIT_NEGATIVE), pair, result


def cmd_lift(args):
    pair, _ = _load_pair(args)
    try:
        m = subset_from_bits(pair.base, args.multicut)
        x = lift_labeling(pair, m)
    except NotAMulticut as exc:
        return EXIT_NEGATIVE, pair, {"multicut": args.multicut, "error": "not a multicut",
                                     "witness": list(exc.witness), "path": exc.path}
    return EXIT_OK, pair, {"multicut": args.multicut, "labeling": labeling_str(x)}


def cmd_enumerate(args):
    pair, _ = _load_pair(args)
    _guard(args, pair)
    if args.what == "lifted":
        items = [labeling_str(x) for x in enumerate_lifted_multicuts(pair)]
    elif args.what == "multicuts":
        items = [subset_to_bits(pair.lifted, m) for m in enumerate_multicuts(pair.lifted)]
    else:
        items = [[list(b) for b in d.blocks] for d in enumerate_decompositions(pair.base)]
    return EXIT_OK, pair, {"what": args.what, "count": len(items), "items": items}


def cmd_dim(args):
    pair, _ = _load_pair(args)
    _guard(args, pair)
    X = lifted_vertex_array(pair)
    dim = affine_dimension(X)
    d = len(pair.edges)
    return (EXIT_OK if dim == d else EXIT_NEGATIVE), pair, {"vertices": int(X.shape[0]), "edges": d, "dimension": dim}


def _load_inequality(args, pair: LiftedPair) -> LinearInequality:
    if args.tag:
        try:
            return from_tag(pair, Tag.parse(args.tag))
        except (ValueError, KeyError) as exc:
            raise InputError(f"bad tag {args.tag!r}: {exc}") from None
    if args.inequality:
        try:
            ineq = LinearInequality.from_json(_read_json(args.inequality), pair.edges)
        except (ValueError, KeyError) as exc:
            raise InputError(f"bad inequality file: {exc}") from None
        if not any(ineq.coeffs):
            raise InputError("inequality has no nonzero coefficient")
        return ineq
    raise InputError("give --tag or --inequality")


def theorem_verdict(pair: LiftedPair, tag: Tag | None):
    """(verdict, theorem name, violated, witnesses); verdict is True, False or 'inconclusive'."""
    if tag is None:
        return "inconclusive", None, [], {}
    if tag.family in ("cycle", "path"):
        v, name = check_cycle_path_facet(pair, tag), "cycle/path chordless"
    elif tag.family == "box_upper":
        v, name = check_box_upper(pair, tag.edge), "upper box"
    elif tag.family == "box_lower":
        v, name = check_box_lower(pair, tag.edge), "lower box"
    else:
        ctx = VwCutContext(pair, tag.edge, tag.support)
        if len(ctx.cut) == 1:
            v, name = check_single_edge_cut_facet(ctx), "single-edge cut"
        else:
            v, name = check_cut_conditions(ctx), "cut necessary conditions"
    verdict = "inconclusive" if v.facet is None else v.facet
    from .verify import _jsonable

    return verdict, name, v.violated, _jsonable(v.witnesses)


def cmd_facet_check(args):
    pair, _ = _load_pair(args)
    _guard(args, pair)
    ineq = _load_inequality(args, pair)
    result: dict[str, Any] = {"inequality": ineq.to_json(pair.edges)}
    try:
        S = face(pair, ineq)
    except InvalidInequality as exc:
        result.update({"valid": False, "violated_by": labeling_str(exc.witness), "oracle_verdict": False,
                       "theorem_verdict": "inconclusive", "violated_conditions": [], "witnesses": {}})
        return EXIT_NEGATIVE, pair, result
    oracle = affine_dimension(S) == len(pair.edges) - 1
    try:
        verdict, name, violated, wit = theorem_verdict(pair, ineq.tag)
    except GraphError as exc:
        raise InputError(str(exc)) from None
    agree = verdict == "inconclusive" or verdict == oracle
    result.update({
        "valid": True,
        "face_vertices": int(S.shape[0]),
        "face_dimension": affine_dimension(S),
        "oracle_verdict": oracle,
        "theorem": name,
        "theorem_verdict": verdict,
        "agree": agree,
        "violated_conditions": violated,
        "witnesses": wit,
    })
    return (EXIT_OK if oracle and agree else EXIT_NEGATIVE), pair, result


def cmd_solve(args):
    if args.fixture or args.gen:
        pair, fx = _load_pair(args)
        if fx is not None and fx.costs is not None:
            costs = CostFunction(fx.costs)
        else:
            rng = random.Random(args.seed)
            costs = CostFunction(tuple(rng.randint(-5, 5) for _ in pair.edges))
    elif args.pair:
        data = _read_json(args.pair)
        pair, costs = formats.instance_from_json(data)
    else:
        raise InputError("no instance: give an instance file, --fixture or --gen")
    if args.method == "exact":
        sol = solve_exact(pair, costs, force=args.force)
    elif args.method == "bnb":
        sol = solve_branch_and_bound(pair, costs)
    else:
        sol = solve_greedy(pair, costs)
    out = sol.to_json()
    out["costs"] = costs.to_json(pair)
    return EXIT_OK, (pair, costs), out


def cmd_gen(args):
    pair = parse_gen_spec(args.spec, seed=args.seed)
    if args.costs:
        lo, _, hi = args.costs.partition(",")
        rng = random.Random(args.seed)
        costs = CostFunction(tuple(rng.randint(int(lo), int(hi)) for _ in pair.edges))
        return EXIT_OK, None, formats.instance_to_json(pair, costs)
    return EXIT_OK, None, formats.pair_to_json(pair)


def cmd_verify(args):
    if args.suite not in SUITES:
        raise InputError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    pair, fx = _load_pair(args)
    _guard(args, pair)
    res = run_suite(args.suite, pair)
    result = res.to_json()
    ok = res.ok
    if fx is not None and fx.f is not None and args.suite == "cuts-necessary":
        rep = designated_cut_report(pair, fx.f, fx.cut)
        rep["captioned_condition"] = fx.condition
        rep["captioned_violated"] = fx.condition in rep["violated_conditions"]
        result["designated"] = rep
        ok = ok and rep["captioned_violated"] and not rep["oracle_facet"]
    return (EXIT_OK if ok else EXIT_NEGATIVE), pair, result


# -- output ------------------------------------------------------------------------


def _tsv(result: Any) -> str:
    lines = []
    if isinstance(result, dict) and "items" in result:
        for it in result["items"]:
            lines.append(it if isinstance(it, str) else json.dumps(it, separators=(",", ":")))
        return "\n".join(lines)
    if isinstance(result, dict):
        for k in sorted(result):
            v = result[k]
            if isinstance(v, dict) and k == "counts":
                for ck in sorted(v):
                    lines.append(f"{ck}\t{v[ck]}")
                continue
            lines.append(f"{k}\t{v if isinstance(v, (str, int, bool)) else json.dumps(v, separators=(',', ':'))}")
        return "\n".join(lines)
    return str(result)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lmc", description="Lifted multicut toolkit")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "tsv"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--force", action="store_true", help="ignore the LMC_MAX_NODES guard")

    def src(sp, positional="pair"):
        sp.add_argument(positional, nargs="?", help="JSON file ('-' for stdin)")
        sp.add_argument("--fixture", help="named fixture instead of a file")
        sp.add_argument("--gen", help="generator spec instead of a file")

    sub = p.add_subparsers(dest="cmd", required=True)
    sp = sub.add_parser("check", parents=[common], help="is a labeling a lifted multicut")
    src(sp)
    sp.add_argument("--labeling", required=True, help="01-string over E' in canonical order")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("lift", parents=[common], help="lift a base multicut")
    src(sp)
    sp.add_argument("--multicut", required=True, help="01-string over E in canonical order")
    sp.set_defaults(func=cmd_lift)

    sp = sub.add_parser("enumerate", parents=[common], help="list lifted multicuts, multicuts or decompositions")
    src(sp)
    sp.add_argument("--what", choices=("lifted", "multicuts", "decompositions"), default="lifted")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("dim", parents=[common], help="affine dimension of the lifted multicut polytope")
    src(sp)
    sp.set_defaults(func=cmd_dim)

    sp = sub.add_parser("facet-check", parents=[common], help="theorem verdict versus brute-force oracle")
    src(sp)
    sp.add_argument("--tag", help="e.g. 'cut(1,2|0,1)' or 'box_upper(1,2)'")
    sp.add_argument("--inequality", help="inequality JSON file")
    sp.set_defaults(func=cmd_facet_check)

    sp = sub.add_parser("solve", parents=[common], help="minimum cost lifted multicut")
    src(sp)
    sp.add_argument("--method", choices=("exact", "bnb", "greedy"), default="exact")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("gen", parents=[common], help="emit a generated pair")
    sp.add_argument("spec", help="e.g. 'path(3) +0,2' or 'random n=5 p=0.6 lift=0.5 seed=7'")
    sp.add_argument("--costs", help="'lo,hi': also draw integer costs and emit an instance")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("verify", parents=[common], help="run a predicate-versus-oracle suite")
    src(sp)
    sp.add_argument("--suite", required=True)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    t0 = time.perf_counter()
    try:
        code, source, result = args.func(args)
    except InstanceTooLarge as exc:
        print(f"lmc: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (InputError, GraphError, ValueError) as exc:
        print(f"lmc: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.cmd == "gen":
        print(formats.dumps(result) if args.format == "json" else _tsv(result))
        return code
    if isinstance(source, tuple):
        digest = _digest(formats.instance_to_json(*source))
    else:
        digest = _digest(formats.pair_to_json(source))
    report = RunReport(argv, digest, args.seed, result, {"seconds": round(time.perf_counter() - t0, 6)})
    if args.format == "tsv":
        print(f"# seed\t{args.seed}\n# input_digest\t{digest}")
        print(_tsv(result))
    else:
        print(json.dumps(report.to_json(), sort_keys=True))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
