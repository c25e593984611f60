"""Command line entry point: ``python -m legendrian_calculus.run <group> <command> [inputs] [--options]``.

Inputs are fixture files or fixture names in the corpus. Options of every
subcommand are dataclasses from :mod:`.arguments`, parsed by
``HfArgumentParser``; put inputs before any boolean flag such as ``--json``.
"""
import json
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, TextIO, Tuple

from transformers import HfArgumentParser, set_seed

from . import data
from .arguments import (
    BundleArguments,
    FramedMoveArguments,
    FrontMoveArguments,
    InvariantArguments,
    OrderArguments,
    PathArguments,
    RuntimeArguments,
    SearchArguments,
    StabilizeArguments,
    SuiteArguments,
    WordPairArguments,
)
from .errors import CalculusError, SchemaError
from .framed import (
    FramedDiagram,
    SingularFramedDiagram,
    apply_move,
    crossing_change,
    crossing_changes,
    delta_I,
    delta_I_filtered,
    framed_homotopic_parity,
    framing_obstruction,
    is_loop,
    loop_words,
    self_linking,
    writhe,
)
from .fronts import FrontMove, FrontSite, applicable_front_moves, front_move, front_to_framed, stabilize, summary
from .suite import run_suite
from .topology.abelian import euler_realizable, half_class
from .topology.bundle import BundleGroup, BundleGroupElement, Witness, bundle_mul, check_toughandtechnical
from .topology.condition import condition_star
from .topology.double_points import WordPair, alpha_nu, nu_equivalent
from .topology.words import FreeGroup, parse_group
from .vassiliev import (
    alternating_sum,
    build_ladder,
    extend_invariant,
    is_order_at_most,
    roundtrip_check,
    verify_main_identity,
)

logger = logging.getLogger(__name__)

INVARIANTS: Dict[str, Callable[[FramedDiagram], int]] = {
    "self-linking": self_linking,
    "self-linking-squared": lambda k: self_linking(k) ** 2,
    "constant": lambda k: 1,
}


class UsageError(Exception):
    pass


class Context:
    """Parsed options and inputs of one invocation."""

    def __init__(self, runtime: RuntimeArguments, options: Tuple, inputs: List[str]):
        self.runtime = runtime
        self.options = options
        self.inputs = inputs

    def input(self, kind: str, position: int = 0):
        if position >= len(self.inputs):
            raise UsageError(f"missing input {position + 1}: a {kind} file or fixture name")
        return data.resolve_input(kind, self.inputs[position], self.runtime.corpus_dir)

    def all_inputs(self, kind: str) -> list:
        if self.inputs:
            return [data.resolve_input(kind, source, self.runtime.corpus_dir) for source in self.inputs]
        table = getattr(data.Corpus.load(self.runtime.corpus_dir), data.Corpus.KINDS[kind])
        return [table[name] for name in sorted(table)]


# --- fronts -------------------------------------------------------------------


def front_validate(ctx: Context):
    return {"valid": True, **summary(ctx.input("front")).to_dict()}


def front_invariants(ctx: Context):
    return summary(ctx.input("front")).to_dict()


def front_stabilize(ctx: Context):
    (args,) = ctx.options
    stabilized = stabilize(ctx.input("front"), args.i, args.j)
    return {**data.encode_front(stabilized), **summary(stabilized).to_dict()}


def front_move_command(ctx: Context):
    (args,) = ctx.options
    front = ctx.input("front")
    if args.move is None:
        return {"moves": [[move.value, site.index, site.position] for move, site in applicable_front_moves(front)]}
    moved = front_move(front, FrontMove(args.move), FrontSite(args.index, args.position))
    return {**data.encode_front(moved), **summary(moved).to_dict()}


def front_to_framed_command(ctx: Context):
    return data.encode_framed(front_to_framed(ctx.input("front")))


# --- framed diagrams and paths --------------------------------------------------


def framed_sl(ctx: Context):
    k = ctx.input("framed")
    return {"self_linking": self_linking(k), "writhe": writhe(k.diagram), "offset": k.offset}


def framed_obstruction(ctx: Context):
    k1, k2 = ctx.input("framed", 0), ctx.input("framed", 1)
    return {"obstruction": framing_obstruction(k1, k2), "homotopic": framed_homotopic_parity(k1, k2)}


def framed_apply_move(ctx: Context):
    (args,) = ctx.options
    k = ctx.input("framed")
    try:
        params = json.loads(args.params)
    except json.JSONDecodeError as e:
        raise SchemaError(f"--params is not JSON: {e}") from e
    if args.move == "crossing-change":
        moved = crossing_change(k, int(params.get("crossing", 0))).apply(k)
    else:
        moved = apply_move(k, data.decode_move({"move": args.move, **params}))
    return {**data.encode_framed(moved), "self_linking": self_linking(moved)}


def path_delta_i(ctx: Context):
    (args,) = ctx.options
    path = ctx.input("path")
    result = {"delta_i": delta_I(path), "crossing_changes": len(crossing_changes(path)), "is_loop": is_loop(path)}
    if args.filter == "alpha-nu":
        group = parse_group(args.group) if args.group else None

        def keep(snapshot: SingularFramedDiagram) -> int:
            pair = loop_words(snapshot)
            return alpha_nu(pair.checked(group) if group else pair)

        result["filtered"] = delta_I_filtered(path, keep)
    return result


# --- finite-order invariants ----------------------------------------------------


def vassiliev_alt_sum(ctx: Context):
    (args,) = ctx.options
    s = ctx.input("singular")
    return {"alternating_sum": alternating_sum(INVARIANTS[args.invariant], s), "double_points": s.order}


def vassiliev_order_test(ctx: Context):
    order, invariant = ctx.options
    corpus = ctx.all_inputs("singular")
    holds = is_order_at_most(INVARIANTS[invariant.invariant], order.n, corpus)
    return {"n": order.n, "invariant": invariant.invariant, "order_at_most": holds, "diagrams": len(corpus)}


def vassiliev_extend(ctx: Context):
    (order,) = ctx.options
    return data.encode_ladder(extend_invariant(ctx.input("ladder"), order.n, order.height))


def vassiliev_verify(ctx: Context):
    (order,) = ctx.options
    ladder = ctx.input("ladder")
    return {"knot": ladder.knot_label, "n": order.n, "holds": verify_main_identity(ladder, order.n)}


def vassiliev_roundtrip(ctx: Context):
    order, invariant = ctx.options
    x = INVARIANTS[invariant.invariant]
    names = ctx.inputs or list(data.GRID_BASES)
    ladders = [build_ladder(x, data.resolve_input("front", name, ctx.runtime.corpus_dir), order.depth, label=name)
               for name in names]
    return {
        "n": order.n,
        "invariant": invariant.invariant,
        "ladders": [data.encode_ladder(extend_invariant(ladder, order.n, order.height)) for ladder in ladders],
        "roundtrip": roundtrip_check(x, ladders, order.n, order.height),
    }


# --- topology -------------------------------------------------------------------


def _element(text: str) -> BundleGroupElement:
    k, _, w = text.partition(":")
    try:
        return BundleGroupElement(int(k), w)
    except ValueError as e:
        raise UsageError(f"bundle element {text!r} is not k:word") from e


def _bundle_group(text: str) -> BundleGroup:
    try:
        return BundleGroup(tuple(int(e) for e in text.split(",") if e))
    except ValueError as e:
        if isinstance(e, CalculusError):
            raise
        raise UsageError(f"orientation {text!r} is not a comma separated list of +1/-1") from e


def _encode_element(e: BundleGroupElement) -> Dict[str, Any]:
    return {"k": e.k, "w": e.w}


def topo_euler_realizable(ctx: Context):
    descriptor = ctx.input("descriptor")
    half = half_class(descriptor.euler, descriptor.h2)
    return {
        "h2": repr(descriptor.h2),
        "euler": list(descriptor.euler),
        "realizable": euler_realizable(descriptor.euler, descriptor.h2),
        "half": list(half) if half is not None else None,
    }


def topo_condition_star(ctx: Context):
    descriptor = ctx.input("descriptor")
    return {"name": descriptor.name, **condition_star(descriptor).to_dict()}


def topo_bundle_mul(ctx: Context):
    (args,) = ctx.options
    group = _bundle_group(args.orientation)
    return {"product": _encode_element(bundle_mul(_element(args.a), _element(args.b), group))}


def topo_alpha_nu(ctx: Context):
    (args,) = ctx.options
    group = FreeGroup(args.rank)
    pair = WordPair(args.first, args.second).checked(group)
    result: Dict[str, Any] = {"pair": [pair.first, pair.second], "alpha_nu": alpha_nu(pair)}
    if args.other_first is not None or args.other_second is not None:
        other = WordPair(args.other_first or "", args.other_second or "")
        result["equivalence"] = nu_equivalent(pair, other, args.bound, group).value
    return result


def topo_ttt_witness(ctx: Context):
    args, search = ctx.options
    group = _bundle_group(args.orientation)
    alpha, beta = _element(args.a), _element(args.b)
    witness = check_toughandtechnical(alpha, beta, group, search.bound)
    if isinstance(witness, Witness):
        return {"witness": {"n": witness.n, "i": witness.i, "j": witness.j},
                "verified": witness.holds(alpha, beta, group)}
    return {"witness": None, "bound": witness.bound}


# --- suite and corpus -----------------------------------------------------------


def suite_run(ctx: Context):
    (args,) = ctx.options
    corpus = data.Corpus.load(ctx.runtime.corpus_dir)
    only = [prefix for prefix in args.only.split(",") if prefix] if args.only else None
    report = run_suite(corpus, ctx.runtime.seed, timeout=args.timeout, progress=not ctx.runtime.json, only=only)
    return report


def corpus_list(ctx: Context):
    corpus = data.Corpus.load(ctx.runtime.corpus_dir)
    return corpus.names()


Handler = Callable[[Context], Any]

COMMANDS: Dict[Tuple[str, str], Tuple[Tuple[type, ...], Handler]] = {
    ("front", "validate"): ((), front_validate),
    ("front", "invariants"): ((), front_invariants),
    ("front", "stabilize"): ((StabilizeArguments,), front_stabilize),
    ("front", "move"): ((FrontMoveArguments,), front_move_command),
    ("front", "to-framed"): ((), front_to_framed_command),
    ("framed", "sl"): ((), framed_sl),
    ("framed", "obstruction"): ((), framed_obstruction),
    ("framed", "apply-move"): ((FramedMoveArguments,), framed_apply_move),
    ("path", "delta-i"): ((PathArguments,), path_delta_i),
    ("vassiliev", "alt-sum"): ((InvariantArguments,), vassiliev_alt_sum),
    ("vassiliev", "order-test"): ((OrderArguments, InvariantArguments), vassiliev_order_test),
    ("vassiliev", "extend"): ((OrderArguments,), vassiliev_extend),
    ("vassiliev", "verify"): ((OrderArguments,), vassiliev_verify),
    ("vassiliev", "roundtrip"): ((OrderArguments, InvariantArguments), vassiliev_roundtrip),
    ("topo", "euler-realizable"): ((), topo_euler_realizable),
    ("topo", "condition-star"): ((), topo_condition_star),
    ("topo", "bundle-mul"): ((BundleArguments,), topo_bundle_mul),
    ("topo", "alpha-nu"): ((WordPairArguments,), topo_alpha_nu),
    ("topo", "ttt-witness"): ((BundleArguments, SearchArguments), topo_ttt_witness),
    ("suite", "run"): ((SuiteArguments,), suite_run),
    ("corpus", "list"): ((), corpus_list),
}


def _usage() -> str:
    groups: Dict[str, List[str]] = {}
    for group, command in COMMANDS:
        groups.setdefault(group, []).append(command)
    return "usage: <group> <command> [inputs] [--options]\n" + "\n".join(
        f"  {group}: {' | '.join(commands)}" for group, commands in groups.items())


def _split_inputs(rest: Sequence[str]) -> Tuple[List[str], List[str]]:
    leading = []
    for token in rest:
        if token.startswith("--"):
            break
        leading.append(token)
    return leading, list(rest[len(leading):])


def _emit(result: Any, as_json: bool, out: TextIO) -> None:
    if hasattr(result, "to_json_lines"):
        print(result.to_json_lines() if as_json else result.render(), file=out)
    elif as_json:
        print(json.dumps(result, sort_keys=True), file=out)
    elif isinstance(result, dict):
        for key, value in result.items():
            print(f"{key}: {json.dumps(value) if isinstance(value, (dict, list)) else value}", file=out)
    else:
        print(result, file=out)


def dispatch(argv: Sequence[str], out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    """Run one subcommand; 0 on success, 1 on a domain error or a failing suite, 2 on a usage error."""
    out = out or sys.stdout
    err = err or sys.stderr
    if len(argv) < 2 or (argv[0], argv[1]) not in COMMANDS:
        print(f"unknown subcommand {' '.join(argv[:2])!r}\n{_usage()}", file=err)
        return 2
    option_types, handler = COMMANDS[(argv[0], argv[1])]
    inputs, flags = _split_inputs(argv[2:])

    parser = HfArgumentParser((RuntimeArguments,) + option_types)
    try:
        runtime, *options, remaining = parser.parse_args_into_dataclasses(args=flags, return_remaining_strings=True)
    except SystemExit as e:
        return int(e.code or 0)
    stray = [token for token in remaining if token.startswith("-")]
    if stray:
        print(f"unrecognized option {stray[0]}", file=err)
        return 2
    inputs += remaining

    logging.getLogger().setLevel(runtime.log_level)
    set_seed(runtime.seed)
    logger.info("%s %s inputs=%s options=%s", argv[0], argv[1], inputs, options)
    try:
        result = handler(Context(runtime, tuple(options), inputs))
    except UsageError as e:
        print(str(e), file=err)
        return 2
    except ValueError as e:
        # CalculusError and the range checks of the plain constructors
        logger.debug("domain error", exc_info=True)
        print(f"{type(e).__name__}: {e}", file=err)
        return 1
    _emit(result, runtime.json, out)
    if hasattr(result, "passed") and not result.passed:
        return 1
    return 0


def main():
    logging.basicConfig(
        format="%(asctime)s - %(levelname)s - %(name)s -   %(message)s",
        datefmt="%m/%d/%Y %H:%M:%S",
        level=logging.WARNING,
    )
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
