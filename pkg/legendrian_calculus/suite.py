"""Property checks over a corpus, collected into a report.

Every check is a function ``(corpus, rng) -> (ok, values)`` registered with
:func:`check`. Checks run in registration order and each draws from its own
generator seeded by ``(seed, position)``, so a report depends only on the
corpus and the seed.
"""
import json
import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from func_timeout import FunctionTimedOut, func_timeout
from tqdm import tqdm
from transformers import set_seed

from . import data
from .data import GRID_BASES, GRID_TOTAL, Corpus
from .errors import CalculusError
from .framed import (
    FramedDiagram,
    SingularFramedDiagram,
    apply_move,
    concat_paths,
    crossing_change,
    delta_I,
    delta_I_filtered,
    framed_homotopic_parity,
    framing_obstruction,
    is_loop,
    loop_words,
    random_move,
    reverse_path,
    self_linking,
    set_crossing_sign,
    shift_framing,
)
from .fronts import (
    applicable_front_moves,
    bennequin,
    cusp_count,
    front_move,
    front_to_framed,
    reroot,
    reverse_orientation,
    rotation_number,
    stabilize,
    summary,
)
from .topology.abelian import FGAbelianGroup, euler_realizable
from .topology.bundle import (
    IDENTITY,
    BundleGroup,
    BundleGroupElement,
    Witness,
    bundle_mul,
    check_toughandtechnical,
    commute,
    orientation_character,
    random_element,
)
from .topology.condition import condition_star
from .topology.double_points import Equivalence, WordPair, alpha_nu, nu_equivalent
from .topology.words import FreeGroup
from .vassiliev import (
    InvariantLadder,
    alternating_sum,
    build_ladder,
    extend_invariant,
    extension_coefficients,
    is_order_at_most,
    kinked_identity,
    roundtrip_check,
    verify_main_identity,
)

logger = logging.getLogger(__name__)

FUZZ_MOVES = 50
LADDER_FLOOR = -8
BUNDLE_TRIPLES = 1000
COMMUTING_PAIRS = 100
WITNESS_BOUND = 6
CONJUGATIONS = 500

# bundled path fixtures with known counts: (delta_I, delta_I filtered by alpha o nu)
EXPECTED_DELTAS = {
    "kink_crossing_change": (-1, None),
    "contractible_loop_crossing": (-1, 0),
    "essential_loop_crossing": (-1, -1),
    "kink_flip_back": (0, 0),
}

# bundled descriptors with known verdicts: (status, rule)
EXPECTED_VERDICTS = {
    "s1xs2": ("Fails", "InterpretationII"),
    "tight_placeholder": ("Holds", "Tight"),
    "torsion_euler": ("Holds", "Torsion"),
    "atoroidal": ("Holds", "Atoroidal"),
}


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIP = "skip"


class SkipCheck(Exception):
    """Raised by a check whose fixtures are missing from the corpus."""


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: CheckStatus
    values: Dict[str, Any] = field(default_factory=dict)
    tag: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {"check": self.name, "status": self.status.value, "values": self.values, "tag": self.tag}


@dataclass(frozen=True)
class RunReport:
    seed: int
    results: Tuple[CheckResult, ...] = ()

    @property
    def passed(self) -> bool:
        return all(r.status is not CheckStatus.FAIL for r in self.results)

    def counts(self) -> Dict[str, int]:
        return {status.value: sum(1 for r in self.results if r.status is status) for status in CheckStatus}

    def to_frame(self) -> pd.DataFrame:
        rows = [{"check": r.name, "status": r.status.value, "tag": r.tag,
                 "values": json.dumps(r.values, sort_keys=True)} for r in self.results]
        return pd.DataFrame(rows, columns=["check", "status", "tag", "values"])

    def to_json_lines(self) -> str:
        return "\n".join(json.dumps(r.to_dict(), sort_keys=True) for r in self.results)

    def render(self) -> str:
        table = self.to_frame()[["check", "status", "values"]]
        counts = ", ".join(f"{n} {status}" for status, n in self.counts().items())
        return f"{table.to_string(index=False)}\n\nseed {self.seed}: {counts}"


Check = Callable[[Corpus, np.random.Generator], Tuple[bool, Dict[str, Any]]]
CHECKS: List[Tuple[str, str, Check]] = []


def check(name: str, tag: str) -> Callable[[Check], Check]:
    def register(fn: Check) -> Check:
        CHECKS.append((name, tag, fn))
        return fn

    return register


def _require(table: Dict[str, Any], what: str) -> Dict[str, Any]:
    if not table:
        raise SkipCheck(f"the corpus has no {what}")
    return table


# --- fronts ---------------------------------------------------------------------


@check("fronts.move_invariance", "front moves preserve tb and r")
def _front_move_invariance(corpus, rng):
    broken = []
    sites = 0
    for name, front in sorted(_require(corpus.fronts, "fronts").items()):
        expected = (bennequin(front), rotation_number(front))
        for move, site in applicable_front_moves(front):
            sites += 1
            moved = front_move(front, move, site)
            if (bennequin(moved), rotation_number(moved)) != expected:
                broken.append(f"{name}:{move.value}@{site.index},{site.position}")
    return not broken, {"sites": sites, "broken": broken[:10]}


@check("fronts.stabilization_grid", "K^{i,j} shifts tb by -(i+j) and r by i-j")
def _stabilization_grid(corpus, rng):
    broken = []
    compared = 0
    for base in GRID_BASES:
        if base not in corpus.fronts:
            continue
        front = corpus.fronts[base]
        tb, r = bennequin(front), rotation_number(front)
        for i in range(GRID_TOTAL + 1):
            for j in range(GRID_TOTAL + 1 - i):
                stabilized = corpus.fronts.get(f"{base}^{i},{j}", front)
                compared += 1
                if (bennequin(stabilized), rotation_number(stabilized)) != (tb - i - j, r + i - j):
                    broken.append(f"{base}^{i},{j}")
                # composing two stabilizations adds their counts
                twice = stabilize(stabilize(front, i, 0), 0, j)
                if (bennequin(twice), rotation_number(twice)) != (tb - i - j, r + i - j):
                    broken.append(f"{base}^{i},0^0,{j}")
    if not compared:
        raise SkipCheck(f"none of {GRID_BASES} is in the corpus")
    return not broken, {"fronts": compared, "broken": broken}


@check("fronts.orientation", "reversal negates r, rerooting changes nothing")
def _front_orientation(corpus, rng):
    broken = []
    for name, front in sorted(_require(corpus.fronts, "fronts").items()):
        reverse = reverse_orientation(front)
        if rotation_number(reverse) != -rotation_number(front) or bennequin(reverse) != bennequin(front):
            broken.append(f"{name}:reverse")
        if cusp_count(front) % 2:
            broken.append(f"{name}:cusps")
        base = summary(front)
        for k in range(len(front.traversal)):
            if summary(reroot(front, k)) != base:
                broken.append(f"{name}:reroot {k}")
    return not broken, {"broken": broken}


@check("fronts.front_to_framed", "self-linking of the contact framing is tb")
def _front_to_framed(corpus, rng):
    values = {name: [bennequin(front), self_linking(front_to_framed(front))]
              for name, front in sorted(_require(corpus.fronts, "fronts").items())}
    return all(tb == sl for tb, sl in values.values()), {"tb_sl": values}


# --- framed diagrams ------------------------------------------------------------


def _fuzz(k: FramedDiagram, rng, moves: int, flip_rate: float = 0.0) -> Tuple[bool, int]:
    """Random moves (and crossing changes at ``flip_rate``) on ``k``; self-linking
    must stay put, or change by two at each crossing change."""
    expected = self_linking(k)
    flips = 0
    for _ in range(moves):
        crossings = k.diagram.crossings()
        if crossings and rng.random() < flip_rate:
            event = crossing_change(k, crossings[int(rng.integers(0, len(crossings)))])
            flips += 1
            expected += 2 * event.sign
            k = event.apply(k)
        else:
            k = apply_move(k, random_move(k, rng))
        if self_linking(k) != expected:
            return False, flips
    return True, flips


@check("framed.move_fuzz", "framed moves preserve self-linking")
def _framed_move_fuzz(corpus, rng):
    results = {name: _fuzz(k, rng, FUZZ_MOVES)[0] for name, k in sorted(_require(corpus.framed, "framed").items())}
    return all(results.values()), {"moves": FUZZ_MOVES, "fixtures": results}


@check("framed.parity", "crossing changes move self-linking by 2")
def _framed_parity(corpus, rng):
    results = {}
    for name, k in sorted(_require(corpus.framed, "framed").items()):
        ok, flips = _fuzz(k, rng, FUZZ_MOVES, flip_rate=0.3)
        results[name] = {"ok": ok, "crossing_changes": flips}
    ok = all(r["ok"] for r in results.values())
    ok = ok and [framed_homotopic_parity(FramedDiagram(), FramedDiagram(offset=m)) for m in (0, 1, 2)] \
        == [True, False, True]
    return ok, {"fixtures": results}


@check("framed.obstruction", "framing obstructions add up")
def _framing_obstruction(corpus, rng):
    broken = []
    for name, k in sorted(_require(corpus.framed, "framed").items()):
        a, b, c = (int(x) for x in rng.integers(-6, 7, size=3))
        k1, k2, k3 = shift_framing(k, a), shift_framing(k, b), shift_framing(k, c)
        if framing_obstruction(k1, k3) != framing_obstruction(k1, k2) + framing_obstruction(k2, k3):
            broken.append(name)
        if framing_obstruction(k1, k2) != a - b:
            broken.append(name)
    return not broken, {"broken": broken}


@check("framed.paths", "delta_I adds over concatenation and flips under reversal")
def _path_algebra(corpus, rng):
    values = {}
    ok = True
    for name, path in sorted(_require(corpus.paths, "paths").items()):
        reverse = reverse_path(path)
        there_and_back = concat_paths(path, reverse)
        values[name] = {"delta_i": delta_I(path), "reversed": delta_I(reverse)}
        ok = ok and delta_I(reverse) == -delta_I(path) and delta_I(there_and_back) == 0 and is_loop(there_and_back)
    return ok, values


def _alpha_nu_filter(snapshot: SingularFramedDiagram) -> int:
    return alpha_nu(loop_words(snapshot))


@check("framed.alpha_nu_filter", "delta_I filtered by alpha o nu")
def _alpha_nu_paths(corpus, rng):
    values = {}
    ok = True
    for name, path in sorted(_require(corpus.paths, "paths").items()):
        filtered = delta_I_filtered(path, _alpha_nu_filter)
        values[name] = {"delta_i": delta_I(path), "alpha_nu": filtered}
        if name in EXPECTED_DELTAS:
            total, expected_filtered = EXPECTED_DELTAS[name]
            ok = ok and delta_I(path) == total and expected_filtered in (None, filtered)
    return ok, values


# --- finite-order invariants ----------------------------------------------------


def _sl_squared(k: FramedDiagram) -> int:
    return self_linking(k) ** 2


def _enumerated_sum(x, s: SingularFramedDiagram) -> int:
    """Alternating sum over the bits of 0..2^d - 1; a 1 bit resolves negatively."""
    marked = sorted(s.marked)
    total = 0
    for mask in range(2 ** len(marked)):
        diagram = s.diagram
        for bit, crossing in enumerate(marked):
            diagram = set_crossing_sign(diagram, crossing, -1 if mask >> bit & 1 else 1)
        total += (-1) ** bin(mask).count("1") * x(FramedDiagram(diagram, s.offset))
    return total


@check("vassiliev.oracle", "alternating sums agree with direct enumeration")
def _alternating_oracle(corpus, rng):
    values = {}
    for name, s in sorted(_require(corpus.singular, "singular diagrams").items()):
        if s.order > 4:
            continue
        values[name] = [[alternating_sum(x, s), _enumerated_sum(x, s)] for x in (self_linking, _sl_squared)]
    return all(a == b for pairs in values.values() for a, b in pairs), {"sums": values}


@check("vassiliev.order", "self-linking has order 1 and not 0")
def _order_of_self_linking(corpus, rng):
    singular = list(_require(corpus.singular, "singular diagrams").values())
    orders = {}
    monotone = True
    for label, x in (("sl", self_linking), ("sl^2", _sl_squared), ("constant", lambda k: 5)):
        verdicts = [is_order_at_most(x, n, singular) for n in range(3)]
        orders[label] = verdicts
        monotone = monotone and all(b for a, b in zip(verdicts, verdicts[1:]) if a)
    ok = orders["sl"][:2] == [False, True] and orders["constant"][0] and monotone
    return ok, {"diagrams": len(singular), "orders": orders}


@check("vassiliev.binomial", "the order-n recursion fixes constants and polynomials of degree n")
def _binomial_identity(corpus, rng):
    ok = extension_coefficients(1) == [2, -1]
    values = {}
    for n in range(1, 6):
        rungs = range(-2 * (n + 2), 1, 2)
        constant = InvariantLadder("constant", {r: 7 for r in rungs}, cutoff=0)
        coefficients = [int(c) for c in rng.integers(-3, 4, size=n + 1)]
        low = InvariantLadder("degree n", {r: _poly(coefficients, r) for r in rungs}, cutoff=0)
        high = InvariantLadder("degree n+1", {r: _poly(coefficients + [1], r) for r in rungs}, cutoff=0)
        extended = extend_invariant(low, n, height=2)
        fixed = [extended.value(r) for r in (2, 4)] == [_poly(coefficients, r) for r in (2, 4)]
        values[n] = {
            "constant": extend_invariant(constant, n).value(2),
            "degree_n_fixed": fixed,
            "degree_n_plus_1_fails": not verify_main_identity(high, n),
        }
        ok = ok and values[n]["constant"] == 7 and fixed and values[n]["degree_n_plus_1_fails"]
    return ok, {"orders": values}


def _poly(coefficients: List[int], r: int) -> int:
    return sum(c * r ** k for k, c in enumerate(coefficients))


def _self_linking_ladders(corpus) -> Dict[str, InvariantLadder]:
    ladders = {}
    for base in GRID_BASES:
        if base in corpus.fronts:
            front = corpus.fronts[base]
            depth = (bennequin(front) - LADDER_FLOOR) // 2
            ladders[base] = build_ladder(self_linking, front, depth, label=base)
    if not ladders:
        raise SkipCheck(f"none of {GRID_BASES} is in the corpus")
    return ladders


@check("vassiliev.roundtrip", "extension from Legendrian rungs reproduces the framed invariant")
def _roundtrip(corpus, rng):
    ladders = _self_linking_ladders(corpus)
    values = {}
    for name, ladder in ladders.items():
        extended = extend_invariant(ladder, 1)
        values[name] = {
            "cutoff": ladder.cutoff,
            "rungs": sorted(ladder.values),
            "extended": extended.value(ladder.cutoff + 2),
            "identity": verify_main_identity(extended, 1),
        }
    ok = all(v["identity"] for v in values.values()) and roundtrip_check(self_linking, ladders.values(), 1)
    return ok, values


@check("vassiliev.kinked_identity", "alternating sums over added kinks vanish")
def _kinked_identity(corpus, rng):
    values = {}
    for name, ladder in _self_linking_ladders(corpus).items():
        lowest = min(ladder.values)
        values[name] = {rung: kinked_identity(ladder, rung, 1) for rung in ladder.values if rung - 4 >= lowest}
    return all(v == 0 for sums in values.values() for v in sums.values()), values


@check("vassiliev.ladders", "stored ladders satisfy the order-1 recursion")
def _ladder_fixtures(corpus, rng):
    values = {}
    ok = True
    for name, ladder in sorted(_require(corpus.ladders, "ladders").items()):
        once = extend_invariant(ladder, 1)
        identity = verify_main_identity(ladder, 1)
        idempotent = extend_invariant(once, 1) == once
        round_trip = ladder.base is None or roundtrip_check(self_linking, [ladder], 1)
        values[name] = {"identity": identity, "idempotent": idempotent, "roundtrip": round_trip}
        ok = ok and identity and idempotent and round_trip
    return ok, values


# --- topology -------------------------------------------------------------------


@check("topology.euler_realizable", "realizable Euler classes are exactly the doubles")
def _euler_brute_force(corpus, rng):
    values = {}
    ok = True
    for factors in ((2,), (4,), (6,), (2, 4), (3,), (2, 2)):
        h2 = FGAbelianGroup(factors)
        doubles = {h2.scale(2, x) for x in h2.elements()}
        agree = all(euler_realizable(e, h2) == (e in doubles) for e in h2.elements())
        values[repr(h2)] = {"doubles": len(doubles), "agree": agree}
        ok = ok and agree
    integers = FGAbelianGroup((0,))
    parity = all(euler_realizable((e,), integers) == (e % 2 == 0) for e in range(-10, 11))
    values["Z"] = {"parity": parity}
    relations = FGAbelianGroup.from_relations([[2, 0], [0, 4]]).factors
    values["relations"] = list(relations)
    return ok and parity and relations == (2, 4), values


@check("topology.condition_star", "verdicts of the bundled descriptors")
def _condition_star(corpus, rng):
    values = {}
    ok = True
    for name, descriptor in sorted(_require(corpus.descriptors, "descriptors").items()):
        verdict = condition_star(descriptor)
        values[name] = verdict.to_dict()
        if name in EXPECTED_VERDICTS:
            status, rule = EXPECTED_VERDICTS[name]
            ok = ok and verdict.status.value == status and verdict.rule is not None and verdict.rule.value == rule
    return ok, values


@check("topology.bundle_laws", "bundle multiplication is associative and eps is multiplicative")
def _bundle_laws(corpus, rng):
    group = BundleGroup((1, -1))
    broken = 0
    for _ in range(BUNDLE_TRIPLES):
        a, b, c = (random_element(group, rng, int(rng.integers(0, 5))) for _ in range(3))
        laws = (
            bundle_mul(bundle_mul(a, b, group), c, group) == bundle_mul(a, bundle_mul(b, c, group), group),
            bundle_mul(a, IDENTITY, group) == a == bundle_mul(IDENTITY, a, group),
            orientation_character(group, bundle_mul(a, b, group).w)
            == orientation_character(group, a.w) * orientation_character(group, b.w),
            bundle_mul(BundleGroupElement(0, a.w), BundleGroupElement(1, ""), group)
            == BundleGroupElement(orientation_character(group, a.w), a.w),
        )
        broken += not all(laws)
    return not broken, {"triples": BUNDLE_TRIPLES, "broken": broken}


def _commuting_pair(group: BundleGroup, rng) -> Tuple[BundleGroupElement, BundleGroupElement]:
    while True:
        root = group.base.random_word(rng, int(rng.integers(1, 3)))
        if not root:
            continue
        a, b = int(rng.integers(1, 4)), int(rng.integers(-3, 4))
        alpha = BundleGroupElement(int(rng.integers(-4, 5)), group.base.power(root, a))
        beta = BundleGroupElement(int(rng.integers(-4, 5)), group.base.power(root, b))
        if commute(alpha, beta, group):
            return alpha, beta


@check("topology.toughandtechnical", "commuting pairs satisfy beta^n = alpha^i f^j")
def _toughandtechnical(corpus, rng):
    group = BundleGroup((1, -1))
    found = verified = 0
    for _ in range(COMMUTING_PAIRS):
        alpha, beta = _commuting_pair(group, rng)
        witness = check_toughandtechnical(alpha, beta, group, WITNESS_BOUND)
        if isinstance(witness, Witness):
            found += 1
            verified += witness.holds(alpha, beta, group)
    return found == verified == COMMUTING_PAIRS, {"pairs": COMMUTING_PAIRS, "found": found, "verified": verified}


@check("topology.alpha_nu", "alpha o nu is constant on conjugation and swap classes")
def _alpha_nu_invariance(corpus, rng):
    group = FreeGroup(2)
    broken = 0
    for _ in range(CONJUGATIONS):
        pair = WordPair(group.random_word(rng, int(rng.integers(0, 4))),
                        group.random_word(rng, int(rng.integers(0, 4))))
        by = group.letters[int(rng.integers(0, len(group.letters)))]
        moved = pair.conjugated(group, by)
        if not alpha_nu(pair) == alpha_nu(moved) == alpha_nu(pair.swapped()):
            broken += 1
        elif nu_equivalent(pair, moved.swapped(), 1, group) is not Equivalence.EQUAL:
            broken += 1
    return not broken, {"conjugations": CONJUGATIONS, "broken": broken}


# --- documents ------------------------------------------------------------------


def _reload(doc: Dict[str, Any]) -> Dict[str, Any]:
    return json.loads(data.dump(doc))


@check("cli.schema_roundtrip", "fixtures survive encoding to JSON and back")
def _schema_roundtrip(corpus, rng):
    broken = []
    for name, front in sorted(corpus.fronts.items()):
        again = data.decode_front(_reload(data.encode_front(front)))
        if again.word != front.word or summary(again) != summary(front):
            broken.append(f"front:{name}")
    for name, k in sorted(corpus.framed.items()):
        if data.decode_framed(_reload(data.encode_framed(k))) != k:
            broken.append(f"framed:{name}")
    for name, s in sorted(corpus.singular.items()):
        if data.decode_singular(_reload(data.encode_singular(s))) != s:
            broken.append(f"singular:{name}")
    for name, path in sorted(corpus.paths.items()):
        if data.decode_path(_reload(data.encode_path(path))) != path:
            broken.append(f"path:{name}")
    for name, ladder in sorted(corpus.ladders.items()):
        if data.decode_ladder(_reload(data.encode_ladder(ladder))) != ladder:
            broken.append(f"ladder:{name}")
    return not broken, {"broken": broken}


# --- runner ---------------------------------------------------------------------


def _run_one(fn: Check, corpus: Corpus, rng, timeout: Optional[float]) -> Tuple[bool, Dict[str, Any]]:
    if timeout:
        return func_timeout(timeout, fn, args=(corpus, rng))
    return fn(corpus, rng)


def run_suite(corpus: Corpus, seed: int, timeout: Optional[float] = None, progress: bool = False,
              only: Optional[List[str]] = None) -> RunReport:
    """Run the registered checks on ``corpus``; ``only`` keeps checks whose name starts with one of its prefixes."""
    if seed < 0:
        raise ValueError(f"seed must be nonnegative, got {seed}")
    set_seed(seed)
    selected = [(position, entry) for position, entry in enumerate(CHECKS)
                if not only or any(entry[0].startswith(prefix) for prefix in only)]
    results = []
    for position, (name, tag, fn) in tqdm(selected, desc="checks", disable=not progress):
        rng = np.random.default_rng([seed, position])
        try:
            ok, values = _run_one(fn, corpus, rng, timeout)
            result = CheckResult(name, CheckStatus.PASS if ok else CheckStatus.FAIL, values, tag)
        except SkipCheck as e:
            result = CheckResult(name, CheckStatus.SKIP, {"reason": str(e)}, tag)
        except FunctionTimedOut:
            result = CheckResult(name, CheckStatus.FAIL, {"error": f"timed out after {timeout} s"}, tag)
        except CalculusError as e:
            result = CheckResult(name, CheckStatus.FAIL, {"error": f"{type(e).__name__}: {e}"}, tag)
        logger.info("%s: %s", name, result.status.value)
        results.append(replace(result, values=json.loads(json.dumps(result.values, sort_keys=True))))
    report = RunReport(seed, tuple(results))
    logger.info("seed %d: %s", seed, report.counts())
    return report
