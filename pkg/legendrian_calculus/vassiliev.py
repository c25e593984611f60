"""Finite-order invariants of framed knots and their extension from Legendrian data.

An invariant is represented extensionally, as a callable on framed diagrams.
Framing dependence is tabulated in an :class:`InvariantLadder`: the value on
every framing ``K^r`` of one knot, indexed by the self-linking number ``r``.
Legendrian realizations only reach the rungs up to the maximal
Thurston-Bennequin number (the ``cutoff``); :func:`extend_invariant` fills the
rungs above it with the unique values compatible with order ``<= n``::

    value(r) = sum_{i=1}^{n+1} (-1)^(i+1) C(n+1, i) value(r - 2i)

The same ladder machinery applies to transverse knots, whose framing ladders
are indexed by the self-linking number as well.
"""
import itertools
import logging
from dataclasses import dataclass, field, replace
from math import comb
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Tuple, TypeVar

from .errors import AssignmentMismatch, InsufficientRungs, InvalidLadder
from .framed import (
    FramedDiagram,
    OffsetTrade,
    SingularFramedDiagram,
    self_linking,
    set_crossing_sign,
    shift_framing,
)
from .fronts import OrientedFront, bennequin, front_to_framed, kink_move
from .groups import INTEGERS, AbelianGroup

logger = logging.getLogger(__name__)

T = TypeVar("T")
InvariantFn = Callable[[FramedDiagram], T]


@dataclass(frozen=True)
class ResolutionAssignment:
    """A sign per marked double point: +1 positive resolution, -1 negative."""
    choices: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "choices", tuple(sorted(dict(self.choices).items())))
        for crossing, sign in self.choices:
            if sign not in (1, -1):
                raise AssignmentMismatch(f"double point {crossing} is resolved with {sign}, expected +1 or -1")

    @classmethod
    def of(cls, choices: Mapping[int, int]) -> "ResolutionAssignment":
        return cls(tuple(choices.items()))

    @property
    def negatives(self) -> int:
        return sum(1 for _, sign in self.choices if sign < 0)


def resolve(s: SingularFramedDiagram, a: ResolutionAssignment) -> FramedDiagram:
    choices = dict(a.choices)
    if set(choices) != set(s.marked):
        raise AssignmentMismatch(
            f"assignment covers {sorted(choices)} but the marked double points are {sorted(s.marked)}")
    diagram = s.diagram
    for crossing, sign in a.choices:
        diagram = set_crossing_sign(diagram, crossing, sign)
    return FramedDiagram(diagram, s.offset)


def resolution_sign(a: ResolutionAssignment) -> int:
    return -1 if a.negatives % 2 else 1


def assignments(s: SingularFramedDiagram) -> Iterable[ResolutionAssignment]:
    """All 2^d resolutions, all-positive first, in a fixed order."""
    marked = sorted(s.marked)
    for signs in itertools.product((1, -1), repeat=len(marked)):
        yield ResolutionAssignment(tuple(zip(marked, signs)))


def alternating_sum(x: InvariantFn, s: SingularFramedDiagram, group: AbelianGroup = INTEGERS):
    total = group.zero()
    for a in assignments(s):
        value = x(resolve(s, a))
        total = group.add(total, value if resolution_sign(a) > 0 else group.neg(value))
    return group.normalize(total)


def is_order_at_most(x: InvariantFn, n: int, corpus: Iterable[SingularFramedDiagram],
                     group: AbelianGroup = INTEGERS) -> bool:
    """Whether every alternating sum over ``n + 1`` or more double points vanishes.

    Diagrams with fewer than ``n + 1`` double points say nothing about order
    ``n`` and are skipped.
    """
    if n < 0:
        raise ValueError(f"order must be nonnegative, got {n}")
    checked = 0
    for index, s in enumerate(corpus):
        if s.order < n + 1:
            logger.info("skipping singular diagram %d: %d double points, order %d needs %d",
                        index, s.order, n, n + 1)
            continue
        checked += 1
        total = alternating_sum(x, s, group)
        if not group.equal(total, group.zero()):
            logger.debug("alternating sum %s on singular diagram %d", total, index)
            return False
    if not checked:
        logger.warning("no singular diagram with at least %d double points; order %d holds vacuously", n + 1, n)
    return True


def make_kinked_singular(k: FramedDiagram, d: int) -> SingularFramedDiagram:
    """Add ``d`` small kinks to ``k`` and mark their double points.

    Resolving ``i`` of them negatively gives ``K^{-2i}``; all-positive gives back
    a diagram of ``k`` itself.
    """
    if d < 1:
        raise ValueError(f"number of kinks must be positive, got {d}")
    marked = []
    for _ in range(d):
        (crossing,) = k.diagram.next_ids(1)
        k = OffsetTrade(len(k.diagram.visits), 1, crossing=crossing).apply(k)
        marked.append(crossing)
    return SingularFramedDiagram(k.diagram, frozenset(marked), k.offset)


def extension_coefficients(n: int) -> List[int]:
    """Coefficients of ``value(r - 2i)``, i = 1..n+1, in the order-``n`` recursion."""
    if n < 0:
        raise ValueError(f"order must be nonnegative, got {n}")
    return [(-1) ** (i + 1) * comb(n + 1, i) for i in range(1, n + 2)]


@dataclass(frozen=True)
class InvariantLadder:
    """Values of one invariant along the framings of one knot.

    Rungs are self-linking numbers and step by 2 (one framed-homotopy class).
    ``cutoff`` is the topmost rung with a direct value; None means every
    framing is realized and nothing needs extending. ``base`` is the framed
    diagram at ``cutoff`` when the ladder was built from an invariant.
    """
    knot_label: str
    values: Dict[int, object]
    cutoff: Optional[int] = None
    step: int = 2
    base: Optional[FramedDiagram] = field(default=None, compare=False)
    group: AbelianGroup = field(default=INTEGERS, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "values", dict(sorted(self.values.items())))
        if self.step != 2:
            raise InvalidLadder(f"rungs of one framed-homotopy class are 2 apart, got step {self.step}")
        anchor = self.cutoff if self.cutoff is not None else next(iter(self.values), 0)
        stray = [r for r in self.values if (r - anchor) % self.step]
        if stray:
            raise InvalidLadder(f"rungs {stray} do not have the parity of rung {anchor}")

    def value(self, rung: int):
        if rung not in self.values:
            raise InsufficientRungs(f"rung {rung} of {self.knot_label} has no value", rung)
        return self.values[rung]

    def rung_diagram(self, rung: int) -> FramedDiagram:
        if self.base is None:
            raise InvalidLadder(f"ladder {self.knot_label} carries no diagram")
        return shift_framing(self.base, rung - self_linking(self.base))


def _recursion(ladder: InvariantLadder, rung: int, n: int):
    group = ladder.group
    terms = [group.scale(c, ladder.value(rung - 2 * i))
             for i, c in enumerate(extension_coefficients(n), start=1)]
    return group.normalize(group.total(terms))


def extend_invariant(ladder: InvariantLadder, n: int, height: int = 1) -> InvariantLadder:
    """Fill rungs ``cutoff + 2``, ..., ``cutoff + 2 * height`` by the order-``n`` recursion.

    Rungs above the cutoff are always recomputed, so extending twice changes nothing.
    """
    if ladder.cutoff is None:
        logger.info("%s: every framing is realized, nothing to extend", ladder.knot_label)
        return ladder
    if height < 0:
        raise ValueError(f"height must be nonnegative, got {height}")
    values = {r: v for r, v in ladder.values.items() if r <= ladder.cutoff}
    extended = replace(ladder, values=values)
    for rung in range(ladder.cutoff + 2, ladder.cutoff + 2 * height + 1, 2):
        value = _recursion(extended, rung, n)
        values[rung] = value
        extended = replace(ladder, values=values)
    logger.debug("%s extended at order %d up to rung %d", ladder.knot_label, n, ladder.cutoff + 2 * height)
    return extended


def verify_main_identity(ladder: InvariantLadder, n: int) -> bool:
    """Whether the order-``n`` recursion holds at every rung that has ``n + 1`` rungs below it."""
    group = ladder.group
    checkable = [r for r in ladder.values if all(r - 2 * i in ladder.values for i in range(1, n + 2))]
    if not checkable:
        lowest = min(ladder.values, default=None)
        raise InsufficientRungs(
            f"{ladder.knot_label}: no rung has the {n + 1} rungs below it that order {n} needs", lowest)
    for rung in checkable:
        if not group.equal(ladder.value(rung), _recursion(ladder, rung, n)):
            logger.debug("%s: recursion fails at rung %d", ladder.knot_label, rung)
            return False
    return True


def restrict_to_legendrian(x: InvariantFn) -> Callable[[OrientedFront], object]:
    def restricted(front: OrientedFront):
        return x(front_to_framed(front))

    return restricted


def build_ladder(x: InvariantFn, front: OrientedFront, depth: int, group: AbelianGroup = INTEGERS,
                 label: str = "knot") -> InvariantLadder:
    """Tabulate ``x`` on ``front`` and ``depth`` successive kink moves of it.

    ``front`` should realize the maximal Thurston-Bennequin number; its rung is
    the cutoff.
    """
    if depth < 0:
        raise ValueError(f"depth must be nonnegative, got {depth}")
    base = front_to_framed(front)
    values = {}
    current = front
    for _ in range(depth + 1):
        framed = front_to_framed(current)
        values[self_linking(framed)] = x(framed)
        current = kink_move(current)
    return InvariantLadder(label, values, cutoff=bennequin(front), base=base, group=group)


def ladder_invariant(ladder: InvariantLadder) -> InvariantFn:
    """The invariant whose value on a framing of the ladder's knot is read off its rung."""
    def invariant(k: FramedDiagram):
        return ladder.value(self_linking(k))

    return invariant


def kinked_identity(ladder: InvariantLadder, rung: int, n: int):
    """Alternating sum over ``n + 1`` kinks added at ``rung``; zero when the recursion holds there."""
    s = make_kinked_singular(ladder.rung_diagram(rung), n + 1)
    return alternating_sum(ladder_invariant(ladder), s, ladder.group)


def roundtrip_check(x: InvariantFn, ladders: Iterable[InvariantLadder], n: int, height: int = 1) -> bool:
    """Extension leaves the realized rungs alone and reproduces ``x`` above the cutoff."""
    for ladder in ladders:
        if ladder.cutoff is None:
            continue
        extended = extend_invariant(ladder, n, height)
        group = ladder.group
        for rung, value in ladder.values.items():
            if rung <= ladder.cutoff and not group.equal(extended.value(rung), value):
                logger.info("%s: rung %d changed by extension", ladder.knot_label, rung)
                return False
        if not verify_main_identity(extended, n):
            logger.info("%s: extension is not of order %d", ladder.knot_label, n)
            return False
        for rung in range(ladder.cutoff + 2, ladder.cutoff + 2 * height + 1, 2):
            direct = x(ladder.rung_diagram(rung))
            if not group.equal(extended.value(rung), direct):
                logger.info("%s: rung %d extends to %s, invariant gives %s",
                            ladder.knot_label, rung, extended.value(rung), direct)
                return False
    return True
