"""Legendrian fronts in the standard contact R^3.

A front is stored as an x-ordered event word: reading the (x, z)-projection
from left to right, every event is a left cusp ``L(i)`` (two new strands appear
at heights ``i`` and ``i + 1``), a right cusp ``R(i)`` (strands ``i`` and
``i + 1`` meet and disappear) or a crossing ``X(i)`` (strands ``i`` and
``i + 1`` swap). Positions are 1-based and counted from the top.

Conventions used throughout:

* a strand is the x-monotone arc between its left cusp and its right cusp;
  it is identified by ``(index of its left cusp, 0 for upper / 1 for lower)``;
* a cusp is *down* when the traversal arrives on its upper branch;
  ``rotation = (down - up) / 2``;
* at a crossing the strand of lesser slope (the one descending to the right)
  is in front; the sign is the orientation of the pair (over, under);
* a cusp pair of the first type adds two down cusps (rotation + 1), a pair of
  the second type adds two up cusps (rotation - 1);
* ``bennequin = writhe - cusps / 2``.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .framed import FramedDiagram, KnotDiagram, Visit
from .errors import FrontError, MoveNotApplicable, NotAKnot, PositionOutOfRange, StrandUnderflow

logger = logging.getLogger(__name__)

StrandId = Tuple[int, int]


class EventKind(str, Enum):
    LEFT = "L"
    RIGHT = "R"
    CROSSING = "X"


@dataclass(frozen=True)
class Event:
    kind: EventKind
    position: int

    def __repr__(self):
        return f"{self.kind.value}({self.position})"


def L(position: int) -> Event:
    return Event(EventKind.LEFT, position)


def R(position: int) -> Event:
    return Event(EventKind.RIGHT, position)


def X(position: int) -> Event:
    return Event(EventKind.CROSSING, position)


@dataclass(frozen=True)
class FrontWord:
    events: Tuple[Event, ...] = ()

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence]) -> "FrontWord":
        return cls(tuple(Event(EventKind(kind), int(position)) for kind, position in pairs))

    def to_pairs(self) -> List[list]:
        return [[event.kind.value, event.position] for event in self.events]

    def __len__(self):
        return len(self.events)

    def strand_count_before(self, index: int) -> int:
        count = 0
        for event in self.events[:index]:
            if event.kind is EventKind.LEFT:
                count += 2
            elif event.kind is EventKind.RIGHT:
                count -= 2
        return count


@dataclass(frozen=True)
class FrontSummary:
    cusp_count: int
    crossing_count: int
    writhe: int
    rotation: int
    bennequin: int

    def to_dict(self) -> Dict[str, int]:
        return {
            "cusps": self.cusp_count,
            "crossings": self.crossing_count,
            "writhe": self.writhe,
            "r": self.rotation,
            "tb": self.bennequin,
        }


@dataclass(frozen=True)
class _Cusp:
    index: int
    upper: StrandId
    lower: StrandId


@dataclass(frozen=True)
class _Crossing:
    index: int
    over: StrandId
    under: StrandId


@dataclass(frozen=True)
class _Trace:
    """Strand bookkeeping of a valid word."""
    left_cusps: Dict[int, _Cusp]
    right_cusps: Dict[int, _Cusp]
    crossings: Tuple[_Crossing, ...]
    # strand -> (left cusp index, right cusp index)
    ends: Dict[StrandId, Tuple[int, int]]


def _scan(word: FrontWord) -> _Trace:
    slots: List[StrandId] = []
    left_cusps: Dict[int, _Cusp] = {}
    right_cusps: Dict[int, _Cusp] = {}
    crossings: List[_Crossing] = []
    born: Dict[StrandId, int] = {}
    ends: Dict[StrandId, Tuple[int, int]] = {}

    for index, event in enumerate(word.events):
        i = event.position
        if event.kind is EventKind.LEFT:
            if not 1 <= i <= len(slots) + 1:
                raise PositionOutOfRange(
                    f"left cusp at position {i} with {len(slots)} strands present", index)
            upper, lower = (index, 0), (index, 1)
            slots[i - 1:i - 1] = [upper, lower]
            left_cusps[index] = _Cusp(index, upper, lower)
            born[upper] = born[lower] = index
            continue

        if not slots:
            raise StrandUnderflow(f"{event!r} with no strands present", index)
        if len(slots) < 2 or not 1 <= i <= len(slots) - 1:
            raise PositionOutOfRange(
                f"{event!r} needs strands {i} and {i + 1}, {len(slots)} present", index)
        upper, lower = slots[i - 1], slots[i]
        if event.kind is EventKind.CROSSING:
            crossings.append(_Crossing(index, over=upper, under=lower))
            slots[i - 1], slots[i] = lower, upper
        else:
            right_cusps[index] = _Cusp(index, upper, lower)
            del slots[i - 1:i + 1]
            ends[upper] = (born[upper], index)
            ends[lower] = (born[lower], index)

    if slots:
        raise StrandUnderflow(f"{len(slots)} strands left open after the last event", len(word.events))

    trace = _Trace(left_cusps, right_cusps, tuple(crossings), ends)
    _check_single_component(trace)
    return trace


def _partner(cusp: _Cusp, strand: StrandId) -> StrandId:
    return cusp.lower if strand == cusp.upper else cusp.upper


def _check_single_component(trace: _Trace) -> None:
    if not trace.left_cusps:
        raise NotAKnot("the empty word has no component", 0)
    first = min(trace.left_cusps)
    seen = set()
    stack = [(first, 0)]
    while stack:
        strand = stack.pop()
        if strand in seen:
            continue
        seen.add(strand)
        left, right = trace.ends[strand]
        stack.append(_partner(trace.left_cusps[left], strand))
        stack.append(_partner(trace.right_cusps[right], strand))
    stray = sorted(index for index, _ in trace.ends if (index, 0) not in seen)
    if stray:
        raise NotAKnot("the word traces more than one component", stray[0])


class Orientation(str, Enum):
    FORWARD = "forward"
    REVERSE = "reverse"

    @property
    def sign(self) -> int:
        return 1 if self is Orientation.FORWARD else -1


@dataclass(frozen=True)
class TraversalStep:
    strand: StrandId
    # +1 rightward, -1 leftward
    direction: int


@dataclass(frozen=True)
class OrientedFront:
    """A front word with a chosen start strand and direction.

    ``start`` defaults to the upper branch of the first left cusp and
    ``orientation`` FORWARD means that strand is traversed rightward.
    """
    word: FrontWord
    orientation: Orientation = Orientation.FORWARD
    start: Optional[StrandId] = None
    _trace: _Trace = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_trace", _scan(self.word))
        if self.start is None and self._trace.left_cusps:
            object.__setattr__(self, "start", (min(self._trace.left_cusps), 0))
        if self.start is not None and self.start not in self._trace.ends:
            raise PositionOutOfRange(f"start strand {self.start} does not exist")

    @cached_property
    def traversal(self) -> Tuple[TraversalStep, ...]:
        if self.start is None:
            return ()
        steps = []
        strand, direction = self.start, self.orientation.sign
        while True:
            steps.append(TraversalStep(strand, direction))
            left, right = self._trace.ends[strand]
            cusp = self._trace.right_cusps[right] if direction > 0 else self._trace.left_cusps[left]
            strand, direction = _partner(cusp, strand), -direction
            if strand == self.start:
                return tuple(steps)

    @property
    def directions(self) -> Dict[StrandId, int]:
        return {step.strand: step.direction for step in self.traversal}

    @property
    def cusp_classes(self) -> Dict[int, str]:
        classes = {}
        for step in self.traversal:
            left, right = self._trace.ends[step.strand]
            index = right if step.direction > 0 else left
            cusps = self._trace.right_cusps if step.direction > 0 else self._trace.left_cusps
            classes[index] = "down" if cusps[index].upper == step.strand else "up"
        return classes

    def crossing_signs(self) -> Dict[int, int]:
        directions = self.directions
        return {c.index: _crossing_sign(directions[c.over], directions[c.under])
                for c in self._trace.crossings}


def _crossing_sign(over_direction: int, under_direction: int) -> int:
    # the front strand descends to the right, the back strand ascends
    over = (over_direction, -over_direction)
    under = (under_direction, under_direction)
    cross = over[0] * under[1] - over[1] * under[0]
    return 1 if cross > 0 else -1


def orient(word: FrontWord, orientation: Orientation = Orientation.FORWARD) -> OrientedFront:
    return OrientedFront(word, orientation)


def validate_front(word: FrontWord) -> FrontSummary:
    return summary(orient(word))


def writhe(front: OrientedFront) -> int:
    return sum(front.crossing_signs().values())


def cusp_count(front: OrientedFront) -> int:
    return 2 * len(front._trace.right_cusps)


def rotation_number(front: OrientedFront) -> int:
    classes = list(front.cusp_classes.values())
    down, up = classes.count("down"), classes.count("up")
    return (down - up) // 2


def bennequin(front: OrientedFront) -> int:
    return writhe(front) - cusp_count(front) // 2


def summary(front: OrientedFront) -> FrontSummary:
    return FrontSummary(
        cusp_count=cusp_count(front),
        crossing_count=len(front._trace.crossings),
        writhe=writhe(front),
        rotation=rotation_number(front),
        bennequin=bennequin(front),
    )


def reverse_orientation(front: OrientedFront) -> OrientedFront:
    flipped = Orientation.REVERSE if front.orientation is Orientation.FORWARD else Orientation.FORWARD
    return OrientedFront(front.word, flipped, front.start)


def reroot(front: OrientedFront, k: int) -> OrientedFront:
    steps = front.traversal
    step = steps[k % len(steps)]
    orientation = Orientation.FORWARD if step.direction > 0 else Orientation.REVERSE
    return OrientedFront(front.word, orientation, step.strand)


def _with_events(front: OrientedFront, events: Sequence[Event]) -> OrientedFront:
    return OrientedFront(FrontWord(tuple(events)), front.orientation, front.start)


def _zigzag(front: OrientedFront, shift: int) -> OrientedFront:
    """Insert one cusp pair on the start strand, right after its left cusp.

    ``shift`` is the wanted change of the rotation number (+1 or -1).
    """
    if front.start is None:
        raise MoveNotApplicable("stabilize", "the empty front has no strand to stabilize")
    cusp_index, branch = front.start
    position = front.word.events[cusp_index].position + branch
    events = list(front.word.events)
    if shift * front.orientation.sign > 0:
        inserted = [L(position + 1), R(position)]
    else:
        inserted = [L(position), R(position + 1)]
    events[cusp_index + 1:cusp_index + 1] = inserted
    return _with_events(front, events)


def stabilize(front: OrientedFront, i: int, j: int) -> OrientedFront:
    if i < 0 or j < 0:
        raise ValueError(f"stabilization counts must be nonnegative, got ({i}, {j})")
    result = front
    for _ in range(i):
        result = _zigzag(result, +1)
    for _ in range(j):
        result = _zigzag(result, -1)
    return result


def insert_zigzag(front: OrientedFront, sign: int) -> OrientedFront:
    if sign not in (1, -1):
        raise ValueError(f"zigzag sign must be +1 or -1, got {sign}")
    return stabilize(front, 1, 0) if sign > 0 else stabilize(front, 0, 1)


def kink_move(front: OrientedFront) -> OrientedFront:
    return stabilize(front, 1, 1)


class FrontMove(str, Enum):
    TRIPLE_POINT = "triple-point"
    TANGENCY_ADD_UP = "tangency-add-up"
    TANGENCY_ADD_DOWN = "tangency-add-down"
    TANGENCY_REMOVE = "tangency-remove"
    CUSP_PUSH_UP = "cusp-push-up"
    CUSP_PUSH_DOWN = "cusp-push-down"
    CUSP_PULL = "cusp-pull"


INSERTION_MOVES = (FrontMove.TANGENCY_ADD_UP, FrontMove.TANGENCY_ADD_DOWN)


@dataclass(frozen=True)
class FrontSite:
    index: int
    # strand position, only read by the insertion moves
    position: int = 0


def _window(events: Sequence[Event], index: int, size: int, move: FrontMove) -> Sequence[Event]:
    if not 0 <= index <= len(events) - size:
        raise MoveNotApplicable(move.value, f"site {index} leaves no room for {size} events")
    return events[index:index + size]


def _rewrite(front: OrientedFront, move: FrontMove, site: FrontSite) -> List[Event]:
    events = list(front.word.events)
    k = site.index

    if move is FrontMove.TRIPLE_POINT:
        a, b, c = _window(events, k, 3, move)
        if not all(e.kind is EventKind.CROSSING for e in (a, b, c)):
            raise MoveNotApplicable(move.value, f"events {k}..{k + 2} are not three crossings")
        if a.position != c.position or abs(a.position - b.position) != 1:
            raise MoveNotApplicable(move.value, f"crossings {a!r} {b!r} {c!r} do not form a triple point")
        events[k:k + 3] = [X(b.position), X(a.position), X(b.position)]
        return events

    if move in INSERTION_MOVES:
        if not 0 <= k <= len(events):
            raise MoveNotApplicable(move.value, f"site {k} is outside the word")
        strands = front.word.strand_count_before(k)
        p = site.position
        if not 1 <= p <= strands:
            raise MoveNotApplicable(move.value, f"no strand at position {p} before event {k}")
        if move is FrontMove.TANGENCY_ADD_DOWN:
            events[k:k] = [L(p + 1), X(p), R(p + 1)]
        else:
            events[k:k] = [L(p), X(p + 1), R(p)]
        return events

    if move is FrontMove.TANGENCY_REMOVE:
        a, b, c = _window(events, k, 3, move)
        shape = (a.kind, b.kind, c.kind)
        if shape != (EventKind.LEFT, EventKind.CROSSING, EventKind.RIGHT) or c.position != a.position \
                or abs(b.position - a.position) != 1:
            raise MoveNotApplicable(move.value, f"events {k}..{k + 2} are not a removable kink")
        del events[k:k + 3]
        return events

    if move in (FrontMove.CUSP_PUSH_UP, FrontMove.CUSP_PUSH_DOWN):
        (event,) = _window(events, k, 1, move)
        if event.kind is EventKind.CROSSING:
            raise MoveNotApplicable(move.value, f"event {k} is a crossing, not a cusp")
        j = event.position
        strands = front.word.strand_count_before(k)
        if move is FrontMove.CUSP_PUSH_UP:
            if j < 2:
                raise MoveNotApplicable(move.value, f"no strand above the cusp at event {k}")
            if event.kind is EventKind.LEFT:
                events[k:k + 1] = [L(j - 1), X(j), X(j - 1)]
            else:
                events[k:k + 1] = [X(j - 1), X(j), R(j - 1)]
        else:
            if event.kind is EventKind.LEFT:
                if j > strands:
                    raise MoveNotApplicable(move.value, f"no strand below the cusp at event {k}")
                events[k:k + 1] = [L(j + 1), X(j), X(j + 1)]
            else:
                if j + 2 > strands:
                    raise MoveNotApplicable(move.value, f"no strand below the cusp at event {k}")
                events[k:k + 1] = [X(j + 1), X(j), R(j + 1)]
        return events

    if move is FrontMove.CUSP_PULL:
        a, b, c = _window(events, k, 3, move)
        if a.kind is EventKind.LEFT and b.kind is c.kind is EventKind.CROSSING \
                and c.position == a.position and abs(b.position - a.position) == 1:
            events[k:k + 3] = [L(b.position)]
            return events
        if c.kind is EventKind.RIGHT and a.kind is b.kind is EventKind.CROSSING \
                and a.position == c.position and abs(b.position - c.position) == 1:
            events[k:k + 3] = [R(b.position)]
            return events
        raise MoveNotApplicable(move.value, f"events {k}..{k + 2} do not hold a cusp pushed through a strand")

    raise MoveNotApplicable(str(move), "unknown move")


# number of events each move reads at its site
_WINDOW = {
    FrontMove.TRIPLE_POINT: 3,
    FrontMove.TANGENCY_ADD_UP: 0,
    FrontMove.TANGENCY_ADD_DOWN: 0,
    FrontMove.TANGENCY_REMOVE: 3,
    FrontMove.CUSP_PUSH_UP: 1,
    FrontMove.CUSP_PUSH_DOWN: 1,
    FrontMove.CUSP_PULL: 3,
}


def _carried_start(front: OrientedFront, site: FrontSite, size: int, shift: int) -> Tuple[StrandId, Orientation]:
    """Start strand and orientation of the moved front.

    Strands born outside the rewritten window survive with shifted cusp
    indices; the first of them along the traversal keeps the knot oriented.
    """
    for step in front.traversal:
        index, branch = step.strand
        if site.index <= index < site.index + size:
            continue
        moved = index + shift if index >= site.index + size else index
        orientation = Orientation.FORWARD if step.direction > 0 else Orientation.REVERSE
        return (moved, branch), orientation
    raise MoveNotApplicable("front-move", "no strand survives outside the rewritten events")


def front_move(front: OrientedFront, move: FrontMove, site: FrontSite) -> OrientedFront:
    events = _rewrite(front, move, site)
    size = _WINDOW[move]
    start, orientation = _carried_start(front, site, size, len(events) - len(front.word))
    try:
        rewritten = OrientedFront(FrontWord(tuple(events)), orientation, start)
    except FrontError as e:
        raise MoveNotApplicable(move.value, str(e)) from e
    logger.debug("%s at %s: %d -> %d events", move.value, site, len(front.word), len(rewritten.word))
    return rewritten


def applicable_front_moves(front: OrientedFront) -> List[Tuple[FrontMove, FrontSite]]:
    sites = []
    events = front.word.events
    for move in FrontMove:
        if move in INSERTION_MOVES:
            for k in range(len(events) + 1):
                for p in range(1, front.word.strand_count_before(k) + 1):
                    sites.append((move, FrontSite(k, p)))
            continue
        for k in range(len(events)):
            try:
                front_move(front, move, FrontSite(k))
            except MoveNotApplicable:
                continue
            sites.append((move, FrontSite(k)))
    return sites


def gauss_visits(front: OrientedFront) -> List[Tuple[int, bool, int]]:
    """Crossings met along the traversal as ``(crossing id, over?, sign)``.

    Crossing ids number the crossings 1, 2, ... in x-order.
    """
    ids = {c.index: n for n, c in enumerate(front._trace.crossings, start=1)}
    signs = front.crossing_signs()
    along: Dict[StrandId, List[Tuple[int, bool]]] = {}
    for c in front._trace.crossings:
        along.setdefault(c.over, []).append((c.index, True))
        along.setdefault(c.under, []).append((c.index, False))

    visits = []
    for step in front.traversal:
        passes = sorted(along.get(step.strand, []), reverse=step.direction < 0)
        visits.extend((ids[index], over, signs[index]) for index, over in passes)
    return visits


def front_to_framed(front: OrientedFront) -> FramedDiagram:
    diagram = KnotDiagram(tuple(Visit(*visit) for visit in gauss_visits(front)))
    return FramedDiagram(diagram, offset=-cusp_count(front) // 2)
