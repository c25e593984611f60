"""Framed knot diagrams, framing obstructions and discriminant path functionals.

A diagram is a signed Gauss code: the cyclic list of crossing visits met
along the knot. Every visit carries the free-group word read along the
segment that follows it, which places the knot in a manifold with free
fundamental group (empty words everywhere is a knot in a ball). A framing is
an integer offset against blackboard framing, so the self-linking number is
``writhe + offset``.

Words sit at the start of their segment: crossings inserted by a move get
empty words unless the move says otherwise, and the words of removed visits
are appended to the previous surviving visit.
"""
import itertools
import logging
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .errors import InvalidGaussCode, InvalidLadder, InvalidPath, MoveNotApplicable, UnderlyingMismatch
from .topology.double_points import WordPair
from .topology.words import reduce_word

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Visit:
    crossing: int
    over: bool
    sign: int
    word: str = ""

    def flipped(self) -> "Visit":
        return replace(self, over=not self.over, sign=-self.sign)


@dataclass(frozen=True)
class KnotDiagram:
    """Signed Gauss code. ``closed_word`` is the loop word of a diagram without crossings."""
    visits: Tuple[Visit, ...] = ()
    closed_word: str = ""

    def __post_init__(self):
        object.__setattr__(self, "visits", tuple(self.visits))
        if self.visits and self.closed_word:
            raise InvalidGaussCode("closed_word is only used by diagrams without crossings")
        seen: Dict[int, List[Visit]] = {}
        for visit in self.visits:
            if visit.sign not in (1, -1):
                raise InvalidGaussCode(f"crossing {visit.crossing} has sign {visit.sign}, expected +1 or -1")
            seen.setdefault(visit.crossing, []).append(visit)
        for crossing, pair in seen.items():
            if len(pair) != 2:
                raise InvalidGaussCode(f"crossing {crossing} is visited {len(pair)} times, expected 2")
            if pair[0].over == pair[1].over:
                raise InvalidGaussCode(f"crossing {crossing} needs one over and one under visit")
            if pair[0].sign != pair[1].sign:
                raise InvalidGaussCode(f"crossing {crossing} has different signs on its two visits")

    def signs(self) -> Dict[int, int]:
        return {visit.crossing: visit.sign for visit in self.visits}

    def crossings(self) -> Tuple[int, ...]:
        return tuple(sorted(self.signs()))

    def positions(self, crossing: int) -> Tuple[int, int]:
        found = [i for i, visit in enumerate(self.visits) if visit.crossing == crossing]
        if len(found) != 2:
            raise InvalidGaussCode(f"crossing {crossing} does not exist")
        return found[0], found[1]

    def next_ids(self, count: int) -> Tuple[int, ...]:
        start = max(self.signs(), default=0) + 1
        return tuple(range(start, start + count))

    def loop_word(self) -> str:
        return reduce_word("".join(visit.word for visit in self.visits) + self.closed_word)

    def normalized(self) -> "KnotDiagram":
        return KnotDiagram(tuple(replace(v, word=reduce_word(v.word)) for v in self.visits),
                           reduce_word(self.closed_word))

    def same_as(self, other: "KnotDiagram") -> bool:
        """Equality up to the choice of base point and free reduction of words."""
        mine, theirs = self.normalized(), other.normalized()
        if len(mine.visits) != len(theirs.visits):
            return False
        if not mine.visits:
            return mine.closed_word == theirs.closed_word
        return any(mine.visits[k:] + mine.visits[:k] == theirs.visits for k in range(len(mine.visits)))


def writhe(d: KnotDiagram) -> int:
    return sum(d.signs().values())


@dataclass(frozen=True)
class FramedDiagram:
    diagram: KnotDiagram = field(default_factory=KnotDiagram)
    offset: int = 0


def self_linking(k: FramedDiagram) -> int:
    return writhe(k.diagram) + k.offset


def shift_framing(k: FramedDiagram, i: int) -> FramedDiagram:
    return replace(k, offset=k.offset + i)


def framing_obstruction(k1: FramedDiagram, k2: FramedDiagram) -> int:
    if not k1.diagram.same_as(k2.diagram):
        raise UnderlyingMismatch("framing obstruction needs the same underlying diagram")
    return self_linking(k1) - self_linking(k2)


def framed_homotopic_parity(k1: FramedDiagram, k2: FramedDiagram) -> bool:
    return framing_obstruction(k1, k2) % 2 == 0


@dataclass(frozen=True)
class FramingLadder:
    """The framings ``K^i = shift_framing(base, i)`` of one knot.

    ``m_k`` is the number of isotopy classes of framed knots among the rungs;
    None means infinitely many.
    """
    base: FramedDiagram
    m_k: Optional[int] = None

    def __post_init__(self):
        if self.m_k is not None and (self.m_k <= 0 or self.m_k % 2):
            raise InvalidLadder(f"a finite number of framings must be positive and even, got {self.m_k}")

    def rung(self, i: int) -> FramedDiagram:
        return shift_framing(self.base, i)


def ladder_classes(ladder: FramingLadder, rungs: Iterable[int]) -> Dict[int, int]:
    """Isotopy class label of every rung: its residue mod m_K, or the rung itself."""
    if ladder.m_k is None:
        return {i: i for i in rungs}
    return {i: i % ladder.m_k for i in rungs}


# --- singular diagrams ---------------------------------------------------------


@dataclass(frozen=True)
class SingularFramedDiagram:
    """A framed diagram with marked double points.

    ``diagram`` records every marked crossing in its positive resolution; that
    over/under data is resolution bookkeeping, not a crossing of the singular
    diagram (see :meth:`visit_view`).
    """
    diagram: KnotDiagram
    marked: FrozenSet[int] = frozenset()
    offset: int = 0

    def __post_init__(self):
        object.__setattr__(self, "marked", frozenset(self.marked))
        signs = self.diagram.signs()
        for crossing in self.marked:
            if crossing not in signs:
                raise InvalidGaussCode(f"marked double point {crossing} is not a crossing of the diagram")
            if signs[crossing] != 1:
                raise InvalidGaussCode(f"marked double point {crossing} must be recorded in its positive resolution")

    @property
    def order(self) -> int:
        return len(self.marked)

    def visit_view(self) -> List[Tuple[int, Optional[bool], Optional[int]]]:
        return [(v.crossing, None, None) if v.crossing in self.marked else (v.crossing, v.over, v.sign)
                for v in self.diagram.visits]


def set_crossing_sign(d: KnotDiagram, crossing: int, sign: int) -> KnotDiagram:
    return replace(d, visits=tuple(
        v.flipped() if v.crossing == crossing and v.sign != sign else v for v in d.visits))


def singular_at(k: FramedDiagram, crossing: int) -> SingularFramedDiagram:
    """Mark ``crossing`` of ``k`` as a double point."""
    if crossing not in k.diagram.signs():
        raise InvalidGaussCode(f"crossing {crossing} does not exist")
    return SingularFramedDiagram(set_crossing_sign(k.diagram, crossing, 1), frozenset({crossing}), k.offset)


def loop_words(snapshot: SingularFramedDiagram) -> WordPair:
    """The two loops obtained by splitting the knot at its only double point."""
    if snapshot.order != 1:
        raise InvalidPath(f"loop words need exactly one double point, got {snapshot.order}")
    (crossing,) = snapshot.marked
    i, j = snapshot.diagram.positions(crossing)
    visits = snapshot.diagram.visits
    inner = "".join(v.word for v in visits[i:j])
    outer = "".join(v.word for v in visits[j:] + visits[:i])
    return WordPair(inner, outer)


# --- editing Gauss codes ---------------------------------------------------------


def _insert_blocks(d: KnotDiagram, blocks: Sequence[Tuple[int, Sequence[Visit]]], move: str) -> KnotDiagram:
    """Insert runs of visits at indices of ``d``.

    Blocks at the same index are placed in the given order. The words of the
    new visits are split off the end of the word of the visit before them.
    """
    n = len(d.visits)
    at: Dict[int, List[Visit]] = {}
    for index, block in blocks:
        if not 0 <= index <= n:
            raise MoveNotApplicable(move, f"position {index} outside 0..{n}")
        at.setdefault(index, []).extend(block)

    def strip(word: str, following: List[Visit]) -> str:
        tail = "".join(v.word for v in following)
        if not word.endswith(tail):
            raise MoveNotApplicable(move, f"segment word {word!r} does not end with {tail!r}")
        return word[:len(word) - len(tail)]

    if not n:
        new = at.get(0, [])
        leftover = strip(d.closed_word, new)
        new[-1] = replace(new[-1], word=new[-1].word + leftover)
        return KnotDiagram(tuple(new))

    out = list(at.get(0, []))
    for i, visit in enumerate(d.visits):
        following = at.get(i + 1, [])
        if i == n - 1:
            following = following + at.get(0, [])
        out.append(replace(visit, word=strip(visit.word, following)))
        out.extend(at.get(i + 1, []))
    return KnotDiagram(tuple(out))


def _remove(d: KnotDiagram, indices: Iterable[int]) -> KnotDiagram:
    drop = set(indices)
    visits = d.visits
    n = len(visits)
    keep = [i for i in range(n) if i not in drop]
    if not keep:
        return KnotDiagram((), d.closed_word + "".join(v.word for v in visits))
    words = {i: visits[i].word for i in keep}
    # cyclic order starting after the last survivor
    for i in sorted(drop, key=lambda i: (i - keep[-1]) % n):
        previous = max((k for k in keep if k < i), default=keep[-1])
        words[previous] += visits[i].word
    return KnotDiagram(tuple(replace(visits[i], word=words[i]) for i in keep))


def _adjacent(d: KnotDiagram, a: int, b: int) -> List[int]:
    """Indices i such that visits i and i+1 are at crossings a and b, in either order."""
    found = []
    for i in range(len(d.visits) - 1):
        if (d.visits[i].crossing, d.visits[i + 1].crossing) in ((a, b), (b, a)):
            found.append(i)
    return found


def _fresh(d: KnotDiagram, ids: Optional[Tuple[int, ...]], count: int, move: str) -> Tuple[int, ...]:
    ids = tuple(ids) if ids is not None else d.next_ids(count)
    if len(set(ids)) != count or set(ids) & set(d.signs()):
        raise MoveNotApplicable(move, f"crossing ids {ids} are not fresh")
    return ids


def _with_words(visits: List[Visit], words: Sequence[str]) -> List[Visit]:
    return [replace(v, word=w) for v, w in zip(visits, words)]


# --- framed moves ----------------------------------------------------------------


@dataclass(frozen=True)
class Rotate:
    """Move the base point ``steps`` visits forward."""
    steps: int

    name = "rotate"

    def apply(self, k: FramedDiagram) -> FramedDiagram:
        visits = k.diagram.visits
        if not visits:
            return k
        s = self.steps % len(visits)
        return replace(k, diagram=KnotDiagram(visits[s:] + visits[:s]))

    def inverse(self, k: FramedDiagram) -> "Rotate":
        return Rotate(-self.steps)


@dataclass(frozen=True)
class R2Insert:
    """Push one strand over another, creating crossings ``ids = (positive, negative)``.

    The over strand meets both new crossings at index ``first``, the under
    strand at index ``second``.
    """
    first: int
    second: int
    swap_over: bool = False
    swap_under: bool = False
    under_first: bool = False
    ids: Optional[Tuple[int, int]] = None
    over_words: Tuple[str, str] = ("", "")
    under_words: Tuple[str, str] = ("", "")

    name = "r2-insert"

    def apply(self, k: FramedDiagram) -> FramedDiagram:
        a, b = _fresh(k.diagram, self.ids, 2, self.name)
        over = [Visit(a, True, 1), Visit(b, True, -1)]
        under = [Visit(a, False, 1), Visit(b, False, -1)]
        if self.swap_over:
            over.reverse()
        if self.swap_under:
            under.reverse()
        blocks = [(self.first, _with_words(over, self.over_words)),
                  (self.second, _with_words(under, self.under_words))]
        if self.under_first:
            blocks.reverse()
        return replace(k, diagram=_insert_blocks(k.diagram, blocks, self.name))

    def inverse(self, k: FramedDiagram) -> "R2Remove":
        a, b = _fresh(k.diagram, self.ids, 2, self.name)
        return R2Remove(a, b)


def _bigon(d: KnotDiagram, a: int, b: int) -> Tuple[int, int]:
    signs = d.signs()
    if a not in signs or b not in signs or a == b:
        raise MoveNotApplicable("r2-remove", f"crossings {a}, {b} do not both exist")
    if signs[a] != -signs[b]:
        raise MoveNotApplicable("r2-remove", f"crossings {a}, {b} have equal signs")
    over = under = None
    for i in _adjacent(d, a, b):
        pattern = (d.visits[i].over, d.visits[i + 1].over)
        if pattern == (True, True):
            over = i
        elif pattern == (False, False):
            under = i
    if over is None or under is None:
        raise MoveNotApplicable("r2-remove", f"crossings {a}, {b} do not bound a bigon")
    return over, under


@dataclass(frozen=True)
class R2Remove:
    a: int
    b: int

    name = "r2-remove"

    def apply(self, k: FramedDiagram) -> FramedDiagram:
        over, under = _bigon(k.diagram, self.a, self.b)
        return replace(k, diagram=_remove(k.diagram, (over, over + 1, under, under + 1)))

    def inverse(self, k: FramedDiagram) -> R2Insert:
        visits = k.diagram.visits
        over, under = _bigon(k.diagram, self.a, self.b)
        positive, negative = (self.a, self.b) if k.diagram.signs()[self.a] > 0 else (self.b, self.a)
        first = over - (2 if under < over else 0)
        second = under - (2 if over < under else 0)
        return R2Insert(
            first, second,
            swap_over=visits[over].crossing != positive,
            swap_under=visits[under].crossing != positive,
            under_first=under < over,
            ids=(positive, negative),
            over_words=(visits[over].word, visits[over + 1].word),
            under_words=(visits[under].word, visits[under + 1].word),
        )


def _triangle(d: KnotDiagram, a: int, b: int, c: int) -> Tuple[int, int, int]:
    if len({a, b, c}) != 3 or not {a, b, c} <= set(d.signs()):
        raise MoveNotApplicable("r3", f"crossings {a}, {b}, {c} are not three distinct crossings")
    for edges in itertools.product(_adjacent(d, a, b), _adjacent(d, a, c), _adjacent(d, b, c)):
        if len({s + t for s in edges for t in (0, 1)}) != 6:
            continue
        kinds = {(d.visits[s].over, d.visits[s + 1].over) for s in edges}
        # one strand over at both ends, one under at both, one in between
        if (True, True) in kinds and (False, False) in kinds and len(kinds) == 3:
            return edges
    raise MoveNotApplicable("r3", f"crossings {a}, {b}, {c} do not bound a triangle")


@dataclass(frozen=True)
class R3:
    """Slide a strand across the crossing of the other two."""
    a: int
    b: int
    c: int
    edges: Optional[Tuple[int, int, int]] = None

    name = "r3"

    def _edges(self, d: KnotDiagram) -> Tuple[int, int, int]:
        found = _triangle(d, self.a, self.b, self.c)
        if self.edges is None:
            return found
        edges = tuple(self.edges)
        sides = sorted(tuple(sorted((d.visits[s].crossing, d.visits[s + 1].crossing)))
                       for s in edges if 0 <= s < len(d.visits) - 1)
        expected = sorted(tuple(sorted(pair)) for pair in itertools.combinations((self.a, self.b, self.c), 2))
        if sides != expected:
            raise MoveNotApplicable(self.name, f"edges {edges} are not the sides of the triangle")
        return edges

    def apply(self, k: FramedDiagram) -> FramedDiagram:
        visits = list(k.diagram.visits)
        for s in self._edges(k.diagram):
            left, right = visits[s], visits[s + 1]
            visits[s] = replace(right, word=left.word)
            visits[s + 1] = replace(left, word=right.word)
        return replace(k, diagram=KnotDiagram(tuple(visits)))

    def inverse(self, k: FramedDiagram) -> "R3":
        return R3(self.a, self.b, self.c, self._edges(k.diagram))


def _kink_index(d: KnotDiagram, crossing: int, move: str) -> int:
    adjacent = _adjacent(d, crossing, crossing)
    if not adjacent:
        raise MoveNotApplicable(move, f"crossing {crossing} is not a kink")
    return adjacent[0]


def _kink(crossing: int, sign: int, over_first: bool, words: Sequence[str]) -> List[Visit]:
    visits = [Visit(crossing, True, sign), Visit(crossing, False, sign)]
    return _with_words(visits if over_first else visits[::-1], words)


def _one_id(crossing: Optional[int]) -> Optional[Tuple[int]]:
    return None if crossing is None else (crossing,)


@dataclass(frozen=True)
class OffsetTrade:
    """Add one kink of sign ``sign`` and lower the offset by ``sign``."""
    position: int
    sign: int
    over_first: bool = True
    crossing: Optional[int] = None
    words: Tuple[str, str] = ("", "")

    name = "offset-trade"

    def apply(self, k: FramedDiagram) -> FramedDiagram:
        if self.sign not in (1, -1):
            raise MoveNotApplicable(self.name, f"kink sign must be +1 or -1, got {self.sign}")
        (crossing,) = _fresh(k.diagram, _one_id(self.crossing), 1, self.name)
        kink = _kink(crossing, self.sign, self.over_first, self.words)
        return FramedDiagram(_insert_blocks(k.diagram, [(self.position, kink)], self.name), k.offset - self.sign)

    def inverse(self, k: FramedDiagram) -> "KinkAbsorb":
        (crossing,) = _fresh(k.diagram, _one_id(self.crossing), 1, self.name)
        return KinkAbsorb(crossing)


@dataclass(frozen=True)
class KinkAbsorb:
    """Remove a kink and fold its sign into the offset."""
    crossing: int

    name = "kink-absorb"

    def apply(self, k: FramedDiagram) -> FramedDiagram:
        i = _kink_index(k.diagram, self.crossing, self.name)
        sign = k.diagram.signs()[self.crossing]
        return FramedDiagram(_remove(k.diagram, (i, i + 1)), k.offset + sign)

    def inverse(self, k: FramedDiagram) -> OffsetTrade:
        visits = k.diagram.visits
        i = _kink_index(k.diagram, self.crossing, self.name)
        return OffsetTrade(i, visits[i].sign, visits[i].over, self.crossing,
                           (visits[i].word, visits[i + 1].word))


@dataclass(frozen=True)
class KinkPairInsert:
    """Add a positive kink at ``positive_at`` and a negative one at ``negative_at``."""
    positive_at: int
    negative_at: Optional[int] = None
    positive_over_first: bool = True
    negative_over_first: bool = True
    negative_first: bool = False
    ids: Optional[Tuple[int, int]] = None
    positive_words: Tuple[str, str] = ("", "")
    negative_words: Tuple[str, str] = ("", "")

    name = "kink-pair-insert"

    def apply(self, k: FramedDiagram) -> FramedDiagram:
        positive, negative = _fresh(k.diagram, self.ids, 2, self.name)
        negative_at = self.positive_at if self.negative_at is None else self.negative_at
        blocks = [(self.positive_at, _kink(positive, 1, self.positive_over_first, self.positive_words)),
                  (negative_at, _kink(negative, -1, self.negative_over_first, self.negative_words))]
        if self.negative_first:
            blocks.reverse()
        return replace(k, diagram=_insert_blocks(k.diagram, blocks, self.name))

    def inverse(self, k: FramedDiagram) -> "KinkPairCancel":
        positive, negative = _fresh(k.diagram, self.ids, 2, self.name)
        return KinkPairCancel(positive, negative)


@dataclass(frozen=True)
class KinkPairCancel:
    first: int
    second: int

    name = "kink-pair-cancel"

    def _kinks(self, d: KnotDiagram) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        i = _kink_index(d, self.first, self.name)
        j = _kink_index(d, self.second, self.name)
        signs = d.signs()
        if self.first == self.second or signs[self.first] != -signs[self.second]:
            raise MoveNotApplicable(self.name, f"kinks {self.first}, {self.second} do not have opposite signs")
        if signs[self.first] > 0:
            return (self.first, i), (self.second, j)
        return (self.second, j), (self.first, i)

    def apply(self, k: FramedDiagram) -> FramedDiagram:
        (_, i), (_, j) = self._kinks(k.diagram)
        return replace(k, diagram=_remove(k.diagram, (i, i + 1, j, j + 1)))

    def inverse(self, k: FramedDiagram) -> KinkPairInsert:
        visits = k.diagram.visits
        (positive, i), (negative, j) = self._kinks(k.diagram)
        positive_at = i - (2 if j < i else 0)
        negative_at = j - (2 if i < j else 0)
        return KinkPairInsert(
            positive_at, negative_at,
            positive_over_first=visits[i].over,
            negative_over_first=visits[j].over,
            negative_first=j < i,
            ids=(positive, negative),
            positive_words=(visits[i].word, visits[i + 1].word),
            negative_words=(visits[j].word, visits[j + 1].word),
        )


FramedMove = Union[Rotate, R2Insert, R2Remove, R3, OffsetTrade, KinkAbsorb, KinkPairInsert, KinkPairCancel]


def apply_move(k: FramedDiagram, move: FramedMove) -> FramedDiagram:
    result = move.apply(k)
    logger.debug("%s: %d -> %d visits", move.name, len(k.diagram.visits), len(result.diagram.visits))
    return result


def applicable_moves(k: FramedDiagram) -> Dict[str, List[FramedMove]]:
    """Moves whose pattern matches somewhere in ``k``, grouped by kind.

    Insertions are listed at every position with default options.
    """
    d = k.diagram
    n = len(d.visits)
    signs = d.signs()
    neighbours: Dict[int, set] = {c: set() for c in signs}
    kinks = set()
    for left, right in zip(d.visits, d.visits[1:]):
        if left.crossing == right.crossing:
            kinks.add(left.crossing)
        else:
            neighbours[left.crossing].add(right.crossing)
            neighbours[right.crossing].add(left.crossing)
    kinks = sorted(kinks)
    edges = sorted((a, b) for a in neighbours for b in neighbours[a] if a < b)
    moves: Dict[str, List[FramedMove]] = {
        "rotate": [Rotate(s) for s in range(1, n)],
        "r2-insert": [R2Insert(i, j) for i in range(n + 1) for j in range(n + 1)],
        "offset-trade": [OffsetTrade(i, s) for i in range(n + 1) for s in (1, -1)],
        "kink-pair-insert": [KinkPairInsert(i) for i in range(n + 1)],
        "kink-absorb": [KinkAbsorb(c) for c in kinks],
        "kink-pair-cancel": [KinkPairCancel(a, b) for a, b in itertools.combinations(kinks, 2)
                             if signs[a] == -signs[b]],
        "r2-remove": [],
        "r3": [],
    }
    for a, b in edges:
        try:
            _bigon(d, a, b)
        except MoveNotApplicable:
            pass
        else:
            moves["r2-remove"].append(R2Remove(a, b))
        for c in sorted(neighbours[a] & neighbours[b]):
            if c <= b:
                continue
            try:
                _triangle(d, a, b, c)
            except MoveNotApplicable:
                continue
            moves["r3"].append(R3(a, b, c))
    return {kind: found for kind, found in moves.items() if found}


def random_move(k: FramedDiagram, rng) -> FramedMove:
    """A seeded choice: first a move kind, then one of its matches."""
    moves = applicable_moves(k)
    kinds = sorted(moves)
    kind = kinds[int(rng.integers(0, len(kinds)))]
    return moves[kind][int(rng.integers(0, len(moves[kind])))]


# --- paths through the discriminant ----------------------------------------------


@dataclass(frozen=True)
class CrossingChange:
    """Passage through a double point; ``sign`` is the sign of the crossing afterwards."""
    crossing: int
    sign: int
    snapshot: SingularFramedDiagram

    name = "crossing-change"

    def apply(self, k: FramedDiagram) -> FramedDiagram:
        signs = k.diagram.signs()
        if self.sign not in (1, -1):
            raise MoveNotApplicable(self.name, f"sign must be +1 or -1, got {self.sign}")
        if self.crossing not in signs:
            raise MoveNotApplicable(self.name, f"crossing {self.crossing} does not exist")
        if signs[self.crossing] != -self.sign:
            raise MoveNotApplicable(self.name, f"crossing {self.crossing} already has sign {self.sign}")
        if self.snapshot != singular_at(k, self.crossing):
            raise MoveNotApplicable(self.name, f"snapshot is not the diagram with {self.crossing} marked")
        return replace(k, diagram=set_crossing_sign(k.diagram, self.crossing, self.sign))

    def inverse(self, k: FramedDiagram) -> "CrossingChange":
        return CrossingChange(self.crossing, -self.sign, self.snapshot)


def crossing_change(k: FramedDiagram, crossing: int) -> CrossingChange:
    """The event that flips ``crossing`` of ``k``."""
    signs = k.diagram.signs()
    if crossing not in signs:
        raise MoveNotApplicable("crossing-change", f"crossing {crossing} does not exist")
    return CrossingChange(crossing, -signs[crossing], singular_at(k, crossing))


PathEvent = Union[FramedMove, CrossingChange]


@dataclass(frozen=True)
class MoveSequence:
    start: FramedDiagram
    events: Tuple[PathEvent, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))


def path_states(path: MoveSequence) -> List[FramedDiagram]:
    states = [path.start]
    for index, event in enumerate(path.events):
        try:
            states.append(event.apply(states[-1]))
        except MoveNotApplicable as e:
            raise InvalidPath(str(e), index) from e
    return states


def crossing_changes(path: MoveSequence) -> List[CrossingChange]:
    path_states(path)
    return [event for event in path.events if isinstance(event, CrossingChange)]


def delta_I(path: MoveSequence) -> int:
    return sum(event.sign for event in crossing_changes(path))


def delta_I_filtered(path: MoveSequence, keep: Callable[[SingularFramedDiagram], int]) -> int:
    """Signed count of the crossing changes whose snapshot ``keep`` maps to 1."""
    return sum(event.sign for event in crossing_changes(path) if keep(event.snapshot) == 1)


def concat_paths(p: MoveSequence, q: MoveSequence) -> MoveSequence:
    if path_states(p)[-1] != q.start:
        raise InvalidPath("the second path does not start where the first one ends")
    return MoveSequence(p.start, p.events + q.events)


def reverse_path(path: MoveSequence) -> MoveSequence:
    states = path_states(path)
    inverses = [event.inverse(states[i]) for i, event in enumerate(path.events)]
    return MoveSequence(states[-1], tuple(reversed(inverses)))


def is_loop(path: MoveSequence) -> bool:
    end = path_states(path)[-1]
    return end.offset == path.start.offset and end.diagram.same_as(path.start.diagram)


def discriminant_invariant(path: MoveSequence, loops: Sequence[MoveSequence] = ()) -> int:
    """Value at the end of ``path`` of the invariant that is 0 at its start and
    grows by one at every positive passage through a double point.

    The invariant exists only if the count vanishes on closed loops; every loop
    in ``loops`` is checked first.
    """
    for n, loop in enumerate(loops):
        if not is_loop(loop):
            raise InvalidPath(f"loop {n} does not return to its start")
        total = delta_I(loop)
        if total:
            raise InvalidPath(f"loop {n} crosses the discriminant with total sign {total}")
    return delta_I(path)
