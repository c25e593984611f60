"""Loop pairs at a double point and the classifier alpha after nu.

Splitting a knot with one double point at that point gives two loops
``(d1, d2)``. The pair is only defined up to simultaneous conjugation and up
to swapping the two loops; the set of these classes is the target of nu.
``alpha`` is 0 on a class containing a pair with a trivial loop and 1
elsewhere.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .words import FreeGroup, conjugacy_key, reduce_word

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WordPair:
    first: str
    second: str

    def __post_init__(self):
        object.__setattr__(self, "first", reduce_word(self.first))
        object.__setattr__(self, "second", reduce_word(self.second))

    def swapped(self) -> "WordPair":
        return WordPair(self.second, self.first)

    def conjugated(self, group: FreeGroup, by: str) -> "WordPair":
        return WordPair(group.conjugate(self.first, by), group.conjugate(self.second, by))

    def checked(self, group: FreeGroup) -> "WordPair":
        return WordPair(group.check(self.first), group.check(self.second))


def alpha_nu(pair: WordPair) -> int:
    # conjugation keeps a trivial coordinate trivial and the swap only moves it
    return 0 if not pair.first or not pair.second else 1


class Equivalence(str, Enum):
    EQUAL = "Equal"
    DISTINCT = "Distinct"
    UNKNOWN_AT_BOUND = "UnknownAtBound"


def _class_multiset(pair: WordPair):
    return sorted((conjugacy_key(pair.first), conjugacy_key(pair.second)))


def nu_equivalent(p: WordPair, q: WordPair, bound: int, group: Optional[FreeGroup] = None) -> Equivalence:
    if bound <= 0:
        raise ValueError(f"search bound must be positive, got {bound}")
    if group is None:
        rank = max((ord(letter.lower()) - ord("a") + 1
                    for letter in p.first + p.second + q.first + q.second), default=0)
        group = FreeGroup(rank)
    p, q = p.checked(group), q.checked(group)

    if p in (q, q.swapped()):
        return Equivalence.EQUAL
    if _class_multiset(p) != _class_multiset(q):
        return Equivalence.DISTINCT

    targets = (q, q.swapped())
    for conjugator in group.words_up_to(bound):
        if p.conjugated(group, conjugator) in targets:
            logger.debug("%s ~ %s via conjugator %r", p, q, conjugator)
            return Equivalence.EQUAL
    return Equivalence.UNKNOWN_AT_BOUND
