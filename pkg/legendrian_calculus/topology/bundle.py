"""Fundamental groups of circle bundles over surfaces with free fundamental group.

An element ``f^k w`` is stored as ``(k, w)``: ``f`` is the fiber class and ``w``
a reduced word over the base generators. Moving ``f`` past a base loop inverts
it when the loop reverses orientation, ``w f = f^eps(w) w``, so

    (k1, w1)(k2, w2) = (k1 + eps(w1) k2, w1 w2).
"""
import logging
from dataclasses import dataclass
from typing import Iterator, Tuple, Union

from ..errors import AlphabetMismatch, InvalidWord, NotCommuting
from .words import FreeGroup, invert_word, reduce_word

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BundleGroupElement:
    k: int = 0
    w: str = ""

    def __post_init__(self):
        object.__setattr__(self, "w", reduce_word(self.w))

    def __repr__(self):
        return f"(f^{self.k}, {self.w or '1'})"


IDENTITY = BundleGroupElement()
FIBER = BundleGroupElement(1, "")


@dataclass(frozen=True)
class BundleGroup:
    """Base group free of rank ``len(orientation)``; ``orientation[g]`` is eps of generator g."""
    orientation: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "orientation", tuple(self.orientation))
        if any(e not in (1, -1) for e in self.orientation):
            raise AlphabetMismatch(f"orientation characters must be +1 or -1, got {self.orientation}")

    @property
    def base(self) -> FreeGroup:
        return FreeGroup(len(self.orientation))

    def check(self, a: BundleGroupElement) -> BundleGroupElement:
        try:
            self.base.check(a.w)
        except InvalidWord as e:
            raise AlphabetMismatch(str(e)) from e
        return a


def orientation_character(group: BundleGroup, word: str) -> int:
    eps = 1
    for letter in group.base.check(word):
        eps *= group.orientation[ord(letter.lower()) - ord("a")]
    return eps


def bundle_mul(a: BundleGroupElement, b: BundleGroupElement, group: BundleGroup) -> BundleGroupElement:
    group.check(a)
    group.check(b)
    return BundleGroupElement(a.k + orientation_character(group, a.w) * b.k, a.w + b.w)


def bundle_inverse(a: BundleGroupElement, group: BundleGroup) -> BundleGroupElement:
    group.check(a)
    return BundleGroupElement(-orientation_character(group, a.w) * a.k, invert_word(a.w))


def bundle_pow(a: BundleGroupElement, n: int, group: BundleGroup) -> BundleGroupElement:
    if n < 0:
        a, n = bundle_inverse(a, group), -n
    result = IDENTITY
    for _ in range(n):
        result = bundle_mul(result, a, group)
    return result


def bundle_commutator(a: BundleGroupElement, b: BundleGroupElement, group: BundleGroup) -> BundleGroupElement:
    ab = bundle_mul(a, b, group)
    return bundle_mul(ab, bundle_mul(bundle_inverse(a, group), bundle_inverse(b, group), group), group)


def commute(a: BundleGroupElement, b: BundleGroupElement, group: BundleGroup) -> bool:
    return bundle_mul(a, b, group) == bundle_mul(b, a, group)


def random_element(group: BundleGroup, rng, length: int, fiber_bound: int = 5) -> BundleGroupElement:
    return BundleGroupElement(int(rng.integers(-fiber_bound, fiber_bound + 1)), group.base.random_word(rng, length))


@dataclass(frozen=True)
class Witness:
    """``beta^n = alpha^i f^j``."""
    n: int
    i: int
    j: int

    def holds(self, alpha: BundleGroupElement, beta: BundleGroupElement, group: BundleGroup) -> bool:
        lhs = bundle_pow(beta, self.n, group)
        rhs = bundle_mul(bundle_pow(alpha, self.i, group), bundle_pow(FIBER, self.j, group), group)
        return lhs == rhs


@dataclass(frozen=True)
class NoWitnessFound:
    bound: int


def _exponents(bound: int) -> Iterator[int]:
    yield 0
    for m in range(1, bound + 1):
        yield m
        yield -m


def check_toughandtechnical(alpha: BundleGroupElement, beta: BundleGroupElement, group: BundleGroup,
                            bound: int = 6) -> Union[Witness, NoWitnessFound]:
    """Search ``0 < |n| <= bound`` and ``|i| <= bound`` for ``beta^n = alpha^i f^j``.

    ``alpha`` must project to a nontrivial base loop and commute with ``beta``;
    then such a relation exists, so :class:`NoWitnessFound` means the bound is
    too small.
    """
    if not group.check(alpha).w:
        raise InvalidWord(f"alpha = {alpha!r} projects to the trivial loop")
    if bundle_commutator(alpha, beta, group) != IDENTITY:
        raise NotCommuting(f"{alpha!r} and {beta!r} do not commute")
    alpha_powers = [(i, bundle_pow(alpha, i, group)) for i in _exponents(bound)]
    for n in list(range(1, bound + 1)) + list(range(-1, -bound - 1, -1)):
        power = bundle_pow(beta, n, group)
        for i, alpha_i in alpha_powers:
            if alpha_i.w == power.w:
                j = (power.k - alpha_i.k) * orientation_character(group, alpha_i.w)
                logger.debug("beta^%d = alpha^%d f^%d", n, i, j)
                return Witness(n, i, j)
    return NoWitnessFound(bound)
