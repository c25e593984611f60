"""Finitely generated abelian groups in invariant-factor form, and the Euler class test.

An element is a tuple of integers, one coordinate per factor; a factor ``0``
is a copy of Z and a factor ``m > 0`` is Z/m.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Tuple

from sympy import ZZ, Matrix
from sympy.matrices.normalforms import smith_normal_form

from ..errors import DimensionMismatch
from ..groups import AbelianGroup

logger = logging.getLogger(__name__)

Element = Tuple[int, ...]


@dataclass(frozen=True)
class FGAbelianGroup(AbelianGroup[Element]):
    factors: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(m) for m in self.factors))
        for m in self.factors:
            if m < 0:
                raise ValueError(f"invariant factors are nonnegative, got {self.factors}")

    @classmethod
    def from_relations(cls, relations: Sequence[Sequence[int]], generators: Optional[int] = None) -> "FGAbelianGroup":
        """The group with ``generators`` generators subject to the given relation rows."""
        rows = [list(map(int, row)) for row in relations]
        if generators is None:
            if not rows:
                raise DimensionMismatch("cannot infer the number of generators from no relations")
            generators = len(rows[0])
        if any(len(row) != generators for row in rows):
            raise DimensionMismatch(f"every relation needs {generators} coefficients")
        if not rows:
            return cls((0,) * generators)
        snf = smith_normal_form(Matrix(rows), domain=ZZ)
        diagonal = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
        # generators beyond the relation rank are free
        factors = diagonal + [0] * (generators - len(diagonal))
        logger.debug("relations %s -> invariant factors %s", rows, factors)
        return cls(tuple(m for m in factors if m != 1))

    def __repr__(self):
        if not self.factors:
            return "0"
        return " + ".join("Z" if m == 0 else f"Z/{m}" for m in self.factors)

    @property
    def rank(self) -> int:
        return sum(1 for m in self.factors if m == 0)

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    def check(self, e: Sequence[int]) -> Element:
        if len(e) != len(self.factors):
            raise DimensionMismatch(f"element {list(e)} has {len(e)} coordinates, {self!r} needs {len(self.factors)}")
        return self.normalize(tuple(int(x) for x in e))

    def normalize(self, e: Element) -> Element:
        return tuple(x % m if m else x for x, m in zip(e, self.factors))

    def zero(self) -> Element:
        return (0,) * len(self.factors)

    def add(self, a: Element, b: Element) -> Element:
        return self.normalize(tuple(x + y for x, y in zip(self.check(a), self.check(b))))

    def neg(self, a: Element) -> Element:
        return self.normalize(tuple(-x for x in self.check(a)))

    def scale(self, n: int, a: Element) -> Element:
        return self.normalize(tuple(n * x for x in self.check(a)))

    def order_is_finite(self, e: Sequence[int]) -> bool:
        return all(x == 0 for x, m in zip(self.check(e), self.factors) if m == 0)

    def elements(self) -> Iterator[Element]:
        if not self.is_finite:
            raise DimensionMismatch(f"{self!r} is infinite")
        return itertools.product(*(range(m) for m in self.factors))


def half_class(e: Sequence[int], h2: FGAbelianGroup) -> Optional[Element]:
    """Some ``alpha`` with ``2 * alpha == e``, or None."""
    e = h2.check(e)
    alpha = []
    for x, m in zip(e, h2.factors):
        if m % 2 == 0:
            # Z or Z/2k: 2a = x needs x even, and x / 2 works
            if x % 2:
                return None
            alpha.append(x // 2)
        else:
            # 2 is a unit mod an odd modulus
            alpha.append(x * ((m + 1) // 2) % m)
    return h2.normalize(tuple(alpha))


def euler_realizable(e: Sequence[int], h2: FGAbelianGroup) -> bool:
    """Whether ``e`` is twice a class, i.e. the Euler class of some cooriented contact structure."""
    return half_class(e, h2) is not None
