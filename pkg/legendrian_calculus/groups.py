"""Abelian coefficient groups for invariant values.

Ladders and alternating sums only ever add, negate and scale by integers, so
any object implementing :class:`AbelianGroup` can serve as the group of values.
"""
from dataclasses import dataclass
from typing import Generic, Iterable, TypeVar

T = TypeVar("T")


class AbelianGroup(Generic[T]):
    def zero(self) -> T:
        raise NotImplementedError

    def add(self, a: T, b: T) -> T:
        raise NotImplementedError

    def neg(self, a: T) -> T:
        raise NotImplementedError

    def normalize(self, a: T) -> T:
        return a

    def scale(self, n: int, a: T) -> T:
        if n < 0:
            return self.neg(self.scale(-n, a))
        result = self.zero()
        # double and add
        power = a
        while n:
            if n & 1:
                result = self.add(result, power)
            power = self.add(power, power)
            n >>= 1
        return result

    def total(self, values: Iterable[T]) -> T:
        result = self.zero()
        for value in values:
            result = self.add(result, value)
        return result

    def equal(self, a: T, b: T) -> bool:
        return self.normalize(a) == self.normalize(b)


class IntegerGroup(AbelianGroup[int]):
    def zero(self) -> int:
        return 0

    def add(self, a: int, b: int) -> int:
        return a + b

    def neg(self, a: int) -> int:
        return -a

    def scale(self, n: int, a: int) -> int:
        return n * a

    def __repr__(self):
        return "Z"


@dataclass(frozen=True)
class CyclicGroup(AbelianGroup[int]):
    modulus: int

    def __post_init__(self):
        if self.modulus <= 0:
            raise ValueError(f"modulus must be positive, got {self.modulus}")

    def zero(self) -> int:
        return 0

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.modulus

    def neg(self, a: int) -> int:
        return (-a) % self.modulus

    def normalize(self, a: int) -> int:
        return a % self.modulus

    def scale(self, n: int, a: int) -> int:
        return (n * a) % self.modulus

    def __repr__(self):
        return f"Z/{self.modulus}"


INTEGERS = IntegerGroup()
