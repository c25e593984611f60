"""Words in a free group of finite rank.

Generators are the lowercase letters ``a, b, c, ...``; the uppercase letter is
the inverse generator, so ``"abA"`` is ``a b a^-1``. Words are plain strings
and every function returns freely reduced words.
"""
import string
from dataclasses import dataclass
from typing import Iterator, Tuple

from ..errors import InvalidWord


def letter_inverse(letter: str) -> str:
    return letter.lower() if letter.isupper() else letter.upper()


def reduce_word(word: str) -> str:
    stack = []
    for letter in word:
        if stack and stack[-1] == letter_inverse(letter):
            stack.pop()
        else:
            stack.append(letter)
    return "".join(stack)


def invert_word(word: str) -> str:
    return "".join(letter_inverse(letter) for letter in reversed(word))


def cyclic_reduce(word: str) -> str:
    word = reduce_word(word)
    while len(word) > 1 and word[0] == letter_inverse(word[-1]):
        word = word[1:-1]
    return word


def conjugacy_key(word: str) -> str:
    """Canonical representative of the conjugacy class of ``word``.

    Two words are conjugate in a free group iff their cyclic reductions are
    cyclic permutations of each other; the key is the least rotation.
    """
    core = cyclic_reduce(word)
    if not core:
        return ""
    return min(core[k:] + core[:k] for k in range(len(core)))


@dataclass(frozen=True)
class FreeGroup:
    rank: int

    def __post_init__(self):
        if not 0 <= self.rank <= 26:
            raise ValueError(f"free group rank must be between 0 and 26, got {self.rank}")

    @property
    def generators(self) -> Tuple[str, ...]:
        return tuple(string.ascii_lowercase[:self.rank])

    @property
    def letters(self) -> Tuple[str, ...]:
        return self.generators + tuple(g.upper() for g in self.generators)

    def __repr__(self):
        return f"F{self.rank}"

    def check(self, word: str) -> str:
        alphabet = set(self.letters)
        for letter in word:
            if letter not in alphabet:
                raise InvalidWord(f"letter {letter!r} of {word!r} is not in {self!r}")
        return reduce_word(word)

    def multiply(self, *words: str) -> str:
        return reduce_word("".join(self.check(word) for word in words))

    def inverse(self, word: str) -> str:
        return invert_word(self.check(word))

    def power(self, word: str, n: int) -> str:
        word = self.check(word)
        if n < 0:
            word, n = invert_word(word), -n
        return reduce_word(word * n)

    def conjugate(self, word: str, by: str) -> str:
        return self.multiply(by, word, invert_word(self.check(by)))

    def are_conjugate(self, u: str, v: str) -> bool:
        return conjugacy_key(self.check(u)) == conjugacy_key(self.check(v))

    def words_up_to(self, length: int) -> Iterator[str]:
        """All reduced words of length <= ``length``, shortest first."""
        yield ""
        frontier = [""]
        for _ in range(length):
            grown = []
            for word in frontier:
                for letter in self.letters:
                    if word and word[-1] == letter_inverse(letter):
                        continue
                    grown.append(word + letter)
            yield from grown
            frontier = grown

    def random_word(self, rng, length: int) -> str:
        if not self.rank:
            return ""
        letters = self.letters
        picks = rng.integers(0, len(letters), size=length)
        return reduce_word("".join(letters[int(i)] for i in picks))


def parse_group(text: str) -> FreeGroup:
    """Parse a ``free:N`` group name as used on the command line."""
    kind, _, rank = text.partition(":")
    if kind != "free" or not rank.isdigit():
        raise InvalidWord(f"unsupported group {text!r}, expected free:N")
    return FreeGroup(int(rank))
