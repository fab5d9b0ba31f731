from enum import Enum
from typing import Tuple

from pydantic.dataclasses import dataclass

from ..web_model import WebModel

RANK = 4


class LatticeStatus(str, Enum):
    LATTICE = 'lattice'
    BALANCED = 'balanced-lattice'
    NOT_LATTICE = 'not-lattice'


@dataclass(frozen=True)
class Letter(WebModel):
    """
    A letter of the alphabet: a nonempty subset of {1,2,3,4} or of {-1,-2,-3,-4}.

    Attributes:
        mask (int): Bit i-1 is set when |i| belongs to the subset.
        sign (int): +1 for unbarred letters, -1 for barred letters.
    """

    mask: int
    sign: int

    def __post_init__(self):
        if not 0 < self.mask < (1 << RANK):
            raise ValueError(f'letter mask {self.mask} is not a nonempty subset of [{RANK}]')
        if self.sign not in (1, -1):
            raise ValueError(f'letter sign must be +1 or -1, got {self.sign}')

    @classmethod
    def from_elements(cls, elements) -> 'Letter':
        elements = list(elements)
        if not elements:
            raise ValueError('empty letter')
        signs = {1 if e > 0 else -1 for e in elements}
        if 0 in elements or len(signs) != 1:
            raise ValueError(f'letter {elements} mixes signs')
        mask = 0
        for e in elements:
            if abs(e) > RANK:
                raise ValueError(f'entry {e} outside +-[{RANK}]')
            mask |= 1 << (abs(e) - 1)
        return cls(mask=mask, sign=signs.pop())

    @classmethod
    def single(cls, value: int) -> 'Letter':
        return cls.from_elements([value])

    @property
    def size(self) -> int:
        return bin(self.mask).count('1')

    @property
    def signed_size(self) -> int:
        return self.sign * self.size

    @property
    def elements(self) -> Tuple[int, ...]:
        """Elements in increasing integer order, e.g. (-4, -2) or (1, 3)."""
        values = [self.sign * (i + 1) for i in range(RANK) if self.mask >> i & 1]
        return tuple(sorted(values))

    @property
    def rows(self) -> Tuple[int, ...]:
        return tuple(i + 1 for i in range(RANK) if self.mask >> i & 1)

    @property
    def value(self) -> int:
        if self.size != 1:
            raise ValueError(f'{self} is not a singleton')
        return self.elements[0]

    def __str__(self) -> str:
        if self.size == 1:
            return str(self.value)
        return '{' + ','.join(str(e) for e in self.elements) + '}'


@dataclass(frozen=True)
class LatticeWord(WebModel):
    """
    A word over the signed-subset alphabet. Lattice-ness is a property checked by
    the word service, not an invariant of the container.

    Attributes:
        letters (Tuple[Letter, ...]): The letters, left to right.
    """

    letters: Tuple[Letter, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, index):
        return self.letters[index]

    @property
    def type_vector(self) -> Tuple[int, ...]:
        return tuple(letter.signed_size for letter in self.letters)

    @property
    def is_oscillating(self) -> bool:
        return all(letter.size == 1 for letter in self.letters)

    @property
    def total_size(self) -> int:
        return sum(letter.size for letter in self.letters)

    def signed(self) -> Tuple[int, ...]:
        """The word as signed integers; only defined for oscillating words."""
        return tuple(letter.value for letter in self.letters)

    def __str__(self) -> str:
        return ' '.join(str(letter) for letter in self.letters)

    @classmethod
    def from_signed(cls, values) -> 'LatticeWord':
        return cls(letters=tuple(Letter.single(v) for v in values))
