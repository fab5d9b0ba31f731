from typing import Optional, Tuple

from pydantic import Field
from pydantic.dataclasses import dataclass

from ..web_model import WebModel
from .letter import RANK, LatticeWord, Letter


def mask_elements(mask: int) -> Tuple[int, ...]:
    return tuple(i + 1 for i in range(RANK) if mask >> i & 1)


@dataclass(frozen=True)
class ProperLabeling(WebModel):
    """
    An edge labeling by subsets of {1,2,3,4}, one subset per edge id, stored as
    bitmasks (bit i-1 for the label i). Its size matches the edge multiplicity.

    Attributes:
        masks (Tuple[int, ...]): Label bitmask per edge id.
    """

    masks: Tuple[int, ...] = Field(default_factory=tuple)

    def label(self, edge: int) -> Tuple[int, ...]:
        return mask_elements(self.masks[edge])

    def labels(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(mask_elements(m) for m in self.masks)


@dataclass(frozen=True)
class TagAssignment(WebModel):
    """
    Tag position per vertex: the clockwise slot that is read first, or None
    for boundary vertices and crossings.
    """

    slots: Tuple[Optional[int], ...] = Field(default_factory=tuple)

    def slot(self, vertex: int) -> Optional[int]:
        return self.slots[vertex]


def letter_code(letter: Letter) -> int:
    """Signed bitmask of a letter: +mask for unbarred letters and -mask for barred ones."""
    return letter.sign * letter.mask


def word_from_codes(codes) -> LatticeWord:
    return LatticeWord(letters=tuple(Letter(mask=abs(c), sign=1 if c > 0 else -1) for c in codes))
