from typing import Tuple

from pydantic import Field
from pydantic.dataclasses import dataclass

from ..web_model import WebModel


@dataclass(frozen=True)
class FluctuatingTableau(WebModel):
    """
    A fluctuating tableau stored as its chain of 4-row generalized partitions.

    Attributes:
        shapes (Tuple[Tuple[int, ...], ...]): lambda^0 = 0, lambda^1, ..., lambda^n.
        type_vector (Tuple[int, ...]): Signed letter sizes c_1..c_n.
    """

    shapes: Tuple[Tuple[int, ...], ...] = Field(default_factory=tuple)
    type_vector: Tuple[int, ...] = Field(default_factory=tuple)

    @property
    def length(self) -> int:
        return len(self.type_vector)

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.shapes[-1]

    @property
    def is_rectangular(self) -> bool:
        return len(set(self.shape)) == 1

    @property
    def size(self) -> int:
        return sum(abs(c) for c in self.type_vector)


@dataclass(frozen=True)
class PromotionData(WebModel):
    """
    Promotion permutations of a rectangular tableau.

    Attributes:
        perms (Tuple[Tuple[int, ...], ...]): prom_1, prom_2, prom_3 in one-line notation on [N] (1-based values).
        matrices (Tuple[Tuple[Tuple[int, ...], ...], ...]): The matching 0/1 matrices, entry [b-1][prom(b)-1] = 1.
    """

    perms: Tuple[Tuple[int, ...], ...] = Field(default_factory=tuple)
    matrices: Tuple[Tuple[Tuple[int, ...], ...], ...] = Field(default_factory=tuple)

    def perm(self, i: int) -> Tuple[int, ...]:
        return self.perms[i - 1]
