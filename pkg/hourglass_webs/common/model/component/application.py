from typing import Tuple

from pydantic import Field
from pydantic.dataclasses import dataclass

from ..web_model import WebModel
from .six_vertex import SixVertexConfig

Matrix = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class AsmClassReport(WebModel):
    """
    The move class of the superstandard web of size n read as alternating sign
    matrices.

    Attributes:
        configs (Tuple[SixVertexConfig, ...]): One six-vertex configuration per class member.
        matrices (Tuple[Matrix, ...]): The alternating sign matrix of each member.
        covers (Tuple[Tuple[int, int], ...]): Square moves as (lower, upper) member indices.
        benzene_faces (int): Benzene faces found over the whole class.
    """

    n: int
    configs: Tuple[SixVertexConfig, ...] = Field(default_factory=tuple)
    matrices: Tuple[Matrix, ...] = Field(default_factory=tuple)
    covers: Tuple[Tuple[int, int], ...] = Field(default_factory=tuple)
    benzene_faces: int = 0

    def __len__(self) -> int:
        return len(self.matrices)


@dataclass(frozen=True)
class PlanePartitionReport(WebModel):
    """
    The move class of the plane partition web of an a x b x c box.

    Attributes:
        ranks (Tuple[int, ...]): Rank (box count) of every member.
        rank_sizes (Tuple[int, ...]): Members per rank, from the bottom.
        covers (Tuple[Tuple[int, int], ...]): Benzene moves as (lower, upper) member indices.
        join_irreducibles (Tuple[int, ...]): Members covering exactly one member; one per box.
        ideals (Tuple[Tuple[int, ...], ...]): Per member, the join-irreducibles below it (its boxes).
        square_moves (int): Square moves found over the whole class.
    """

    a: int
    b: int
    c: int
    ranks: Tuple[int, ...] = Field(default_factory=tuple)
    rank_sizes: Tuple[int, ...] = Field(default_factory=tuple)
    covers: Tuple[Tuple[int, int], ...] = Field(default_factory=tuple)
    join_irreducibles: Tuple[int, ...] = Field(default_factory=tuple)
    ideals: Tuple[Tuple[int, ...], ...] = Field(default_factory=tuple)
    square_moves: int = 0

    def __len__(self) -> int:
        return len(self.ranks)


@dataclass(frozen=True)
class CspRow(WebModel):
    d: int
    fixed: int
    evaluation: int


@dataclass(frozen=True)
class CspReport(WebModel):
    k: int
    rows: Tuple[CspRow, ...] = Field(default_factory=tuple)
    orbits: int = 0

    @property
    def holds(self) -> bool:
        return all(row.fixed == row.evaluation for row in self.rows)
