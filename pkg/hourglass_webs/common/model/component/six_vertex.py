from typing import Optional, Tuple

from pydantic import Field
from pydantic.dataclasses import dataclass

from ..web_model import WebModel

SINK = 'sink'
SOURCE = 'source'
TRANSMIT = 'transmit'


@dataclass(frozen=True)
class SixVertexConfig(WebModel):
    """
    A symmetrized six-vertex configuration in a disk.

    Vertices 0..n_boundary-1 are boundary vertices; every other vertex has four
    directed edges in one of the six allowed patterns (all in, all out, or two
    adjacent in).

    Attributes:
        n_boundary (int): Number of boundary vertices.
        edges (Tuple[Tuple[int, int], ...]): (tail, head) per edge id.
        rotation (Tuple[Tuple[int, ...], ...]): Clockwise edge ids around each vertex.
    """

    n_boundary: int = 0
    edges: Tuple[Tuple[int, int], ...] = Field(default_factory=tuple)
    rotation: Tuple[Tuple[int, ...], ...] = Field(default_factory=tuple)

    @property
    def vertex_count(self) -> int:
        return len(self.rotation)

    @property
    def internal_vertices(self) -> range:
        return range(self.n_boundary, len(self.rotation))

    def is_in(self, vertex: int, edge: int) -> bool:
        return self.edges[edge][1] == vertex

    def other_end(self, edge: int, vertex: int) -> int:
        tail, head = self.edges[edge]
        return head if tail == vertex else tail

    def kind(self, vertex: int) -> Optional[str]:
        if vertex < self.n_boundary:
            return None
        ins = [self.is_in(vertex, e) for e in self.rotation[vertex]]
        if all(ins):
            return SINK
        if not any(ins):
            return SOURCE
        return TRANSMIT

    def transmit_axis(self, vertex: int) -> Optional[int]:
        """Slot of the first of the two adjacent in-edges of a transmitting vertex."""

        ins = [self.is_in(vertex, e) for e in self.rotation[vertex]]
        for slot in range(len(ins)):
            if ins[slot] and ins[(slot + 1) % len(ins)] and sum(ins) == 2:
                return slot
        return None

    @property
    def boundary_conditions(self) -> Tuple[int, ...]:
        """o_i = 1 when the boundary edge points into the disk, -1 otherwise."""
        return tuple(1 if self.edges[self.rotation[b][0]][0] == b else -1 for b in range(self.n_boundary))


@dataclass(frozen=True)
class MatchingDiagram(WebModel):
    """
    Undirected 4-valent disk graph whose straight-through strands pair up the
    boundary.

    Attributes:
        edges (Tuple[Tuple[int, int], ...]): Undirected edges (u, v).
        rotation (Tuple[Tuple[int, ...], ...]): Clockwise edge ids around each vertex.
        matching (Tuple[int, ...]): Partner of b_i (1-based) for every i.
    """

    n_boundary: int = 0
    edges: Tuple[Tuple[int, int], ...] = Field(default_factory=tuple)
    rotation: Tuple[Tuple[int, ...], ...] = Field(default_factory=tuple)
    matching: Tuple[int, ...] = Field(default_factory=tuple)

    @property
    def crossing_count(self) -> int:
        return len(self.rotation) - self.n_boundary
