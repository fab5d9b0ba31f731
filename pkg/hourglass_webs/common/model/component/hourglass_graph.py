from typing import Dict, List, Optional, Tuple

from pydantic import Field
from pydantic.dataclasses import dataclass

from ..web_model import WebModel

BLACK = 1
WHITE = -1
CROSSING = 0


@dataclass(frozen=True)
class HourglassGraph(WebModel):
    """
    A planar hourglass plabic graph in a disk, stored as a rotation system.

    Vertices 0..n_boundary-1 are the boundary vertices b_1..b_n in clockwise
    order; the remaining vertices are internal. An edge of multiplicity m > 1 is
    an m-hourglass: it occupies m consecutive clockwise slots at both endpoints,
    and strand k is the k-th of those slots at each end.

    Attributes:
        n_boundary (int): Number of boundary vertices.
        colors (Tuple[int, ...]): 1 for black, -1 for white, 0 for a crossing of a tensor diagram.
        edges (Tuple[Tuple[int, int, int], ...]): (u, v, multiplicity) per edge id.
        rotation (Tuple[Tuple[Tuple[int, int], ...], ...]): Per vertex, its clockwise slots as (edge id, strand).
    """

    n_boundary: int = 0
    colors: Tuple[int, ...] = Field(default_factory=tuple)
    edges: Tuple[Tuple[int, int, int], ...] = Field(default_factory=tuple)
    rotation: Tuple[Tuple[Tuple[int, int], ...], ...] = Field(default_factory=tuple)

    @property
    def vertex_count(self) -> int:
        return len(self.colors)

    @property
    def internal_vertices(self) -> range:
        return range(self.n_boundary, len(self.colors))

    def is_boundary(self, vertex: int) -> bool:
        return vertex < self.n_boundary

    def multiplicity(self, edge: int) -> int:
        return self.edges[edge][2]

    def other_end(self, edge: int, vertex: int) -> int:
        u, v, _ = self.edges[edge]
        return v if u == vertex else u

    def degree(self, vertex: int) -> int:
        return len(self.rotation[vertex])

    def incident_edges(self, vertex: int) -> List[Tuple[int, int]]:
        """Distinct edges at a vertex in clockwise order, as (edge id, slot of strand 0)."""

        seen = []
        for slot, (edge, strand) in enumerate(self.rotation[vertex]):
            if strand == 0:
                seen.append((edge, slot))
        return seen

    def boundary_edge(self, index: int) -> int:
        return self.rotation[index][0][0]

    @property
    def type_vector(self) -> Tuple[int, ...]:
        return tuple(self.colors[i] * self.multiplicity(self.boundary_edge(i)) for i in range(self.n_boundary))

    @property
    def is_oscillating(self) -> bool:
        return all(abs(c) == 1 for c in self.type_vector)

    @property
    def crossings(self) -> Tuple[int, ...]:
        return tuple(v for v in self.internal_vertices if self.colors[v] == CROSSING)


@dataclass(frozen=True)
class GraphDiagnostics(WebModel):
    ok: bool = True
    problems: Tuple[str, ...] = ()


@dataclass(frozen=True)
class StrandPath(WebModel):
    """
    One trip strand from boundary b_start to boundary b_end (1-based).

    Attributes:
        hops (Tuple[Tuple[int, int, int], ...]): (edge, tail, head) in traversal order.
    """

    start: int
    end: int
    hops: Tuple[Tuple[int, int, int], ...] = ()

    @property
    def internal_vertices(self) -> Tuple[int, ...]:
        return tuple(head for _, _, head in self.hops[:-1])


@dataclass(frozen=True)
class OscillizationMap(WebModel):
    """
    How an oscillization relates to the graph it was built from.

    Attributes:
        original_boundary (int): Boundary size of the original graph.
        boundary_origin (Tuple[Tuple[int, int], ...]): Per new boundary vertex, (original boundary index, strand).
        edge_origin (Tuple[int, ...]): Per new edge, the original edge it came from.
        vertex_origin (Tuple[int, ...]): Per new vertex, the original vertex (-1 for added path vertices).
        chains (Tuple[Tuple[int, int, int], ...]): Boundary-to-boundary m-hourglasses (i, j, m) that were uncontracted.
    """

    original_boundary: int = 0
    boundary_origin: Tuple[Tuple[int, int], ...] = ()
    edge_origin: Tuple[int, ...] = ()
    vertex_origin: Tuple[int, ...] = ()
    chains: Tuple[Tuple[int, int, int], ...] = ()

    def claws(self) -> Dict[int, List[int]]:
        groups: Dict[int, List[int]] = {}
        for vertex, (origin, _) in enumerate(self.boundary_origin):
            groups.setdefault(origin, []).append(vertex)
        return groups


@dataclass(frozen=True)
class MoveInstance(WebModel):
    """
    A move site found in a graph.

    Attributes:
        kind (str): benzene, square, contraction, uncontraction, dumbbell or boundary_path.
        vertices (Tuple[int, ...]): Vertices of the site, in the graph the site was found in.
        parameter (Tuple[int, ...]): Extra data (for example the face direction or a split point).
    """

    kind: str
    vertices: Tuple[int, ...] = ()
    parameter: Tuple[int, ...] = ()
    clockwise: Optional[bool] = None

    def describe(self) -> str:
        direction = '' if self.clockwise is None else (' cw' if self.clockwise else ' ccw')
        return f'{self.kind}{direction} at {list(self.vertices)}'


@dataclass(frozen=True)
class MoveClass(WebModel):
    """
    A move-equivalence class explored by breadth-first search.

    Attributes:
        members (Tuple[HourglassGraph, ...]): Canonical representatives, sorted by key.
        keys (Tuple[str, ...]): Canonical keys aligned with members.
        links (Tuple[Tuple[int, int, str, bool], ...]): (from, to, kind, upward) for every move applied.
    """

    members: Tuple[HourglassGraph, ...] = ()
    keys: Tuple[str, ...] = ()
    links: Tuple[Tuple[int, int, str, bool], ...] = ()

    def __len__(self) -> int:
        return len(self.members)

    def index_of(self, key: str) -> int:
        return self.keys.index(key)
