"""
Core operations on hourglass plabic graphs: a mutable builder, validation,
faces of the embedding, trips, oscillization, contraction, the dihedral
symmetries and canonical keys.

Slots are indexed clockwise. A trip_a strand entering an internal vertex at
slot s leaves it at slot s + a when the vertex is white and s - a when it is
black (mod 4); at a crossing it goes straight across (s + 2).
"""

from collections import deque
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from ..exceptions import WebValidationError
from ..model.component.hourglass_graph import (BLACK, CROSSING, WHITE, GraphDiagnostics, HourglassGraph,
                                               OscillizationMap, StrandPath)
from ..model.component.letter import RANK


class GraphBuilder:
    """
    Mutable working copy of a graph. Boundary vertices keep ids 0..n_boundary-1;
    new vertices and edges get fresh ids, and build() compacts everything.
    """

    def __init__(self, n_boundary: int = 0):
        self.n_boundary = n_boundary
        self.colors: Dict[int, int] = {}
        self.edges: Dict[int, List[int]] = {}
        self.rotation: Dict[int, List[Tuple[int, int]]] = {}
        self._next_vertex = 0
        self._next_edge = 0

    @classmethod
    def from_graph(cls, graph: HourglassGraph) -> 'GraphBuilder':
        builder = cls(graph.n_boundary)
        builder.colors = dict(enumerate(graph.colors))
        builder.edges = {e: list(edge) for e, edge in enumerate(graph.edges)}
        builder.rotation = {v: list(slots) for v, slots in enumerate(graph.rotation)}
        builder._next_vertex = len(graph.colors)
        builder._next_edge = len(graph.edges)
        return builder

    def add_vertex(self, color: int) -> int:
        vertex = self._next_vertex
        self._next_vertex += 1
        self.colors[vertex] = color
        self.rotation[vertex] = []
        return vertex

    def add_edge(self, u: int, v: int, multiplicity: int) -> int:
        edge = self._next_edge
        self._next_edge += 1
        self.edges[edge] = [u, v, multiplicity]
        return edge

    def other_end(self, edge: int, vertex: int) -> int:
        u, v, _ = self.edges[edge]
        return v if u == vertex else u

    def remove_vertex(self, vertex: int) -> None:
        del self.colors[vertex]
        del self.rotation[vertex]

    def remove_edge(self, edge: int) -> None:
        del self.edges[edge]

    def reattach(self, edge: int, old: int, new: int) -> None:
        u, v, m = self.edges[edge]
        self.edges[edge] = [new if u == old else u, new if v == old else v, m]

    def slot_of(self, vertex: int, edge: int, strand: int = 0) -> int:
        return self.rotation[vertex].index((edge, strand))

    def rotated(self, vertex: int, edge: int) -> List[Tuple[int, int]]:
        """Slots of a vertex starting at strand 0 of the given edge."""
        slots = self.rotation[vertex]
        start = slots.index((edge, 0))
        return slots[start:] + slots[:start]

    def distinct_neighbors(self, vertex: int) -> List[Tuple[int, int]]:
        """(edge, neighbor) per distinct edge in clockwise order."""
        return [(e, self.other_end(e, vertex)) for e, k in self.rotation[vertex] if k == 0]

    def build(self) -> HourglassGraph:
        internal = sorted(v for v in self.colors if v >= self.n_boundary)
        order = list(range(self.n_boundary)) + internal
        vertex_map = {v: i for i, v in enumerate(order)}
        edge_ids = sorted(self.edges)
        edge_map = {e: i for i, e in enumerate(edge_ids)}
        return HourglassGraph(
            n_boundary=self.n_boundary,
            colors=tuple(self.colors[v] for v in order),
            edges=tuple((vertex_map[u], vertex_map[v], m) for u, v, m in (self.edges[e] for e in edge_ids)),
            rotation=tuple(tuple((edge_map[e], k) for e, k in self.rotation[v]) for v in order),
        )


# ----------------------------------------------------------------- lookups

@lru_cache(maxsize=4096)
def slot_index(graph: HourglassGraph) -> Dict[Tuple[int, int, int], int]:
    """(vertex, edge, strand) -> clockwise slot."""

    index = {}
    for vertex, slots in enumerate(graph.rotation):
        for slot, (edge, strand) in enumerate(slots):
            index[(vertex, edge, strand)] = slot
    return index


def exit_slot(color: int, slot: int, a: int) -> int:
    if color == WHITE:
        return (slot + a) % RANK
    if color == BLACK:
        return (slot - a) % RANK
    return (slot + 2) % RANK


# ----------------------------------------------------------------- validation

def validate(graph: HourglassGraph, allow_crossings: bool = False) -> GraphDiagnostics:
    problems = []
    n, count = graph.n_boundary, graph.vertex_count
    if len(graph.rotation) != count:
        problems.append('rotation system does not cover every vertex')
        return GraphDiagnostics(ok=False, problems=tuple(problems))
    allowed = {BLACK, WHITE, CROSSING} if allow_crossings else {BLACK, WHITE}
    for v, color in enumerate(graph.colors):
        if color not in allowed:
            problems.append(f'vertex {v} has color {color}')
    for e, (u, v, m) in enumerate(graph.edges):
        if not (0 <= u < count and 0 <= v < count) or u == v:
            problems.append(f'edge {e} has bad endpoints ({u}, {v})')
            continue
        if not 1 <= m <= RANK:
            problems.append(f'edge {e} has multiplicity {m}')
        if CROSSING in (graph.colors[u], graph.colors[v]):
            if m != 1:
                problems.append(f'edge {e} at a crossing is not simple')
        elif graph.colors[u] == graph.colors[v]:
            problems.append(f'edge {e} joins two vertices of the same color')
        for end in (u, v):
            strands = [k for edge, k in graph.rotation[end] if edge == e]
            if strands != list(range(m)):
                problems.append(f'edge {e} does not occupy strands 0..{m - 1} at vertex {end}')
                continue
            slots = [s for s, (edge, _) in enumerate(graph.rotation[end]) if edge == e]
            if m > 1 and not _cyclically_consecutive(slots, len(graph.rotation[end])):
                problems.append(f'hourglass {e} is not consecutive at vertex {end}')
    for v, slots in enumerate(graph.rotation):
        for edge, _ in slots:
            if not 0 <= edge < len(graph.edges) or v not in graph.edges[edge][:2]:
                problems.append(f'vertex {v} lists edge {edge} that is not incident to it')
        if v < n:
            if len({edge for edge, _ in slots}) != 1:
                problems.append(f'boundary vertex {v} must have exactly one edge')
        elif len(slots) != RANK:
            problems.append(f'internal vertex {v} has degree {len(slots)}')
    if not problems:
        euler = _euler_characteristic(graph)
        if euler is not None:
            problems.append(euler)
    return GraphDiagnostics(ok=not problems, problems=tuple(problems))


def require_valid(graph: HourglassGraph, allow_crossings: bool = False) -> HourglassGraph:
    diagnostics = validate(graph, allow_crossings)
    if not diagnostics.ok:
        raise WebValidationError(f'invalid hourglass graph: {diagnostics.problems[0]}',
                                 {'problems': list(diagnostics.problems)})
    return graph


def _cyclically_consecutive(slots: Sequence[int], size: int) -> bool:
    if len(slots) == size:
        return True
    present = set(slots)
    starts = [s for s in slots if (s - 1) % size not in present]
    return len(starts) == 1


def _components(graph: HourglassGraph) -> List[List[int]]:
    seen, components = set(), []
    for root in range(graph.vertex_count):
        if root in seen:
            continue
        component, stack = [], [root]
        seen.add(root)
        while stack:
            v = stack.pop()
            component.append(v)
            for edge, _ in graph.rotation[v]:
                w = graph.other_end(edge, v)
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        components.append(component)
    return components


def _euler_characteristic(graph: HourglassGraph) -> Optional[str]:
    structure = face_structure(graph)
    components = _components(graph)
    if graph.n_boundary:
        # boundary arcs tie every boundary component together
        boundary = {v for c in components if any(x < graph.n_boundary for x in c) for v in c}
        count = 1 + sum(1 for c in components if not boundary.intersection(c))
    else:
        count = len(components)
    vertices = graph.vertex_count
    edges = len(structure.half_vertex) // 2
    faces = len(structure.faces)
    if vertices - edges + faces != 2 * count:
        return f'rotation system is not planar (V - E + F = {vertices - edges + faces}, expected {2 * count})'
    return None


# ----------------------------------------------------------------- faces

class FaceStructure:
    """
    Half-edge structure of the collapsed graph plus the boundary arcs.

    Edge e has half-edges 2e (leaving edges[e][0]) and 2e + 1; arc i, joining b_i
    to b_{i+1}, has half-edges 2(E + i) and 2(E + i) + 1. The face of a half-edge
    is the face in the clockwise gap just before it at its start vertex.
    """

    def __init__(self, graph: HourglassGraph):
        edge_count, n = len(graph.edges), graph.n_boundary
        arcs = n if n else 0
        total = 2 * (edge_count + arcs)
        self.graph = graph
        self.edge_count = edge_count
        self.half_vertex = [0] * total
        for e, (u, v, _) in enumerate(graph.edges):
            self.half_vertex[2 * e], self.half_vertex[2 * e + 1] = u, v
        for i in range(arcs):
            self.half_vertex[2 * (edge_count + i)] = i
            self.half_vertex[2 * (edge_count + i) + 1] = (i + 1) % n
        self.around: Dict[int, List[int]] = {}
        for v in range(graph.vertex_count):
            halves = [self.half_at(e, v) for e, _ in graph.incident_edges(v)]
            if v < n:
                halves = [2 * (edge_count + v)] + halves + [2 * (edge_count + (v - 1) % n) + 1]
            self.around[v] = halves
        position = {}
        for v, halves in self.around.items():
            for index, h in enumerate(halves):
                position[h] = (v, index)
        self.next_half = [0] * total
        for h in range(total):
            v, index = position[h ^ 1]
            ring = self.around[v]
            self.next_half[h] = ring[(index + 1) % len(ring)]
        self.face_of = [-1] * total
        self.faces: List[List[int]] = []
        for h in range(total):
            if self.face_of[h] >= 0:
                continue
            cycle, current = [], h
            while self.face_of[current] < 0:
                self.face_of[current] = len(self.faces)
                cycle.append(current)
                current = self.next_half[current]
            self.faces.append(cycle)
        self.exterior = self.face_of[2 * edge_count] if n else None
        self.base = self.face_of[2 * (edge_count + n - 1) + 1] if n else (0 if self.faces else None)

    def half_at(self, edge: int, vertex: int) -> int:
        return 2 * edge if self.graph.edges[edge][0] == vertex else 2 * edge + 1

    def edge_of(self, half: int) -> int:
        return half // 2

    def is_arc(self, half: int) -> bool:
        return half // 2 >= self.edge_count

    def face_before(self, vertex: int, edge: int) -> int:
        return self.face_of[self.half_at(edge, vertex)]

    def face_vertices(self, face: int) -> List[int]:
        return [self.half_vertex[h] for h in self.faces[face]]

    def internal_faces(self) -> List[int]:
        return [f for f, cycle in enumerate(self.faces)
                if f != self.exterior and not any(self.is_arc(h) for h in cycle)]

    def sides(self, face: int) -> Tuple[int, int]:
        """The two faces on either side of an edge, keyed by its half-edges."""
        return self.face_of[2 * face], self.face_of[2 * face + 1]


@lru_cache(maxsize=2048)
def face_structure(graph: HourglassGraph) -> FaceStructure:
    return FaceStructure(graph)


# ----------------------------------------------------------------- trips

def walk_strand(graph: HourglassGraph, start: int, a: int) -> StrandPath:
    """Follows trip_a from boundary vertex `start` (0-based) of an oscillating graph."""

    index = slot_index(graph)
    edge, strand = graph.rotation[start][0]
    vertex = start
    hops = []
    limit = RANK * RANK * (len(graph.edges) + 1)
    while True:
        head = graph.other_end(edge, vertex)
        hops.append((edge, vertex, head))
        if graph.is_boundary(head):
            return StrandPath(start=start + 1, end=head + 1, hops=tuple(hops))
        slot = index[(head, edge, strand)]
        edge, strand = graph.rotation[head][exit_slot(graph.colors[head], slot, a)]
        vertex = head
        if len(hops) > limit:
            raise WebValidationError('trip does not return to the boundary', {'start': start + 1, 'a': a})


def _require_oscillating(graph: HourglassGraph) -> HourglassGraph:
    if not graph.is_oscillating:
        raise WebValidationError('operation needs an oscillating graph', {'type': list(graph.type_vector)})
    return graph


def strands(graph: HourglassGraph, a: int) -> List[StrandPath]:
    _require_oscillating(graph)
    return [walk_strand(graph, i, a) for i in range(graph.n_boundary)]


@lru_cache(maxsize=4096)
def trip_perm(graph: HourglassGraph, a: int) -> Tuple[int, ...]:
    """trip_a as a permutation of [N], computed on the oscillization."""

    osc = oscillize(graph)[0] if not graph.is_oscillating else graph
    return tuple(walk_strand(osc, i, a).end for i in range(osc.n_boundary))


def trip_perms(graph: HourglassGraph) -> Tuple[Tuple[int, ...], ...]:
    return tuple(trip_perm(graph, a) for a in range(1, RANK))


def plabic_trip(graph: HourglassGraph) -> Tuple[int, ...]:
    """
    Rules-of-the-road trip on the underlying simple graph: turn to the next
    clockwise edge at white vertices and to the previous one at black vertices.
    """

    osc = _require_oscillating(graph) if graph.is_oscillating else oscillize(graph)[0]
    result = []
    for start in range(osc.n_boundary):
        vertex, edge = start, osc.boundary_edge(start)
        for _ in range(RANK * (len(osc.edges) + 1)):
            head = osc.other_end(edge, vertex)
            if osc.is_boundary(head):
                result.append(head + 1)
                break
            ring = [e for e, _ in osc.incident_edges(head)]
            position = ring.index(edge)
            step = 1 if osc.colors[head] == WHITE else -1
            edge, vertex = ring[(position + step) % len(ring)], head
        else:
            raise WebValidationError('plabic trip does not return to the boundary', {'start': start + 1})
    return tuple(result)


def anti_exceedances(perm: Sequence[int]) -> set:
    inverse = {target: b for b, target in enumerate(perm, start=1)}
    return {i for i in range(1, len(perm) + 1) if inverse[i] > i}


def boundary_labels_from_trips(graph: HourglassGraph) -> Tuple[int, ...]:
    """
    Boundary edge labels of the oscillization predicted by the trip
    permutations: 1 + #{a : i not in aexc(trip_a)} at black boundary vertices and
    1 + #{a : i in aexc(trip_a)} at white ones.
    """

    osc = graph if graph.is_oscillating else oscillize(graph)[0]
    excedances = [anti_exceedances(p) for p in trip_perms(osc)]
    labels = []
    for i in range(1, osc.n_boundary + 1):
        inside = sum(1 for aexc in excedances if i in aexc)
        labels.append(1 + (RANK - 1 - inside if osc.colors[i - 1] == BLACK else inside))
    return tuple(labels)


def side_masks(graph: HourglassGraph, paths: Sequence[StrandPath]) -> Dict[int, int]:
    """
    For every face, the bitmask of strands that separate it from the base face
    F_0 (the face between b_n and b_1).
    """

    structure = face_structure(graph)
    parity = [0] * len(graph.edges)
    for bit, path in enumerate(paths):
        for edge, _, _ in path.hops:
            parity[edge] ^= 1 << bit
    masks = {structure.base: 0}
    queue = deque([structure.base])
    adjacency: Dict[int, List[Tuple[int, int]]] = {}
    for e in range(len(graph.edges)):
        left, right = structure.sides(e)
        adjacency.setdefault(left, []).append((right, e))
        adjacency.setdefault(right, []).append((left, e))
    while queue:
        face = queue.popleft()
        for neighbor, e in adjacency.get(face, []):
            if neighbor not in masks:
                masks[neighbor] = masks[face] ^ parity[e]
                queue.append(neighbor)
    return masks


# ----------------------------------------------------------------- oscillization

def oscillize(graph: HourglassGraph) -> Tuple[HourglassGraph, OscillizationMap]:
    """
    Splits every boundary m-hourglass into a claw of m simple edges. An
    m-hourglass joining two boundary vertices is first uncontracted into a path
    b -m- v -(4-m)- v' -m- b'. Internal vertices keep their slot positions.
    """

    n = graph.n_boundary
    type_vector = graph.type_vector
    offsets = [0]
    for c in type_vector:
        offsets.append(offsets[-1] + abs(c))
    total = offsets[-1]
    colors: List[int] = []
    boundary_origin = []
    for i in range(n):
        for k in range(abs(type_vector[i])):
            colors.append(graph.colors[i])
            boundary_origin.append((i, k))
    vertex_origin = [-1] * total
    for v in graph.internal_vertices:
        colors.append(graph.colors[v])
        vertex_origin.append(v)

    def new_id(v: int) -> int:
        return total + v - n

    edges: List[Tuple[int, int, int]] = []
    edge_origin: List[int] = []
    rotation: Dict[int, List[Tuple[int, int]]] = {new_id(v): [None] * graph.degree(v) for v in graph.internal_vertices}
    for b in range(total):
        rotation[b] = []
    index = slot_index(graph)
    chains = []

    def add(u: int, v: int, m: int, origin: int) -> int:
        edges.append((u, v, m))
        edge_origin.append(origin)
        return len(edges) - 1

    for e, (u, v, m) in enumerate(graph.edges):
        u_boundary, v_boundary = graph.is_boundary(u), graph.is_boundary(v)
        if not u_boundary and not v_boundary:
            new = add(new_id(u), new_id(v), m, e)
            for end in (u, v):
                for k in range(m):
                    rotation[new_id(end)][index[(end, e, k)]] = (new, k)
        elif u_boundary and v_boundary:
            i, j = (u, v) if u < v else (v, u)
            if m == 1:
                new = add(offsets[i], offsets[j], 1, e)
                rotation[offsets[i]].append((new, 0))
                rotation[offsets[j]].append((new, 0))
                continue
            chains.append((i, j, m))
            near = len(colors)
            colors.append(-graph.colors[i])
            vertex_origin.append(-1)
            far = len(colors)
            colors.append(-graph.colors[j])
            vertex_origin.append(-1)
            rotation[near], rotation[far] = [], []
            for k in range(m):
                claw = add(offsets[i] + k, near, 1, e)
                rotation[offsets[i] + k].append((claw, 0))
                rotation[near].append((claw, 0))
            if m < RANK:
                middle = add(near, far, RANK - m, e)
                rotation[near].extend((middle, k) for k in range(RANK - m))
                rotation[far].extend((middle, k) for k in range(RANK - m))
            for k in range(m):
                claw = add(offsets[j] + k, far, 1, e)
                rotation[offsets[j] + k].append((claw, 0))
                rotation[far].append((claw, 0))
        else:
            b, w = (u, v) if u_boundary else (v, u)
            for k in range(m):
                claw = add(offsets[b] + k, new_id(w), 1, e)
                rotation[offsets[b] + k].append((claw, 0))
                rotation[new_id(w)][index[(w, e, k)]] = (claw, 0)
    osc = HourglassGraph(
        n_boundary=total,
        colors=tuple(colors),
        edges=tuple(edges),
        rotation=tuple(tuple(rotation[v]) for v in range(len(colors))),
    )
    mapping = OscillizationMap(
        original_boundary=n,
        boundary_origin=tuple(boundary_origin),
        edge_origin=tuple(edge_origin),
        vertex_origin=tuple(vertex_origin),
        chains=tuple(chains),
    )
    return osc, mapping


def deoscillize(osc: HourglassGraph, mapping: OscillizationMap) -> HourglassGraph:
    """
    Inverse of oscillize for graphs whose claws survived (moves never split
    them): merges each claw back into a boundary hourglass and restores the
    boundary-to-boundary hourglasses recorded in the map.
    """

    claws = mapping.claws()
    chained = {}
    for i, j, m in mapping.chains:
        chained[i] = (j, m)
        chained[j] = (i, m)
    skip = set()
    for i, (j, m) in chained.items():
        for b in claws[i]:
            skip.add(osc.other_end(osc.boundary_edge(b), b))
    builder = GraphBuilder(mapping.original_boundary)
    for i in range(mapping.original_boundary):
        builder.colors[i] = osc.colors[claws[i][0]]
        builder.rotation[i] = []
    vertex_map = {}
    next_id = mapping.original_boundary
    for v in osc.internal_vertices:
        if v not in skip:
            vertex_map[v] = next_id
            builder.colors[next_id] = osc.colors[v]
            builder.rotation[next_id] = [None] * osc.degree(v)
            next_id += 1
    builder._next_vertex = next_id
    index = slot_index(osc)
    claw_edge: Dict[int, int] = {}
    for e, (u, v, m) in enumerate(osc.edges):
        u_boundary, v_boundary = osc.is_boundary(u), osc.is_boundary(v)
        if u in skip or v in skip:
            continue
        if not u_boundary and not v_boundary:
            new = builder.add_edge(vertex_map[u], vertex_map[v], m)
            for end in (u, v):
                for k in range(m):
                    builder.rotation[vertex_map[end]][index[(end, e, k)]] = (new, k)
        elif u_boundary and v_boundary:
            i, j = mapping.boundary_origin[u][0], mapping.boundary_origin[v][0]
            new = builder.add_edge(i, j, 1)
            builder.rotation[i].append((new, 0))
            builder.rotation[j].append((new, 0))
        else:
            b, w = (u, v) if u_boundary else (v, u)
            origin, strand = mapping.boundary_origin[b]
            size = len(claws[origin])
            if origin not in claw_edge:
                claw_edge[origin] = builder.add_edge(origin, vertex_map[w], size)
                builder.rotation[origin] = [(claw_edge[origin], k) for k in range(size)]
            elif builder.edges[claw_edge[origin]][1] != vertex_map[w]:
                raise WebValidationError('claw was split by a move', {'boundary': origin + 1})
            builder.rotation[vertex_map[w]][index[(w, e, 0)]] = (claw_edge[origin], strand)
    for i, (j, m) in chained.items():
        if i < j:
            new = builder.add_edge(i, j, m)
            builder.rotation[i] = [(new, k) for k in range(m)]
            builder.rotation[j] = [(new, k) for k in range(m)]
    return builder.build()


# ----------------------------------------------------------------- contraction

def contraction_step(builder: GraphBuilder) -> bool:
    n = builder.n_boundary
    for v in sorted(builder.colors):
        if v < n or v not in builder.colors:
            continue
        neighbors = builder.distinct_neighbors(v)
        if len(neighbors) == 1:
            edge, w = neighbors[0]
            if w >= n and builder.edges[edge][2] == RANK:
                builder.remove_edge(edge)
                builder.remove_vertex(v)
                builder.remove_vertex(w)
                return True
            continue
        if len(neighbors) != 2:
            continue
        (ex, x), (ey, y) = neighbors
        if x >= n and y >= n and x != y:
            if any(builder.other_end(e, x) == y for e, k in builder.rotation[x] if k == 0):
                continue
            _merge_through(builder, v, ex, x, ey, y)
            return True
        if (x < n) != (y < n):
            b, eb, w, ew = (x, ex, y, ey) if x < n else (y, ey, x, ex)
            far = builder.distinct_neighbors(w)
            if len(far) != 2:
                continue
            (e1, z1), (e2, z2) = far
            eout, b2 = (e2, z2) if e1 == ew else (e1, z1)
            m = builder.edges[eb][2]
            if b2 < n and b2 != b and builder.edges[eout][2] == m:
                for edge in (eb, ew, eout):
                    builder.remove_edge(edge)
                builder.remove_vertex(v)
                builder.remove_vertex(w)
                new = builder.add_edge(min(b, b2), max(b, b2), m)
                builder.rotation[b] = [(new, k) for k in range(m)]
                builder.rotation[b2] = [(new, k) for k in range(m)]
                return True
    return False


def _merge_through(builder: GraphBuilder, v: int, ex: int, x: int, ey: int, y: int) -> None:
    a = builder.edges[ex][2]
    x_others = builder.rotated(x, ex)[a:]
    y_others = builder.rotated(y, ey)[RANK - a:]
    for edge, strand in y_others:
        if strand == 0:
            builder.reattach(edge, y, x)
    builder.rotation[x] = x_others + y_others
    builder.remove_edge(ex)
    builder.remove_edge(ey)
    builder.remove_vertex(v)
    builder.remove_vertex(y)


def contract(graph: HourglassGraph) -> HourglassGraph:
    """
    Applies contraction moves until none apply: merges x - v - y through a
    simple-degree-2 vertex v, collapses boundary paths b - v - v' - b' into one
    hourglass and removes 4-hourglass dumbbells.
    """

    builder = GraphBuilder.from_graph(graph)
    while contraction_step(builder):
        pass
    return builder.build()


def is_contracted(graph: HourglassGraph) -> bool:
    return not contraction_step(GraphBuilder.from_graph(graph))


# ----------------------------------------------------------------- symmetries

def _relabel(graph: HourglassGraph, boundary_map: Dict[int, int]) -> HourglassGraph:
    def image(v: int) -> int:
        return boundary_map.get(v, v)

    order = sorted(range(graph.n_boundary), key=image)
    colors = [graph.colors[v] for v in order] + list(graph.colors[graph.n_boundary:])
    rotation = [graph.rotation[v] for v in order] + list(graph.rotation[graph.n_boundary:])
    edges = tuple((image(u), image(v), m) for u, v, m in graph.edges)
    return HourglassGraph(n_boundary=graph.n_boundary, colors=tuple(colors), edges=edges, rotation=tuple(rotation))


def rotate(graph: HourglassGraph, steps: int = 1) -> HourglassGraph:
    """Rotation of the boundary labels: the new b_i is the old b_{i+steps}."""

    n = graph.n_boundary
    if not n:
        return graph
    return _relabel(graph, {i: (i - steps) % n for i in range(n)})


def reflect(graph: HourglassGraph) -> HourglassGraph:
    """Mirror image: b_i becomes b_{n+1-i}, clockwise orders reverse and strands flip."""

    n = graph.n_boundary
    relabeled = _relabel(graph, {i: n - 1 - i for i in range(n)})
    rotation = []
    for v, slots in enumerate(relabeled.rotation):
        flipped = [(e, relabeled.multiplicity(e) - 1 - k) for e, k in reversed(slots)]
        if v < n:
            flipped = sorted(flipped, key=lambda slot: slot[1])
        rotation.append(tuple(flipped))
    return HourglassGraph(n_boundary=n, colors=relabeled.colors, edges=relabeled.edges, rotation=tuple(rotation))


# ----------------------------------------------------------------- canonical form

def _traverse(graph: HourglassGraph, roots: Sequence[Tuple[int, int]], vertex_map: Dict[int, int],
              edge_map: Dict[int, int], starts: Dict[int, int]) -> None:
    index = slot_index(graph)
    queue = deque()
    for root, start in roots:
        if root not in vertex_map:
            vertex_map[root] = len(vertex_map)
            starts[root] = start
            queue.append(root)
    while queue:
        v = queue.popleft()
        slots = graph.rotation[v]
        start = starts[v]
        for edge, _ in slots[start:] + slots[:start]:
            if edge not in edge_map:
                edge_map[edge] = len(edge_map)
            w = graph.other_end(edge, v)
            if w not in vertex_map:
                vertex_map[w] = len(vertex_map)
                starts[w] = index[(w, edge, 0)]
                queue.append(w)


def _assemble(graph: HourglassGraph, vertex_map: Dict[int, int], edge_map: Dict[int, int],
              starts: Dict[int, int]) -> HourglassGraph:
    order = sorted(vertex_map, key=vertex_map.get)
    edges = [None] * len(edge_map)
    for old, new in edge_map.items():
        u, v, m = graph.edges[old]
        a, b = sorted((vertex_map[u], vertex_map[v]))
        edges[new] = (a, b, m)
    rotation = []
    for v in order:
        slots = graph.rotation[v]
        start = starts[v]
        rotation.append(tuple((edge_map[e], k) for e, k in slots[start:] + slots[:start]))
    return HourglassGraph(n_boundary=graph.n_boundary, colors=tuple(graph.colors[v] for v in order),
                          edges=tuple(edges), rotation=tuple(rotation))


def _serialize(graph: HourglassGraph) -> str:
    return f'{graph.n_boundary}|{list(graph.colors)}|{list(graph.edges)}|{[list(s) for s in graph.rotation]}'.replace(' ', '')


def canonical_form(graph: HourglassGraph) -> HourglassGraph:
    """
    Relabels vertices and edges by breadth-first search from b_1..b_n, reading
    each internal vertex clockwise from the slot it was reached through. Closed
    components are appended in their lexicographically least labeling.
    """

    vertex_map, edge_map, starts = {}, {}, {}
    _traverse(graph, [(b, 0) for b in range(graph.n_boundary)], vertex_map, edge_map, starts)
    if len(vertex_map) == graph.vertex_count:
        return _assemble(graph, vertex_map, edge_map, starts)
    pieces = []
    for component in _components(graph):
        if component[0] in vertex_map:
            continue
        best = None
        for root in component:
            for slot, (_, strand) in enumerate(graph.rotation[root]):
                if strand != 0:
                    continue
                local_v, local_e, local_s = {}, {}, {}
                _traverse(graph, [(root, slot)], local_v, local_e, local_s)
                sub = _assemble(graph, local_v, local_e, local_s)
                text = _serialize(sub)
                if best is None or text < best[0]:
                    best = (text, local_v, local_e, local_s)
        pieces.append(best)
    for _, local_v, local_e, local_s in sorted(pieces, key=lambda piece: piece[0]):
        for v in sorted(local_v, key=local_v.get):
            vertex_map[v] = len(vertex_map)
            starts[v] = local_s[v]
        for e in sorted(local_e, key=local_e.get):
            edge_map[e] = len(edge_map)
    return _assemble(graph, vertex_map, edge_map, starts)


@lru_cache(maxsize=65536)
def canonical_key(graph: HourglassGraph) -> str:
    return _serialize(canonical_form(graph))


def same_graph(first: HourglassGraph, second: HourglassGraph) -> bool:
    return canonical_key(first) == canonical_key(second)


# ----------------------------------------------------------------- small constructions

def star(type_vector: Sequence[int]) -> HourglassGraph:
    """
    A single internal vertex joined to every boundary vertex; its color is
    opposite to the (common) boundary color. The type must have |c| summing to 4.
    """

    type_vector = tuple(type_vector)
    if sum(abs(c) for c in type_vector) != RANK or len({c > 0 for c in type_vector}) != 1:
        raise WebValidationError('a star needs a single-signed type of total size 4', {'type': list(type_vector)})
    n = len(type_vector)
    boundary_color = BLACK if type_vector[0] > 0 else WHITE
    builder = GraphBuilder(n)
    for i in range(n):
        builder.colors[i] = boundary_color
        builder.rotation[i] = []
    builder._next_vertex = n
    center = builder.add_vertex(-boundary_color)
    for i, c in enumerate(type_vector):
        edge = builder.add_edge(i, center, abs(c))
        builder.rotation[i] = [(edge, k) for k in range(abs(c))]
        builder.rotation[center].extend((edge, k) for k in range(abs(c)))
    return builder.build()
