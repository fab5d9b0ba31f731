"""
Symmetrized six-vertex configurations: the correspondence with contracted
oscillating hourglass plabic graphs (simple edges oriented black to white,
2-hourglass pairs becoming transmitting vertices), well-orientedness,
Yang-Baxter and ASM moves, and canonical matching diagrams.
"""

from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from ..exceptions import WebValidationError
from ..model.component.hourglass_graph import BLACK, CROSSING, WHITE, HourglassGraph, MoveInstance
from ..model.component.letter import RANK
from ..model.component.six_vertex import SINK, SOURCE, TRANSMIT, MatchingDiagram, SixVertexConfig
from . import graph_service, move_service
from .graph_service import GraphBuilder

ASM = 'asm'
YANG_BAXTER = 'yang_baxter'


# ----------------------------------------------------------------- phi

def _pairs(graph: HourglassGraph) -> Dict[int, Tuple[int, int]]:
    """vertex -> (hourglass edge, partner) for every internal 2-hourglass."""

    pairs = {}
    for e, (u, v, m) in enumerate(graph.edges):
        if m == 1:
            continue
        if m != 2 or graph.is_boundary(u) or graph.is_boundary(v):
            raise WebValidationError('six-vertex correspondence needs a contracted oscillating graph',
                                     {'edge': e, 'multiplicity': m})
        if u in pairs or v in pairs:
            raise WebValidationError('adjacent 2-hourglasses: graph is not contracted', {'edge': e})
        pairs[u] = (e, v)
        pairs[v] = (e, u)
    return pairs


def phi(graph: HourglassGraph) -> SixVertexConfig:
    """
    Orients every simple edge from its black end to its white end and merges
    each 2-hourglass pair into one transmitting vertex.
    """

    graph_service.require_valid(graph)
    if not graph.is_oscillating:
        raise WebValidationError('six-vertex correspondence needs an oscillating graph', {'type': list(graph.type_vector)})
    if not graph_service.is_contracted(graph):
        raise WebValidationError('six-vertex correspondence needs a contracted graph')
    pairs = _pairs(graph)
    node_of = {b: b for b in range(graph.n_boundary)}
    next_node = graph.n_boundary
    for v in graph.internal_vertices:
        if v in node_of:
            continue
        node_of[v] = next_node
        if v in pairs:
            node_of[pairs[v][1]] = next_node
        next_node += 1
    simple = [e for e, (_, _, m) in enumerate(graph.edges) if m == 1]
    edge_id = {e: i for i, e in enumerate(simple)}
    edges = []
    for e in simple:
        u, v, _ = graph.edges[e]
        black, white = (u, v) if graph.colors[u] == BLACK else (v, u)
        edges.append((node_of[black], node_of[white]))
    rotation: List[Tuple[int, ...]] = [()] * next_node
    for v in range(graph.vertex_count):
        if v in pairs:
            hourglass, partner = pairs[v]
            if graph.colors[v] != WHITE:
                continue
            white_part = [e for e, _ in _rotated(graph, v, hourglass)[2:]]
            black_part = [e for e, _ in _rotated(graph, partner, hourglass)[2:]]
            rotation[node_of[v]] = tuple(edge_id[e] for e in white_part + black_part)
        else:
            rotation[node_of[v]] = tuple(edge_id[e] for e, _ in graph.rotation[v])
    return SixVertexConfig(n_boundary=graph.n_boundary, edges=tuple(edges), rotation=tuple(rotation))


def _rotated(graph: HourglassGraph, vertex: int, edge: int) -> List[Tuple[int, int]]:
    slots = list(graph.rotation[vertex])
    start = slots.index((edge, 0))
    return slots[start:] + slots[:start]


def phi_inverse(config: SixVertexConfig) -> HourglassGraph:
    """
    Colors sinks white and sources black, and expands each transmitting vertex
    into a white vertex holding the in-edges joined by a 2-hourglass to a black
    vertex holding the out-edges.
    """

    return expand_config(config)[0]


def expand_config(config: SixVertexConfig) -> Tuple[HourglassGraph, Dict[int, int], Dict[int, int]]:
    """
    phi_inverse together with the edge correspondence: (graph, configuration
    edge -> graph edge, transmitting vertex -> its 2-hourglass).
    """

    n = config.n_boundary
    builder = GraphBuilder(n)
    for b in range(n):
        builder.colors[b] = BLACK if config.edges[config.rotation[b][0]][0] == b else WHITE
        builder.rotation[b] = []
    builder._next_vertex = n
    end_of: Dict[Tuple[int, int], int] = {}
    for b in range(n):
        end_of[(b, config.rotation[b][0])] = b
    slots_of: Dict[int, List[int]] = {}
    hourglasses: Dict[int, int] = {}
    for v in config.internal_vertices:
        kind = config.kind(v)
        ring = list(config.rotation[v])
        if len(ring) != RANK:
            raise WebValidationError(f'six-vertex vertex {v} has degree {len(ring)}')
        if kind in (SINK, SOURCE):
            g = builder.add_vertex(WHITE if kind == SINK else BLACK)
            for e in ring:
                end_of[(v, e)] = g
            builder.rotation[g] = [None] * RANK
            slots_of[g] = ring
            continue
        axis = config.transmit_axis(v)
        if axis is None:
            raise WebValidationError(f'six-vertex vertex {v} does not match an allowed pattern')
        ring = ring[axis:] + ring[:axis]
        white = builder.add_vertex(WHITE)
        black = builder.add_vertex(BLACK)
        hourglass = builder.add_edge(white, black, 2)
        hourglasses[v] = hourglass
        for e in ring[:2]:
            end_of[(v, e)] = white
        for e in ring[2:]:
            end_of[(v, e)] = black
        builder.rotation[white] = [None, None, (hourglass, 0), (hourglass, 1)]
        builder.rotation[black] = [None, None, (hourglass, 0), (hourglass, 1)]
        slots_of[white] = ring[:2]
        slots_of[black] = ring[2:]
    new_edge = {}
    for e, (tail, head) in enumerate(config.edges):
        new_edge[e] = builder.add_edge(end_of[(tail, e)], end_of[(head, e)], 1)
    for b in range(n):
        builder.rotation[b] = [(new_edge[config.rotation[b][0]], 0)]
    for g, ring in slots_of.items():
        for slot, e in enumerate(ring):
            builder.rotation[g][slot] = (new_edge[e], 0)
    return builder.build(), new_edge, hourglasses


# ----------------------------------------------------------------- strands

def strand_paths(config: SixVertexConfig) -> List[List[Tuple[int, int, int]]]:
    """trip_2 strands from every boundary vertex: (edge, from, to) hops, straight across each vertex."""

    paths = []
    for start in range(config.n_boundary):
        vertex, edge = start, config.rotation[start][0]
        hops = []
        while True:
            head = config.other_end(edge, vertex)
            hops.append((edge, vertex, head))
            if head < config.n_boundary:
                break
            ring = config.rotation[head]
            edge = ring[(ring.index(edge) + 2) % RANK]
            vertex = head
            if len(hops) > 2 * len(config.edges) + 2:
                raise WebValidationError('six-vertex strand does not return to the boundary', {'start': start + 1})
        paths.append(hops)
    return paths


def trip2(config: SixVertexConfig) -> Tuple[int, ...]:
    return tuple(path[-1][2] + 1 for path in strand_paths(config))


def _strand_vertices(path) -> List[int]:
    return [head for _, _, head in path[:-1]]


def is_well_oriented(config: SixVertexConfig) -> bool:
    """
    (P1) trip_2 strands neither self-intersect nor cross twice, and (P2) every
    triangle of three pairwise-crossing strands is cyclically oriented.
    """

    paths = [p for p in strand_paths(config) if p[0][1] < p[-1][2]]
    vertex_lists = [_strand_vertices(p) for p in paths]
    for vertices in vertex_lists:
        if len(vertices) != len(set(vertices)):
            return False
    meets: Dict[Tuple[int, int], int] = {}
    for i, j in combinations(range(len(paths)), 2):
        shared = set(vertex_lists[i]) & set(vertex_lists[j])
        if len(shared) > 1:
            return False
        if shared:
            meets[(i, j)] = meets[(j, i)] = shared.pop()
    for a, b, c in combinations(range(len(paths)), 3):
        if (a, b) not in meets or (a, c) not in meets or (b, c) not in meets:
            continue
        forward = (_side(config, paths[a], vertex_lists[a], meets[(a, b)], meets[(a, c)])
                   + _side(config, paths[c], vertex_lists[c], meets[(a, c)], meets[(b, c)])
                   + _side(config, paths[b], vertex_lists[b], meets[(b, c)], meets[(a, b)]))
        if len(set(forward)) > 1:
            return False
    return True


def _side(config: SixVertexConfig, path, vertices: List[int], start: int, end: int) -> List[bool]:
    """For each edge of the strand segment from `start` to `end`: does it point along the walk?"""

    i, j = vertices.index(start), vertices.index(end)
    if i < j:
        hops = path[i + 1:j + 1]
        return [config.edges[e] == (u, v) for e, u, v in hops]
    hops = path[j + 1:i + 1]
    return [config.edges[e] == (v, u) for e, u, v in hops]


# ----------------------------------------------------------------- moves

def _plain_graph(config: SixVertexConfig) -> HourglassGraph:
    colors = tuple(BLACK if config.edges[config.rotation[b][0]][0] == b else WHITE for b in range(config.n_boundary))
    colors += (CROSSING,) * (config.vertex_count - config.n_boundary)
    return HourglassGraph(n_boundary=config.n_boundary, colors=colors,
                          edges=tuple((t, h, 1) for t, h in config.edges),
                          rotation=tuple(tuple((e, 0) for e in ring) for ring in config.rotation))


def _asm_sites(config: SixVertexConfig) -> List[MoveInstance]:
    plain = _plain_graph(config)
    structure = graph_service.face_structure(plain)
    sites = []
    for face in structure.internal_faces():
        cycle = structure.faces[face]
        if len(cycle) != 4:
            continue
        corners = [structure.half_vertex[h] for h in cycle]
        if len(set(corners)) != 4 or any(v < config.n_boundary for v in corners):
            continue
        face_edges = [structure.edge_of(h) for h in cycle]
        alternating = True
        for index, v in enumerate(corners):
            incoming = face_edges[index - 1]
            outgoing = face_edges[index]
            if config.is_in(v, incoming) != config.is_in(v, outgoing):
                alternating = False
                break
        if alternating:
            sites.append(MoveInstance(kind=ASM, vertices=tuple(corners), parameter=tuple(face_edges)))
    return sites


def six_vertex_moves(config: SixVertexConfig) -> List[MoveInstance]:
    """
    ASM moves at alternating squares plus Yang-Baxter moves, the latter located
    as benzene faces of phi_inverse(config) and reported in its vertex ids.
    """

    hourglass = phi_inverse(config)
    yang_baxter = [MoveInstance(kind=YANG_BAXTER, vertices=site.vertices, parameter=site.parameter,
                                clockwise=site.clockwise)
                   for site in move_service.benzene_faces(hourglass)]
    return _asm_sites(config) + yang_baxter


def apply_six_vertex_move(config: SixVertexConfig, move: MoveInstance) -> SixVertexConfig:
    if move.kind == ASM:
        reversed_edges = set(move.parameter)
        edges = tuple((h, t) if e in reversed_edges else (t, h) for e, (t, h) in enumerate(config.edges))
        result = SixVertexConfig(n_boundary=config.n_boundary, edges=edges, rotation=config.rotation)
        for v in move.vertices:
            if result.kind(v) == TRANSMIT and result.transmit_axis(v) is None:
                raise WebValidationError('ASM move left an invalid vertex', {'vertex': v})
        return result
    if move.kind == YANG_BAXTER:
        benzene = MoveInstance(kind=move_service.BENZENE, vertices=move.vertices, parameter=move.parameter,
                               clockwise=move.clockwise)
        return phi(move_service.apply_move(phi_inverse(config), benzene))
    raise WebValidationError(f'invalid six-vertex move {move.kind}')


# ----------------------------------------------------------------- canonical matching diagram

def _chords(matching: Sequence[int]) -> List[Tuple[int, int]]:
    n = len(matching)
    if sorted(matching) != list(range(1, n + 1)):
        raise WebValidationError('matching must be a permutation of [n]')
    chords = []
    for i, partner in enumerate(matching, start=1):
        if partner == i or matching[partner - 1] != i:
            raise WebValidationError('matching must be a fixed-point-free involution', {'i': i})
        if i < partner:
            chords.append((i, partner))
    return chords


def _crosses(first: Tuple[int, int], second: Tuple[int, int]) -> bool:
    (a, b), (c, d) = sorted((first, second))
    return a < c < b < d


def canonical_matching_diagram(matching: Sequence[int]) -> MatchingDiagram:
    """
    The diagram with the abc-property, drawn with the boundary unfolded onto a
    line: strand i goes down from b_i crossing exactly the earlier strands it
    must cross, runs horizontally at its depth and goes back up to its partner
    without further crossings.
    """

    chords = _chords(matching)
    for group in combinations(chords, 4):
        if all(_crosses(x, y) for x, y in combinations(group, 2)):
            raise WebValidationError('matching requires four pairwise crossing strands', {'strands': list(group)})
    depth: Dict[int, Fraction] = {}
    crossed_by: Dict[int, List[int]] = {}
    for i, p in chords:
        must = [j for j, q in chords if j < i < q < p]
        avoid = [j for j, q in chords if j < i and p < q]
        low = max((depth[j] for j in must), default=Fraction(0))
        high = min((depth[j] for j in avoid), default=low + 2)
        if low >= high:
            raise WebValidationError('matching cannot be drawn without extra crossings', {'strand': i})
        depth[i] = (low + high) / 2
        crossed_by[i] = sorted(must, key=depth.get)
    n = len(matching)
    # crossing (j, i): earlier strand j met by the descent of strand i
    sequence: Dict[int, List[Tuple[int, int]]] = {}
    for i, p in chords:
        descent = [(j, i) for j in crossed_by[i]]
        horizontal = sorted(((i, k) for k, _ in chords if i in crossed_by.get(k, [])), key=lambda c: c[1])
        sequence[i] = descent + horizontal
    vertex_of: Dict[Tuple[int, int], int] = {}
    for i, _ in chords:
        for crossing in sequence[i]:
            vertex_of.setdefault(crossing, n + len(vertex_of))
    rotation: List[List[int]] = [[] for _ in range(n)] + [[None] * RANK for _ in vertex_of]
    edges: List[Tuple[int, int]] = []
    north, east, south, west = range(RANK)
    for i, p in chords:
        previous, previous_slot = i - 1, None
        for crossing in sequence[i]:
            vertex = vertex_of[crossing]
            horizontal_strand = crossing[0]
            entry, leave = (west, east) if horizontal_strand == i else (north, south)
            edges.append((previous, vertex))
            edge = len(edges) - 1
            _attach(rotation, previous, previous_slot, edge)
            rotation[vertex][entry] = edge
            previous, previous_slot = vertex, leave
        edges.append((previous, p - 1))
        edge = len(edges) - 1
        _attach(rotation, previous, previous_slot, edge)
        rotation[p - 1].append(edge)
    return MatchingDiagram(n_boundary=n, edges=tuple(edges), rotation=tuple(tuple(r) for r in rotation),
                           matching=tuple(matching))


def _attach(rotation: List[List[int]], vertex: int, slot, edge: int) -> None:
    if slot is None:
        rotation[vertex].append(edge)
    else:
        rotation[vertex][slot] = edge


def diagram_strands(diagram: MatchingDiagram) -> Tuple[int, ...]:
    """Straight-through pairing of a matching diagram (1-based partner of each b_i)."""

    partners = []
    for start in range(diagram.n_boundary):
        vertex, edge = start, diagram.rotation[start][0]
        for _ in range(2 * len(diagram.edges) + 2):
            u, v = diagram.edges[edge]
            head = v if u == vertex else u
            if head < diagram.n_boundary:
                partners.append(head + 1)
                break
            ring = diagram.rotation[head]
            edge, vertex = ring[(ring.index(edge) + 2) % RANK], head
    return tuple(partners)
