"""
Local moves on hourglass plabic graphs and the searches built on them.

Benzene and square moves are found and applied on the oscillization, where
every boundary hourglass is a claw of simple edges; the result is folded back
with deoscillize. Every applied move is checked to preserve the trip
permutations.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple

from ..exceptions import MoveGuardError, ResourceCapExceeded, WebValidationError
from ..model.component.hourglass_graph import BLACK, WHITE, HourglassGraph, MoveClass, MoveInstance
from ..model.component.letter import RANK
from ..utilities import get_max_nodes, get_max_workers, log_message
from . import graph_service
from .graph_service import GraphBuilder

BENZENE = 'benzene'
SQUARE = 'square'
CONTRACTION = 'contraction'
DUMBBELL = 'dumbbell'
BOUNDARY_PATH = 'boundary_path'
UNCONTRACTION = 'uncontraction'

SQUARE_MOVE_KINDS = (BENZENE, SQUARE)


def _working_copy(graph: HourglassGraph):
    if graph.is_oscillating:
        return graph, None
    return graph_service.oscillize(graph)


def _fold(graph: HourglassGraph, mapping) -> HourglassGraph:
    return graph if mapping is None else graph_service.deoscillize(graph, mapping)


# ----------------------------------------------------------------- benzene

def _benzene_sites(graph: HourglassGraph) -> List[MoveInstance]:
    structure = graph_service.face_structure(graph)
    sites = []
    for face in structure.internal_faces():
        cycle = structure.faces[face]
        if len(cycle) != 6:
            continue
        vertices = [structure.half_vertex[h] for h in cycle]
        if len(set(vertices)) != 6 or any(graph.is_boundary(v) for v in vertices):
            continue
        multiplicities = [graph.multiplicity(structure.edge_of(h)) for h in cycle]
        if sorted(set(multiplicities)) != [1, 2]:
            continue
        if any(multiplicities[i] == multiplicities[(i + 1) % 6] for i in range(6)):
            continue
        hourglass_tails = [graph.colors[structure.half_vertex[h]] for h, m in zip(cycle, multiplicities) if m == 2]
        sites.append(MoveInstance(kind=BENZENE, vertices=tuple(vertices),
                                  parameter=tuple(structure.edge_of(h) for h in cycle),
                                  clockwise=all(c == BLACK for c in hourglass_tails)))
    return sites


def _rebuild_slots(builder: GraphBuilder, vertex: int, multiplicities: Dict[int, int]) -> None:
    order = [e for e, k in builder.rotation[vertex] if k == 0]
    builder.rotation[vertex] = [(e, k) for e in order for k in range(multiplicities.get(e, builder.edges[e][2]))]


def _apply_benzene(graph: HourglassGraph, move: MoveInstance) -> HourglassGraph:
    builder = GraphBuilder.from_graph(graph)
    toggled = {e: 3 - builder.edges[e][2] for e in move.parameter}
    for v in move.vertices:
        _rebuild_slots(builder, v, toggled)
    for e, m in toggled.items():
        builder.edges[e][2] = m
    return builder.build()


# ----------------------------------------------------------------- square

def _pair_partner(graph: HourglassGraph, vertex: int) -> Optional[Tuple[int, int]]:
    """(hourglass edge, partner) when the vertex is half of an internal 2-hourglass pair."""

    incident = graph.incident_edges(vertex)
    doubles = [e for e, _ in incident if graph.multiplicity(e) == 2]
    if len(incident) != 3 or len(doubles) != 1:
        return None
    partner = graph.other_end(doubles[0], vertex)
    if graph.is_boundary(partner):
        return None
    partner_incident = graph.incident_edges(partner)
    if len(partner_incident) != 3 or any(graph.multiplicity(e) > 1 for e, _ in partner_incident if e != doubles[0]):
        return None
    return doubles[0], partner


def _square_sites(graph: HourglassGraph) -> List[MoveInstance]:
    structure = graph_service.face_structure(graph)
    sites = []
    for face in structure.internal_faces():
        cycle = structure.faces[face]
        if len(cycle) != 4:
            continue
        corners = [structure.half_vertex[h] for h in cycle]
        if len(set(corners)) != 4 or any(graph.is_boundary(v) for v in corners):
            continue
        if any(graph.multiplicity(structure.edge_of(h)) != 1 for h in cycle):
            continue
        partners = []
        valid = True
        for v in corners:
            if len(graph.incident_edges(v)) == RANK:
                partners.append(-1)
                continue
            pair = _pair_partner(graph, v)
            if pair is None or pair[1] in corners:
                valid = False
                break
            partners.append(pair[1])
        if valid:
            sites.append(MoveInstance(kind=SQUARE, vertices=tuple(corners),
                                      parameter=tuple(structure.edge_of(h) for h in cycle)))
    return sites


def _split_corner(builder: GraphBuilder, v: int, square_edges: set) -> None:
    slots = builder.rotation[v]
    start = next(i for i in range(RANK)
                 if slots[i][0] in square_edges and slots[(i + 1) % RANK][0] in square_edges)
    ordered = slots[start:] + slots[:start]
    squares, outer = ordered[:2], ordered[2:]
    # the corner keeps its outer edges; the new partner takes the square edges
    partner = builder.add_vertex(-builder.colors[v])
    hourglass = builder.add_edge(v, partner, 2)
    for edge, _ in squares:
        builder.reattach(edge, v, partner)
    builder.rotation[v] = outer + [(hourglass, 0), (hourglass, 1)]
    builder.rotation[partner] = squares + [(hourglass, 0), (hourglass, 1)]


def _merge_pair(builder: GraphBuilder, v: int, hourglass: int, partner: int) -> None:
    white, black = (v, partner) if builder.colors[v] == WHITE else (partner, v)
    white_simple = builder.rotated(white, hourglass)[2:]
    black_simple = builder.rotated(black, hourglass)[2:]
    survivor, gone = (black, white) if v == white else (white, black)
    for edge, _ in builder.rotated(gone, hourglass)[2:]:
        builder.reattach(edge, gone, survivor)
    builder.rotation[survivor] = white_simple + black_simple
    builder.remove_edge(hourglass)
    builder.remove_vertex(gone)


def _apply_square(graph: HourglassGraph, move: MoveInstance) -> HourglassGraph:
    builder = GraphBuilder.from_graph(graph)
    square_edges = set(move.parameter)
    plan = []
    for v in move.vertices:
        pair = _pair_partner(graph, v) if len(graph.incident_edges(v)) != RANK else None
        plan.append((v, pair))
    for v, pair in plan:
        if pair is None:
            _split_corner(builder, v, square_edges)
        else:
            _merge_pair(builder, v, pair[0], pair[1])
    return builder.build()


# ----------------------------------------------------------------- contraction sites

def _contraction_sites(graph: HourglassGraph) -> List[MoveInstance]:
    n = graph.n_boundary
    sites = []
    for v in graph.internal_vertices:
        incident = graph.incident_edges(v)
        neighbors = [(e, graph.other_end(e, v)) for e, _ in incident]
        if len(neighbors) == 1:
            edge, w = neighbors[0]
            if w >= n and v < w:
                sites.append(MoveInstance(kind=DUMBBELL, vertices=(v, w), parameter=(edge,)))
            continue
        if len(neighbors) != 2:
            continue
        (ex, x), (ey, y) = neighbors
        if x >= n and y >= n and x != y:
            adjacent = any(graph.other_end(e, x) == y for e, _ in graph.incident_edges(x))
            if not adjacent:
                sites.append(MoveInstance(kind=CONTRACTION, vertices=(v, x, y), parameter=(ex, ey)))
        elif (x < n) != (y < n):
            b, eb, w, ew = (x, ex, y, ey) if x < n else (y, ey, x, ex)
            far = [(e, graph.other_end(e, w)) for e, _ in graph.incident_edges(w)]
            if len(far) != 2 or v > w:
                continue
            eout, b2 = far[1] if far[0][0] == ew else far[0]
            if b2 < n and b2 != b and graph.multiplicity(eout) == graph.multiplicity(eb):
                sites.append(MoveInstance(kind=BOUNDARY_PATH, vertices=(b, v, w, b2), parameter=(eb, ew, eout)))
    return sites


def _uncontraction_sites(graph: HourglassGraph) -> List[MoveInstance]:
    sites = []
    for u in graph.internal_vertices:
        slots = graph.rotation[u]
        for gap in range(RANK):
            if slots[gap][1] != 0:
                continue
            for a in range(1, RANK):
                split = (gap + RANK - a) % RANK
                if slots[split][1] == 0:
                    sites.append(MoveInstance(kind=UNCONTRACTION, vertices=(u,), parameter=(gap, a)))
    return sites


def _apply_contraction(graph: HourglassGraph, move: MoveInstance) -> HourglassGraph:
    builder = GraphBuilder.from_graph(graph)
    if move.kind == DUMBBELL:
        builder.remove_edge(move.parameter[0])
        for v in move.vertices:
            builder.remove_vertex(v)
    elif move.kind == CONTRACTION:
        v, x, y = move.vertices
        graph_service._merge_through(builder, v, move.parameter[0], x, move.parameter[1], y)
    elif move.kind == BOUNDARY_PATH:
        b, v, w, b2 = move.vertices
        m = builder.edges[move.parameter[0]][2]
        for edge in move.parameter:
            builder.remove_edge(edge)
        builder.remove_vertex(v)
        builder.remove_vertex(w)
        new = builder.add_edge(min(b, b2), max(b, b2), m)
        builder.rotation[b] = [(new, k) for k in range(m)]
        builder.rotation[b2] = [(new, k) for k in range(m)]
    else:
        (u,), (gap, a) = move.vertices, move.parameter
        slots = builder.rotation[u]
        ordered = slots[gap:] + slots[:gap]
        first, second = ordered[:RANK - a], ordered[RANK - a:]
        middle = builder.add_vertex(-builder.colors[u])
        twin = builder.add_vertex(builder.colors[u])
        ex = builder.add_edge(u, middle, a)
        ey = builder.add_edge(middle, twin, RANK - a)
        for edge, strand in second:
            if strand == 0:
                builder.reattach(edge, u, twin)
        builder.rotation[u] = [(ex, k) for k in range(a)] + first
        builder.rotation[twin] = [(ey, k) for k in range(RANK - a)] + second
        builder.rotation[middle] = [(ex, k) for k in range(a)] + [(ey, k) for k in range(RANK - a)]
    return builder.build()


# ----------------------------------------------------------------- public API

def find_moves(graph: HourglassGraph, include_contractions: bool = True,
               include_uncontractions: bool = False) -> List[MoveInstance]:
    """
    Every applicable move. Benzene and square sites refer to vertex ids of the
    oscillization when the graph is not oscillating.
    """

    working, _ = _working_copy(graph)
    moves = _benzene_sites(working) + _square_sites(working)
    if include_contractions:
        moves += _contraction_sites(graph)
    if include_uncontractions:
        moves += _uncontraction_sites(graph)
    return moves


def apply_move(graph: HourglassGraph, move: MoveInstance, check_trips: bool = True) -> HourglassGraph:
    if move.kind in SQUARE_MOVE_KINDS:
        working, mapping = _working_copy(graph)
        changed = _apply_benzene(working, move) if move.kind == BENZENE else _apply_square(working, move)
        result = _fold(changed, mapping)
    elif move.kind in (CONTRACTION, DUMBBELL, BOUNDARY_PATH, UNCONTRACTION):
        result = _apply_contraction(graph, move)
    else:
        raise WebValidationError(f'unknown move kind {move.kind}')
    if check_trips and graph_service.trip_perms(result) != graph_service.trip_perms(graph):
        raise MoveGuardError(f'{move.describe()} changed the trip permutations',
                             {'before': graph_service.trip_perms(graph), 'after': graph_service.trip_perms(result)})
    return result


def _neighbors(graph: HourglassGraph, kinds: Sequence[str]) -> List[Tuple[MoveInstance, HourglassGraph]]:
    working, mapping = _working_copy(graph)
    sites = []
    if BENZENE in kinds:
        sites += _benzene_sites(working)
    if SQUARE in kinds:
        sites += _square_sites(working)
    return [(move, apply_move(graph, move)) for move in sites]


def move_class(graph: HourglassGraph, max_nodes: int = None,
               kinds: Sequence[str] = SQUARE_MOVE_KINDS) -> MoveClass:
    """
    Breadth-first exploration of the class of a graph under benzene and square
    moves. Frontiers are expanded in a thread pool; the result is ordered by
    canonical key so it does not depend on scheduling.

    :raises ResourceCapExceeded: when more than max_nodes graphs are reached.
    """

    limit = get_max_nodes(max_nodes)
    root = graph_service.canonical_form(graph)
    members: Dict[str, HourglassGraph] = {graph_service.canonical_key(root): root}
    links = set()
    frontier = [root]
    with ThreadPoolExecutor(max_workers=get_max_workers()) as executor:
        while frontier:
            expanded = list(executor.map(lambda g: _neighbors(g, kinds), frontier))
            next_frontier = []
            for source, results in zip(frontier, expanded):
                source_key = graph_service.canonical_key(source)
                for move, result in results:
                    key = graph_service.canonical_key(result)
                    if key not in members:
                        members[key] = graph_service.canonical_form(result)
                        next_frontier.append(members[key])
                        if len(members) > limit:
                            raise ResourceCapExceeded(f'move class exceeded {limit} graphs', limit,
                                                      {'reached': len(members)})
                    links.add((source_key, key, move.kind, bool(move.clockwise)))
            frontier = sorted(next_frontier, key=graph_service.canonical_key)
    keys = tuple(sorted(members))
    position = {key: i for i, key in enumerate(keys)}
    log_message('Debug', f'move class explored: {len(keys)} graphs, {len(links)} moves')
    return MoveClass(
        members=tuple(members[key] for key in keys),
        keys=keys,
        links=tuple(sorted((position[a], position[b], kind, up) for a, b, kind, up in links)),
    )


def top_element(graph: HourglassGraph, max_nodes: int = None) -> HourglassGraph:
    """
    Applies benzene moves at clockwise benzene faces until none remain. The
    result is the top of the benzene poset of the class.
    """

    limit = get_max_nodes(max_nodes)
    current = graph
    for _ in range(limit):
        working, _ = _working_copy(current)
        upward = sorted((site for site in _benzene_sites(working) if site.clockwise), key=lambda s: s.vertices)
        if not upward:
            return graph_service.canonical_form(current)
        current = apply_move(current, upward[0])
    raise ResourceCapExceeded(f'top element not reached within {limit} benzene moves', limit)


def benzene_faces(graph: HourglassGraph, clockwise: Optional[bool] = None) -> List[MoveInstance]:
    working, _ = _working_copy(graph)
    return [site for site in _benzene_sites(working) if clockwise is None or site.clockwise == clockwise]


# ----------------------------------------------------------------- monotonicity

def _node_map(graph: HourglassGraph) -> Dict[int, int]:
    parent = {v: v for v in graph.internal_vertices}

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v, m in graph.edges:
        if m == 2 and not graph.is_boundary(u) and not graph.is_boundary(v):
            parent[find(u)] = find(v)
    return {v: find(v) for v in parent}


def _node_sequence(path, nodes: Dict[int, int]) -> List[int]:
    sequence = []
    for v in path.internal_vertices:
        node = nodes[v]
        if not sequence or sequence[-1] != node:
            sequence.append(node)
    return sequence


def _contiguous(sequence: Sequence[int], shared: set) -> bool:
    positions = [i for i, node in enumerate(sequence) if node in shared]
    return positions == list(range(positions[0], positions[-1] + 1)) if positions else True


def is_monotonic(graph: HourglassGraph) -> bool:
    """
    Monotonicity of the trips, read on the oscillization with each internal
    2-hourglass pair merged into one node: trip_2 strands never revisit a node
    and pairwise share at most one node, and every trip_1 strand meets every
    trip_2 strand in a run that is consecutive along both.
    """

    osc, _ = _working_copy(graph)
    nodes = _node_map(osc)
    second = [graph_service.walk_strand(osc, i, 2) for i in range(osc.n_boundary)]
    second = [path for path in second if path.start < path.end]
    second_nodes = [_node_sequence(path, nodes) for path in second]
    for sequence in second_nodes:
        if len(sequence) != len(set(sequence)):
            return False
    for i in range(len(second_nodes)):
        for j in range(i + 1, len(second_nodes)):
            if len(set(second_nodes[i]) & set(second_nodes[j])) > 1:
                return False
    first_nodes = [_node_sequence(graph_service.walk_strand(osc, i, 1), nodes) for i in range(osc.n_boundary)]
    for sequence in first_nodes:
        for other in second_nodes:
            shared = set(sequence) & set(other)
            if shared and not (_contiguous(sequence, shared) and _contiguous(other, shared)):
                return False
    return True


def is_fully_reduced(graph: HourglassGraph) -> bool:
    return graph_service.is_contracted(graph) and is_monotonic(graph)
