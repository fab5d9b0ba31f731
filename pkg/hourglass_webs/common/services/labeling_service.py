"""
Proper labelings of hourglass plabic graphs, the separation labeling and its
boundary word, the map to fluctuating tableaux, vertex tags and coinversion
signs.
"""

from functools import reduce
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ..exceptions import ResourceCapExceeded, WebValidationError
from ..model.component.hourglass_graph import BLACK, CROSSING, WHITE, HourglassGraph
from ..model.component.labeling import ProperLabeling, TagAssignment, mask_elements
from ..model.component.letter import RANK, LatticeWord, Letter
from ..model.component.tableau import FluctuatingTableau
from ..utilities import get_max_nodes
from . import graph_service, move_service, tableau_service

FULL = (1 << RANK) - 1

_SUBSETS = {m: [mask for mask in range(1, FULL + 1) if bin(mask).count('1') == m] for m in range(1, RANK + 1)}


# ----------------------------------------------------------------- proper labelings

def _opposite_edges(graph: HourglassGraph) -> Dict[Tuple[int, int], int]:
    """(crossing, edge) -> edge straight across."""

    opposite = {}
    for v in graph.crossings:
        ring = [e for e, _ in graph.rotation[v]]
        for slot, e in enumerate(ring):
            opposite[(v, e)] = ring[(slot + 2) % RANK]
    return opposite


def is_proper(graph: HourglassGraph, labeling: ProperLabeling) -> bool:
    masks = labeling.masks
    if len(masks) != len(graph.edges):
        return False
    for e, (_, _, m) in enumerate(graph.edges):
        if bin(masks[e]).count('1') != m or not 0 < masks[e] <= FULL:
            return False
    opposite = _opposite_edges(graph)
    for v in graph.internal_vertices:
        edges = [e for e, _ in graph.incident_edges(v)]
        if graph.colors[v] == CROSSING:
            if any(masks[e] != masks[opposite[(v, e)]] for e in edges):
                return False
            continue
        union, total = 0, 0
        for e in edges:
            union |= masks[e]
            total += bin(masks[e]).count('1')
        if union != FULL or total != RANK:
            return False
    return True


def proper_masks(graph: HourglassGraph, max_nodes: int = None) -> Iterator[Tuple[int, ...]]:
    """
    Backtracking over edges in id order, label subsets in increasing bitmask
    order. Yields raw bitmask tuples.

    :raises ResourceCapExceeded: when more than max_nodes partial labelings are visited.
    """

    limit = get_max_nodes(max_nodes)
    edge_count = len(graph.edges)
    constrained = [[v for v in (u, w) if not graph.is_boundary(v)] for u, w, _ in graph.edges]
    remaining = {v: len(graph.incident_edges(v)) for v in graph.internal_vertices}
    used = {v: 0 for v in graph.internal_vertices}
    opposite = _opposite_edges(graph)
    is_crossing = {v: graph.colors[v] == CROSSING for v in graph.internal_vertices}
    masks: List[int] = [0] * edge_count
    visited = [0]

    def fits(e: int, mask: int) -> bool:
        for v in constrained[e]:
            if is_crossing[v]:
                other = opposite[(v, e)]
                if masks[other] and masks[other] != mask:
                    return False
            elif used[v] & mask or (remaining[v] == 1 and used[v] | mask != FULL):
                return False
        return True

    def extend(e: int) -> Iterator[Tuple[int, ...]]:
        if e == edge_count:
            yield tuple(masks)
            return
        for mask in _SUBSETS[graph.edges[e][2]]:
            if not fits(e, mask):
                continue
            visited[0] += 1
            if visited[0] > limit:
                raise ResourceCapExceeded(f'labeling enumeration exceeded {limit} nodes', limit)
            masks[e] = mask
            for v in constrained[e]:
                used[v] |= mask
                remaining[v] -= 1
            yield from extend(e + 1)
            for v in constrained[e]:
                used[v] &= ~mask
                remaining[v] += 1
            masks[e] = 0

    if any(u == w for u, w, _ in graph.edges):
        return
    yield from extend(0)


def enumerate_proper_labelings(graph: HourglassGraph, max_nodes: int = None) -> Iterator[ProperLabeling]:
    graph_service.require_valid(graph, allow_crossings=True)
    for masks in proper_masks(graph, max_nodes):
        yield ProperLabeling(masks=masks)


def boundary_codes(graph: HourglassGraph, masks: Sequence[int]) -> Tuple[int, ...]:
    """Signed boundary label per boundary vertex: the label mask, negated at white vertices."""
    return tuple(graph.colors[b] * masks[graph.boundary_edge(b)] for b in range(graph.n_boundary))


def boundary_word(graph: HourglassGraph, labeling: ProperLabeling) -> LatticeWord:
    return LatticeWord(letters=tuple(Letter(mask=labeling.masks[graph.boundary_edge(b)], sign=graph.colors[b])
                                     for b in range(graph.n_boundary)))


# ----------------------------------------------------------------- separation labeling

def _separation_masks(osc: HourglassGraph) -> List[int]:
    structure = graph_service.face_structure(osc)
    paths = [graph_service.walk_strand(osc, i, a) for a in range(1, RANK) for i in range(osc.n_boundary)]
    sides = graph_service.side_masks(osc, paths)
    carriers: Dict[int, List[int]] = {}
    for bit, path in enumerate(paths):
        for edge, tail, head in path.hops:
            if osc.multiplicity(edge) == 1 and osc.colors[tail] == BLACK and osc.colors[head] == WHITE:
                carriers.setdefault(edge, []).append(bit)
    masks: List[Optional[int]] = [None] * len(osc.edges)
    for e, (u, v, m) in enumerate(osc.edges):
        if m != 1:
            continue
        white = v if osc.colors[v] == WHITE else u
        bits = carriers.get(e, [])
        if len(bits) != RANK - 1:
            raise WebValidationError('simple edge is not carried by one strand of each trip', {'edge': e})
        face_mask = sides.get(structure.face_before(white, e), 0)
        masks[e] = 1 << sum(1 for bit in bits if face_mask >> bit & 1)
    changed = True
    while changed:
        changed = False
        for e, (u, v, m) in enumerate(osc.edges):
            if m == 1:
                continue
            for end in (u, v):
                if osc.is_boundary(end):
                    continue
                others = [f for f, _ in osc.incident_edges(end) if f != e]
                if any(masks[f] is None for f in others):
                    continue
                value = FULL ^ reduce(lambda x, y: x | y, (masks[f] for f in others), 0)
                if masks[e] is None:
                    masks[e] = value
                    changed = True
                elif masks[e] != value:
                    raise WebValidationError('hourglass label differs between its endpoints', {'edge': e})
    if any(mask is None for mask in masks):
        raise WebValidationError('separation labeling left an hourglass unlabeled')
    return masks


def separation_labeling(graph: HourglassGraph) -> ProperLabeling:
    """
    Labels a simple edge e by 1 + (number of trip strands through e, black to
    white, that separate the face on its right from the base face); hourglass
    labels complete the partition at their endpoints. General types are
    labeled through the oscillization, boundary hourglasses taking the union of
    their claw labels.

    :raises WebValidationError: when the graph is not contracted and fully reduced.
    """

    graph_service.require_valid(graph)
    if not move_service.is_fully_reduced(graph):
        raise WebValidationError('separation labeling needs a contracted fully reduced graph')
    if graph.is_oscillating:
        labeling = ProperLabeling(masks=tuple(_separation_masks(graph)))
    else:
        osc, mapping = graph_service.oscillize(graph)
        osc_masks = _separation_masks(osc)
        masks = [0] * len(graph.edges)
        for new_edge, origin in enumerate(mapping.edge_origin):
            u, v, _ = graph.edges[origin]
            ends = [x for x in (u, v) if graph.is_boundary(x)]
            if not ends:
                masks[origin] = osc_masks[new_edge]
                continue
            touching = [x for x in osc.edges[new_edge][:2] if osc.is_boundary(x)]
            if touching and mapping.boundary_origin[touching[0]][0] == min(ends):
                masks[origin] |= osc_masks[new_edge]
        labeling = ProperLabeling(masks=tuple(masks))
    if not is_proper(graph, labeling):
        raise WebValidationError('separation labeling is not proper')
    return labeling


def sep_word(graph: HourglassGraph) -> LatticeWord:
    return boundary_word(graph, separation_labeling(graph))


def boundary_sep_from_trips(graph: HourglassGraph) -> LatticeWord:
    """Boundary letters predicted by the antiexcedances of the trip permutations."""

    osc, mapping = (graph, None) if graph.is_oscillating else graph_service.oscillize(graph)
    labels = graph_service.boundary_labels_from_trips(osc)
    if mapping is None:
        return LatticeWord(letters=tuple(Letter.from_elements([graph.colors[b] * labels[b]])
                                         for b in range(graph.n_boundary)))
    letters = []
    for origin, claw in sorted(mapping.claws().items()):
        letters.append(Letter.from_elements([graph.colors[origin] * labels[b] for b in claw]))
    return LatticeWord(letters=tuple(letters))


def tableau_of(graph: HourglassGraph) -> FluctuatingTableau:
    return tableau_service.tableau_from_word(sep_word(graph))


# ----------------------------------------------------------------- tags and signs

def _osc_vertex_ids(graph: HourglassGraph, mapping) -> Dict[int, int]:
    if mapping is None:
        return {v: v for v in graph.internal_vertices}
    return {origin: v for v, origin in enumerate(mapping.vertex_origin) if origin >= 0}


def default_tags(graph: HourglassGraph) -> TagAssignment:
    """
    Tags for webs read off a fully reduced graph. A vertex with a 2-hourglass
    and two simple edges is tagged between the simple edges. Any other vertex is
    tagged at the gap that lies on the base-face side of the most trip_2
    strands through it (lowest slot on ties).
    """

    slots: List[Optional[int]] = [None] * graph.vertex_count
    internal = [v for v in graph.internal_vertices if graph.colors[v] != CROSSING]
    if not internal:
        return TagAssignment(slots=tuple(slots))
    osc, mapping = (graph, None) if graph.is_oscillating else graph_service.oscillize(graph)
    osc_id = _osc_vertex_ids(graph, mapping)
    structure = graph_service.face_structure(osc)
    second = [path for path in (graph_service.walk_strand(osc, i, 2) for i in range(osc.n_boundary))
              if path.start < path.end]
    sides = graph_service.side_masks(osc, second)
    for v in internal:
        edges = graph.incident_edges(v)
        multiplicities = [graph.multiplicity(e) for e, _ in edges]
        if len(edges) == 1:
            slots[v] = edges[0][1]
            continue
        if sorted(multiplicities) == [1, 1, 2]:
            for i, (_, slot) in enumerate(edges):
                if multiplicities[i] == 1 and multiplicities[i - 1] == 1:
                    slots[v] = slot
            continue
        ov = osc_id[v]
        through = [bit for bit, path in enumerate(second) if ov in path.internal_vertices]

        def score(slot: int) -> Tuple[int, int]:
            face = structure.face_before(ov, osc.rotation[ov][slot][0])
            face_mask = sides.get(face, 0)
            return sum(1 for bit in through if not face_mask >> bit & 1), -slot

        slots[v] = max((slot for _, slot in edges), key=score)
    return TagAssignment(slots=tuple(slots))


def coinversion_number(blocks: Sequence[int]) -> int:
    """#{(a, b) : a in S_i, b in S_j, a <= b, i < j} for label masks S_1..S_m."""

    total = 0
    for i, first in enumerate(blocks):
        for second in blocks[i + 1:]:
            total += sum(1 for a in mask_elements(first) for b in mask_elements(second) if a <= b)
    return total


def tag_blocks(graph: HourglassGraph, tags: TagAssignment) -> Dict[int, List[int]]:
    """Edges around every tagged vertex, clockwise from its tag."""

    blocks = {}
    for v in graph.internal_vertices:
        start = tags.slot(v)
        if start is None:
            continue
        ring = graph.rotation[v]
        ordered = [ring[(start + k) % len(ring)] for k in range(len(ring))]
        blocks[v] = [e for e, strand in ordered if strand == 0]
    return blocks


def coinversion_and_sign(graph: HourglassGraph, labeling: ProperLabeling,
                         tags: TagAssignment = None) -> Tuple[int, int]:
    tags = tags or default_tags(graph)
    total = sum(coinversion_number([labeling.masks[e] for e in edges])
                for edges in tag_blocks(graph, tags).values())
    return total, -1 if total % 2 else 1


def tag_move_sign(multiplicity: int) -> int:
    """Sign picked up when a tag moves across an edge of the given multiplicity."""
    return -1 if multiplicity * (RANK - multiplicity) % 2 else 1
