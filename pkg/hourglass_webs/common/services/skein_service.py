"""
Skein rewriting of tensor diagrams and reduction to the top fully reduced
basis.

A rewrite cuts a small region out of the diagram (one crossing, a closed
component of two vertices, a digon, a contraction triple, a forbidden 4-cycle
or a hexagon face), reads the region as a web of its own whose boundary points
are the cut edges, expands that web in its own basis and glues every basis web
back. Each relation fixes the Laurent form of its coefficients and the q = 1
expansion only supplies their signs:

    crossing = q (arcs) - (H web)
    closed component of multiplicities m_1, ..., m_k = [4]! / ([m_1]! ... [m_k]!)
    digon of an a-edge and a b-edge = qbinom(a + b, a) (one (a + b)-edge)
    forbidden 4-cycle = sum of +-[k]_q (webs with fewer faces)
    hexagon = +-(flipped hexagon) + sum of +-(webs with fewer faces)

A coefficient whose value at q = 1 disagrees with its relation is rejected.
"""

import random
from typing import Dict, List, Optional, Sequence, Tuple

from ..exceptions import HourglassError, ResourceCapExceeded, WebValidationError
from ..model.component.hourglass_graph import CROSSING, HourglassGraph, MoveInstance
from ..model.component.invariant import (LaurentPoly, SkeinCombination, SkeinSite, TaggedWeb, WebExpansion)
from ..model.component.labeling import TagAssignment
from ..model.component.letter import RANK
from ..utilities import get_max_nodes, log_message
from . import graph_service, invariant_service, labeling_service, move_service
from .graph_service import GraphBuilder
from .invariant_service import as_tagged, is_basis_web

UNCROSS = 'uncross'
CLOSED = 'closed'
DIGON = 'digon'
CONTRACTION = 'contraction'
FOUR_CYCLE = 'four_cycle'
BENZENE = 'benzene'

PRIORITY = (UNCROSS, CLOSED, DIGON, CONTRACTION, FOUR_CYCLE, BENZENE)

_FACE_KINDS = {2: DIGON, 4: FOUR_CYCLE, 6: BENZENE}

Term = Tuple[LaurentPoly, TaggedWeb]

EMPTY_WEB = TaggedWeb(graph=HourglassGraph(), tags=TagAssignment())


# ----------------------------------------------------------------- sites

def _closed_components(graph: HourglassGraph) -> List[Tuple[int, ...]]:
    seen, components = set(range(graph.n_boundary)), []
    for b in range(graph.n_boundary):
        stack = [b]
        while stack:
            v = stack.pop()
            for edge, _ in graph.rotation[v]:
                w = graph.other_end(edge, v)
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    for root in graph.internal_vertices:
        if root in seen:
            continue
        component, stack = [root], [root]
        seen.add(root)
        while stack:
            v = stack.pop()
            for edge, _ in graph.rotation[v]:
                w = graph.other_end(edge, v)
                if w not in seen:
                    seen.add(w)
                    component.append(w)
                    stack.append(w)
        components.append(tuple(sorted(component)))
    return components


def find_sites(web) -> List[SkeinSite]:
    """
    Candidate regions in rewrite priority order, each kind sorted by its
    vertices. Closed components count only when they have two vertices, and
    4-cycles only when they carry an hourglass.
    """

    graph = web if isinstance(web, HourglassGraph) else as_tagged(web).graph
    found: Dict[str, set] = {kind: set() for kind in PRIORITY}
    for v in graph.crossings:
        found[UNCROSS].add((v,))
    for component in _closed_components(graph):
        if len(component) == 2 and all(graph.colors[v] != CROSSING for v in component):
            found[CLOSED].add(component)
    plain = [v for v in graph.internal_vertices if graph.colors[v] != CROSSING]
    for v in plain:
        neighbors = [graph.other_end(e, v) for e, _ in graph.incident_edges(v)]
        if len(neighbors) == 2 and len(set(neighbors)) == 2 and all(
                not graph.is_boundary(x) and graph.colors[x] != CROSSING for x in neighbors):
            found[CONTRACTION].add(tuple(sorted(neighbors + [v])))
    structure = graph_service.face_structure(graph)
    for face in structure.internal_faces():
        vertices = structure.face_vertices(face)
        kind = _FACE_KINDS.get(len(vertices))
        if kind is None or len(set(vertices)) != len(vertices):
            continue
        if kind == FOUR_CYCLE and all(graph.multiplicity(structure.edge_of(h)) == 1 for h in structure.faces[face]):
            continue
        if all(not graph.is_boundary(v) and graph.colors[v] != CROSSING for v in vertices):
            found[kind].add(tuple(sorted(vertices)))
    return [SkeinSite(kind=kind, vertices=vertices) for kind in PRIORITY for vertices in sorted(found[kind])]


# ----------------------------------------------------------------- cutting and gluing

def _cut_edges(graph: HourglassGraph, region: Sequence[int]) -> Optional[List[Tuple[int, int, int]]]:
    """
    Edges leaving the region, as (edge, inside end, outside end), in clockwise
    order around the region; None when the region is not a disk.
    """

    inside = set(region)
    rings = {v: [e for e, _ in graph.incident_edges(v)] for v in region}
    expected = {(v, e) for v in region for e in rings[v] if graph.other_end(e, v) not in inside}
    if not expected:
        return []
    v, e = min(expected)
    index = rings[v].index(e)
    start = (v, index)
    cuts, visited = [], set()
    for _ in range(4 * sum(len(r) for r in rings.values()) + 1):
        e = rings[v][index]
        w = graph.other_end(e, v)
        if w in inside:
            v, index = w, (rings[w].index(e) + 1) % len(rings[w])
        else:
            if (v, e) in visited:
                return None
            visited.add((v, e))
            cuts.append((e, v, w))
            index = (index + 1) % len(rings[v])
        if (v, index) == start:
            return cuts if visited == expected else None
    return None


def _far_color(graph: HourglassGraph, edge: int, vertex: int) -> int:
    """Color of the first non-crossing vertex reached from vertex along the strand of edge."""

    for _ in range(graph.vertex_count + 1):
        if graph.colors[vertex] != CROSSING:
            return graph.colors[vertex]
        ring = [e for e, _ in graph.rotation[vertex]]
        edge = ring[(ring.index(edge) + 2) % RANK]
        vertex = graph.other_end(edge, vertex)
    raise WebValidationError('strand closes up through crossings only', {'edge': edge})


def local_web(web: TaggedWeb, region: Sequence[int], cuts: Sequence[Tuple[int, int, int]]) -> TaggedWeb:
    """The region as a web whose boundary vertex j sits on the j-th cut edge."""

    graph = web.graph
    inside = set(region)
    k = len(cuts)
    vertex_of = {v: k + i for i, v in enumerate(sorted(region))}
    edges, edge_of = [], {}
    for j, (e, u, _) in enumerate(cuts):
        edge_of[e] = j
        edges.append((j, vertex_of[u], graph.multiplicity(e)))
    for e, (u, v, m) in enumerate(graph.edges):
        if u in inside and v in inside:
            edge_of[e] = len(edges)
            edges.append((vertex_of[u], vertex_of[v], m))
    colors = [_far_color(graph, e, x) for e, _, x in cuts] + [graph.colors[v] for v in sorted(region)]
    rotation = [tuple((j, s) for s in range(graph.multiplicity(e))) for j, (e, _, _) in enumerate(cuts)]
    rotation += [tuple((edge_of[e], s) for e, s in graph.rotation[v]) for v in sorted(region)]
    tags = [None] * k + [web.tags.slot(v) for v in sorted(region)]
    local = HourglassGraph(n_boundary=k, colors=tuple(colors), edges=tuple(edges), rotation=tuple(rotation))
    graph_service.require_valid(local, allow_crossings=True)
    return TaggedWeb(graph=local, tags=TagAssignment(slots=tuple(tags)))


def glue(web: TaggedWeb, region: Sequence[int], cuts: Sequence[Tuple[int, int, int]],
         replacement: TaggedWeb) -> Optional[TaggedWeb]:
    """
    Replaces the region by a web whose boundary matches its cut edges. Returns
    None when the result has a loop edge at a vertex, whose invariant vanishes.
    """

    graph = web.graph
    inside = set(region)
    builder = GraphBuilder.from_graph(graph)
    tags = {v: web.tags.slot(v) for v in range(graph.vertex_count)}
    for e, (u, v, _) in enumerate(graph.edges):
        if u in inside or v in inside:
            builder.remove_edge(e)
    for v in region:
        builder.remove_vertex(v)
        del tags[v]
    local = replacement.graph
    vertex_of = {}
    for y in local.internal_vertices:
        vertex_of[y] = builder.add_vertex(local.colors[y])
        tags[vertex_of[y]] = replacement.tags.slot(y)
    edge_of = {}
    for f, (a, b, m) in enumerate(local.edges):
        ends = [cuts[end][2] if local.is_boundary(end) else vertex_of[end] for end in (a, b)]
        if ends[0] == ends[1]:
            if graph.colors[ends[0]] == CROSSING:
                raise WebValidationError('gluing closes a strand through a crossing', {'vertex': ends[0]})
            return None
        edge_of[f] = builder.add_edge(ends[0], ends[1], m)
    for j, (e, _, x) in enumerate(cuts):
        new = edge_of[local.boundary_edge(j)]
        builder.rotation[x] = [(new, s) if edge == e else (edge, s) for edge, s in builder.rotation[x]]
    for y, v in vertex_of.items():
        builder.rotation[v] = [(edge_of[f], s) for f, s in local.rotation[y]]
    order = list(range(graph.n_boundary)) + sorted(v for v in builder.colors if v >= graph.n_boundary)
    return TaggedWeb(graph=builder.build(), tags=TagAssignment(slots=tuple(tags[v] for v in order)))


# ----------------------------------------------------------------- relation coefficients

def closed_value(multiplicities: Sequence[int]) -> LaurentPoly:
    """
    Value of two vertices joined only by edges of the given multiplicities:
    the quantum multinomial [4]! / ([m_1]! ... [m_k]!). A loop of an m-strand
    is the case (m, 4 - m), worth qbinom(4, m).
    """

    value, total = LaurentPoly.constant(1), 0
    for m in multiplicities:
        total += m
        value = value * invariant_service.qbinom(total, m)
    return value


def digon_value(a: int, b: int) -> LaurentPoly:
    """A digon of an a-edge and a b-edge is one (a + b)-edge times qbinom(a + b, a)."""
    return invariant_service.qbinom(a + b, a)


def _signed(value: int, magnitude: LaurentPoly, relation: str) -> LaurentPoly:
    """The relation's coefficient carrying the sign found at q = 1, which must match it there."""

    if abs(value) != magnitude.at_one():
        raise WebValidationError(f'{relation} coefficient does not match the relation',
                                 {'coefficient': value, 'expected': magnitude.at_one()})
    return magnitude if value > 0 else -magnitude


def _parallel_multiplicities(graph: HourglassGraph) -> List[int]:
    return sorted(m for u, v, m in graph.edges if not graph.is_boundary(u) and not graph.is_boundary(v))


def _coefficient(kind: str, value: int, local: TaggedWeb, replacement: TaggedWeb) -> LaurentPoly:
    if kind == UNCROSS:
        # crossing = q (arcs) - (H web), signs set by the tags
        unit = _signed(value, LaurentPoly.constant(1), 'uncrossing')
        arcs_only = replacement.graph.vertex_count == replacement.graph.n_boundary
        return unit * LaurentPoly.monomial(1) if arcs_only else unit
    if kind == DIGON:
        parallel = _parallel_multiplicities(local.graph)
        if len(parallel) != 2:
            raise WebValidationError('digon region is not two parallel edges', {'edges': parallel})
        return _signed(value, digon_value(*parallel), 'digon')
    if kind == FOUR_CYCLE:
        return _signed(value, invariant_service.quantum_integer(abs(value)), 'forbidden 4-cycle')
    return _signed(value, LaurentPoly.constant(1), kind)


# ----------------------------------------------------------------- rewriting

def _expansion_terms(web: TaggedWeb, site: SkeinSite, cuts, local: TaggedWeb) -> List[Term]:
    polynomial = invariant_service.evaluate_q1(local)
    terms = []
    for value, replacement in invariant_service.project_q1(polynomial, local.graph.type_vector):
        coefficient = _coefficient(site.kind, value, local, replacement)
        glued = glue(web, site.vertices, cuts, replacement)
        if glued is not None:
            terms.append((coefficient, glued))
    return terms


def _flip_terms(web: TaggedWeb, region: Sequence[int], cuts, local: TaggedWeb) -> List[Term]:
    """
    The benzene relation at a hexagon: the web equals its flip, signed so the
    shared leading terms agree, plus webs with fewer faces whose coefficients
    are units.
    """

    faces = move_service.benzene_faces(local.graph)
    if len(faces) != 1:
        raise WebValidationError('region is not a single benzene face', {'vertices': list(region)})
    flipped_graph = move_service.apply_move(local.graph, faces[0], check_trips=False)
    flipped = TaggedWeb(graph=flipped_graph, tags=labeling_service.default_tags(flipped_graph))
    word, lead = invariant_service.leading_term(local)
    flipped_word, flipped_lead = invariant_service.leading_term(flipped)
    if word != flipped_word or abs(lead) != 1 or abs(flipped_lead) != 1:
        raise WebValidationError('benzene flip does not keep the leading term',
                                 {'before': str(word), 'after': str(flipped_word)})
    sign = lead * flipped_lead
    remainder = invariant_service.evaluate_q1(local) + invariant_service.evaluate_q1(flipped) * -sign
    terms = [(LaurentPoly.constant(sign), glue(web, region, cuts, flipped))]
    for value, replacement in invariant_service.project_q1(remainder, local.graph.type_vector):
        coefficient = _signed(value, LaurentPoly.constant(1), BENZENE)
        glued = glue(web, region, cuts, replacement)
        if glued is not None:
            terms.append((coefficient, glued))
    return terms


def rewrite_site(web, site: SkeinSite) -> Optional[List[Term]]:
    """
    The combination replacing one site, or None when the site does not
    simplify (its region is already a basis web, or it cannot be cut out).
    """

    web = as_tagged(web)
    cuts = _cut_edges(web.graph, site.vertices)
    if cuts is None:
        return None
    try:
        local = local_web(web, site.vertices, cuts)
        if site.kind == CLOSED:
            scalar = invariant_service.evaluate_q1(local).coefficient(())
            value = _signed(scalar, closed_value(_parallel_multiplicities(local.graph)), 'closed component')
            return [(value, glue(web, site.vertices, cuts, EMPTY_WEB))]
        if site.kind != UNCROSS and is_basis_web(local.graph):
            return None
        if site.kind == BENZENE:
            return _flip_terms(web, site.vertices, cuts, local)
        return _expansion_terms(web, site, cuts, local)
    except HourglassError as e:
        log_message('Debug', f'skein site {site.kind} {list(site.vertices)} skipped: {e}')
        return None


def _first_rewrite(web: TaggedWeb, kinds: Sequence[str], rng: Optional[random.Random]) -> Optional[SkeinCombination]:
    sites = [site for site in find_sites(web) if site.kind in kinds]
    for kind in kinds:
        candidates = [site for site in sites if site.kind == kind]
        if rng is not None:
            rng.shuffle(candidates)
        for site in candidates:
            terms = rewrite_site(web, site)
            if terms is not None:
                return SkeinCombination(terms=tuple(terms), site=site)
    return None


def skein_step(diagram, seed: int = None) -> SkeinCombination:
    """
    One rewrite at the first site, in priority order, that simplifies.

    :raises WebValidationError: when no site simplifies.
    """

    web = as_tagged(diagram)
    combination = _first_rewrite(web, PRIORITY, random.Random(seed) if seed is not None else None)
    if combination is None:
        raise WebValidationError('no skein relation applies to this diagram')
    return combination


# ----------------------------------------------------------------- benzene flips

def _hexagon(graph: HourglassGraph, move: MoveInstance) -> Tuple[int, ...]:
    """Vertices of a benzene face found on the oscillization, in the graph's own numbering."""

    offset = sum(abs(c) for c in graph.type_vector) - graph.n_boundary
    return tuple(v - offset for v in move.vertices)


def _reducible(graph: HourglassGraph) -> bool:
    return any(site.kind in (CLOSED, DIGON, CONTRACTION, FOUR_CYCLE) for site in find_sites(graph))


def _exposing_hexagon(graph: HourglassGraph, limit: int) -> Tuple[int, ...]:
    """
    The face of the first move in a shortest run of benzene moves that exposes
    a closed component, a digon, a forbidden 4-cycle or a contractible vertex.

    :raises WebValidationError: when no run of benzene moves does.
    :raises ResourceCapExceeded: when the search reaches more than limit graphs.
    """

    seen = {graph_service.canonical_key(graph)}
    frontier: List[Tuple[HourglassGraph, Optional[Tuple[int, ...]]]] = [(graph, None)]
    while frontier:
        next_frontier = []
        for current, first in frontier:
            for move in move_service.benzene_faces(current):
                result = move_service.apply_move(current, move, check_trips=False)
                key = graph_service.canonical_key(result)
                if key in seen:
                    continue
                seen.add(key)
                origin = first if first is not None else _hexagon(graph, move)
                if _reducible(result):
                    return origin
                if len(seen) > limit:
                    raise ResourceCapExceeded(f'benzene search exceeded {limit} graphs', limit)
                next_frontier.append((result, origin))
        log_message('Debug', f'benzene search: {len(seen)} graphs seen, {len(next_frontier)} in the next level')
        frontier = next_frontier
    raise WebValidationError('no relation simplifies this web', {'vertices': graph.vertex_count})


def _flip_at(web: TaggedWeb, hexagon: Sequence[int]) -> List[Term]:
    cuts = _cut_edges(web.graph, hexagon)
    if cuts is None:
        raise WebValidationError('benzene face does not bound a disk', {'vertices': list(hexagon)})
    return _flip_terms(web, hexagon, cuts, local_web(web, hexagon, cuts))


# ----------------------------------------------------------------- reduction

def _is_fully_reduced(graph: HourglassGraph) -> bool:
    if graph.crossings or not graph_service.validate(graph).ok:
        return False
    try:
        return move_service.is_fully_reduced(graph)
    except HourglassError:
        return False


def _reduction_terms(web: TaggedWeb, rng: Optional[random.Random], limit: int) -> Optional[List[Term]]:
    """
    One relation toward the basis, or None for a top fully reduced web. A
    fully reduced web flips a clockwise benzene face toward the top; any other
    web flips the face that starts the shortest run of benzene moves exposing
    a site the other relations reduce.
    """

    combination = _first_rewrite(web, (UNCROSS, CLOSED), rng)
    if combination is None and is_basis_web(web.graph):
        return None
    if combination is None:
        combination = _first_rewrite(web, (DIGON, CONTRACTION, FOUR_CYCLE), rng)
    if combination is not None:
        return list(combination.terms)
    if _is_fully_reduced(web.graph):
        upward = sorted(move_service.benzene_faces(web.graph, clockwise=True), key=lambda s: s.vertices)
        if not upward:
            return None
        face = rng.choice(upward) if rng is not None else upward[0]
        return _flip_at(web, _hexagon(web.graph, face))
    return _flip_at(web, _exposing_hexagon(web.graph, limit))


def reduce_to_basis(diagram, max_nodes: int = None, seed: int = None) -> WebExpansion:
    """
    Rewrites until every term is a top fully reduced web: uncrossings and
    closed components first, then digons, contractions and forbidden 4-cycles,
    then benzene flips. A seed randomizes the order terms and sites are taken in.

    :raises ResourceCapExceeded: when more than max_nodes terms are processed.
    """

    limit = get_max_nodes(max_nodes)
    rng = random.Random(seed) if seed is not None else None
    pending: List[Term] = [(LaurentPoly.constant(1), as_tagged(diagram))]
    totals: Dict[str, LaurentPoly] = {}
    graphs: Dict[str, HourglassGraph] = {}
    processed = 0
    log_message('Info', f'reduction started: {len(as_tagged(diagram).graph.crossings)} crossings')
    while pending:
        coefficient, web = pending.pop(rng.randrange(len(pending)) if rng is not None else -1)
        processed += 1
        if processed > limit:
            raise ResourceCapExceeded(f'skein reduction exceeded {limit} terms', limit)
        terms = _reduction_terms(web, rng, limit)
        if terms is None:
            key, canonical, sign = invariant_service.basis_key(web)
            totals[key] = totals.get(key, LaurentPoly()) + coefficient * sign
            graphs[key] = canonical
            continue
        pending.extend((coefficient * c, term) for c, term in terms)
    keys = sorted(key for key, poly in totals.items() if not poly.is_zero())
    log_message('Info', f'reduction finished: {processed} terms processed, {len(keys)} basis webs')
    return WebExpansion(terms=tuple((key, totals[key]) for key in keys), graphs=tuple(graphs[key] for key in keys))
