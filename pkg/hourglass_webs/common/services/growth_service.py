"""
Growth: builds a contracted fully reduced hourglass plabic graph from a
balanced lattice word.

The oscillized word labels a row of dangling strands, oriented down for
unbarred letters and up for barred ones. Rules cross two adjacent strands in
an X vertex (relabeling them below) or join them with an end cap, until no
strand is left. The diagram is a symmetrized six-vertex configuration; its
phi_inverse, with the claws of each letter merged back into hourglasses, is
the output graph. The labels carried by the strands give the growth labeling.

The rule table is written out per family: one representative rule with its
witness letters, closed under the involutions tau, epsilon and varpi. Short
rules read one witness next to the crossing; long rules let a run of letters
sit between the crossing and the terminal witness. Rules are applied in
(position, table index) order with no lookahead and no backtracking.
"""

import random
from functools import lru_cache
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ..exceptions import HourglassError, ResourceCapExceeded
from ..model.component.growth import LEFT, RIGHT, GrowthResult, GrowthRule, GrowthStep, GrowthTrace
from ..model.component.hourglass_graph import HourglassGraph, OscillizationMap
from ..model.component.labeling import ProperLabeling
from ..model.component.letter import RANK, LatticeWord
from ..model.component.six_vertex import SINK, SOURCE, TRANSMIT, SixVertexConfig
from ..utilities import get_max_nodes, log_message
from . import graph_service, labeling_service, move_service, six_vertex_service, word_service
from .graph_service import GraphBuilder
from .word_service import Involution, tilde, tlex_key

FULL = (1 << RANK) - 1

# X labelings that satisfy the ordering conditions but never occur in growth:
# the two that start with an end-cap pair and the degenerate swaps.
EXCLUDED = frozenset([
    ((1, -1), (-2, 2)), ((-4, 4), (3, -3)),
    ((1, -4), (-4, 1)), ((4, -1), (-1, 4)), ((-1, 4), (4, -1)), ((-4, 1), (1, -4)),
    ((1, 4), (-2, -3)), ((-4, -1), (3, 2)),
])

# One representative per family: (name, top, bottom, right witnesses). Each
# witness letter is a separate rule; the involutions supply the rest of the
# family, including every rule that reads its witness on the left.
SHORT_FAMILIES = (
    ('end cap', (1, -1), (), ()),
    ('mixed swap', (1, -2), (-2, 1), ()),
    ('mixed exchange', (2, -2), (-1, 1), ()),
    ('adjacent swap', (1, 2), (2, 1), (2, -1)),
    ('gap swap', (1, 3), (3, 1), (2, 3, -1)),
    ('outer swap', (1, 4), (4, 1), (2, 3, 4, -1)),
    ('adjacent sink', (1, 2), (-3, -4), (-3, 4)),
    ('gap sink', (1, 3), (-2, -4), (-3, -2, 4)),
    ('inner sink', (2, 3), (-1, -4), (-3, -2, -1, 4)),
    ('witnessed exchange', (-4, 2), (2, -4), (4,)),
)

# (name, top, bottom, run letters, terminal witnesses), read to the right of the crossing.
LONG_FAMILIES = (
    ('outer swap', (1, 4), (4, 1), (-3, -2), (2, 3, 4, -1)),
    ('inner sink', (2, 3), (-1, -4), (2, 3), (-3, -2, -1, 4)),
)


# ----------------------------------------------------------------- X vertices

def x_vertex(top: Tuple[int, int], bottom: Tuple[int, int]) -> Optional[Tuple[str, Optional[int]]]:
    """
    Vertex type of an X whose slots, clockwise, are [top-left, top-right,
    bottom-right, bottom-left]: (sink/source/transmit, slot of the first of the
    two adjacent in-edges), or None for an orientation no vertex allows.
    """

    a, b = top
    c, d = bottom
    ins = (a > 0, b > 0, d < 0, c < 0)
    count = sum(ins)
    if count == RANK:
        return SINK, None
    if count == 0:
        return SOURCE, None
    if count == 2:
        for slot in range(RANK):
            if ins[slot] and ins[(slot + 1) % RANK]:
                return TRANSMIT, slot
    return None


def _x_proper(top: Tuple[int, int], bottom: Tuple[int, int]) -> bool:
    shape = x_vertex(top, bottom)
    if shape is None:
        return False
    kind, axis = shape
    labels = (abs(top[0]), abs(top[1]), abs(bottom[1]), abs(bottom[0]))
    if kind != TRANSMIT:
        return len(set(labels)) == RANK
    ins = {labels[axis], labels[(axis + 1) % RANK]}
    outs = [labels[(axis + 2) % RANK], labels[(axis + 3) % RANK]]
    return len(ins) == 2 and len(set(outs)) == 2 and set(outs) == ins


@lru_cache(maxsize=1)
def _proper_x_labelings() -> Tuple[Tuple[Tuple[int, int], Tuple[int, int]], ...]:
    values = [v for v in range(-RANK, RANK + 1) if v]
    return tuple(((a, b), (c, d)) for a, b, c, d in product(values, repeat=RANK) if _x_proper((a, b), (c, d)))


def _signs(values: Sequence[int]) -> Tuple[bool, ...]:
    return tuple(v > 0 for v in values)


def _is_nice(top, bottom, proper) -> bool:
    key_top, key_bottom = tlex_key(top), tlex_key(bottom)
    tildes = {tilde(v) for v in top + bottom}
    if len(tildes) != 1 and not (tilde(top[0]) < tilde(bottom[0]) and key_bottom > key_top):
        return False
    same = [(p, q) for p, q in proper if _signs(p) == _signs(top) and _signs(q) == _signs(bottom)]
    if any(p == top and tlex_key(q) > key_bottom for p, q in same):
        return False
    return all(tlex_key(p) >= key_top for p, q in same if tlex_key(q) >= key_bottom)


@lru_cache(maxsize=1)
def nice_crossings() -> frozenset:
    """The (top, bottom) X labelings that growth rules may use."""

    proper = _proper_x_labelings()
    return frozenset((top, bottom) for top, bottom in proper
                     if (top, bottom) not in EXCLUDED and _is_nice(top, bottom, proper))


# ----------------------------------------------------------------- rule table

_Shape = Tuple[Tuple[int, int], Tuple[int, ...], Optional[str], Tuple[int, ...], Tuple[int, ...]]


def _letter_map(which: Involution):
    if which == Involution.TAU:
        return lambda v: -v
    if which == Involution.EPSILON:
        return lambda v: -word_service.varpi_value(v)
    return word_service.varpi_value


def _image(shape: _Shape, which) -> _Shape:
    """tau and epsilon reverse the word, so the witness changes side; varpi acts letter by letter."""

    which = Involution(which)
    top, bottom, side, witnesses, run = shape
    f = _letter_map(which)
    witnesses = tuple(sorted(f(v) for v in witnesses))
    run = tuple(sorted(f(v) for v in run))
    if which == Involution.VARPI:
        return (f(top[0]), f(top[1])), tuple(f(v) for v in bottom), side, witnesses, run
    flipped = {LEFT: RIGHT, RIGHT: LEFT}.get(side)
    return (f(top[1]), f(top[0])), tuple(f(v) for v in reversed(bottom)), flipped, witnesses, run


def _shape(rule: GrowthRule) -> _Shape:
    return rule.top, rule.bottom, rule.side, rule.witnesses, rule.run


def _family_shapes() -> Iterator[Tuple[str, _Shape]]:
    for name, top, bottom, witnesses in SHORT_FAMILIES:
        if not witnesses:
            yield name, (top, bottom, None, (), ())
        for letter in witnesses:
            yield name, (top, bottom, RIGHT, (letter,), ())
    for name, top, bottom, run, terminals in LONG_FAMILIES:
        yield name, (top, bottom, RIGHT, tuple(sorted(terminals)), tuple(sorted(run)))


@lru_cache(maxsize=1)
def _rule_table() -> Tuple[GrowthRule, ...]:
    rules: List[GrowthRule] = []
    seen = set()
    for family, base in _family_shapes():
        for shape in (base, _image(base, Involution.TAU), _image(base, Involution.EPSILON),
                      _image(base, Involution.VARPI)):
            if shape in seen:
                continue
            seen.add(shape)
            top, bottom, side, witnesses, run = shape
            vertex = x_vertex(top, bottom)[0] if bottom else None
            rules.append(GrowthRule(top=top, bottom=bottom, vertex=vertex, index=len(rules), family=family,
                                    side=side, witnesses=witnesses, run=run))
    return tuple(rules)


def rule_table() -> List[GrowthRule]:
    """
    End caps first, then the witness-free swaps, the witnessed short rules and
    the long rules, each family followed by its images under the involutions.
    """

    return list(_rule_table())


def rule_image(rule: GrowthRule, which) -> Optional[GrowthRule]:
    """The table rule that is the image of `rule` under an involution, or None if the table lacks it."""

    target = _image(_shape(rule), which)
    return next((other for other in _rule_table() if _shape(other) == target), None)


@lru_cache(maxsize=1)
def _rules_by_top() -> Dict[Tuple[int, int], Tuple[GrowthRule, ...]]:
    grouped: Dict[Tuple[int, int], List[GrowthRule]] = {}
    for rule in _rule_table():
        grouped.setdefault(rule.top, []).append(rule)
    return {top: tuple(rules) for top, rules in grouped.items()}


# ----------------------------------------------------------------- one step

def _matches(signed: Sequence[int], rule: GrowthRule, p: int) -> bool:
    """
    Whether `rule` crosses (or caps) strands p and p + 1. A long rule takes the
    maximal run of its run letters next to the crossing, at least one, and then
    needs a terminal witness.
    """

    if (signed[p], signed[p + 1]) != rule.top:
        return False
    if rule.side is None:
        return True
    direction = 1 if rule.side == RIGHT else -1
    j = p + 2 if rule.side == RIGHT else p - 1
    k = 0
    while rule.run and 0 <= j < len(signed) and signed[j] in rule.run:
        j += direction
        k += 1
    if rule.run and not k:
        return False
    return 0 <= j < len(signed) and signed[j] in rule.witnesses


def _applicable(signed: Sequence[int]) -> Iterator[Tuple[GrowthRule, int]]:
    by_top = _rules_by_top()
    for p in range(len(signed) - 1):
        for rule in by_top.get((signed[p], signed[p + 1]), ()):
            if _matches(signed, rule, p):
                yield rule, p


def _is_balanced_signed(signed: Sequence[int]) -> bool:
    mu = [0] * RANK
    for value in signed:
        mu[abs(value) - 1] += 1 if value > 0 else -1
        if any(mu[k] < mu[k + 1] for k in range(RANK - 1)):
            return False
    return len(set(mu)) == 1


def _rewrite(signed: Tuple[int, ...], rule: GrowthRule, p: int) -> Tuple[int, ...]:
    """Replaces the two strands at p; the word must stay balanced lattice and get shorter or tlex-greater."""

    rewritten = signed[:p] + rule.bottom + signed[p + 2:]
    context = {'rule': rule.describe(), 'position': p + 1, 'word': list(signed)}
    if not _is_balanced_signed(rewritten):
        raise HourglassError('growth rule leaves the balanced lattice words', context)
    if len(rewritten) == len(signed) and tlex_key(rewritten) <= tlex_key(signed):
        raise HourglassError('growth rule does not raise the word in tlex order', context)
    return rewritten


def _oscillated(word) -> Tuple[LatticeWord, Tuple[int, ...]]:
    word = word_service.require_balanced(word)
    return word, word_service.oscillize_signed(word)


def applicable_rules(word) -> List[Tuple[GrowthRule, int]]:
    """Every (rule, 0-based position of the crossed strands) matching the oscillized word, in application order."""

    _, signed = _oscillated(word)
    return list(_applicable(signed))


# ----------------------------------------------------------------- assembly

def _assemble(signed: Tuple[int, ...], steps: Sequence[GrowthStep]) -> Tuple[SixVertexConfig, List[int]]:
    """The linearized diagram of a rule sequence, with the label carried by each of its edges."""

    n = len(signed)
    rotation: List[List[Optional[int]]] = [[None] for _ in range(n)]
    edges: List[Tuple[int, int]] = []
    labels: List[int] = []
    dangling = [(b, 0, signed[b]) for b in range(n)]

    def join(upper: Tuple[int, int, int], vertex: int, slot: int) -> None:
        u, u_slot, letter = upper
        edges.append((u, vertex) if letter > 0 else (vertex, u))
        labels.append(abs(letter))
        rotation[u][u_slot] = len(edges) - 1
        rotation[vertex][slot] = len(edges) - 1

    for step in steps:
        p, rule = step.position, step.rule
        left, right = dangling[p], dangling[p + 1]
        if (left[2], right[2]) != rule.top:
            raise HourglassError('growth step does not match the dangling labels', {'position': p + 1})
        if rule.is_cap:
            if left[0] == right[0]:
                raise HourglassError('end cap closes a loop at one vertex', {'position': p + 1})
            join(left, right[0], right[1])
            dangling[p:p + 2] = []
            continue
        x = len(rotation)
        rotation.append([None] * RANK)
        join(left, x, 0)
        join(right, x, 1)
        dangling[p:p + 2] = [(x, 3, rule.bottom[0]), (x, 2, rule.bottom[1])]
    config = SixVertexConfig(n_boundary=n, edges=tuple(edges), rotation=tuple(tuple(r) for r in rotation))
    return config, labels


def _descents_match(signed: Tuple[int, ...], graph: HourglassGraph) -> bool:
    descents = word_service.descents(LatticeWord.from_signed(signed))
    neighbor = [graph.other_end(graph.boundary_edge(b), b) for b in range(graph.n_boundary)]
    for i in range(1, graph.n_boundary):
        shared = neighbor[i - 1] == neighbor[i] and not graph.is_boundary(neighbor[i])
        if (i in descents) != shared:
            return False
    return True


def _claw_map(word: LatticeWord) -> OscillizationMap:
    origin = tuple((i, k) for i, letter in enumerate(word.letters) for k in range(letter.size))
    return OscillizationMap(original_boundary=len(word), boundary_origin=origin)


def _claws_shared(graph: HourglassGraph, mapping: OscillizationMap) -> bool:
    for claw in mapping.claws().values():
        ends = {graph.other_end(graph.boundary_edge(b), b) for b in claw}
        if len(claw) > 1 and (len(ends) != 1 or graph.is_boundary(ends.pop())):
            return False
    return True


def _fold(osc: HourglassGraph, masks: List[int], mapping: OscillizationMap) -> Tuple[HourglassGraph, List[int]]:
    """Merges the claws and contracts, carrying the edge labels along."""

    claws = mapping.claws()
    union = {origin: 0 for origin in claws}
    for origin, claw in claws.items():
        for b in claw:
            union[origin] |= masks[osc.boundary_edge(b)]
    folded, seen = [], set()
    for e, (u, v, _) in enumerate(osc.edges):
        if osc.is_boundary(u) == osc.is_boundary(v):
            folded.append(masks[e])
            continue
        origin = mapping.boundary_origin[u if osc.is_boundary(u) else v][0]
        if origin not in seen:
            seen.add(origin)
            folded.append(union[origin])
    graph = graph_service.deoscillize(osc, mapping)
    builder = GraphBuilder.from_graph(graph)
    labels = dict(enumerate(folded))
    while True:
        before = {e: tuple(edge) for e, edge in builder.edges.items()}
        if not graph_service.contraction_step(builder):
            break
        for e, (u, _, _) in builder.edges.items():
            if e not in before:
                removed = [f for f, edge in before.items() if f not in builder.edges and u in edge[:2]]
                labels[e] = labels[removed[0]]
    return builder.build(), [labels[e] for e in sorted(builder.edges)]


def _realize(word: LatticeWord, signed: Tuple[int, ...], steps: List[GrowthStep]) -> GrowthResult:
    config, labels = _assemble(signed, steps)
    osc, edge_map, hourglasses = six_vertex_service.expand_config(config)
    context = {'word': str(word)}
    if not graph_service.validate(osc).ok:
        raise HourglassError('grown diagram does not give a valid graph', context)
    masks = [0] * len(osc.edges)
    for e, label in enumerate(labels):
        masks[edge_map[e]] = 1 << (label - 1)
    for v, hourglass in hourglasses.items():
        ring, axis = config.rotation[v], config.transmit_axis(v)
        masks[hourglass] = FULL ^ (1 << (labels[ring[axis]] - 1)) ^ (1 << (labels[ring[(axis + 1) % RANK]] - 1))
    if not _descents_match(signed, osc):
        raise HourglassError('grown graph breaks the descent correspondence', context)
    mapping = _claw_map(word)
    if not _claws_shared(osc, mapping):
        raise HourglassError('grown graph splits a claw', context)
    graph, folded = _fold(osc, masks, mapping)
    if not graph_service.validate(graph).ok or not move_service.is_fully_reduced(graph):
        raise HourglassError('grown graph is not fully reduced', context)
    labeling = ProperLabeling(masks=tuple(folded))
    if not labeling_service.is_proper(graph, labeling) or labeling_service.boundary_word(graph, labeling) != word:
        raise HourglassError('growth labeling does not reproduce the input word', context)
    return GrowthResult(graph=graph, labeling=labeling, trace=GrowthTrace(steps=tuple(steps)),
                        diagram=config, oscillating_graph=osc)


def _grow(word, max_nodes: Optional[int], rng: Optional[random.Random]) -> GrowthResult:
    word, signed = _oscillated(word)
    if not signed:
        return GrowthResult(graph=HourglassGraph(), labeling=ProperLabeling(), trace=GrowthTrace(),
                            diagram=SixVertexConfig(), oscillating_graph=HourglassGraph())
    limit = get_max_nodes(max_nodes)
    log_message('Info', f'growth started for "{word}"')
    steps: List[GrowthStep] = []
    current = signed
    while current:
        if len(steps) >= limit:
            raise ResourceCapExceeded(f'growth exceeded {limit} steps', limit, {'word': list(signed)})
        if rng is None:
            choice = next(_applicable(current), None)
        else:
            options = list(_applicable(current))
            choice = rng.choice(options) if options else None
        if choice is None:
            raise HourglassError('no growth rule applies', {'word': list(current)})
        rule, p = choice
        steps.append(GrowthStep(word=current, rule=rule, position=p))
        log_message('Debug', f'{rule.describe()} at {p + 1}')
        current = _rewrite(current, rule, p)
    result = _realize(word, signed, steps)
    log_message('Info', f'growth finished after {len(steps)} rules')
    return result


def grow(word, max_nodes: int = None) -> GrowthResult:
    """
    Deterministic growth: at each step the first matching rule by (position,
    table index).

    :raises WebValidationError: for words that are not balanced lattice words.
    :raises ResourceCapExceeded: when more than max_nodes rules are applied.
    """

    return _grow(word, max_nodes, None)


def randomized_grow(word, seed: int, max_nodes: int = None) -> GrowthResult:
    """Growth choosing uniformly among the matching rules at each step."""
    return _grow(word, max_nodes, random.Random(seed))
