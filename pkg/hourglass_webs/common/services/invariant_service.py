"""
Web invariants at q = 1: signed sums over proper labelings, an independent
tensor-network evaluation, leading terms, the rotation-invariant web basis and
elimination against it.
"""

from functools import lru_cache, reduce
from itertools import product
from operator import or_
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np
import sympy

from ..exceptions import HourglassError, ResourceCapExceeded, WebValidationError
from ..model.component.hourglass_graph import CROSSING, HourglassGraph
from ..model.component.invariant import LaurentPoly, TaggedWeb, TensorDiagram, WebExpansion, WebPolynomial
from ..model.component.labeling import TagAssignment, letter_code, word_from_codes
from ..model.component.letter import RANK, LatticeWord
from ..utilities import log_message
from . import graph_service, growth_service, labeling_service, move_service, word_service
from .graph_service import GraphBuilder
from .labeling_service import FULL

# numpy.einsum accepts at most 52 distinct subscripts
_MAX_SUBSCRIPTS = 52

_SUBSETS = {m: [mask for mask in range(1, FULL + 1) if bin(mask).count('1') == m] for m in range(1, RANK + 1)}


# ----------------------------------------------------------------- Laurent helpers

def quantum_integer(k: int) -> LaurentPoly:
    """[k]_q = q^(k-1) + q^(k-3) + ... + q^(1-k)."""

    if k < 0:
        raise WebValidationError('quantum integers are defined for k >= 0', {'k': k})
    return LaurentPoly.of({k - 1 - 2 * i: 1 for i in range(k)})


@lru_cache(maxsize=None)
def qbinom(n: int, k: int) -> LaurentPoly:
    """Symmetric Gaussian binomial, so qbinom(n, 1) = [n]_q."""

    if k < 0 or k > n:
        return LaurentPoly()
    # ordinary Gaussian binomial in t = q^2
    table: Dict[Tuple[int, int], Dict[int, int]] = {(0, 0): {0: 1}}
    for size in range(1, n + 1):
        for j in range(size + 1):
            total: Dict[int, int] = {}
            if j > 0:
                for e, c in table[(size - 1, j - 1)].items():
                    total[e] = total.get(e, 0) + c
            if j < size:
                for e, c in table[(size - 1, j)].items():
                    total[e + j] = total.get(e + j, 0) + c
            table[(size, j)] = total
    shift = k * (n - k)
    return LaurentPoly.of({2 * e - shift: c for e, c in table[(n, k)].items()})


# ----------------------------------------------------------------- webs

def as_tagged(web: Union[TaggedWeb, TensorDiagram, HourglassGraph]) -> TaggedWeb:
    if isinstance(web, TensorDiagram):
        return web.web
    if isinstance(web, HourglassGraph):
        return TaggedWeb(graph=web, tags=labeling_service.default_tags(web))
    return web


def _require_tags(web: TaggedWeb) -> None:
    graph = web.graph
    if len(web.tags.slots) != graph.vertex_count:
        raise WebValidationError('tag assignment does not cover every vertex',
                                 {'tags': len(web.tags.slots), 'vertices': graph.vertex_count})
    for v in graph.internal_vertices:
        slot = web.tags.slot(v)
        if graph.colors[v] == CROSSING:
            continue
        if slot is None or not 0 <= slot < graph.degree(v) or graph.rotation[v][slot][1] != 0:
            raise WebValidationError('tag must sit before the first strand of an edge', {'vertex': v, 'slot': slot})


def evaluate_q1(web, max_nodes: int = None) -> WebPolynomial:
    """
    Sum over proper labelings of (-1)^coinversions on the monomial of the
    boundary word.

    :raises ResourceCapExceeded: when the labeling enumeration exceeds max_nodes.
    """

    web = as_tagged(web)
    graph_service.require_valid(web.graph, allow_crossings=True)
    _require_tags(web)
    blocks = labeling_service.tag_blocks(web.graph, web.tags)
    totals: Dict[Tuple[int, ...], int] = {}
    for masks in labeling_service.proper_masks(web.graph, max_nodes):
        ell = sum(labeling_service.coinversion_number([masks[e] for e in edges]) for edges in blocks.values())
        codes = labeling_service.boundary_codes(web.graph, masks)
        totals[codes] = totals.get(codes, 0) + (-1 if ell % 2 else 1)
    return WebPolynomial.of(totals)


def _block_sign(masks: Sequence[int]) -> int:
    sequence = [value for mask in masks for value in sorted(
        (i + 1 for i in range(RANK) if mask >> i & 1), reverse=True)]
    inversions = sum(1 for i in range(len(sequence)) for j in range(i + 1, len(sequence)) if sequence[i] > sequence[j])
    return -1 if inversions % 2 else 1


@lru_cache(maxsize=None)
def _vertex_tensor(multiplicities: Tuple[int, ...]) -> np.ndarray:
    """Levi-Civita tensor with one subset-valued leg per edge, legs read clockwise from the tag."""

    tensor = np.zeros([len(_SUBSETS[m]) for m in multiplicities], dtype=np.int64)
    for index in product(*(range(len(_SUBSETS[m])) for m in multiplicities)):
        masks = [_SUBSETS[m][i] for m, i in zip(multiplicities, index)]
        if reduce(or_, masks, 0) == FULL:
            tensor[index] = _block_sign(masks)
    return tensor


def _crossing_tensor() -> np.ndarray:
    identity = np.eye(len(_SUBSETS[1]), dtype=np.int64)
    return np.einsum('ac,bd->abcd', identity, identity)


def tensor_oracle_q1(web) -> WebPolynomial:
    """
    Contracts the web as a tensor network: one Levi-Civita tensor per tagged
    vertex, an identity pairing of opposite legs per crossing.

    :raises ResourceCapExceeded: when the network needs more subscripts than numpy.einsum offers.
    """

    web = as_tagged(web)
    graph = web.graph
    graph_service.require_valid(graph, allow_crossings=True)
    _require_tags(web)
    if not graph.edges:
        return WebPolynomial.of({(): 1})
    subscripts: Dict[Tuple[int, int], int] = {}
    counter = [0]

    def subscript(edge: int, end: int) -> int:
        u, v, _ = graph.edges[edge]
        key = (edge, end) if graph.is_boundary(u) and graph.is_boundary(v) else (edge, -1)
        if key not in subscripts:
            subscripts[key] = counter[0]
            counter[0] += 1
        return subscripts[key]

    operands = []
    for v in graph.internal_vertices:
        ring = graph.rotation[v]
        if graph.colors[v] == CROSSING:
            operands += [_crossing_tensor(), [subscript(e, v) for e, _ in ring]]
            continue
        start = web.tags.slot(v)
        ordered = [ring[(start + k) % len(ring)] for k in range(len(ring))]
        edges = [e for e, strand in ordered if strand == 0]
        operands += [_vertex_tensor(tuple(graph.multiplicity(e) for e in edges)), [subscript(e, v) for e in edges]]
    for e, (u, v, m) in enumerate(graph.edges):
        if graph.is_boundary(u) and graph.is_boundary(v):
            operands += [np.eye(len(_SUBSETS[m]), dtype=np.int64), [subscript(e, u), subscript(e, v)]]
    output = [subscript(graph.boundary_edge(b), b) for b in range(graph.n_boundary)]
    if counter[0] > _MAX_SUBSCRIPTS:
        raise ResourceCapExceeded(f'tensor network needs {counter[0]} subscripts', _MAX_SUBSCRIPTS)
    result = np.einsum(*operands, output, optimize='greedy')
    totals: Dict[Tuple[int, ...], int] = {}
    multiplicities = [graph.multiplicity(graph.boundary_edge(b)) for b in range(graph.n_boundary)]
    for index in zip(*np.nonzero(result)) if graph.n_boundary else [()]:
        value = int(result[index]) if graph.n_boundary else int(result)
        if value:
            codes = tuple(graph.colors[b] * _SUBSETS[m][i] for b, (m, i) in enumerate(zip(multiplicities, index)))
            totals[codes] = value
    return WebPolynomial.of(totals)


# ----------------------------------------------------------------- leading terms

def leading_term(web) -> Tuple[LatticeWord, int]:
    """tlex-minimal boundary word over all proper labelings, with its coefficient."""

    web = as_tagged(web)
    polynomial = evaluate_q1(web)
    if polynomial.is_zero():
        raise WebValidationError('web invariant vanishes')
    codes = min(polynomial.as_dict(), key=lambda k: word_service.tlex_key(word_from_codes(k)))
    return word_from_codes(codes), polynomial.coefficient(codes)


def check_unitriangular(web, labelings=None) -> bool:
    """
    True when exactly one proper labeling has the separation word on its
    boundary and every other labeling has a tlex-greater boundary word.
    """

    web = as_tagged(web)
    graph = web.graph
    leading = labeling_service.sep_word(graph)
    leading_key = word_service.tlex_key(leading)
    if labelings is None:
        labelings = labeling_service.enumerate_proper_labelings(graph)
    attained = 0
    for labeling in labelings:
        key = word_service.tlex_key(labeling_service.boundary_word(graph, labeling))
        if key == leading_key:
            attained += 1
        elif key < leading_key:
            return False
    return attained == 1


def lead_sign(graph: HourglassGraph, tags: TagAssignment) -> int:
    """Coefficient of the separation word, for a contracted fully reduced web."""
    return labeling_service.coinversion_and_sign(graph, labeling_service.separation_labeling(graph), tags)[1]


# ----------------------------------------------------------------- basis

def is_basis_web(graph: HourglassGraph) -> bool:
    if not graph.vertex_count:
        return True
    if graph.crossings or not graph_service.validate(graph).ok:
        return False
    try:
        if not move_service.is_fully_reduced(graph):
            return False
    except HourglassError:
        return False
    return graph_service.canonical_key(move_service.top_element(graph)) == graph_service.canonical_key(graph)


@lru_cache(maxsize=128)
def _basis(type_vector: Tuple[int, ...]) -> Tuple[TaggedWeb, ...]:
    if not type_vector:
        return (TaggedWeb(graph=HourglassGraph(), tags=TagAssignment()),)
    webs = []
    for word in word_service.enumerate_balanced_words(type_vector):
        graph = move_service.top_element(growth_service.grow(word).graph)
        webs.append(TaggedWeb(graph=graph, tags=labeling_service.default_tags(graph)))
    log_message('Debug', f'basis of type {list(type_vector)}: {len(webs)} webs')
    return tuple(webs)


def basis(type_vector: Sequence[int]) -> List[TaggedWeb]:
    """One top fully reduced web per balanced lattice word of the type, tagged by default."""
    return list(_basis(tuple(type_vector)))


@lru_cache(maxsize=128)
def _basis_leads(type_vector: Tuple[int, ...]) -> Dict[Tuple[int, ...], Tuple[int, TaggedWeb, WebPolynomial]]:
    leads = {}
    for web in _basis(type_vector):
        codes = () if not web.graph.vertex_count else tuple(
            letter_code(letter) for letter in labeling_service.sep_word(web.graph))
        polynomial = evaluate_q1(web)
        leads[codes] = (polynomial.coefficient(codes), web, polynomial)
    return leads


def project_q1(polynomial: WebPolynomial, type_vector: Sequence[int]) -> List[Tuple[int, TaggedWeb]]:
    """
    Expands an invariant of the given type in the basis by unitriangular
    elimination: the tlex-least remaining word is the leading word of exactly
    one basis web.

    :raises WebValidationError: when the polynomial is not in the span of the basis.
    """

    leads = _basis_leads(tuple(type_vector))
    remaining = polynomial.as_dict()
    result = []
    while remaining:
        codes = min(remaining, key=lambda k: word_service.tlex_key(word_from_codes(k)))
        if codes not in leads:
            raise WebValidationError('polynomial is not an invariant of its type',
                                     {'word': str(word_from_codes(codes))})
        lead, web, basis_polynomial = leads[codes]
        factor = remaining[codes] * lead
        for k, c in basis_polynomial.terms:
            value = remaining.get(k, 0) - factor * c
            if value:
                remaining[k] = value
            else:
                remaining.pop(k, None)
        result.append((factor, web))
    return result


@lru_cache(maxsize=128)
def _basis_by_trips(type_vector: Tuple[int, ...]) -> Dict[Tuple[Tuple[int, ...], ...], TaggedWeb]:
    return {graph_service.trip_perms(web.graph): web for web in _basis(type_vector)}


def basis_key(web: TaggedWeb) -> Tuple[str, HourglassGraph, int]:
    """
    (canonical key, canonical basis web, sign) for a top fully reduced web.
    Top webs of one move class differ by square moves and share their
    invariant, so the web is filed under the basis web with its trip
    permutations; the sign relates the two separation-word coefficients.

    :raises WebValidationError: when no basis web has the web's trip permutations.
    """

    graph = web.graph
    if not graph.vertex_count:
        canonical = graph_service.canonical_form(graph)
        return graph_service.canonical_key(canonical), canonical, 1
    match = _basis_by_trips(graph.type_vector).get(graph_service.trip_perms(graph))
    if match is None:
        raise WebValidationError('no basis web has these trip permutations', {'type': list(graph.type_vector)})
    canonical = graph_service.canonical_form(match.graph)
    sign = lead_sign(graph, web.tags) * lead_sign(canonical, labeling_service.default_tags(canonical))
    return graph_service.canonical_key(canonical), canonical, sign


def expansion_at_one(expansion: WebExpansion) -> WebPolynomial:
    """Evaluates a basis expansion at q = 1."""

    total = WebPolynomial()
    for (key, poly), graph in zip(expansion.terms, expansion.graphs):
        total = total + evaluate_q1(as_tagged(graph)) * poly.at_one()
    return total


def coefficient_rank(polynomials: Sequence[WebPolynomial]) -> int:
    """Rank over Q of the coefficient matrix (one row per polynomial)."""

    columns = sorted({k for p in polynomials for k, _ in p.terms})
    if not columns:
        return 0
    position = {k: i for i, k in enumerate(columns)}
    rows = []
    for p in polynomials:
        row = [0] * len(columns)
        for k, c in p.terms:
            row[position[k]] = c
        rows.append(row)
    return sympy.Matrix(rows).rank()


# ----------------------------------------------------------------- crossings

def add_crossing(web, position: int) -> TensorDiagram:
    """
    Crosses the boundary edges of b_position and b_position+1 (1-based, both
    simple) just inside the disk; the two boundary colors are exchanged so each
    strand keeps its far end.
    """

    web = as_tagged(web)
    graph = web.graph
    n = graph.n_boundary
    if not 1 <= position < n:
        raise WebValidationError('crossing position out of range', {'position': position, 'n': n})
    left, right = position - 1, position
    e_left, e_right = graph.boundary_edge(left), graph.boundary_edge(right)
    if e_left == e_right or graph.multiplicity(e_left) != 1 or graph.multiplicity(e_right) != 1:
        raise WebValidationError('crossings join two simple boundary edges of distinct strands', {'position': position})
    builder = GraphBuilder.from_graph(graph)
    crossing = builder.add_vertex(CROSSING)
    far = {}
    for b, e in ((left, e_left), (right, e_right)):
        y = graph.other_end(e, b)
        inner = builder.add_edge(crossing, y, 1)
        builder.rotation[y] = [(inner, 0) if (edge, k) == (e, 0) else (edge, k) for edge, k in builder.rotation[y]]
        builder.reattach(e, y, crossing)
        far[b] = inner
    builder.rotation[crossing] = [(e_left, 0), (e_right, 0), (far[right], 0), (far[left], 0)]
    builder.colors[left], builder.colors[right] = graph.colors[right], graph.colors[left]
    crossed = builder.build()
    graph_service.require_valid(crossed, allow_crossings=True)
    tags = TagAssignment(slots=tuple(web.tags.slots) + (None,))
    return TensorDiagram(web=TaggedWeb(graph=crossed, tags=tags))
