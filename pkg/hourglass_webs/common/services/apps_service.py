"""
Enumerative applications: dimensions of invariant spaces, alternating sign
matrices from the superstandard move class, plane partitions from the benzene
poset of a box web, and cyclic sieving of promotion on rectangular words.
"""

from collections import Counter, deque
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Dict, List, Sequence, Set, Tuple

import pandas as pd
import sympy

from ..exceptions import ResourceCapExceeded, WebValidationError
from ..model.component.application import AsmClassReport, CspReport, CspRow, Matrix, PlanePartitionReport
from ..model.component.letter import RANK, LatticeWord
from ..model.component.six_vertex import SINK, SOURCE, TRANSMIT, SixVertexConfig
from ..utilities import get_max_nodes, log_message
from . import growth_service, move_service, six_vertex_service, word_service
from .move_service import BENZENE, SQUARE
from .tableau_service import promote_signed

ENTRY = {SINK: 1, SOURCE: -1, TRANSMIT: 0}

q = sympy.Symbol('q')


def dim_invariant_space(type_vector: Sequence[int]) -> int:
    """Dimension of the invariant space of the type: its number of balanced lattice words."""
    return word_service.count_balanced_words(type_vector)


# ----------------------------------------------------------------- alternating sign matrices

def superstandard_word(n: int) -> LatticeWord:
    if n < 1:
        raise WebValidationError(f'superstandard size must be positive, got {n}')
    return LatticeWord.from_signed([row for row in range(1, RANK + 1) for _ in range(n)])


def asm_matrix(config: SixVertexConfig, n: int) -> Matrix:
    """
    Reads a six-vertex configuration of the superstandard web as an n x n
    matrix: rows are the trip_2 strands leaving b_1..b_n, columns those leaving
    b_(n+1)..b_(2n), and the entry at their meeting vertex is 1 for a sink,
    -1 for a source and 0 for a transmitting vertex.
    """

    paths = six_vertex_service.strand_paths(config)
    if len(paths) != RANK * n:
        raise WebValidationError('configuration is not on the superstandard boundary',
                                 {'boundary': len(paths), 'n': n})
    visited = [{head for _, _, head in path[:-1]} for path in paths]
    matrix = []
    for row in visited[:n]:
        entries = []
        for column in visited[n:2 * n]:
            shared = row & column
            if len(shared) != 1:
                raise WebValidationError('row and column strands do not meet exactly once',
                                         {'shared': sorted(shared)})
            entries.append(ENTRY[config.kind(shared.pop())])
        matrix.append(tuple(entries))
    return tuple(matrix)


def is_asm(matrix: Matrix) -> bool:
    lines = [list(row) for row in matrix] + [list(column) for column in zip(*matrix)]
    for line in lines:
        partial = 0
        for entry in line:
            if entry not in (-1, 0, 1):
                return False
            partial += entry
            if partial not in (0, 1):
                return False
        if partial != 1:
            return False
    return True


def enumerate_asms(n: int) -> List[Matrix]:
    """All n x n alternating sign matrices, built row by row from partial column sums."""

    rows = [row for row in product((-1, 0, 1), repeat=n) if _is_asm_row(row)]
    found = []

    def extend(prefix, sums):
        if len(prefix) == n:
            if all(s == 1 for s in sums):
                found.append(tuple(prefix))
            return
        for row in rows:
            following = tuple(s + r for s, r in zip(sums, row))
            if all(s in (0, 1) for s in following):
                extend(prefix + [row], following)

    extend([], (0,) * n)
    return sorted(found)


def _is_asm_row(row: Sequence[int]) -> bool:
    partial = 0
    for entry in row:
        partial += entry
        if partial not in (0, 1):
            return False
    return partial == 1


def asm_covers(matrices: Sequence[Matrix]) -> Set[Tuple[int, int]]:
    """
    Pairs (i, j) of matrices differing by [[-1, 1], [1, -1]] on a 2 x 2 block
    of adjacent rows and columns, j being the larger.
    """

    index = {matrix: i for i, matrix in enumerate(matrices)}
    covers = set()
    for i, matrix in enumerate(matrices):
        n = len(matrix)
        for r, c in product(range(n - 1), repeat=2):
            raised = [list(row) for row in matrix]
            raised[r][c] -= 1
            raised[r][c + 1] += 1
            raised[r + 1][c] += 1
            raised[r + 1][c + 1] -= 1
            j = index.get(tuple(tuple(row) for row in raised))
            if j is not None:
                covers.add((i, j))
    return covers


def _directed_links(links, kind: str) -> Set[Tuple[int, int]]:
    """(lower, upper) member pairs; a clockwise move goes up."""
    return {(a, b) if up else (b, a) for a, b, link_kind, up in links if link_kind == kind and a != b}


def asm_class(n: int, max_nodes: int = None) -> AsmClassReport:
    """
    Grows the superstandard word 1^n 2^n 3^n 4^n, explores its move class and
    reads every member as an alternating sign matrix through phi.

    :raises ResourceCapExceeded: when the growth or the class search passes max_nodes.
    """

    limit = get_max_nodes(max_nodes)
    graph = growth_service.grow(superstandard_word(n), limit).graph
    klass = move_service.move_class(graph, limit)
    configs = tuple(six_vertex_service.phi(member) for member in klass.members)
    matrices = tuple(asm_matrix(config, n) for config in configs)
    covers = sorted(_directed_links(klass.links, SQUARE))
    benzene = sum(len(move_service.benzene_faces(member)) for member in klass.members)
    log_message('Info', f'superstandard class of size {n}: {len(matrices)} members, {len(covers)} square moves')
    return AsmClassReport(n=n, configs=configs, matrices=matrices, covers=tuple(covers), benzene_faces=benzene)


def asm_table(report: AsmClassReport) -> pd.DataFrame:
    rows = []
    for i, matrix in enumerate(report.matrices):
        entries = [entry for row in matrix for entry in row]
        rows.append({
            'member': i,
            'matrix': ' / '.join(' '.join(f'{entry:+d}' if entry else '0' for entry in row) for row in matrix),
            'sinks': entries.count(1),
            'sources': entries.count(-1),
        })
    return pd.DataFrame(rows, columns=['member', 'matrix', 'sinks', 'sources'])


# ----------------------------------------------------------------- plane partitions

def pp_word(a: int, b: int, c: int) -> LatticeWord:
    """
    Boundary word of the a x b x c box web:
    1^a 4bar^b 2^a 1^(c-a) 2bar^a 4^b 1bar^c when a <= c, and
    1^a 4bar^b 2^c 1bar^(a-c) 2bar^c 4^b 1bar^c otherwise.
    """

    if min(a, b, c) < 1:
        raise WebValidationError(f'box sides must be positive, got {a} x {b} x {c}')
    if a <= c:
        signed = [1] * a + [-4] * b + [2] * a + [1] * (c - a) + [-2] * a + [4] * b + [-1] * c
    else:
        signed = [1] * a + [-4] * b + [2] * c + [-1] * (a - c) + [-2] * c + [4] * b + [-1] * c
    return LatticeWord.from_signed(signed)


def macmahon(a: int, b: int, c: int) -> int:
    """Number of plane partitions inside an a x b x c box."""

    total = Fraction(1)
    for i, j, k in product(range(1, a + 1), range(1, b + 1), range(1, c + 1)):
        total *= Fraction(i + j + k - 1, i + j + k - 2)
    return int(total)


def q_macmahon(a: int, b: int, c: int) -> List[int]:
    """Coefficients, from q^0 upwards, of the box-count generating function of plane partitions in the box."""

    expression = sympy.Integer(1)
    for i, j, k in product(range(1, a + 1), range(1, b + 1), range(1, c + 1)):
        expression *= (1 - q ** (i + j + k - 1)) / (1 - q ** (i + j + k - 2))
    polynomial = sympy.Poly(sympy.cancel(expression), q)
    return [int(coefficient) for coefficient in reversed(polynomial.all_coeffs())]


def _ranks(size: int, covers: Set[Tuple[int, int]]) -> List[int]:
    below: Dict[int, List[int]] = {i: [] for i in range(size)}
    above: Dict[int, List[int]] = {i: [] for i in range(size)}
    for lower, upper in covers:
        below[upper].append(lower)
        above[lower].append(upper)
    rank = [0] * size
    pending = {i: len(below[i]) for i in range(size)}
    queue = deque(i for i in range(size) if not pending[i])
    seen = 0
    while queue:
        x = queue.popleft()
        seen += 1
        for y in above[x]:
            rank[y] = max(rank[y], rank[x] + 1)
            pending[y] -= 1
            if not pending[y]:
                queue.append(y)
    if seen != size:
        raise WebValidationError('benzene moves do not form a poset: upward cycle found')
    return rank


def _down_sets(size: int, covers: Set[Tuple[int, int]], ranks: Sequence[int]) -> List[Set[int]]:
    below: Dict[int, List[int]] = {i: [] for i in range(size)}
    for lower, upper in covers:
        below[upper].append(lower)
    down: List[Set[int]] = [set() for _ in range(size)]
    for x in sorted(range(size), key=lambda i: ranks[i]):
        down[x].add(x)
        for y in below[x]:
            down[x] |= down[y]
    return down


def pp_class(a: int, b: int, c: int, max_nodes: int = None) -> PlanePartitionReport:
    """
    Grows the box web, explores its move class and orders it by benzene moves.
    The join-irreducible members are the boxes; the boxes below a member form
    its plane partition.

    :raises ResourceCapExceeded: when the growth or the class search passes max_nodes.
    """

    limit = get_max_nodes(max_nodes)
    graph = growth_service.grow(pp_word(a, b, c), limit).graph
    klass = move_service.move_class(graph, limit)
    size = len(klass)
    covers = _directed_links(klass.links, BENZENE)
    ranks = _ranks(size, covers)
    down = _down_sets(size, covers, ranks)
    lower_covers = Counter(upper for _, upper in covers)
    join_irreducibles = tuple(i for i in range(size) if lower_covers[i] == 1)
    ideals = tuple(tuple(j for j in join_irreducibles if j in down[i]) for i in range(size))
    rank_sizes = Counter(ranks)
    squares = len({tuple(sorted(pair)) for pair in _directed_links(klass.links, SQUARE)})
    log_message('Info', f'box {a}x{b}x{c}: {size} members, {len(join_irreducibles)} join-irreducibles')
    return PlanePartitionReport(
        a=a, b=b, c=c,
        ranks=tuple(ranks),
        rank_sizes=tuple(rank_sizes[r] for r in range(max(ranks) + 1)) if ranks else (),
        covers=tuple(sorted(covers)),
        join_irreducibles=join_irreducibles,
        ideals=ideals,
        square_moves=squares,
    )


def pp_table(report: PlanePartitionReport) -> pd.DataFrame:
    expected = q_macmahon(report.a, report.b, report.c)
    length = max(len(expected), len(report.rank_sizes))
    rows = [{
        'rank': r,
        'members': report.rank_sizes[r] if r < len(report.rank_sizes) else 0,
        'q_macmahon': expected[r] if r < len(expected) else 0,
    } for r in range(length)]
    return pd.DataFrame(rows, columns=['rank', 'members', 'q_macmahon'])


# ----------------------------------------------------------------- cyclic sieving

def rectangle_hooks(k: int) -> List[int]:
    return [(k - column - 1) + (RANK - row - 1) + 1 for row in range(RANK) for column in range(k)]


def q_hook_formula(k: int) -> sympy.Poly:
    """q-analogue of the hook length formula for the 4 x k rectangle."""

    numerator = sympy.Mul(*[1 - q ** i for i in range(1, RANK * k + 1)])
    denominator = sympy.Mul(*[1 - q ** h for h in rectangle_hooks(k)])
    return sympy.Poly(sympy.cancel(numerator / denominator), q)


def evaluate_at_root(polynomial: sympy.Poly, d: int, n: int) -> int:
    """Value of the polynomial at exp(2 pi i d / n), taken as its remainder mod the cyclotomic polynomial."""

    order = n // gcd(n, d)
    remainder = sympy.rem(polynomial.as_expr(), sympy.cyclotomic_poly(order, q), q)
    remainder = sympy.expand(remainder)
    if not remainder.is_Integer:
        raise WebValidationError('evaluation at a root of unity is not an integer',
                                 {'d': d, 'n': n, 'remainder': str(remainder)})
    return int(remainder)


def _orbit_length(signed: Tuple[int, ...], limit: int) -> int:
    current = promote_signed(signed)
    length = 1
    while current != signed:
        current = promote_signed(current)
        length += 1
        if length > limit:
            raise WebValidationError('promotion orbit longer than the word', {'word': list(signed)})
    return length


def csp_check(k: int, max_nodes: int = None) -> CspReport:
    """
    Checks the cyclic sieving phenomenon for promotion on balanced words of
    type (1, ..., 1) with 4k letters, i.e. standard tableaux of the 4 x k
    rectangle: for every d, the words fixed by d promotions are counted against
    the q-hook formula at a primitive root of unity.

    :raises ResourceCapExceeded: when there are more than max_nodes words.
    """

    if k < 1:
        raise WebValidationError(f'rectangle width must be positive, got {k}')
    n = RANK * k
    type_vector = (1,) * n
    limit = get_max_nodes(max_nodes)
    count = word_service.count_balanced_words(type_vector)
    if count > limit:
        raise ResourceCapExceeded(f'{count} words exceed the limit of {limit}', limit, {'k': k})
    lengths = [_orbit_length(word.signed(), n) for word in word_service.enumerate_balanced_words(type_vector)]
    polynomial = q_hook_formula(k)
    rows = tuple(CspRow(d=d, fixed=sum(1 for length in lengths if d % length == 0),
                        evaluation=evaluate_at_root(polynomial, d, n))
                 for d in range(1, n + 1))
    orbits = sum(Fraction(1, length) for length in lengths)
    report = CspReport(k=k, rows=rows, orbits=int(orbits))
    log_message('Info', f'cyclic sieving for 4 x {k}: {count} words, {report.orbits} orbits, holds={report.holds}')
    return report


def burnside_orbits(report: CspReport) -> int:
    """Orbit count from the fixed-point counts; equals report.orbits when the counts are right."""
    n = len(report.rows)
    return sum(row.fixed for row in report.rows) // n if n else 0


def csp_table(report: CspReport) -> pd.DataFrame:
    return pd.DataFrame([row.to_dict() for row in report.rows], columns=['d', 'fixed', 'evaluation'])
