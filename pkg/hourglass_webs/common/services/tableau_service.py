"""
Fluctuating tableaux: conversion from lattice words, promotion (sliding and
balance-point versions), evacuation, dual evacuation and promotion permutations.

Promotion on an oscillating word is computed by sliding a bullet through the
shape chain. At each step the bullet either passes the next entry, swaps with
it, or (for an entry that cancels it) jumps to the far end of its run of equal
rows. Every intermediate shape is checked to be a generalized partition.
"""

from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import WebValidationError
from ..model.component.letter import RANK, LatticeStatus, LatticeWord, Letter
from ..model.component.tableau import FluctuatingTableau, PromotionData
from . import word_service


# ----------------------------------------------------------------- construction

def tableau_from_word(word) -> FluctuatingTableau:
    word = word_service.as_word(word)
    if word_service.is_lattice_word(word) == LatticeStatus.NOT_LATTICE:
        raise WebValidationError(f'word "{word}" is not a lattice word')
    return FluctuatingTableau(shapes=tuple(word_service.prefix_weights(word)), type_vector=word.type_vector)


def word_of(tableau: FluctuatingTableau) -> LatticeWord:
    letters = []
    for before, after in zip(tableau.shapes, tableau.shapes[1:]):
        diff = [b - a for a, b in zip(before, after)]
        elements = [(row + 1) * d for row, d in enumerate(diff) if d]
        if not elements or any(abs(d) > 1 for d in diff) or len({d for d in diff if d}) > 1:
            raise WebValidationError('consecutive shapes do not differ by a signed column')
        letters.append(Letter.from_elements(elements))
    return LatticeWord(letters=tuple(letters))


def _as_tableau(value) -> FluctuatingTableau:
    if isinstance(value, FluctuatingTableau):
        return value
    return tableau_from_word(value)


def cell_diagram(tableau: FluctuatingTableau) -> str:
    """
    Text picture of the tableau: row r lists the signed entries that touched it,
    entry i appearing as i (added cell) or -i (removed cell).
    """

    rows = [[] for _ in range(RANK)]
    for index, letter in enumerate(word_of(tableau), start=1):
        for row in letter.rows:
            rows[row - 1].append(str(index * letter.sign))
    width = max([len(cell) for row in rows for cell in row] + [1])
    return '\n'.join(' '.join(cell.rjust(width) for cell in row) for row in rows)


# ----------------------------------------------------------------- sliding

def _bump(mu: List[int], value: int) -> None:
    mu[abs(value) - 1] += 1 if value > 0 else -1


def _slide(signed: Sequence[int]) -> Tuple[Tuple[int, ...], int, Dict[int, int]]:
    """
    Slides the first entry of an oscillating lattice word through the rest.

    :return: (the remaining entries after the slide, the final bullet, crossings)
             where crossings maps a row boundary k (between rows k and k+1) to the
             1-based index of the entry the bullet passed when crossing it. A barred
             bullet climbs, so its boundaries are counted from the bottom row.
    """

    bullet = signed[0]
    sign = 1 if bullet > 0 else -1
    mu = [0] * RANK
    out = []
    crossings = {}

    def move(new_bullet: int, index: int) -> None:
        start, end = abs(bullet), abs(new_bullet)
        if sign < 0:
            start, end = RANK + 1 - start, RANK + 1 - end
        if end < start:
            raise WebValidationError('bullet moved against its direction', {'index': index})
        for k in range(start, end):
            crossings[k if sign > 0 else RANK - k] = index

    for index, x in enumerate(signed[1:], start=2):
        if x * bullet > 0:
            if x == bullet:
                new_x = x
            else:
                trial = list(mu)
                _bump(trial, x)
                if word_service.is_partition(trial):
                    new_x = x
                else:
                    new_x = bullet
                    move(x, index)
                    bullet = x
        elif x != -bullet:
            new_x = x
        else:
            p = abs(bullet)
            if bullet > 0:
                r = max(row for row in range(p, RANK + 1) if mu[row - 1] == mu[p - 1])
                new_x, new_bullet = -r, r
            else:
                r = min(row for row in range(1, p + 1) if mu[row - 1] == mu[p - 1])
                new_x, new_bullet = r, -r
            move(new_bullet, index)
            bullet = new_bullet
        _bump(mu, new_x)
        if not word_service.is_partition(mu):
            raise WebValidationError('slide produced an invalid shape', {'index': index, 'shape': list(mu)})
        out.append(new_x)
    return tuple(out), bullet, crossings


@lru_cache(maxsize=65536)
def promote_signed(signed: Tuple[int, ...]) -> Tuple[int, ...]:
    if not signed:
        return signed
    rest, bullet, _ = _slide(signed)
    return rest + (bullet,)


@lru_cache(maxsize=65536)
def _promote_with_crossings(signed: Tuple[int, ...]) -> Tuple[Tuple[int, ...], Tuple[Tuple[int, int], ...]]:
    rest, bullet, crossings = _slide(signed)
    return rest + (bullet,), tuple(sorted(crossings.items()))


def promote_jdt(tableau) -> FluctuatingTableau:
    """
    Promotion by sliding. Non-oscillating tableaux are promoted through their
    oscillization, which is promoted |c_1| times and regrouped by the rotated type.
    """

    tableau = _as_tableau(tableau)
    if tableau.length == 0:
        return tableau
    signed = word_service.oscillize_signed(word_of(tableau))
    for _ in range(abs(tableau.type_vector[0])):
        signed = promote_signed(signed)
    rotated = tableau.type_vector[1:] + tableau.type_vector[:1]
    return tableau_from_word(word_service.regroup(signed, rotated))


def _theta(value: int) -> int:
    if value > 0:
        return RANK if value == 1 else value - 1
    return -1 if value == -RANK else value - 1


def promote_balance(word) -> LatticeWord:
    """
    Promotion through balance points: apply theta at j_0..j_3 and rotate left.
    """

    word = word_service.require_balanced(word)
    if not word.is_oscillating:
        raise WebValidationError('balance-point promotion needs an oscillating word')
    signed = list(word.signed())
    if not signed:
        return word
    for j in word_service.balance_points_signed(signed):
        signed[j - 1] = _theta(signed[j - 1])
    return LatticeWord.from_signed(signed[1:] + signed[:1])


def promotion_orbit(tableau) -> List[FluctuatingTableau]:
    tableau = _as_tableau(tableau)
    orbit = [tableau]
    current = promote_jdt(tableau)
    while current != tableau:
        orbit.append(current)
        current = promote_jdt(current)
    return orbit


# ----------------------------------------------------------------- evacuation

def evacuate_signed(signed: Sequence[int]) -> Tuple[int, ...]:
    current = list(signed)
    for k in range(len(current), 0, -1):
        rest, bullet, _ = _slide(current[:k])
        current = list(rest) + [bullet] + current[k:]
    return tuple(current)


def evacuate(tableau) -> FluctuatingTableau:
    tableau = _as_tableau(tableau)
    signed = word_service.oscillize_signed(word_of(tableau))
    return tableau_from_word(word_service.regroup(evacuate_signed(signed), tableau.type_vector[::-1]))


def dual_evacuate(tableau) -> FluctuatingTableau:
    """
    Dual evacuation by backward slides, realized as tau-conjugated evacuation.
    Defined for balanced words, where tau preserves lattice-ness.
    """

    tableau = _as_tableau(tableau)
    if not tableau.is_rectangular:
        raise WebValidationError('dual evacuation needs a rectangular tableau')
    tau = word_service.involution(word_of(tableau), word_service.Involution.TAU)
    flipped = evacuate(tableau_from_word(tau))
    return tableau_from_word(word_service.involution(word_of(flipped), word_service.Involution.TAU))


# ----------------------------------------------------------------- promotion permutations

def _require_rectangular_signed(tableau) -> Tuple[int, ...]:
    tableau = _as_tableau(tableau)
    if not tableau.is_rectangular:
        raise WebValidationError('promotion permutations need a rectangular tableau', {'shape': list(tableau.shape)})
    return word_service.oscillize_signed(word_of(tableau))


@lru_cache(maxsize=16384)
def promotion_perms_signed(signed: Tuple[int, ...]) -> Tuple[Tuple[int, ...], ...]:
    n = len(signed)
    perms = [[0] * n for _ in range(RANK - 1)]
    current = signed
    for b in range(1, n + 1):
        promoted, crossings = _promote_with_crossings(current)
        crossed = dict(crossings)
        for k in range(1, RANK):
            if k not in crossed:
                raise WebValidationError('bullet did not cross every row boundary', {'b': b, 'row': k})
            perms[k - 1][b - 1] = (crossed[k] + b - 2) % n + 1
        current = promoted
    return _require_bijections(perms)


def balance_point_perms_signed(signed: Tuple[int, ...]) -> Tuple[Tuple[int, ...], ...]:
    """
    Independent computation of prom_k(b) = j_k(P^{b-1}(w)) + b - 1 (mod N). When the
    first letter of P^{b-1}(w) is barred, j_k belongs to prom_{r-k} instead.
    """

    n = len(signed)
    perms = [[0] * n for _ in range(RANK - 1)]
    current = signed
    for b in range(1, n + 1):
        points = word_service.balance_points_signed(current)
        for k in range(1, RANK):
            target = RANK - k if current[0] < 0 else k
            perms[target - 1][b - 1] = (points[k] + b - 2) % n + 1
        current = promote_signed(current)
    return _require_bijections(perms)


def _require_bijections(perms: Sequence[Sequence[int]]) -> Tuple[Tuple[int, ...], ...]:
    for k, perm in enumerate(perms, start=1):
        if sorted(perm) != list(range(1, len(perm) + 1)):
            raise WebValidationError('promotion map is not a permutation', {'k': k, 'values': list(perm)})
    return tuple(tuple(p) for p in perms)


def permutation_matrix(perm: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
    matrix = np.zeros((len(perm), len(perm)), dtype=int)
    for b, target in enumerate(perm):
        matrix[b, target - 1] = 1
    return tuple(tuple(int(v) for v in row) for row in matrix)


def promotion_permutations(tableau) -> PromotionData:
    signed = _require_rectangular_signed(tableau)
    perms = promotion_perms_signed(signed)
    return PromotionData(perms=perms, matrices=tuple(permutation_matrix(p) for p in perms))


def cyclic_monotonicity_check(tableau, data: Optional[PromotionData] = None) -> bool:
    """
    Checks 0 < (prom_1(i) - i) <= (prom_2(i) - i) <= (prom_3(i) - i) mod n at
    positive boundary entries, and the mirrored chain at negative ones.
    """

    signed = _require_rectangular_signed(tableau)
    data = data or promotion_permutations(tableau)
    n = len(signed)
    for i in range(1, n + 1):
        if signed[i - 1] > 0:
            values = [(data.perm(k)[i - 1] - i) % n for k in range(1, RANK)]
        else:
            values = [(i - data.perm(k)[i - 1]) % n for k in range(1, RANK)]
        if values[0] <= 0 or any(values[k] > values[k + 1] for k in range(len(values) - 1)):
            return False
    return True


# ----------------------------------------------------------------- permutation helpers

def cycles_to_perm(cycles: Sequence[Sequence[int]], n: int) -> Tuple[int, ...]:
    perm = list(range(1, n + 1))
    for cycle in cycles:
        for position, value in enumerate(cycle):
            perm[value - 1] = cycle[(position + 1) % len(cycle)]
    return tuple(perm)


def perm_to_cycles(perm: Sequence[int]) -> List[Tuple[int, ...]]:
    if sorted(perm) != list(range(1, len(perm) + 1)):
        raise WebValidationError('not a permutation', {'values': list(perm)})
    seen = set()
    cycles = []
    for start in range(1, len(perm) + 1):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        current = perm[start - 1]
        while current != start:
            cycle.append(current)
            seen.add(current)
            current = perm[current - 1]
        cycles.append(tuple(cycle))
    return cycles


def format_cycles(perm: Sequence[int]) -> str:
    return ''.join('(' + ' '.join(str(v) for v in cycle) + ')' for cycle in perm_to_cycles(perm) if len(cycle) > 1)


def inverse(perm: Sequence[int]) -> Tuple[int, ...]:
    result = [0] * len(perm)
    for b, target in enumerate(perm, start=1):
        result[target - 1] = b
    return tuple(result)


def compose(first: Sequence[int], second: Sequence[int]) -> Tuple[int, ...]:
    """(first o second)(b) = first(second(b))."""
    return tuple(first[second[b] - 1] for b in range(len(second)))


def shift(n: int, k: int) -> Tuple[int, ...]:
    """sigma^k with sigma = (1 2 ... n)."""
    return tuple((b - 1 + k) % n + 1 for b in range(1, n + 1))


def longest_element(n: int) -> Tuple[int, ...]:
    return tuple(n + 1 - b for b in range(1, n + 1))
