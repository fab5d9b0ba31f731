"""
Words over the signed-subset alphabet: parsing, lattice classification, the tlex
and grevlex orders, the three involutions, descents, balance points and the
bracketing crystal operators.

Hot paths work on oscillating words given as tuples of signed integers; the
`LatticeWord` model wraps them at the service boundary.
"""

import random
from enum import Enum
from functools import lru_cache
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

from ..exceptions import WebValidationError, WordParseError
from ..model.component.letter import RANK, LatticeStatus, LatticeWord, Letter

_OVERLINE = '̄'


class Involution(str, Enum):
    TAU = 'tau'
    VARPI = 'varpi'
    EPSILON = 'epsilon'


# ----------------------------------------------------------------- parsing

def parse_word(text: str) -> LatticeWord:
    """
    Parses the word grammar: letters separated by spaces, singletons "3" / "-3",
    subsets "{1,3}" / "{-2,-4}". Runs of digits such as "1234" are consecutive
    singletons and a combining overline after a digit bars it.

    :param text: The text to parse.
    :return: The parsed word.
    """

    letters = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace() or ch == ',':
            i += 1
            continue
        if ch == '{':
            close = text.find('}', i)
            if close < 0:
                raise WordParseError('unterminated subset', text, i)
            body = text[i + 1:close]
            try:
                elements = [int(part) for part in body.replace(' ', '').split(',') if part]
                letters.append(Letter.from_elements(elements))
            except ValueError as e:
                raise WordParseError(f'invalid subset {{{body}}}: {e}', text, i)
            i = close + 1
            continue
        sign = 1
        start = i
        if ch == '-':
            sign = -1
            i += 1
            if i >= n or not text[i].isdigit():
                raise WordParseError('expected a digit after "-"', text, start)
        if not text[i].isdigit():
            raise WordParseError(f'unexpected character {text[i]!r}', text, i)
        digit = int(text[i])
        i += 1
        if i < n and text[i] == _OVERLINE:
            sign = -sign
            i += 1
        if not 1 <= digit <= RANK:
            raise WordParseError(f'entry {digit} outside 1..{RANK}', text, start)
        letters.append(Letter.single(sign * digit))
    return LatticeWord(letters=tuple(letters))


def format_word(word: LatticeWord) -> str:
    return str(word)


def as_word(word) -> LatticeWord:
    if isinstance(word, LatticeWord):
        return word
    if isinstance(word, str):
        return parse_word(word)
    return LatticeWord.from_signed(word)


def regroup(signed: Sequence[int], type_vector: Sequence[int]) -> LatticeWord:
    """Inverse of oscillization: groups consecutive entries by the given type."""

    letters = []
    position = 0
    for c in type_vector:
        block = signed[position:position + abs(c)]
        position += abs(c)
        letters.append(Letter.from_elements(block))
    if position != len(signed):
        raise WebValidationError('type does not match word length', {'type': list(type_vector)})
    return LatticeWord(letters=tuple(letters))


# ----------------------------------------------------------------- weights

def step(weight: Tuple[int, ...], letter: Letter) -> Tuple[int, ...]:
    mu = list(weight)
    for row in letter.rows:
        mu[row - 1] += letter.sign
    return tuple(mu)


def signed_step(weight: Tuple[int, ...], value: int) -> Tuple[int, ...]:
    mu = list(weight)
    mu[abs(value) - 1] += 1 if value > 0 else -1
    return tuple(mu)


def is_partition(weight: Sequence[int]) -> bool:
    return all(weight[k] >= weight[k + 1] for k in range(len(weight) - 1))


def prefix_weights(word: LatticeWord) -> List[Tuple[int, ...]]:
    weights = [(0,) * RANK]
    for letter in word:
        weights.append(step(weights[-1], letter))
    return weights


def is_lattice_word(word) -> LatticeStatus:
    word = as_word(word)
    weights = prefix_weights(word)
    if not all(is_partition(mu) for mu in weights):
        return LatticeStatus.NOT_LATTICE
    if len(set(weights[-1])) == 1:
        return LatticeStatus.BALANCED
    return LatticeStatus.LATTICE


def require_balanced(word) -> LatticeWord:
    word = as_word(word)
    status = is_lattice_word(word)
    if status != LatticeStatus.BALANCED:
        raise WebValidationError(f'word "{word}" is {status.value}, expected balanced-lattice')
    return word


def oscillize_word(word) -> LatticeWord:
    word = as_word(word)
    return LatticeWord(letters=tuple(Letter.single(e) for letter in word for e in letter.elements))


def oscillize_signed(word) -> Tuple[int, ...]:
    return tuple(e for letter in as_word(word) for e in letter.elements)


# ----------------------------------------------------------------- orders

def tilde(value: int) -> int:
    return value if value > 0 else RANK + 1 - abs(value)


def tlex_key(word) -> Tuple[int, ...]:
    if isinstance(word, (tuple, list)) and all(isinstance(v, int) for v in word):
        return tuple(tilde(v) for v in word)
    return tuple(tilde(e) for letter in as_word(word) for e in letter.elements)


def tlex_compare(first, second) -> int:
    a, b = tlex_key(first), tlex_key(second)
    return (a > b) - (a < b)


def grevlex_compare(first, second) -> int:
    """
    Lower total degree is smaller; at equal degree the tlex-greater word is grevlex-smaller.
    """

    a, b = tlex_key(first), tlex_key(second)
    if len(a) != len(b):
        return -1 if len(a) < len(b) else 1
    return (b > a) - (b < a)


# ----------------------------------------------------------------- involutions

def _complement(value: int) -> int:
    return (1 if value > 0 else -1) * (RANK + 1 - abs(value))


def involution(word, which) -> LatticeWord:
    which = Involution(which)
    word = as_word(word)
    if which == Involution.TAU:
        letters = [Letter.from_elements([-e for e in letter.elements]) for letter in reversed(word.letters)]
    elif which == Involution.VARPI:
        letters = [Letter.from_elements([varpi_value(e) for e in letter.elements]) for letter in word.letters]
    else:
        letters = [Letter.from_elements([_complement(e) for e in letter.elements]) for letter in reversed(word.letters)]
    return LatticeWord(letters=tuple(letters))


def varpi_value(value: int) -> int:
    return -_complement(value)


# ----------------------------------------------------------------- descents and balance points

def descents(word) -> set:
    signed = oscillize_signed(word)
    result = set()
    for i in range(len(signed) - 1):
        a, b = signed[i], signed[i + 1]
        if 0 < a < b or a < b < 0:
            result.add(i + 1)
    return result


def balance_points_signed(signed: Sequence[int]) -> Tuple[int, ...]:
    """
    Balance points j_0 = 1 < j_1 <= j_2 <= j_3. For a positive first letter j_k is
    the first index at or after max(j_{k-1}, 2) where rows k and k+1 of the prefix
    weight agree; for a barred first letter the rows are r-k and r-k+1.
    """

    weights = [(0,) * RANK]
    for value in signed:
        weights.append(signed_step(weights[-1], value))
    barred = bool(signed) and signed[0] < 0
    points = [1]
    for k in range(1, RANK):
        row = RANK - k if barred else k
        start = max(points[-1], 2)
        found = None
        for i in range(start, len(signed) + 1):
            mu = weights[i]
            if mu[row - 1] == mu[row]:
                found = i
                break
        if found is None:
            raise WebValidationError('word has no balance point', {'row': row})
        points.append(found)
    return tuple(points)


def balance_points(word) -> Tuple[int, ...]:
    word = require_balanced(word)
    if not word.is_oscillating:
        raise WebValidationError('balance points are defined on oscillating words')
    if len(word) == 0:
        raise WebValidationError('balance points need a nonempty word')
    return balance_points_signed(word.signed())


# ----------------------------------------------------------------- crystal operators

def _brackets(signed: Sequence[int], i: int):
    opening, closing = [], []
    stack = []
    for position, value in enumerate(signed):
        if value == i or value == -(i + 1):
            stack.append(position)
        elif value == i + 1 or value == -i:
            if stack:
                stack.pop()
            else:
                closing.append(position)
    opening = stack
    return opening, closing


def crystal_f_signed(signed: Sequence[int], i: int) -> Optional[Tuple[int, ...]]:
    opening, _ = _brackets(signed, i)
    if not opening:
        return None
    position = opening[0]
    result = list(signed)
    result[position] = i + 1 if signed[position] == i else -i
    return tuple(result)


def crystal_e_signed(signed: Sequence[int], i: int) -> Optional[Tuple[int, ...]]:
    _, closing = _brackets(signed, i)
    if not closing:
        return None
    position = closing[-1]
    result = list(signed)
    result[position] = i if signed[position] == i + 1 else -(i + 1)
    return tuple(result)


def _crystal(word, i: int, operator) -> Optional[LatticeWord]:
    if not 1 <= i < RANK:
        raise WebValidationError(f'crystal index {i} outside 1..{RANK - 1}')
    word = as_word(word)
    if not word.is_oscillating:
        raise WebValidationError('crystal operators act on oscillating words')
    result = operator(word.signed(), i)
    return None if result is None else LatticeWord.from_signed(result)


def crystal_e(word, i: int) -> Optional[LatticeWord]:
    return _crystal(word, i, crystal_e_signed)


def crystal_f(word, i: int) -> Optional[LatticeWord]:
    return _crystal(word, i, crystal_f_signed)


def crystal_string(word, i: int) -> Tuple[int, int]:
    """(number of unmatched closing brackets, number of unmatched opening brackets)."""
    opening, closing = _brackets(as_word(word).signed(), i)
    return len(closing), len(opening)


# ----------------------------------------------------------------- tableau word enumeration

def _letter_options(c: int) -> List[Tuple[int, ...]]:
    sign = 1 if c > 0 else -1
    return [tuple(sign * row for row in subset) for subset in combinations(range(1, RANK + 1), abs(c))]


def _gaps(weight: Sequence[int]) -> Tuple[int, ...]:
    return tuple(weight[k] - weight[k + 1] for k in range(RANK - 1))


def _apply_gaps(gaps: Tuple[int, ...], elements: Tuple[int, ...]) -> Optional[Tuple[int, ...]]:
    mu = [0] * RANK
    for k in range(RANK - 2, -1, -1):
        mu[k] = mu[k + 1] + gaps[k]
    for e in elements:
        mu[abs(e) - 1] += 1 if e > 0 else -1
    if not is_partition(mu):
        return None
    return _gaps(mu)


@lru_cache(maxsize=None)
def _completions(type_vector: Tuple[int, ...], position: int, gaps: Tuple[int, ...]) -> int:
    if position == len(type_vector):
        return 1 if not any(gaps) else 0
    total = 0
    for elements in _letter_options(type_vector[position]):
        following = _apply_gaps(gaps, elements)
        if following is not None:
            total += _completions(type_vector, position + 1, following)
    return total


def count_balanced_words(type_vector: Sequence[int]) -> int:
    type_vector = _check_type(type_vector)
    return _completions(type_vector, 0, (0,) * (RANK - 1))


def enumerate_balanced_words(type_vector: Sequence[int]) -> Iterable[LatticeWord]:
    """Yields every balanced lattice word of the type, in lexicographic order of entries."""

    type_vector = _check_type(type_vector)

    def extend(position, gaps, prefix):
        if position == len(type_vector):
            if not any(gaps):
                yield regroup(prefix, type_vector)
            return
        for elements in _letter_options(type_vector[position]):
            following = _apply_gaps(gaps, elements)
            if following is not None and _completions(type_vector, position + 1, following):
                yield from extend(position + 1, following, prefix + elements)

    yield from extend(0, (0,) * (RANK - 1), ())


def random_balanced_word(type_vector: Sequence[int], rng: random.Random) -> LatticeWord:
    """Samples uniformly from the balanced lattice words of the type."""

    type_vector = _check_type(type_vector)
    if count_balanced_words(type_vector) == 0:
        raise WebValidationError(f'type {list(type_vector)} has no balanced lattice words')
    gaps = (0,) * (RANK - 1)
    prefix = ()
    for position, c in enumerate(type_vector):
        weighted = []
        for elements in _letter_options(c):
            following = _apply_gaps(gaps, elements)
            if following is not None:
                count = _completions(type_vector, position + 1, following)
                if count:
                    weighted.append((count, elements, following))
        pick = rng.randrange(sum(count for count, _, _ in weighted))
        for count, elements, following in weighted:
            if pick < count:
                prefix += elements
                gaps = following
                break
            pick -= count
    return regroup(prefix, type_vector)


def _check_type(type_vector: Sequence[int]) -> Tuple[int, ...]:
    type_vector = tuple(int(c) for c in type_vector)
    for c in type_vector:
        if c == 0 or abs(c) > RANK:
            raise WebValidationError(f'type entry {c} outside +-[{RANK}]')
    return type_vector


def parse_type(text: str) -> Tuple[int, ...]:
    parts = text.replace(',', ' ').split()
    try:
        return _check_type(int(part) for part in parts)
    except ValueError as e:
        raise WebValidationError(f'invalid type "{text}": {e}')
