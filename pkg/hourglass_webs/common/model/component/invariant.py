from typing import Dict, Iterable, Optional, Tuple

from pydantic import Field
from pydantic.dataclasses import dataclass

from ..web_model import WebModel
from .hourglass_graph import HourglassGraph
from .labeling import TagAssignment, word_from_codes


@dataclass(frozen=True)
class LaurentPoly(WebModel):
    """
    An integer Laurent polynomial in q.

    Attributes:
        terms (Tuple[Tuple[int, int], ...]): (exponent, coefficient) pairs, exponents descending, no zero coefficients.
    """

    terms: Tuple[Tuple[int, int], ...] = ()

    @classmethod
    def of(cls, coefficients: Dict[int, int]) -> 'LaurentPoly':
        return cls(terms=tuple(sorted(((e, c) for e, c in coefficients.items() if c), reverse=True)))

    @classmethod
    def constant(cls, value: int) -> 'LaurentPoly':
        return cls.of({0: value})

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> 'LaurentPoly':
        return cls.of({exponent: coefficient})

    def as_dict(self) -> Dict[int, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def at_one(self) -> int:
        return sum(c for _, c in self.terms)

    def __add__(self, other: 'LaurentPoly') -> 'LaurentPoly':
        total = self.as_dict()
        for e, c in other.terms:
            total[e] = total.get(e, 0) + c
        return LaurentPoly.of(total)

    def __neg__(self) -> 'LaurentPoly':
        return LaurentPoly(terms=tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: 'LaurentPoly') -> 'LaurentPoly':
        return self + (-other)

    def __mul__(self, other) -> 'LaurentPoly':
        if isinstance(other, int):
            return LaurentPoly.of({e: c * other for e, c in self.terms})
        total: Dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                total[e1 + e2] = total.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly.of(total)

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self.terms:
            return '0'
        parts = []
        for e, c in self.terms:
            body = 'q' if e == 1 else f'q^{e}'
            if e == 0:
                text = str(abs(c))
            else:
                text = body if abs(c) == 1 else f'{abs(c)}{body}'
            if not parts:
                parts.append(text if c > 0 else f'-{text}')
            else:
                parts.append(f'{"+" if c > 0 else "-"} {text}')
        return ' '.join(parts)


@dataclass(frozen=True)
class WebPolynomial(WebModel):
    """
    The q = 1 web invariant: a signed sum of boundary words.

    Attributes:
        terms (Tuple[Tuple[Tuple[int, ...], int], ...]): (letter codes of a boundary word, coefficient), sorted by codes.
    """

    terms: Tuple[Tuple[Tuple[int, ...], int], ...] = ()

    @classmethod
    def of(cls, coefficients: Dict[Tuple[int, ...], int]) -> 'WebPolynomial':
        return cls(terms=tuple(sorted((tuple(k), c) for k, c in coefficients.items() if c)))

    def as_dict(self) -> Dict[Tuple[int, ...], int]:
        return dict(self.terms)

    def coefficient(self, codes: Iterable[int]) -> int:
        return self.as_dict().get(tuple(codes), 0)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: 'WebPolynomial') -> 'WebPolynomial':
        total = self.as_dict()
        for k, c in other.terms:
            total[k] = total.get(k, 0) + c
        return WebPolynomial.of(total)

    def __mul__(self, factor: int) -> 'WebPolynomial':
        return WebPolynomial.of({k: c * factor for k, c in self.terms})

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self.terms:
            return '0'
        return '\n'.join(f'{c:+d} [{word_from_codes(k)}]' for k, c in self.terms)


@dataclass(frozen=True)
class TaggedWeb(WebModel):
    """
    A web: an hourglass plabic graph, possibly with crossings, and a tag slot
    at every internal vertex that is not a crossing.
    """

    graph: HourglassGraph
    tags: TagAssignment


@dataclass(frozen=True)
class TensorDiagram(WebModel):
    """
    A tagged web whose crossings (color 0 vertices, strands going straight
    across) join simple edges only.
    """

    web: TaggedWeb

    @property
    def graph(self) -> HourglassGraph:
        return self.web.graph

    @property
    def tags(self) -> TagAssignment:
        return self.web.tags

    @property
    def crossings(self) -> Tuple[int, ...]:
        return self.web.graph.crossings


@dataclass(frozen=True)
class SkeinSite(WebModel):
    """
    Attributes:
        kind (str): uncross, closed, digon, contraction, four_cycle or benzene.
        vertices (Tuple[int, ...]): Internal vertices of the region that is rewritten.
    """

    kind: str
    vertices: Tuple[int, ...] = ()


@dataclass(frozen=True)
class SkeinCombination(WebModel):
    """A formal sum of webs with Laurent coefficients."""

    terms: Tuple[Tuple[LaurentPoly, TaggedWeb], ...] = ()
    site: Optional[SkeinSite] = None

    def __len__(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class WebExpansion(WebModel):
    """
    Coefficients of a web in the top fully reduced basis.

    Attributes:
        terms (Tuple[Tuple[str, LaurentPoly], ...]): (canonical key of a basis web, coefficient), sorted by key.
        graphs (Tuple[HourglassGraph, ...]): The basis web behind each key, in canonical form.
    """

    terms: Tuple[Tuple[str, LaurentPoly], ...] = ()
    graphs: Tuple[HourglassGraph, ...] = Field(default_factory=tuple)

    def as_dict(self) -> Dict[str, LaurentPoly]:
        return dict(self.terms)

    def coefficient_vector(self) -> Dict[str, Tuple[Tuple[int, int], ...]]:
        return {key: poly.terms for key, poly in self.terms}

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return '0'
        return '\n'.join(f'({poly}) {key}' for key, poly in self.terms)
