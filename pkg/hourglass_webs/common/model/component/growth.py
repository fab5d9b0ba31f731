from typing import List, Optional, Tuple

from pydantic.dataclasses import dataclass

from ..web_model import WebModel
from .hourglass_graph import HourglassGraph
from .labeling import ProperLabeling
from .six_vertex import SixVertexConfig

LEFT = 'left'
RIGHT = 'right'


def _letters(values: Tuple[int, ...]) -> str:
    return ' '.join(str(v) for v in values) if values else '()'


@dataclass(frozen=True)
class GrowthRule(WebModel):
    """
    A rewrite of two adjacent dangling strands: an end cap joins them, a
    crossing rule sends them through an X vertex and relabels the strands below.
    Witness strands sit next to the crossing on one side and are never rewritten.

    Attributes:
        top (Tuple[int, int]): Signed labels read on the two strands above.
        bottom (Tuple[int, ...]): Signed labels below; empty for an end cap.
        vertex (Optional[str]): sink, source or transmit for crossing rules.
        index (int): Position in the rule table.
        family (str): Name of the symmetry family the rule belongs to.
        side (Optional[str]): left or right when the rule needs a witness.
        witnesses (Tuple[int, ...]): Letters accepted as the terminal witness.
        run (Tuple[int, ...]): Letters a long rule lets between the crossing and
            its terminal witness; empty for short rules.
    """

    top: Tuple[int, int]
    bottom: Tuple[int, ...] = ()
    vertex: Optional[str] = None
    index: int = 0
    family: str = ''
    side: Optional[str] = None
    witnesses: Tuple[int, ...] = ()
    run: Tuple[int, ...] = ()

    @property
    def is_cap(self) -> bool:
        return not self.bottom

    @property
    def is_long(self) -> bool:
        return bool(self.run)

    def _context(self) -> str:
        witness = '|'.join(str(v) for v in self.witnesses)
        if self.run:
            return f'({"|".join(str(v) for v in self.run)})* ({witness})'
        return f'({witness})'

    def describe(self) -> str:
        top, bottom = _letters(self.top), _letters(self.bottom)
        if self.side == LEFT:
            return f'{self._context()} {top} -> {bottom}'
        if self.side == RIGHT:
            return f'{top} {self._context()} -> {bottom}'
        return f'{top} -> {bottom}'


@dataclass(frozen=True)
class GrowthStep(WebModel):
    word: Tuple[int, ...]
    rule: GrowthRule
    position: int

    def describe(self) -> str:
        return f'{self.rule.describe()} at {self.position + 1}'


@dataclass(frozen=True)
class GrowthTrace(WebModel):
    """
    The rewrites applied by a growth run, from the oscillized input word down
    to the empty word.
    """

    steps: Tuple[GrowthStep, ...] = ()

    def rule_sequence(self) -> List[str]:
        return [step.describe() for step in self.steps]

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class GrowthResult(WebModel):
    """
    Attributes:
        graph (HourglassGraph): The contracted fully reduced output graph.
        labeling (ProperLabeling): Its growth labeling.
        trace (GrowthTrace): The rule sequence.
        diagram (SixVertexConfig): The linearized six-vertex diagram built by the rules.
        oscillating_graph (HourglassGraph): phi_inverse of the diagram, before claws are merged.
    """

    graph: HourglassGraph
    labeling: ProperLabeling
    trace: GrowthTrace
    diagram: SixVertexConfig
    oscillating_graph: Optional[HourglassGraph] = None
