from ..exceptions import WebValidationError
from ..model.component.hourglass_graph import HourglassGraph
from ..model.component.invariant import TaggedWeb, TensorDiagram
from ..model.component.letter import LatticeWord
from ..services import growth_service, invariant_service, labeling_service, serialization_service, word_service
from ..utilities import log_message


def word_from_args(args) -> LatticeWord:
    if not getattr(args, 'word', None):
        raise WebValidationError('pass a word with --word')
    return word_service.parse_word(args.word)


def graph_from_args(args) -> HourglassGraph:
    """The graph of --graph FILE, or the grown graph of --word."""

    if getattr(args, 'graph', None):
        return serialization_service.read_graph_file(args.graph)
    if getattr(args, 'word', None):
        log_message('Debug', f'growing input graph from "{args.word}"')
        return growth_service.grow(word_from_args(args), args.max_nodes).graph
    raise WebValidationError('pass a graph file with --graph or a word with --word')


def web_from_args(args) -> TaggedWeb:
    if getattr(args, 'graph', None):
        return serialization_service.read_web_file(args.graph)
    graph = graph_from_args(args)
    return TaggedWeb(graph=graph, tags=labeling_service.default_tags(graph))


def diagram_from_args(args) -> TensorDiagram:
    """A web with crossings added at each --cross position, applied left to right."""

    diagram = TensorDiagram(web=web_from_args(args))
    for position in getattr(args, 'cross', None) or []:
        diagram = invariant_service.add_crossing(diagram, position)
    return diagram
