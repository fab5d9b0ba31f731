from ..exceptions import WebValidationError
from ..services import graph_service, move_service, serialization_service
from .inputs import graph_from_args


def run(args):
    """Writes the reducedness report; a graph that is not fully reduced is a validation failure."""

    graph = graph_from_args(args)
    graph_service.require_valid(graph)
    contracted = graph_service.is_contracted(graph)
    monotonic = move_service.is_monotonic(graph)
    payload = {'contracted': contracted, 'monotonic': monotonic, 'fully_reduced': contracted and monotonic}
    serialization_service.write_output(payload, args.output)
    if not monotonic:
        raise WebValidationError('graph is not fully reduced: trip strands are not monotonic')
    if not contracted:
        raise WebValidationError('graph is not fully reduced: it is not contracted')
    return payload
