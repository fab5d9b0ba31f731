from ..services import move_service, serialization_service
from .inputs import graph_from_args


def run(args):
    top = move_service.top_element(graph_from_args(args), args.max_nodes)
    return serialization_service.write_output(serialization_service.graph_to_dict(top), args.output)
