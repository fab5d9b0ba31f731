from ..services import move_service, serialization_service
from .inputs import graph_from_args


def run(args):
    klass = move_service.move_class(graph_from_args(args), args.max_nodes)
    return serialization_service.write_output(serialization_service.move_class_to_dict(klass, graphs=args.members),
                                              args.output)
