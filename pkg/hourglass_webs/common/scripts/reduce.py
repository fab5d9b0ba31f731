from ..services import serialization_service, skein_service
from .inputs import diagram_from_args


def run(args):
    expansion = skein_service.reduce_to_basis(diagram_from_args(args), args.max_nodes, args.seed)
    return serialization_service.write_output(serialization_service.expansion_to_dict(expansion, graphs=args.graphs),
                                              args.output)
