from ..services import labeling_service, serialization_service, tableau_service
from .inputs import graph_from_args


def run(args):
    tableau = labeling_service.tableau_of(graph_from_args(args))
    if args.cells:
        return serialization_service.write_output(tableau_service.cell_diagram(tableau), args.output)
    return serialization_service.write_output(serialization_service.tableau_to_dict(tableau), args.output)
