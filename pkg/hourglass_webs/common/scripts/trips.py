from ..services import graph_service, serialization_service, tableau_service
from .inputs import graph_from_args


def run(args):
    graph = graph_from_args(args)
    payload = {}
    for a, perm in enumerate(graph_service.trip_perms(graph), start=1):
        payload[f'trip_{a}'] = {'one_line': list(perm), 'cycles': tableau_service.format_cycles(perm)}
    return serialization_service.write_output(payload, args.output)
