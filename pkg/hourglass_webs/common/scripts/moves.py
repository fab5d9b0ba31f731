from ..exceptions import WebValidationError
from ..services import move_service, serialization_service
from .inputs import graph_from_args


def run(args):
    """Lists the applicable moves, or applies the one at --apply and writes the result."""

    graph = graph_from_args(args)
    moves = move_service.find_moves(graph, include_contractions=True,
                                    include_uncontractions=args.uncontractions)
    if args.apply is None:
        return serialization_service.write_output([serialization_service.move_to_dict(m) for m in moves], args.output)
    if not 0 <= args.apply < len(moves):
        raise WebValidationError(f'no move {args.apply}: {len(moves)} moves found')
    result = move_service.apply_move(graph, moves[args.apply])
    return serialization_service.write_output(serialization_service.graph_to_dict(result), args.output)
