from ..services import labeling_service, serialization_service, word_service
from .inputs import graph_from_args


def run(args):
    graph = graph_from_args(args)
    labeling = labeling_service.separation_labeling(graph)
    word = labeling_service.boundary_word(graph, labeling)
    if not args.labels:
        return serialization_service.write_output(word_service.format_word(word), args.output)
    payload = {
        'word': word_service.format_word(word),
        'labeling': serialization_service.labeling_to_list(labeling),
        'from_trips': word_service.format_word(labeling_service.boundary_sep_from_trips(graph)),
    }
    return serialization_service.write_output(payload, args.output)
