from ..services import apps_service, invariant_service, labeling_service, serialization_service, word_service


def run(args):
    type_vector = word_service.parse_type(args.type)
    webs = invariant_service.basis(type_vector)
    payload = {
        'type': list(type_vector),
        'dimension': apps_service.dim_invariant_space(type_vector),
        'webs': [],
    }
    for web in webs:
        entry = {'word': word_service.format_word(labeling_service.sep_word(web.graph))}
        if args.graphs:
            entry['web'] = serialization_service.web_to_dict(web)
        payload['webs'].append(entry)
    return serialization_service.write_output(payload, args.output)
