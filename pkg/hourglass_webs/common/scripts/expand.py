from ..services import invariant_service, serialization_service, word_service
from .inputs import diagram_from_args


def run(args):
    """
    The q = 1 invariant of a web as a signed sum of boundary words, with its
    leading term; --oracle also contracts the tensor network and compares.
    """

    diagram = diagram_from_args(args)
    polynomial = invariant_service.evaluate_q1(diagram, args.max_nodes)
    payload = {'terms': serialization_service.polynomial_to_list(polynomial)}
    if not polynomial.is_zero():
        word, sign = invariant_service.leading_term(diagram)
        payload['leading'] = {'word': word_service.format_word(word), 'coefficient': sign}
    if args.oracle:
        payload['oracle_agrees'] = invariant_service.tensor_oracle_q1(diagram) == polynomial
    return serialization_service.write_output(payload, args.output)
