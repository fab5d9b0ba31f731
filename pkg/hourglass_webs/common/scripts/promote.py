from ..services import serialization_service, tableau_service, word_service
from ..utilities import log_message
from .inputs import word_from_args


def run(args):
    """
    Promotes the word --times times, by sliding (jdt) or through balance
    points; --perms writes the promotion permutations instead.
    """

    word = word_service.require_balanced(word_from_args(args))
    if args.perms:
        data = tableau_service.promotion_permutations(tableau_service.tableau_from_word(word))
        return serialization_service.write_output(serialization_service.promotion_to_dict(data), args.output)
    log_message('Debug', f'promoting {args.times} times by {args.method}')
    for _ in range(args.times):
        if args.method == 'balance':
            word = tableau_service.promote_balance(word)
        else:
            word = tableau_service.word_of(tableau_service.promote_jdt(tableau_service.tableau_from_word(word)))
    return serialization_service.write_output(word_service.format_word(word), args.output)
