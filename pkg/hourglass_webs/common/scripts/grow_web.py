from ..services import growth_service, serialization_service
from ..utilities import load_engine_config, log_message
from .inputs import word_from_args


def run(args):
    """Grows the word, deterministically or with --seed, and writes graph, labeling and trace."""

    word = word_from_args(args)
    seed = args.seed
    if seed is None and load_engine_config().get('growth_strategy') == 'randomized':
        seed = 0
    if seed is not None:
        log_message('Info', f'randomized growth with seed {seed}')
        result = growth_service.randomized_grow(word, seed, args.max_nodes)
    else:
        result = growth_service.grow(word, args.max_nodes)
    if args.trace:
        text = '\n'.join(result.trace.rule_sequence())
        return serialization_service.write_output(text, args.output)
    return serialization_service.write_output(serialization_service.growth_to_dict(result, trace=True), args.output)
