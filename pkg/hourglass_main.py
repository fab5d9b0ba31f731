import argparse
import os
import sys

from hourglass_webs.common.exceptions import HourglassError
from hourglass_webs.common.scripts import (asm_class, basis, check_reduced, csp_check, expand, grow_web, move_class,
                                           moves, pp_class, promote, reduce, render, sep_word, tableau_of, top, trips)
from hourglass_webs.common.utilities import log_message

COMMANDS = {
    'grow': grow_web,
    'tableau-of': tableau_of,
    'sep-word': sep_word,
    'trips': trips,
    'promote': promote,
    'check-reduced': check_reduced,
    'moves': moves,
    'move-class': move_class,
    'top': top,
    'expand': expand,
    'reduce': reduce,
    'basis': basis,
    'asm-class': asm_class,
    'pp-class': pp_class,
    'csp-check': csp_check,
    'render': render,
}


def _graph_inputs(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--graph', help='Graph JSON file')
    parser.add_argument('--word', help='Balanced lattice word; its grown graph is used')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='hourglass', description='Hourglass plabic graphs and SL4 webs')
    parser.add_argument('--max-nodes', type=int, help='Cap on search sizes',
                        default=os.environ.get('HOURGLASS_MAX_NODES'))
    parser.add_argument('--config', help='Engine configuration file',
                        default=os.environ.get('HOURGLASS_CONFIG_PATH'))
    parser.add_argument('--output', help='Write the result to this file instead of stdout')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('grow', help='Grow a fully reduced graph from a balanced lattice word')
    p.add_argument('--word', required=True)
    p.add_argument('--seed', type=int, help='Randomized growth with this seed')
    p.add_argument('--trace', action='store_true', help='Print the rule sequence')

    p = sub.add_parser('tableau-of', help='Fluctuating tableau of a graph')
    _graph_inputs(p)
    p.add_argument('--cells', action='store_true', help='Print the cell picture')

    p = sub.add_parser('sep-word', help='Separation word of a graph')
    _graph_inputs(p)
    p.add_argument('--labels', action='store_true', help='Include the separation labeling')

    p = sub.add_parser('trips', help='Trip permutations of a graph')
    _graph_inputs(p)

    p = sub.add_parser('promote', help='Promotion of a balanced lattice word')
    p.add_argument('--word', required=True)
    p.add_argument('--times', type=int, default=1)
    p.add_argument('--method', choices=['jdt', 'balance'], default='jdt')
    p.add_argument('--perms', action='store_true', help='Print the promotion permutations')

    p = sub.add_parser('check-reduced', help='Check that a graph is fully reduced')
    _graph_inputs(p)

    p = sub.add_parser('moves', help='List or apply moves')
    _graph_inputs(p)
    p.add_argument('--apply', type=int, help='Index of the move to apply')
    p.add_argument('--uncontractions', action='store_true')

    p = sub.add_parser('move-class', help='Move-equivalence class of a graph')
    _graph_inputs(p)
    p.add_argument('--members', action='store_true', help='Include every member graph')

    p = sub.add_parser('top', help='Top fully reduced graph of the class')
    _graph_inputs(p)

    for name, help_text in (('expand', 'Web invariant at q = 1'), ('reduce', 'Expansion in the web basis')):
        p = sub.add_parser(name, help=help_text)
        _graph_inputs(p)
        p.add_argument('--cross', type=int, nargs='*', help='Cross the boundary strands at these positions')
        if name == 'expand':
            p.add_argument('--oracle', action='store_true', help='Compare with the tensor contraction')
        else:
            p.add_argument('--seed', type=int, help='Randomize the rewrite order')
            p.add_argument('--graphs', action='store_true')

    p = sub.add_parser('basis', help='Top fully reduced web basis of a type')
    p.add_argument('--type', required=True, help='Type vector such as "1 1 -2 2"')
    p.add_argument('--graphs', action='store_true')

    p = sub.add_parser('asm-class', help='Alternating sign matrices from the superstandard class')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--table', action='store_true')

    p = sub.add_parser('pp-class', help='Plane partitions from the box web class')
    p.add_argument('--box', type=int, nargs=3, required=True, metavar=('A', 'B', 'C'))
    p.add_argument('--table', action='store_true')

    p = sub.add_parser('csp-check', help='Cyclic sieving for 4 x k rectangles')
    p.add_argument('--k', type=int, required=True)
    p.add_argument('--table', action='store_true')

    p = sub.add_parser('render', help='SVG or Graphviz drawing')
    _graph_inputs(p)
    p.add_argument('--six-vertex', help='Six-vertex configuration JSON file')
    p.add_argument('--format', choices=['svg', 'dot'], default='svg')
    p.add_argument('--trips', type=int, nargs='*', choices=[1, 2, 3])
    p.add_argument('--start', type=int, default=1, help='Boundary vertex the trip overlays start from')
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.max_nodes is not None:
        args.max_nodes = int(args.max_nodes)
    if args.config:
        os.environ['HOURGLASS_CONFIG_PATH'] = args.config
    try:
        COMMANDS[args.command].run(args)
    except HourglassError as e:
        log_message('Error', f'{args.command} failed: {e.message}', exception=e, context=e.context)
        return e.exit_code
    except Exception as e:
        log_message('Error', f'{args.command} failed unexpectedly', exception=e)
        return 1
    return 0


if __name__ == '__main__':
    sys.exit(main())
