from ..services import render_service, serialization_service
from .inputs import graph_from_args


def run(args):
    """Writes SVG (or Graphviz text with --format dot) of a graph or of a six-vertex file."""

    if args.six_vertex:
        item = serialization_service.read_config_file(args.six_vertex)
    else:
        item = graph_from_args(args)
    text = render_service.render(item, output_format=args.format, trips=args.trips or (), start=args.start)
    return serialization_service.write_output(text, args.output)
