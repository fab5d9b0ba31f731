"""
JSON mirrors of the domain objects. Graph files look like

    {"boundary": [{"color": 1}, ...], "vertices": [{"color": -1}, ...],
     "edges": [{"u": 0, "v": 4, "mult": 1}, ...],
     "rotation": [[[edge, strand], ...], ...]}

with boundary vertices numbered first. Web files add "tags" (one slot or null
per vertex). Six-vertex files store oriented edges as {"tail", "head"}.
"""

from typing import Any, Dict, Optional

from ..exceptions import WebValidationError
from ..model.component.application import AsmClassReport, CspReport, PlanePartitionReport
from ..model.component.growth import GrowthResult
from ..model.component.hourglass_graph import CROSSING, HourglassGraph, MoveClass, MoveInstance
from ..model.component.invariant import TaggedWeb, WebExpansion, WebPolynomial
from ..model.component.labeling import ProperLabeling, TagAssignment, word_from_codes
from ..model.component.six_vertex import SixVertexConfig
from ..model.component.tableau import FluctuatingTableau, PromotionData
from ..utilities import dump_json, log_message, read_json_file
from . import graph_service, labeling_service, tableau_service, word_service


def _require(payload: Dict[str, Any], *keys: str) -> None:
    if not isinstance(payload, dict):
        raise WebValidationError('expected a JSON object', {'found': type(payload).__name__})
    missing = [key for key in keys if key not in payload]
    if missing:
        raise WebValidationError(f'missing keys {missing}', {'keys': sorted(payload)})


# ----------------------------------------------------------------- graphs

def graph_to_dict(graph: HourglassGraph) -> Dict[str, Any]:
    return {
        'boundary': [{'color': graph.colors[b]} for b in range(graph.n_boundary)],
        'vertices': [{'color': graph.colors[v]} for v in graph.internal_vertices],
        'edges': [{'u': u, 'v': v, 'mult': m} for u, v, m in graph.edges],
        'rotation': [[[edge, strand] for edge, strand in ring] for ring in graph.rotation],
    }


def graph_from_dict(payload: Dict[str, Any], validate: bool = True) -> HourglassGraph:
    """
    :raises WebValidationError: for malformed payloads, and for invalid graphs when validate is set.
    """

    _require(payload, 'boundary', 'vertices', 'edges', 'rotation')
    try:
        colors = tuple(int(item['color']) for item in payload['boundary']) + \
            tuple(int(item['color']) for item in payload['vertices'])
        graph = HourglassGraph(
            n_boundary=len(payload['boundary']),
            colors=colors,
            edges=tuple((int(e['u']), int(e['v']), int(e['mult'])) for e in payload['edges']),
            rotation=tuple(tuple((int(edge), int(strand)) for edge, strand in ring) for ring in payload['rotation']),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise WebValidationError(f'malformed graph: {e}')
    if validate:
        graph_service.require_valid(graph, allow_crossings=CROSSING in colors)
    return graph


def web_to_dict(web: TaggedWeb) -> Dict[str, Any]:
    return {**graph_to_dict(web.graph), 'tags': list(web.tags.slots)}


def web_from_dict(payload: Dict[str, Any]) -> TaggedWeb:
    """Tags default to the fully reduced tag rule when the file has none."""

    graph = graph_from_dict(payload)
    if payload.get('tags') is None:
        if graph.crossings:
            raise WebValidationError('diagrams with crossings need explicit tags')
        return TaggedWeb(graph=graph, tags=labeling_service.default_tags(graph))
    slots = tuple(None if slot is None else int(slot) for slot in payload['tags'])
    if len(slots) != graph.vertex_count:
        raise WebValidationError('one tag entry per vertex expected',
                                 {'tags': len(slots), 'vertices': graph.vertex_count})
    return TaggedWeb(graph=graph, tags=TagAssignment(slots=slots))


def read_graph_file(file_path: str) -> HourglassGraph:
    log_message('Debug', f'reading graph from {file_path}')
    return graph_from_dict(read_json_file(file_path))


def read_web_file(file_path: str) -> TaggedWeb:
    log_message('Debug', f'reading web from {file_path}')
    return web_from_dict(read_json_file(file_path))


# ----------------------------------------------------------------- six-vertex

def config_to_dict(config: SixVertexConfig) -> Dict[str, Any]:
    return {
        'boundary': config.n_boundary,
        'edges': [{'tail': tail, 'head': head} for tail, head in config.edges],
        'rotation': [list(ring) for ring in config.rotation],
        'kinds': [config.kind(v) for v in config.internal_vertices],
    }


def config_from_dict(payload: Dict[str, Any]) -> SixVertexConfig:
    _require(payload, 'boundary', 'edges', 'rotation')
    try:
        return SixVertexConfig(
            n_boundary=int(payload['boundary']),
            edges=tuple((int(e['tail']), int(e['head'])) for e in payload['edges']),
            rotation=tuple(tuple(int(edge) for edge in ring) for ring in payload['rotation']),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise WebValidationError(f'malformed six-vertex configuration: {e}')


def read_config_file(file_path: str) -> SixVertexConfig:
    return config_from_dict(read_json_file(file_path))


# ----------------------------------------------------------------- results

def labeling_to_list(labeling: ProperLabeling):
    return [list(label) for label in labeling.labels()]


def tableau_to_dict(tableau: FluctuatingTableau) -> Dict[str, Any]:
    return {
        'word': word_service.format_word(tableau_service.word_of(tableau)),
        'type': list(tableau.type_vector),
        'shapes': [list(shape) for shape in tableau.shapes],
        'rectangular': tableau.is_rectangular,
    }


def promotion_to_dict(data: PromotionData) -> Dict[str, Any]:
    return {f'prom_{i + 1}': {'one_line': list(perm), 'cycles': tableau_service.format_cycles(perm)}
            for i, perm in enumerate(data.perms)}


def growth_to_dict(result: GrowthResult, trace: bool = False) -> Dict[str, Any]:
    payload = {
        'graph': graph_to_dict(result.graph),
        'labeling': labeling_to_list(result.labeling),
    }
    if trace:
        payload['trace'] = result.trace.rule_sequence()
    return payload


def move_to_dict(move: MoveInstance) -> Dict[str, Any]:
    return {'kind': move.kind, 'vertices': list(move.vertices), 'parameter': list(move.parameter),
            'clockwise': move.clockwise}


def move_class_to_dict(klass: MoveClass, graphs: bool = False) -> Dict[str, Any]:
    payload = {
        'size': len(klass),
        'keys': list(klass.keys),
        'links': [{'from': a, 'to': b, 'kind': kind, 'up': up} for a, b, kind, up in klass.links],
    }
    if graphs:
        payload['members'] = [graph_to_dict(member) for member in klass.members]
    return payload


def polynomial_to_list(polynomial: WebPolynomial):
    return [{'word': str(word_from_codes(codes)), 'coefficient': c} for codes, c in polynomial.terms]


def expansion_to_dict(expansion: WebExpansion, graphs: bool = False) -> Dict[str, Any]:
    terms = []
    for (key, poly), graph in zip(expansion.terms, expansion.graphs):
        term = {'key': key, 'coefficient': str(poly), 'laurent': [[e, c] for e, c in poly.terms],
                'word': word_service.format_word(labeling_service.sep_word(graph)) if graph.vertex_count else ''}
        if graphs:
            term['graph'] = graph_to_dict(graph)
        terms.append(term)
    return {'terms': terms}


def asm_report_to_dict(report: AsmClassReport) -> Dict[str, Any]:
    return {
        'n': report.n,
        'size': len(report),
        'matrices': [[list(row) for row in matrix] for matrix in report.matrices],
        'covers': [list(pair) for pair in report.covers],
        'benzene_faces': report.benzene_faces,
    }


def pp_report_to_dict(report: PlanePartitionReport) -> Dict[str, Any]:
    return {
        'box': [report.a, report.b, report.c],
        'size': len(report),
        'rank_sizes': list(report.rank_sizes),
        'ranks': list(report.ranks),
        'covers': [list(pair) for pair in report.covers],
        'join_irreducibles': list(report.join_irreducibles),
        'ideals': [list(ideal) for ideal in report.ideals],
        'square_moves': report.square_moves,
    }


def csp_report_to_dict(report: CspReport) -> Dict[str, Any]:
    return {
        'k': report.k,
        'orbits': report.orbits,
        'holds': report.holds,
        'rows': [row.to_dict() for row in report.rows],
    }


def write_output(payload, output_path: Optional[str] = None) -> str:
    """Writes JSON (sorted keys, two-space indent) to a file or stdout and returns the text."""

    text = payload if isinstance(payload, str) else dump_json(payload)
    if output_path:
        with open(output_path, 'w') as file:
            file.write(text + '\n')
        log_message('Info', f'wrote {output_path}')
    else:
        print(text)
    return text
