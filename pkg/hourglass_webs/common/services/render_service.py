"""
Drawings of hourglass plabic graphs and six-vertex configurations. Boundary
vertices sit clockwise on a circle starting at the top; internal vertices take
the Tutte barycentric embedding (each at the average of its neighbours).
Components that do not reach the boundary fall back to a circular layering by
breadth-first distance.
"""

import logging
import math
from collections import deque
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..model.component.hourglass_graph import BLACK, CROSSING, WHITE, HourglassGraph
from ..model.component.six_vertex import SINK, SOURCE, SixVertexConfig
from ..utilities import load_engine_config, log_message
from . import graph_service

logger = logging.getLogger(__name__)

Point = Tuple[float, float]

_FILL = {BLACK: '#000000', WHITE: '#ffffff', CROSSING: 'none'}
_KIND_FILL = {SINK: '#ffffff', SOURCE: '#000000'}


def _render_settings(config: dict = None) -> dict:
    return (config or load_engine_config())['render']


def _neighbours(vertex_count: int, pairs: Sequence[Tuple[int, int]]) -> List[List[int]]:
    adjacent: List[List[int]] = [[] for _ in range(vertex_count)]
    for u, v in pairs:
        if u != v:
            adjacent[u].append(v)
            adjacent[v].append(u)
    return adjacent


def _fallback(vertex_count: int, n_boundary: int, adjacent: List[List[int]], unplaced: Sequence[int]) -> Dict[int, Point]:
    logger.debug('tutte embedding unavailable for %d vertices, using circular layering', len(unplaced))
    depth = {}
    queue = deque()
    for b in range(n_boundary):
        depth[b] = 0
        queue.append(b)
    while queue:
        x = queue.popleft()
        for y in adjacent[x]:
            if y not in depth:
                depth[y] = depth[x] + 1
                queue.append(y)
    deepest = max(depth.values(), default=0) + 1
    rings: Dict[int, List[int]] = {}
    for v in unplaced:
        rings.setdefault(depth.get(v, deepest), []).append(v)
    placed = {}
    for level, members in rings.items():
        radius = max(0.0, 1.0 - level / (deepest + 1))
        for i, v in enumerate(sorted(members)):
            angle = 2 * math.pi * i / len(members)
            placed[v] = (radius * math.sin(angle), -radius * math.cos(angle))
    return placed


def layout(vertex_count: int, n_boundary: int, pairs: Sequence[Tuple[int, int]]) -> np.ndarray:
    """Unit-disk coordinates per vertex: boundary on the circle, internal vertices by Tutte's linear system."""

    positions = np.zeros((vertex_count, 2))
    for b in range(n_boundary):
        angle = 2 * math.pi * b / max(n_boundary, 1)
        positions[b] = (math.sin(angle), -math.cos(angle))
    internal = list(range(n_boundary, vertex_count))
    if not internal:
        return positions
    adjacent = _neighbours(vertex_count, pairs)
    index = {v: i for i, v in enumerate(internal)}
    laplacian = np.zeros((len(internal), len(internal)))
    rhs = np.zeros((len(internal), 2))
    for v in internal:
        row = index[v]
        laplacian[row, row] = len(adjacent[v])
        for u in adjacent[v]:
            if u < n_boundary:
                rhs[row] += positions[u]
            else:
                laplacian[row, index[u]] -= 1
    try:
        positions[n_boundary:] = np.linalg.solve(laplacian, rhs)
    except np.linalg.LinAlgError:
        for v, point in _fallback(vertex_count, n_boundary, adjacent, internal).items():
            positions[v] = point
    return positions


def graph_layout(graph: HourglassGraph) -> np.ndarray:
    return layout(graph.vertex_count, graph.n_boundary, [(u, v) for u, v, _ in graph.edges])


def _scale(positions: np.ndarray, settings: dict) -> np.ndarray:
    radius = min(settings['width'], settings['height']) / 2 - settings['margin']
    centre = np.array([settings['width'] / 2, settings['height'] / 2])
    return positions * radius + centre


def _fmt(value: float) -> str:
    text = f'{value:.2f}'
    return '0.00' if text == '-0.00' else text


def _line(a: Point, b: Point, stroke: str = '#000000', width: float = 2.0, extra: str = '') -> str:
    return (f'<line x1="{_fmt(a[0])}" y1="{_fmt(a[1])}" x2="{_fmt(b[0])}" y2="{_fmt(b[1])}" '
            f'stroke="{stroke}" stroke-width="{width}"{extra}/>')


def _strands(a: np.ndarray, b: np.ndarray, multiplicity: int, spacing: float = 4.0) -> List[Tuple[Point, Point]]:
    """An m-hourglass as m segments offset on one side and mirrored on the other, so they twist once."""

    direction = b - a
    length = float(np.hypot(*direction)) or 1.0
    normal = np.array([-direction[1], direction[0]]) / length
    segments = []
    for k in range(multiplicity):
        offset = (k - (multiplicity - 1) / 2) * spacing * normal
        segments.append((tuple(a + offset), tuple(b - offset)))
    return segments


def _svg_document(settings: dict, body: List[str]) -> str:
    width, height = settings['width'], settings['height']
    radius = min(width, height) / 2 - settings['margin']
    header = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<circle cx="{_fmt(width / 2)}" cy="{_fmt(height / 2)}" r="{_fmt(radius)}" fill="none" stroke="#999999" stroke-width="1"/>',
    ]
    return '\n'.join(header + body + ['</svg>'])


def _vertex_marks(points: np.ndarray, fills: Sequence[str], n_boundary: int) -> List[str]:
    marks = []
    for v, (x, y) in enumerate(points):
        if fills[v] == 'none':
            continue
        radius = 5 if v < n_boundary else 7
        marks.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{radius}" fill="{fills[v]}" stroke="#000000" stroke-width="1.5"/>')
    for b in range(n_boundary):
        x, y = points[b]
        marks.append(f'<text x="{_fmt(x)}" y="{_fmt(y - 10)}" font-size="12" text-anchor="middle">{b + 1}</text>')
    return marks


def _trip_overlay(graph: HourglassGraph, points: np.ndarray, trips: Sequence[int], start: int, colors: Sequence[str]) -> List[str]:
    if not graph.is_oscillating:
        log_message('Warning', 'trip overlays are drawn on oscillating graphs only')
        return []
    overlay = []
    for a in trips:
        path = graph_service.walk_strand(graph, start - 1, a)
        vertices = [path.hops[0][1]] + [head for _, _, head in path.hops]
        shift = (a - 2) * 3.0
        coordinates = ' '.join(f'{_fmt(points[v][0] + shift)},{_fmt(points[v][1] + shift)}' for v in vertices)
        overlay.append(f'<polyline points="{coordinates}" fill="none" stroke="{colors[(a - 1) % len(colors)]}" '
                       f'stroke-width="3" stroke-opacity="0.7"/>')
    return overlay


def render_graph_svg(graph: HourglassGraph, trips: Sequence[int] = (), start: int = 1, config: dict = None) -> str:
    """
    SVG of an hourglass plabic graph. Hourglasses are drawn as twisted bundles;
    trips lists the a in 1..3 whose strand from b_start is overlaid.
    """

    settings = _render_settings(config)
    points = _scale(graph_layout(graph), settings)
    body = []
    for u, v, m in graph.edges:
        for a, b in _strands(points[u], points[v], m):
            body.append(_line(a, b))
    if trips:
        body += _trip_overlay(graph, points, trips, start, settings['trip_colors'])
    body += _vertex_marks(points, [_FILL[c] for c in graph.colors], graph.n_boundary)
    return _svg_document(settings, body)


def render_config_svg(config: SixVertexConfig, settings_config: dict = None) -> str:
    """SVG of a six-vertex configuration: arrows on edges, sinks white, sources black, transmitters grey."""

    settings = _render_settings(settings_config)
    points = _scale(layout(config.vertex_count, config.n_boundary, config.edges), settings)
    body = ['<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" '
            'orient="auto"><path d="M0,0 L10,5 L0,10 z"/></marker></defs>']
    for tail, head in config.edges:
        a, b = points[tail], points[head]
        end = a + (b - a) * 0.85
        body.append(_line(tuple(a), tuple(end), extra=' marker-end="url(#arrow)"'))
    fills = ['#ffffff' if v < config.n_boundary else _KIND_FILL.get(config.kind(v), '#bbbbbb')
             for v in range(config.vertex_count)]
    body += _vertex_marks(points, fills, config.n_boundary)
    return _svg_document(settings, body)


def render_dot(item: Union[HourglassGraph, SixVertexConfig], config: dict = None) -> str:
    """Graphviz text with pinned positions, for inspecting the embedding."""

    settings = _render_settings(config)
    if isinstance(item, SixVertexConfig):
        points = _scale(layout(item.vertex_count, item.n_boundary, item.edges), settings)
        lines = ['digraph web {']
        for v in range(item.vertex_count):
            kind = 'boundary' if v < item.n_boundary else item.kind(v)
            lines.append(f'  v{v} [label="{v}" kind="{kind}" pos="{_fmt(points[v][0])},{_fmt(-points[v][1])}!"];')
        lines += [f'  v{tail} -> v{head};' for tail, head in item.edges]
    else:
        points = _scale(graph_layout(item), settings)
        names = {BLACK: 'black', WHITE: 'white', CROSSING: 'crossing'}
        lines = ['graph web {']
        for v in range(item.vertex_count):
            label = f'b{v + 1}' if item.is_boundary(v) else str(v)
            lines.append(f'  v{v} [label="{label}" color="{names[item.colors[v]]}" '
                         f'pos="{_fmt(points[v][0])},{_fmt(-points[v][1])}!"];')
        lines += [f'  v{u} -- v{v} [label="{m}"];' if m > 1 else f'  v{u} -- v{v};' for u, v, m in item.edges]
    lines.append('}')
    return '\n'.join(lines)


def render(item: Union[HourglassGraph, SixVertexConfig], output_format: str = 'svg',
           trips: Sequence[int] = (), start: int = 1, config: Optional[dict] = None) -> str:
    if output_format == 'dot':
        return render_dot(item, config)
    if isinstance(item, SixVertexConfig):
        return render_config_svg(item, config)
    return render_graph_svg(item, trips, start, config)
