from __future__ import annotations

from fractions import Fraction

from .errors import InvalidInput
from .logger import LogLevel, log
from .matrix import encode_entry

TAG = "render"

FORMATS = ("svg", "dot", "tikz")
TARGETS = ("plabic", "quiver")

MARGIN = 40
COLUMN_WIDTH = 60
HALF_CELL = 18
STRAND_GAP = 50
FILM_FILL = "#b5651d"


def _x(position):
    """Centre of column p; p = 0 is the left border."""
    return MARGIN + COLUMN_WIDTH * position


def _y(strand, n):
    return MARGIN + STRAND_GAP * (n - strand)


def _num(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{float(value):.1f}"


def _film(films, vertex_id):
    if vertex_id is None:
        return None
    for film in films:
        if film.vertex_id == vertex_id:
            return film
    raise InvalidInput(f"no film with vertex id {vertex_id}")


def region_labels(diagram, films):
    """{(position, gap): [vertex ids]} for the region just left of each column."""
    labels = {}
    for film in films:
        for position, coverage in film.coverage.items():
            for gap, mult in enumerate(coverage, start=1):
                if mult:
                    labels.setdefault((position, gap), []).extend([film.vertex_id] * mult)
    return {key: sorted(ids) for key, ids in sorted(labels.items())}


def _plabic_segments(diagram):
    """Yield ('line', x1, y1, x2, y2, broken) and ('bridge', x, y_top, y_bottom) items."""
    n, k = diagram.n, diagram.k
    for strand in range(1, n + 1):
        y = _y(strand, n)
        start = _x(0)
        for column in diagram.columns:
            x = _x(column.position)
            crossing = not column.is_bridge and strand in (column.gap, column.gap + 1)
            if crossing:
                yield ("line", start, y, x - HALF_CELL, y, False)
                start = x + HALF_CELL
        yield ("line", start, y, _x(k + 1), y, False)
    for column in diagram.columns:
        x = _x(column.position)
        low, high = _y(column.gap, n), _y(column.gap + 1, n)
        if column.is_bridge:
            yield ("bridge", x, high, low)
        else:
            yield ("line", x - HALF_CELL, low, x + HALF_CELL, high, False)
            yield ("line", x - HALF_CELL, high, x + HALF_CELL, low, True)


def _plabic_svg(diagram, films, overlay):
    n, k = diagram.n, diagram.k
    width, height = _x(k + 1) + MARGIN, _y(0, n) + MARGIN // 2
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<!-- plabic graph: {n} strands, {k} columns -->',
    ]
    if overlay is not None:
        for position, coverage in sorted(overlay.coverage.items()):
            for gap, mult in enumerate(coverage, start=1):
                if mult:
                    out.append(
                        f'<rect x="{_x(position - 1)}" y="{_y(gap + 1, n)}" width="{COLUMN_WIDTH}" '
                        f'height="{STRAND_GAP}" fill="{FILM_FILL}" fill-opacity="0.35" class="film-{overlay.vertex_id}"/>'
                    )
    for item in _plabic_segments(diagram):
        if item[0] == "line":
            _, x1, y1, x2, y2, broken = item
            if broken:
                mx, my = (x1 + x2) / 2, (y1 + y2) / 2
                dx, dy = (x2 - x1) / 6, (y2 - y1) / 6
                out.append(f'<line x1="{x1}" y1="{y1}" x2="{_num(Fraction(mx - dx))}" y2="{_num(Fraction(my - dy))}" stroke="black"/>')
                out.append(f'<line x1="{_num(Fraction(mx + dx))}" y1="{_num(Fraction(my + dy))}" x2="{x2}" y2="{y2}" stroke="black"/>')
            else:
                out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black"/>')
        else:
            _, x, top, bottom = item
            out.append(f'<line x1="{x}" y1="{top}" x2="{x}" y2="{bottom}" stroke="black"/>')
            out.append(f'<circle cx="{x}" cy="{top}" r="5" fill="white" stroke="black"/>')
            out.append(f'<circle cx="{x}" cy="{bottom}" r="5" fill="black"/>')
    for (position, gap), ids in region_labels(diagram, films).items():
        x = _x(position) - COLUMN_WIDTH // 2
        y = (_y(gap, n) + _y(gap + 1, n)) // 2 + 4
        out.append(f'<text x="{x}" y="{y}" font-size="10" text-anchor="middle">{",".join(map(str, ids))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _plabic_tikz(diagram, films, overlay):
    n, k = diagram.n, diagram.k
    scale = Fraction(1, COLUMN_WIDTH)

    def pt(x, y):
        return f"({_num(Fraction(x) * scale)},{_num(Fraction(-y) * scale)})"

    out = [
        "\\begin{tikzpicture}",
        f"% plabic graph: {n} strands, {k} columns",
    ]
    if overlay is not None:
        for position, coverage in sorted(overlay.coverage.items()):
            for gap, mult in enumerate(coverage, start=1):
                if mult:
                    out.append(
                        f"\\fill[brown, opacity=0.35] {pt(_x(position - 1), _y(gap + 1, n))} rectangle "
                        f"{pt(_x(position), _y(gap, n))};"
                    )
    for item in _plabic_segments(diagram):
        if item[0] == "line":
            _, x1, y1, x2, y2, broken = item
            style = "[densely dotted]" if broken else ""
            out.append(f"\\draw{style} {pt(x1, y1)} -- {pt(x2, y2)};")
        else:
            _, x, top, bottom = item
            out.append(f"\\draw {pt(x, top)} -- {pt(x, bottom)};")
            out.append(f"\\filldraw[fill=white] {pt(x, top)} circle (2pt);")
            out.append(f"\\filldraw[fill=black] {pt(x, bottom)} circle (2pt);")
    for (position, gap), ids in region_labels(diagram, films).items():
        x = _x(position) - COLUMN_WIDTH // 2
        y = (_y(gap, n) + _y(gap + 1, n)) // 2
        out.append(f"\\node[font=\\tiny] at {pt(x, y)} {{{','.join(map(str, ids))}}};")
    out.append("\\end{tikzpicture}")
    return "\n".join(out) + "\n"


def _quiver_positions(quiver):
    positions = {}
    for v in range(1, quiver.m + 1):
        positions[v] = (MARGIN + 80 * (v - 1), MARGIN)
    for v in range(quiver.m + 1, quiver.size + 1):
        positions[v] = (MARGIN + 80 * (v - quiver.m - 1), MARGIN + 120)
    return positions


def _is_half(weight):
    return Fraction(weight).denominator != 1


def _quiver_dot(quiver):
    out = ["digraph quiver {"]
    for v in range(1, quiver.size + 1):
        if quiver.is_frozen(v):
            out.append(f'  {v} [shape=box, color=red, label="{v}"];')
        else:
            out.append(f'  {v} [shape=circle, color=green, label="{v}"];')
    for i, j, w in quiver.arrows():
        attrs = []
        if _is_half(w):
            attrs.append("style=dashed")
        if w not in (1, Fraction(1, 2)):
            attrs.append(f'label="{encode_entry(w)}"')
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        out.append(f"  {i} -> {j}{suffix};")
    out.append("}")
    return "\n".join(out) + "\n"


def _quiver_svg(quiver):
    positions = _quiver_positions(quiver)
    columns = max(quiver.m, quiver.f, 1)
    width, height = 2 * MARGIN + 80 * (columns - 1), 2 * MARGIN + 120
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        '<defs><marker id="head" markerWidth="8" markerHeight="8" refX="14" refY="4" orient="auto">'
        '<path d="M0,0 L8,4 L0,8 z"/></marker></defs>',
    ]
    for i, j, w in quiver.arrows():
        (x1, y1), (x2, y2) = positions[i], positions[j]
        dash = ' stroke-dasharray="4,3"' if _is_half(w) else ""
        out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black"{dash} marker-end="url(#head)"/>')
        if w not in (1, Fraction(1, 2)):
            out.append(f'<text x="{(x1 + x2) // 2}" y="{(y1 + y2) // 2 - 4}" font-size="10">{encode_entry(w)}</text>')
    for v in range(1, quiver.size + 1):
        x, y = positions[v]
        if quiver.is_frozen(v):
            out.append(f'<rect x="{x - 10}" y="{y - 10}" width="20" height="20" fill="white" stroke="red"/>')
        else:
            out.append(f'<circle cx="{x}" cy="{y}" r="10" fill="white" stroke="green"/>')
        out.append(f'<text x="{x}" y="{y + 4}" font-size="10" text-anchor="middle">{v}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _quiver_tikz(quiver):
    positions = _quiver_positions(quiver)
    scale = Fraction(1, 80)
    out = ["\\begin{tikzpicture}[>=stealth]"]
    for v in range(1, quiver.size + 1):
        x, y = positions[v]
        shape = "draw=red, rectangle" if quiver.is_frozen(v) else "draw=green, circle"
        out.append(f"\\node[{shape}] ({v}) at ({_num(x * scale)},{_num(-y * scale)}) {{{v}}};")
    for i, j, w in quiver.arrows():
        style = "->, dashed" if _is_half(w) else "->"
        label = "" if w in (1, Fraction(1, 2)) else f" node[midway, above] {{{encode_entry(w)}}}"
        out.append(f"\\draw[{style}] ({i}) --{label} ({j});")
    out.append("\\end{tikzpicture}")
    return "\n".join(out) + "\n"


def render(seed, fmt, target, film=None):
    if fmt not in FORMATS:
        raise InvalidInput(f"unknown format {fmt!r}")
    if target not in TARGETS:
        raise InvalidInput(f"unknown target {target!r}")
    if target == "plabic":
        if fmt == "dot":
            raise InvalidInput("the plabic target has no dot rendering")
        overlay = _film(seed.films, film)
        log(LogLevel.DEBUG, TAG, f"plabic {fmt} with {seed.diagram.k} columns")
        if fmt == "svg":
            return _plabic_svg(seed.diagram, seed.films, overlay)
        return _plabic_tikz(seed.diagram, seed.films, overlay)
    if film is not None:
        raise InvalidInput("film overlay applies to the plabic target only")
    quiver = seed.quiver()
    if fmt == "dot":
        return _quiver_dot(quiver)
    if fmt == "svg":
        return _quiver_svg(quiver)
    return _quiver_tikz(quiver)
