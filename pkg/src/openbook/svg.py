"""Self-contained SVG drawings: torus diagrams, ladders with passes and
critical-value trajectories."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

import numpy as np

from .ladder import HSeg, LadderDiagram, PassCertificate, VSeg
from .rampichini import Diagram

POS = "#c0392b"
NEG = "#2471a3"
OVER = "#e67e22"
UNDER = "#27ae60"


def _doc(width: int, height: int, body: list[str]) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">')
    return "\n".join([head, f'<rect width="{width}" height="{height}" fill="white"/>', *body, "</svg>"]) + "\n"


def _text(x: float, y: float, s: str, anchor: str = "middle", extra: str = "") -> str:
    return f'<text x="{x:.2f}" y="{y:.2f}" text-anchor="{anchor}" {extra}>{escape(s)}</text>'


def render_diagram(d: Diagram, size: int = 520) -> str:
    pad = 40
    side = size - 2 * pad
    sx = side / (2 * math.pi)

    def pt(phi: float, t: float) -> tuple[float, float]:
        return pad + phi * sx, pad + side - t * sx

    body = [f'<rect x="{pad}" y="{pad}" width="{side}" height="{side}" fill="none" stroke="black"/>',
            _text(pad + side / 2, size - 8, "phi"),
            _text(12, pad + side / 2, "t"),
            _text(pad, size - pad + 14, "0"), _text(pad + side, size - pad + 14, "2pi")]
    for c in d.curves:
        colour = POS if c.sign > 0 else NEG
        for s in c.segments:
            x0, y0 = pt(s.phi0, s.t0)
            x1, y1 = pt(s.phi1, s.t1)
            body.append(f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x1:.2f}" y2="{y1:.2f}" '
                        f'stroke="{colour}" stroke-width="1.6"/>')
            if s.phi1 - s.phi0 > 0.15:
                lab = f"a{s.label.i},{s.label.j}"
                body.append(_text((x0 + x1) / 2, (y0 + y1) / 2 - 4, lab, extra='font-size="9"'))
    for phi, t in d.crossings:
        x, y = pt(phi, t)
        body.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="2.2" fill="black"/>')
    return _doc(size, size, body)


def render_ladder(d: LadderDiagram, cert: PassCertificate | None = None, unit: int = 40) -> str:
    pad = 40
    width = 2 * pad + unit * max(d.n - 1, 1)
    height = 2 * pad + unit * (d.top + 1) // 2

    def pt(x: float, y: float) -> tuple[float, float]:
        return pad + (x - 1) * unit, height - pad - y * unit / 2

    body = []
    for x in range(1, d.n + 1):
        x0, y0 = pt(x, 0)
        x1, y1 = pt(x, d.top + 1)
        body.append(f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" stroke="black"/>')
        body.append(_text(x0, y0 + 14, str(x)))
    for r, g in enumerate(d.rungs):
        x0, y0 = pt(g.left, d.height(r))
        x1, _ = pt(g.right, d.height(r))
        body.append(f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black" stroke-width="3"/>')
        body.append(_text(x1 + 4, y0 + 4, "+" if g.sign > 0 else "-", anchor="start"))
    if cert is not None:
        for path, colour, dx in ((cert.overpass, OVER, 3), (cert.underpass, UNDER, -3)):
            pts = [pt(*path.start)]
            for s in path.segments:
                pts.append(pt(s.end, s.y) if isinstance(s, HSeg) else pt(s.line, s.end))
            coords = " ".join(f"{x + dx:.1f},{y + dx:.1f}" for x, y in pts)
            body.append(f'<polyline points="{coords}" fill="none" stroke="{colour}" stroke-width="2"/>')
    return _doc(width, height, body)


def render_critical_values(values: np.ndarray, size: int = 420) -> str:
    """Trajectories of the critical values with their winding numbers about 0."""
    pad = 30
    r = float(np.max(np.abs(values))) * 1.1 or 1.0
    scale = (size - 2 * pad) / (2 * r)

    def pt(z: complex) -> tuple[float, float]:
        return size / 2 + z.real * scale, size / 2 - z.imag * scale

    body = [f'<line x1="{pad}" y1="{size / 2}" x2="{size - pad}" y2="{size / 2}" stroke="#bbb"/>',
            f'<line x1="{size / 2}" y1="{pad}" x2="{size / 2}" y2="{size - pad}" stroke="#bbb"/>',
            f'<circle cx="{size / 2}" cy="{size / 2}" r="2.5" fill="black"/>']
    palette = [POS, NEG, OVER, UNDER, "#8e44ad", "#7f8c8d"]
    for j in range(values.shape[1]):
        v = values[:, j]
        coords = " ".join(f"{x:.1f},{y:.1f}" for x, y in map(pt, v))
        colour = palette[j % len(palette)]
        body.append(f'<polyline points="{coords}" fill="none" stroke="{colour}" stroke-width="1.5"/>')
        turns = float(np.sum(np.angle(np.roll(v, -1) / v))) / (2 * math.pi)
        x, y = pt(v[0])
        body.append(_text(x + 6, y - 6, f"v{j + 1}: winding {turns:+.2f}", anchor="start"))
    return _doc(size, size, body)
