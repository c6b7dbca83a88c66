"""Serialization: JSON reports, boundary CSV and SVG rendering."""
from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

SCHEMA_VERSION = 1
CSV_HEADER = ("theta", "re", "im", "case", "zeta_re", "zeta_im", "t_theta")
SVG_MARGIN = 0.05
SVG_PIXELS = 600


def fmt(x: float) -> str:
    """17 significant digits; enough to round-trip any double."""
    return format(float(x), ".17g")


def jsonable(v):
    """Complex -> [re, im]; non-finite floats -> strings; containers recursively."""
    if isinstance(v, (complex, np.complexfloating)):
        return [jsonable(float(v.real)), jsonable(float(v.imag))]
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else repr(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, np.ndarray)):
        return [jsonable(x) for x in v]
    return v


@dataclass
class Report:
    command: str
    inputs: dict
    outputs: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)

    def to_json(self) -> str:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "inputs": jsonable(self.inputs),
            "outputs": jsonable(self.outputs),
            "diagnostics": jsonable(self.diagnostics),
        }
        # json writes floats with repr, the shortest string that round-trips
        return json.dumps(doc, indent=2, allow_nan=False) + "\n"


# ---------------------------------------------------------------------------
# CSV


@dataclass(frozen=True)
class CurveRow:
    theta: float
    value: complex
    case: str
    zeta: complex = complex("nan+nanj")
    t_theta: float = math.nan
    extra: tuple = ()


def write_curve_csv(rows, extra_columns: tuple = ()) -> str:
    buf = io.StringIO(newline="")
    buf.write(",".join(CSV_HEADER + tuple(extra_columns)) + "\n")
    for r in rows:
        cells = [
            fmt(r.theta), fmt(r.value.real), fmt(r.value.imag), r.case,
            fmt(r.zeta.real), fmt(r.zeta.imag), fmt(r.t_theta),
        ]
        cells += [fmt(x) for x in r.extra]
        buf.write(",".join(cells) + "\n")
    return buf.getvalue()


def read_curve_csv(text: str) -> list:
    lines = text.rstrip("\n").split("\n")
    header = lines[0].split(",")
    if tuple(header[: len(CSV_HEADER)]) != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header}")
    rows = []
    for line in lines[1:]:
        c = line.split(",")
        rows.append(CurveRow(
            float(c[0]), complex(float(c[1]), float(c[2])), c[3],
            complex(float(c[4]), float(c[5])), float(c[6]), tuple(float(x) for x in c[7:]),
        ))
    return rows


# ---------------------------------------------------------------------------
# SVG
#
# The drawing lives in data coordinates with the imaginary axis flipped:
# a value w is drawn at (x, y) = (Re w, -Im w).  The viewBox is the tight
# bounding box of everything drawn, widened by 5% of its extent on each side.


def _viewbox(points: np.ndarray) -> tuple:
    x, y = points.real, -points.imag
    x0, x1, y0, y1 = x.min(), x.max(), y.min(), y.max()
    w = max(x1 - x0, 1e-300)
    h = max(y1 - y0, 1e-300)
    return x0 - SVG_MARGIN * w, y0 - SVG_MARGIN * h, (1 + 2 * SVG_MARGIN) * w, (1 + 2 * SVG_MARGIN) * h


def _path(points, cls: str, stroke: str, width: float) -> str:
    pts = np.asarray(points, complex)
    coords = " L ".join(f"{fmt(p.real)},{fmt(-p.imag)}" for p in pts)
    return (f'<path class="{cls}" d="M {coords} Z" fill="none" stroke="{stroke}" '
            f'stroke-width="{fmt(width)}"/>')


def render_svg(curve, hull=None) -> str:
    curve = np.asarray(curve, complex)
    everything = curve if hull is None else np.concatenate([curve, np.asarray(hull, complex)])
    vx, vy, vw, vh = _viewbox(everything)
    scale = SVG_PIXELS / max(vw, vh)
    lw = 0.004 * max(vw, vh)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{fmt(vw * scale)}" height="{fmt(vh * scale)}" '
        f'viewBox="{fmt(vx)} {fmt(vy)} {fmt(vw)} {fmt(vh)}">',
        '<g class="axes" stroke="#888888" stroke-width="{}">'.format(fmt(lw / 2)),
        f'<line x1="{fmt(vx)}" y1="0" x2="{fmt(vx + vw)}" y2="0"/>',
        f'<line x1="0" y1="{fmt(vy)}" x2="0" y2="{fmt(vy + vh)}"/>',
        "</g>",
    ]
    if hull is not None:
        out.append(_path(hull, "hull", "#d62728", lw / 2))
    out.append(_path(curve, "curve", "#1f77b4", lw))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def parse_svg_path(svg: str, cls: str = "curve") -> np.ndarray:
    """Vertices of the path with the given class, mapped back to complex values."""
    import xml.etree.ElementTree as ET

    root = ET.fromstring(svg)
    for el in root.iter("{http://www.w3.org/2000/svg}path"):
        if el.get("class") == cls:
            d = el.get("d").replace("M", " ").replace("L", " ").replace("Z", " ")
            pairs = [tok.split(",") for tok in d.split()]
            return np.array([complex(float(x), -float(y)) for x, y in pairs])
    raise ValueError(f"no path of class {cls!r}")
