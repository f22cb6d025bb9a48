"""Polyline samples of cross-sections, midline, film trace and tube, plus SVG output."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .domain import CaseKind, DomainError, NoSolution, midline_point_periodic, scaled_curve_point, tube_point

KINDS = ("midline", "scaled_curve", "cross_section", "tube")
SHAPE_ALIASES = {"section": "cross_section", "film": "scaled_curve", "midline": "midline", "tube": "tube"}
MIN_SECTION_SAMPLES = 128
SVG_PX_PER_UNIT = 100.0


@dataclass(frozen=True)
class ShapeSample:
    kind: str
    points: np.ndarray
    closed: bool

    def as_dict(self) -> dict:
        return {"kind": self.kind, "closed": self.closed, "points": self.points.tolist()}


def _close(pts: np.ndarray) -> np.ndarray:
    return np.vstack([pts, pts[:1]])


def section_outline(result, n: int) -> np.ndarray:
    """Cross-section boundary in (zeta1, zeta2); zeta1 points toward the film."""
    th = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    sol = result.solution
    if result.case is CaseKind.ELLIPSE:
        return np.stack([sol.a_bar * np.cos(th), sol.b_bar * np.sin(th)], axis=-1)
    if result.case is CaseKind.DILATION:
        b0 = result.params.area / (math.pi * sol.a0)
        return np.stack([sol.dilated_axis * np.cos(th), b0 * np.sin(th)], axis=-1)
    r = sol.a + sol.b * np.cos(th)
    return np.stack([r * np.cos(th), r * np.sin(th)], axis=-1)


def film_offset(result) -> float:
    sol = result.solution
    if result.case is CaseKind.ELLIPSE:
        return sol.a_bar
    if result.case is CaseKind.DILATION:
        return sol.dilated_axis
    return sol.a + sol.b


def emit_shape(result, shapes=("section", "midline", "film"), n_section: int = 256, n_midline: int = 512,
               n_tube_s: int = 64, allow_inadmissible: bool = False) -> list:
    if result.solution is None:
        raise NoSolution(result.error or "no solution to sample")
    if not result.admissible and not allow_inadmissible:
        raise NoSolution("solution is not admissible; pass allow_inadmissible to sample it anyway")
    if n_section < MIN_SECTION_SAMPLES:
        raise DomainError(f"cross-sections need at least {MIN_SECTION_SAMPLES} samples")
    p = result.params
    out = []
    for name in shapes:
        kind = SHAPE_ALIASES.get(name, name)
        if kind == "cross_section":
            out.append(ShapeSample(kind, _close(section_outline(result, n_section)), True))
        elif kind == "midline":
            s = np.linspace(0.0, p.length, n_midline, endpoint=False)
            out.append(ShapeSample(kind, _close(midline_point_periodic(p, s)), True))
        elif kind == "scaled_curve":
            s = np.linspace(0.0, p.length, n_midline, endpoint=False)
            out.append(ShapeSample(kind, _close(scaled_curve_point(p, s, film_offset(result))), True))
        elif kind == "tube":
            s = np.linspace(0.0, p.length, n_tube_s, endpoint=False)
            sec = section_outline(result, n_section)
            pts = tube_point(p, s[:, None], sec[None, :, 0], sec[None, :, 1]).reshape(-1, 3)
            out.append(ShapeSample(kind, pts, False))
        else:
            raise DomainError(f"unknown shape {name!r}")
    return out


def to_svg(samples, margin: float = 0.1) -> str:
    """Closed paths, one per sample; 1 model unit = 100 px, y axis pointing up."""
    if any(s.points.shape[1] != 2 for s in samples):
        raise DomainError("SVG output supports planar shapes only")
    allpts = np.vstack([s.points for s in samples])
    lo, hi = allpts.min(axis=0), allpts.max(axis=0)
    pad = margin * max(float(np.max(hi - lo)), 1e-12)
    k = SVG_PX_PER_UNIT
    x0, y1 = lo[0] - pad, hi[1] + pad
    width = (hi[0] - lo[0] + 2 * pad) * k
    height = (hi[1] - lo[1] + 2 * pad) * k
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.3f}" height="{height:.3f}" '
        f'viewBox="0 0 {width:.3f} {height:.3f}">',
    ]
    for smp in samples:
        px = (smp.points[:, 0] - x0) * k
        py = (y1 - smp.points[:, 1]) * k
        coords = " L ".join(f"{a:.4f},{b:.4f}" for a, b in zip(px, py))
        close = " Z" if smp.closed else ""
        lines.append(
            f'<path data-kind="{smp.kind}" data-points="{len(px)}" fill="none" stroke="black" '
            f'stroke-width="1" d="M {coords}{close}"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
