"""Planar Kirchhoff-Plateau critical points for three cross-section families."""
from ._accel import backend_name
from .dilation import DilationSolution, solve_dilation
from .domain import (
    AmbiguousSolution,
    CaseKind,
    DegenerateConicError,
    DomainError,
    InterpenetrationError,
    KPError,
    NoSolution,
    Params,
    midline_point,
    scaled_curve_point,
    tube_point,
)
from .ellipse import EllipseSolution, solve_equilibrium
from .oval import OvalSolution, solve_oval, xi_roots
from .pipeline import CaseResult, solve_case, verify_case
from .polyroots import QuarticPoly, RootReport, discriminant, isolate_real_roots, real_roots
from .shapes import ShapeSample, emit_shape
from .variational import DiscreteFunctional, el_residual, energy, stationarity_check

__version__ = "0.1.0"

__all__ = [
    "AmbiguousSolution", "CaseKind", "CaseResult", "DegenerateConicError", "DilationSolution",
    "DiscreteFunctional", "DomainError", "EllipseSolution", "InterpenetrationError", "KPError",
    "NoSolution", "OvalSolution", "Params", "QuarticPoly", "RootReport", "ShapeSample",
    "backend_name", "discriminant", "el_residual", "emit_shape", "energy", "isolate_real_roots",
    "midline_point", "real_roots", "scaled_curve_point", "solve_case", "solve_dilation",
    "solve_equilibrium", "solve_oval", "stationarity_check", "tube_point", "verify_case", "xi_roots",
]
