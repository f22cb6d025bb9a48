"""Fixed-area elliptical cross-section on the circular midline.

The horizontal semi-axis solves the equilibrium quartic

    Gamma(a) = (sigma pi^2 + beta pi^2 R) a^4 - pi^2 sigma R a^3 - beta Pi^2 R,

which has exactly one positive root for positive parameters.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .domain import KPError, Params
from .polyroots import QuarticPoly, isolate_real_roots

ADMISSIBLE_MARGIN = 1e-9


@dataclass(frozen=True)
class EllipseSolution:
    a_bar: float
    b_bar: float
    lambda_bar: float
    a_star: float
    admissible: bool
    elongation_horizontal: bool
    boundary: bool = False

    def as_dict(self) -> dict:
        return {
            "a_bar": self.a_bar,
            "b_bar": self.b_bar,
            "lambda_bar": self.lambda_bar,
            "a_star": self.a_star,
            "admissible": self.admissible,
            "elongation_horizontal": self.elongation_horizontal,
            "boundary": self.boundary,
        }


def gamma_quartic(params: Params) -> QuarticPoly:
    pi2 = math.pi**2
    b, s, P, R = params.beta, params.sigma, params.area, params.radius
    return QuarticPoly((s * pi2 + b * pi2 * R, -pi2 * s * R, 0.0, 0.0, -b * P**2 * R))


def gamma(params: Params, a):
    return gamma_quartic(params)(a)


def a_star(params: Params) -> float:
    """Threshold 3 sigma R / (4 (beta R + sigma)) beyond which Gamma is increasing."""
    s, R = params.sigma, params.radius
    return 3.0 * s * R / (4.0 * (params.beta * R + s))


def circle_semi_axis(params: Params) -> float:
    return math.sqrt(params.area / math.pi)


def multiplier(params: Params, a: float) -> float:
    """Lagrange multiplier from the first reduced equilibrium equation."""
    al, b, s, P, R = params.alpha, params.beta, params.sigma, params.area, params.radius
    return al / R**2 - 2.0 * s * R + 2.0 * s * a - b * a**2 - b * P**2 / (math.pi**2 * a**2)


def solve_equilibrium(params: Params) -> EllipseSolution:
    poly = gamma_quartic(params)
    # Gamma(0) < 0 and Gamma > 0 at this bound, so the bracket always holds the root
    hi = 2.0 * max(params.radius, 2.0 * circle_semi_axis(params))
    report = isolate_real_roots(poly, (0.0, hi))
    positive = [r for r in report.roots if r > 0.0]
    if len(positive) != 1:
        raise KPError(f"expected one positive root of Gamma, found {positive}")
    a = positive[0]
    b = params.area / (math.pi * a)
    R = params.radius
    margin = ADMISSIBLE_MARGIN * R
    admissible = a < R - margin
    boundary = abs(a - R) <= margin
    return EllipseSolution(
        a_bar=a,
        b_bar=b,
        lambda_bar=multiplier(params, a),
        a_star=a_star(params),
        admissible=admissible,
        elongation_horizontal=admissible and a > b,
        boundary=boundary,
    )
