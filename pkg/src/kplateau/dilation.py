"""Elliptical cross-section whose horizontal semi-axis a0 is dilated by theta."""
from __future__ import annotations

from dataclasses import dataclass

from .domain import DomainError, Params


@dataclass(frozen=True)
class DilationSolution:
    theta_bar: float
    lambda_bar: float
    a0: float
    dilated_axis: float
    is_dilatation: bool

    def as_dict(self) -> dict:
        return {
            "theta_bar": self.theta_bar,
            "lambda_bar": self.lambda_bar,
            "a0": self.a0,
            "dilated_axis": self.dilated_axis,
            "is_dilatation": self.is_dilatation,
        }


def theta_closed_form(params: Params, a0: float) -> float:
    b, s, R = params.beta, params.sigma, params.radius
    return R * (b * a0 + s) / (a0 * (b * R + s))


def reduced_theta_equation(params: Params, a0: float, theta: float) -> float:
    """2 a0 (a0 theta (beta R + sigma) - R (beta a0 + sigma)); zero at equilibrium."""
    b, s, R = params.beta, params.sigma, params.radius
    return 2.0 * a0 * (a0 * theta * (b * R + s) - R * (b * a0 + s))


def reduced_theta_scale(params: Params, a0: float, theta: float) -> float:
    b, s, R = params.beta, params.sigma, params.radius
    return 2.0 * a0 * max(abs(a0 * theta * (b * R + s)), abs(R * (b * a0 + s)))


def multiplier(params: Params, a0: float, theta: float) -> float:
    al, b, s, R = params.alpha, params.beta, params.sigma, params.radius
    return al / R**2 - 2.0 * R * s + 2.0 * a0 * s * theta - b * a0**2 * (theta - 1.0) ** 2


def solve_dilation(params: Params, a0: float) -> DilationSolution:
    if not a0 > 0.0:
        raise DomainError(f"base semi-axis a0 must be positive, got {a0!r}")
    theta = theta_closed_form(params, a0)
    return DilationSolution(
        theta_bar=theta,
        lambda_bar=multiplier(params, a0, theta),
        a0=float(a0),
        dilated_axis=theta * a0,
        is_dilatation=theta > 1.0,
    )
