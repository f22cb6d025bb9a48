"""Case dispatch shared by the CLI: solve, verify, and flatten to rows."""
from __future__ import annotations

import math
import os
from dataclasses import dataclass

from . import dilation, ellipse, oval
from .domain import CaseKind, NoSolution, Params
from .variational import DiscreteFunctional, directional_derivatives, el_residual

DEFAULT_NODES = 2048


def quadrature_nodes(configured: int | None = None) -> int:
    env = os.environ.get("KP_NODES")
    if env:
        return int(env)
    return int(configured) if configured else DEFAULT_NODES


@dataclass
class CaseResult:
    case: CaseKind
    params: Params
    solution: object | None
    admissible: bool
    a0: float | None = None
    error: str | None = None

    def solution_dict(self) -> dict | None:
        if self.solution is None:
            return None
        d = self.solution.as_dict()
        if self.case is CaseKind.DILATION:
            d["b0"] = self.params.area / (math.pi * self.a0)
        return d


def solve_case(case, params: Params, a0: float | None = None, film_side: str = "long",
               with_xi: bool = True) -> CaseResult:
    """Solve one case; NoSolution becomes an inadmissible result, not an exception."""
    case = CaseKind.parse(case)
    if case is CaseKind.ELLIPSE:
        sol = ellipse.solve_equilibrium(params)
        return CaseResult(case, params, sol, sol.admissible)
    if case is CaseKind.DILATION:
        if a0 is None:
            a0 = ellipse.solve_equilibrium(params).a_bar
        sol = dilation.solve_dilation(params, a0)
        ok = sol.is_dilatation and sol.dilated_axis < params.radius
        return CaseResult(case, params, sol, ok, a0=a0)
    try:
        sol = oval.solve_oval(params, film_side=film_side, with_xi=with_xi)
    except NoSolution as exc:
        return CaseResult(case, params, None, False, error=str(exc))
    return CaseResult(case, params, sol, sol.admissible)


def state_of(result: CaseResult):
    sol = result.solution
    if result.case is CaseKind.ELLIPSE:
        return sol.a_bar, sol.lambda_bar
    if result.case is CaseKind.DILATION:
        return sol.theta_bar, sol.lambda_bar
    return sol.a, sol.lambda_bar


def verify_case(result: CaseResult, n_nodes: int | None = None) -> dict:
    """Finite-difference stationarity on the sampled functional plus reduced EL residuals."""
    if result.solution is None:
        return {"skipped": result.error}
    state, lam = state_of(result)
    df = DiscreteFunctional(result.case, result.params, quadrature_nodes(n_nodes), a0=result.a0)
    report = directional_derivatives(df, state, lam)
    res = el_residual(result.case, result.params, state, lam, a0=result.a0)
    return {
        "n_nodes": df.n_nodes,
        "max_directional_derivative": report.max_first,
        "min_second_difference": float(report.second.min()),
        "strict_local_min": report.strict_local_min,
        "el_residual": res.as_dict(),
        "energy": report.energy.as_dict(),
    }


ROW_FIELDS = {
    CaseKind.ELLIPSE: ["sigma", "beta", "area", "radius", "a_bar", "b_bar", "lambda_bar", "admissible"],
    CaseKind.DILATION: ["sigma", "beta", "area", "radius", "a0", "theta_bar", "dilated_axis", "lambda_bar",
                        "is_dilatation"],
    CaseKind.OVAL: ["sigma", "beta", "area", "radius", "a", "b", "lambda_bar", "admissible", "n_intersections",
                    "tau"],
}


def result_row(result: CaseResult) -> dict:
    p = result.params
    row = {"sigma": p.sigma, "beta": p.beta, "area": p.area, "radius": p.radius}
    sol = result.solution_dict() or {}
    for key in ROW_FIELDS[result.case][4:]:
        row[key] = sol.get(key, math.nan)
    if result.case is CaseKind.OVAL:
        row["admissible"] = result.admissible
        row["tau"] = oval.tau_limit(p) if p.sigma > 0 else math.nan
        if result.solution is None:
            row["n_intersections"] = math.nan
    return row
