"""Limacon (oval) cross-section r = a + b cos(theta) with fixed area.

Equilibria are intersections of two conics in the (a, b) plane:

    hyperbola  2a^2 - b^2 + (1 + 2 beta R / sigma) ab - 2Ra + Rb = 0
    ellipse    2a^2 + b^2 = 2 Pi / pi

Eliminating b gives a quartic in a whose discriminant, viewed as a function
of the area Pi, changes sign at the tangency area xi2. The admissible point
must avoid double points/cusps (a > 2b) and interpenetration (a + b < R).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .domain import AmbiguousSolution, DegenerateConicError, DomainError, NoSolution, Params
from .polyroots import QuarticPoly, isolate_real_roots, quartic_discriminant

BOUNDARY_MARGIN = 1e-9
XI2_AGREEMENT = 1e-6


@dataclass(frozen=True)
class LimaconShape:
    a: float
    b: float

    def __post_init__(self):
        if not self.a > 0.0 or self.b < 0.0:
            raise DomainError(f"limacon needs a > 0 and b >= 0, got a={self.a}, b={self.b}")

    @property
    def area(self) -> float:
        return math.pi * self.a**2 + 0.5 * math.pi * self.b**2

    @property
    def has_double_points(self) -> bool:
        return not self.a > self.b

    @property
    def has_cusps(self) -> bool:
        return not self.a > 2.0 * self.b

    def outline(self, n: int) -> np.ndarray:
        th = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
        r = self.a + self.b * np.cos(th)
        return np.stack([r * np.cos(th), r * np.sin(th)], axis=-1)


@dataclass(frozen=True)
class ConstraintFlags:
    well_defined: bool  # Pi - pi a^2 >= 0
    no_cusp: bool  # a > 2b
    no_interpenetration: bool  # a + b < R
    positive: bool = True

    @property
    def admissible(self) -> bool:
        return self.well_defined and self.no_cusp and self.no_interpenetration and self.positive

    def as_tuple(self):
        return (self.well_defined, self.no_cusp, self.no_interpenetration)

    def failures(self) -> list:
        names = []
        if not self.positive:
            names.append("nonpositive")
        if not self.well_defined:
            names.append("(1) radicand negative")
        if not self.no_cusp:
            names.append("(2) cusp")
        if not self.no_interpenetration:
            names.append("(3) interpenetration")
        return names


@dataclass(frozen=True)
class Intersection:
    a: float
    b: float
    multiplicity: int = 1


@dataclass(frozen=True)
class XiRoots:
    xi1: float
    xi2: float
    xi34: float
    xi2_closed_form: float
    closed_form_agrees: bool


@dataclass(frozen=True)
class OvalSolution:
    point_a: tuple
    lambda_bar: float
    intersections: tuple
    n_intersections: int
    constraint_flags: tuple
    tau: float
    xi2: float | None = None
    film_side: str = "long"
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def a(self) -> float:
        return self.point_a[0]

    @property
    def b(self) -> float:
        return self.point_a[1]

    @property
    def admissible(self) -> bool:
        return all(self.constraint_flags)

    def as_dict(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "lambda_bar": self.lambda_bar,
            "long_semi_axis": self.a + self.b,
            "short_semi_axis": self.a - self.b,
            "n_intersections": self.n_intersections,
            "intersections": [[p.a, p.b, p.multiplicity] for p in self.intersections],
            "constraint_flags": list(self.constraint_flags),
            "tau": self.tau,
            "xi2": self.xi2,
            "admissible": self.admissible,
        }


def oval_b_of_a(area_pi: float, a: float) -> float:
    """Cosine amplitude b giving area ``area_pi`` for base radius ``a``."""
    rad = area_pi - math.pi * a * a
    if rad < 0.0:
        # tolerate round-off at the circle limit
        if rad >= -1e-14 * area_pi:
            return 0.0
        raise DomainError(f"radicand negative: pi a^2 = {math.pi * a * a} exceeds area {area_pi}")
    return math.sqrt(2.0 / math.pi * rad)


def _hyperbola_slope(params: Params) -> float:
    if params.sigma == 0.0:
        raise DegenerateConicError("the equilibrium hyperbola needs sigma > 0")
    return 1.0 + 2.0 * params.beta * params.radius / params.sigma


def conic_system(params: Params, film_side: str = "long"):
    """General-conic coefficients (A, B, C, D, E, F) of A a^2 + B ab + C b^2 + D a + E b + F.

    ``film_side="short"`` gives the hyperbola for a film attached to a - b,
    which is the long-side hyperbola mirrored through b -> -b.
    """
    k = _hyperbola_slope(params)
    R = params.radius
    hyperbola = (2.0, k, -1.0, -2.0 * R, R, 0.0)
    if film_side == "short":
        hyperbola = (2.0, -k, -1.0, -2.0 * R, -R, 0.0)
    elif film_side != "long":
        raise DomainError(f"film_side must be 'long' or 'short', got {film_side!r}")
    ellipse = (2.0, 0.0, 1.0, 0.0, 0.0, -2.0 * params.area / math.pi)
    return hyperbola, ellipse


def conic_terms(coeffs, a, b):
    A, B, C, D, E, F = coeffs
    return (A * a * a, B * a * b, C * b * b, D * a, E * b, F)


def conic_residual(coeffs, a, b) -> float:
    return math.fsum(conic_terms(coeffs, a, b))


def conic_relative_residual(coeffs, a, b) -> float:
    terms = conic_terms(coeffs, a, b)
    scale = max(max(abs(t) for t in terms), 1e-300)
    return abs(math.fsum(terms)) / scale


def intersection_coeffs(beta, sigma, radius, area):
    """Coefficients of the a-quartic left after eliminating b (vectorized in ``area``)."""
    pi = math.pi
    B, s, R, P = beta, sigma, radius, np.asarray(area, dtype=float)
    c4 = (18 * s**2 + 8 * B**2 * R**2 + 8 * B * R * s) * pi**2 + 0.0 * P
    c3 = (-12 * pi**2 * R * s**2 + 8 * pi**2 * B * R**2 * s) + 0.0 * P
    c2 = 6 * pi**2 * R**2 * s**2 - 8 * pi * P * B**2 * R**2 - 18 * pi * P * s**2 - 8 * pi * P * B * R * s
    c1 = (-8 * P * B * R**2 * s + 4 * P * R * s**2) * pi
    c0 = (4 * P**2 - 2 * pi * P * R**2) * s**2
    return c4, c3, c2, c1, c0


def intersection_quartic(params: Params, film_side: str = "long") -> QuarticPoly:
    _hyperbola_slope(params)
    c = intersection_coeffs(params.beta, params.sigma, params.radius, params.area)
    # b -> -b (short film side) only flips the sign of b (ka + R), which is squared
    # during elimination, so both sides share this quartic
    c = [float(v) for v in c]
    return QuarticPoly(tuple(c))


def intersection_discriminant(beta, sigma, radius, area):
    """Sign-faithful discriminant of the intersection quartic (coefficients max-normalized)."""
    c = np.array(np.broadcast_arrays(*intersection_coeffs(beta, sigma, radius, area)), dtype=float)
    c = c / np.max(np.abs(c), axis=0)
    return quartic_discriminant(*c)


def _recover_b(params: Params, a: float, film_side: str):
    """b for a root a of the eliminated quartic, on both conics."""
    k = _hyperbola_slope(params)
    R = params.radius
    two_area = 2.0 * params.area / math.pi
    hyp, ell = conic_system(params, film_side)
    sgn = 1.0 if film_side == "long" else -1.0
    denom = k * a + R
    mag = math.sqrt(max(two_area - 2.0 * a * a, 0.0))
    if abs(denom) > 1e-6 * max(R, abs(k * a)):
        b = sgn * (two_area + 2.0 * R * a - 4.0 * a * a) / denom
    else:
        b = min((mag, -mag), key=lambda v: abs(conic_residual(hyp, a, v)))
    # a couple of Newton steps on the 2x2 system, kept only if they help
    def res(x, y):
        return np.array([conic_residual(hyp, x, y), conic_residual(ell, x, y)])

    A, B, C, D, E, _ = hyp
    r = res(a, b)
    for _ in range(3):
        J = np.array([[2 * A * a + B * b + D, B * a + 2 * C * b + E], [4.0 * a, 2.0 * b]])
        if abs(np.linalg.det(J)) < 1e-8 * (np.abs(J).max() ** 2 + 1e-300):
            break
        step = np.linalg.solve(J, -r)
        a2, b2 = a + step[0], b + step[1]
        r2 = res(a2, b2)
        if np.max(np.abs(r2)) < np.max(np.abs(r)):
            a, b, r = a2, b2, r2
        else:
            break
    return a, b


def intersect_conics(params: Params, film_side: str = "long") -> list:
    """All real hyperbola/ellipse intersection points, ascending in a."""
    poly = intersection_quartic(params, film_side)
    amax = math.sqrt(params.area / math.pi)
    pad = 1e-9 * max(amax, params.radius)
    report = isolate_real_roots(poly, (-amax - pad, amax + pad))
    pts = []
    for r, m in zip(report.roots, report.multiplicities):
        a, b = _recover_b(params, r, film_side)
        pts.append(Intersection(float(a), float(b), int(m)))
    return pts


def limit_area_ratio(beta: float, sigma: float, radius: float) -> float:
    """Normalized area Pi/(pi R^2) at which the equilibrium reaches the cusp limit a = 2b."""
    if sigma == 0.0:
        raise DegenerateConicError("tau is undefined for sigma = 0")
    return 2.0 / (2.0 + 8.0 * beta * radius / (9.0 * sigma)) ** 2


def tau_limit(params: Params) -> float:
    return limit_area_ratio(params.beta, params.sigma, params.radius)


def xi34(params: Params) -> float:
    b, s, R = params.beta, params.sigma, params.radius
    return math.pi * R**2 * s * (2 * b * R + 3 * s) / (2 * b * R + s) ** 2


def xi2_closed_form(params: Params) -> float:
    """Tangency area from the Cardano-type closed form (principal complex branches)."""
    pi = math.pi
    B, s, R = params.beta, params.sigma, params.radius
    W = 4 * R**2 * B**2 + 4 * R * s * B + 9 * s**2
    delta = pi**3 * (
        17915904 * B**12 * s**6 * R**18
        + 89579520 * B**11 * s**7 * R**17
        + 380712960 * B**10 * s**8 * R**16
        + 985374720 * B**9 * s**9 * R**15
        + 2205895680 * B**8 * s**10 * R**14
        + 3545109504 * B**7 * s**11 * R**13
        + 4963265280 * B**6 * s**12 * R**12
        + 4988459520 * B**5 * s**13 * R**11
        + 4336558560 * B**4 * s**14 * R**10
        + 2295825120 * B**3 * s**15 * R**9
        + 1033121304 * B**2 * s**16 * R**8
    )
    E = (
        -81 * pi**2 * R**4 * W**4 * s**4
        - 81 * pi**2 * R**4 * W**3 * (4 * R**2 * B**2 - 4 * R * s * B - 9 * s**2) * s**4
    )
    root = cmath.sqrt(4 * E**3 + delta**2)
    cube = (delta + root) ** (1.0 / 3.0)
    val = (
        cube / (3 * 2 ** (1 / 3) * W**3)
        + 3 * pi * R**2 * s**2 / W
        - 2 ** (1 / 3) * E / (3 * W**3 * cube)
    )
    return float(val.real)


def xi2_numeric(params: Params, n_scan: int = 2000) -> float:
    """Positive sign change of the intersection discriminant in the area Pi."""
    b, s, R = params.beta, params.sigma, params.radius
    base = math.pi * R**2
    grid = base * np.geomspace(1e-8, 1e3, n_scan)
    d = intersection_discriminant(b, s, R, grid)
    flips = np.nonzero((d[:-1] < 0.0) & (d[1:] > 0.0))[0]
    if flips.size == 0:
        raise DomainError("no sign change of the intersection discriminant found")
    lo, hi = float(grid[flips[0]]), float(grid[flips[0] + 1])
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if intersection_discriminant(b, s, R, mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def xi_roots(params: Params) -> XiRoots:
    _hyperbola_slope(params)
    numeric = xi2_numeric(params)
    closed = xi2_closed_form(params)
    agrees = math.isfinite(closed) and abs(closed - numeric) <= XI2_AGREEMENT * numeric
    return XiRoots(0.0, numeric, xi34(params), closed, agrees)


def classify_region(params: Params, point) -> ConstraintFlags:
    a, b = (float(v) for v in point)
    R = params.radius
    margin = BOUNDARY_MARGIN * R
    return ConstraintFlags(
        well_defined=params.area - math.pi * a * a >= -1e-12 * params.area,
        no_cusp=a - 2.0 * b > margin,
        no_interpenetration=a + b < R - margin,
        positive=a > 0.0,
    )


def classify_region_short(params: Params, point) -> ConstraintFlags:
    """Constraints for a film attached to the short semi-axis a - b."""
    flags = classify_region(params, point)
    a, b = point
    return ConstraintFlags(
        flags.well_defined,
        flags.no_cusp,
        a - b < params.radius * (1.0 - BOUNDARY_MARGIN),
        flags.positive,
    )


def multiplier(params: Params, a: float) -> float:
    """Solve the first reduced equation (linear in lambda) at constant a."""
    al, B, s, P, R = params.alpha, params.beta, params.sigma, params.area, params.radius
    root_q = math.sqrt(max(P - math.pi * a * a, 0.0))
    return (
        al / R**2
        + 2.0 * a * (B * a + s)
        - 2.0 * R * s
        - 2.0 * P * B / math.pi
        + 2.0 * math.sqrt(2.0 / math.pi) * s * root_q
    )


def _short_side_multiplier(params: Params, a: float, b: float) -> float:
    al, B, s, P, R = params.alpha, params.beta, params.sigma, params.area, params.radius
    return al / R**2 - 2.0 * R * s + 2.0 * s * (a - b) - B * (2.0 * P / math.pi - 2.0 * a * a)


def third_equation_terms(params: Params, a: float):
    """Terms of the reduced a-equation sqrt2 s (pi a (2a - R) - Pi) + sqrt(Q)(...)."""
    B, s, P, R = params.beta, params.sigma, params.area, params.radius
    q = math.sqrt(max(P - math.pi * a * a, 0.0))
    sp = math.sqrt(math.pi)
    return (
        math.sqrt(2.0) * s * math.pi * a * (2.0 * a - R),
        -math.sqrt(2.0) * s * P,
        q * 2.0 * sp * B * R * a,
        q * s * sp * (a + R),
    )


def solve_oval(params: Params, film_side: str = "long", with_xi: bool = True) -> OvalSolution:
    points = intersect_conics(params, film_side)
    classify = classify_region if film_side == "long" else classify_region_short
    tau = tau_limit(params)
    ratio = params.area / (math.pi * params.radius**2)
    candidates, rejected = [], []
    for p in points:
        if p.b < -1e-12 * params.radius:
            rejected.append((p, ["negative b"]))
            continue
        flags = classify(params, (p.a, max(p.b, 0.0)))
        if flags.admissible:
            candidates.append((p, flags))
        else:
            rejected.append((p, flags.failures()))
    if not candidates:
        cusp = ratio <= tau or any("(2) cusp" in why for _, why in rejected)
        detail = "; ".join(f"({p.a:.6g}, {p.b:.6g}): {', '.join(why)}" for p, why in rejected)
        raise NoSolution(
            f"no admissible intersection (Pi/(pi R^2) = {ratio:.6g}, tau = {tau:.6g}): {detail}",
            reasons=rejected,
            cusp=cusp,
        )
    if len(candidates) > 1:
        raise AmbiguousSolution(
            f"{len(candidates)} admissible intersections", candidates=[p for p, _ in candidates]
        )
    p, flags = candidates[0]
    xi2 = xi2_numeric(params) if with_xi else None
    return OvalSolution(
        point_a=(p.a, p.b),
        lambda_bar=multiplier(params, p.a) if film_side == "long" else _short_side_multiplier(params, p.a, p.b),
        intersections=tuple(points),
        n_intersections=len(points),
        constraint_flags=flags.as_tuple(),
        tau=tau,
        xi2=xi2,
        film_side=film_side,
    )
