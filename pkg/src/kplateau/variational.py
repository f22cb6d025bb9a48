"""Independent check of the equilibria on the discretized planar functional.

The total energy

    alpha E_el + E_f + E_c + beta E_sh

is sampled on the circular midline at ``n_nodes`` equispaced arclength
nodes. Derivatives of periodic samples are taken spectrally (FFT) and every
integral uses the periodic trapezoid rule, which is spectrally accurate for
smooth periodic integrands. The film term is the shoelace integral of the
scaled curve traced at the case's film-side thickness.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .domain import CaseKind, DomainError, Params, midline_point_periodic

FD_STEP = np.finfo(float).eps ** (1.0 / 3.0)
N_MODES = 8


@dataclass(frozen=True)
class DiscreteFunctional:
    case: CaseKind
    params: Params
    n_nodes: int = 2048
    a0: float | None = None  # base semi-axis, dilation case only

    def __post_init__(self):
        object.__setattr__(self, "case", CaseKind.parse(self.case))
        n = int(self.n_nodes)
        if n < 64 or n & (n - 1):
            raise DomainError(f"n_nodes must be a power of two >= 64, got {self.n_nodes}")
        object.__setattr__(self, "n_nodes", n)
        if self.case is CaseKind.DILATION and not (self.a0 and self.a0 > 0.0):
            raise DomainError("the dilation functional needs a positive base semi-axis a0")

    @property
    def step(self) -> float:
        return self.params.length / self.n_nodes

    def nodes(self) -> np.ndarray:
        return np.arange(self.n_nodes) * self.step

    def profile(self, state) -> np.ndarray:
        """Broadcast a constant or validate a sampled periodic profile."""
        n = self.n_nodes
        arr = np.asarray(state, dtype=float)
        if arr.ndim == 0:
            return np.full(n, float(arr))
        if arr.shape == (n + 1,):
            if abs(arr[0] - arr[-1]) > 1e-12 * max(1.0, abs(arr[0])):
                raise DomainError("closed profile must repeat its first value at s = L")
            return arr[:-1].copy()
        if arr.shape != (n,):
            raise DomainError(f"profile must have {n} (or {n + 1}) samples, got {arr.shape}")
        return arr

    def check(self, prof: np.ndarray) -> None:
        if self.case is CaseKind.OVAL:
            if np.any(prof <= 0.0):
                raise DomainError("oval profile needs a > 0")
            if np.any(math.pi * prof**2 > self.params.area * (1.0 + 1e-14)):
                raise DomainError("oval profile violates pi a^2 <= Pi")
        elif np.any(prof <= 0.0):
            raise DomainError(f"{self.case.value} profile must stay positive")

    def film_offset(self, prof: np.ndarray) -> np.ndarray:
        if self.case is CaseKind.ELLIPSE:
            return prof
        if self.case is CaseKind.DILATION:
            return prof * self.a0
        return prof + oval_b(self.params.area, prof)

    def shape_density(self, prof: np.ndarray) -> np.ndarray:
        P = self.params.area
        if self.case is CaseKind.ELLIPSE:
            return prof**2 + P**2 / (math.pi**2 * prof**2)
        if self.case is CaseKind.DILATION:
            return (prof - 1.0) ** 2 * self.a0**2
        return 2.0 / math.pi * (P - math.pi * prof**2)


@dataclass(frozen=True)
class EnergyBreakdown:
    e_el: float
    e_f: float
    e_c: float
    e_sh: float
    total: float
    scale: float  # sum of absolute weighted contributions

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in ("e_el", "e_f", "e_c", "e_sh", "total")}


def oval_b(area, a):
    return np.sqrt(np.maximum(2.0 / math.pi * (area - math.pi * np.asarray(a) ** 2), 0.0))


def spectral_derivative(f: np.ndarray, length: float, order: int = 1) -> np.ndarray:
    n = f.shape[-1]
    k = np.fft.rfftfreq(n, d=length / n) * 2.0 * np.pi
    fh = np.fft.rfft(f)
    mult = (1j * k) ** order
    if order % 2 == 1 and n % 2 == 0:
        mult[-1] = 0.0
    return np.fft.irfft(fh * mult, n=n)


def energy(df: DiscreteFunctional, state, lam: float) -> EnergyBreakdown:
    p = df.params
    prof = df.profile(state)
    df.check(prof)
    L, h = p.length, df.step
    xy = midline_point_periodic(p, df.nodes())
    x, y = xy[:, 0], xy[:, 1]
    dx, dy = spectral_derivative(x, L), spectral_derivative(y, L)
    ddx, ddy = spectral_derivative(x, L, 2), spectral_derivative(y, L, 2)
    speed = np.sqrt(dx * dx + dy * dy)

    curv = (dx * ddy - ddx * dy) ** 2 / speed**6
    e_el = K.periodic_trapezoid(curv * speed, h)

    thick = df.film_offset(prof)
    u = x - thick * dy / speed
    v = y + thick * dx / speed
    du, dv = spectral_derivative(u, L), spectral_derivative(v, L)
    e_f = p.sigma * K.periodic_trapezoid(K.shoelace_integrand(u, v, du, dv), h)

    e_c = lam * K.periodic_trapezoid(speed - 1.0, h)
    e_sh = K.periodic_trapezoid(df.shape_density(prof) * speed, h)

    parts = (p.alpha * e_el, e_f, e_c, p.beta * e_sh)
    return EnergyBreakdown(
        e_el=float(e_el),
        e_f=float(e_f),
        e_c=float(e_c),
        e_sh=float(e_sh),
        total=float(sum(parts)),
        scale=float(sum(abs(v) for v in parts)),
    )


def perturbation_basis(df: DiscreteFunctional, n_directions: int = 2 * N_MODES + 1, seed: int = 0):
    """Unit-RMS periodic directions: constant, then cos/sin of modes 1..8.

    Requests beyond 17 directions are filled with seeded random combinations
    of the same modes.
    """
    t = 2.0 * np.pi * df.nodes() / df.params.length
    base = [np.ones_like(t)]
    for k in range(1, N_MODES + 1):
        base.append(math.sqrt(2.0) * np.cos(k * t))
        base.append(math.sqrt(2.0) * np.sin(k * t))
    base = np.array(base)
    if n_directions <= len(base):
        return base[:n_directions]
    rng = np.random.default_rng(seed)
    extra = rng.standard_normal((n_directions - len(base), len(base))) @ base
    extra /= np.sqrt(np.mean(extra**2, axis=1))[:, None]
    return np.vstack([base, extra])


@dataclass(frozen=True)
class StationarityReport:
    first: np.ndarray  # normalized |dE/de| per direction
    second: np.ndarray  # normalized d2E/de2 per direction
    energy: EnergyBreakdown

    @property
    def max_first(self) -> float:
        return float(np.max(self.first))

    @property
    def strict_local_min(self) -> bool:
        return bool(np.all(self.second > 0.0))


def directional_derivatives(df, state, lam, n_directions: int = 2 * N_MODES + 1) -> StationarityReport:
    prof = df.profile(state)
    e0 = energy(df, prof, lam)
    scale_state = float(np.mean(np.abs(prof)))
    hfd = FD_STEP
    first, second = [], []
    for phi in perturbation_basis(df, n_directions):
        d = scale_state * phi
        ep = energy(df, prof + hfd * d, lam).total
        em = energy(df, prof - hfd * d, lam).total
        first.append(abs(ep - em) / (2.0 * hfd) / e0.scale)
        second.append((ep - 2.0 * e0.total + em) / hfd**2 / e0.scale)
    return StationarityReport(np.array(first), np.array(second), e0)


def stationarity_check(df, state, lam, n_directions: int = 2 * N_MODES + 1) -> float:
    """Largest normalized directional derivative over the perturbation basis."""
    return directional_derivatives(df, state, lam, n_directions).max_first


# -- reduced Euler-Lagrange systems at constant state -------------------------


@dataclass(frozen=True)
class ELResidual:
    eq1: float
    eq2: float
    eq3: float
    eq4: float
    coeff1: float  # raw cos-coefficient of eq1
    coeff2: float  # raw sin-coefficient of eq2
    raw3: float

    @property
    def max(self) -> float:
        return max(abs(self.eq1), abs(self.eq2), abs(self.eq3), abs(self.eq4))

    def as_dict(self) -> dict:
        return {"eq1": self.eq1, "eq2": self.eq2, "eq3": self.eq3, "eq4": self.eq4}


def _ellipse_terms(p: Params, a, lam, trig):
    al, b, s, P, R = p.alpha, p.beta, p.sigma, p.area, p.radius
    pi2 = math.pi**2
    first = [
        2 * a * trig * (b * a / 2),
        -2 * a * trig * s,
        b * P**2 * trig / (pi2 * a**2),
        trig * lam,
        -trig * al / R**2,
        trig * 2 * R * s,
    ]
    third = [2 * a * s, -2 * R * s, -2 * b * P**2 * R / (pi2 * a**3), 2 * a * b * R]
    return first, third


def _dilation_terms(p: Params, theta, lam, trig, a0):
    al, b, s, R = p.alpha, p.beta, p.sigma, p.radius
    first = [
        2 * a0 * trig * theta * b * a0,
        2 * a0 * trig * theta * s,
        -2 * a0 * trig * theta * 0.5 * b * a0 * theta,
        -trig * b * a0**2,
        -trig * lam,
        trig * al / R**2,
        -trig * 2 * R * s,
    ]
    third = [2 * a0 * a0 * theta * b * R, 2 * a0 * a0 * theta * s, -2 * a0 * R * a0 * b, -2 * a0 * R * s]
    return first, third


def _oval_terms(p: Params, a, lam, trig):
    al, b, s, P, R = p.alpha, p.beta, p.sigma, p.area, p.radius
    pi = math.pi
    Q = P - pi * a * a
    if Q <= 0.0:
        raise DomainError("oval equations need Pi - pi a^2 > 0")
    sq, spi, s2 = math.sqrt(Q), math.sqrt(pi), math.sqrt(2.0)
    c = spi * trig * Q
    first = [
        c * pi * a**2 * (-2 * R**2 * b * a**2),
        c * pi * a**2 * (-2 * R**2 * a * s),
        c * pi * a**2 * (-al),
        c * pi * a**2 * (lam * R**2),
        c * pi * a**2 * (2 * s * R**3),
        c * 2 * P * R**2 * a * 2 * b * a,
        c * 2 * P * R**2 * a * s,
        c * P * al,
        -c * P * lam * R**2,
        -c * P * 2 * s * R**3,
        2 * s2 * s * R**2 * sq * trig * pi**2 * a**4,
        -2 * s2 * s * R**2 * sq * trig * 2 * pi * a**2 * P,
        2 * s2 * s * R**2 * sq * trig * P**2,
        -2 * b * P**2 * R**2 * Q * trig / spi,
    ]
    third = [
        s2 * s * pi * a * 2 * a / sq,
        -s2 * s * pi * a * R / sq,
        -s2 * s * P / sq,
        2 * spi * b * R * a,
        s * spi * a,
        s * spi * R,
    ]
    return first, third


def el_terms(case, params: Params, state: float, lam: float, t: float, a0: float | None = None):
    """Term lists (eq1 at angle t, eq2 at angle t, eq3) for a constant state."""
    case = CaseKind.parse(case)
    if case is CaseKind.ELLIPSE:
        f1, f3 = _ellipse_terms(params, state, lam, math.cos(t))
        f2, _ = _ellipse_terms(params, state, lam, math.sin(t))
    elif case is CaseKind.DILATION:
        if a0 is None:
            raise DomainError("dilation residuals need a0")
        f1, f3 = _dilation_terms(params, state, lam, math.cos(t), a0)
        f2, _ = _dilation_terms(params, state, lam, math.sin(t), a0)
    else:
        f1, f3 = _oval_terms(params, state, lam, math.cos(t))
        f2, _ = _oval_terms(params, state, lam, math.sin(t))
    return f1, f2, f3


def _scaled(terms) -> float:
    scale = max(abs(v) for v in terms)
    return math.fsum(terms) / scale if scale > 0.0 else 0.0


def el_residual(case, params: Params, state: float, lam: float, a0: float | None = None,
                t: float = math.pi / 5) -> ELResidual:
    """Scaled residuals of the reduced Euler-Lagrange system at a constant state.

    Equations 1 and 2 carry a common cos t / sin t factor; their coefficients
    are extracted at angle ``t``. Equation 4 is the closure of the length.
    """
    f1, f2, f3 = el_terms(case, params, state, lam, t, a0)
    coeff1 = math.fsum(f1) / math.cos(t)
    coeff2 = math.fsum(f2) / math.sin(t)
    eq4 = params.length / (2.0 * math.pi * params.radius) - 1.0
    return ELResidual(
        eq1=_scaled(f1),
        eq2=_scaled(f2),
        eq3=_scaled(f3),
        eq4=eq4,
        coeff1=coeff1,
        coeff2=coeff2,
        raw3=math.fsum(f3),
    )
