"""Physical parameters, shared geometry of the circular midline, and errors."""
from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field

import numpy as np

logger = logging.getLogger("kplateau")


class KPError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(KPError, ValueError):
    """An argument lies outside the domain of the operation."""


class InterpenetrationError(DomainError):
    """A thickness or semi-axis reaches the midline radius."""


class DegenerateConicError(DomainError):
    """The equilibrium hyperbola is undefined (zero surface tension)."""


class NoSolution(KPError):
    """No candidate satisfies the admissibility constraints."""

    def __init__(self, message, reasons=None, cusp=False):
        super().__init__(message)
        self.reasons = list(reasons or [])
        self.cusp = cusp


class AmbiguousSolution(KPError):
    """More than one admissible candidate where a unique one was expected."""

    def __init__(self, message, candidates=None):
        super().__init__(message)
        self.candidates = list(candidates or [])


class CaseKind(str, enum.Enum):
    ELLIPSE = "ellipse"
    DILATION = "dilation"
    OVAL = "oval"

    @classmethod
    def parse(cls, value) -> "CaseKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise DomainError(f"unknown case {value!r}; expected one of ellipse, dilation, oval") from None


@dataclass(frozen=True)
class Params:
    """Parameter tuple (alpha, beta, sigma, area, radius).

    ``area`` is the fixed cross-section area and ``radius`` the radius of the
    circular midline, whose length is ``2*pi*radius``.
    """

    alpha: float
    beta: float
    sigma: float
    area: float
    radius: float
    length: float = field(init=False, repr=False)

    def __post_init__(self):
        for name in ("alpha", "beta", "sigma", "area", "radius"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, float, np.floating, np.integer)):
                raise DomainError(f"{name} must be a real number, got {v!r}")
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, float(v))
        for name in ("alpha", "beta", "area", "radius"):
            if getattr(self, name) <= 0.0:
                raise DomainError(f"{name} must be positive, got {getattr(self, name)!r}")
        if self.sigma < 0.0:
            raise DomainError(f"sigma must be nonnegative, got {self.sigma!r}")
        object.__setattr__(self, "length", 2.0 * math.pi * self.radius)
        if self.sigma > 1.0:
            logger.warning("sigma=%g exceeds the physical range [0, 1]", self.sigma)

    @property
    def sigma_unphysical(self) -> bool:
        return self.sigma > 1.0

    def replace(self, **changes) -> "Params":
        kw = dict(alpha=self.alpha, beta=self.beta, sigma=self.sigma, area=self.area, radius=self.radius)
        kw.update(changes)
        return Params(**kw)

    def as_dict(self) -> dict:
        return dict(alpha=self.alpha, beta=self.beta, sigma=self.sigma, area=self.area, radius=self.radius)


def _check_arclength(params: Params, s):
    s_arr = np.asarray(s, dtype=float)
    L = params.length
    # a few ulps of slack so that s = L computed as 2*pi*R passes
    slack = 8.0 * np.finfo(float).eps * L
    if np.any(s_arr < -slack) or np.any(s_arr > L + slack):
        raise DomainError(f"arclength outside [0, {L}]")
    return s_arr


def _angle(params: Params, s):
    return 2.0 * np.pi * s / params.length


def midline_point(params: Params, s):
    """Point of the circular midline at arclength ``s`` (scalar or array)."""
    s = _check_arclength(params, s)
    t = _angle(params, s)
    R = params.radius
    pts = np.stack([R * np.cos(t), R * np.sin(t)], axis=-1)
    return pts


def midline_point_periodic(params: Params, s):
    """Same as :func:`midline_point` without the range check (s taken mod L)."""
    t = _angle(params, np.asarray(s, dtype=float))
    R = params.radius
    return np.stack([R * np.cos(t), R * np.sin(t)], axis=-1)


def inward_normal(params: Params, s):
    t = _angle(params, np.asarray(s, dtype=float))
    return np.stack([-np.cos(t), -np.sin(t)], axis=-1)


def scaled_curve_point(params: Params, s, thickness):
    """Trace of the film on the rod: the midline offset inward by ``thickness``.

    Uses u = x - a y'/|r'|, v = y + a x'/|r'| with the circle's derivatives.
    """
    s = _check_arclength(params, s)
    thickness = np.asarray(thickness, dtype=float)
    if np.any(thickness <= 0.0):
        raise DomainError("thickness must be positive")
    if np.any(thickness >= params.radius):
        raise InterpenetrationError(
            f"thickness {np.max(thickness)} reaches the midline radius {params.radius}"
        )
    t = _angle(params, s)
    R = params.radius
    x, y = R * np.cos(t), R * np.sin(t)
    # unit-speed parametrization: |r'| = 1
    dx, dy = -np.sin(t), np.cos(t)
    return np.stack([x - thickness * dy, y + thickness * dx], axis=-1)


def tube_point(params: Params, s, zeta1, zeta2):
    """Rod point p = r + zeta1 d + zeta2 z with d inward, z vertical."""
    t = _angle(params, np.asarray(s, dtype=float))
    R = params.radius
    zeta1 = np.asarray(zeta1, dtype=float)
    zeta2 = np.asarray(zeta2, dtype=float)
    x = R * np.cos(t) - zeta1 * np.cos(t)
    y = R * np.sin(t) - zeta1 * np.sin(t)
    z = np.broadcast_to(zeta2, np.broadcast(x, zeta2).shape)
    x, y, z = np.broadcast_arrays(x, y, z)
    return np.stack([x, y, z], axis=-1)
