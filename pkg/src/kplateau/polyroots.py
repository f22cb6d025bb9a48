"""Real-root machinery for quartics.

Isolation uses Sturm-sequence counts on dyadic subdivisions, followed by a
safeguarded Newton/bisection polish inside each isolating bracket.
Coefficients are normalized by their max-norm first, so very large
coefficient sets (the conic-intersection quartic) do not overflow.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .domain import DomainError

RESIDUAL_TOL = 1e-12


@dataclass(frozen=True)
class QuarticPoly:
    """Real quartic c4 x^4 + c3 x^3 + c2 x^2 + c1 x + c0 (descending order)."""

    coeffs: tuple

    def __post_init__(self):
        c = tuple(float(v) for v in self.coeffs)
        if len(c) != 5:
            raise DomainError(f"a quartic needs 5 coefficients, got {len(c)}")
        if not all(np.isfinite(c)):
            raise DomainError("quartic coefficients must be finite")
        if c[0] == 0.0:
            raise DomainError("leading coefficient of a quartic must be nonzero")
        object.__setattr__(self, "coeffs", c)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coeffs)

    def __call__(self, x):
        return np.polyval(self.array, x)

    def derivative(self, x):
        return np.polyval(np.polyder(self.array), x)

    @property
    def scale(self) -> float:
        return max(abs(v) for v in self.coeffs)

    def residual_scale(self, x) -> float:
        """Residual scale max|c_i| * max(1, |x|)^4."""
        return self.scale * max(1.0, abs(x)) ** 4


@dataclass(frozen=True)
class RootReport:
    roots: tuple  # distinct real roots, ascending
    multiplicities: tuple
    discriminant: float
    brackets: tuple = ()  # isolating interval of each root

    @property
    def real_roots(self) -> list:
        """Roots repeated according to multiplicity."""
        out = []
        for r, m in zip(self.roots, self.multiplicities):
            out.extend([r] * m)
        return out

    @property
    def positive_count(self) -> int:
        return sum(m for r, m in zip(self.roots, self.multiplicities) if r > 0.0)

    @property
    def has_multiple_root(self) -> bool:
        return any(m > 1 for m in self.multiplicities)


def quartic_discriminant(a, b, c, d, e):
    """Discriminant from the standard expansion; works elementwise on arrays."""
    return (
        256 * a**3 * e**3
        - 192 * a**2 * b * d * e**2
        - 128 * a**2 * c**2 * e**2
        + 144 * a**2 * c * d**2 * e
        - 27 * a**2 * d**4
        + 144 * a * b**2 * c * e**2
        - 6 * a * b**2 * d**2 * e
        - 80 * a * b * c**2 * d * e
        + 18 * a * b * c * d**3
        + 16 * a * c**4 * e
        - 4 * a * c**3 * d**2
        - 27 * b**4 * e**2
        + 18 * b**3 * c * d * e
        - 4 * b**3 * d**3
        - 4 * b**2 * c**3 * e
        + b**2 * c**2 * d**2
    )


def discriminant(p: QuarticPoly) -> float:
    return float(quartic_discriminant(*p.coeffs))


def normalized_discriminant(p: QuarticPoly) -> float:
    """Discriminant of p / max|c_i|; same sign as :func:`discriminant`, no overflow."""
    s = p.scale
    return discriminant(QuarticPoly(tuple(v / s for v in p.coeffs)))


def descartes_positive(p: QuarticPoly) -> int:
    """Sign changes in the nonzero coefficient sequence."""
    signs = [v > 0 for v in p.coeffs if v != 0.0]
    return sum(1 for s0, s1 in zip(signs, signs[1:]) if s0 != s1)


def _real_roots_of(c: np.ndarray, lo: float, hi: float):
    """Distinct roots with multiplicities for a polynomial of any degree >= 1."""
    c = np.trim_zeros(np.asarray(c, dtype=float), "f")
    deg = len(c) - 1
    if deg < 1:
        return [], [], []
    roots, blo, bhi, bcnt, odd, n, gcd_deg = K.real_roots_kernel(c, deg, lo, hi)
    out_r, out_m, out_b = [], [], []
    gcd_roots = None
    for i in range(n):
        r = float(roots[i])
        mult = int(bcnt[i])
        if gcd_deg > 0 and bcnt[i] == 1:
            if gcd_roots is None:
                g = _sturm_gcd(c, deg)
                gcd_roots = list(zip(*_real_roots_of(g, lo, hi)[:2])) if len(g) > 1 else []
            for gr, gm in gcd_roots:
                if blo[i] <= gr <= bhi[i] or abs(gr - r) <= 1e-7 * max(1.0, abs(r)):
                    mult = gm + 1
                    break
        # sign analysis across the bracket fixes the parity
        if (mult % 2 == 1) != bool(odd[i]):
            mult += 1
        out_r.append(r)
        out_m.append(mult)
        out_b.append((float(blo[i]), float(bhi[i])))
    return out_r, out_m, out_b


def _sturm_gcd(c: np.ndarray, deg: int) -> np.ndarray:
    cn = c / np.max(np.abs(c))
    chain, degs, m = K.sturm_chain(cn, deg, K.STURM_RTOL)
    return chain[m - 1, : degs[m - 1] + 1].copy()


def isolate_real_roots(p: QuarticPoly, interval) -> RootReport:
    """Bracket and polish every real root of ``p`` in the closed interval."""
    lo, hi = (float(v) for v in interval)
    if not lo < hi:
        raise DomainError(f"degenerate interval [{lo}, {hi}]")
    # the kernel counts on (lo, hi]; widen by a hair so a root at lo is kept
    w = 1e-12 * max(1.0, abs(lo), abs(hi))
    roots, mults, brackets = _real_roots_of(p.array, lo - w, hi)
    roots = [max(r, lo) for r in roots]
    return RootReport(tuple(roots), tuple(mults), discriminant(p), tuple(brackets))


def real_roots(p: QuarticPoly) -> RootReport:
    """All real roots, searched inside the Cauchy bound."""
    c = p.array
    bound = 1.0 + np.max(np.abs(c[1:] / c[0]))
    return isolate_real_roots(p, (-bound * 1.0000001, bound * 1.0000001))


def residual_ok(p: QuarticPoly, x: float, tol: float = RESIDUAL_TOL) -> bool:
    return abs(p(x)) <= tol * p.residual_scale(x)
