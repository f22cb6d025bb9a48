"""Hot numeric loops: Sturm chains, root isolation/polishing, periodic quadrature.

Polynomials are float64 arrays of coefficients in descending degree order.
Every function here is numba-compatible; with ``KP_DISABLE_NUMBA=1`` they
run as ordinary Python on numpy arrays.
"""
import numpy as np

from ._accel import HAVE_NUMBA, jit

EPS = 2.220446049250313e-16
STURM_RTOL = 1e-10
MAX_STACK = 512


@jit
def horner(c, deg, x):
    acc = c[0]
    for i in range(1, deg + 1):
        acc = acc * x + c[i]
    return acc


@jit
def horner_with_derivative(c, deg, x):
    p = c[0]
    dp = 0.0
    for i in range(1, deg + 1):
        dp = dp * x + p
        p = p * x + c[i]
    return p, dp


@jit
def abs_horner(c, deg, x):
    """Evaluation of sum |c_i| |x|^i, the natural round-off scale of ``horner``."""
    ax = abs(x)
    acc = abs(c[0])
    for i in range(1, deg + 1):
        acc = acc * ax + abs(c[i])
    return acc


@jit
def _normalize_into(src, deg, dst):
    m = 0.0
    for i in range(deg + 1):
        if abs(src[i]) > m:
            m = abs(src[i])
    for i in range(deg + 1):
        dst[i] = src[i] / m


@jit
def sturm_chain(c, deg, rtol):
    """Build the Sturm chain of ``c``.

    Returns ``(chain, degs, m)``; row k holds a polynomial of degree
    ``degs[k]`` scaled to unit max-norm. A remainder whose coefficients all
    fall below ``rtol`` (relative to the division's working magnitude) ends
    the chain, so ``chain[m - 1]`` is then a numerical gcd(p, p').
    """
    chain = np.zeros((deg + 1, deg + 1))
    degs = np.zeros(deg + 1, dtype=np.int64)
    _normalize_into(c, deg, chain[0])
    degs[0] = deg
    d = np.zeros(deg + 1)
    for i in range(deg):
        d[i] = c[i] * (deg - i)
    _normalize_into(d, deg - 1, chain[1])
    degs[1] = deg - 1
    m = 2
    work = np.zeros(deg + 1)
    while m <= deg and degs[m - 1] > 0:
        da = degs[m - 2]
        db = degs[m - 1]
        for i in range(da + 1):
            work[i] = chain[m - 2, i]
        scale = 1.0
        for i in range(da - db + 1):
            q = work[i] / chain[m - 1, 0]
            if abs(q) > scale:
                scale = abs(q)
            for j in range(db + 1):
                work[i + j] -= q * chain[m - 1, j]
        # remainder occupies work[da-db+1 : da+1], degree db-1
        start = da - db + 1
        tol = rtol * scale
        first = -1
        for i in range(start, da + 1):
            if abs(work[i]) > tol:
                first = i
                break
        if first < 0:
            break
        rdeg = da - first
        mx = 0.0
        for i in range(first, da + 1):
            if abs(work[i]) > mx:
                mx = abs(work[i])
        for i in range(rdeg + 1):
            chain[m, i] = -work[first + i] / mx
        degs[m] = rdeg
        m += 1
    return chain, degs, m


@jit
def sign_variations(chain, degs, m, x):
    count = 0
    last = 0.0
    for k in range(m):
        v = horner(chain[k], degs[k], x)
        if v != 0.0:
            if last != 0.0 and (v > 0.0) != (last > 0.0):
                count += 1
            last = v
    return count


@jit
def count_distinct(chain, degs, m, a, b):
    """Number of distinct real roots in (a, b]."""
    return sign_variations(chain, degs, m, a) - sign_variations(chain, degs, m, b)


@jit
def isolate(chain, degs, m, lo, hi, min_width):
    """Dyadic subdivision into intervals holding one distinct root each.

    Intervals narrower than ``min_width`` that still hold several roots are
    returned as clusters. Output is sorted by position.
    """
    n_max = degs[0] + 1
    out_lo = np.zeros(n_max)
    out_hi = np.zeros(n_max)
    out_cnt = np.zeros(n_max, dtype=np.int64)
    n = 0
    stack_lo = np.zeros(MAX_STACK)
    stack_hi = np.zeros(MAX_STACK)
    stack_cnt = np.zeros(MAX_STACK, dtype=np.int64)
    top = 0
    total = count_distinct(chain, degs, m, lo, hi)
    if total <= 0:
        return out_lo, out_hi, out_cnt, 0
    stack_lo[0] = lo
    stack_hi[0] = hi
    stack_cnt[0] = total
    top = 1
    while top > 0:
        top -= 1
        a = stack_lo[top]
        b = stack_hi[top]
        k = stack_cnt[top]
        if k == 1 or (b - a) <= min_width or top >= MAX_STACK - 2:
            if n < n_max:
                out_lo[n] = a
                out_hi[n] = b
                out_cnt[n] = k
                n += 1
            continue
        mid = 0.5 * (a + b)
        left = count_distinct(chain, degs, m, a, mid)
        right = k - left
        if right > 0:
            stack_lo[top] = mid
            stack_hi[top] = b
            stack_cnt[top] = right
            top += 1
        if left > 0:
            stack_lo[top] = a
            stack_hi[top] = mid
            stack_cnt[top] = left
            top += 1
    return out_lo, out_hi, out_cnt, n


@jit
def polish_sign_change(c, deg, lo, hi):
    """Safeguarded Newton/bisection on a bracket where ``c`` changes sign.

    The iterate never leaves [lo, hi].
    """
    f_lo = horner(c, deg, lo)
    f_hi = horner(c, deg, hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    x = 0.5 * (lo + hi)
    for _ in range(200):
        f, df = horner_with_derivative(c, deg, x)
        if f == 0.0:
            return x
        if (f > 0.0) == (f_lo > 0.0):
            lo = x
            f_lo = f
        else:
            hi = x
        if hi - lo <= 2.0 * EPS * max(1.0, abs(x)):
            break
        x_new = x - f / df if df != 0.0 else 0.5 * (lo + hi)
        if not (lo < x_new < hi) or abs(x_new - x) > 0.5 * (hi - lo):
            x_new = 0.5 * (lo + hi)
        if x_new == x:
            break
        x = x_new
    return x


@jit
def narrow_by_count(chain, degs, m, lo, hi, rel_width):
    """Bisect on Sturm counts while keeping exactly one root inside."""
    for _ in range(200):
        if hi - lo <= rel_width * max(1.0, abs(lo), abs(hi)):
            break
        mid = 0.5 * (lo + hi)
        if count_distinct(chain, degs, m, lo, mid) >= 1:
            hi = mid
        else:
            lo = mid
    return lo, hi


@jit
def polish_even(c, deg, chain, degs, m, lo, hi):
    """Root of even multiplicity: no sign change in ``c``; locate via c'."""
    # counts turn noisy once |p| nears round-off, so stop early and switch to p'
    lo, hi = narrow_by_count(chain, degs, m, lo, hi, 1e-6)
    d = np.zeros(deg)
    for i in range(deg):
        d[i] = c[i] * (deg - i)
    if (horner(d, deg - 1, lo) > 0.0) != (horner(d, deg - 1, hi) > 0.0):
        return polish_sign_change(d, deg - 1, lo, hi)
    lo, hi = narrow_by_count(chain, degs, m, lo, hi, 4.0 * EPS)
    return 0.5 * (lo + hi)


@jit
def real_roots_kernel(c, deg, lo, hi):
    """Isolate and polish the distinct real roots of ``c`` in (lo, hi].

    Returns ``(roots, brackets_lo, brackets_hi, cluster_counts, odd, n, gcd_deg)``.
    ``odd[i]`` records whether ``c`` changes sign across bracket i.
    """
    cn = np.zeros(deg + 1)
    _normalize_into(c, deg, cn)
    chain, degs, m = sturm_chain(cn, deg, STURM_RTOL)
    min_width = 64.0 * EPS * max(1.0, abs(lo), abs(hi))
    blo, bhi, bcnt, n = isolate(chain, degs, m, lo, hi, min_width)
    roots = np.zeros(deg + 1)
    odd = np.zeros(deg + 1, dtype=np.bool_)
    for i in range(n):
        a = blo[i]
        b = bhi[i]
        fa = horner(cn, deg, a)
        fb = horner(cn, deg, b)
        if fb == 0.0:
            roots[i] = b
            fa2 = horner(cn, deg, b - (b - a) * 1e-3)
            fb2 = horner(cn, deg, b + (b - a) * 1e-3)
            odd[i] = (fa2 > 0.0) != (fb2 > 0.0)
        elif (fa > 0.0) != (fb > 0.0) and fa != 0.0:
            roots[i] = polish_sign_change(cn, deg, a, b)
            odd[i] = True
        else:
            roots[i] = polish_even(cn, deg, chain, degs, m, a, b)
            odd[i] = False
    return roots, blo, bhi, bcnt, odd, n, degs[m - 1]


if HAVE_NUMBA:

    @jit
    def periodic_trapezoid(f, h):
        acc = 0.0
        for i in range(f.shape[0]):
            acc += f[i]
        return acc * h

    @jit
    def shoelace_integrand(u, v, du, dv):
        out = np.empty_like(u)
        for i in range(u.shape[0]):
            out[i] = u[i] * dv[i] - v[i] * du[i]
        return out

else:

    def periodic_trapezoid(f, h):
        return float(np.sum(f)) * h

    def shoelace_integrand(u, v, du, dv):
        return u * dv - v * du

