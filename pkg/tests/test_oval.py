import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kplateau import DegenerateConicError, DomainError, NoSolution
from kplateau.oval import (
    LimaconShape,
    classify_region,
    conic_relative_residual,
    conic_system,
    intersect_conics,
    intersection_discriminant,
    limit_area_ratio,
    oval_b_of_a,
    solve_oval,
    tau_limit,
    third_equation_terms,
    xi2_numeric,
    xi34,
    xi_roots,
)
from kplateau.variational import el_residual

from conftest import bisect, make_params

OVAL_REF = dict(sigma=0.9, beta=1.0, radius=1.0)


def at_area(area):
    return make_params(area=area, **OVAL_REF)


def test_oval_b_of_a():
    assert oval_b_of_a(math.pi * 0.49, 0.7) == pytest.approx(0.0, abs=1e-7)
    assert oval_b_of_a(math.pi / 2, 1 / math.sqrt(2)) == pytest.approx(0.0, abs=1e-7)
    b = oval_b_of_a(2 * math.pi / 5, 0.55)
    assert b == pytest.approx(math.sqrt(2 * (0.4 - 0.55**2)), rel=1e-14)
    assert LimaconShape(0.55, b).area == pytest.approx(2 * math.pi / 5, rel=1e-12)
    with pytest.raises(DomainError):
        oval_b_of_a(1.0, 1.0)


def test_limacon_flags():
    assert LimaconShape(1.0, 0.5).has_cusps
    assert not LimaconShape(1.0, 0.49).has_cusps
    assert LimaconShape(1.0, 1.0).has_double_points


@pytest.mark.parametrize("point", [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])
def test_hyperbola_passes_through_three_points(point):
    hyp, _ = conic_system(at_area(1.0))
    assert conic_relative_residual(hyp, *point) == 0.0


def test_l2_on_both_conics():
    p = at_area(math.pi)
    hyp, ell = conic_system(p)
    assert abs(conic_relative_residual(hyp, 1.0, 0.0)) < 1e-12
    assert abs(conic_relative_residual(ell, 1.0, 0.0)) < 1e-12
    pts = intersect_conics(p)
    assert any(abs(q.a - 1.0) < 1e-12 and abs(q.b) < 1e-12 for q in pts)
    flags = classify_region(p, (1.0, 0.0))
    assert not flags.no_interpenetration


def test_zero_tension_is_degenerate():
    with pytest.raises(DegenerateConicError):
        conic_system(at_area(1.0).replace(sigma=0.0))


def _contour_oracle(p):
    """Hyperbola sign changes along the first-quadrant arc of the area ellipse."""
    hyp, _ = conic_system(p)
    ra, rb = math.sqrt(p.area / math.pi), math.sqrt(2 * p.area / math.pi)
    h = lambda phi: sum(c * t for c, t in zip(hyp, _terms(ra * math.cos(phi), rb * math.sin(phi))))
    phis = np.linspace(1e-9, math.pi / 2 - 1e-9, 20001)
    vals = np.array([h(f) for f in phis])
    idx = np.nonzero(np.sign(vals[:-1]) != np.sign(vals[1:]))[0]
    out = []
    for i in idx:
        f = bisect(h, phis[i], phis[i + 1])
        out.append((ra * math.cos(f), rb * math.sin(f)))
    return out


def _terms(a, b):
    return (a * a, a * b, b * b, a, b, 1.0)


def test_point_a_matches_contour_oracle(oval_point_a):
    sol = solve_oval(oval_point_a)
    oracle = [q for q in _contour_oracle(oval_point_a) if q[0] + q[1] < 1.0]
    assert len(oracle) == 1
    assert sol.point_a == pytest.approx(oracle[0], abs=1e-9)
    assert sol.point_a == pytest.approx((0.621487, 0.165854), abs=1e-6)
    assert sol.admissible and sol.constraint_flags == (True, True, True)
    hyp, ell = conic_system(oval_point_a)
    assert abs(conic_relative_residual(hyp, *sol.point_a)) < 1e-10
    assert abs(conic_relative_residual(ell, *sol.point_a)) < 1e-10
    assert math.pi * sol.a**2 + math.pi / 2 * sol.b**2 == pytest.approx(oval_point_a.area, rel=1e-10)


def test_point_a_reduced_equations(oval_point_a):
    sol = solve_oval(oval_point_a)
    terms = third_equation_terms(oval_point_a, sol.a)
    assert abs(math.fsum(terms)) < 1e-9 * max(map(abs, terms))
    assert el_residual("oval", oval_point_a, sol.a, sol.lambda_bar).max < 1e-8


def test_unique_admissible_point(oval_point_a):
    pts = intersect_conics(oval_point_a)
    ok = [q for q in pts if q.b >= 0 and classify_region(oval_point_a, (q.a, q.b)).admissible]
    assert len(ok) == 1


@st.composite
def oval_params(draw):
    return make_params(
        beta=draw(st.floats(0.01, 10)), sigma=draw(st.floats(0.01, 10)),
        area=draw(st.floats(0.01, 10)), radius=draw(st.floats(0.01, 10)),
    )


@given(oval_params())
@settings(max_examples=1000)
def test_intersections_lie_on_both_conics(p):
    hyp, ell = conic_system(p)
    for q in intersect_conics(p):
        assert abs(conic_relative_residual(hyp, q.a, q.b)) < 1e-10
        assert abs(conic_relative_residual(ell, q.a, q.b)) < 1e-10


def test_tangency_transition():
    p = at_area(1.0)
    xi2 = xi2_numeric(p)
    below = len(intersect_conics(at_area(xi2 * (1 - 1e-4))))
    above = len(intersect_conics(at_area(xi2 * (1 + 1e-4))))
    assert abs(above - below) == 2
    at = intersect_conics(at_area(xi2))
    assert any(q.multiplicity == 2 for q in at)


def test_counts_on_either_side_of_tangency():
    # pi/3 lies below Xi_2 and 2pi/3 above it
    assert len(intersect_conics(at_area(math.pi / 3))) == 2
    assert len(intersect_conics(at_area(2 * math.pi / 3))) == 4
    assert intersection_discriminant(1.0, 0.9, 1.0, math.pi / 3) < 0


def test_xi_roots():
    r = xi_roots(at_area(1.0))
    assert r.xi1 == 0.0
    assert r.xi34 == pytest.approx(math.pi * 0.9 * 4.7 / 8.41, rel=1e-14)
    assert r.xi34 == pytest.approx(1.5801, abs=1e-4)
    assert r.closed_form_agrees
    assert r.xi2 == pytest.approx(r.xi2_closed_form, rel=1e-6)


@pytest.mark.parametrize("beta, sigma, radius", [(1.0, 0.9, 1.0), (2.0, 0.3, 1.5), (0.5, 1.0, 3.0)])
def test_xi2_closed_form_agrees(beta, sigma, radius):
    assert xi_roots(make_params(beta=beta, sigma=sigma, radius=radius)).closed_form_agrees


def test_xi34_matches_discriminant_structure():
    # Xi_3 = Xi_4 is a double root of the discriminant: no sign change there
    p = at_area(1.0)
    x = xi34(p)
    d = [intersection_discriminant(1.0, 0.9, 1.0, x * f) for f in (1 - 1e-3, 1 + 1e-3)]
    assert np.sign(d[0]) == np.sign(d[1])


def test_tau():
    assert tau_limit(at_area(1.0)) == pytest.approx(0.224, abs=1e-3)
    assert limit_area_ratio(0.0, 0.9, 1.0) == 0.5
    assert limit_area_ratio(1.0, 1e12, 1.0) == pytest.approx(0.5, rel=1e-9)


def test_cusp_below_tau():
    p = at_area(0.5 * tau_limit(at_area(1.0)) * math.pi)
    with pytest.raises(NoSolution) as err:
        solve_oval(p)
    assert err.value.cusp
    assert err.value.reasons


def test_short_side_has_no_solution(oval_point_a):
    with pytest.raises(NoSolution):
        solve_oval(oval_point_a, film_side="short")


def test_classify_cusp_boundary():
    p = at_area(1.0)
    assert not classify_region(p, (0.4, 0.2)).no_cusp
    assert classify_region(p, (0.4, 0.19)).no_cusp


@pytest.mark.parametrize("ratio", np.linspace(0.25, 0.99, 12))
def test_existence_band(ratio):
    sol = solve_oval(at_area(ratio * math.pi), with_xi=False)
    assert sol.admissible


def test_shape_trend():
    sols = [solve_oval(make_params(beta=1.0, sigma=s, area=math.pi / 2, radius=1.0), with_xi=False)
            for s in (0.1, 1.0, 10.0)]
    long_axis = [s.a + s.b for s in sols]
    short_axis = [s.a - s.b for s in sols]
    assert long_axis[0] < long_axis[1] < long_axis[2]
    assert short_axis[0] > short_axis[1] > short_axis[2]
