"""The numba kernels and the pure-numpy fallback must agree."""
import json
import os
import subprocess
import sys

import pytest

SCRIPT = r"""
import json, math
import numpy as np
from kplateau import Params, backend_name, solve_equilibrium, solve_oval
from kplateau.polyroots import QuarticPoly, real_roots
from kplateau.variational import DiscreteFunctional, energy, stationarity_check

rng = np.random.default_rng(5)
roots = []
for _ in range(50):
    c = rng.standard_normal(5)
    rep = real_roots(QuarticPoly(tuple(c)))
    roots.append([list(rep.roots), list(rep.multiplicities)])
p = Params(1.0, 1.0, 1.0, 10.0, 5.0)
e = solve_equilibrium(p)
po = Params(1.0, 1.0, 0.9, 2 * math.pi / 5, 1.0)
o = solve_oval(po, with_xi=False)
df = DiscreteFunctional("ellipse", p, 512)
print(json.dumps({
    "backend": backend_name(),
    "roots": roots,
    "a_bar": e.a_bar,
    "oval": [o.a, o.b],
    "energy": energy(df, 1.5, 0.3).total,
    "stationarity": stationarity_check(df, e.a_bar, e.lambda_bar),
}))
"""


def run_backend(disable):
    env = dict(os.environ)
    env["KP_DISABLE_NUMBA"] = "1" if disable else "0"
    out = subprocess.run([sys.executable, "-c", SCRIPT], env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


@pytest.fixture(scope="module")
def both():
    pytest.importorskip("numba")
    return run_backend(False), run_backend(True)


def test_backend_names(both):
    fast, slow = both
    assert fast["backend"] == "numba" and slow["backend"] == "numpy"


def test_root_isolation_agrees(both):
    fast, slow = both
    for (rf, mf), (rs, ms) in zip(fast["roots"], slow["roots"]):
        assert mf == ms
        assert rf == pytest.approx(rs, rel=1e-12, abs=1e-12)


def test_solutions_agree(both):
    fast, slow = both
    assert fast["a_bar"] == pytest.approx(slow["a_bar"], rel=1e-14)
    assert fast["oval"] == pytest.approx(slow["oval"], rel=1e-13)
    assert fast["energy"] == pytest.approx(slow["energy"], rel=1e-13)
    assert fast["stationarity"] < 1e-5 and slow["stationarity"] < 1e-5
