"""Compare the numba kernels against the pure-numpy fallback.

Each backend runs in its own interpreter because KP_DISABLE_NUMBA is read at
import time. Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, math, sys, time
import numpy as np
from kplateau import Params, backend_name, solve_equilibrium, solve_oval
from kplateau.polyroots import QuarticPoly, real_roots
from kplateau.variational import DiscreteFunctional, stationarity_check

repeat = int(sys.argv[1])
rng = np.random.default_rng(0)
quartics = [QuarticPoly(tuple(c)) for c in rng.standard_normal((repeat, 5))]
params = [Params(1.0, *v) for v in rng.uniform(0.05, 10.0, size=(repeat, 4))]
p_oval = Params(1.0, 1.0, 0.9, 2 * math.pi / 5, 1.0)
p_ell = Params(1.0, 1.0, 1.0, 10.0, 5.0)
e = solve_equilibrium(p_ell)
df = DiscreteFunctional("ellipse", p_ell, 2048)

def timed(fn):
    fn()  # warm-up (JIT compile on the numba path)
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0

out = {
    "backend": backend_name(),
    "real_roots": timed(lambda: [real_roots(q) for q in quartics]) / repeat,
    "solve_equilibrium": timed(lambda: [solve_equilibrium(p) for p in params]) / repeat,
    "solve_oval": timed(lambda: [solve_oval(p_oval, with_xi=False) for _ in range(repeat // 10 or 1)]) / (repeat // 10 or 1),
    "stationarity_check": timed(lambda: stationarity_check(df, e.a_bar, e.lambda_bar)),
}
print(json.dumps(out))
"""


def run(disable: bool, repeat: int) -> dict:
    env = dict(os.environ, KP_DISABLE_NUMBA="1" if disable else "0")
    proc = subprocess.run([sys.executable, "-c", WORKLOAD, str(repeat)], env=env, capture_output=True, text=True,
                          check=True)
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=1000)
    args = ap.parse_args(argv)
    fast, slow = run(False, args.repeat), run(True, args.repeat)
    print(f"{'kernel':<20}{fast['backend']:>14}{slow['backend']:>14}{'speedup':>10}")
    for key in ("real_roots", "solve_equilibrium", "solve_oval", "stationarity_check"):
        f, s = fast[key], slow[key]
        print(f"{key:<20}{f * 1e6:>11.1f} us{s * 1e6:>11.1f} us{s / f:>9.1f}x")


if __name__ == "__main__":
    main()
