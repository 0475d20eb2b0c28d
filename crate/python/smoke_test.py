"""Smoke test for the pjacobi_py extension.

Build and install first:
    pip install --no-build-isolation -e crates/pjacobi-py
"""

import cmath
import math
import sys

import pjacobi_py as pj


def check(name, ok, detail=""):
    print(f"{'ok  ' if ok else 'FAIL'} {name} {detail}")
    return ok


def main():
    results = []

    w = pj.Weight(1.0, 0.5, 1.5)
    ev = pj.KernelEvaluator(w, 120)
    xs = [-0.8 + 0.01 * k for k in range(161)]
    dens = pj.bulk_density(ev, xs)
    results.append(check("bulk density", dens["max_abs_err"] < 0.05, f"{dens['max_abs_err']:.3e}"))

    k1 = ev.kernel(0.2, 0.3)
    k2 = ev.kernel_direct_sum(0.2, 0.3)
    results.append(check("CD vs direct sum", abs(k1 - k2) < 1e-10 * max(1.0, abs(k2)), f"{abs(k1 - k2):.1e}"))

    edge = pj.edge_bessel(ev, [(u, v) for u in (0.5, 1.0, 2.0) for v in (0.5, 1.0, 2.0)])
    results.append(check("edge Bessel", edge["max_rel_err"] < 0.05, f"{edge['max_rel_err']:.3e}"))

    x = 3.7
    j = pj.bessel_j(0.5, x)
    results.append(check("J_1/2", abs(j - math.sqrt(2 / (math.pi * x)) * math.sin(x)) < 1e-14))
    k = pj.bessel_k(0.5, x)
    results.append(check("K_1/2", abs(k - math.sqrt(math.pi / (2 * x)) * math.exp(-x)) < 1e-15))
    results.append(check("2F1(1,1;2;z)", abs(pj.hyp2f1(1, 1, 2, 0.5) + cmath.log(0.5) / 0.5) < 1e-14))

    traj = pj.integrate_schlesinger(-1.0, -0.25, 1.0, 3.0, 0.3, 1.2, tol=1e-11)
    res = traj.max_residuals()
    results.append(check("Painleve residuals", max(res["second_order"], res["gpv"], res["p3"]) < 1e-8,
                         f"{res['second_order']:.1e}"))
    shifted, round_trip = traj.backlund_check()
    results.append(check("Backlund", shifted < 1e-6 and round_trip < 1e-10, f"{shifted:.1e} {round_trip:.1e}"))

    md = pj.monodromy(-0.3, 0.2)
    results.append(check("cyclic relation", md["cyclic_residual"] < 1e-12, f"{md['cyclic_residual']:.1e}"))

    small = pj.KernelEvaluator(pj.Weight(1.0, 0.5, 1.5), 20)
    a = pj.sample(small, 4, seed=3)
    b = pj.sample(small, 4, seed=3)
    results.append(check("sampler determinism", a == b and len(a[0]) == 20))

    try:
        pj.Weight(1.0, 0.5, 0.5)
        results.append(check("t < 1 rejected", False))
    except ValueError:
        results.append(check("t < 1 rejected", True))

    print(f"{sum(results)}/{len(results)} checks passed")
    return 0 if all(results) else 1


if __name__ == "__main__":
    sys.exit(main())
