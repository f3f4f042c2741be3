"""Acceptance criteria 1-8.

Each test prints one PASS/FAIL line (also collected into the terminal
summary) and then asserts.  Run directly with ``python3 tests/test_acceptance.py``
to get just the eight lines.
"""

import math
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent))

from conftest import SEEDS  # noqa: E402
from suslov import scheme_cay as cay, scheme_mv as mv  # noqa: E402
from suslov.analysis import (CAY, MV, locus_sample, order_estimate, parallel_defect, ray_growth,  # noqa: E402
                             recover_locus_polynomial, root_census, run_trajectory, work_precision)
from suslov.analysis.trajectory import invariant_drift  # noqa: E402
from suslov.liegroup import (cayley, cayley_planar, hat, inverse_cayley, is_rotation, pairing,  # noqa: E402
                             unhat)
from suslov.model import (GENERIC, GENERIC_M0, SPECIAL, SPECIAL_M0, build_model, reduced_lagrangian,  # noqa: E402
                          reference_flow, taylor_flow)
from suslov.polyalg import UniPoly, resultant_u  # noqa: E402

RESULTS = {}
GEN, SPE = build_model(GENERIC), build_model(SPECIAL)


def report(n, checks):
    """checks: list of (label, ok, detail)."""
    ok = all(c[1] for c in checks)
    bad = [f"{label} ({detail})" for label, good, detail in checks if not good]
    line = f"ACCEPTANCE {n}: {'PASS' if ok else 'FAIL'}"
    line += f" [{len(checks)} checks]" if ok else " - " + "; ".join(bad)
    RESULTS[n] = line
    print(line)
    return ok


def slope(x, y):
    return float(np.polyfit(np.log(x), np.log(y), 1)[0])


# -- 1 ------------------------------------------------------------------------

def criterion_1():
    checks = []
    grid = np.geomspace(1e-1, 1e-3, 9)
    for seed in SEEDS:
        M = np.random.default_rng(seed).uniform(-1.5, 1.5, 2)
        for sch in (MV, CAY):
            rep = order_estimate(sch, GEN, M, grid)
            checks.append((f"{sch.name} slope seed {seed}", abs(rep.fitted_slope - 3) <= 0.2,
                           f"{rep.fitted_slope:.3f}"))
            checks.append((f"{sch.name} coefficient seed {seed}", rep.coefficient_rel_error <= 0.05,
                           f"{rep.coefficient_rel_error:.2e}"))
    return checks


# -- 2 ------------------------------------------------------------------------

def criterion_2():
    checks = []
    for eps in (0.015, 0.030):
        tr = run_trajectory(MV, GEN, GENERIC_M0, eps, 1.0)
        d = invariant_drift(tr) if tr.completed else math.inf
        checks.append((f"R drift eps={eps}", d <= 1e-9, f"{d:.1e}"))
    rng = np.random.default_rng(SEEDS[0])
    worst = 0.0
    for w in rng.uniform(-2, 2, size=(100, 2)):
        R0 = mv.invariant_R(GEN, 0.1, w)
        for u, v in mv.step_branches_1(GEN, 0.1, w):
            worst = max(worst, abs(mv.invariant_R(GEN, 0.1, (u, v)) - R0) / R0)
    checks.append(("R on all branches", worst <= 1e-9, f"{worst:.1e}"))
    return checks


# -- 3 ------------------------------------------------------------------------

def criterion_3():
    checks = []
    rng = np.random.default_rng(SEEDS[1])
    worst = 0.0
    for w in rng.uniform(-2, 2, size=(100, 2)):
        nxt = cay.step_inf(GEN, 0.1, w)
        Q0, Q1 = cay.invariant_Q(GEN, 0.1, w), cay.invariant_Q(GEN, 0.1, nxt)
        worst = max(worst, abs(Q1 - Q0 - cay.q_drift_predicted(GEN, 0.1, w)) / max(1.0, Q0, Q1))
    checks.append(("Q identity generic", worst <= 1e-10, f"{worst:.1e}"))
    for eps in (0.007, 0.014):
        tr = run_trajectory(CAY, SPE, SPECIAL_M0, eps, 1.0)
        d = invariant_drift(tr) if tr.completed else math.inf
        checks.append((f"Q drift special eps={eps}", d <= 1e-9, f"{d:.1e}"))
    worst, counts = 0.0, set()
    for w in rng.uniform(-2, 2, size=(100, 2)):
        Q0 = cay.invariant_Q(SPE, 0.1, w)
        roots = cay.step_branches_inf(SPE, 0.1, w)
        counts.add(len(roots))
        for r in roots:
            worst = max(worst, abs(cay.invariant_Q(SPE, 0.1, r) - Q0) / Q0)
    checks.append(("Q on all 5 special branches", worst <= 1e-9 and counts == {5}, f"{worst:.1e}, {counts}"))
    return checks


# -- 4 ------------------------------------------------------------------------

def criterion_4():
    checks = []
    for sch, m, pair, label in ((MV, GEN, (4, 2), "mv generic"), (CAY, GEN, (7, 1), "cay generic"),
                                (CAY, SPE, (5, 1), "cay special")):
        c = root_census(sch, m, 0.1, 1000, seed=SEEDS[2])
        f = c.fraction(pair)
        checks.append((f"census {label}", f >= 0.95, f"{f:.3f}"))
    w = np.array([0.4, -0.7])
    for label, prob in (("mv", mv.step_problem_1(GEN, 0.3, w)), ("cay a7", cay.step_problem_inf(GEN, 0.3, w)),
                        ("cay a5", cay.step_problem_inf(SPE, 0.3, w))):
        r = UniPoly(resultant_u(*prob.polynomials()).coeffs)
        rel = abs(r.leading - prob.resultant_leading()) / abs(prob.resultant_leading())
        checks.append((f"leading coefficient {label}", rel <= 1e-9, f"{rel:.1e}"))
    prob = cay.step_problem_inf(GEN, 0.3, w)
    a6 = resultant_u(*prob.polynomials()).coeffs[6]
    rel = abs(a6 - prob.resultant_subleading()) / abs(prob.resultant_subleading())
    checks.append(("cay a6", rel <= 1e-9, f"{rel:.1e}"))
    return checks


# -- 5 ------------------------------------------------------------------------

def criterion_5():
    checks = []
    n = np.array([GEN.I22 * GEN.I13, GEN.I11 * GEN.I23, -GEN.I11 * GEN.I22])
    for sch in (MV, CAY):
        d = parallel_defect(locus_sample(sch, GEN, 0.1).normal_at_origin, n)
        checks.append((f"{sch.name} tangency", d <= 1e-10, f"{d:.1e}"))
        _, rep = recover_locus_polynomial(sch, GEN, 0.1)
        checks.append((f"{sch.name} nullity", rep.nullity == 1, rep.nullity))
        checks.append((f"{sch.name} held-out", rep.heldout_residual <= 1e-8, f"{rep.heldout_residual:.1e}"))
    g_mv, g_cay = ray_growth(MV, GEN, 0.1), ray_growth(CAY, GEN, 0.1)
    checks.append(("mv bounded", abs(g_mv.slope) < 0.1 and max(g_mv.max_norm) < 1e3, f"{g_mv.slope:.3f}"))
    checks.append(("cay cubic", abs(g_cay.slope - 3) < 0.1, f"{g_cay.slope:.3f}"))
    return checks


# -- 6 ------------------------------------------------------------------------

def criterion_6():
    rng = np.random.default_rng(SEEDS[0])
    worst = 0.0
    for eps, u, v in zip(rng.uniform(0.01, 1, 100), *rng.uniform(-3, 3, size=(2, 100))):
        W = cayley_planar(eps, u, v)
        omega = unhat(inverse_cayley(eps, W), tol=1e-9)
        a = cay.disc_lagrangian_inf(GEN, eps, W)
        b = eps * reduced_lagrangian(GEN, omega)
        worst = max(worst, abs(a - b) / max(1.0, abs(b)))
    skew = mv.skew_defect_1(0.1, 1.0, 0.0)
    return [("cay consistency", worst <= 1e-10, f"{worst:.1e}"), ("mv skew witness", skew > 1e-3, f"{skew:.2e}")]


# -- 7 ------------------------------------------------------------------------

def criterion_7():
    from suslov.plotting import trajectory_figure
    checks = []
    for m, M0, eps_ok, eps_fail, label in ((GEN, GENERIC_M0, (0.015, 0.030), (0.4, 0.5), "generic"),
                                           (SPE, SPECIAL_M0, (0.007, 0.014), (0.018, 0.02), "special")):
        rows = {s.name: work_precision(s, m, M0, eps_ok, 1.0) for s in (MV, CAY)}
        for name, table in rows.items():
            fails = [r.failure for r in table if r.failure]
            checks.append((f"{name} {label} completes", not fails, fails))
        fails = [r.failure for r in work_precision(MV, m, M0, eps_fail, 1.0)]
        checks.append((f"mv {label} fails at {eps_fail}", fails == ["legendre-inversion-failed"] * 2, fails))
        ranked = all(a.global_err < b.global_err for a, b in zip(rows["mv"], rows["cay"]))
        checks.append((f"mv error below cay ({label})", ranked,
                       [(a.global_err, b.global_err) for a, b in zip(rows["mv"], rows["cay"])]))
    trajs = {s.name: run_trajectory(s, GEN, GENERIC_M0, 0.015, 1.0) for s in (MV, CAY)}
    fig = trajectory_figure(trajs)
    labels = {ax.get_title() for ax in fig.axes[1:]}
    checks.append(("Ec and rho insets", len(fig.axes) >= 3 and any("E" in x for x in labels)
                   and any("rho" in x or "ρ" in x for x in labels), sorted(labels)))
    return checks


# -- 8 ------------------------------------------------------------------------

def criterion_8():
    checks = []
    for seed in SEEDS:
        rng = np.random.default_rng(seed)
        worst_rt, worst_iso, worst_so3 = 0.0, 0.0, 0.0
        for _ in range(200):
            eps = rng.uniform(0.01, 1)
            om = hat(rng.normal(size=3) * 2)
            W = cayley(eps, om)
            worst_rt = max(worst_rt, np.max(np.abs(inverse_cayley(eps, W) - om)) / max(1, np.max(np.abs(om))))
            a, b = rng.normal(size=(2, 3))
            worst_iso = max(worst_iso, abs(pairing(hat(a), hat(b)) - a @ b))
            worst_so3 = max(worst_so3, np.max(np.abs(W.T @ W - np.eye(3))))
            assert is_rotation(W, tol=1e-12)
        checks.append((f"Cayley roundtrip {seed}", worst_rt <= 1e-10, f"{worst_rt:.1e}"))
        checks.append((f"hat isometry {seed}", worst_iso <= 1e-12, f"{worst_iso:.1e}"))
        checks.append((f"SO(3) {seed}", worst_so3 <= 1e-12, f"{worst_so3:.1e}"))
        s = rng.uniform(0.2, 2)
        w = np.array([GEN.I23, -GEN.I13]) * s
        fix = max(np.max(np.abs(mv.step_1(GEN, 0.1, w) - w)), np.max(np.abs(cay.step_inf(GEN, 0.1, w) - w)))
        Meq = np.array([GEN.I11 * GEN.I23, -GEN.I13 * GEN.I22]) * s
        flow = np.max(np.abs(reference_flow(GEN, Meq, 0.3) - Meq))
        checks.append((f"fixed-point line {seed}", fix <= 1e-12 and flow <= 1e-10, f"{fix:.1e}/{flow:.1e}"))
        M = rng.uniform(-1, 1, 2)
        eps = np.geomspace(0.1, 0.01, 5)
        err = [np.linalg.norm(taylor_flow(GEN, M, e) - reference_flow(GEN, M, e)) for e in eps]
        sl = slope(eps, err)
        checks.append((f"taylor slope {seed}", sl >= 3.8, f"{sl:.2f}"))
    return checks


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
            5: criterion_5, 6: criterion_6, 7: criterion_7, 8: criterion_8}


def _run(n):
    assert report(n, CRITERIA[n]()), RESULTS[n]


def test_criterion_1_order():
    _run(1)


def test_criterion_2_rational_invariant():
    _run(2)


def test_criterion_3_polynomial_invariant():
    _run(3)


def test_criterion_4_root_census():
    _run(4)


def test_criterion_5_locus():
    _run(5)


def test_criterion_6_consistency_dichotomy():
    _run(6)


def test_criterion_7_experiments():
    _run(7)


def test_criterion_8_foundations():
    _run(8)


if __name__ == "__main__":
    failed = 0
    for n, fn in CRITERIA.items():
        failed += not report(n, fn())
    sys.exit(1 if failed else 0)
