"""One-step defects and their order in eps."""

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from ..model import mu3_cont, nu3_cont, reference_flow
from .schemes import get_scheme

REF_TOL = 1e-13


def defect(scheme, m, M, eps, ref_tol=REF_TOL):
    """Signed planar defect: one discrete momentum step minus the exact flow."""
    sch = get_scheme(scheme)
    M = np.asarray(M, dtype=float)[:2]
    return np.asarray(sch.momentum_step(m, eps, M)) - reference_flow(m, M, eps, tol=ref_tol)


def one_step_error(scheme, m, M, eps, ref_tol=REF_TOL):
    return float(np.linalg.norm(defect(scheme, m, M, eps, ref_tol)))


def analytic_leading(scheme, m, M):
    """Third-order coefficient of the defect predicted by the series expansions."""
    sch = get_scheme(scheme)
    M1, M2 = float(M[0]), float(M[1])
    return (sch.mu3(m, M1, M2) - mu3_cont(m, M1, M2),
            sch.nu3(m, M1, M2) - nu3_cont(m, M1, M2))


@dataclass
class OrderReport:
    eps_grid: List[float]
    one_step_errors: List[float]
    fitted_slope: float
    leading_coefficient_estimate: Tuple[float, float]
    slope_running: List[float]
    richardson_limit: Tuple[float, float]
    analytic_coefficient: Tuple[float, float]

    @property
    def coefficient_rel_error(self):
        a = np.array(self.analytic_coefficient)
        return float(np.linalg.norm(np.array(self.richardson_limit) - a) / np.linalg.norm(a))


def default_grid(lo=1e-3, hi=1e-1, n=9):
    return list(np.geomspace(hi, lo, n))


def order_estimate(scheme, m, M, eps_grid=None, ref_tol=REF_TOL):
    """Fit log(error) against log(eps) and extract the eps^3 coefficient.

    ``leading_coefficient_estimate`` is defect/eps^3 at the smallest step.  Because
    the next correction is O(eps), a one-step Richardson combination of the two
    smallest steps gives the limit as eps -> 0; both are reported.
    """
    grid = sorted((float(e) for e in (eps_grid if eps_grid is not None else default_grid())),
                  reverse=True)
    if len(grid) < 3 or len(set(grid)) != len(grid):
        raise ValueError("eps_grid needs at least three distinct values")
    if np.log10(grid[0] / grid[-1]) < 1.5 - 1e-12:
        raise ValueError("eps_grid must span at least 1.5 decades")
    defects = [defect(scheme, m, M, e, ref_tol) for e in grid]
    errs = [float(np.linalg.norm(d)) for d in defects]
    if min(errs) <= 0:
        raise ValueError("zero defect: the state sits on an equilibrium line")
    le, lr = np.log(grid), np.log(errs)
    slope = float(np.polyfit(le, lr, 1)[0])
    running = [float("nan")] + [float((lr[i] - lr[i - 1]) / (le[i] - le[i - 1]))
                                for i in range(1, len(grid))]
    c = [d / e ** 3 for d, e in zip(defects, grid)]
    e1, e2 = grid[-2], grid[-1]
    rich = (e1 * c[-1] - e2 * c[-2]) / (e1 - e2)
    return OrderReport(grid, errs, slope, tuple(float(x) for x in c[-1]), running,
                       tuple(float(x) for x in rich), tuple(float(x) for x in analytic_leading(scheme, m, M)))


__all__ = ["defect", "one_step_error", "analytic_leading", "OrderReport", "order_estimate",
           "default_grid"]
