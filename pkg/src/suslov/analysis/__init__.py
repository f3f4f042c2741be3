"""Experiment harness: trajectories, convergence, root census and locus studies."""

from .census import Census, CensusRow, is_real_root, root_census
from .convergence import (OrderReport, analytic_leading, default_grid, defect, one_step_error,
                          order_estimate)
from .locus import (GrowthReport, LocusSample, RecoveryReport, locus_residual, locus_sample,
                    parallel_defect, ray_growth, recover_locus_polynomial, transcribed_coefficients)
from .schemes import CAY, MV, SCHEMES, Scheme, get_scheme
from .trajectory import (FailureMarker, Trajectory, TrajectoryRecord, WorkPrecisionRow,
                         ellipse_angle, invariant_drift, phase_lead, run_trajectory, step_count, work_precision)

__all__ = [
    "Census", "CensusRow", "is_real_root", "root_census",
    "OrderReport", "analytic_leading", "default_grid", "defect", "one_step_error", "order_estimate",
    "GrowthReport", "LocusSample", "RecoveryReport", "locus_residual", "locus_sample",
    "parallel_defect", "ray_growth", "recover_locus_polynomial", "transcribed_coefficients",
    "CAY", "MV", "SCHEMES", "Scheme", "get_scheme",
    "FailureMarker", "Trajectory", "TrajectoryRecord", "WorkPrecisionRow", "ellipse_angle",
    "invariant_drift", "phase_lead",
    "run_trajectory", "step_count", "work_precision",
]
