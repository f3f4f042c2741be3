"""Discrete trajectories with their observables, plus work-precision sweeps."""

import math
import time
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from ..errors import LegendreInversionError, StepFailedError, StiffnessError
from ..liegroup import cayley_planar, polar_project
from ..model import constrained_energy, reference_flow, reference_trajectory, signed_distance
from .schemes import get_scheme

REPROJECT_EVERY = 100
MAX_STEPS = 10 ** 8


@dataclass
class TrajectoryRecord:
    k: int
    t: float
    u: float
    v: float
    M: np.ndarray
    Ec: float
    rho: float
    scheme_invariant: float
    multiplier: float = math.nan
    attitude: Optional[np.ndarray] = None


@dataclass
class FailureMarker:
    kind: str
    step: int
    t: float
    message: str


@dataclass
class Trajectory:
    scheme: str
    eps: float
    T: float
    n_steps: int
    records: List[TrajectoryRecord] = field(default_factory=list)
    failure: Optional[FailureMarker] = None

    @property
    def completed(self):
        return self.failure is None

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def column(self, name):
        if name == "M1":
            return np.array([r.M[0] for r in self.records])
        if name == "M2":
            return np.array([r.M[1] for r in self.records])
        if name == "M3":
            return np.array([r.M[2] for r in self.records])
        return np.array([getattr(r, name) for r in self.records])


def step_count(eps, T):
    if not (eps > 0 and T > 0):
        raise ValueError("eps and T must be positive")
    n = math.ceil(T / eps - 1e-9)
    if n > MAX_STEPS:
        raise ValueError(f"T/eps = {T / eps:.3g} exceeds the {MAX_STEPS:.0e} step limit")
    return max(n, 1)


def _record(sch, m, eps, k, w, g):
    M = np.asarray(sch.legendre(m, eps, w), dtype=float)
    return TrajectoryRecord(k=k, t=k * eps, u=float(w[0]), v=float(w[1]), M=M,
                            Ec=float(constrained_energy(m, M)), rho=signed_distance(m, M),
                            scheme_invariant=float(sch.invariant(m, eps, w)),
                            attitude=None if g is None else g.copy())


def run_trajectory(scheme, m, M0, eps, T, with_attitude=False):
    """Iterate the principal branch from the planar momentum ``M0`` up to time ``T``.

    Records k = 0..N with N = ceil(T/eps).  A failed inversion or step ends the
    run early; the records so far are kept and ``failure`` describes what broke.
    """
    sch = get_scheme(scheme)
    n = step_count(eps, T)
    traj = Trajectory(sch.name, eps, T, n)
    try:
        w = np.asarray(sch.invert(m, eps, M0), dtype=float)
    except (LegendreInversionError, StepFailedError) as exc:
        traj.failure = FailureMarker(exc.kind, 0, 0.0, str(exc))
        return traj
    g = np.eye(3) if with_attitude else None
    rec = _record(sch, m, eps, 0, w, g)
    traj.records.append(rec)
    for k in range(n):
        try:
            w_next = np.asarray(sch.step(m, eps, w), dtype=float)
        except StepFailedError as exc:
            traj.failure = FailureMarker(exc.kind, k, k * eps, str(exc))
            return traj
        W = cayley_planar(eps, w[0], w[1])
        if g is not None:
            g = g @ W
            if (k + 1) % REPROJECT_EVERY == 0:
                g = polar_project(g)
        nxt = _record(sch, m, eps, k + 1, w_next, g)
        rec.multiplier = float((nxt.M - W.T @ rec.M)[2])
        traj.records.append(nxt)
        rec, w = nxt, w_next
    return traj


def invariant_drift(traj):
    """max_k |I_k - I_0| / |I_0| for the scheme invariant column."""
    col = traj.column("scheme_invariant")
    return float(np.max(np.abs(col - col[0])) / abs(col[0]))


def ellipse_angle(m, M):
    """Unwrapped angle of (M1/sqrt(I11), M2/sqrt(I22)); monotone along the flow."""
    M = np.atleast_2d(M)
    return np.unwrap(np.arctan2(M[:, 1] / math.sqrt(m.I22), M[:, 0] / math.sqrt(m.I11)))


def phase_lead(traj, m, ref_tol=1e-13):
    """Mean angular lead of the discrete run over the exact flow, in radians.

    Angles are measured on the energy ellipse in the direction of motion, so a
    positive value means the discrete map runs ahead of the continuous one.
    """
    if len(traj) < 2:
        return math.nan
    t = traj.column("t")
    disc = np.array([r.M[:2] for r in traj.records])
    ref = reference_trajectory(m, disc[0], t, tol=ref_tol)
    th_d, th_r = ellipse_angle(m, disc), ellipse_angle(m, ref)
    direction = np.sign(th_r[-1] - th_r[0]) or 1.0
    return float(direction * np.mean(th_d - th_r))


@dataclass
class WorkPrecisionRow:
    eps: float
    steps: int
    wall_ns: int
    global_err: float
    max_dEc: float
    max_rho: float
    failure: Optional[str] = None


def work_precision(scheme, m, M0, eps_list, T, ref_tol=1e-13):
    """Cost and accuracy of one scheme over a list of step sizes.

    The global error compares the last planar momentum with the reference flow
    evaluated at the same terminal time.  Failed runs keep their step count and
    report NaN for the error columns.
    """
    M0 = np.asarray(M0, dtype=float)[:2]
    E0 = constrained_energy(m, M0)
    rows = []
    for eps in eps_list:
        t0 = time.perf_counter_ns()
        traj = run_trajectory(scheme, m, M0, eps, T)
        wall = time.perf_counter_ns() - t0
        steps = max(len(traj) - 1, 0)
        if traj.failure is not None:
            rows.append(WorkPrecisionRow(eps, steps, wall, math.nan, math.nan, math.nan,
                                         traj.failure.kind))
            continue
        last = traj.records[-1]
        try:
            ref = reference_flow(m, M0, last.t, tol=ref_tol)
        except StiffnessError as exc:
            rows.append(WorkPrecisionRow(eps, steps, wall, math.nan, math.nan, math.nan, exc.__class__.__name__))
            continue
        err = float(np.linalg.norm(last.M[:2] - ref))
        dE = float(np.max(np.abs(traj.column("Ec") - E0)))
        rho = float(np.max(np.abs(traj.column("rho"))))
        rows.append(WorkPrecisionRow(eps, steps, wall, err, dE, rho))
    return rows


__all__ = ["TrajectoryRecord", "FailureMarker", "Trajectory", "run_trajectory", "step_count",
           "invariant_drift", "ellipse_angle", "phase_lead", "WorkPrecisionRow", "work_precision"]
