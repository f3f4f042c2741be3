"""The non-consistent discretisation built on the trace Lagrangian -(1/eps) Tr(J W).

Velocities (u, v) parametrise displacements W = cayley_planar(eps, u, v).
The step map matches planar momenta: legendre_1(eps, w_next) projected on
(M1, M2) equals legendre_1(-eps, w).  The principal branch is continued by
Newton from the current state; the all-branch solver is for cross-checks.
"""

from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from . import series
from .errors import (AmbiguousLocusError, DegenerateInputError, DegenerateStepError,
                     LegendreInversionError, NonConvergenceError, SingularJacobianError,
                     StepFailedError)
from .liegroup import cayley_planar, unhat
from .model import Model
from .polyalg import BiPoly, NewtonConfig, eval_monomials, newton2, null_vector_fit, solve_system_u

NEWTON = NewtonConfig()


@dataclass(frozen=True)
class StepProblem1:
    A: complex
    B: complex
    eps: float
    model: Model

    def polynomials(self):
        """(p2, q2) as BiPoly objects in (u, v)."""
        m, e, A, B = self.model, self.eps, self.A, self.B
        p = BiPoly.from_terms({(1, 0): 4 * m.I11, (1, 1): 2 * e * m.I13,
                               (0, 2): 2 * e * m.I23 - A * e * e, (2, 0): -A * e * e,
                               (0, 0): -4 * A})
        q = BiPoly.from_terms({(0, 1): 4 * m.I22, (1, 1): -2 * e * m.I23,
                               (2, 0): -2 * e * m.I13 - B * e * e, (0, 2): -B * e * e,
                               (0, 0): -4 * B})
        return p, q

    def resultant_leading(self):
        m, e, A, B = self.model, self.eps, self.A, self.B
        return 4 * e ** 5 * (m.I13 ** 2 + m.I23 ** 2) * (2 * m.I13 * B - 2 * m.I23 * A + e * (A * A + B * B))


def disc_lagrangian_1(m, eps, W):
    return -np.trace(m.J @ W) / eps


def skew_defect_1(eps, u, v):
    """Norm of the symmetric part of (W - e)/eps; nonzero means non-consistent."""
    D = (cayley_planar(eps, u, v) - np.eye(3)) / eps
    return float(np.linalg.norm(0.5 * (D + D.T)))


def legendre_1(m, eps, w):
    u, v = w
    L = m.plane_w(u, v)
    den = 4 + eps * eps * (u * u + v * v)
    return np.array([2 * (2 * m.I11 * u + eps * v * L),
                     2 * (2 * m.I22 * v - eps * u * L),
                     2 * (2 * L + eps * (m.I22 - m.I11) * u * v)]) / den


def legendre_1_matrix(m, eps, w):
    """Same map through the matrix identity M^ = (W J - J W^T)/eps."""
    W = cayley_planar(eps, *w)
    return unhat((W @ m.J - m.J @ W.T) / eps, tol=1e-10)


def legendre_1_jacobian(m, eps, w):
    """d(M1, M2)/d(u, v) of :func:`legendre_1`."""
    u, v = w
    L = m.plane_w(u, v)
    den = 4 + eps * eps * (u * u + v * v)
    N1 = 2 * (2 * m.I11 * u + eps * v * L)
    N2 = 2 * (2 * m.I22 * v - eps * u * L)
    dN = np.array([[2 * (2 * m.I11 + eps * v * m.I13), 2 * eps * (L + v * m.I23)],
                   [-2 * eps * (L + u * m.I13), 2 * (2 * m.I22 - eps * u * m.I23)]])
    dden = np.array([2 * eps * eps * u, 2 * eps * eps * v])
    return (dN * den - np.outer([N1, N2], dden)) / den ** 2


def _scale(target):
    return max(1.0, float(np.max(np.abs(target))))


def legendre_1_invert(m, eps, M, cfg=NEWTON):
    M = np.asarray(M, dtype=float)[:2]
    x0 = np.array([M[0] / m.I11, M[1] / m.I22])
    s = _scale(M)
    radius = 10 * (abs(x0[0]) + abs(x0[1]) + eps)
    cfg = replace(cfg, max_step=radius)
    try:
        x, _ = newton2(lambda x: (legendre_1(m, eps, x)[:2] - M) / s,
                       lambda x: legendre_1_jacobian(m, eps, x) / s, x0, cfg)
    except (NonConvergenceError, SingularJacobianError) as exc:
        raise LegendreInversionError(f"cannot invert the discrete Legendre map at M={M}: {exc}") from exc
    return x


def step_problem_1(m, eps, w):
    Mprev = legendre_1(m, -eps, w)
    return StepProblem1(Mprev[0], Mprev[1], eps, m)


def step_residual_1(m, eps, w, w_next):
    """Scaled residual of the momentum-matching equations."""
    target = legendre_1(m, -eps, w)[:2]
    return float(np.max(np.abs(legendre_1(m, eps, w_next)[:2] - target)) / _scale(target))


def step_branches_1(m, eps, w):
    """All (possibly complex) solutions of p2 = q2 = 0."""
    # Solve in the scaled variables eps*w at unit step, where the resultant's
    # leading coefficient is O(1) instead of a high power of eps.
    prob = step_problem_1(m, 1.0, eps * np.asarray(w, dtype=float))
    p, q = prob.polynomials()
    try:
        roots, _ = solve_system_u(p, q, degree=4)
    except DegenerateInputError as exc:
        raise DegenerateStepError(str(exc)) from exc
    return [(u / eps, v / eps) for u, v in roots]


def step_1(m, eps, w, cfg=NEWTON):
    w = np.asarray(w, dtype=float)
    target = legendre_1(m, -eps, w)[:2]
    s = _scale(target)
    try:
        x, _ = newton2(lambda x: (legendre_1(m, eps, x)[:2] - target) / s,
                       lambda x: legendre_1_jacobian(m, eps, x) / s, w, cfg)
    except (NonConvergenceError, SingularJacobianError) as exc:
        raise StepFailedError(f"step from {w} failed: {exc}") from exc
    return x


def momentum_step_1(m, eps, M):
    w = legendre_1_invert(m, eps, M)
    return legendre_1(m, eps, step_1(m, eps, w))[:2]


def invariant_R(m, eps, w):
    u, v = w
    L = m.plane_w(u, v)
    den = 4 + eps * eps * (u * u + v * v)
    return 4 * (m.I11 * u * u + m.I22 * v * v) * (4 * m.I11 * m.I22 + eps * eps * L * L) / den ** 2


# --- third-order series -----------------------------------------------------

def A3(m, u, v):
    I11, I22, I13, I23 = m.I11, m.I22, m.I13, m.I23
    return -(m.plane_w(u, v) / (4 * I11 ** 3 * I22 ** 2)) * (
        3 * I11 ** 2 * I13 * I23 * u ** 3 - 9 * I11 * I13 * I22 * I23 * u * v ** 2
        + I11 * (2 * I11 * I22 ** 2 - 2 * I11 ** 2 * I22 + 4 * I11 * I23 ** 2 - 5 * I13 ** 2 * I22) * u ** 2 * v
        - I22 * (2 * I11 * I23 ** 2 - I13 ** 2 * I22) * v ** 3)


def B3(m, u, v):
    I11, I22, I13, I23 = m.I11, m.I22, m.I13, m.I23
    return (m.plane_w(u, v) / (4 * I11 ** 2 * I22 ** 3)) * (
        3 * I13 * I22 ** 2 * I23 * v ** 3 - 9 * I11 * I13 * I22 * I23 * u ** 2 * v
        + I22 * (2 * I22 * I11 ** 2 - 2 * I22 ** 2 * I11 + 4 * I22 * I13 ** 2 - 5 * I23 ** 2 * I11) * v ** 2 * u
        - I11 * (2 * I22 * I13 ** 2 - I23 ** 2 * I11) * u ** 3)


def F2(m, M1, M2):
    I11, I22, I13, I23 = m.I11, m.I22, m.I13, m.I23
    return (I22 ** 2 * (I11 * I22 - I13 ** 2) * M1 ** 3
            + I11 * (I11 ** 2 * I22 - 2 * I11 * I23 ** 2 + I13 ** 2 * I22) * M1 * M2 ** 2
            - 3 * I11 * I13 * I22 * I23 * M1 ** 2 * M2
            + I11 ** 2 * I13 * I23 * M2 ** 3) / (4 * I11 ** 4 * I22 ** 3)


def G2(m, M1, M2):
    I11, I22, I13, I23 = m.I11, m.I22, m.I13, m.I23
    return (I11 ** 2 * (I11 * I22 - I23 ** 2) * M2 ** 3
            + I22 * (I11 * I22 ** 2 - 2 * I22 * I13 ** 2 + I11 * I23 ** 2) * M1 ** 2 * M2
            - 3 * I11 * I13 * I22 * I23 * M1 * M2 ** 2
            + I22 ** 2 * I23 * I13 * M1 ** 3) / (4 * I11 ** 3 * I22 ** 4)


def F3(m, M1, M2):
    I11, I22, I13, I23 = m.I11, m.I22, m.I13, m.I23
    return -(m.plane(M1, M2) / (8 * I11 ** 5 * I22 ** 5)) * (
        2 * I13 * I22 ** 2 * I23 * M1 ** 3
        + I22 * (4 * I11 * I22 ** 2 - 2 * I11 ** 2 * I22 + 3 * I11 * I23 ** 2 - 4 * I13 ** 2 * I22) * M1 ** 2 * M2
        - 8 * I11 * I13 * I22 * I23 * M1 * M2 ** 2
        + I11 * (2 * I11 ** 2 * I22 - 2 * I11 * I23 ** 2 + I13 ** 2 * I22) * M2 ** 3)


def G3(m, M1, M2):
    I11, I22, I13, I23 = m.I11, m.I22, m.I13, m.I23
    return (m.plane(M1, M2) / (8 * I11 ** 5 * I22 ** 5)) * (
        2 * I23 * I11 ** 2 * I13 * M2 ** 3
        + I11 * (4 * I22 * I11 ** 2 - 2 * I22 ** 2 * I11 + 3 * I22 * I13 ** 2 - 4 * I23 ** 2 * I11) * M1 * M2 ** 2
        - 8 * I11 * I13 * I22 * I23 * M1 ** 2 * M2
        + I22 * (2 * I22 ** 2 * I11 - 2 * I22 * I13 ** 2 + I23 ** 2 * I11) * M1 ** 3)


def mu3(m, M1, M2):
    I11, I22, I13, I23 = m.I11, m.I22, m.I13, m.I23
    return -(m.plane(M1, M2) / (4 * I11 ** 4 * I22 ** 5)) * (
        2 * I13 * I22 ** 2 * I23 * M1 ** 3 - 8 * I11 * I13 * I22 * I23 * M1 * M2 ** 2
        + (I11 * I22 ** 3 + 3 * I11 * I23 ** 2 * I22 - 4 * I13 ** 2 * I22 ** 2) * M1 ** 2 * M2
        + (I11 ** 3 * I22 - 2 * I11 ** 2 * I23 ** 2 + I11 * I22 * I13 ** 2) * M2 ** 3)


def nu3(m, M1, M2):
    I11, I22, I13, I23 = m.I11, m.I22, m.I13, m.I23
    return (m.plane(M1, M2) / (4 * I11 ** 5 * I22 ** 4)) * (
        2 * I13 * I11 ** 2 * I23 * M2 ** 3 - 8 * I11 * I13 * I22 * I23 * M1 ** 2 * M2
        + (I11 ** 3 * I22 + 3 * I11 * I22 * I13 ** 2 - 4 * I23 ** 2 * I11 ** 2) * M1 * M2 ** 2
        + (I11 * I22 ** 3 - 2 * I22 ** 2 * I13 ** 2 + I22 * I11 * I23 ** 2) * M1 ** 3)


@dataclass(frozen=True)
class SeriesCoefficients1:
    A1 = staticmethod(series.A1)
    A2 = staticmethod(series.A2)
    A3 = staticmethod(A3)
    B1 = staticmethod(series.B1)
    B2 = staticmethod(series.B2)
    B3 = staticmethod(B3)
    F1 = staticmethod(series.F1)
    F2 = staticmethod(F2)
    F3 = staticmethod(F3)
    G1 = staticmethod(series.G1)
    G2 = staticmethod(G2)
    G3 = staticmethod(G3)
    mu1 = staticmethod(series.mu1)
    mu2 = staticmethod(series.mu2)
    mu3 = staticmethod(mu3)
    nu1 = staticmethod(series.nu1)
    nu2 = staticmethod(series.nu2)
    nu3 = staticmethod(nu3)


SERIES = SeriesCoefficients1()


def series_step(m, eps, w):
    u, v = w
    return np.array([u + eps * series.A1(m, u, v) + eps ** 2 * series.A2(m, u, v) + eps ** 3 * A3(m, u, v),
                     v + eps * series.B1(m, u, v) + eps ** 2 * series.B2(m, u, v) + eps ** 3 * B3(m, u, v)])


def series_invert(m, eps, M):
    M1, M2 = M[0], M[1]
    return np.array([M1 / m.I11 + eps * series.F1(m, M1, M2) + eps ** 2 * F2(m, M1, M2) + eps ** 3 * F3(m, M1, M2),
                     M2 / m.I22 + eps * series.G1(m, M1, M2) + eps ** 2 * G2(m, M1, M2) + eps ** 3 * G3(m, M1, M2)])


def series_momentum(m, eps, M):
    M1, M2 = M[0], M[1]
    return np.array([M1 + eps * series.mu1(m, M1, M2) + eps ** 2 * series.mu2(m, M1, M2) + eps ** 3 * mu3(m, M1, M2),
                     M2 + eps * series.nu1(m, M1, M2) + eps ** 2 * series.nu2(m, M1, M2) + eps ** 3 * nu3(m, M1, M2)])


# --- vanishing polynomial of the momentum locus -------------------------------

P4_DEGREE = 4
_FIT_SEED = 20240531


def locus_points(m, eps, n, rng, radius=3.0):
    w = rng.uniform(-radius, radius, size=(n, 2))
    return np.array([legendre_1(m, eps, x) for x in w])


def leading_plane_term(m):
    """Linear part -4 (I11 - I22)(I13 I22 X + I11 I23 Y - I11 I22 Z)."""
    return -4 * (m.I11 - m.I22) * np.array([m.I13 * m.I22, m.I11 * m.I23, -m.I11 * m.I22])


def normalise_fit(coeffs, monos, anchor):
    """Rescale so the degree-1 part matches ``anchor`` (least squares), or to a sign convention."""
    lin = np.array([coeffs[monos.index(k)] for k in ((1, 0, 0), (0, 1, 0), (0, 0, 1))])
    if np.linalg.norm(anchor) > 0 and np.linalg.norm(lin) > 1e-8 * np.linalg.norm(coeffs):
        return coeffs * (np.dot(anchor, lin) / np.dot(lin, lin))
    k = int(np.argmax(np.abs(coeffs)))
    return coeffs / coeffs[k]


@lru_cache(maxsize=32)
def _p4_fit(inertia):
    from .model import build_model
    m = build_model(inertia)
    rng = np.random.default_rng(_FIT_SEED)
    c, monos, nullity, s = null_vector_fit(locus_points(m, 1.0, 4 * 35, rng), P4_DEGREE)
    if nullity != 1:
        raise AmbiguousLocusError(f"degree-{P4_DEGREE} vanishing polynomials form a "
                                  f"{nullity}-dimensional space", nullity)
    return normalise_fit(c, monos, leading_plane_term(m)), tuple(monos)


def p4_coefficients(m):
    """Validated p4 coefficients at eps = 1 as {(a, b, c): coefficient}."""
    c, monos = _p4_fit(m.inertia)
    return dict(zip(monos, c))


def locus_poly_p4(m, eps, M, with_scale=False):
    """p4(M; eps) = p4(eps M; 1)/eps, using fitted coefficients."""
    c, monos = _p4_fit(m.inertia)
    terms = c * eval_monomials(eps * np.atleast_2d(np.asarray(M, dtype=float)), list(monos))[0] / eps
    val = float(np.sum(terms))
    return (val, float(np.sum(np.abs(terms)))) if with_scale else val


__all__ = ["StepProblem1", "SeriesCoefficients1", "SERIES", "disc_lagrangian_1", "skew_defect_1",
           "legendre_1", "legendre_1_matrix", "legendre_1_jacobian", "legendre_1_invert",
           "step_problem_1", "step_residual_1", "step_branches_1", "step_1", "momentum_step_1",
           "invariant_R", "series_step", "series_invert", "series_momentum", "locus_points",
           "p4_coefficients", "locus_poly_p4", "leading_plane_term"]
