"""The consistent discretisation: eps times the continuous Lagrangian read through Cayley.

The discrete Lagrangian is (2/eps) Tr(J (2 - W - W^T)(2 + W + W^T)^-1),
which equals eps * l(Cay_eps^-1(W)).  Its Legendre transform is cubic in
(u, v); the step map solves p3+(next) = p3-(current), q3-(next) = q3+(current).
"""

from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from . import series
from .errors import (AmbiguousLocusError, DegenerateInputError, DegenerateStepError,
                     LegendreInversionError, NonConvergenceError, OutOfRangeError,
                     SingularJacobianError, StepFailedError)
from .liegroup import cayley_planar, inv3, unhat
from .model import Model
from .polyalg import BiPoly, NewtonConfig, eval_monomials, newton2, null_vector_fit, solve_system_u
from .scheme_mv import normalise_fit

NEWTON = NewtonConfig()
E3 = np.eye(3)


def p3(m, eps, u, v, sign=+1):
    L = m.plane_w(u, v)
    return m.I11 * u + sign * 0.5 * eps * v * L + 0.25 * eps * eps * u * (m.I11 * u * u + m.I22 * v * v)


def q3(m, eps, u, v, sign=+1):
    L = m.plane_w(u, v)
    return m.I22 * v + sign * 0.5 * eps * u * L + 0.25 * eps * eps * v * (m.I11 * u * u + m.I22 * v * v)


@dataclass(frozen=True)
class StepProblemInf:
    c1: complex
    c2: complex
    eps: float
    model: Model

    def polynomials(self):
        """(p3+ - c1, q3- - c2) as BiPoly objects."""
        m, e = self.model, self.eps
        h, q4 = 0.5 * e, 0.25 * e * e
        p = BiPoly.from_terms({(1, 0): m.I11, (1, 1): h * m.I13, (0, 2): h * m.I23,
                               (3, 0): q4 * m.I11, (1, 2): q4 * m.I22, (0, 0): -self.c1})
        q = BiPoly.from_terms({(0, 1): m.I22, (2, 0): -h * m.I13, (1, 1): -h * m.I23,
                               (2, 1): q4 * m.I11, (0, 3): q4 * m.I22, (0, 0): -self.c2})
        return p, q

    @property
    def resultant_degree(self):
        return 5 if self.model.I11 == self.model.I22 else 7

    def resultant_leading(self):
        """Leading resultant coefficient: a7 in general, a5 when I11 = I22."""
        m, e = self.model, self.eps
        if self.resultant_degree == 5:
            return m.I11 * e ** 6 / 64 * (m.I13 ** 2 + m.I23 ** 2) ** 2
        return e ** 8 / 256 * (m.I11 - m.I22) ** 2 * (m.I11 * m.I23 ** 2 + m.I13 ** 2 * m.I22)

    def resultant_subleading(self):
        """a6 (general case)."""
        m, e = self.model, self.eps
        return (m.I13 * e ** 7 / 64 * (m.I11 - m.I22)
                * (m.I11 ** 2 * m.I22 - m.I11 * m.I22 ** 2 - m.I11 * m.I23 ** 2 - m.I13 ** 2 * m.I22))


def disc_lagrangian_inf(m, eps, W):
    W = np.asarray(W, dtype=float)
    g, det = inv3(2 * E3 + W + W.T)
    if abs(det) < 1e-12:
        raise OutOfRangeError("rotation angle is pi; W is outside the Cayley range")
    return 2.0 / eps * np.trace(m.J @ (2 * E3 - W - W.T) @ g)


def legendre_inf(m, eps, w):
    u, v = w
    return np.array([p3(m, eps, u, v, +1), q3(m, eps, u, v, -1),
                     m.plane_w(u, v) + 0.5 * eps * u * v * (m.I22 - m.I11)])


def legendre_inf_matrix(m, eps, w):
    """Legendre transform from the matrix expression of the trace Lagrangian's derivative.

    With g = (2 + W + W^T)^-1, h = 2 - W - W^T and K = g J + g J h g, the
    momentum is (2/eps)(X - X^T) with X = W K - K W^T.
    """
    W = cayley_planar(eps, *w)
    g, _ = inv3(2 * E3 + W + W.T)
    h = 2 * E3 - W - W.T
    K = g @ m.J + g @ m.J @ h @ g
    X = W @ K - K @ W.T
    return unhat(2.0 / eps * (X - X.T), tol=1e-9)


def legendre_inf_jacobian(m, eps, w):
    u, v = w
    I11, I22, I13, I23 = m.I11, m.I22, m.I13, m.I23
    L = m.plane_w(u, v)
    h, q4 = 0.5 * eps, 0.25 * eps * eps
    return np.array([
        [I11 + h * v * I13 + q4 * (3 * I11 * u * u + I22 * v * v),
         h * (L + v * I23) + q4 * 2 * I22 * u * v],
        [-h * (L + u * I13) + q4 * 2 * I11 * u * v,
         I22 - h * u * I23 + q4 * (I11 * u * u + 3 * I22 * v * v)],
    ])


def _scale(target):
    return max(1.0, float(np.max(np.abs(target))))


def legendre_inf_invert(m, eps, M, cfg=NEWTON):
    M = np.asarray(M, dtype=float)[:2]
    x0 = np.array([M[0] / m.I11, M[1] / m.I22])
    s = _scale(M)
    radius = 10 * (abs(x0[0]) + abs(x0[1]) + eps)
    cfg = replace(cfg, max_step=radius)
    try:
        x, _ = newton2(lambda x: (legendre_inf(m, eps, x)[:2] - M) / s,
                       lambda x: legendre_inf_jacobian(m, eps, x) / s, x0, cfg)
    except (NonConvergenceError, SingularJacobianError) as exc:
        raise LegendreInversionError(f"cannot invert the discrete Legendre map at M={M}: {exc}") from exc
    return x


def step_problem_inf(m, eps, w):
    u, v = w
    return StepProblemInf(p3(m, eps, u, v, -1), q3(m, eps, u, v, +1), eps, m)


def step_residual_inf(m, eps, w, w_next):
    u, v = w
    target = np.array([p3(m, eps, u, v, -1), q3(m, eps, u, v, +1)])
    return float(np.max(np.abs(legendre_inf(m, eps, w_next)[:2] - target)) / _scale(target))


def step_branches_inf(m, eps, w):
    # Solve in the scaled variables eps*w at unit step, where the resultant's
    # leading coefficient is O(1) instead of a high power of eps.
    prob = step_problem_inf(m, 1.0, eps * np.asarray(w, dtype=float))
    p, q = prob.polynomials()
    try:
        roots, _ = solve_system_u(p, q, degree=prob.resultant_degree)
    except DegenerateInputError as exc:
        raise DegenerateStepError(str(exc)) from exc
    return [(u / eps, v / eps) for u, v in roots]


def step_inf(m, eps, w, cfg=NEWTON):
    w = np.asarray(w, dtype=float)
    target = np.array([p3(m, eps, w[0], w[1], -1), q3(m, eps, w[0], w[1], +1)])
    s = _scale(target)
    try:
        x, _ = newton2(lambda x: (legendre_inf(m, eps, x)[:2] - target) / s,
                       lambda x: legendre_inf_jacobian(m, eps, x) / s, w, cfg)
    except (NonConvergenceError, SingularJacobianError) as exc:
        raise StepFailedError(f"step from {w} failed: {exc}") from exc
    return x


def momentum_step_inf(m, eps, M):
    w = legendre_inf_invert(m, eps, M)
    return legendre_inf(m, eps, step_inf(m, eps, w))[:2]


def invariant_Q(m, eps, w):
    u, v = w
    I11, I22 = m.I11, m.I22
    L = m.plane_w(u, v)
    r = u * u + v * v
    return (I11 * u * u + I22 * v * v) / 16 * (
        16 * I11 * I22 + eps ** 2 * (8 * I11 * I22 * r + 4 * L * L)
        + 4 * eps ** 3 * u * v * (I22 - I11) * L
        + eps ** 4 * (I11 * u * u + I22 * v * v) * (I22 * u * u + I11 * v * v))


def q_drift_predicted(m, eps, w):
    u, v = w
    return (eps ** 3 * u * v / 2 * (m.I11 - m.I22) * (m.I11 * u * u + m.I22 * v * v)
            * m.plane_w(u, v))


# --- third-order series -----------------------------------------------------

def A3(m, u, v):
    I11, I22, I13, I23 = m.I11, m.I22, m.I13, m.I23
    return -(m.plane_w(u, v) / (4 * I11 ** 3 * I22 ** 2)) * (
        3 * I13 * I11 ** 2 * I23 * u ** 3 - 9 * I11 * I13 * I22 * I23 * u * v ** 2
        + I11 * (4 * I11 * I23 ** 2 - I11 * I22 ** 2 - 5 * I13 ** 2 * I22) * u ** 2 * v
        - I22 * (I11 * I22 ** 2 + 2 * I11 * I23 ** 2 - I13 ** 2 * I22) * v ** 3)


def B3(m, u, v):
    I11, I22, I13, I23 = m.I11, m.I22, m.I13, m.I23
    return (m.plane_w(u, v) / (4 * I11 ** 2 * I22 ** 3)) * (
        3 * I23 * I22 ** 2 * I13 * v ** 3 - 9 * I11 * I13 * I22 * I23 * v * u ** 2
        + I22 * (4 * I22 * I13 ** 2 - I22 * I11 ** 2 - 5 * I23 ** 2 * I11) * v ** 2 * u
        - I11 * (I22 * I11 ** 2 + 2 * I22 * I13 ** 2 - I23 ** 2 * I11) * u ** 3)


def F2(m, M1, M2):
    I11, I22, I13, I23 = m.I11, m.I22, m.I13, m.I23
    return (I11 ** 2 * I13 * I23 * M2 ** 3
            - I11 * (I11 * I22 ** 2 + 2 * I11 * I23 ** 2 - I13 ** 2 * I22) * M1 * M2 ** 2
            - 3 * I11 * I13 * I22 * I23 * M1 ** 2 * M2
            - I22 ** 2 * (I11 * I22 + I13 ** 2) * M1 ** 3) / (4 * I11 ** 4 * I22 ** 3)


def G2(m, M1, M2):
    I11, I22, I13, I23 = m.I11, m.I22, m.I13, m.I23
    return -(I11 ** 2 * (I11 * I22 + I23 ** 2) * M2 ** 3
             + 3 * I11 * I13 * I22 * I23 * M1 * M2 ** 2
             + I22 * (I11 ** 2 * I22 - I11 * I23 ** 2 + 2 * I13 ** 2 * I22) * M1 ** 2 * M2
             - I13 * I22 ** 2 * I23 * M1 ** 3) / (4 * I11 ** 3 * I22 ** 4)


def F3(m, M1, M2):
    I11, I22, I13, I23 = m.I11, m.I22, m.I13, m.I23
    return (2 * I11 ** 4 * I22 * I23 * M2 ** 4
            + I11 ** 3 * I13 * I22 ** 2 * M1 * M2 ** 3
            + 2 * I11 ** 3 * I22 ** 2 * I23 * M1 ** 2 * M2 ** 2
            + I11 ** 3 * I22 ** 2 * I23 * M2 ** 4
            + 2 * I11 ** 3 * I23 ** 3 * M2 ** 4
            - I11 ** 2 * I13 ** 2 * I22 * I23 * M2 ** 4
            + I11 ** 2 * I13 * I22 ** 3 * M1 ** 3 * M2
            + 2 * I11 ** 2 * I13 * I22 ** 3 * M1 * M2 ** 3
            + 10 * I11 ** 2 * I13 * I22 * I23 ** 2 * M1 * M2 ** 3
            + I11 ** 2 * I22 ** 3 * I23 * M1 ** 2 * M2 ** 2
            - 3 * I11 ** 2 * I22 * I23 ** 3 * M1 ** 2 * M2 ** 2
            - I11 * I13 ** 3 * I22 ** 2 * M1 * M2 ** 3
            + 12 * I11 * I13 ** 2 * I22 ** 2 * I23 * M1 ** 2 * M2 ** 2
            + 2 * I11 * I13 * I22 ** 4 * M1 ** 3 * M2
            - 5 * I11 * I13 * I22 ** 2 * I23 ** 2 * M1 ** 3 * M2
            + 4 * I13 ** 3 * I22 ** 3 * M1 ** 3 * M2
            - 2 * I13 ** 2 * I22 ** 3 * I23 * M1 ** 4) / (8 * I11 ** 5 * I22 ** 5)


def G3(m, M1, M2):
    I11, I22, I13, I23 = m.I11, m.I22, m.I13, m.I23
    return -(2 * I11 ** 4 * I22 * I23 * M1 * M2 ** 3
             + I11 ** 3 * I13 * I22 ** 2 * M1 ** 2 * M2 ** 2
             - 2 * I11 ** 3 * I13 * I23 ** 2 * M2 ** 4
             + 2 * I11 ** 3 * I22 ** 2 * I23 * M1 ** 3 * M2
             + I11 ** 3 * I22 ** 2 * I23 * M1 * M2 ** 3
             + 4 * I11 ** 3 * I23 ** 3 * M1 * M2 ** 3
             - 5 * I11 ** 2 * I13 ** 2 * I22 * I23 * M1 * M2 ** 3
             + I11 ** 2 * I13 * I22 ** 3 * M1 ** 4
             + 2 * I11 ** 2 * I13 * I22 ** 3 * M1 ** 2 * M2 ** 2
             + 12 * I11 ** 2 * I13 * I22 * I23 ** 2 * M1 ** 2 * M2 ** 2
             + I11 ** 2 * I22 ** 3 * I23 * M1 ** 3 * M2
             - I11 ** 2 * I22 * I23 ** 3 * M1 ** 3 * M2
             - 3 * I11 * I13 ** 3 * I22 ** 2 * M1 ** 2 * M2 ** 2
             + 10 * I11 * I13 ** 2 * I22 ** 2 * I23 * M1 ** 3 * M2
             + 2 * I11 * I13 * I22 ** 4 * M1 ** 4
             - I11 * I13 * I22 ** 2 * I23 ** 2 * M1 ** 4
             + 2 * I13 ** 3 * I22 ** 3 * M1 ** 4) / (8 * I11 ** 5 * I22 ** 5)


def mu3(m, M1, M2):
    I11, I22, I13, I23 = m.I11, m.I22, m.I13, m.I23
    return -(2 * I13 ** 2 * I22 ** 3 * I23 * M1 ** 4
             + I11 * I22 * I23 * (3 * I11 * I23 ** 2 - 2 * I11 ** 2 * I22 - 12 * I13 ** 2 * I22) * M1 ** 2 * M2 ** 2
             - I22 * (I11 ** 2 * I13 * I22 ** 2 + I11 * I13 * I22 ** 3 - 5 * I11 * I13 * I22 * I23 ** 2
                      + 4 * I13 ** 3 * I22 ** 2) * M1 ** 3 * M2
             + I11 * I13 * I22 * (I13 ** 2 * I22 - I11 ** 2 * I22 - I11 * I22 ** 2 - 10 * I11 * I23 ** 2) * M1 * M2 ** 3
             - I11 * I23 * (2 * I11 ** 3 * I22 + 2 * I11 ** 2 * I23 ** 2 - I11 * I13 ** 2 * I22) * M2 ** 4
             ) / (4 * I11 ** 4 * I22 ** 5)


def nu3(m, M1, M2):
    I11, I22, I13, I23 = m.I11, m.I22, m.I13, m.I23
    return (2 * I23 ** 2 * I11 ** 3 * I13 * M2 ** 4
            + I22 * I11 * I13 * (3 * I22 * I13 ** 2 - 2 * I22 ** 2 * I11 - 12 * I23 ** 2 * I11) * M2 ** 2 * M1 ** 2
            - I11 * (I22 ** 2 * I23 * I11 ** 2 + I22 * I23 * I11 ** 3 - 5 * I22 * I23 * I11 * I13 ** 2
                     + 4 * I23 ** 3 * I11 ** 2) * M2 ** 3 * M1
            + I22 * I23 * I11 * (I23 ** 2 * I11 - I22 ** 2 * I11 - I22 * I11 ** 2 - 10 * I22 * I13 ** 2) * M2 * M1 ** 3
            - I22 * I13 * (2 * I22 ** 3 * I11 + 2 * I22 ** 2 * I13 ** 2 - I22 * I23 ** 2 * I11) * M1 ** 4
            ) / (4 * I11 ** 5 * I22 ** 4)


@dataclass(frozen=True)
class SeriesCoefficientsInf:
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


SERIES = SeriesCoefficientsInf()


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

Q7_DEGREE = 7
_FIT_SEED = 20240601


def locus_points(m, eps, n, rng, radius=1.5):
    w = rng.uniform(-radius, radius, size=(n, 2))
    return np.array([legendre_inf(m, eps, x) for x in w])


def leading_quintic_anchor(m):
    """Degree-1 anchor is absent here; the X^5 coefficient -4 I13^3 I22^5 fixes the scale."""
    return -4 * m.I13 ** 3 * m.I22 ** 5


@lru_cache(maxsize=32)
def _q7_fit(inertia):
    from .model import build_model
    m = build_model(inertia)
    rng = np.random.default_rng(_FIT_SEED)
    c, monos, nullity, s = null_vector_fit(locus_points(m, 1.0, 4 * 120, rng), Q7_DEGREE)
    if nullity != 1:
        raise AmbiguousLocusError(f"degree-{Q7_DEGREE} vanishing polynomials form a "
                                  f"{nullity}-dimensional space", nullity)
    k = monos.index((5, 0, 0))
    anchor = leading_quintic_anchor(m)
    if anchor != 0 and abs(c[k]) > 1e-8 * np.max(np.abs(c)):
        c = c * (anchor / c[k])
    else:
        c = normalise_fit(c, monos, np.zeros(3))
    return c, tuple(monos)


def q7_coefficients(m):
    c, monos = _q7_fit(m.inertia)
    return dict(zip(monos, c))


def locus_poly_q7(m, eps, M, with_scale=False):
    """q7(M; eps) = q7(eps M; 1)/eps^5 with fitted coefficients."""
    c, monos = _q7_fit(m.inertia)
    terms = c * eval_monomials(eps * np.atleast_2d(np.asarray(M, dtype=float)), list(monos))[0] / eps ** 5
    val = float(np.sum(terms))
    return (val, float(np.sum(np.abs(terms)))) if with_scale else val


__all__ = ["StepProblemInf", "SeriesCoefficientsInf", "SERIES", "p3", "q3", "disc_lagrangian_inf",
           "legendre_inf", "legendre_inf_matrix", "legendre_inf_jacobian", "legendre_inf_invert",
           "step_problem_inf", "step_residual_inf", "step_branches_inf", "step_inf",
           "momentum_step_inf", "invariant_Q", "q_drift_predicted", "series_step", "series_invert",
           "series_momentum", "locus_points", "q7_coefficients", "locus_poly_q7"]
