"""The continuous Suslov problem.

The body frame is chosen so that the constraint is omega_3 = 0 and
I12 = 0.  The reduced dynamics live on the plane d* = I(d) and close on
the first two momentum components (M1, M2).
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .errors import InvalidInertiaError, StiffnessError
from .liegroup import hat


@dataclass(frozen=True)
class InertiaTensor:
    I11: float
    I22: float
    I33: float
    I13: float
    I23: float

    def matrix(self):
        return np.array([[self.I11, 0.0, self.I13],
                         [0.0, self.I22, self.I23],
                         [self.I13, self.I23, self.I33]])


@dataclass(frozen=True)
class Model:
    inertia: InertiaTensor
    I: np.ndarray = field(repr=False)
    J: np.ndarray = field(repr=False)
    Iinv: np.ndarray = field(repr=False)

    # shorthand used throughout the closed-form formulas
    @property
    def I11(self):
        return self.inertia.I11

    @property
    def I22(self):
        return self.inertia.I22

    @property
    def I33(self):
        return self.inertia.I33

    @property
    def I13(self):
        return self.inertia.I13

    @property
    def I23(self):
        return self.inertia.I23

    @property
    def normal(self):
        """Normal of the constraint plane d*: (I22 I13, I11 I23, -I11 I22)."""
        return np.array([self.I22 * self.I13, self.I11 * self.I23, -self.I11 * self.I22])

    def plane(self, M1, M2):
        """I13 I22 M1 + I11 I23 M2; vanishes on the equilibrium line."""
        return self.I13 * self.I22 * M1 + self.I11 * self.I23 * M2

    def plane_w(self, u, v):
        """I13 u + I23 v, the velocity-side counterpart of :meth:`plane`."""
        return self.I13 * u + self.I23 * v


GENERIC = InertiaTensor(3.0, 4.0, 5.0, 1.0, 0.5)
SPECIAL = InertiaTensor(3.0, 3.0, 5.0, 0.0, 0.5)
GENERIC_M0 = (41.07400078, -99.38251558)
SPECIAL_M0 = (179.9836568, 2.4255507998)


def build_model(inertia):
    """Validate positive definiteness and precompute J and I^-1."""
    if not isinstance(inertia, InertiaTensor):
        inertia = InertiaTensor(*map(float, inertia))
    I = inertia.matrix()
    if not np.all(np.isfinite(I)):
        raise InvalidInertiaError("inertia entries must be finite")
    for k in (1, 2, 3):
        minor = np.linalg.det(I[:k, :k])
        if minor <= 0:
            raise InvalidInertiaError(f"leading principal minor {k} is {minor:g}, not positive")
    i11, i22, i33, i13, i23 = (inertia.I11, inertia.I22, inertia.I33, inertia.I13, inertia.I23)
    J = np.array([[0.5 * (i22 + i33 - i11), 0.0, -i13],
                  [0.0, 0.5 * (i11 + i33 - i22), -i23],
                  [-i13, -i23, 0.5 * (i11 + i22 - i33)]])
    return Model(inertia=inertia, I=I, J=J, Iinv=np.linalg.inv(I))


def reduced_lagrangian(m, omega, form="quadratic"):
    omega = np.asarray(omega, dtype=float)
    if form == "trace":
        w = hat(omega)
        return 0.5 * np.trace(m.J @ w @ w.T)
    return 0.5 * omega @ m.I @ omega


def eps_rhs(m, M):
    """Right-hand side of the reduced Euler-Poincare-Suslov equations in (M1, M2)."""
    M1, M2 = M[0], M[1]
    P = m.plane(M1, M2)
    return np.array([-M2 * P / (m.I11 * m.I22 ** 2),
                     M1 * P / (m.I22 * m.I11 ** 2)])


def constrained_energy(m, M):
    M1, M2 = M[0], M[1]
    return (m.I22 * M1 ** 2 + m.I11 * M2 ** 2) / (2 * m.I11 * m.I22)


def energy_gradient(m, M):
    return np.array([M[0] / m.I11, M[1] / m.I22])


def embed_dstar(m, M):
    M1, M2 = M[0], M[1]
    return np.array([M1, M2, m.plane(M1, M2) / (m.I11 * m.I22)])


def signed_distance(m, M):
    n = m.normal
    return float(np.dot(np.asarray(M, dtype=float), n) / np.linalg.norm(n))


# Taylor coefficients of the exact flow, M(t + eps) = M + eps mu1 + eps^2 mu2 + eps^3 mu3 + ...
# The first two orders are shared by both discrete momentum maps.

def mu1(m, M1, M2):
    return -M2 * m.plane(M1, M2) / (m.I22 ** 2 * m.I11)


def nu1(m, M1, M2):
    return M1 * m.plane(M1, M2) / (m.I22 * m.I11 ** 2)


def mu2(m, M1, M2):
    I11, I22, I13, I23 = m.I11, m.I22, m.I13, m.I23
    return -(m.plane(M1, M2) * (I13 * I22 * M1 ** 2 + 2 * I11 * I23 * M1 * M2 - I11 * I13 * M2 ** 2)
             / (2 * I11 ** 3 * I22 ** 3))


def nu2(m, M1, M2):
    I11, I22, I13, I23 = m.I11, m.I22, m.I13, m.I23
    return (m.plane(M1, M2) * (I23 * I22 * M1 ** 2 - 2 * I22 * I13 * M1 * M2 - I11 * I23 * M2 ** 2)
            / (2 * I11 ** 3 * I22 ** 3))


def mu3_cont(m, M1, M2):
    # third derivative / 3!; the commonly quoted prefactor 1/12 is half the true value
    I11, I22, I13, I23 = m.I11, m.I22, m.I13, m.I23
    poly = (-9 * I11 * I13 * I22 * I23 * M1 * M2 ** 2 - 2 * I11 ** 2 * I23 ** 2 * M2 ** 3
            + 3 * I13 * I22 ** 2 * I23 * M1 ** 3
            + I22 * (4 * I11 * I23 ** 2 - 5 * I13 ** 2 * I22) * M1 ** 2 * M2
            + I11 * I13 ** 2 * I22 * M2 ** 3)
    return -m.plane(M1, M2) * poly / (6 * I11 ** 4 * I22 ** 5)


def nu3_cont(m, M1, M2):
    I11, I22, I13, I23 = m.I11, m.I22, m.I13, m.I23
    poly = (-9 * I11 * I13 * I22 * I23 * M1 ** 2 * M2 - 2 * I22 ** 2 * I13 ** 2 * M1 ** 3
            + 3 * I13 * I11 ** 2 * I23 * M2 ** 3
            + I11 * (4 * I22 * I13 ** 2 - 5 * I23 ** 2 * I11) * M1 * M2 ** 2
            + I22 * I23 ** 2 * I11 * M1 ** 3)
    return m.plane(M1, M2) * poly / (6 * I11 ** 5 * I22 ** 4)


def taylor_flow(m, M, eps):
    M1, M2 = float(M[0]), float(M[1])
    return np.array([
        M1 + eps * mu1(m, M1, M2) + eps ** 2 * mu2(m, M1, M2) + eps ** 3 * mu3_cont(m, M1, M2),
        M2 + eps * nu1(m, M1, M2) + eps ** 2 * nu2(m, M1, M2) + eps ** 3 * nu3_cont(m, M1, M2),
    ])


def reference_flow(m, M, eps, tol=1e-13):
    """High-accuracy numerical flow of the reduced equations over time ``eps``.

    Uses the embedded Dormand-Prince 8(5,3) pair with rtol = atol = tol
    (rtol is floored at 100 machine epsilons).
    """
    if tol < 1e-14:
        raise ValueError("tol must be >= 1e-14")
    M = np.asarray(M, dtype=float)
    if eps == 0:
        return M.copy()
    sol = solve_ivp(lambda t, y: eps_rhs(m, y), (0.0, eps), M, method="DOP853",
                    rtol=max(tol, 100 * np.finfo(float).eps), atol=tol)
    if sol.status != 0:
        raise StiffnessError(f"reference integration failed: {sol.message}")
    return sol.y[:, -1]


def reference_trajectory(m, M, times, tol=1e-13):
    """Reference solution sampled at increasing ``times`` (times[0] is the initial time)."""
    times = np.asarray(times, dtype=float)
    sol = solve_ivp(lambda t, y: eps_rhs(m, y), (times[0], times[-1]), np.asarray(M, float),
                    method="DOP853", t_eval=times,
                    rtol=max(tol, 100 * np.finfo(float).eps), atol=tol)
    if sol.status != 0:
        raise StiffnessError(f"reference integration failed: {sol.message}")
    return sol.y.T


def continuous_multiplier(m, M):
    """Multiplier keeping the full momentum vector on d*."""
    M3 = embed_dstar(m, M)
    dM = eps_rhs(m, M)
    dM3 = (m.I13 * m.I22 * dM[0] + m.I11 * m.I23 * dM[1]) / (m.I11 * m.I22)
    return dM3 - np.cross(M3, m.Iinv @ M3)[2]
