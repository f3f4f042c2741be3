"""SO(3) and so(3) primitives: hat map, trace pairing, Cayley map.

Vectors are numpy arrays of shape (3,), matrices of shape (3, 3).  The
Cayley formulas use closed-form adjugate inverses so results do not depend
on a LAPACK pivoting path.
"""

import numpy as np

from .errors import OutOfRangeError, SymmetryViolationError

SKEW_TOL = 1e-12
_AXIS_CROSSOVER = 1e-4


def hat(w):
    w = np.asarray(w)
    x, y, z = w[0], w[1], w[2]
    zero = 0.0 * x
    return np.array([[zero, -z, y],
                     [z, zero, -x],
                     [-y, x, zero]])


def unhat(S, tol=SKEW_TOL):
    """Inverse of :func:`hat`; raises if ``S`` is not skew to ``tol``."""
    S = np.asarray(S)
    scale = max(1.0, float(np.max(np.abs(S))))
    if np.max(np.abs(S + S.T)) > tol * scale:
        raise SymmetryViolationError("matrix is not skew-symmetric")
    return np.array([S[2, 1], S[0, 2], S[1, 0]])


def pairing(a, b):
    """The invariant inner product <a, b> = Trace(a b^T) / 2 on so(3)."""
    return 0.5 * np.trace(np.asarray(a) @ np.asarray(b).T)


def inv3(A):
    """Closed-form 3x3 inverse via the adjugate. Works for complex input too."""
    A = np.asarray(A)
    a, b, c = A[0]
    d, e, f = A[1]
    g, h, i = A[2]
    co = np.array([[e * i - f * h, c * h - b * i, b * f - c * e],
                   [f * g - d * i, a * i - c * g, c * d - a * f],
                   [d * h - e * g, b * g - a * h, a * e - b * d]])
    det = a * co[0, 0] + b * co[1, 0] + c * co[2, 0]
    return co / det, det


def cayley(eps, omega):
    """Cay_eps(omega) = (e + eps*omega/2)(e - eps*omega/2)^-1 for skew ``omega``."""
    E = np.eye(3)
    half = 0.5 * eps * np.asarray(omega)
    inv, _ = inv3(E - half)
    return (E + half) @ inv


def inverse_cayley(eps, W):
    """(2/eps)(W - e)(W + e)^-1, the reduced difference map of the Cayley scheme."""
    W = np.asarray(W)
    E = np.eye(3)
    inv, det = inv3(W + E)
    # det(W + e) = 4 cos^2(theta/2) for a rotation by theta
    if abs(det) < 1e-14:
        raise OutOfRangeError("rotation angle is pi; W is outside the Cayley range")
    S = (2.0 / eps) * (W - E) @ inv
    return 0.5 * (S - S.T)


def cayley_planar(eps, u, v):
    """Closed-form Cayley image of (u, v, 0); the axis is (u, v, 0)."""
    eu, ev = eps * u, eps * v
    r2 = eu * eu + ev * ev
    return np.array([
        [4 + eu * eu - ev * ev, 2 * eu * ev, 4 * ev],
        [2 * eu * ev, 4 - eu * eu + ev * ev, -4 * eu],
        [-4 * ev, 4 * eu, 4 - r2],
    ]) / (4 + r2)


def axis_angle(W):
    """Return ``(axis, theta)`` with theta in [0, pi].

    The identity returns axis e1.  For small angles the axis comes from the
    antisymmetric part; near pi it comes from the symmetric part W + W^T + (1 - tr W) e.
    """
    W = np.asarray(W, dtype=float)
    c = 0.5 * (np.trace(W) - 1.0)
    a = np.array([W[2, 1] - W[1, 2], W[0, 2] - W[2, 0], W[1, 0] - W[0, 1]])
    s = 0.5 * np.linalg.norm(a)
    theta = float(np.arctan2(s, np.clip(c, -1.0, 1.0)))
    if theta < 1e-15:
        return np.array([1.0, 0.0, 0.0]), 0.0
    if np.pi - theta > _AXIS_CROSSOVER:
        return a / np.linalg.norm(a), theta
    # near pi: W = cos(t) e + (1 - cos t) n n^T + sin(t) hat(n)
    B = 0.5 * (W + W.T) - c * np.eye(3)
    k = int(np.argmax(np.diag(B)))
    n = B[k] / np.sqrt(B[k, k])
    n /= np.linalg.norm(n)
    if np.dot(n, a) < 0:
        n = -n
    return n, theta


def is_in_S(W, tol=1e-9):
    """Membership in the displacement subvariety: axis orthogonal to e3, angle below pi."""
    axis, theta = axis_angle(W)
    if theta == 0.0:
        return True
    return abs(axis[2]) <= tol and theta < np.pi - tol


def is_rotation(W, tol=1e-12):
    W = np.asarray(W)
    return (np.max(np.abs(W.T @ W - np.eye(3))) <= tol
            and abs(np.linalg.det(W) - 1.0) <= tol)


def polar_project(g):
    """Nearest rotation in the Frobenius norm."""
    U, _, Vt = np.linalg.svd(g)
    R = U @ Vt
    if np.linalg.det(R) < 0:
        U[:, -1] *= -1
        R = U @ Vt
    return R
