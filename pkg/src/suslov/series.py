"""Low-order series coefficients shared by both discretisations.

The step maps agree through second order in eps, and so do the inverse
Legendre maps at first order.  Each coefficient exists once here; the
scheme modules import these objects instead of redefining them.
"""

from .model import mu1, mu2, nu1, nu2  # noqa: F401  (re-exported)


def A1(m, u, v):
    return -v * m.plane_w(u, v) / m.I11


def B1(m, u, v):
    return u * m.plane_w(u, v) / m.I22


def A2(m, u, v):
    I11, I22, I13, I23 = m.I11, m.I22, m.I13, m.I23
    return -(m.plane_w(u, v) * (I11 * I13 * u ** 2 + 2 * I23 * I11 * u * v - I22 * I13 * v ** 2)
             / (2 * I11 ** 2 * I22))


def B2(m, u, v):
    I11, I22, I13, I23 = m.I11, m.I22, m.I13, m.I23
    return -(m.plane_w(u, v) * (I22 * I23 * v ** 2 + 2 * I13 * I22 * u * v - I11 * I23 * u ** 2)
             / (2 * I11 * I22 ** 2))


def F1(m, M1, M2):
    return -m.plane(M1, M2) * M2 / (2 * m.I11 ** 2 * m.I22 ** 2)


def G1(m, M1, M2):
    return m.plane(M1, M2) * M1 / (2 * m.I11 ** 2 * m.I22 ** 2)


__all__ = ["A1", "A2", "B1", "B2", "F1", "G1", "mu1", "mu2", "nu1", "nu2"]
