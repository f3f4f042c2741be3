"""Geometry of the discrete momentum loci and recovery of their vanishing polynomials."""

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

from ..errors import AmbiguousLocusError
from ..polyalg import eval_monomials, monomials3, null_vector_fit
from .schemes import get_scheme

COMPLEX_STEP = 1e-30
RANK_TOL = 1e-12
# eps * (sampling radius) for each locus; wide enough to open a clear singular-value gap
UNIT_RADIUS = {"mv": 3.0, "cay": 3.0}


@dataclass
class LocusSample:
    points: np.ndarray
    grid: np.ndarray
    normal_at_origin: np.ndarray


def parametrisation_partials(scheme, m, eps):
    """d/du and d/dv of the Legendre map at (0, 0), by complex-step differentiation."""
    sch = get_scheme(scheme)
    h = COMPLEX_STEP
    du = np.imag(np.asarray(sch.legendre(m, eps, (1j * h, 0.0)), dtype=complex)) / h
    dv = np.imag(np.asarray(sch.legendre(m, eps, (0.0, 1j * h)), dtype=complex)) / h
    return du, dv


def locus_sample(scheme, m, eps, radius=1.0, n=21):
    """Legendre images of an n-by-n grid on [-radius, radius]^2."""
    sch = get_scheme(scheme)
    s = np.linspace(-radius, radius, n)
    grid = np.array([(a, b) for a in s for b in s])
    pts = np.array([sch.legendre(m, eps, w) for w in grid], dtype=float)
    du, dv = parametrisation_partials(sch, m, eps)
    return LocusSample(pts, grid, np.cross(du, dv))


def parallel_defect(a, b):
    """|a x b| / (|a||b|): zero exactly when the vectors are parallel."""
    return float(np.linalg.norm(np.cross(a, b)) / (np.linalg.norm(a) * np.linalg.norm(b)))


@dataclass
class GrowthReport:
    radii: List[float]
    max_norm: List[float]
    slope: float


def ray_growth(scheme, m, eps, radii=(1e1, 1e2, 1e3, 1e4, 1e5), n_rays=16):
    """Largest |M| over points at distance r along evenly spaced rays.

    ``slope`` is the log-log slope between the two largest radii: ~0 for a
    bounded locus, ~3 for cubic growth.
    """
    sch = get_scheme(scheme)
    ang = np.linspace(0.0, 2 * np.pi, n_rays, endpoint=False) + 0.1
    dirs = np.stack([np.cos(ang), np.sin(ang)], axis=1)
    peaks = [max(float(np.linalg.norm(sch.legendre(m, eps, r * d))) for d in dirs) for r in radii]
    slope = float(np.log(peaks[-1] / peaks[-2]) / np.log(radii[-1] / radii[-2]))
    return GrowthReport(list(radii), peaks, slope)


def transcribed_coefficients(scheme, m):
    """Reference coefficients at unit step as {(a, b, c): value}, or None.

    None means the reference table is undefined for this tensor (it divides by
    I13 I23 in places).
    """
    sch = get_scheme(scheme)
    try:
        parts = sch.transcribed_parts(m.I11, m.I22, m.I13, m.I23)
    except ZeroDivisionError:
        return None
    out = {}
    for part in parts.values():
        for k, c in part.items():
            out[k] = out.get(k, 0.0) + c
    return out


def to_unit_step(coeffs, eps, lowest):
    """Map coefficients of the locus polynomial at step eps to unit step.

    Under M -> eps M a part of total degree d scales by eps^(d - lowest).
    """
    return {k: c / eps ** (sum(k) - lowest) for k, c in coeffs.items()}


@dataclass
class Discrepancy:
    monomial: Tuple[int, int, int]
    fitted: float
    transcribed: float


@dataclass
class RecoveryReport:
    scheme: str
    eps: float
    degree: int
    n_samples: int
    n_monomials: int
    nullity: int
    singular_tail: List[float]
    heldout_residual: float
    normalisation: str
    discrepancies: List[Discrepancy] = field(default_factory=list)
    linear_alignment: float = float("nan")
    lowest_degree: int = 0
    transcription_available: bool = True

    @property
    def agrees_with_transcription(self):
        return self.transcription_available and not self.discrepancies


def _anchor(monos, c, tcoef):
    """Scale the null vector against the lowest transcribed coefficient it resolves."""
    big = np.max(np.abs(c))
    if tcoef:
        for k in sorted(monos, key=lambda k: (sum(k), tuple(-x for x in k))):
            t = tcoef.get(k, 0.0)
            fk = c[monos.index(k)]
            if t != 0 and abs(fk) > 1e-6 * big:
                return c * (t / fk), f"matched monomial {k}"
    return c / c[int(np.argmax(np.abs(c)))], "unit largest coefficient"


def recover_locus_polynomial(scheme, m, eps, degree=None, seed=0, oversample=3, rel_tol=1e-5):
    """Fit the vanishing polynomial of the locus at step ``eps`` from its own samples.

    The coefficient vector is the least-norm null vector of the monomial matrix
    at ``oversample`` times as many samples as monomials.  It is rescaled to
    agree with the transcribed table on its lowest resolvable monomial, and the
    report lists monomials (at unit step) where the two differ by more than
    ``rel_tol`` of the largest coefficient.  Returns (coefficients, report).
    """
    sch = get_scheme(scheme)
    degree = sch.locus_degree if degree is None else int(degree)
    if not eps > 0:
        raise ValueError("eps must be positive")
    if oversample < 3:
        raise ValueError("oversample must be >= 3")
    monos = monomials3(degree)
    rng = np.random.default_rng(seed)
    radius = UNIT_RADIUS[sch.name] / eps
    fit_pts = sch.locus_points(m, eps, oversample * len(monos), rng, radius=radius)
    held = sch.locus_points(m, eps, len(monos), rng, radius=radius)
    c, monos, nullity, s = null_vector_fit(fit_pts, degree, rank_tol=RANK_TOL)
    if nullity != 1:
        raise AmbiguousLocusError(f"degree-{degree} vanishing polynomials of the {sch.name} locus "
                                  f"form a {nullity}-dimensional space", nullity)
    lowest = sch.locus_lowest_degree
    tcoef = transcribed_coefficients(sch, m)
    unit = np.array([x / eps ** (sum(k) - lowest) for k, x in zip(monos, c)])
    unit, how = _anchor(monos, unit, tcoef)
    c = np.array([x * eps ** (sum(k) - lowest) for k, x in zip(monos, unit)])
    terms = eval_monomials(held, monos) * c
    resid = float(np.max(np.abs(terms.sum(axis=1)) / np.abs(terms).sum(axis=1)))
    disc = []
    if tcoef is not None:
        big = float(np.max(np.abs(unit)))
        for k, f in zip(monos, unit):
            t = tcoef.get(k, 0.0)
            if abs(f - t) > rel_tol * big:
                disc.append(Discrepancy(k, float(f), float(t)))
    else:
        how += " (transcription undefined for this tensor)"
    align = float("nan")
    if lowest == 1:
        lin = np.array([c[monos.index(k)] for k in ((1, 0, 0), (0, 1, 0), (0, 0, 1))])
        align = 1.0 - parallel_defect(lin, m.normal)
    report = RecoveryReport(sch.name, float(eps), degree, len(fit_pts), len(monos), nullity,
                            [float(x) for x in s[-3:] / s[0]], resid, how, disc, align,
                            lowest, tcoef is not None)
    return dict(zip(monos, (float(x) for x in c))), report


def locus_residual(coeffs, M):
    """Relative value sum(c_k M^k) / sum(|c_k M^k|) of a fitted polynomial at M."""
    monos = list(coeffs)
    terms = eval_monomials(np.atleast_2d(M), monos)[0] * np.array([coeffs[k] for k in monos])
    return float(abs(terms.sum()) / np.abs(terms).sum())


__all__ = ["LocusSample", "locus_sample", "parametrisation_partials", "parallel_defect",
           "GrowthReport", "ray_growth", "transcribed_coefficients", "to_unit_step", "Discrepancy",
           "RecoveryReport", "recover_locus_polynomial", "locus_residual"]
