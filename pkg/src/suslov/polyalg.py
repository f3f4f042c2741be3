"""Small-scale polynomial machinery.

Univariate and bivariate polynomials, Sylvester resultants in u, complex
root finding by Aberth-Ehrlich iteration, a damped Newton solver for 2x2
systems, and a null-vector fit of trivariate vanishing polynomials.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (DegenerateInputError, NonConvergenceError, RootFindingError,
                     SingularJacobianError)

TRIM_TOL = 1e-14


def _trim(c, rel=TRIM_TOL):
    c = np.atleast_1d(np.asarray(c, dtype=complex))
    if c.size == 0:
        return np.zeros(1, dtype=complex)
    big = np.max(np.abs(c))
    if big == 0:
        return np.zeros(1, dtype=complex)
    n = c.size
    while n > 1 and abs(c[n - 1]) <= rel * big:
        n -= 1
    return c[:n].copy()


class UniPoly:
    """Univariate polynomial with complex coefficients in ascending order."""

    def __init__(self, coeffs, trim=True):
        self.coeffs = _trim(coeffs) if trim else np.asarray(coeffs, dtype=complex)

    @classmethod
    def from_roots(cls, roots, lead=1.0):
        c = np.array([lead], dtype=complex)
        for r in roots:
            c = np.convolve(c, [-r, 1.0])
        return cls(c)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1]

    def is_zero(self):
        return self.degree == 0 and self.coeffs[0] == 0

    def __call__(self, x):
        acc = np.zeros_like(np.asarray(x, dtype=complex))
        for a in self.coeffs[::-1]:
            acc = acc * x + a
        return acc

    def derivative(self):
        if self.degree == 0:
            return UniPoly([0.0])
        return UniPoly(self.coeffs[1:] * np.arange(1, len(self.coeffs)))

    def scale_at(self, x):
        """Sum of |a_i| |x|^i, the natural size of an evaluation at x."""
        return float(np.sum(np.abs(self.coeffs) * np.abs(x) ** np.arange(len(self.coeffs))))

    def __repr__(self):
        return f"UniPoly({self.coeffs!r})"


class BiPoly:
    """Bivariate polynomial sum c[i, j] u^i v^j on a dense grid."""

    def __init__(self, c):
        c = np.atleast_2d(np.asarray(c))
        self.c = c.astype(complex) if np.iscomplexobj(c) else c.astype(float)

    @classmethod
    def from_terms(cls, terms):
        """Build from a mapping {(i, j): coefficient}."""
        if not terms:
            return cls(np.zeros((1, 1)))
        du = max(i for i, _ in terms) + 1
        dv = max(j for _, j in terms) + 1
        iscomplex = any(isinstance(x, complex) for x in terms.values())
        c = np.zeros((du, dv), dtype=complex if iscomplex else float)
        for (i, j), a in terms.items():
            c[i, j] += a
        return cls(c)

    @property
    def deg_u(self):
        nz = np.nonzero(np.any(self.c != 0, axis=1))[0]
        return int(nz[-1]) if nz.size else -1

    def is_zero(self):
        return not np.any(self.c != 0)

    def u_coeff(self, i):
        """Coefficient of u^i as an ascending array in v."""
        return self.c[i].copy() if i < self.c.shape[0] else np.zeros(1)

    def __call__(self, u, v):
        acc = 0.0
        for i in range(self.c.shape[0] - 1, -1, -1):
            row = 0.0
            for j in range(self.c.shape[1] - 1, -1, -1):
                row = row * v + self.c[i, j]
            acc = acc * u + row
        return acc

    def in_u_at(self, v):
        """Specialise v, returning a UniPoly in u."""
        return UniPoly([np.polynomial.polynomial.polyval(v, self.c[i])
                        for i in range(self.c.shape[0])])

    def du(self):
        if self.c.shape[0] == 1:
            return BiPoly(np.zeros((1, 1)))
        return BiPoly(self.c[1:] * np.arange(1, self.c.shape[0])[:, None])

    def dv(self):
        if self.c.shape[1] == 1:
            return BiPoly(np.zeros((1, 1)))
        return BiPoly(self.c[:, 1:] * np.arange(1, self.c.shape[1])[None, :])

    def scale_at(self, u, v):
        i = np.arange(self.c.shape[0])[:, None]
        j = np.arange(self.c.shape[1])[None, :]
        return float(np.sum(np.abs(self.c) * np.abs(u) ** i * np.abs(v) ** j))

    def __sub__(self, other):
        if np.isscalar(other):
            c = self.c.astype(complex if np.iscomplexobj(other) else self.c.dtype, copy=True)
            c[0, 0] -= other
            return BiPoly(c)
        du = max(self.c.shape[0], other.c.shape[0])
        dv = max(self.c.shape[1], other.c.shape[1])
        dtype = np.result_type(self.c, other.c)
        c = np.zeros((du, dv), dtype=dtype)
        c[:self.c.shape[0], :self.c.shape[1]] += self.c
        c[:other.c.shape[0], :other.c.shape[1]] -= other.c
        return BiPoly(c)


# --- resultants -----------------------------------------------------------

def _padd(a, b):
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=np.result_type(a, b))
    out[:len(a)] += a
    out[:len(b)] += b
    return out


def _det_poly(rows):
    """Determinant of a square matrix of polynomials (ascending arrays).

    Division-free expansion by minors along rows, memoised on the set of
    columns still available; exact in the ring apart from float rounding.
    """
    n = len(rows)
    memo = {}

    def minor(r, cols):
        if r == n:
            return np.ones(1)
        key = (r, cols)
        if key in memo:
            return memo[key]
        acc = np.zeros(1)
        for pos, col in enumerate(cols):
            entry = rows[r][col]
            if not np.any(entry):
                continue
            sub = minor(r + 1, cols[:pos] + cols[pos + 1:])
            term = np.convolve(entry, sub)
            acc = _padd(acc, term if pos % 2 == 0 else -term)
        memo[key] = acc
        return acc

    return minor(0, tuple(range(n)))


def sylvester_u(p, q):
    """Sylvester matrix in u with polynomial-in-v entries; p's rows first."""
    m, n = p.deg_u, q.deg_u
    size = m + n
    zero = np.zeros(1)
    rows = []
    for r in range(n):
        row = [zero] * size
        for i in range(m + 1):
            row[r + i] = p.u_coeff(m - i)
        rows.append(row)
    for r in range(m):
        row = [zero] * size
        for i in range(n + 1):
            row[r + i] = q.u_coeff(n - i)
        rows.append(row)
    return rows


def resultant_u(p, q):
    """Resultant of ``p`` and ``q`` with respect to u, as a UniPoly in v."""
    if p.is_zero() or q.is_zero():
        raise DegenerateInputError("zero polynomial passed to resultant")
    if p.deg_u < 1 or q.deg_u < 1:
        raise DegenerateInputError("both polynomials need positive degree in u")
    # no trimming: a tiny leading coefficient is meaningful here (it scales like eps^k)
    return UniPoly(_det_poly(sylvester_u(p, q)), trim=False)


# --- univariate roots -----------------------------------------------------

ABERTH_MAX_ITER = 200
POLISH_STEPS = 3
ROOT_RESIDUAL_TOL = 1e-10


def poly_roots(p, max_iter=ABERTH_MAX_ITER, polish=POLISH_STEPS, rng_seed=0):
    """All complex roots of ``p`` with multiplicity (Aberth-Ehrlich)."""
    if not isinstance(p, UniPoly):
        p = UniPoly(p)
    n = p.degree
    if n < 1:
        raise DegenerateInputError("polynomial has no roots (degree < 1)")
    a = p.coeffs / p.leading
    if n == 1:
        return [complex(-a[0])]
    dp = UniPoly(a[1:] * np.arange(1, n + 1))
    pn = UniPoly(a)

    # start on a circle of radius given by the Fujiwara bound, slightly rotated
    mags = np.abs(a[:-1])
    radius = 2 * max(mags[n - k] ** (1.0 / k) for k in range(1, n + 1))
    radius = max(radius, 1e-300) if radius > 0 else 1.0
    rng = np.random.default_rng(rng_seed)
    angles = 2 * np.pi * np.arange(n) / n + 0.4 + 0.1 * rng.random(n)
    z = 0.5 * radius * np.exp(1j * angles)
    # centre the circle on the centroid of the roots
    z = z - a[n - 1] / n

    converged = np.zeros(n, dtype=bool)
    for _ in range(max_iter):
        pz = pn(z)
        dz = dp(z)
        ratio = np.where(dz != 0, pz / np.where(dz != 0, dz, 1), pz)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        s = np.sum(1.0 / diff, axis=1) - 1.0  # drop the unit diagonal placeholder
        w = ratio / (1.0 - ratio * s)
        w[converged] = 0.0
        z = z - w
        converged |= np.abs(w) <= 4 * np.finfo(float).eps * np.maximum(np.abs(z), 1e-300)
        if np.all(converged):
            break
    for _ in range(polish):
        pz, dz = pn(z), dp(z)
        ok = dz != 0
        trial = z.copy()
        trial[ok] = z[ok] - pz[ok] / dz[ok]
        better = np.abs(pn(trial)) < np.abs(pz)
        z = np.where(better, trial, z)
    residuals = np.abs(pn(z))
    scales = np.array([pn.scale_at(x) for x in z])
    if np.any(~np.isfinite(z)) or np.any(residuals > ROOT_RESIDUAL_TOL * scales):
        raise RootFindingError("Aberth iteration did not converge", residuals=residuals / scales)
    return [complex(x) for x in z]


def solve_system_u(p, q, degree, lead_tol=1e-13, polish=4):
    """All common zeros of two bivariate polynomials by elimination of u.

    ``degree`` is the degree the resultant is known to have; higher
    coefficients are rounding noise from cancellation and are dropped.
    Each v-root is matched with the root u of p(., v) that best satisfies
    q, then both are refined by a few complex Newton steps.
    Returns (roots, resultant).
    """
    res = resultant_u(p, q)
    c = res.coeffs[:degree + 1]
    if len(c) < degree + 1 or abs(c[-1]) <= lead_tol * np.max(np.abs(c)):
        raise DegenerateInputError("resultant leading coefficient vanishes")
    vs = poly_roots(UniPoly(c, trim=False))
    pu, pv, qu, qv = p.du(), p.dv(), q.du(), q.dv()
    out = []
    for v in vs:
        pu_at = p.in_u_at(v)
        if pu_at.degree >= 1 and abs(pu_at.leading) > 0:
            cands = poly_roots(pu_at)
        else:
            cands = poly_roots(q.in_u_at(v))
        u = min(cands, key=lambda x: abs(q(x, v)) / max(q.scale_at(x, v), 1e-300))
        for _ in range(polish):
            f = np.array([p(u, v), q(u, v)])
            jac = np.array([[pu(u, v), pv(u, v)], [qu(u, v), qv(u, v)]])
            det = jac[0, 0] * jac[1, 1] - jac[0, 1] * jac[1, 0]
            if det == 0:
                break
            du_ = (jac[1, 1] * f[0] - jac[0, 1] * f[1]) / det
            dv_ = (-jac[1, 0] * f[0] + jac[0, 0] * f[1]) / det
            un, vn = u - du_, v - dv_
            if abs(p(un, vn)) + abs(q(un, vn)) < abs(f[0]) + abs(f[1]):
                u, v = un, vn
            else:
                break
        out.append((complex(u), complex(v)))
    return out, res


# --- Newton -----------------------------------------------------------------

@dataclass(frozen=True)
class NewtonConfig:
    tol: float = 1e-12
    max_iter: int = 50
    damping: float = 1.0
    min_step: float = 2.0 ** -20
    max_step: float = float("inf")
    polish: int = 2

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if not 0 < self.damping <= 1:
            raise ValueError("damping must lie in (0, 1]")


def newton2(F, J, x0, cfg=NewtonConfig()):
    """Solve F(x) = 0 for x in R^2 with a halving line search.

    ``F`` returns a length-2 array, ``J`` its 2x2 Jacobian.  Returns the
    solution and the number of iterations taken.
    """
    x = np.array(x0, dtype=float)
    fx = np.asarray(F(x), dtype=float)
    norm = np.max(np.abs(fx))
    for it in range(cfg.max_iter + 1):
        if norm <= cfg.tol:
            return _polish(F, J, x, fx, norm, cfg.polish), it
        if it == cfg.max_iter:
            break
        jac = np.asarray(J(x), dtype=float)
        det = jac[0, 0] * jac[1, 1] - jac[0, 1] * jac[1, 0]
        jscale = np.max(np.abs(jac)) ** 2
        if not np.isfinite(det) or abs(det) <= 1e-14 * jscale or jscale == 0:
            raise SingularJacobianError(f"singular Jacobian at {x} (det {det:g})")
        step = -np.array([jac[1, 1] * fx[0] - jac[0, 1] * fx[1],
                          -jac[1, 0] * fx[0] + jac[0, 0] * fx[1]]) / det
        if np.max(np.abs(step)) > cfg.max_step:
            raise NonConvergenceError("Newton step left the trust region", residual=norm)
        t = cfg.damping
        while True:
            xn = x + t * step
            fn = np.asarray(F(xn), dtype=float)
            nn = np.max(np.abs(fn))
            if np.isfinite(nn) and nn < norm:
                break
            if t <= cfg.min_step:
                break
            t *= 0.5
        if not np.isfinite(nn):
            raise NonConvergenceError("Newton iterate left the domain", residual=norm)
        x, fx, norm = xn, fn, nn
    raise NonConvergenceError(f"Newton did not converge in {cfg.max_iter} iterations",
                              residual=norm)


def _polish(F, J, x, fx, norm, rounds):
    for _ in range(rounds):
        if norm == 0:
            break
        jac = np.asarray(J(x), dtype=float)
        det = jac[0, 0] * jac[1, 1] - jac[0, 1] * jac[1, 0]
        if not np.isfinite(det) or det == 0:
            break
        xn = x - np.array([jac[1, 1] * fx[0] - jac[0, 1] * fx[1],
                           -jac[1, 0] * fx[0] + jac[0, 0] * fx[1]]) / det
        fn = np.asarray(F(xn), dtype=float)
        nn = np.max(np.abs(fn))
        if not nn < norm:
            break
        x, fx, norm = xn, fn, nn
    return x


# --- vanishing polynomials in three variables -------------------------------

def monomials3(degree):
    """Exponent triples of total degree <= ``degree``, graded then lexicographic."""
    out = []
    for d in range(degree + 1):
        for a in range(d, -1, -1):
            for b in range(d - a, -1, -1):
                out.append((a, b, d - a - b))
    return out


def eval_monomials(points, monos):
    pts = np.asarray(points, dtype=float)
    X, Y, Z = pts[:, 0], pts[:, 1], pts[:, 2]
    return np.stack([X ** a * Y ** b * Z ** c for a, b, c in monos], axis=1)


def eval_poly3(coeffs, monos, point):
    x, y, z = point
    terms = np.array([c * x ** a * y ** b * z ** e for c, (a, b, e) in zip(coeffs, monos)])
    return float(np.sum(terms)), float(np.sum(np.abs(terms)))


def null_vector_fit(points, degree, rank_tol=1e-10):
    """Least-norm null vector of the monomial matrix evaluated at ``points``.

    Columns are scaled to unit norm before the SVD; the returned
    coefficients refer to the unscaled monomials and have unit 2-norm.
    Returns (coeffs, monos, nullity, singular_values).
    """
    monos = monomials3(degree)
    V = eval_monomials(points, monos)
    colnorm = np.linalg.norm(V, axis=0)
    colnorm[colnorm == 0] = 1.0
    _, s, Vt = np.linalg.svd(V / colnorm, full_matrices=False)
    nullity = int(np.sum(s <= rank_tol * s[0]))
    c = Vt[-1] / colnorm
    c /= np.linalg.norm(c)
    return c, monos, nullity, s


__all__ = ["UniPoly", "BiPoly", "resultant_u", "sylvester_u", "poly_roots", "NewtonConfig",
           "newton2", "solve_system_u", "monomials3", "eval_monomials", "eval_poly3", "null_vector_fit"]
