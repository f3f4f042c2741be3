"""How many step solutions exist, and how many are real."""

from collections import Counter
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from ..errors import DegenerateStepError, RootFindingError
from .schemes import get_scheme

REAL_TOL = 1e-7


@dataclass
class CensusRow:
    sample: int
    u: float
    v: float
    n_total: int
    n_real: int
    degenerate: Optional[str] = None


@dataclass
class Census:
    scheme: str
    eps: float
    rows: List[CensusRow]

    @property
    def valid(self):
        return [r for r in self.rows if r.degenerate is None]

    def histogram(self):
        return Counter((r.n_total, r.n_real) for r in self.valid)

    def fraction(self, pair: Tuple[int, int]):
        valid = self.valid
        return self.histogram()[pair] / len(valid) if valid else 0.0

    def mode(self):
        return self.histogram().most_common(1)[0][0]


def is_real_root(root, tol=REAL_TOL):
    root = np.asarray(root)
    return bool(np.all(np.abs(root.imag) <= tol * np.maximum(1.0, np.abs(root))))


def root_census(scheme, m, eps, n_samples, seed=0, radius=1.0):
    """Count branches of the step equations at seeded states (u, v) in [-radius, radius]^2.

    Samples where the resultant degenerates or root finding fails are kept in
    the table with a reason and left out of the statistics.
    """
    sch = get_scheme(scheme)
    rng = np.random.default_rng(seed)
    pts = rng.uniform(-radius, radius, size=(n_samples, 2))
    rows = []
    for i, (u, v) in enumerate(pts):
        try:
            roots = sch.branches(m, eps, (u, v))
        except (DegenerateStepError, RootFindingError) as exc:
            rows.append(CensusRow(i, float(u), float(v), 0, 0, exc.__class__.__name__))
            continue
        rows.append(CensusRow(i, float(u), float(v), len(roots), sum(is_real_root(r) for r in roots)))
    return Census(sch.name, eps, rows)


__all__ = ["CensusRow", "Census", "root_census", "is_real_root"]
