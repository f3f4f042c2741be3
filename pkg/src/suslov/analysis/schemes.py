"""Uniform access to the two discretisations by name."""

from dataclasses import dataclass
from typing import Callable

from .. import _tables, scheme_cay, scheme_mv


@dataclass(frozen=True)
class Scheme:
    name: str
    legendre: Callable
    invert: Callable
    step: Callable
    branches: Callable
    invariant: Callable
    momentum_step: Callable
    mu3: Callable
    nu3: Callable
    locus_points: Callable
    locus_degree: int
    locus_lowest_degree: int
    transcribed_parts: Callable
    invariant_name: str


MV = Scheme("mv", scheme_mv.legendre_1, scheme_mv.legendre_1_invert, scheme_mv.step_1,
            scheme_mv.step_branches_1, scheme_mv.invariant_R, scheme_mv.momentum_step_1,
            scheme_mv.mu3, scheme_mv.nu3, scheme_mv.locus_points, 4, 1, _tables.p4_parts, "R")
CAY = Scheme("cay", scheme_cay.legendre_inf, scheme_cay.legendre_inf_invert, scheme_cay.step_inf,
             scheme_cay.step_branches_inf, scheme_cay.invariant_Q, scheme_cay.momentum_step_inf,
             scheme_cay.mu3, scheme_cay.nu3, scheme_cay.locus_points, 7, 5, _tables.q7_parts, "Q")

SCHEMES = {"mv": MV, "cay": CAY}


def get_scheme(scheme):
    if isinstance(scheme, Scheme):
        return scheme
    try:
        return SCHEMES[scheme]
    except KeyError:
        raise ValueError(f"unknown scheme {scheme!r}; expected one of {sorted(SCHEMES)}") from None
