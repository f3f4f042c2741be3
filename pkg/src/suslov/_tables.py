"""Transcribed reference tables for the locus polynomials p4 and q7.

These are transcriptions kept only for reconciliation against fitted
coefficients; the production evaluators never use them.  Monomials are keyed
by exponent triples (a, b, c) of X^a Y^b Z^c.  Glyph-level ambiguities in
the source are read as the nearest well-formed term and marked ``# read as``.

Both polynomials are returned at eps = 1.  The homogeneous part of degree d
carries eps^(d-1) (p4) or the factors 1, eps, eps^2 on degrees 5, 6, 7 (q7).
"""


def _mul(p, q):
    out = {}
    for ka, ca in p.items():
        for kb, cb in q.items():
            k = (ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2])
            out[k] = out.get(k, 0.0) + ca * cb
    return out


def _add(*polys):
    out = {}
    for p in polys:
        for k, c in p.items():
            out[k] = out.get(k, 0.0) + c
    return out


def _scale(p, s):
    return {k: s * c for k, c in p.items()}


def p4_parts(I11, I22, I13, I23):
    """Homogeneous parts {1: ..., 2: ..., 3: ..., 4: ...} as transcribed."""
    d = I11 - I22
    part1 = {(1, 0, 0): -4 * d * I13 * I22,
             (0, 1, 0): -4 * d * I11 * I23,
             (0, 0, 1): 4 * d * I11 * I22}
    part2 = {
        (0, 0, 2): -2 * I11 * I22 * (I13 ** 2 + I23 ** 2) / (I23 * I13),
        (2, 0, 0): 2 * I22 * I13 * d / I23,
        (1, 1, 0): 4 * d ** 2,
        (0, 1, 1): 2 / I13 * (I11 ** 2 * I22 + 2 * I11 * I13 ** 2 - I11 * I22 ** 2
                              + I11 * I23 ** 2 - I13 ** 2 * I22),
        (0, 2, 0): -I11 * I23 * d / I13,
        (1, 0, 1): -2 / I23 * (I11 ** 2 * I22 - I11 * I22 ** 2 + I11 * I23 ** 2
                               - I13 ** 2 * I22 - 2 * I22 * I23 ** 2),
    }
    part3 = {
        (3, 0, 0): I13,
        (0, 3, 0): -I23,
        (0, 2, 1): 4 * I11 - I22,
        (0, 1, 2): -(I11 ** 2 + I11 * I22 + I13 ** 2 + I23 ** 2) / I23,
        (2, 1, 0): -(I11 ** 2 - 3 * I11 * I22 + I13 ** 2 + 2 * I22 ** 2 - 2 * I23 ** 2) / I23,
        (2, 0, 1): I11 - 4 * I22,
        (1, 0, 2): I11 * I22 + I13 ** 2 + I22 ** 2 + I23 ** 2,
        (0, 0, 3): I11 - I22,
        # transcribed with the self-cancelling pair I11^2 I22 - I11^2 I22
        (1, 1, 1): -(I11 ** 2 * I22 - I11 ** 2 * I22 + 3 * I11 * I23 ** 2
                     - 3 * I13 ** 2 * I22) / (I13 * I23),
        (1, 2, 0): (2 * I11 ** 2 - 3 * I11 * I22 - 2 * I13 ** 2 + I22 ** 2 + I23 ** 2) / I13,
    }
    part4 = {
        (1, 2, 1): I22 / I23,
        (1, 1, 2): -1.0,
        (0, 0, 4): -(I13 ** 2 + I23 ** 2) / (2 * I23 * I13),
        (3, 1, 0): -1.0,
        (1, 3, 0): -1.0,
        (4, 0, 0): -0.5,
        (0, 1, 3): I11 / I13,
        (0, 3, 1): I11 / I13,
        (2, 1, 1): I11 / I13,
        (1, 0, 3): I22 / I23,
        (3, 0, 1): I22 / I23,
        (0, 4, 0): -I23 / (2 * I13),
        (0, 2, 2): -(I11 ** 2 + I13 ** 2 + 2 * I23 ** 2) / (2 * I13 * I23),
        (2, 0, 2): -(2 * I13 ** 2 + I22 ** 2 + I23 ** 2) / (2 * I23 * I13),
        (2, 2, 0): -(I11 ** 2 - 2 * I11 * I22 + I13 ** 2 + I22 ** 2 + I23 ** 2) / (2 * I13 * I23),
    }
    return {1: part1, 2: part2, 3: part3, 4: part4}


def q7_q4(I11, I22, I13, I23):
    return {
        (4, 0, 0): I13 ** 2 * I22 ** 4,
        (3, 1, 0): 2 * I11 * I13 * I22 ** 3 * I23,
        (3, 0, 1): 2 * I11 ** 2 * I13 * I22 ** 3 - 2 * I11 * I13 * I22 ** 4 + 2 * I13 ** 3 * I22 ** 2,
        (2, 2, 0): (I11 ** 4 * I22 ** 2 - 2 * I11 ** 3 * I22 ** 3 + I11 ** 2 * I13 ** 2 * I22 ** 2
                    + I11 ** 2 * I22 ** 4 + I11 ** 2 * I22 ** 2 * I23 ** 2),
        (2, 1, 1): 6 * I11 * I13 ** 2 * I22 ** 2 * I23,
        # I13^4 I22^2 appears twice
        (2, 0, 2): (I11 ** 4 * I22 ** 2 - 2 * I11 ** 3 * I22 ** 3 + 2 * I11 ** 2 * I13 ** 2 * I22 ** 2
                    + I11 ** 2 * I22 ** 4 + I11 ** 2 * I22 ** 2 * I23 ** 2
                    - 2 * I11 * I13 ** 2 * I22 ** 3 + I13 ** 4 * I22 ** 2 + I13 ** 4 * I22 ** 2
                    + I13 ** 2 * I22 ** 4 + I13 ** 2 * I22 ** 2 * I23 ** 2),
        (1, 3, 0): 2 * I11 ** 3 * I13 * I22 * I23,
        (1, 2, 1): 6 * I11 ** 2 * I13 * I22 * I23 ** 2,
        (1, 1, 2): (2 * I11 ** 3 * I13 * I22 * I23 - 4 * I11 ** 2 * I13 * I22 ** 2 * I23
                    + 2 * I11 * I13 ** 3 * I22 * I23 + 2 * I11 * I13 * I22 ** 3 * I23
                    + 2 * I11 * I13 * I22 * I23 ** 3),
        (1, 0, 3): (2 * I11 ** 2 * I13 * I22 ** 3 + 42 * I11 ** 2 * I13 * I22 * I23 ** 3
                    - 2 * I11 * I13 * I22 ** 4 - 2 * I11 * I13 * I22 ** 2 * I23 ** 2
                    + I13 ** 3 * I22 ** 3),
        (0, 4, 0): I11 ** 4 * I23 ** 2,
        (0, 3, 1): -2 * I11 ** 4 * I22 * I23 + 2 * I11 ** 3 * I22 ** 2 * I23 + 2 * I11 ** 3 * I23 ** 3,
        (0, 2, 2): (I11 ** 4 * I22 ** 2 + I11 ** 4 * I23 ** 2 - 2 * I11 ** 3 * I22 ** 3
                    - 2 * I11 ** 3 * I22 * I23 ** 2 + I11 ** 2 * I13 ** 2 * I22 ** 2
                    + I11 ** 2 * I13 ** 2 * I23 ** 2 + I11 ** 2 * I22 ** 4
                    + 2 * I11 ** 2 * I22 ** 2 * I23 ** 2 + I11 ** 2 * I23 ** 2),
        (0, 1, 3): (2 * I11 ** 3 * I22 ** 2 * I23 - 2 * I11 ** 4 * I22 * I23 + 2 * I11 ** 3 * I23 ** 3
                    - 2 * I11 ** 2 * I13 ** 2 * I22 * I23 + 4 * I11 * I13 ** 2 * I22 ** 2 * I23),
        (0, 0, 4): (I11 ** 4 * I22 ** 2 - 2 * I11 ** 3 * I22 ** 3 - 2 * I11 ** 3 * I22 * I23 ** 2
                    + 2 * I11 ** 2 * I13 ** 2 * I22 ** 2 + I11 ** 2 * I22 ** 4
                    + 2 * I11 ** 2 * I22 ** 2 * I23 ** 2 + I11 ** 2 * I23 ** 4
                    - 2 * I11 * I13 ** 2 * I22 ** 3 + 2 * I11 * I13 ** 2 * I22 * I23 ** 2
                    + I13 ** 4 * I22 ** 2),
    }


def q7_q6(I11, I22, I13, I23):
    return {
        (4, 1, 1): 6 * (I11 ** 3 * I13 * I22 ** 3 - I11 ** 2 * I13 * I22 ** 4),
        (4, 0, 2): -6 * I11 ** 2 * I13 * I22 ** 3 * I23,
        (3, 3, 0): 2 * (I11 ** 5 * I22 ** 2 - 3 * I11 ** 4 * I22 ** 3 + 3 * I11 ** 3 * I22 ** 4
                        - I11 ** 2 * I22 ** 5),
        (3, 2, 1): 6 * (I11 ** 3 * I22 ** 3 * I23 - I11 ** 2 * I22 ** 4 * I23),
        (3, 1, 2): 2 * (I11 ** 5 * I22 ** 2 - 4 * I11 ** 4 * I22 ** 3 + I11 ** 3 * I13 ** 2 * I22 ** 2
                        + I11 ** 3 * I22 ** 4 + 4 * I11 ** 2 * I13 ** 2 * I22 ** 3
                        - 3 * I11 ** 2 * I22 ** 3 * I23 ** 2 - 2 * I11 * I13 ** 2 * I22 ** 4),
        (3, 0, 3): -2 * (I11 ** 4 * I22 ** 2 * I23 - 3 * I11 ** 3 * I22 ** 3 * I23
                         + 5 * I11 ** 2 * I13 ** 2 * I22 ** 2 * I23 + I11 ** 2 * I22 ** 2 * I23 ** 3
                         + 2 * I11 * I13 ** 2 * I22 ** 3 * I23),
        (2, 3, 1): 6 * (I11 ** 4 * I13 * I22 ** 2 - I11 ** 3 * I13 * I22 ** 3),
        (2, 2, 2): 6 * (I11 ** 3 * I13 * I22 ** 2 * I23 - I11 ** 2 * I13 * I22 ** 3 * I23),
        (2, 1, 3): 2 * (I13 ** 3 * I22 ** 4 + 3 * I11 ** 4 * I13 * I22 ** 2 - 3 * I11 ** 3 * I13 * I22 ** 3
                        - 3 * I11 ** 3 * I13 * I22 * I23 ** 2 + 3 * I11 ** 2 * I13 ** 3 * I22 ** 2
                        - 2 * I11 ** 2 * I13 * I22 ** 4 - 8 * I11 ** 2 * I13 * I22 ** 2 * I23 ** 2
                        + 3 * I11 * I13 ** 3 * I22 ** 3),  # read as: "I13 3" -> I13^3
        (2, 0, 4): 2 * (I13 ** 3 * I22 ** 3 * I23 + 6 * I11 ** 3 * I13 * I22 ** 2 * I23
                        - 2 * I11 ** 2 * I13 * I22 ** 3 * I23 - 5 * I11 ** 2 * I13 * I22 * I23 ** 3
                        - 6 * I11 * I13 ** 3 * I22 ** 2 * I23),
        (1, 4, 1): 6 * (I11 ** 4 * I22 ** 2 * I23 - I11 ** 3 * I22 ** 3 * I23),
        (1, 3, 2): -2 * (I11 ** 2 * I22 ** 5 + I11 ** 2 * I22 ** 2 * I23 ** 2
                         - 2 * I11 ** 4 * I22 * I23 ** 2 + 3 * I11 ** 4 * I22 ** 3
                         - 3 * I11 ** 3 * I13 ** 2 * I22 ** 2 - 4 * I11 ** 3 * I22 ** 4
                         + 4 * I11 ** 3 * I22 ** 2 * I23 ** 2),
        (1, 2, 3): -2 * (I11 ** 4 * I23 ** 3 - 2 * I11 ** 4 * I22 ** 2 * I23
                         - 3 * I11 ** 3 * I22 ** 3 * I23 + 3 * I11 ** 3 * I22 * I23 ** 3
                         - 8 * I11 ** 2 * I13 ** 2 * I22 ** 2 * I23 + 3 * I11 ** 2 * I22 ** 4 * I23
                         + 3 * I11 ** 2 * I22 ** 2 * I23 ** 3 - 3 * I11 * I13 ** 2 * I22 ** 3 * I23),
        (1, 1, 4): 2 * (I11 * I13 ** 2 * I22 ** 2 * I23 ** 2  # read as: "I23 2" -> I23^2
                        - 4 * I11 ** 4 * I22 ** 3 + 5 * I11 ** 4 * I22 * I23 ** 2
                        + 3 * I11 ** 3 * I13 ** 2 * I23 + 4 * I11 ** 3 * I22 ** 4
                        + 2 * I11 ** 3 * I22 ** 2 * I23 ** 2 - 2 * I11 ** 3 * I22 ** 4
                        - 2 * I11 ** 2 * I13 ** 2 * I23 ** 3 - I11 ** 2 * I13 ** 2 * I22 * I23 ** 2
                        - 3 * I11 ** 2 * I22 ** 3 * I23 ** 2 - 3 * I11 ** 2 * I22 * I23 ** 4
                        + 3 * I11 * I13 ** 4 * I22 ** 2 - 5 * I11 * I13 ** 2 * I22 ** 4
                        + 2 * I13 ** 4 * I22 ** 3),
        (1, 0, 5): -2 * (I11 ** 2 * I22 ** 2 * I23 ** 3 + I11 ** 2 * I23 ** 5 + I13 ** 4 * I22 ** 2 * I23
                         + 2 * I11 * I13 ** 2 * I22 * I23 ** 3  # read as: "I13 2" -> I13^2
                         + 5 * I11 * I13 ** 2 * I22 ** 3 * I23 - 7 * I11 ** 2 * I13 ** 2 * I22 * I23
                         + 4 * I11 ** 4 * I22 ** 2 * I23 - 4 * I11 ** 3 * I22 ** 3 * I23
                         - 3 * I11 ** 3 * I22 * I23 ** 3),
        (0, 4, 2): 6 * I11 ** 3 * I13 * I22 ** 2 * I23,
        (0, 3, 3): 2 * (I11 ** 2 * I13 ** 3 * I23 ** 2  # read as: "I13^3" subscript glyph
                        + I11 ** 2 * I13 * I22 ** 4 - 3 * I11 ** 3 * I13 * I22 ** 3
                        + 2 * I11 ** 3 * I13 * I22 * I23 ** 2  # read as: "I23 2" -> I23^2
                        + 5 * I11 ** 2 * I13 * I22 ** 2 * I23 ** 2),
        (0, 2, 4): -2 * (I11 ** 3 * I13 * I23 ** 3 + 6 * I11 ** 2 * I13 * I22 ** 3 * I23
                         - 2 * I11 ** 3 * I13 * I22 ** 2 * I23 - 6 * I11 ** 2 * I13 * I22 * I23 ** 3
                         - 5 * I11 * I13 ** 3 * I22 ** 2 * I23),
        (0, 1, 5): 2 * (I11 ** 2 * I13 ** 3 * I22 ** 2 + I11 ** 2 * I13 * I23 ** 4 + I13 ** 5 * I22 ** 2
                        + 2 * I11 * I13 ** 3 * I22 * I23 ** 2 - 3 * I11 * I13 ** 3 * I22 ** 3
                        + 4 * I11 ** 2 * I13 * I22 ** 4 - 7 * I11 ** 2 * I13 * I22 ** 2 * I23 ** 2
                        - 4 * I11 ** 3 * I13 * I22 ** 3 + 5 * I11 ** 3 * I13 * I22 * I23 ** 2),
        # read as: the missing operator before the last term is "+"
        (0, 0, 6): 8 * I11 * I13 * I22 * I23 * (I11 * I22 ** 2 - I11 ** 2 * I22),
    }


def q7_q7(I11, I22, I13, I23):
    quad = {(2, 0, 0): I11 ** 2 * I22, (1, 0, 1): 2 * I11 * I13 * I22,
            (0, 2, 0): I11 * I22 ** 2, (0, 1, 1): 2 * I11 * I22 * I23,
            (0, 0, 2): I11 * I23 ** 2 - I13 ** 2 * I22}
    return _mul({(0, 0, 3): 1.0}, _mul(quad, quad))


def q7_parts(I11, I22, I13, I23):
    """Homogeneous parts {5: ..., 6: ..., 7: ...} as transcribed, at eps = 1."""
    plane = {(1, 0, 0): -4 * I13 * I22, (0, 1, 0): -4 * I11 * I23, (0, 0, 1): 4 * I11 * I22}
    return {5: _mul(plane, q7_q4(I11, I22, I13, I23)),
            6: q7_q6(I11, I22, I13, I23),
            7: q7_q7(I11, I22, I13, I23)}


def flatten(parts):
    return _add(*parts.values())


def p4_transcribed(I11, I22, I13, I23):
    return flatten(p4_parts(I11, I22, I13, I23))


def q7_transcribed(I11, I22, I13, I23):
    return flatten(q7_parts(I11, I22, I13, I23))


__all__ = ["p4_parts", "q7_parts", "q7_q4", "q7_q6", "q7_q7", "p4_transcribed", "q7_transcribed", "flatten"]
