"""Exact vanishing polynomials of the two momentum loci (needs sympy).

Regenerates tests/fixtures/exact_{p4,q7}_<tensor>.json.  The loci are
parametrised rationally in (u, v) at unit step; a polynomial P(X, Y, Z) of the
given degree vanishes on the locus iff the numerator of P(M(u, v)) is zero,
which is a linear condition on the coefficients.  The nullspace is computed
over the rationals and normalised so that

  p4: the X coefficient equals -4 (I11 - I22) I13 I22
  q7: the X^5 coefficient equals -4 I13^3 I22^5

Usage: python3 tools/derive_locus_polynomials.py {p4|q7} [generic|other] [outdir]
"""

import json
import sys
import time
from pathlib import Path

import sympy as sp
from sympy.polys.matrices import DomainMatrix

TENSORS = {
    "generic": (sp.Integer(3), sp.Integer(4), sp.Integer(1), sp.Rational(1, 2)),
    "other": (sp.Integer(2), sp.Integer(5), sp.Rational(7, 10), sp.Rational(3, 10)),
}


def monomials(degree):
    return [(a, b, d - a - b) for d in range(degree + 1)
            for a in range(d, -1, -1) for b in range(d - a, -1, -1)]


def derive(which, tensor):
    I11, I22, I13, I23 = TENSORS[tensor]
    u, v = sp.symbols("u v")
    L = I13 * u + I23 * v
    if which == "p4":
        den = 4 + u ** 2 + v ** 2
        num = [2 * (2 * I11 * u + v * L), 2 * (2 * I22 * v - u * L), 2 * (2 * L + (I22 - I11) * u * v)]
        degree, anchor_key, anchor = 4, (1, 0, 0), -4 * (I11 - I22) * I13 * I22
    else:
        den = sp.Integer(1)
        q = (I11 * u ** 2 + I22 * v ** 2) / 4
        num = [I11 * u + v * L / 2 + u * q, I22 * v - u * L / 2 + v * q, L + u * v * (I22 - I11) / 2]
        degree, anchor_key, anchor = 7, (5, 0, 0), -4 * I13 ** 3 * I22 ** 5
    monos = monomials(degree)
    pows = [[sp.Integer(1)] for _ in range(3)]
    for k in range(3):
        for _ in range(degree):
            pows[k].append(sp.expand(pows[k][-1] * num[k]))
    denp = [sp.Integer(1)]
    for _ in range(degree):
        denp.append(sp.expand(denp[-1] * den))
    cols = [sp.Poly(sp.expand(pows[0][a] * pows[1][b] * pows[2][c] * denp[degree - a - b - c]), u, v).as_dict()
            for a, b, c in monos]
    keys = sorted({k for col in cols for k in col})
    rows = [[sp.QQ.from_sympy(sp.sympify(col.get(k, 0))) for col in cols] for k in keys]
    ns = DomainMatrix(rows, (len(keys), len(monos)), sp.QQ).nullspace().to_Matrix()
    if ns.shape[0] != 1:
        raise SystemExit(f"nullspace has dimension {ns.shape[0]}")
    vec = ns.row(0)
    vec = vec * (anchor / vec[monos.index(anchor_key)])
    return {"which": which, "tensor": [str(x) for x in TENSORS[tensor]],
            "normalisation": f"coefficient of {list(anchor_key)} = {anchor}",
            "coefficients": [[list(k), str(c)] for k, c in zip(monos, vec) if c != 0]}


def main(argv):
    which = argv[1]
    tensor = argv[2] if len(argv) > 2 else "generic"
    outdir = Path(argv[3]) if len(argv) > 3 else Path(__file__).resolve().parent.parent / "tests" / "fixtures"
    t0 = time.time()
    doc = derive(which, tensor)
    path = outdir / f"exact_{which}_{tensor}.json"
    path.write_text(json.dumps(doc, indent=1) + "\n")
    print(f"{path}: {len(doc['coefficients'])} nonzero coefficients ({time.time() - t0:.1f} s)")


if __name__ == "__main__":
    main(sys.argv)
