"""Writes the golden lookup table used by the regeneration test.

The rows are restated from their closed forms and evaluated with
Python fractions, independently of the Rust code. The float column is
omitted; the test checks it against the exact value separately.

    python3 tools/table_golden.py > crates/core/tests/golden/table_g100.csv
"""

import csv
import sys
from fractions import Fraction as F

G = 100
M1, M2, P = 4, 2, 2
M = M1
ELL = 3


class Laurent:
    """Sum of q * pi^k, stored as {k: q}."""

    def __init__(self, terms=None):
        self.terms = {k: q for k, q in (terms or {}).items() if q != 0}

    def __mul__(self, other):
        if not isinstance(other, Laurent):
            return Laurent({k: q * other for k, q in self.terms.items()})
        out = {}
        for k1, q1 in self.terms.items():
            for k2, q2 in other.terms.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + q1 * q2
        return Laurent(out)

    def __add__(self, other):
        out = dict(self.terms)
        for k, q in other.terms.items():
            out[k] = out.get(k, 0) + q
        return Laurent(out)

    def __pow__(self, n):
        r = Laurent({0: F(1)})
        for _ in range(n):
            r = r * self
        return r

    def __str__(self):
        if not self.terms:
            return "0"
        out = ""
        for i, k in enumerate(sorted(self.terms, reverse=True)):
            q = self.terms[k]
            if i == 0:
                out += "-" if q < 0 else ""
            else:
                out += " - " if q < 0 else " + "
            out += term(abs(q), k)
        return out


def pi_text(k):
    return "pi" if k == 1 else f"pi^{k}"


def term(q, k):
    n, d = q.numerator, q.denominator
    if k == 0:
        return str(n) if d == 1 else f"{n}/{d}"
    if k > 0:
        head = pi_text(k) if n == 1 else f"{n}*{pi_text(k)}"
        return head if d == 1 else f"{head}/{d}"
    return f"{n}/{pi_text(-k)}" if d == 1 else f"{n}/({d}*{pi_text(-k)})"


def const(q):
    return Laurent({0: F(q)})


PI2_6 = Laurent({2: F(1, 6)})
PI2_3 = Laurent({2: F(1, 3)})


def lin(a, b, e):
    """(a*g + b)^e as (text, value at G); e = 0 is the empty product."""
    if e == 0:
        return None
    if (a, b) == (1, 0):
        base = "g"
    elif b == 0:
        base = f"({a}g)"
    elif b > 0:
        base = f"({a}g+{b})"
    else:
        base = f"({a}g-{-b})"
    base = base.replace("(1g", "(g")
    text = base if e == 1 else (f"{base}^({e})" if e < 0 else f"{base}^{e}")
    return text, F(a * G + b) ** e


def scale(*factors):
    fs = [f for f in factors if f is not None]
    if not fs:
        return "1", F(1)
    v = F(1)
    for _, x in fs:
        v *= x
    return "*".join(t for t, _ in fs), v


ZERO = (const(0), scale())
N = 2 * G + ELL - 3  # noqa: F841  (documented in the formulas below)

any_h = "any H / H^odd / H^even / H^nonhyp"
principal = "H(1,...,1)"
two_equal = "H(g-1,g-1) / odd / even / nonhyp"
hyp_two = "H^hyp(g-1,g-1)"
minimal = "H(2g-2) / odd / even"
hyp_min = "H^hyp(2g-2)"
pair = f"m1={M1}, m2={M2}"
single = f"m={M}"
beyond = min(M1, M2) + 2
gsq = scale(lin(1, 0, 2))

rows = [
    (any_h, "1/any", "distinct", pair, "fixed", "(m1+1)(m2+1)", "1+O(1/g)",
     (const((M1 + 1) * (M2 + 1)), scale())),
    (any_h, f"p<=min(m1,m2)+1 (p={P})", "distinct", pair, "fixed",
     "(pi^2/6)^(p-1)*(m1+1)(m2+1)/(2g+l-3)^(2p-2)", "1+O(1/g)*O(1)^p",
     (PI2_6 ** (P - 1) * F((M1 + 1) * (M2 + 1)), scale(lin(2, ELL - 3, -(2 * P - 2))))),
    (any_h, f">=min(m1,m2)+2 (p={beyond})", "distinct", pair, "fixed", "0", "exact", ZERO),
    (any_h, "1/any", "loops", single, "fixed", "(m+1)^2/2", "1+O(1/g)",
     (const(F((M + 1) ** 2, 2)), scale())),
    (any_h, f"p>=1 (p={P})", "loops", single, "fixed", "(m+1)(m-2p+1)/(2g+l-3)^(2p-2)*O(1)^p", "<= C^p",
     (const((M + 1) * (M - 2 * P + 1)), scale(lin(2, ELL - 3, -(2 * P - 2))))),
    (any_h, "1/any", "any", "", "any", "(2g+l-2)^2/2", "1+O(1/g)",
     (const(F(1, 2)), scale(lin(2, ELL - 2, 2)))),
    (principal, "1/any", "distinct", "", "any", "8g^2", "1+O(1/g)", (const(8), gsq)),
    (principal, "2", "distinct", "", "any", "pi^2/12", "1+O(1/g)", (Laurent({2: F(1, 12)}), scale())),
    (principal, "1/any", "loops", "", "any", "2g", "1+O(1/g)", (const(2), scale(lin(1, 0, 1)))),
    (principal, f"p>=1 (p={P})", "loops", "", "any", "(1/2)(pi^2/3)^(p-1)/(4g-5)^(2p-3)", "1+O(1/g)*O(1)^p",
     (PI2_3 ** (P - 1) * F(1, 2), scale(lin(4, -5, -(2 * P - 3))))),
    (two_equal, "1/any", "distinct", "", "fixed/any", "g^2", "1+O(1/g)", (const(1), gsq)),
    (two_equal, f"p<=g (p={P})", "distinct", "", "fixed/any", "(1/4)(pi^2/6)^(p-1)/(2g-1)^(2p-4)",
     "1+O(1/g)*O(1)^p", (PI2_6 ** (P - 1) * F(1, 4), scale(lin(2, -1, -(2 * P - 4))))),
    (two_equal, "1/any", "loops", "", "fixed", "g^2/2", "1+O(1/g)", (const(F(1, 2)), gsq)),
    (two_equal, f"p>=1 (p={P})", "loops", "", "fixed", "(1/8)(pi^2/6)^(p-1)/(2g-1)^(2p-4)", "1+O(1/g)*O(1)^p",
     (PI2_6 ** (P - 1) * F(1, 8), scale(lin(2, -1, -(2 * P - 4))))),
    (two_equal, f"p>=1 (p={P})", "loops", "", "any", "(1/4)(pi^2/6)^(p-1)/(2g-1)^(2p-4)", "1+O(1/g)*O(1)^p",
     (PI2_6 ** (P - 1) * F(1, 4), scale(lin(2, -1, -(2 * P - 4))))),
    (hyp_two, "1", "distinct", "", "fixed/any", "(2/pi)g^2", "1+O(1/g)", (Laurent({-1: F(2)}), gsq)),
    (hyp_two, "2", "distinct", "", "fixed/any", "(1-2/pi)g^2", "1+O(1/g^(1/4))",
     (Laurent({0: F(1), -1: F(-2)}), gsq)),
    (hyp_two, ">=3 (p=3)", "distinct", "", "fixed/any", "0", "exact", ZERO),
    (hyp_two, "1", "loops", "", "fixed/any", "(2/pi^2)g^2", "1+O(1/g)", (Laurent({-2: F(2)}), gsq)),
    (hyp_two, "2", "loops", "", "fixed/any", "(1/2-2/pi^2)g^2", "1+O(1/g^(1/4))",
     (Laurent({0: F(1, 2), -2: F(-2)}), gsq)),
    (hyp_two, ">=3 (p=3)", "loops", "", "fixed/any", "0", "exact", ZERO),
    (minimal, "1/any", "loops", "", "fixed/any", "2g^2", "1+O(1/g)", (const(2), gsq)),
    (minimal, f"p>=1 (p={P})", "loops", "", "fixed/any", "(1/2)(pi^2/6)^(p-1)/(2g-2)^(2p-4)", "1+O(1/g)*O(1)^p",
     (PI2_6 ** (P - 1) * F(1, 2), scale(lin(2, -2, -(2 * P - 4))))),
    (hyp_min, "1", "loops", "", "fixed/any", "(2/pi+2/pi^2)g^2", "1+O(1/g)",
     (Laurent({-1: F(2), -2: F(2)}), gsq)),
    (hyp_min, "2", "loops", "", "fixed/any", "(3/2-2/pi-2/pi^2)g^2", "1+O(1/g^(1/4))",
     (Laurent({0: F(3, 2), -1: F(-2), -2: F(-2)}), gsq)),
    (hyp_min, ">=3 (p=3)", "loops", "", "fixed/any", "0", "exact", ZERO),
]

w = csv.writer(sys.stdout, lineterminator="\n")
w.writerow(["row", "stratum", "multiplicity", "loops", "zero_orders", "fixed_any", "formula",
            "coefficient", "g_power", "value", "error_class"])
for i, (stratum, mult, loops, orders, fa, formula, err, (coef, (stext, sval))) in enumerate(rows, 1):
    w.writerow([i, stratum, mult, loops, orders, fa, formula, str(coef), stext, str(coef * sval), err])
