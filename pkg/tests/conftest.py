import random
import sys
from fractions import Fraction

import pytest
import sympy

from schottky.exactalg import Poly, RatFn, T
from schottky.matqt import MatK

tsym = sympy.Symbol("t")


def rand_poly(rng, max_deg=3, lo=-4, hi=4):
    deg = rng.randint(0, max_deg)
    return Poly([Fraction(rng.randint(lo, hi), rng.choice([1, 1, 2, 3])) for _ in range(deg + 1)])


def rand_ratfn(rng, max_deg=3, allow_zero=True):
    while True:
        num = rand_poly(rng, max_deg)
        den = rand_poly(rng, max_deg)
        if not den:
            continue
        if not num and not allow_zero:
            continue
        return RatFn(num, den)


def rand_matrix(rng, n=3, max_deg=2, invertible=True):
    while True:
        m = MatK([[rand_ratfn(rng, max_deg) for _ in range(n)] for _ in range(n)])
        if not invertible or m.det():
            return m


def rand_unit_matrix(rng, n=3):
    """Random element of GL_n(O): integral entries with a nonzero residue determinant."""
    from schottky.matqt import rational_det, residue_matrix

    while True:
        rows = []
        for _ in range(n):
            row = []
            for _ in range(n):
                x = rand_ratfn(rng, 2)
                # force val >= 0 by dividing by a large enough power of t
                if x and x.num.deg() > x.den.deg():
                    x = x * T ** (x.den.deg() - x.num.deg())
                row.append(x)
            rows.append(row)
        m = MatK(rows)
        if rational_det(residue_matrix(m)) != 0:
            return m


def to_sympy(x: RatFn):
    num = sum(sympy.Rational(c.numerator, c.denominator) * tsym ** i for i, c in enumerate(x.num.coeffs))
    den = sum(sympy.Rational(c.numerator, c.denominator) * tsym ** i for i, c in enumerate(x.den.coeffs))
    return num / den


def sympy_equal(x: RatFn, expr) -> bool:
    return sympy.simplify(to_sympy(x) - expr) == 0


@pytest.fixture
def rng():
    return random.Random(20240601)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda r: int(r.split()[0][2:])):
        terminalreporter.write_line(line)
