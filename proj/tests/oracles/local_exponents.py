"""Local exponents of the order-4 operator and of the reduced order-3 factor."""
from sympy import I, Integer, Poly, cancel, limit, oo, roots, symbols, sqrt

from common import VARIANT, x

rho, t = symbols("rho t")


def indicial(coeffs, pt):
    n = len(coeffs) - 1
    expr = 0
    for k, a in enumerate(coeffs):
        ff = 1
        for j in range(k):
            ff *= rho - j
        expr += cancel(a).subs(x, pt + t) * ff * t ** (n - k)
    return Poly(cancel(limit(cancel(expr), t, 0)), rho)


def indicial_inf(coeffs):
    n = len(coeffs) - 1
    expr = 0
    for k, a in enumerate(coeffs):
        ff = 1
        for j in range(k):
            ff *= -rho - j
        expr += a * ff * x ** (n - k)
    return Poly(limit(cancel(expr), x, oo), rho)


def main():
    at0 = roots(indicial(VARIANT, 0))
    ati = roots(indicial(VARIANT, I))
    print("x1 = 0:", at0)
    print("x1 = i:", ati)
    # Full degree: both points are regular singular.
    assert sum(at0.values()) == 4 and sum(ati.values()) == 4
    assert set(at0) == {-1, Integer(-1) / 2, Integer(1) / 2, 1}
    assert set(ati) == {0, 1, Integer(1) / 2 - I * sqrt(3) / 2, Integer(1) / 2 + I * sqrt(3) / 2}
    ainf = indicial_inf(VARIANT)
    print("infinity:", roots(ainf))
    assert ainf.degree() == 4


if __name__ == "__main__":
    main()
