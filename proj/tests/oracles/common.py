"""Shared sympy helpers: operators are coefficient lists [a0, ..., an] in x."""
from sympy import I, Rational, binomial, cancel, diff, sqrt, symbols

x = symbols("x")

# Order-4 operator in x1 with last denominator 4 (x - i)^3 x^4.
VARIANT = [
    (3 * x + I) / (4 * (x - I) ** 3 * x**4),
    -(I - 3 * x) * (7 * x + I) / (4 * (x - I) ** 2 * x**3),
    (-3 * x + I) * (-29 * x + 23 * I) / (4 * (x - I) ** 2 * x**2),
    2 * (3 * I - 5 * x) / (x * (I - x)),
    1,
]
# Same with (x - 1)^3 in the last denominator.
DISPLAYED = [(3 * x + I) / (4 * (x - 1) ** 3 * x**4)] + VARIANT[1:]

Y0 = (I - x) / sqrt(x)
TWIST_E = -Rational(3, 2) - I * sqrt(3) / 2


def apply(coeffs, y, var=x):
    return cancel(sum(c * diff(y, var, k) for k, c in enumerate(coeffs)))


def mul(a, b):
    """Composition a * b of operators in d/dx."""
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            for k in range(i + 1):
                out[j + i - k] += ai * binomial(i, k) * diff(bj, x, k)
    return [cancel(c) for c in out]


def twist(coeffs, r):
    """L(D + r)."""
    power = [1]
    out = [0] * len(coeffs)
    for a in coeffs:
        for j, c in enumerate(power):
            out[j] += a * c
        power = mul([r, 1], power)
    return [cancel(c) for c in out]


def hypergeometric_factor(op):
    """Order reduction by y0, twist, u = 1 + i x; returns monic coefficients in u."""
    u = symbols("u")
    r0 = cancel(diff(Y0, x) / Y0)
    lt = twist(op, r0)
    assert cancel(lt[0]) == 0, "y0 is not a solution"
    m = [cancel(c / lt[-1]) for c in lt[1:]]
    t = twist(m, 1 / (2 * x) + TWIST_E * I / (1 + I * x))
    t = [cancel(c / t[-1]) for c in t]
    # x = -i (u - 1), d/dx = i d/du
    tu = [cancel(t[k].subs(x, -I * (u - 1)) * I**k) for k in range(len(t))]
    return u, [cancel(c / tu[-1]) for c in tu]
