"""Slow, dependency-free reference evaluations used to cross-check the
fast special-function engine.

Everything here is computed by direct series summation in exact rational
arithmetic (fractions.Fraction), with logarithms and constants taken at
50 significant digits through the decimal module.  These routines share
no code path with analytic.py: they exist so validation can compare two
independent routes.
"""

from __future__ import annotations

from decimal import Decimal, getcontext
from fractions import Fraction

_DIGITS = 50
# 50-digit constants
_PI = Decimal("3.1415926535897932384626433832795028841971693993751")
_GAMMA = Decimal("0.57721566490153286060651209008240243104215933593992")


def _fraction_to_decimal(q: Fraction) -> Decimal:
    getcontext().prec = _DIGITS
    return Decimal(q.numerator) / Decimal(q.denominator)


def series_bessel_j(m: int, x: float) -> float:
    """J_m(x) by exact-rational ascending series summation."""
    if m < 0 or x < 0:
        raise ValueError("need m >= 0 and x >= 0")
    if x == 0.0:
        return 1.0 if m == 0 else 0.0
    q = Fraction(x) / 2
    q2 = q * q
    # term_0 = q^m / m!
    term = q ** m
    for i in range(2, m + 1):
        term /= i
    total = term
    k = 0
    while True:
        k += 1
        term = -term * q2 / (k * (m + k))
        total += term
        if k > float(q) and abs(float(term)) < 1e-35:
            break
    return float(total)


def series_bessel_y(n: int, x: float) -> float:
    """Y_n(x) by the ascending log series (exact rationals + 50-digit
    decimals for the logarithm and constants)."""
    if n < 0 or x <= 0.0:
        raise ValueError("need n >= 0 and x > 0")
    q = Fraction(x) / 2
    q2 = q * q

    # Finite singular part: sum_{k=0}^{n-1} (n-k-1)!/k! * q^(2k-n)
    singular = Fraction(0)
    if n > 0:
        fact_nk = 1
        for i in range(1, n):
            fact_nk *= i  # (n-1)!
        kfact = 1
        power = q ** (-n)
        for k in range(n):
            singular += Fraction(fact_nk, kfact) * power
            if k < n - 1:
                fact_nk //= (n - k - 1)
                kfact *= (k + 1)
                power *= q2

    # Regular part: sum_k (-1)^k (H_k + H_{n+k}) q^(2k+n) / (k! (n+k)!)
    term = q ** n
    for i in range(2, n + 1):
        term /= i
    h_k = Fraction(0)
    h_nk = Fraction(0)
    for i in range(1, n + 1):
        h_nk += Fraction(1, i)
    regular = term * (h_k + h_nk)
    jn_sum = term
    k = 0
    while True:
        k += 1
        term = -term * q2 / (k * (n + k))
        h_k += Fraction(1, k)
        h_nk += Fraction(1, n + k)
        regular += term * (h_k + h_nk)
        jn_sum += term
        if k > float(q) and abs(float(term)) * (k + n + 2) < 1e-35:
            break

    getcontext().prec = _DIGITS
    ln_q = _fraction_to_decimal(q).ln()
    jn = _fraction_to_decimal(jn_sum)
    val = (2 / _PI) * (ln_q + _GAMMA) * jn \
        - _fraction_to_decimal(singular) / _PI \
        - _fraction_to_decimal(regular) / _PI
    return float(val)
