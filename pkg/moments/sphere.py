from fractions import Fraction
from functools import reduce

from combinat.pairings import double_factorial
from common.exceptions import ArgumentError
from invariants.polynomials import NPolynomial, linear


def p_poly(k: int) -> NPolynomial:
    """P(n, k) = n (n + 2) ... (n + 2k - 2), expanded."""
    if k < 1:
        raise ArgumentError(f"k must be a positive integer, got {k}")
    return reduce(lambda acc, t: acc * linear(2 * t), range(k), NPolynomial.constant(1))


def mu(k: int, n: int) -> Fraction:
    """E(<x, y>^2k) for independent uniform unit vectors in R^n."""
    if n < 1:
        raise ArgumentError(f"dimension must be positive, got n={n}")
    return Fraction(double_factorial(k), p_poly(k)(n))
