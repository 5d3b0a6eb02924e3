from typing import Dict, Iterator, Mapping, Tuple

from common.exceptions import ArgumentError


class NPolynomial:
    """A polynomial in the dimension symbol n with integer coefficients.

    Stored as ``{degree: coefficient}`` without zero coefficients; instances
    are immutable and hashable.
    """

    __slots__ = ("_coefficients",)

    def __init__(self, coefficients: Mapping[int, int] = None):
        cleaned: Dict[int, int] = {}
        for degree, coefficient in (coefficients or {}).items():
            if int(degree) < 0:
                raise ArgumentError(f"negative degree {degree} in a polynomial in n")
            if coefficient:
                cleaned[int(degree)] = cleaned.get(int(degree), 0) + int(coefficient)
        self._coefficients = {d: c for d, c in sorted(cleaned.items()) if c}

    @classmethod
    def monomial(cls, degree: int, coefficient: int = 1) -> "NPolynomial":
        return cls({degree: coefficient})

    @classmethod
    def constant(cls, value: int) -> "NPolynomial":
        return cls({0: value})

    @property
    def coefficients(self) -> Dict[int, int]:
        return dict(self._coefficients)

    @property
    def degree(self) -> int:
        return max(self._coefficients, default=0)

    def terms(self) -> Iterator[Tuple[int, int]]:
        """(degree, coefficient) pairs, highest degree first."""
        return iter(sorted(self._coefficients.items(), reverse=True))

    def is_monomial(self) -> bool:
        return len(self._coefficients) == 1 and next(iter(self._coefficients.values())) == 1

    def exponent(self) -> int:
        if not self.is_monomial():
            raise ArgumentError(f"{self} is not a pure power of n")
        return next(iter(self._coefficients))

    def __call__(self, n: int) -> int:
        return sum(c * n**d for d, c in self._coefficients.items())

    def __add__(self, other: "NPolynomial") -> "NPolynomial":
        total = dict(self._coefficients)
        for d, c in other._coefficients.items():
            total[d] = total.get(d, 0) + c
        return NPolynomial(total)

    def __mul__(self, other: "NPolynomial") -> "NPolynomial":
        product: Dict[int, int] = {}
        for d1, c1 in self._coefficients.items():
            for d2, c2 in other._coefficients.items():
                product[d1 + d2] = product.get(d1 + d2, 0) + c1 * c2
        return NPolynomial(product)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NPolynomial):
            return NotImplemented
        return self._coefficients == other._coefficients

    def __hash__(self) -> int:
        return hash(tuple(self._coefficients.items()))

    def __repr__(self) -> str:
        return f"NPolynomial({self._coefficients!r})"

    def __str__(self) -> str:
        if not self._coefficients:
            return "0"
        parts = []
        for d, c in self.terms():
            body = str(abs(c)) if d == 0 else (f"n^{d}" if abs(c) == 1 else f"{abs(c)}*n^{d}")
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def linear(shift: int) -> NPolynomial:
    """n + shift."""
    return NPolynomial({1: 1, 0: shift})
