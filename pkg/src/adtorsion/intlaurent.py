"""Exact one-variable Laurent polynomials with arbitrary-precision integer
coefficients.

Substrate for the two-bridge representation polynomial (exact in s) and the
classical Alexander polynomial oracle (exact in t); everything numerical
lives in :mod:`adtorsion.laurent` instead.
"""

from __future__ import annotations

from typing import Iterable


class IntLaurent:
    """``sum_i coeffs[i] * var^(offset + i)`` with trimmed integer coeffs."""

    __slots__ = ("offset", "coeffs")

    def __init__(self, offset: int = 0, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        lo = 0
        while lo < len(cs) and cs[lo] == 0:
            lo += 1
        hi = len(cs)
        while hi > lo and cs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            self.offset = 0
            self.coeffs: tuple[int, ...] = ()
        else:
            self.offset = offset + lo
            self.coeffs = tuple(cs[lo:hi])

    @classmethod
    def zero(cls) -> "IntLaurent":
        return cls()

    @classmethod
    def one(cls) -> "IntLaurent":
        return cls(0, (1,))

    @classmethod
    def term(cls, coeff: int, exponent: int = 0) -> "IntLaurent":
        return cls(exponent, (coeff,))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lo(self) -> int:
        """Lowest exponent with nonzero coefficient (0 for the zero poly)."""
        return self.offset

    @property
    def hi(self) -> int:
        """Highest exponent with nonzero coefficient (0 for the zero poly)."""
        return self.offset + len(self.coeffs) - 1 if self.coeffs else 0

    def coefficient(self, exponent: int) -> int:
        i = exponent - self.offset
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def shift(self, k: int) -> "IntLaurent":
        """Multiply by ``var^k``."""
        if self.is_zero:
            return self
        return IntLaurent(self.offset + k, self.coeffs)

    def __add__(self, other: "IntLaurent") -> "IntLaurent":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        lo = min(self.offset, other.offset)
        hi = max(self.hi, other.hi)
        out = [0] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[self.offset - lo + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.offset - lo + i] += c
        return IntLaurent(lo, out)

    def __neg__(self) -> "IntLaurent":
        return IntLaurent(self.offset, [-c for c in self.coeffs])

    def __sub__(self, other: "IntLaurent") -> "IntLaurent":
        return self + (-other)

    def __mul__(self, other: "IntLaurent") -> "IntLaurent":
        if self.is_zero or other.is_zero:
            return IntLaurent.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntLaurent(self.offset + other.offset, out)

    def scale(self, c: int) -> "IntLaurent":
        if c == 0:
            return IntLaurent.zero()
        return IntLaurent(self.offset, [c * a for a in self.coeffs])

    def __call__(self, z: complex) -> complex:
        """Horner evaluation; exact when ``z`` is an integer and lo >= 0."""
        if self.is_zero:
            return 0 * z
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        if self.offset == 0:
            return acc
        return acc * z**self.offset

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, IntLaurent)
            and self.offset == other.offset
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.offset, self.coeffs))

    def __repr__(self) -> str:
        return f"IntLaurent({self.offset}, {self.coeffs!r})"

    def to_str(self, var: str = "s") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            e = self.offset + i
            if e == 0:
                body = str(abs(c))
            else:
                power = var if e == 1 else f"{var}^{e}"
                body = power if abs(c) == 1 else f"{abs(c)}*{power}"
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def unit_normalized(self) -> "IntLaurent":
        """Canonical representative up to ``±var^k``: lo = 0, lowest coeff > 0."""
        if self.is_zero:
            return self
        shifted = IntLaurent(0, self.coeffs)
        if shifted.coeffs[0] < 0:
            shifted = -shifted
        return shifted

    def equal_up_to_unit(self, other: "IntLaurent") -> bool:
        return self.unit_normalized() == other.unit_normalized()

    def is_palindromic(self) -> bool:
        """Coefficient sequence reads the same in both directions."""
        return self.coeffs == tuple(reversed(self.coeffs))
