"""One-variable Laurent polynomials over C, matrices of them, determinants.

Coefficients are double-precision complex.  Every constructor applies a
relative cleanup: coefficients of modulus <= threshold * max-modulus are
zeroed and the support is trimmed, so a nonzero polynomial always has
nonzero first and last coefficients.  Exact integer work lives in
:mod:`adtorsion.intlaurent`.
"""

from __future__ import annotations

import cmath
from typing import Iterable, Mapping, Sequence

import numpy as np

DEFAULT_CLEANUP = 1e-12

#: cofactor expansion up to this size, evaluation-interpolation beyond
_COFACTOR_MAX = 6


class LaurentPoly:
    """``sum_i coeffs[i] * t^(offset + i)`` with complex coefficients."""

    __slots__ = ("offset", "coeffs")

    def __init__(
        self,
        offset: int = 0,
        coeffs: Iterable[complex] = (),
        cleanup: float = DEFAULT_CLEANUP,
    ):
        cs = [complex(c) for c in coeffs]
        if cs:
            top = max(abs(c) for c in cs)
            if top > 0.0 and cleanup > 0.0:
                bound = cleanup * top
                cs = [0j if abs(c) <= bound else c for c in cs]
        lo = 0
        while lo < len(cs) and cs[lo] == 0:
            lo += 1
        hi = len(cs)
        while hi > lo and cs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            self.offset = 0
            self.coeffs: tuple[complex, ...] = ()
        else:
            self.offset = offset + lo
            self.coeffs = tuple(cs[lo:hi])

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls(0, (1.0,))

    @classmethod
    def term(cls, coeff: complex, exponent: int = 0) -> "LaurentPoly":
        return cls(exponent, (coeff,))

    @classmethod
    def variable(cls) -> "LaurentPoly":
        return cls(1, (1.0,))

    @classmethod
    def from_dict(cls, d: Mapping[int, complex], cleanup: float = DEFAULT_CLEANUP) -> "LaurentPoly":
        if not d:
            return cls.zero()
        lo = min(d)
        hi = max(d)
        cs = [0j] * (hi - lo + 1)
        for e, c in d.items():
            cs[e - lo] = complex(c)
        return cls(lo, cs, cleanup=cleanup)

    # -- structure ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lo(self) -> int:
        return self.offset

    @property
    def hi(self) -> int:
        return self.offset + len(self.coeffs) - 1 if self.coeffs else 0

    @property
    def span(self) -> int:
        """Degree span hi - lo (0 for the zero polynomial)."""
        return len(self.coeffs) - 1 if self.coeffs else 0

    @property
    def max_abs(self) -> float:
        return max((abs(c) for c in self.coeffs), default=0.0)

    def coefficient(self, exponent: int) -> complex:
        i = exponent - self.offset
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0j

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``t^k``."""
        if self.is_zero:
            return self
        return LaurentPoly(self.offset + k, self.coeffs, cleanup=0.0)

    def with_offset_zero(self) -> "LaurentPoly":
        """Drop the monomial unit: same coefficients, lowest exponent 0."""
        return self.shift(-self.offset)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        lo = min(self.offset, other.offset)
        hi = max(self.hi, other.hi)
        out = [0j] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[self.offset - lo + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.offset - lo + i] += c
        return LaurentPoly(lo, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.offset, [-c for c in self.coeffs], cleanup=0.0)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.is_zero or other.is_zero:
            return LaurentPoly.zero()
        out = [0j] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return LaurentPoly(self.offset + other.offset, out)

    def scale(self, c: complex) -> "LaurentPoly":
        return LaurentPoly(self.offset, [c * a for a in self.coeffs])

    # -- analysis -----------------------------------------------------

    def evaluate(self, z: complex) -> complex:
        """Horner evaluation of ``t^offset * sum c_i z^i``."""
        if self.is_zero:
            return 0j
        if z == 0 and self.offset < 0:
            raise ValueError("evaluation at 0 with negative offset")
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        if self.offset == 0:
            return acc
        return acc * z**self.offset

    def derivative(self, order: int = 1) -> "LaurentPoly":
        """Formal derivative, respecting negative exponents."""
        if order < 0:
            raise ValueError("derivative order must be >= 0")
        p = self
        for _ in range(order):
            d: dict[int, complex] = {}
            for i, c in enumerate(p.coeffs):
                e = p.offset + i
                if e != 0 and c != 0:
                    d[e - 1] = c * e
            p = LaurentPoly.from_dict(d, cleanup=0.0)
        return p

    def divide_once(self, root: complex) -> tuple["LaurentPoly", complex]:
        """Synthetic division by ``(t - root)``; returns (quotient, remainder).

        The monomial unit ``t^offset`` carries over to the quotient, so the
        division is performed on the plain-polynomial part.
        """
        if self.is_zero:
            return LaurentPoly.zero(), 0j
        quotient = [0j] * (len(self.coeffs) - 1)
        acc = 0j
        for i in range(len(self.coeffs) - 1, 0, -1):
            acc = self.coeffs[i] + acc * root
            quotient[i - 1] = acc
        remainder = self.coeffs[0] + acc * root
        return LaurentPoly(self.offset, quotient, cleanup=0.0), remainder

    # -- misc ---------------------------------------------------------

    def approx_eq(self, other: "LaurentPoly", tol: float) -> bool:
        """Coefficientwise comparison, tolerance relative to the larger scale."""
        scale = max(self.max_abs, other.max_abs, 1.0)
        lo = min(self.offset, other.offset) if (self.coeffs or other.coeffs) else 0
        hi = max(self.hi, other.hi)
        for e in range(lo, hi + 1):
            if abs(self.coefficient(e) - other.coefficient(e)) > tol * scale:
                return False
        return True

    def to_json(self) -> dict:
        return {
            "offset": self.offset,
            "coeffs": [[c.real, c.imag] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "LaurentPoly":
        return cls(int(data["offset"]), [complex(re, im) for re, im in data["coeffs"]], cleanup=0.0)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.offset == other.offset
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.offset, self.coeffs))

    def __repr__(self) -> str:
        if self.is_zero:
            return "LaurentPoly(0)"
        parts = [f"({c:.6g})*t^{self.offset + i}" for i, c in enumerate(self.coeffs) if c != 0]
        return "LaurentPoly(" + " + ".join(parts) + ")"


def unit_aligned_distance(p: LaurentPoly, q: LaurentPoly) -> float:
    """Relative coefficient distance between p and the best unit ±t^m · q.

    Aligning the lowest exponents is the only monomial shift that can match
    supports; both signs are tried.
    """
    if p.is_zero and q.is_zero:
        return 0.0
    if p.is_zero or q.is_zero:
        return float("inf")
    q = q.shift(p.lo - q.lo)
    scale = max(p.max_abs, q.max_abs)
    lo = min(p.lo, q.lo)
    hi = max(p.hi, q.hi)
    d_plus = max(abs(p.coefficient(e) - q.coefficient(e)) for e in range(lo, hi + 1))
    d_minus = max(abs(p.coefficient(e) + q.coefficient(e)) for e in range(lo, hi + 1))
    return min(d_plus, d_minus) / scale


def divide_out_simple_roots(
    p: LaurentPoly, root: complex, multiplicity: int
) -> tuple[LaurentPoly, list[float]]:
    """Synthetic-divide ``multiplicity`` times by ``(t - root)``.

    Returns the final quotient and the modulus of each round's remainder;
    the caller decides whether the remainders pass its tolerance.
    """
    if multiplicity < 1:
        raise ValueError("multiplicity must be >= 1")
    remainders: list[float] = []
    q = p
    for _ in range(multiplicity):
        q, rem = q.divide_once(root)
        remainders.append(abs(rem))
    return q, remainders


class LaurentMatrix:
    """Square matrix of Laurent polynomials."""

    __slots__ = ("entries", "size")

    def __init__(self, entries: Sequence[Sequence[LaurentPoly]]):
        n = len(entries)
        rows = []
        for row in entries:
            if len(row) != n:
                raise ValueError("matrix must be square")
            rows.append(tuple(row))
        self.entries: tuple[tuple[LaurentPoly, ...], ...] = tuple(rows)
        self.size = n

    @classmethod
    def identity(cls, n: int) -> "LaurentMatrix":
        one = LaurentPoly.one()
        zero = LaurentPoly.zero()
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def from_complex(cls, m: np.ndarray, t_exponent: int = 0) -> "LaurentMatrix":
        """Scalar matrix times ``t^e`` as a Laurent matrix."""
        n = m.shape[0]
        return cls(
            [[LaurentPoly.term(complex(m[i, j]), t_exponent) for j in range(n)] for i in range(n)]
        )

    def entry(self, i: int, j: int) -> LaurentPoly:
        return self.entries[i][j]

    def evaluate(self, z: complex) -> np.ndarray:
        out = np.empty((self.size, self.size), dtype=complex)
        for i in range(self.size):
            for j in range(self.size):
                out[i, j] = self.entries[i][j].evaluate(z)
        return out

    def with_swapped_rows(self, i: int, j: int) -> "LaurentMatrix":
        rows = list(self.entries)
        rows[i], rows[j] = rows[j], rows[i]
        return LaurentMatrix(rows)

    def determinant(self, cleanup: float = DEFAULT_CLEANUP) -> LaurentPoly:
        """Determinant; cofactor expansion for small sizes, otherwise
        evaluation at roots of unity + FFT interpolation with a certified
        degree bound (sum over rows of the row's maximal degree span)."""
        if self.size == 0:
            return LaurentPoly.one()
        if self.size <= _COFACTOR_MAX:
            det = _det_cofactor(self.entries)
            return LaurentPoly(det.offset, det.coeffs, cleanup=cleanup)
        return self._det_interpolation(cleanup)

    def _det_interpolation(self, cleanup: float) -> LaurentPoly:
        n = self.size
        row_offsets = []
        row_degrees = []
        for row in self.entries:
            los = [p.lo for p in row if not p.is_zero]
            if not los:
                return LaurentPoly.zero()
            o = min(los)
            row_offsets.append(o)
            row_degrees.append(max(p.hi - o for p in row if not p.is_zero))
        total_offset = sum(row_offsets)
        bound = sum(row_degrees)
        npts = bound + 1
        points = [cmath.exp(2j * cmath.pi * q / npts) for q in range(npts)]
        values = np.empty(npts, dtype=complex)
        for q, z in enumerate(points):
            m = np.empty((n, n), dtype=complex)
            for i in range(n):
                zo = z ** (-row_offsets[i])
                for j in range(n):
                    m[i, j] = self.entries[i][j].evaluate(z) * zo
            values[q] = np.linalg.det(m)
        coeffs = np.fft.fft(values) / npts
        return LaurentPoly(total_offset, [complex(c) for c in coeffs], cleanup=cleanup)

    def __repr__(self) -> str:
        return f"LaurentMatrix(size={self.size})"


def _det_cofactor(rows: tuple[tuple[LaurentPoly, ...], ...]) -> LaurentPoly:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = LaurentPoly.zero()
    rest = rows[1:]
    for j, top in enumerate(rows[0]):
        if top.is_zero:
            continue
        minor = tuple(tuple(r[c] for c in range(n) if c != j) for r in rest)
        term = top * _det_cofactor(minor)
        acc = acc + (term if j % 2 == 0 else -term)
    return acc


class RationalFunction:
    """Numerator/denominator pair, normalized only by a common monomial.

    No polynomial gcd is ever cancelled; both offsets are made >= 0 with at
    least one equal to 0.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: LaurentPoly, denominator: LaurentPoly):
        if denominator.is_zero:
            raise ZeroDivisionError("zero denominator")
        if numerator.is_zero:
            numerator = LaurentPoly.zero()
            denominator = denominator.with_offset_zero()
        else:
            m = min(numerator.offset, denominator.offset)
            numerator = numerator.shift(-m)
            denominator = denominator.shift(-m)
        self.numerator = numerator
        self.denominator = denominator

    def evaluate(self, z: complex) -> complex:
        return self.numerator.evaluate(z) / self.denominator.evaluate(z)

    def to_json(self) -> dict:
        return {"numerator": self.numerator.to_json(), "denominator": self.denominator.to_json()}

    def __repr__(self) -> str:
        return f"RationalFunction({self.numerator!r}, {self.denominator!r})"
