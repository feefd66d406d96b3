"""Twisted boundary matrices, the torsion polynomial and its invariants.

The map Phi sends a group-ring element sum c_i w_i to
sum c_i t^{alpha(w_i)} Ad(rho(w_i)), a 3x3 matrix of Laurent polynomials.
Dropping one generator from the Jacobian of Fox derivatives gives a square
block matrix whose determinant is the torsion polynomial; its ratio with
det Phi(x_j - 1) is the twisted Alexander invariant (a rational function up
to +-t^m), and the torsion number is recovered either from the second
derivative of the numerator at t = 1 or from the limit of the invariant
divided by (t - 1).  Both routes are kept so they can cross-check each other
at runtime.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .foxcalc import GroupRingElt, fox_derivative
from .intlaurent import IntLaurent
from .laurent import (
    DEFAULT_CLEANUP,
    LaurentMatrix,
    LaurentPoly,
    RationalFunction,
    divide_out_simple_roots,
)
from .presentation import Presentation, PresentationError
from .reps import AdjointImage, Rep, adjoint_images
from .words import Word


@dataclass(frozen=True)
class Tolerances:
    """Default numerical thresholds for the torsion pipeline."""

    relation: float = 1e-9       # relator residuals, boundary-trace floor
    consistency: float = 1e-6    # formula-vs-limit relative agreement
    cleanup: float = 1e-12       # Laurent coefficient cleanup
    multiplicity: float = 1e-5   # near-double-root flag distance in u
    fd_step: float = 1e-4        # finite-difference step in theta
    simple_zero: float = 1e-9    # synthetic-division remainders, relative
    regular_floor: float = 1e-6  # |(Delta/(t-1)^2)(1)| must exceed this * scale


DEFAULT_TOLERANCES = Tolerances()


class RegularityError(ArithmeticError):
    """The representation fails a hypothesis the torsion value needs."""


def phi_of(
    elt: GroupRingElt,
    rep: Rep,
    adj: AdjointImage | None = None,
    cleanup: float = DEFAULT_CLEANUP,
) -> LaurentMatrix:
    """3x3 Laurent matrix sum_i c_i t^{alpha(w_i)} Ad(rho(w_i))."""
    if adj is None:
        adj = adjoint_images(rep)
    p = rep.presentation
    per_exponent: dict[int, np.ndarray] = {}
    for coeff, w in elt.terms:
        e = p.alpha_of(w)
        m = adj.of_word(w)
        if e in per_exponent:
            per_exponent[e] = per_exponent[e] + coeff * m
        else:
            per_exponent[e] = coeff * m
    entries = [
        [
            LaurentPoly.from_dict(
                {e: mat[a, b] for e, mat in per_exponent.items()}, cleanup=cleanup
            )
            for b in range(3)
        ]
        for a in range(3)
    ]
    return LaurentMatrix(entries)


def _generator_minus_one(j: int) -> GroupRingElt:
    return GroupRingElt([(1, Word.gen(j)), (-1, Word())])


def boundary_factor(
    rep: Rep,
    j: int | None = None,
    adj: AdjointImage | None = None,
    cleanup: float = DEFAULT_CLEANUP,
) -> LaurentPoly:
    """det Phi(x_j - 1); for a meridian this is (t-1)(t^2 - Tr(rho(x_j^2)) t + 1)."""
    p = rep.presentation
    if j is None:
        j = p.meridian
    m = phi_of(_generator_minus_one(j), rep, adj=adj, cleanup=cleanup)
    return m.determinant(cleanup=cleanup)


def alexander_block_matrix(
    rep: Rep,
    drop: int | None = None,
    adj: AdjointImage | None = None,
    cleanup: float = DEFAULT_CLEANUP,
) -> LaurentMatrix:
    """Square block matrix of the twisted second boundary map over
    generators i != drop.

    Blocks are laid out rows-by-generators, columns-by-relators.  The
    coefficient module is a right module (a group element gamma acts through
    Ad(rho(gamma))^-1), so the block at (i, l) carries the transpose of
    Phi(dr_l/dx_i); the two differ by conjugation with the trace-form Gram
    matrix, which cancels in the determinant.  With transposed blocks the
    whole matrix is the full transpose of the relators-by-generators
    arrangement, making det independent of the dropped generator up to sign
    (a single block, hence no difference, in the two-generator case).
    """
    p = rep.presentation
    k = p.k
    if len(p.relators) != k - 1:
        raise PresentationError("torsion needs a deficiency-one presentation")
    if drop is None:
        drop = p.meridian
    if not (0 <= drop < k):
        raise IndexError(f"invalid drop index {drop}")
    if adj is None:
        adj = adjoint_images(rep)
    rows = [i for i in range(k) if i != drop]
    n = 3 * (k - 1)
    zero = LaurentPoly.zero()
    entries = [[zero] * n for _ in range(n)]
    for ri, i in enumerate(rows):
        for li, r in enumerate(p.relators):
            block = phi_of(fox_derivative(r, i), rep, adj=adj, cleanup=cleanup)
            for a in range(3):
                for b in range(3):
                    entries[3 * ri + a][3 * li + b] = block.entry(b, a)
    return LaurentMatrix(entries)


def homology_torsion(
    rep: Rep,
    drop: int | None = None,
    adj: AdjointImage | None = None,
    cleanup: float = DEFAULT_CLEANUP,
) -> LaurentPoly:
    """Torsion polynomial: determinant of the dropped-generator block matrix,
    normalized to lowest exponent 0 (the +-t^m unit is immaterial)."""
    a = alexander_block_matrix(rep, drop=drop, adj=adj, cleanup=cleanup)
    return a.determinant(cleanup=cleanup).with_offset_zero()


def twisted_alexander_invariant(
    rep: Rep,
    drop: int | None = None,
    adj: AdjointImage | None = None,
    cleanup: float = DEFAULT_CLEANUP,
) -> RationalFunction:
    """det(block matrix) / det Phi(x_drop - 1) with sign convention +1."""
    p = rep.presentation
    if drop is None:
        drop = p.meridian
    if adj is None:
        adj = adjoint_images(rep)
    num = homology_torsion(rep, drop=drop, adj=adj, cleanup=cleanup)
    den = boundary_factor(rep, j=drop, adj=adj, cleanup=cleanup)
    return RationalFunction(num, den)


def _drop_or_meridian(rep: Rep, drop: int | None) -> int:
    j = rep.presentation.meridian if drop is None else drop
    if rep.presentation.alpha[j] != 1:
        raise RegularityError(
            "dropped generator must be a meridian (abelianization exponent 1)"
        )
    return j


def _boundary_trace(rep: Rep, j: int) -> complex:
    m = rep.images[j]
    return complex(np.trace(m @ m))


def _check_boundary_trace(rep: Rep, j: int, tol: Tolerances) -> complex:
    tr = _boundary_trace(rep, j)
    if abs(tr - 2.0) <= tol.relation:
        raise RegularityError("parabolic/degenerate boundary trace: Tr(rho(x1^2)) = 2")
    return tr


def _drop_parity(rep: Rep, j: int) -> float:
    # swapping the dropped generator moves an odd number (3) of columns
    # through the block matrix, so the determinant ratio alternates sign;
    # normalizing to the meridian drop makes the value drop-independent
    return -1.0 if (j - rep.presentation.meridian) % 2 else 1.0


def torsion_via_formula(
    rep: Rep, tol: Tolerances = DEFAULT_TOLERANCES, drop: int | None = None
) -> complex:
    """Torsion from the second derivative of the torsion polynomial at 1:
    (Delta''(1)/2) / (Tr(rho(x1^2)) - 2), dropping the meridian by default."""
    j = _drop_or_meridian(rep, drop)
    tr = _check_boundary_trace(rep, j, tol)
    delta = homology_torsion(rep, drop=j, cleanup=tol.cleanup)
    half_second = delta.derivative(2).evaluate(1.0) / 2.0
    return _drop_parity(rep, j) * half_second / (tr - 2.0)


def torsion_via_limit(
    rep: Rep, tol: Tolerances = DEFAULT_TOLERANCES, drop: int | None = None
) -> complex:
    """Torsion as minus the limit of the twisted Alexander invariant over
    (t - 1) at t = 1, via exact double synthetic division of the numerator.

    Raises RegularityError when the division remainders show the invariant
    does not have a (simple) zero at t = 1.
    """
    j = _drop_or_meridian(rep, drop)
    tr = _check_boundary_trace(rep, j, tol)
    delta = homology_torsion(rep, drop=j, cleanup=tol.cleanup)
    scale = delta.max_abs
    if scale == 0.0:
        raise RegularityError("torsion polynomial is identically zero")
    quotient, remainders = divide_out_simple_roots(delta, 1.0, 2)
    if max(remainders) > tol.simple_zero * scale:
        raise RegularityError("not a simple zero: rho may not be lambda-regular")
    return _drop_parity(rep, j) * quotient.evaluate(1.0) / (tr - 2.0)


def naive_limit(
    rep: Rep,
    step: float = 1e-5,
    tol: Tolerances = DEFAULT_TOLERANCES,
    drop: int | None = None,
) -> complex:
    """First-order numeric version of the limit, for diagnostics only."""
    tai = twisted_alexander_invariant(rep, drop=drop, cleanup=tol.cleanup)
    return -tai.evaluate(1.0 + step) / step


def regularity_diagnostics(
    rep: Rep,
    drop: int | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> dict:
    """Numerical proxies for the hypotheses behind the torsion value.

    A simple zero of the invariant at t = 1 plus irreducibility plus a
    non-parabolic boundary trace is only a proxy for lambda-regularity, and
    is labeled as such.
    """
    j = _drop_or_meridian(rep, drop)
    delta = homology_torsion(rep, drop=j, cleanup=tol.cleanup)
    scale = delta.max_abs
    d_at_1 = abs(delta.evaluate(1.0))
    dprime_at_1 = abs(delta.derivative(1).evaluate(1.0))
    quotient, remainders = divide_out_simple_roots(delta, 1.0, 2)
    reduced_at_1 = abs(quotient.evaluate(1.0))
    divides = scale > 0.0 and max(remainders) <= tol.simple_zero * scale
    simple_zero = divides and reduced_at_1 > tol.regular_floor * scale
    tr = _boundary_trace(rep, j)
    denominator_ok = abs(tr - 2.0) > tol.relation
    return {
        "scale": scale,
        "delta1_at_1": d_at_1,
        "delta1_prime_at_1": dprime_at_1,
        "reduced_at_1": reduced_at_1,
        "division_remainders": list(remainders),
        "simple_zero": simple_zero,
        "trace_x1_sq": tr,
        "denominator_ok": denominator_ok,
        "irreducible": rep.irreducible,
        "lambda_regular_proxy": simple_zero and denominator_ok and rep.irreducible,
    }


@dataclass(frozen=True)
class TorsionResult:
    """Torsion value (sign convention +1) plus both routes and diagnostics."""

    value: complex
    formula_value: complex | None
    limit_value: complex | None
    diagnostics: dict

    def to_json(self) -> dict:
        def enc(z):
            if z is None:
                return None
            if isinstance(z, complex):
                return [z.real, z.imag]
            return z

        return {
            "value": enc(self.value),
            "formula_value": enc(self.formula_value),
            "limit_value": enc(self.limit_value),
            "diagnostics": {k: enc(v) for k, v in self.diagnostics.items()},
        }


def compute_torsion(
    rep: Rep,
    tol: Tolerances = DEFAULT_TOLERANCES,
    drop: int | None = None,
) -> TorsionResult:
    """Run both torsion routes with diagnostics; never raises on regularity
    failures (the diagnostics record them), only on structural errors.

    The limit route is the preferred value; the formula route cross-checks
    it whenever both are available.
    """
    diagnostics = regularity_diagnostics(rep, drop=drop, tol=tol)

    formula_value: complex | None
    limit_value: complex | None
    try:
        formula_value = torsion_via_formula(rep, tol, drop=drop)
    except RegularityError:
        formula_value = None
    try:
        limit_value = torsion_via_limit(rep, tol, drop=drop)
    except RegularityError:
        limit_value = None

    step = 1e-5
    try:
        naive = naive_limit(rep, step=step, tol=tol, drop=drop)
        tai_near_1 = abs(naive) * step
    except (RegularityError, ZeroDivisionError):
        naive = None
        tai_near_1 = float("nan")

    if limit_value is not None:
        value = limit_value
    elif formula_value is not None:
        value = formula_value
    else:
        value = complex(float("nan"), 0.0)

    consistency_ok = None
    if formula_value is not None and limit_value is not None:
        err = abs(formula_value - limit_value)
        consistency_ok = err <= tol.consistency * max(1.0, abs(limit_value))

    diagnostics = dict(diagnostics)
    diagnostics["tai_at_1"] = tai_near_1
    diagnostics["naive_limit"] = naive
    diagnostics["consistency_ok"] = consistency_ok
    return TorsionResult(
        value=value,
        formula_value=formula_value,
        limit_value=limit_value,
        diagnostics=diagnostics,
    )


# ---------------------------------------------------------------------------
# classical (untwisted) oracle
# ---------------------------------------------------------------------------


def _abelianized(elt: GroupRingElt, p: Presentation) -> IntLaurent:
    acc = IntLaurent.zero()
    for c, w in elt.terms:
        acc = acc + IntLaurent.term(c, p.alpha_of(w))
    return acc


def _int_det(rows: tuple[tuple[IntLaurent, ...], ...]) -> IntLaurent:
    n = len(rows)
    if n == 0:
        return IntLaurent.one()
    if n == 1:
        return rows[0][0]
    acc = IntLaurent.zero()
    rest = rows[1:]
    for j, top in enumerate(rows[0]):
        if top.is_zero:
            continue
        minor = tuple(tuple(r[c] for c in range(n) if c != j) for r in rest)
        term = top * _int_det(minor)
        acc = acc + (term if j % 2 == 0 else -term)
    return acc


def untwisted_alexander(p: Presentation, drop: int | None = None) -> IntLaurent:
    """Classical Alexander polynomial from the abelianized Fox matrix,
    exact and unit-normalized (lowest exponent 0, positive lowest term)."""
    k = p.k
    if len(p.relators) != k - 1:
        raise PresentationError("Alexander polynomial needs a deficiency-one presentation")
    if drop is None:
        drop = p.meridian
    rows = [i for i in range(k) if i != drop]
    matrix = tuple(
        tuple(_abelianized(fox_derivative(r, i), p) for r in p.relators) for i in rows
    )
    return _int_det(matrix).unit_normalized()


def alexander_at_minus_one(p: Presentation) -> int:
    """Exact determinant |Delta(-1)| of the knot."""
    delta = untwisted_alexander(p)
    value = delta(-1)
    return abs(int(round(value.real if isinstance(value, complex) else value)))


def dihedral_class_count(p: Presentation) -> int:
    """(|Delta(-1)| - 1) / 2, the number of binary dihedral conjugacy classes."""
    return (alexander_at_minus_one(p) - 1) // 2
