"""Deficiency-one knot-group presentations with a designated meridian.

The abelianization map is stored explicitly as one integer exponent per
generator; for Wirtinger-style presentations every generator is a conjugate
meridian and all exponents are 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .words import Word, WordError, format_word, parse_word


class PresentationError(ValueError):
    """Structurally unusable presentation data."""


@dataclass(frozen=True)
class Violation:
    code: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    generators: int
    relators: int
    deficiency: int
    meridian: int
    alpha: tuple[int, ...]
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class Presentation:
    """``<x_1, ..., x_k | r_1, ..., r_{k-1}>`` plus meridian and abelianization data.

    ``bridge_word`` is set when the presentation was built from a two-bridge
    word w (relator w·x·w⁻¹·y⁻¹); representation-variety code needs it.
    """

    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    meridian: int = 0
    alpha: tuple[int, ...] = ()
    bridge_word: Word | None = None

    def __post_init__(self):
        if not self.generators:
            raise PresentationError("presentation needs at least one generator")
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError("duplicate generator names")
        if not self.alpha:
            object.__setattr__(self, "alpha", (1,) * len(self.generators))
        if len(self.alpha) != len(self.generators):
            raise PresentationError("alpha must give one exponent per generator")

    @property
    def k(self) -> int:
        return len(self.generators)

    def word(self, text: str) -> Word:
        return parse_word(text, self.generators)

    def format(self, w: Word) -> str:
        return format_word(w, self.generators)

    def alpha_of(self, w: Word) -> int:
        """Image exponent of a word under the abelianization (t-power)."""
        return sum(self.alpha[g] * e for g, e in w.letters)


def conjugation_relator(w: Word, x: Word, y: Word) -> Word:
    """Relator ``w x w^-1 y^-1``, freely reduced (the relation wx = yw)."""
    for single in (x, y):
        if len(single) != 1:
            raise PresentationError("x and y must be single-generator words")
    return w * x * w.inverse() * y.inverse()


def two_bridge(w: Word | str, names: Sequence[str] = ("x", "y")) -> Presentation:
    """Presentation ``<x, y | w x w^-1 y^-1>`` from a word in two generators."""
    names = tuple(names)
    if len(names) != 2:
        raise PresentationError("two-bridge presentations use exactly two generators")
    if isinstance(w, str):
        w = parse_word(w, names)
    if w.max_index() > 1:
        raise PresentationError("bridge word must use only the two generators")
    relator = conjugation_relator(w, Word.gen(0), Word.gen(1))
    return Presentation(names, (relator,), meridian=0, alpha=(1, 1), bridge_word=w)


def validate(p: Presentation) -> ValidationReport:
    """Report deficiency, alpha well-definedness and meridian designation.

    Never raises and never mutates; structural problems come back as a list
    of violations.
    """
    violations: list[Violation] = []
    k = p.k
    deficiency = k - len(p.relators)
    if len(p.relators) != k - 1:
        violations.append(
            Violation(
                "deficiency",
                f"knot mode needs {k - 1} relators for {k} generators, got {len(p.relators)}",
            )
        )
    if not (0 <= p.meridian < k):
        violations.append(Violation("meridian", f"meridian index {p.meridian} out of range"))
    for li, r in enumerate(p.relators):
        if r.max_index() >= k:
            violations.append(
                Violation("letters", f"relator {li} uses generator index {r.max_index()} >= {k}")
            )
            continue
        weight = p.alpha_of(r)
        if weight != 0:
            violations.append(
                Violation("alpha", f"alpha does not kill relator {li}: total weight {weight}")
            )
    return ValidationReport(
        generators=k,
        relators=len(p.relators),
        deficiency=deficiency,
        meridian=p.meridian,
        alpha=p.alpha,
        violations=tuple(violations),
    )


def loads_presentation(text: str) -> Presentation:
    """Parse the presentation file format.

    Lines: ``gens: x y``, ``rel: <word>``, optional ``meridian: x``,
    optional ``alpha: 1 1``; or a single inline ``twobridge w: <word>``
    which expands to ``<x, y | w x w^-1 y^-1>``.  ``#`` starts a comment.
    """
    gens: tuple[str, ...] | None = None
    rel_texts: list[str] = []
    meridian_name: str | None = None
    alpha: tuple[int, ...] | None = None
    bridge_text: str | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise PresentationError(f"line {lineno}: expected 'key: value', got {line!r}")
        key, value = (part.strip() for part in line.split(":", 1))
        if key == "gens":
            gens = tuple(value.split())
        elif key == "rel":
            rel_texts.append(value)
        elif key == "meridian":
            meridian_name = value
        elif key == "alpha":
            try:
                alpha = tuple(int(tok) for tok in value.split())
            except ValueError:
                raise PresentationError(f"line {lineno}: alpha entries must be integers") from None
        elif key == "twobridge w":
            bridge_text = value
        else:
            raise PresentationError(f"line {lineno}: unknown key {key!r}")

    if bridge_text is not None:
        if rel_texts:
            raise PresentationError("twobridge form does not take rel: lines")
        names = gens if gens is not None else ("x", "y")
        p = two_bridge(bridge_text, names)
        if meridian_name is not None and meridian_name != p.generators[0]:
            p = Presentation(
                p.generators, p.relators, meridian=_gen_index(p.generators, meridian_name),
                alpha=p.alpha, bridge_word=p.bridge_word,
            )
        return p

    if gens is None:
        raise PresentationError("missing gens: line")
    try:
        relators = tuple(parse_word(t, gens) for t in rel_texts)
    except WordError as exc:
        raise PresentationError(f"bad relator: {exc}") from exc
    meridian = 0 if meridian_name is None else _gen_index(gens, meridian_name)
    return Presentation(gens, relators, meridian=meridian, alpha=alpha or ())


def load_presentation_file(path: str) -> Presentation:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_presentation(fh.read())


def _gen_index(gens: Sequence[str], name: str) -> int:
    try:
        return list(gens).index(name)
    except ValueError:
        raise PresentationError(f"unknown generator {name!r}") from None
