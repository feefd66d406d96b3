"""Built-in two-bridge knot presentations.

Only entries whose data is verified in the test suite ship here: each
catalog knot must validate, its obstruction polynomial's u^0 coefficient
must reproduce the classical Alexander polynomial up to units, and the
torsion pipeline must pass the cross-checks in `verify`.  Other knots enter
through presentation files.
"""

from __future__ import annotations

from .presentation import Presentation, two_bridge

_BRIDGE_WORDS = {
    "5_2": "x^-1 y^-1 x y x^-1 y^-1",
    "trefoil": "x y",
}

_ALIASES = {
    "3_1": "trefoil",
    "31": "trefoil",
    "52": "5_2",
}


def knot_names() -> tuple[str, ...]:
    return tuple(sorted(_BRIDGE_WORDS))


def knot(name: str) -> Presentation:
    key = _ALIASES.get(name, name)
    try:
        word_text = _BRIDGE_WORDS[key]
    except KeyError:
        raise KeyError(
            f"unknown knot {name!r}; catalog has {', '.join(knot_names())}"
        ) from None
    return two_bridge(word_text)
