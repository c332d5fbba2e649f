"""Printed R-matrices, transcribed once as text with symbolic slots.

Cells are integers or parameter names (a1..a4, b1, b2, c1, c2, d1, d2);
``substitute`` replaces the names with caller-supplied rationals.
"""

from __future__ import annotations

from typing import Mapping

from .errors import InputError
from .linalg import Mat, scalar

MATRIX_4X4 = (
    "1 0 0 1",
    "0 0 1 0",
    "0 1 0 0",
    "0 0 0 1",
)

MATRIX_9X9 = {
    1: (
        "1 0 0 0 a1 a2 0 a3 a4",
        "0 0 0 1  0  0 0  0  0",
        "0 0 0 0  0  0 1  0  0",
        "0 1 0 0  0  0 0  0  0",
        "0 0 0 0  1  0 0  0  0",
        "0 0 0 0  0  0 0  1  0",
        "0 0 1 0  0  0 0  0  0",
        "0 0 0 0  0  1 0  0  0",
        "0 0 0 0  0  0 0  0  1",
    ),
    2: (
        "1 0 0 0 b1 b2 0  0 0",
        "0 0 0 1  0  0 0  0 0",
        "0 0 0 0  0  1 1 -1 0",
        "0 1 0 0  0  0 0  0 0",
        "0 0 0 0  1  0 0  0 0",
        "0 0 0 0  0  0 0  1 0",
        "0 0 1 0  0  0 0  0 0",
        "0 0 0 0  0  1 0  0 0",
        "0 0 0 0  0  0 0  0 1",
    ),
    3: (
        "1 0 0 0 0 0 0 c1 c2",
        "0 0 0 1 0 0 0  0  1",
        "0 0 0 0 0 0 1  0  0",
        "0 1 0 0 0 0 0  0  0",
        "0 0 0 0 1 0 0  0  0",
        "0 0 0 0 0 0 0  1  0",
        "0 0 1 0 0 0 0  0  0",
        "0 0 0 0 0 1 0  0  0",
        "0 0 0 0 0 0 0  0  1",
    ),
    4: (
        "1 0 0 0 0 0 0 d1 d2",
        "0 0 0 1 0 1 0  0  1",
        "0 0 0 0 0 0 1  0  0",
        "0 1 0 0 0 0 0  0  0",
        "0 0 0 0 1 0 0  0  0",
        "0 0 0 0 0 0 0  1  0",
        "0 0 1 0 0 0 0  0  0",
        "0 0 0 0 0 1 0  0  0",
        "0 0 0 0 0 0 0  0  1",
    ),
}

# Symbol slots of each 9x9 family, in the order they are listed.
PARAMETERS_9X9 = {1: ("a1", "a2", "a3", "a4"), 2: ("b1", "b2"), 3: ("c1", "c2"), 4: ("d1", "d2")}

# Which cocycle value each symbol stands for: symbol -> (i, j) with ω(e_i, e_j), 0-based.
OMEGA_SLOTS = {
    "a1": (0, 0), "a2": (0, 1), "a3": (1, 0), "a4": (1, 1),
    "b1": (0, 0), "b2": (0, 1),
    "c1": (1, 0), "c2": (1, 1),
    "d1": (1, 0), "d2": (1, 1),
}

DEFAULT_SUBSTITUTION = (2, 3, 5, 7)

MATRIX_25X25 = (
    " 1  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0",
    " 0  0  0  0  0  1  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0",
    " 0  0  0  0  0  0  0  1 -1  0  1  0  0  0  0  0  0  0  0  0  0  0  0  0  0",
    " 0  0  0  0  0  0  0  1 -1  0  0  0  0  0  0  1  0  0  0  0  0  0  0  0  0",
    " 0  0  0  0  0  0  0  0  0  0  0  0  1 -1  0  0  0  1 -1  0  1  0  0  0  0",
    " 0  1  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0",
    " 0  0  0  0  0  0  1  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0",
    " 0  0  0  0  0  0  0  0  0  0  0  1  0  0  0  0  0  0  0  0  0  0  0  0  0",
    " 0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  1  0  0  0  0  0  0  0  0",
    " 0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  1  0  0  0",
    " 0  0  1  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0",
    " 0  0  0  0  0  0  0  1  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0",
    " 0  0  0  0  0  0  0  0  0  0  0  0  1  0  0  0  0  0  0  0  0  0  0  0  0",
    " 0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  1  0  0  0  0  0  0  0",
    " 0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  1  0  0",
    " 0  0  0  1  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0",
    " 0  0  0  0  0  0  0  0  1  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0",
    " 0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0",
    " 0  0  0  0  0  0  0  0  0  0  0  0  0  1  0  0  0  0  1  0  0  0  0  0  0",
    " 0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  1  0",
    " 0  0  0  0  1  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0",
    " 0  0  0  0  0  0  0  0  0  1  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0",
    " 0  0  0  0  0  0  0  0  0  0  0  0  0  0  1  0  0  0  0  0  0  0  0  0  0",
    " 0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  1  0  0  0  0  0",
    " 0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  1",
)


def substitute(rows, values: Mapping[str, object] | None = None) -> Mat:
    """Parse a text matrix, replacing symbolic cells with rationals from ``values``."""
    values = {k: scalar(v) for k, v in (values or {}).items()}
    parsed = []
    for r, line in enumerate(rows):
        out = []
        for c, cell in enumerate(line.split()):
            if cell in values:
                out.append(values[cell])
            else:
                try:
                    out.append(scalar(cell))
                except InputError:
                    raise InputError(f"no value supplied for symbol {cell!r} at ({r},{c})") from None
        parsed.append(out)
    return Mat.from_rows(parsed)


def default_values(variant: int) -> dict[str, object]:
    """The 2, 3, 5, 7 substitution in listed order."""
    return dict(zip(PARAMETERS_9X9[variant], DEFAULT_SUBSTITUTION))


def reference_4x4() -> Mat:
    return substitute(MATRIX_4X4)


def reference_9x9(variant: int, values: Mapping[str, object] | None = None) -> Mat:
    if variant not in MATRIX_9X9:
        raise InputError(f"9x9 family index must be 1..4, got {variant!r}")
    return substitute(MATRIX_9X9[variant], default_values(variant) if values is None else values)


def reference_25x25() -> Mat:
    return substitute(MATRIX_25X25)


def omega_for(variant: int, values: Mapping[str, object] | None = None) -> Mat:
    """The 2x2 cocycle matrix that the symbols of a 9x9 family denote."""
    vals = default_values(variant) if values is None else values
    data = {}
    for sym in PARAMETERS_9X9[variant]:
        if sym not in vals:
            raise InputError(f"no value supplied for symbol {sym!r}")
        data[OMEGA_SLOTS[sym]] = scalar(vals[sym])
    return Mat(2, 2, data)
