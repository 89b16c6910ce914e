"""Named example machines used across the test suite and the CLI.

Each fixture is stored in the compact text format.  ``msharp(p, q)`` is a
parametrized family and is constructed programmatically.
"""

from __future__ import annotations

import re

from .core import MealyMachine, PreconditionError
from .formats import machine_from_text

# fmt: off
ENCODINGS = {
    "trivial":        "mealy 1 1 : 0/0",
    "lamplighter":    "mealy 2 2 : 1/1 0/0 ; 0/0 1/1",
    "klein":          "mealy 2 2 : 0/1 0/0 ; 0/0 0/1",
    "order6":         "mealy 2 2 : 0/1 0/1 ; 1/1 0/0",
    "s_i2":           "mealy 2 2 : 0/1 0/0 ; 1/1 0/1",
    "adding_machine": "mealy 2 2 : 1/1 0/0 ; 1/0 1/1",
    "grig_finite":    "mealy 3 2 : 0/1 0/0 ; 0/0 0/1 ; 0/0 1/1",
    "aleshin":        "mealy 3 2 : 2/1 1/0 ; 1/1 2/0 ; 0/0 0/1",
    "babyaleshin":    "mealy 3 2 : 2/1 2/0 ; 0/0 1/1 ; 1/0 0/1",
    "basilica":       "mealy 3 2 : 1/1 2/0 ; 0/0 2/1 ; 2/0 2/1",
    "grigorchuk":     "mealy 5 2 : 4/1 4/0 ; 0/0 2/1 ; 0/0 3/1 ; 4/0 1/1 ; 4/0 4/1",
    "aleshin_finite": "mealy 2 3 : 1/1 1/2 1/0 ; 0/1 0/0 0/2",
    "s13597":         "mealy 2 3 : 1/0 1/2 1/0 ; 1/1 1/0 0/2",
    "g16":            "mealy 2 4 : 1/1 0/0 1/3 0/2 ; 0/3 1/0 0/1 1/2",
    "dual_decomposable":
        "mealy 3 3 : 2/1 2/0 0/2 ; 0/0 1/1 2/2 ; 1/0 0/1 1/2",
    "dihedral8": (
        "mealy 8 8 : "
        "0/0 0/1 0/2 0/3 0/4 0/5 0/6 0/7 ; "
        "1/0 1/1 7/4 7/5 7/2 7/3 1/6 1/7 ; "
        "2/0 4/7 2/2 5/3 4/5 3/4 5/6 3/1 ; "
        "3/0 5/7 3/5 4/4 5/2 2/3 4/6 2/1 ; "
        "4/0 2/7 5/4 2/5 3/3 4/2 3/6 5/1 ; "
        "5/0 3/7 4/3 3/2 2/4 5/5 2/6 4/1 ; "
        "6/0 6/1 6/5 6/4 6/3 6/2 6/6 6/7 ; "
        "7/0 7/1 1/3 1/2 1/5 1/4 7/6 7/7"
    ),
}
# fmt: on

_MSHARP_RE = re.compile(r"^msharp\(\s*(\d+)\s*,\s*(\d+)\s*\)$")


def msharp(p: int, q: int) -> MealyMachine:
    """Single-cycle machine on q states whose group is the q-fold direct
    power of the symmetric group on the p letters (order (p!)^q).

    State j moves to state (j+1) mod q on every letter.  State 0 outputs
    the full cycle on the letters, state 1 the cycle avoiding letter 0,
    and every further state is silent (identity output).
    """
    if p < 2 or q < 2:
        raise PreconditionError("msharp needs p >= 2 and q >= 2")
    delta = [[(j + 1) % q] * p for j in range(q)]
    rho = []
    for j in range(q):
        if j == 0:
            rho.append([(i + 1) % p for i in range(p)])
        elif j == 1:
            row = [0] * p
            for i in range(1, p - 1):
                row[i] = i + 1
            row[p - 1] = 1
            rho.append(row)
        else:
            rho.append(list(range(p)))
    return MealyMachine(delta, rho)


def fixture_names() -> list[str]:
    return sorted(ENCODINGS) + ["msharp(p,q)"]


def fixture(name: str) -> MealyMachine:
    """Look up a fixture by name; supports ``msharp(p,q)``."""
    if name in ENCODINGS:
        return machine_from_text(ENCODINGS[name])
    match = _MSHARP_RE.match(name.strip())
    if match:
        return msharp(int(match.group(1)), int(match.group(2)))
    raise PreconditionError(
        "unknown fixture %r (try one of: %s)" % (name, ", ".join(fixture_names()))
    )
