"""Shared test helpers: independent brute-force oracles and generators.

The oracles below re-implement machine semantics directly from the raw
transition tables (no calls back into the library's run/compose/minimize
code paths), so each test compares two independent computations.
"""

from __future__ import annotations

import hashlib
import itertools
import random

import numpy as np

from mealyfin import MealyMachine, fixture, fixture_names, msharp

# ---------------------------------------------------------------------------
# Concrete fixture inventory (the msharp family is a constructor, not a name).


def concrete_fixtures() -> list[tuple[str, MealyMachine]]:
    pairs = [(name, fixture(name)) for name in fixture_names() if "(" not in name]
    pairs.append(("msharp(2,2)", msharp(2, 2)))
    pairs.append(("msharp(2,3)", msharp(2, 3)))
    return pairs


# ---------------------------------------------------------------------------
# Independent interpreter.


def brute_run(m: MealyMachine, state: int, word) -> tuple[tuple[int, ...], int]:
    """Run a word through the machine by direct table lookups."""
    out = []
    for letter in word:
        out.append(m.rho[state][letter])
        state = m.delta[state][letter]
    return tuple(out), state


def brute_word_output(m: MealyMachine, states, word) -> tuple[int, ...]:
    """Production function of a state word: apply the first state first."""
    current = tuple(word)
    for s in states:
        current, _ = brute_run(m, s, current)
    return current


def brute_equivalent(m: MealyMachine, x: int, y: int) -> bool:
    """Coinductive state equivalence by worklist over state pairs."""
    seen = set()
    stack = [(x, y)]
    while stack:
        a, b = stack.pop()
        if a == b or (a, b) in seen:
            continue
        if m.rho[a] != m.rho[b]:
            return False
        seen.add((a, b))
        for i in range(m.p):
            stack.append((m.delta[a][i], m.delta[b][i]))
    return True


def brute_state_classes(m: MealyMachine) -> list[list[int]]:
    """Partition of states into behavioural classes via brute_equivalent."""
    classes: list[list[int]] = []
    for x in range(m.q):
        for cls in classes:
            if brute_equivalent(m, cls[0], x):
                cls.append(x)
                break
        else:
            classes.append([x])
    return classes


# ---------------------------------------------------------------------------
# Production-function digests for all short state words (vectorized).
#
# The function table of a state on all inputs of a fixed length determines
# its behaviour on every shorter input (outputs are prefix-compatible), so
# one table per word suffices.  Tables for longer state words are built by
# composing tables: table(u + (x,)) = table(x)[table(u)].


def production_digests(
    m: MealyMachine, max_word_len: int, input_len: int
) -> dict[tuple[int, ...], bytes]:
    size = m.p**input_len
    idx = np.arange(size, dtype=np.int64)
    delta = np.array(m.delta, dtype=np.int64)
    rho = np.array(m.rho, dtype=np.int64)
    base_tables = []
    for x in range(m.q):
        state = np.full(size, x, dtype=np.int64)
        acc = np.zeros(size, dtype=np.int64)
        for t in range(input_len):
            letter = (idx // m.p ** (input_len - 1 - t)) % m.p
            acc = acc * m.p + rho[state, letter]
            state = delta[state, letter]
        base_tables.append(acc)

    digests: dict[tuple[int, ...], bytes] = {}

    def descend(word: tuple[int, ...], table: np.ndarray) -> None:
        digests[word] = hashlib.sha1(table.tobytes()).digest()
        if len(word) == max_word_len:
            return
        for x in range(m.q):
            descend(word + (x,), base_tables[x][table])

    for x in range(m.q):
        descend((x,), base_tables[x])
    return digests


# ---------------------------------------------------------------------------
# Machine generators.


def random_machine(
    rng: random.Random, q: int, p: int, invertible: bool = False, reversible: bool = False
) -> MealyMachine:
    if invertible:
        rho = [rng.sample(range(p), p) for _ in range(q)]
    else:
        rho = [[rng.randrange(p) for _ in range(p)] for _ in range(q)]
    if reversible:
        columns = [rng.sample(range(q), q) for _ in range(p)]
        delta = [[columns[i][x] for i in range(p)] for x in range(q)]
    else:
        delta = [[rng.randrange(q) for _ in range(p)] for _ in range(q)]
    return MealyMachine(tuple(map(tuple, delta)), tuple(map(tuple, rho)))


def all_machines(q: int, p: int):
    """Every raw (q, p) table pair, in lexicographic order."""
    cells = q * p
    for dflat in itertools.product(range(q), repeat=cells):
        delta = tuple(dflat[x * p : (x + 1) * p] for x in range(q))
        for rflat in itertools.product(range(p), repeat=cells):
            rho = tuple(rflat[x * p : (x + 1) * p] for x in range(q))
            yield MealyMachine(delta, rho)
