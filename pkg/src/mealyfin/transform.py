"""Machine-to-machine constructions: dual, inverse, powers, sums, extension."""

from __future__ import annotations

import os
from dataclasses import dataclass

from .core import MealyMachine, PreconditionError, SizeLimitError, classify, is_invertible

SIZE_LIMIT_ENV = "MEALYFIN_SIZE_LIMIT"
DEFAULT_SIZE_LIMIT = 1 << 22


def size_limit() -> int:
    raw = os.environ.get(SIZE_LIMIT_ENV)
    if raw is None:
        return DEFAULT_SIZE_LIMIT
    try:
        return int(raw)
    except ValueError:
        raise ValueError("%s must be an integer, got %r" % (SIZE_LIMIT_ENV, raw))


def dual(m: MealyMachine) -> MealyMachine:
    """Exchange the roles of states and letters.

    Every transition x --i|j--> y of the machine becomes a transition
    i --x|y--> j of the dual, so the dual of the dual is the machine.
    """
    delta = [[m.rho[x][i] for x in range(m.q)] for i in range(m.p)]
    rho = [[m.delta[x][i] for x in range(m.q)] for i in range(m.p)]
    return MealyMachine(delta, rho)


def inverse(m: MealyMachine) -> MealyMachine:
    """Machine of the inverse transformations (states become their inverses).

    State x of the inverse maps output letters back to input letters; on
    letter j it moves to where x goes while producing j.
    """
    if not is_invertible(m):
        raise PreconditionError("inverse requires an invertible machine")
    delta = []
    rho = []
    for x in range(m.q):
        pre = [0] * m.p
        for i in range(m.p):
            pre[m.rho[x][i]] = i
        delta.append([m.delta[x][pre[j]] for j in range(m.p)])
        rho.append(pre)
    return MealyMachine(delta, rho)


@dataclass(frozen=True)
class RunResult:
    output: tuple[int, ...]
    end_state: int


def run(m: MealyMachine, state: int, word) -> RunResult:
    """Feed ``word`` to the machine started in ``state``."""
    if not 0 <= state < m.q:
        raise ValueError("start state %d out of range" % state)
    out = []
    x = state
    for i in word:
        if not 0 <= i < m.p:
            raise ValueError("letter %r out of range" % (i,))
        out.append(m.rho[x][i])
        x = m.delta[x][i]
    return RunResult(tuple(out), x)


def _step_word(m: MealyMachine, states: list[int], letter: int) -> int:
    """Advance a word of states by one input letter, in place.

    The letter enters the first state; each state passes its output on to
    the next one.  Returns the letter leaving the last state.
    """
    for idx in range(len(states)):
        x = states[idx]
        out = m.rho[x][letter]
        states[idx] = m.delta[x][letter]
        letter = out
    return letter


def power(m: MealyMachine, n: int, k: int, limit: int | None = None) -> MealyMachine:
    """Machine acting on letter words of length k with state words of length n.

    States (resp. letters) are words encoded in mixed radix with the first
    position most significant.
    """
    if n < 1 or k < 1:
        raise PreconditionError("power needs n >= 1 and k >= 1")
    q, p = m.q, m.p
    nodes = q**n * p**k
    cap = size_limit() if limit is None else limit
    if nodes > cap:
        raise SizeLimitError(
            "power machine has %d transitions, over the limit %d" % (nodes, cap)
        )
    big_q = q**n
    big_p = p**k
    letters = []
    for u in range(big_p):
        word = []
        rest = u
        for _ in range(k):
            rest, digit = divmod(rest, p)
            word.append(digit)
        word.reverse()
        letters.append(word)
    delta = []
    rho = []
    for su in range(big_q):
        word = []
        rest = su
        for _ in range(n):
            rest, digit = divmod(rest, q)
            word.append(digit)
        word.reverse()
        drow = []
        rrow = []
        for lu in range(big_p):
            states = list(word)
            out = 0
            for letter in letters[lu]:
                out = out * p + _step_word(m, states, letter)
            code = 0
            for x in states:
                code = code * q + x
            drow.append(code)
            rrow.append(out)
        delta.append(drow)
        rho.append(rrow)
    return MealyMachine(delta, rho)


def disjoint_union(m1: MealyMachine, m2: MealyMachine) -> MealyMachine:
    """Side-by-side union of two machines over the same alphabet."""
    if m1.p != m2.p:
        raise PreconditionError(
            "disjoint union needs equal alphabets (%d vs %d)" % (m1.p, m2.p)
        )
    shift = m1.q
    delta = [list(row) for row in m1.delta]
    rho = [list(row) for row in m1.rho]
    for x in range(m2.q):
        delta.append([m2.delta[x][i] + shift for i in range(m2.p)])
        rho.append(list(m2.rho[x]))
    return MealyMachine(delta, rho)


def sum_components(m: MealyMachine) -> list[MealyMachine]:
    """Split into the weakly connected components of the state digraph.

    Components are listed by smallest original state; states keep their
    relative order inside each component.
    """
    q = m.q
    neighbours = [set() for _ in range(q)]
    for x in range(q):
        for y in m.delta[x]:
            neighbours[x].add(y)
            neighbours[y].add(x)
    seen = [False] * q
    components = []
    for start in range(q):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        members = []
        while stack:
            x = stack.pop()
            members.append(x)
            for y in neighbours[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        members.sort()
        components.append(members)
    result = []
    for members in components:
        index = {x: j for j, x in enumerate(members)}
        delta = [[index[m.delta[x][i]] for i in range(m.p)] for x in members]
        rho = [list(m.rho[x]) for x in members]
        result.append(MealyMachine(delta, rho))
    return result


def extend_ir(m: MealyMachine) -> MealyMachine:
    """Close an invertible-reversible machine under state and letter inverses.

    The result has states A + A^{-1} and letters S + S^{-1} (the second
    half of each range holding the inverses).  Closing the letters under
    inversion requires the dualized intermediate machine to be invertible,
    which holds exactly for bireversible machines.
    """
    flags = classify(m)
    if not flags.ir:
        raise PreconditionError("extension requires an invertible-reversible machine")
    if not flags.bireversible:
        raise PreconditionError(
            "extension requires a bireversible machine "
            "(letter inverses do not exist otherwise)"
        )
    d = dual(m)
    primed = dual(disjoint_union(d, inverse(d)))
    return disjoint_union(primed, inverse(primed))
