"""Nerode minimization and the alternating minimize/dualize reduction."""

from __future__ import annotations

from dataclasses import dataclass

from .core import MealyMachine
from .transform import dual


def refine_partition(init_keys, succ_rows):
    """Coarsest partition refining ``init_keys`` and respecting successors.

    ``succ_rows[x]`` lists the successor node of ``x`` per letter.  Two nodes
    end up in the same class iff they share an initial key and, step by
    step, their successors stay pairwise equivalent.  Returns the list of
    class ids (numbered by first occurrence) and the class count.
    """
    n = len(succ_rows)
    ids: dict = {}
    class_of = []
    for key in init_keys:
        if key not in ids:
            ids[key] = len(ids)
        class_of.append(ids[key])
    count = len(ids)
    while True:
        sigs: dict = {}
        fresh = []
        for x in range(n):
            sig = (class_of[x], tuple(class_of[y] for y in succ_rows[x]))
            if sig not in sigs:
                sigs[sig] = len(sigs)
            fresh.append(sigs[sig])
        if len(sigs) == count:
            return class_of, count
        class_of = fresh
        count = len(sigs)


@dataclass(frozen=True)
class NerodePartition:
    class_of: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]


def nerode_partition(m: MealyMachine) -> NerodePartition:
    """Group states with identical behaviour on every input word.

    Classes are numbered by their smallest member.
    """
    class_of, count = refine_partition(list(m.rho), [list(row) for row in m.delta])
    members: list[list[int]] = [[] for _ in range(count)]
    for x in range(m.q):
        members[class_of[x]].append(x)
    members.sort(key=lambda block: block[0])
    renumber = {}
    for cid, block in enumerate(members):
        for x in block:
            renumber[x] = cid
    return NerodePartition(
        tuple(renumber[x] for x in range(m.q)),
        tuple(tuple(block) for block in members),
    )


def minimize(m: MealyMachine) -> MealyMachine:
    """Quotient by the Nerode partition (same generated semigroup)."""
    part = nerode_partition(m)
    delta = []
    rho = []
    for block in part.classes:
        rep = block[0]
        delta.append([part.class_of[m.delta[rep][i]] for i in range(m.p)])
        rho.append(list(m.rho[rep]))
    return MealyMachine(delta, rho)


@dataclass(frozen=True)
class ReductionStep:
    side: str  # "machine" or "dual"
    before: tuple[int, int]  # (q, p) before the step
    after: tuple[int, int]


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[ReductionStep, ...]


def md_reduce(m: MealyMachine) -> tuple[MealyMachine, ReductionTrace]:
    """Alternately minimize the machine and its dual until both are minimal.

    The result is independent of the interleaving order; only steps that
    actually shrink something are recorded.
    """
    steps = []
    while True:
        shrunk = False
        mm = minimize(m)
        if mm.q < m.q:
            steps.append(ReductionStep("machine", (m.q, m.p), (mm.q, mm.p)))
            m = mm
            shrunk = True
        dm = minimize(dual(m))
        if dm.q < m.p:
            reduced = dual(dm)
            steps.append(ReductionStep("dual", (m.q, m.p), (reduced.q, reduced.p)))
            m = reduced
            shrunk = True
        if not shrunk:
            return m, ReductionTrace(tuple(steps))


def is_md_trivial(m: MealyMachine) -> bool:
    """Whether the alternating reduction collapses to the one-state,
    one-letter machine (a finiteness certificate)."""
    reduced, _ = md_reduce(m)
    return reduced.q == 1 and reduced.p == 1
