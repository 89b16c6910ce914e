"""Helix graphs: the functional digraphs driving the cycle criteria.

The helix graph of order (n, k) has one node per pair (state word of
length n, letter word of length k); the single outgoing arc applies the
letter word to the state word and records both results.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import MealyMachine, PreconditionError, SizeLimitError, classify
from .transform import _step_word, extend_ir, size_limit


@dataclass(frozen=True)
class HelixGraph:
    n: int
    k: int
    q: int  # base machine states
    p: int  # base machine letters
    successor: tuple[int, ...]

    def node_count(self) -> int:
        return len(self.successor)

    def decode(self, node: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Node index -> (state word, letter word)."""
        big_p = self.p**self.k
        su, lu = divmod(node, big_p)
        states = []
        for _ in range(self.n):
            su, digit = divmod(su, self.q)
            states.append(digit)
        states.reverse()
        letters = []
        for _ in range(self.k):
            lu, digit = divmod(lu, self.p)
            letters.append(digit)
        letters.reverse()
        return tuple(states), tuple(letters)


def helix_graph(m: MealyMachine, n: int, k: int, limit: int | None = None) -> HelixGraph:
    if n < 1 or k < 1:
        raise PreconditionError("helix graph needs n >= 1 and k >= 1")
    q, p = m.q, m.p
    nodes = q**n * p**k
    cap = size_limit() if limit is None else limit
    if nodes > cap:
        raise SizeLimitError("helix graph has %d nodes, over the limit %d" % (nodes, cap))
    big_q = q**n
    big_p = p**k
    state_words = []
    for su in range(big_q):
        word = []
        rest = su
        for _ in range(n):
            rest, digit = divmod(rest, q)
            word.append(digit)
        word.reverse()
        state_words.append(word)
    letter_words = []
    for lu in range(big_p):
        word = []
        rest = lu
        for _ in range(k):
            rest, digit = divmod(rest, p)
            word.append(digit)
        word.reverse()
        letter_words.append(word)
    successor = []
    for su in range(big_q):
        for lu in range(big_p):
            states = list(state_words[su])
            out = 0
            for letter in letter_words[lu]:
                out = out * p + _step_word(m, states, letter)
            code = 0
            for x in states:
                code = code * q + x
            successor.append(code * big_p + out)
    return HelixGraph(n, k, q, p, tuple(successor))


def is_union_of_cycles(h: HelixGraph) -> bool:
    """A functional digraph is a union of cycles iff it is a permutation."""
    return len(set(h.successor)) == len(h.successor)


def cycle_lengths(h: HelixGraph) -> tuple[int, ...]:
    """Sorted multiset of cycle lengths of a permutation helix graph."""
    if not is_union_of_cycles(h):
        raise PreconditionError("helix graph is not a union of cycles")
    seen = [False] * len(h.successor)
    lengths = []
    for start in range(len(h.successor)):
        if seen[start]:
            continue
        node = start
        size = 0
        while not seen[node]:
            seen[node] = True
            node = h.successor[node]
            size += 1
        lengths.append(size)
    return tuple(sorted(lengths))


@dataclass(frozen=True)
class ProfileRow:
    n: int
    k: int
    nodes: int
    is_cycles: bool
    min_len: int | None
    max_len: int | None
    distinct_lens: int | None


@dataclass(frozen=True)
class CycleProfile:
    q: int
    p: int
    extended: bool  # whether the profile is of the inverse-closed extension
    rows: tuple[ProfileRow, ...]


def cycle_profile(
    m: MealyMachine, max_n: int, max_k: int, limit: int | None = None
) -> CycleProfile:
    """Cycle structure of all helix graphs up to order (max_n, max_k).

    For a bireversible machine the profile is taken on its inverse-closed
    extension (whose helix graphs are all unions of cycles); otherwise the
    machine itself is profiled, which requires it to be
    invertible-reversible.
    """
    flags = classify(m)
    if not flags.ir:
        raise PreconditionError("cycle profile requires an invertible-reversible machine")
    if flags.bireversible:
        target = extend_ir(m)
        extended = True
    else:
        target = m
        extended = False
    rows = []
    for n in range(1, max_n + 1):
        for k in range(1, max_k + 1):
            h = helix_graph(target, n, k, limit)
            if is_union_of_cycles(h):
                lengths = cycle_lengths(h)
                rows.append(
                    ProfileRow(
                        n,
                        k,
                        h.node_count(),
                        True,
                        lengths[0],
                        lengths[-1],
                        len(set(lengths)),
                    )
                )
            else:
                rows.append(ProfileRow(n, k, h.node_count(), False, None, None, None))
    return CycleProfile(target.q, target.p, extended, tuple(rows))


def profile_to_csv(profile: CycleProfile) -> str:
    lines = ["n,k,nodes,is_cycles,min_len,max_len,distinct_lens"]
    for row in profile.rows:
        lines.append(
            "%d,%d,%d,%s,%s,%s,%s"
            % (
                row.n,
                row.k,
                row.nodes,
                "true" if row.is_cycles else "false",
                "" if row.min_len is None else row.min_len,
                "" if row.max_len is None else row.max_len,
                "" if row.distinct_lens is None else row.distinct_lens,
            )
        )
    return "\n".join(lines) + "\n"


def helix_to_dot(h: HelixGraph, name: str = "helix") -> str:
    """Deterministic DOT rendering; nodes labelled 'state word,letter word'."""
    lines = ["digraph %s {" % name, "  rankdir=LR;", "  node [shape=box];"]
    for node in range(h.node_count()):
        states, letters = h.decode(node)
        label = "%s,%s" % (
            "".join(str(v) for v in states),
            "".join(str(v) for v in letters),
        )
        lines.append('  %d [label="%s"];' % (node, label))
    for node, target in enumerate(h.successor):
        lines.append("  %d -> %d;" % (node, target))
    lines.append("}")
    return "\n".join(lines) + "\n"
