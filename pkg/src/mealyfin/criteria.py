"""Finiteness criteria and the deduction engine combining them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import (
    MealyMachine,
    PreconditionError,
    classify,
    is_invertible,
)
from .minimize import is_md_trivial, md_reduce, minimize
from .semigroup import FINITE as ENUM_FINITE
from .semigroup import enumerate_order
from .transform import dual, inverse, sum_components

FINITE = "finite"
INFINITE = "infinite"
UNKNOWN = "unknown"

CRITERIA_ORDER = ("md-trivial", "cycles", "finitary", "sidki", "limitary", "cayley")
TRANSFORM_RULES = ("reduce", "sum", "dual", "bfs")
DEFAULT_RULES = frozenset(CRITERIA_ORDER + TRANSFORM_RULES)

# Boundedness test used by the Sidki criterion: "scc" accepts exits from
# cycles (simple-cycle components, no cycle reaching another cycle),
# "outdeg" additionally forbids any extra out-edge on a cyclic vertex.
SIDKI_VARIANT = "scc"


@dataclass(frozen=True)
class Verdict:
    decision: str  # finite | infinite | unknown
    trace: tuple[str, ...] = ()
    detail: str = ""

    def decided(self) -> bool:
        return self.decision != UNKNOWN


def md_trivial_criterion(m: MealyMachine) -> Verdict:
    """Finite when the alternating reduction collapses the machine."""
    if is_md_trivial(m):
        return Verdict(FINITE, ("md-trivial",))
    return Verdict(UNKNOWN)


def cycles_criterion(m: MealyMachine) -> Verdict:
    """Infinite for invertible-reversible machines that are not
    bireversible, and for inverses of such machines."""
    flags = classify(m)
    if flags.ir and not flags.bireversible:
        return Verdict(INFINITE, ("cycles",))
    if flags.invertible and not flags.ir:
        iflags = classify(inverse(m))
        if iflags.ir and not iflags.bireversible:
            return Verdict(INFINITE, ("cycles",), "via inverse")
    return Verdict(UNKNOWN)


def _identity_state(m: MealyMachine) -> int | None:
    """State acting as the identity (self-loops, verbatim output).

    Meaningful on minimized machines, where at most one such state exists.
    """
    for x in range(m.q):
        if all(m.rho[x][i] == i and m.delta[x][i] == x for i in range(m.p)):
            return x
    return None


def finitary_criterion(m: MealyMachine) -> Verdict:
    """Finite when, after minimization, the non-identity states form an
    acyclic graph: every deep enough section is trivial."""
    mm = minimize(m)
    ident = _identity_state(mm)
    nodes = [x for x in range(mm.q) if x != ident]
    succ = {
        x: [y for y in mm.delta[x] if y != ident]
        for x in nodes
    }
    color = {x: 0 for x in nodes}  # 0 new, 1 active, 2 done
    for root in nodes:
        if color[root]:
            continue
        stack = [(root, iter(succ[root]))]
        color[root] = 1
        while stack:
            node, children = stack[-1]
            advanced = False
            for child in children:
                if color[child] == 1:
                    return Verdict(UNKNOWN)
                if color[child] == 0:
                    color[child] = 1
                    stack.append((child, iter(succ[child])))
                    advanced = True
                    break
            if not advanced:
                color[node] = 2
                stack.pop()
    return Verdict(FINITE, ("finitary",))


def _tarjan_sccs(nodes, succ):
    """Iterative Tarjan; returns (scc_of dict, list of components)."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    sccs = []
    scc_of = {}
    counter = itertools.count()
    for root in nodes:
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            node, child_idx = work.pop()
            if child_idx == 0:
                index[node] = low[node] = next(counter)
                stack.append(node)
                on_stack.add(node)
            recurse = False
            children = succ[node]
            for offset in range(child_idx, len(children)):
                child = children[offset]
                if child not in index:
                    work.append((node, offset + 1))
                    work.append((child, 0))
                    recurse = True
                    break
                if child in on_stack:
                    low[node] = min(low[node], index[child])
            if recurse:
                continue
            if low[node] == index[node]:
                comp = []
                while True:
                    other = stack.pop()
                    on_stack.discard(other)
                    comp.append(other)
                    scc_of[other] = len(sccs)
                    if other == node:
                        break
                sccs.append(comp)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
    return scc_of, sccs


def sidki_criterion(m: MealyMachine, variant: str | None = None) -> Verdict:
    """Infinite when some bounded state sits on a cycle relabelling a letter.

    A state is bounded when its count of non-trivial sections per level
    stays bounded; it then has infinite order as soon as its cycle carries
    a label i|j with j != i.
    """
    if not is_invertible(m):
        raise PreconditionError("this criterion requires an invertible machine")
    variant = SIDKI_VARIANT if variant is None else variant
    if variant not in ("scc", "outdeg"):
        raise ValueError("unknown variant %r" % variant)
    mm = minimize(m)
    ident = _identity_state(mm)
    nodes = [x for x in range(mm.q) if x != ident]
    if not nodes:
        return Verdict(UNKNOWN)
    succ = {
        x: [y for y in mm.delta[x] if y != ident]
        for x in nodes
    }
    scc_of, sccs = _tarjan_sccs(nodes, succ)
    cyclic = []
    for cid, comp in enumerate(sccs):
        has_cycle = len(comp) > 1 or any(y == comp[0] for y in succ[comp[0]])
        cyclic.append(has_cycle)
    n_scc = len(sccs)
    cond_succ = [set() for _ in range(n_scc)]
    for x in nodes:
        for y in succ[x]:
            if scc_of[y] != scc_of[x]:
                cond_succ[scc_of[x]].add(scc_of[y])
    # Tarjan emits components in reverse topological order, so children
    # are always finished before their parents.
    reaches_cycle = [False] * n_scc
    bad = [False] * n_scc
    for cid in range(n_scc):
        reach = False
        bad_below = False
        for tid in cond_succ[cid]:
            reach = reach or cyclic[tid] or reaches_cycle[tid]
            bad_below = bad_below or bad[tid]
        reaches_cycle[cid] = reach
        if variant == "scc":
            simple = all(
                sum(1 for y in succ[x] if scc_of[y] == cid) == 1 for x in sccs[cid]
            )
            bad_here = cyclic[cid] and (not simple or reach)
        else:
            bad_here = cyclic[cid] and any(len(succ[x]) != 1 for x in sccs[cid])
        bad[cid] = bad_here or bad_below
    for x in nodes:
        cid = scc_of[x]
        if bad[cid] or not cyclic[cid]:
            continue
        for i in range(mm.p):
            target = mm.delta[x][i]
            if target != ident and scc_of.get(target) == cid and mm.rho[x][i] != i:
                return Verdict(INFINITE, ("sidki",), "state %d" % x)
    return Verdict(UNKNOWN)


def limitary_cycles_criterion(m: MealyMachine) -> Verdict:
    """Finite when every state reachable from a cyclic state is branchless.

    Depends only on the state table; when it holds, every output table
    over this state table yields a finite semigroup.
    """
    nodes = list(range(m.q))
    succ = {x: list(m.delta[x]) for x in nodes}
    scc_of, sccs = _tarjan_sccs(nodes, succ)
    cyclic_states = []
    for comp in sccs:
        if len(comp) > 1 or comp[0] in succ[comp[0]]:
            cyclic_states.extend(comp)
    seen = set(cyclic_states)
    queue = list(cyclic_states)
    while queue:
        x = queue.pop()
        for y in succ[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    for x in seen:
        if any(y != m.delta[x][0] for y in m.delta[x]):
            return Verdict(UNKNOWN)
    return Verdict(FINITE, ("limitary",))


def _h_trivial(mult) -> bool:
    n = len(mult)
    r_ideal = [frozenset(mult[a]) | {a} for a in range(n)]
    l_ideal = [frozenset(mult[s][a] for s in range(n)) | {a} for a in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            if r_ideal[a] == r_ideal[b] and l_ideal[a] == l_ideal[b]:
                return False
    return True


def _has_nontrivial_right_zero(mult) -> bool:
    n = len(mult)
    idem = [a for a in range(n) if mult[a][a] == a]
    for a in idem:
        for b in idem:
            if a != b and mult[a][b] == b and mult[b][a] == a:
                return True
    return False


def _associative(mult) -> bool:
    n = len(mult)
    for a in range(n):
        row = mult[a]
        for b in range(n):
            ab = row[b]
            for c in range(n):
                if mult[ab][c] != row[mult[b][c]]:
                    return False
    return True


def _identify_cayley(m: MealyMachine, kind: str):
    """Semigroup multiplications realizing the machine as a Cayley machine.

    Letters map to states through a bijection; the product of states a, b
    is then forced to delta[a][letter of b].  Yields each multiplication
    table whose outputs match and which is associative.
    """
    if m.q != m.p:
        return
    n = m.q
    for gamma in itertools.permutations(range(n)):
        gamma_inv = [0] * n
        for i in range(n):
            gamma_inv[gamma[i]] = i
        if kind == "cayley":
            ok = all(
                gamma[m.rho[x][i]] == m.delta[x][i]
                for x in range(n)
                for i in range(n)
            )
        else:
            ok = all(
                gamma[m.rho[x][i]] == m.delta[gamma[i]][gamma_inv[x]]
                for x in range(n)
                for i in range(n)
            )
        if not ok:
            continue
        mult = [[m.delta[a][gamma_inv[b]] for b in range(n)] for a in range(n)]
        if _associative(mult):
            yield mult


def cayley_identifications(m: MealyMachine) -> dict[str, str]:
    """Which Cayley-machine families contain the machine or its inverse.

    Returns a map from family ("cayley" / "dual-cayley") to the decision
    that family's characterization gives: the Cayley machine of S generates
    a finite semigroup iff S is H-trivial, the dual Cayley machine iff S is
    additionally free of nontrivial right-zero subsemigroups.  All
    identifications must agree on the decision, since they all concern the
    same semigroup.
    """
    machines = [m]
    if is_invertible(m):
        machines.append(inverse(m))
    found: dict[str, str] = {}
    for kind, label in (("cayley", "cayley"), ("dual_cayley", "dual-cayley")):
        for candidate in machines:
            for mult in _identify_cayley(candidate, kind):
                if kind == "cayley":
                    finite = _h_trivial(mult)
                else:
                    finite = _h_trivial(mult) and not _has_nontrivial_right_zero(mult)
                decision = FINITE if finite else INFINITE
                previous = found.get(label)
                if previous is not None and previous != decision:
                    raise RuntimeError(
                        "inconsistent Cayley identifications on the same machine"
                    )
                found[label] = decision
    if len(set(found.values())) > 1:
        raise RuntimeError("Cayley criteria disagree on one machine")
    return found


def cayley_criterion(m: MealyMachine) -> Verdict:
    """Maltcev-style decision for machines isomorphic to a Cayley machine
    of a finite semigroup (or its inverse)."""
    found = cayley_identifications(m)
    for label in ("cayley", "dual-cayley"):
        if label in found:
            return Verdict(found[label], (label,))
    return Verdict(UNKNOWN)


@dataclass(frozen=True)
class DecideConfig:
    rules: frozenset[str] = DEFAULT_RULES
    depth: int = 3
    budget: int | None = None
    work_limit: int | None = 5_000_000


def _base_criteria(m: MealyMachine, rules) -> Verdict:
    for name in CRITERIA_ORDER:
        if name not in rules:
            continue
        if name == "md-trivial":
            verdict = md_trivial_criterion(m)
        elif name == "cycles":
            verdict = cycles_criterion(m)
        elif name == "finitary":
            verdict = finitary_criterion(m)
        elif name == "sidki":
            verdict = sidki_criterion(m) if is_invertible(m) else Verdict(UNKNOWN)
        elif name == "limitary":
            verdict = limitary_cycles_criterion(m)
        else:
            verdict = cayley_criterion(m)
        if verdict.decided():
            return verdict
    return Verdict(UNKNOWN)


def decide(m: MealyMachine, config: DecideConfig | None = None) -> Verdict:
    """Combine the criteria with reduction, sum decomposition and duality.

    Duality transfers both decisions; a sum is infinite when any component
    is.  The optional breadth-first enumeration only ever proves
    finiteness.  Results are memoized per call on the transition tables,
    and contradictory decisions anywhere in the derivation raise.
    """
    config = config or DecideConfig()
    memo: dict = {}
    decided: dict = {}

    def record(key: MealyMachine, verdict: Verdict) -> Verdict:
        if verdict.decided():
            previous = decided.get(key)
            if previous is not None and previous != verdict.decision:
                raise RuntimeError("criteria disagree on one machine")
            decided[key] = verdict.decision
        return verdict

    def _decide(m: MealyMachine, depth: int) -> Verdict:
        key = m
        hit = memo.get((key, depth))
        if hit is not None:
            return hit
        memo[(key, depth)] = Verdict(UNKNOWN)  # cycle guard
        verdict = _base_criteria(m, config.rules)
        if not verdict.decided() and "reduce" in config.rules:
            reduced, _ = md_reduce(m)
            if (reduced.q, reduced.p) != (m.q, m.p):
                inner = _decide(reduced, depth)
                if inner.decided():
                    verdict = Verdict(
                        inner.decision, ("reduce",) + inner.trace, inner.detail
                    )
        if not verdict.decided() and "sum" in config.rules and depth > 0:
            components = sum_components(m)
            if len(components) > 1:
                for idx, component in enumerate(components):
                    inner = _decide(component, depth - 1)
                    if inner.decision == INFINITE:
                        verdict = Verdict(
                            INFINITE, ("sum[%d]" % idx,) + inner.trace, inner.detail
                        )
                        break
        if not verdict.decided() and "dual" in config.rules and depth > 0:
            inner = _decide(dual(m), depth - 1)
            if inner.decided():
                verdict = Verdict(
                    inner.decision, ("dual",) + inner.trace, inner.detail
                )
        if not verdict.decided() and "bfs" in config.rules and config.budget:
            result = enumerate_order(
                m, "semigroup", config.budget, config.work_limit
            )
            if result.status == ENUM_FINITE:
                verdict = Verdict(FINITE, ("bfs",), "order %d" % result.order)
        memo[(key, depth)] = verdict
        return record(key, verdict)

    return _decide(m, config.depth)
