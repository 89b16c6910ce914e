"""Complete deterministic Mealy machines over dense integer alphabets.

A machine has states ``0..q-1`` and letters ``0..p-1`` and is given by two
tables: ``delta[x][i]`` is the state reached from state ``x`` on input
letter ``i``, and ``rho[x][i]`` is the letter emitted by that transition.
Both tables are total, so completeness and determinism are structural.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

Table = tuple[tuple[int, ...], ...]

# Exhaustive canonical labelling walks all q! * p! relabelings; this cap keeps
# accidental calls on large machines from hanging (census machines use <= 36).
MAX_RELABELINGS = 2_000_000


class FormatError(ValueError):
    """Raised when a textual machine description cannot be parsed."""


class PreconditionError(ValueError):
    """Raised when an operation is applied outside its stated domain."""


class SizeLimitError(RuntimeError):
    """Raised when a construction would exceed the configured size limit."""


def _as_table(raw) -> Table:
    return tuple(tuple(int(v) for v in row) for row in raw)


@dataclass(frozen=True)
class MealyMachine:
    """An immutable complete deterministic letter-to-letter transducer."""

    delta: Table
    rho: Table

    def __post_init__(self):
        delta = _as_table(self.delta)
        rho = _as_table(self.rho)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "rho", rho)
        q = len(delta)
        if q < 1 or len(rho) != q:
            raise ValueError("need q >= 1 states and one delta/rho row per state")
        p = len(delta[0])
        if p < 1:
            raise ValueError("need p >= 1 letters")
        for x in range(q):
            if len(delta[x]) != p or len(rho[x]) != p:
                raise ValueError("ragged transition table at state %d" % x)
            for i in range(p):
                if not 0 <= delta[x][i] < q:
                    raise ValueError(
                        "delta[%d][%d] = %d out of range" % (x, i, delta[x][i])
                    )
                if not 0 <= rho[x][i] < p:
                    raise ValueError(
                        "rho[%d][%d] = %d out of range" % (x, i, rho[x][i])
                    )

    @property
    def q(self) -> int:
        return len(self.delta)

    @property
    def p(self) -> int:
        return len(self.delta[0])

    def __repr__(self):
        return "MealyMachine(q=%d, p=%d)" % (self.q, self.p)


@dataclass(frozen=True)
class ClassificationFlags:
    invertible: bool
    reversible: bool
    ir: bool
    bireversible: bool


def is_invertible(m: MealyMachine) -> bool:
    """True iff every output function rho_x is a permutation of the letters."""
    full = set(range(m.p))
    return all(set(row) == full for row in m.rho)


def is_reversible(m: MealyMachine) -> bool:
    """True iff every state function delta_i is a permutation of the states."""
    full = set(range(m.q))
    return all(set(row[i] for row in m.delta) == full for i in range(m.p))


def _inverse_delta(m: MealyMachine) -> Table:
    # delta of the inverse machine: x on output-letter j moves to the state
    # reached on the unique input letter producing j.
    rows = []
    for x in range(m.q):
        pre = [0] * m.p
        for i in range(m.p):
            pre[m.rho[x][i]] = i
        rows.append(tuple(m.delta[x][pre[j]] for j in range(m.p)))
    return tuple(rows)


def classify(m: MealyMachine) -> ClassificationFlags:
    """Compute the invertible / reversible / bireversible flags.

    Bireversibility is tested operationally: the machine, its inverse must
    both be reversible (on top of invertibility).
    """
    inv = is_invertible(m)
    rev = is_reversible(m)
    bi = False
    if inv and rev:
        inv_delta = _inverse_delta(m)
        full = set(range(m.q))
        bi = all(
            set(inv_delta[x][j] for x in range(m.q)) == full for j in range(m.p)
        )
    return ClassificationFlags(inv, rev, inv and rev, bi)


def relabel(m: MealyMachine, sigma, tau) -> MealyMachine:
    """Apply a state permutation ``sigma`` and letter permutation ``tau``.

    ``sigma[x]`` is the new name of state ``x`` (same for ``tau`` on letters).
    """
    q, p = m.q, m.p
    _check_permutation(tuple(sigma), q, "state permutation")
    _check_permutation(tuple(tau), p, "letter permutation")
    sigma_inv = [0] * q
    for x in range(q):
        sigma_inv[sigma[x]] = x
    tau_inv = [0] * p
    for i in range(p):
        tau_inv[tau[i]] = i
    delta = [
        [sigma[m.delta[sigma_inv[x]][tau_inv[i]]] for i in range(p)]
        for x in range(q)
    ]
    rho = [
        [tau[m.rho[sigma_inv[x]][tau_inv[i]]] for i in range(p)]
        for x in range(q)
    ]
    return MealyMachine(delta, rho)


def _serialize(delta, rho) -> tuple:
    return tuple(v for row in delta for v in row) + tuple(
        v for row in rho for v in row
    )


def _relabeled_serialization(m, sigma, tau, tau_inv) -> tuple:
    # Inline version of _serialize(relabel(...)) without building the machine.
    q, p = m.q, m.p
    delta, rho = m.delta, m.rho
    out = []
    sigma_inv = [0] * q
    for x in range(q):
        sigma_inv[sigma[x]] = x
    for nx in range(q):
        ox = sigma_inv[nx]
        drow = delta[ox]
        out.extend(sigma[drow[tau_inv[i]]] for i in range(p))
    for nx in range(q):
        ox = sigma_inv[nx]
        rrow = rho[ox]
        out.extend(tau[rrow[tau_inv[i]]] for i in range(p))
    return tuple(out)


def _check_relabel_budget(m: MealyMachine):
    total = 1
    for k in range(2, m.q + 1):
        total *= k
    for k in range(2, m.p + 1):
        total *= k
    if total > MAX_RELABELINGS:
        raise SizeLimitError(
            "canonical labelling over %d relabelings exceeds the limit" % total
        )


def canonical_form(m: MealyMachine) -> bytes:
    """Key identifying the machine up to joint state/letter relabeling.

    The key is the lexicographically smallest serialization of the
    (delta, rho) tables over all q! * p! relabelings, so two machines get
    equal keys exactly when some state bijection plus letter bijection
    carries one transition set onto the other.
    """
    _check_relabel_budget(m)
    q, p = m.q, m.p
    best = None
    perms_q = list(itertools.permutations(range(q)))
    perms_p = list(itertools.permutations(range(p)))
    for sigma in perms_q:
        for tau in perms_p:
            tau_inv = [0] * p
            for i in range(p):
                tau_inv[tau[i]] = i
            cand = _relabeled_serialization(m, sigma, tau, tau_inv)
            if best is None or cand < best:
                best = cand
    width = 2 if max(q, p) > 255 else 1
    head = bytes([width, q >> 8, q & 0xFF, p >> 8, p & 0xFF])
    if width == 1:
        return head + bytes(best)
    return head + b"".join(v.to_bytes(2, "big") for v in best)


def is_isomorphic(m1: MealyMachine, m2: MealyMachine) -> bool:
    """Whether some joint state/letter relabeling maps m1 onto m2."""
    if m1.q != m2.q or m1.p != m2.p:
        return False
    _check_relabel_budget(m1)
    target = _serialize(m2.delta, m2.rho)
    for sigma in itertools.permutations(range(m1.q)):
        for tau in itertools.permutations(range(m1.p)):
            tau_inv = [0] * m1.p
            for i in range(m1.p):
                tau_inv[tau[i]] = i
            if _relabeled_serialization(m1, sigma, tau, tau_inv) == target:
                return True
    return False


def _check_permutation(perm, size, what):
    if len(perm) != size or set(perm) != set(range(size)):
        raise ValueError("%s %r is not a permutation of 0..%d" % (what, perm, size - 1))


def cross_product_machine(gens_on_letters, gens_on_states) -> MealyMachine:
    """Machine whose group is generated by the first permutation list and
    whose dual's group is generated by the second.

    States are pairs (a, b) with ``a`` indexing ``gens_on_letters`` and ``b``
    a point of the set acted on by ``gens_on_states``; letters are pairs
    (i, j) with ``i`` a point of the first action and ``j`` indexing
    ``gens_on_states``.  The transition from (a, b) on (i, j) outputs
    (a(i), j) and moves to (a, j(b)).
    """
    if not gens_on_letters or not gens_on_states:
        raise ValueError("both generator lists must be non-empty")
    gens1 = [tuple(int(v) for v in g) for g in gens_on_letters]
    gens2 = [tuple(int(v) for v in g) for g in gens_on_states]
    s1 = len(gens1[0])
    a2 = len(gens2[0])
    for g in gens1:
        _check_permutation(g, s1, "letter generator")
    for g in gens2:
        _check_permutation(g, a2, "state generator")
    n_a1 = len(gens1)
    n_s2 = len(gens2)
    q = n_a1 * a2
    p = s1 * n_s2
    delta = [[0] * p for _ in range(q)]
    rho = [[0] * p for _ in range(q)]
    for a in range(n_a1):
        for b in range(a2):
            x = a * a2 + b
            for i in range(s1):
                for j in range(n_s2):
                    letter = i * n_s2 + j
                    delta[x][letter] = a * a2 + gens2[j][b]
                    rho[x][letter] = gens1[a][i] * n_s2 + j
    return MealyMachine(delta, rho)
