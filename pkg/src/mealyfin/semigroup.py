"""Semigroup elements as canonical pointed machines, and BFS closure.

An element is the length-preserving function induced by running the
machine from a fixed word of states.  Two words induce the same function
iff their trimmed, minimized, breadth-first-relabelled pointed machines
coincide, so that normal form works as a dictionary key.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import MealyMachine, PreconditionError, SizeLimitError, is_invertible
from .minimize import minimize, refine_partition
from .transform import disjoint_union, inverse

FINITE = "finite"
BUDGET_EXCEEDED = "budget-exceeded"

DEFAULT_BUDGET = 1_000_000
# Secondary guard: total product-machine nodes visited during composition.
# Machines of unbounded growth blow this long before the element budget.
DEFAULT_WORK_LIMIT = 200_000_000


@dataclass(frozen=True)
class Element:
    """A canonical pointed machine; ``point`` is always state 0."""

    machine: MealyMachine
    point: int
    key: bytes

    @property
    def p(self) -> int:
        return self.machine.p


def _key_bytes(delta, rho, q: int, p: int) -> bytes:
    flat = [v for row in delta for v in row] + [v for row in rho for v in row]
    if q > 255 or p > 255:
        if q > 0xFFFF or p > 0xFFFF:
            raise SizeLimitError(
                "element machine with %d states exceeds the key encoding" % q
            )
        head = bytes([2, q >> 8, q & 0xFF, p >> 8, p & 0xFF])
        return head + b"".join(v.to_bytes(2, "big") for v in flat)
    return bytes([1, 0, q, 0, p]) + bytes(flat)


def _pointed_canonical(delta_rows, rho_rows, point: int, p: int) -> Element:
    """Canonicalize a pointed machine whose nodes are all reachable from
    ``point``: minimize, then relabel breadth-first (letters ascending)."""
    class_of, count = refine_partition(
        [tuple(row) for row in rho_rows], delta_rows
    )
    reps = [-1] * count
    for idx, cls in enumerate(class_of):
        if reps[cls] < 0:
            reps[cls] = idx
    order_of = [-1] * count
    start = class_of[point]
    order_of[start] = 0
    queue = [start]
    head = 0
    while head < len(queue):
        cls = queue[head]
        head += 1
        drow = delta_rows[reps[cls]]
        for i in range(p):
            succ = class_of[drow[i]]
            if order_of[succ] < 0:
                order_of[succ] = len(queue)
                queue.append(succ)
    delta = [None] * count
    rho = [None] * count
    for cls in queue:
        rep = reps[cls]
        new = order_of[cls]
        delta[new] = tuple(order_of[class_of[delta_rows[rep][i]]] for i in range(p))
        rho[new] = tuple(rho_rows[rep])
    key = _key_bytes(delta, rho, count, p)
    return Element(MealyMachine(delta, rho), 0, key)


def element_of_word(m: MealyMachine, word) -> Element:
    """Element induced by a non-empty word of states.

    Built from the reachable part of the word machine: nodes are state
    words, the arc on letter ``i`` threads ``i`` through the word.
    """
    word = tuple(int(x) for x in word)
    if not word:
        raise PreconditionError("empty word has no element (no empty product)")
    for x in word:
        if not 0 <= x < m.q:
            raise PreconditionError("state %d out of range" % x)
    p = m.p
    delta_m, rho_m = m.delta, m.rho
    index = {word: 0}
    words = [word]
    delta_rows = []
    rho_rows = []
    head = 0
    while head < len(words):
        current = words[head]
        head += 1
        drow = []
        rrow = []
        for i in range(p):
            letter = i
            succ = []
            for x in current:
                succ.append(delta_m[x][letter])
                letter = rho_m[x][letter]
            succ = tuple(succ)
            target = index.get(succ)
            if target is None:
                target = len(words)
                index[succ] = target
                words.append(succ)
            drow.append(target)
            rrow.append(letter)
        delta_rows.append(drow)
        rho_rows.append(rrow)
    return _pointed_canonical(delta_rows, rho_rows, 0, p)


def _compose_counted(e1: Element, e2: Element) -> tuple[Element, int]:
    p = e1.machine.p
    d1, r1 = e1.machine.delta, e1.machine.rho
    d2, r2 = e2.machine.delta, e2.machine.rho
    start = (e1.point, e2.point)
    index = {start: 0}
    nodes = [start]
    delta_rows = []
    rho_rows = []
    head = 0
    while head < len(nodes):
        x, y = nodes[head]
        head += 1
        d1x, r1x = d1[x], r1[x]
        d2y, r2y = d2[y], r2[y]
        drow = []
        rrow = []
        for i in range(p):
            mid = r1x[i]
            succ = (d1x[i], d2y[mid])
            target = index.get(succ)
            if target is None:
                target = len(nodes)
                index[succ] = target
                nodes.append(succ)
            drow.append(target)
            rrow.append(r2y[mid])
        delta_rows.append(drow)
        rho_rows.append(rrow)
    return _pointed_canonical(delta_rows, rho_rows, 0, p), len(nodes)


def compose(e1: Element, e2: Element) -> Element:
    """Element applying e1 first, then e2."""
    if e1.machine.p != e2.machine.p:
        raise PreconditionError(
            "cannot compose elements over different alphabets (%d vs %d)"
            % (e1.machine.p, e2.machine.p)
        )
    return _compose_counted(e1, e2)[0]


def identity_element(p: int) -> Element:
    if p < 1:
        raise PreconditionError("need p >= 1")
    return _pointed_canonical([[0] * p], [list(range(p))], 0, p)


def is_identity(e: Element) -> bool:
    return e.machine.q == 1 and e.machine.rho[0] == tuple(range(e.machine.p))


@dataclass(frozen=True)
class ElementOrder:
    status: str  # finite | budget-exceeded
    index: int | None  # least i with e^i = e^{i+period}
    period: int | None
    order: int | None  # least n with e^n the identity, if any


def element_order(e: Element, budget: int = 10_000) -> ElementOrder:
    """Eventual period of the powers of ``e`` (index, period), plus the
    group-sense order when some power is the identity."""
    seen = {e.key: 1}
    order = 1 if is_identity(e) else None
    current = e
    k = 1
    while k < budget:
        current = compose(current, e)
        k += 1
        if order is None and is_identity(current):
            order = k
        first = seen.get(current.key)
        if first is not None:
            return ElementOrder(FINITE, first, k - first, order)
        seen[current.key] = k
    return ElementOrder(BUDGET_EXCEEDED, None, None, order)


@dataclass(frozen=True)
class EnumerationResult:
    status: str  # finite | budget-exceeded
    order: int | None
    elements_seen: int
    max_word_length: int
    budget_used: int
    work_used: int
    limit: str | None  # "elements" or "work" when budget-exceeded


class _Closure:
    """Breadth-first closure of the generator set under composition.

    Elements get dense integer ids in discovery order; ``mult`` holds one
    row per processed element with the id of its product by each
    generator, so finished closures double as multiplication tables.
    """

    def __init__(self, genm: MealyMachine):
        mm = minimize(genm)
        self.p = mm.p
        gen_elements = []
        self.key2eid: dict[bytes, int] = {}
        self.elements: list[Element] = []
        self.level_of: list[int] = []
        self.gen_eids: list[int] = []
        for x in range(mm.q):
            elem = element_of_word(mm, (x,))
            eid = self.key2eid.get(elem.key)
            if eid is None:
                eid = len(self.elements)
                self.key2eid[elem.key] = eid
                self.elements.append(elem)
                self.level_of.append(1)
            if eid not in self.gen_eids:
                self.gen_eids.append(eid)
        self.gen_elements = [self.elements[g] for g in self.gen_eids]
        self.mult: list[int] = []
        self.processed = 0
        self.work = 0

    def run(self, budget, work_limit, max_level=None):
        """Process elements in id order until closed or a limit trips.

        Returns the status string; processing stops before elements of
        level ``max_level`` (their products are never needed).
        """
        gens = self.gen_elements
        while self.processed < len(self.elements):
            eid = self.processed
            if max_level is not None and self.level_of[eid] >= max_level:
                return FINITE
            element = self.elements[eid]
            next_level = self.level_of[eid] + 1
            for gen in gens:
                product, visited = _compose_counted(element, gen)
                self.work += visited
                target = self.key2eid.get(product.key)
                if target is None:
                    target = len(self.elements)
                    self.key2eid[product.key] = target
                    self.elements.append(product)
                    self.level_of.append(next_level)
                self.mult.append(target)
            self.processed += 1
            if budget is not None and len(self.elements) > budget:
                return "elements"
            if work_limit is not None and self.work > work_limit:
                return "work"
        return FINITE


def enumerate_order(
    m: MealyMachine,
    mode: str = "semigroup",
    budget: int | None = DEFAULT_BUDGET,
    work_limit: int | None = DEFAULT_WORK_LIMIT,
) -> EnumerationResult:
    """Count the elements generated by the machine's states.

    In group mode the machine must be invertible and the inverses are
    added to the generators, so the identity is always reached and the
    count is the group order.  A finite result is exact; otherwise the
    count stops at the element budget or at the work guard.
    """
    if mode == "group":
        if not is_invertible(m):
            raise PreconditionError("group mode requires an invertible machine")
        genm = disjoint_union(m, inverse(m))
    elif mode == "semigroup":
        genm = m
    else:
        raise ValueError("mode must be 'semigroup' or 'group'")
    closure = _Closure(genm)
    outcome = closure.run(budget, work_limit)
    count = len(closure.elements)
    max_len = max(closure.level_of) if closure.level_of else 0
    if outcome == FINITE:
        return EnumerationResult(FINITE, count, count, max_len, count, closure.work, None)
    return EnumerationResult(
        BUDGET_EXCEEDED, None, count, max_len, count, closure.work, outcome
    )


def growth_series(
    m: MealyMachine,
    max_n: int,
    mode: str = "semigroup",
    budget: int | None = None,
    work_limit: int | None = None,
) -> list[int]:
    """Number of distinct elements among words of length exactly 1..max_n."""
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    if mode == "group":
        if not is_invertible(m):
            raise PreconditionError("group mode requires an invertible machine")
        genm = disjoint_union(m, inverse(m))
    elif mode == "semigroup":
        genm = m
    else:
        raise ValueError("mode must be 'semigroup' or 'group'")
    closure = _Closure(genm)
    outcome = closure.run(budget, work_limit, max_level=max_n)
    if outcome != FINITE:
        raise SizeLimitError("growth computation exceeded the %s limit" % outcome)
    gens = closure.gen_eids
    width = len(gens)
    mult = closure.mult
    current = set(gens)
    counts = [len(current)]
    for _ in range(1, max_n):
        nxt = set()
        for eid in current:
            base = eid * width
            for offset in range(width):
                nxt.add(mult[base + offset])
        current = nxt
        counts.append(len(current))
    return counts
