"""Exhaustive censuses: enumeration up to isomorphism, class partition,
criteria sweep, and CSV table emission."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from .core import MealyMachine, SizeLimitError, classify, is_invertible
from .criteria import (
    DecideConfig,
    FINITE,
    INFINITE,
    cayley_identifications,
    cycles_criterion,
    decide,
    finitary_criterion,
    limitary_cycles_criterion,
    sidki_criterion,
)
from .minimize import is_md_trivial
from .semigroup import FINITE as ENUM_FINITE
from .semigroup import enumerate_order
from .transform import dual, inverse

CLASS_TAGS = ("IJIR", "JI", "JIR", "BIR", "DIJIR", "DJI", "N")

FILTERS = ("all", "invertible", "reversible", "inv_or_rev")

RAW_LIMIT = 100_000_000
_NUMPY_THRESHOLD = 1_000_000

ROW_ORDER = (
    "Finitary",
    "Sidki",
    "Limitary cycles",
    "Cayley+-",
    "Dual Cayley+-",
    "union (previous)",
    "md-trivial",
    "Cycles",
    "+Reduce",
    "+Sum",
    "+Dual",
    "union (new)",
    "union (total)",
)

GROUND_TRUTH_ROWS = ("BFS finite", "BFS unresolved", "BFS contradictions")

_PREVIOUS_ROWS = ("Finitary", "Sidki", "Limitary cycles", "Cayley+-", "Dual Cayley+-")
_NEW_ROWS = ("md-trivial", "Cycles", "+Reduce", "+Sum", "+Dual")


def partition_class(m: MealyMachine) -> str:
    """One of the seven disjoint classes, tested in priority order."""
    flags = classify(m)
    if flags.bireversible:
        return "BIR"
    if flags.ir:
        return "JIR"
    if flags.invertible:
        iflags = classify(inverse(m))
        if iflags.ir and not iflags.bireversible:
            return "IJIR"
    d = dual(m)
    dflags = classify(d)
    if dflags.invertible and not dflags.ir:
        diflags = classify(inverse(d))
        if diflags.ir and not diflags.bireversible:
            return "DIJIR"
    if flags.invertible:
        return "JI"
    if dflags.invertible:
        return "DJI"
    return "N"


def _raw_size(q: int, p: int, filt: str) -> int:
    qp = q * p
    perms_q = 1
    for v in range(2, q + 1):
        perms_q *= v
    perms_p = 1
    for v in range(2, p + 1):
        perms_p *= v
    if filt == "all":
        return q**qp * p**qp
    if filt == "invertible":
        return q**qp * perms_p**q
    if filt == "reversible":
        return perms_q**p * p**qp
    if filt == "inv_or_rev":
        inv = q**qp * perms_p**q
        rev_noninv = perms_q**p * (p**qp - perms_p**q)
        return inv + rev_noninv
    raise ValueError("unknown filter %r" % filt)


def _relabelings(q: int, p: int):
    """All non-identity (sigma, sigma_inv, tau, tau_inv) tuples."""
    out = []
    for sigma in itertools.permutations(range(q)):
        sigma_inv = [0] * q
        for x in range(q):
            sigma_inv[sigma[x]] = x
        for tau in itertools.permutations(range(p)):
            if sigma == tuple(range(q)) and tau == tuple(range(p)):
                continue
            tau_inv = [0] * p
            for i in range(p):
                tau_inv[tau[i]] = i
            out.append((sigma, tuple(sigma_inv), tau, tuple(tau_inv)))
    return out


def _all_delta_tables(q: int, p: int):
    return [tuple(flat) for flat in itertools.product(range(q), repeat=q * p)]


def _reversible_delta_tables(q: int, p: int):
    """State tables whose letter columns all permute the states."""
    tables = []
    for columns in itertools.product(itertools.permutations(range(q)), repeat=p):
        flat = tuple(columns[i][x] for x in range(q) for i in range(p))
        tables.append(flat)
    tables.sort()
    return tables


def _perm_row_rho_tables(q: int, p: int):
    """Output tables whose state rows all permute the letters."""
    return [
        tuple(v for row in rows for v in row)
        for rows in itertools.product(itertools.permutations(range(p)), repeat=q)
    ]


def _strata(q: int, p: int, filt: str):
    """Disjoint (delta tables, rho kind) streams covering the raw space.

    The rho kind is one of ``raw``, ``perm_rows``, ``raw_noninv`` and is
    materialized by the python or numpy path.
    """
    if filt == "all":
        return [(_all_delta_tables(q, p), "raw")]
    if filt == "invertible":
        return [(_all_delta_tables(q, p), "perm_rows")]
    if filt == "reversible":
        return [(_reversible_delta_tables(q, p), "raw")]
    if filt == "inv_or_rev":
        return [
            (_all_delta_tables(q, p), "perm_rows"),
            (_reversible_delta_tables(q, p), "raw_noninv"),
        ]
    raise ValueError("unknown filter %r" % filt)


def _rho_tables(q: int, p: int, kind: str):
    if kind == "perm_rows":
        return _perm_row_rho_tables(q, p)
    tables = [tuple(flat) for flat in itertools.product(range(p), repeat=q * p)]
    if kind == "raw":
        return tables
    full = set(range(p))
    return [
        flat
        for flat in tables
        if not all(set(flat[x * p : (x + 1) * p]) == full for x in range(q))
    ]


def _is_canonical(dflat, rflat, q, p, relabelings) -> bool:
    """True iff (dflat, rflat) is lexicographically minimal in its orbit."""
    base = dflat + rflat
    for sigma, sigma_inv, tau, tau_inv in relabelings:
        larger = False
        pos = 0
        for nx in range(q):
            row = sigma_inv[nx] * p
            for ni in range(p):
                value = sigma[dflat[row + tau_inv[ni]]]
                if value != base[pos]:
                    if value < base[pos]:
                        return False
                    larger = True
                    break
                pos += 1
            if larger:
                break
        if larger:
            continue
        for nx in range(q):
            row = sigma_inv[nx] * p
            for ni in range(p):
                value = tau[rflat[row + tau_inv[ni]]]
                if value != base[pos]:
                    if value < base[pos]:
                        return False
                    larger = True
                    break
                pos += 1
            if larger:
                break
    return True


def _machine_from_flats(dflat, rflat, q, p) -> MealyMachine:
    delta = [dflat[x * p : (x + 1) * p] for x in range(q)]
    rho = [rflat[x * p : (x + 1) * p] for x in range(q)]
    return MealyMachine(delta, rho)


def _enumerate_python(q, p, filt, stratum=None, delta_range=None):
    """Reference path: canonical representatives in stream order."""
    relabelings = _relabelings(q, p)
    for idx, (deltas, rho_kind) in enumerate(_strata(q, p, filt)):
        if stratum is not None and idx != stratum:
            continue
        rhos = _rho_tables(q, p, rho_kind)
        lo, hi = (0, len(deltas)) if delta_range is None else delta_range
        for dflat in deltas[lo:hi]:
            for rflat in rhos:
                if _is_canonical(dflat, rflat, q, p, relabelings):
                    yield _machine_from_flats(dflat, rflat, q, p)


def _np_decode(np, count, width, base, dtype):
    """Rows 0..count-1 as base-``base`` digit arrays of ``width`` columns."""
    out = np.empty((count, width), dtype=dtype)
    values = np.arange(count, dtype=np.int64)
    for col in range(width - 1, -1, -1):
        out[:, col] = values % base
        values //= base
    return out


def _np_pack(np, D, R, base):
    key = np.zeros(len(D), dtype=np.uint64)
    b = np.uint64(base)
    for col in range(D.shape[1]):
        key = key * b + D[:, col].astype(np.uint64)
    for col in range(R.shape[1]):
        key = key * b + R[:, col].astype(np.uint64)
    return key


def _np_canonical_mask(np, D, R, q, p, relabelings):
    base = max(q, p)
    if base ** (2 * q * p) >= 2**63:
        raise SizeLimitError("tables too wide for packed canonical keys")
    key0 = _np_pack(np, D, R, base)
    keep = np.ones(len(D), dtype=bool)
    for sigma, sigma_inv, tau, tau_inv in relabelings:
        cols = [sigma_inv[x] * p + tau_inv[i] for x in range(q) for i in range(p)]
        sig = np.array(sigma, dtype=D.dtype)
        ta = np.array(tau, dtype=R.dtype)
        D2 = sig[D[:, cols]]
        R2 = ta[R[:, cols]]
        keep &= key0 <= _np_pack(np, D2, R2, base)
    return keep


def _np_rho_tables(np, q, p, kind, dtype):
    qp = q * p
    if kind == "perm_rows":
        return np.array(_perm_row_rho_tables(q, p), dtype=dtype)
    R = _np_decode(np, p**qp, qp, p, dtype)
    if kind == "raw":
        return R
    perm_mask = np.ones(len(R), dtype=bool)
    for x in range(q):
        row = R[:, x * p : (x + 1) * p]
        is_perm = np.ones(len(R), dtype=bool)
        for i in range(p):
            for j in range(i + 1, p):
                is_perm &= row[:, i] != row[:, j]
        perm_mask &= is_perm
    return R[~perm_mask]


def _enumerate_numpy(q, p, filt, stratum=None, delta_range=None, chunk_rows=400_000):
    import numpy as np

    relabelings = _relabelings(q, p)
    dtype = np.int8
    for idx, (deltas, rho_kind) in enumerate(_strata(q, p, filt)):
        if stratum is not None and idx != stratum:
            continue
        R_all = _np_rho_tables(np, q, p, rho_kind, dtype)
        n_rho = len(R_all)
        lo, hi = (0, len(deltas)) if delta_range is None else delta_range
        block_deltas = deltas[lo:hi]
        per_chunk = max(1, chunk_rows // max(1, n_rho))
        for start in range(0, len(block_deltas), per_chunk):
            block = block_deltas[start : start + per_chunk]
            D_block = np.array(block, dtype=dtype)
            D = np.repeat(D_block, n_rho, axis=0)
            R = np.tile(R_all, (len(block), 1))
            keep = _np_canonical_mask(np, D, R, q, p, relabelings)
            for row in np.nonzero(keep)[0]:
                dflat = tuple(int(v) for v in D[row])
                rflat = tuple(int(v) for v in R[row])
                yield _machine_from_flats(dflat, rflat, q, p)


def enumerate_classes(q: int, p: int, filt: str = "all", stratum=None, delta_range=None):
    """Exactly one (canonical) representative per isomorphism class.

    A raw pair of tables is kept iff its serialization is minimal over all
    joint state/letter relabelings, so the filter needs no memory of
    previously seen keys and the stream order is deterministic.  Both
    relabelings are applied together: machines that only match after
    permuting states *or* letters separately stay distinct classes.
    """
    if filt not in FILTERS:
        raise ValueError("filter must be one of %s" % (FILTERS,))
    size = _raw_size(q, p, filt)
    if size > RAW_LIMIT:
        raise SizeLimitError(
            "raw census space %d exceeds limit %d (try a stricter filter)"
            % (size, RAW_LIMIT)
        )
    if size > _NUMPY_THRESHOLD:
        return _enumerate_numpy(q, p, filt, stratum, delta_range)
    return _enumerate_python(q, p, filt, stratum, delta_range)


@dataclass
class CensusConfig:
    """``ground_truth_work`` caps composition work per machine so machines
    with unbounded element growth fail fast; the largest finite census
    orders complete within a few dozen work units, so 20k is ample."""

    decide_depth: int = 3
    jobs: int = 1
    ground_truth_budget: int | None = None
    ground_truth_work: int | None = 20_000


@dataclass
class CensusReport:
    q: int
    p: int
    filter: str
    class_counts: dict = field(default_factory=dict)
    rows: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def total(self) -> int:
        return sum(self.class_counts.get(tag, 0) for tag in CLASS_TAGS)

    def row_total(self, name: str) -> int:
        row = self.rows.get(name, {})
        return sum(row.get(tag, 0) for tag in CLASS_TAGS)

    def to_csv(self) -> str:
        """Deterministic table; runtime is deliberately not a column."""
        lines = ["criterion," + ",".join(CLASS_TAGS) + ",total"]
        lines.append(
            "classes,"
            + ",".join(str(self.class_counts.get(tag, 0)) for tag in CLASS_TAGS)
            + ",%d" % self.total()
        )
        names = [name for name in ROW_ORDER if name in self.rows]
        names += [name for name in GROUND_TRUTH_ROWS if name in self.rows]
        for name in names:
            row = self.rows[name]
            lines.append(
                name
                + ","
                + ",".join(str(row.get(tag, 0)) for tag in CLASS_TAGS)
                + ",%d" % self.row_total(name)
            )
        return "\n".join(lines) + "\n"


def _sweep_machine(m: MealyMachine, config: CensusConfig):
    """Row memberships and optional BFS ground truth for one machine.

    Direct criterion rows are not mutually exclusive.  The +Reduce/+Sum/
    +Dual rows only count machines no direct criterion decides, attributed
    to the first non-reduction step of the decision trace.
    """
    tag = partition_class(m)
    fired = set()
    verdicts = []

    if is_md_trivial(m):
        fired.add("md-trivial")
        verdicts.append(FINITE)
    v = cycles_criterion(m)
    if v.decided():
        fired.add("Cycles")
        verdicts.append(v.decision)
    v = finitary_criterion(m)
    if v.decided():
        fired.add("Finitary")
        verdicts.append(v.decision)
    if is_invertible(m):
        v = sidki_criterion(m)
        if v.decided():
            fired.add("Sidki")
            verdicts.append(v.decision)
    v = limitary_cycles_criterion(m)
    if v.decided():
        fired.add("Limitary cycles")
        verdicts.append(v.decision)
    if m.q == m.p:
        found = cayley_identifications(m)
        if "cayley" in found:
            fired.add("Cayley+-")
            verdicts.append(found["cayley"])
        if "dual-cayley" in found:
            fired.add("Dual Cayley+-")
            verdicts.append(found["dual-cayley"])

    if not fired:
        verdict = decide(m, DecideConfig(depth=config.decide_depth, budget=None))
        if verdict.decided():
            verdicts.append(verdict.decision)
            root = next((tok for tok in verdict.trace if tok != "reduce"), "reduce")
            if root.startswith("sum["):
                fired.add("+Sum")
            elif root == "dual":
                fired.add("+Dual")
            else:
                fired.add("+Reduce")

    truth = None
    if config.ground_truth_budget:
        result = enumerate_order(
            m,
            "semigroup",
            budget=config.ground_truth_budget,
            work_limit=config.ground_truth_work,
        )
        truth = result.status == ENUM_FINITE
        # only a completed enumeration is evidence; a tripped budget never
        # contradicts a Finite verdict
        if truth and INFINITE in verdicts:
            fired.add("__contradiction__")
    return tag, fired, truth


def _merge_into(report: CensusReport, tag: str, fired: set, truth):
    report.class_counts[tag] = report.class_counts.get(tag, 0) + 1

    def bump(name):
        row = report.rows.setdefault(name, {})
        row[tag] = row.get(tag, 0) + 1

    for name in _PREVIOUS_ROWS + _NEW_ROWS:
        if name in fired:
            bump(name)
    if any(name in fired for name in _PREVIOUS_ROWS):
        bump("union (previous)")
    if any(name in fired for name in _NEW_ROWS):
        bump("union (new)")
    if fired - {"__contradiction__"}:
        bump("union (total)")
    if truth is not None:
        bump("BFS finite" if truth else "BFS unresolved")
        if "__contradiction__" in fired:
            bump("BFS contradictions")


def _census_chunk(args):
    q, p, filt, stratum, delta_range, config = args
    report = CensusReport(q, p, filt)
    for m in enumerate_classes(q, p, filt, stratum, delta_range):
        tag, fired, truth = _sweep_machine(m, config)
        _merge_into(report, tag, fired, truth)
    return report


def _merge_reports(target: CensusReport, part: CensusReport):
    for tag, count in part.class_counts.items():
        target.class_counts[tag] = target.class_counts.get(tag, 0) + count
    for name, row in part.rows.items():
        mine = target.rows.setdefault(name, {})
        for tag, count in row.items():
            mine[tag] = mine.get(tag, 0) + count


def run_census(
    q: int,
    p: int,
    filt: str = "all",
    config: CensusConfig | None = None,
) -> CensusReport:
    """Enumerate, partition and sweep all criteria over one census.

    With ``jobs > 1`` each stratum's state-table list is split into index
    ranges processed by worker processes; partial counts are summed, so the
    result is identical to a single-job run.
    """
    if filt not in FILTERS:
        raise ValueError("filter must be one of %s" % (FILTERS,))
    config = config or CensusConfig()
    start = time.monotonic()
    jobs = max(1, config.jobs)
    if jobs == 1:
        report = _census_chunk((q, p, filt, None, None, config))
    else:
        tasks = []
        for idx, (deltas, _kind) in enumerate(_strata(q, p, filt)):
            n = len(deltas)
            for w in range(jobs):
                lo, hi = n * w // jobs, n * (w + 1) // jobs
                if lo < hi:
                    tasks.append((q, p, filt, idx, (lo, hi), config))
        import multiprocessing

        report = CensusReport(q, p, filt)
        with multiprocessing.get_context("fork").Pool(jobs) as pool:
            for part in pool.imap(_census_chunk, tasks):
                _merge_reports(report, part)
    report.elapsed = time.monotonic() - start
    return report
