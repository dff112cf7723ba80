"""Exhaustive search for Ulrich partitions of a given type.

Two independent engines:

* ``baseline_oracle`` enumerates every canonical partition of the type inside
  the collision-time windows and filters by the Ulrich test.  It is simple
  enough to trust outright but only feasible for small dimension (N <= 14);
  its role is to certify the fast engine on small types.

* ``time_branching_search`` walks times 1..N in order.  At each state the
  smallest uncovered time t0 must be realized by a collision involving at
  least one entry not yet placed, and the geometry of constant-velocity
  motion forces where that entry can sit:

  - one new entry in block b meeting an already-placed entry must sit, at
    time t0, exactly at the highest position among placed entries of later
    blocks (it descends faster than they do, so anything it sits below was
    crossed earlier, double-booking a covered time), or symmetrically at the
    lowest position among placed entries of earlier blocks;

  - two new entries in blocks i < j meeting each other range over a finite
    window of common positions, each placed entry contributing a two-sided
    bound because every pair must cross at an integer time in [t0, N].

  Every branch is validated by computing the new entry's crossing times with
  all placed entries: each must be an integer in [t0, N] whose slot is still
  free.  The very first move (time 1, nothing placed) pins the meeting
  position to 0, which fixes the translation gauge, so each equivalence
  class is discovered exactly once.  Partitions are reported in canonical
  form (smallest entry 0).

Both engines report equivalence classes; symmetric partners are separate
classes unless equal as partitions.
"""

from __future__ import annotations

import itertools
import json
import multiprocessing
import os
import time
from dataclasses import dataclass, field

from . import core
from .core import BlockedPartition, FlagType


@dataclass(frozen=True)
class SearchLimits:
    """Resource caps for a search; None means unlimited."""

    budget_seconds: float | None = None
    max_nodes: int | None = None


@dataclass(frozen=True)
class SearchSpec:
    """A search request: what type to search and under what resources."""

    type: FlagType
    limits: SearchLimits = field(default_factory=SearchLimits)
    workers: int = 1
    method: str = "auto"


@dataclass(frozen=True)
class SearchReport:
    """Outcome of one type search.

    ``completed`` is False when a resource limit stopped the search early, in
    which case ``classes`` is a lower bound, not a classification.
    """

    type: FlagType
    classes: tuple[BlockedPartition, ...]
    nodes: int
    elapsed: float
    completed: bool

    @property
    def count(self) -> int:
        return len(self.classes)


class BudgetExhausted(Exception):
    """Raised internally when a limit trips; callers receive completed=False."""


def report_to_dict(report: SearchReport) -> dict:
    return {
        "schema": 1,
        "type": list(report.type.lengths),
        "classes": [core.format_partition(P) for P in report.classes],
        "count": report.count,
        "nodes": report.nodes,
        "elapsed": round(report.elapsed, 3),
        "completed": report.completed,
    }


def report_from_dict(data: dict) -> SearchReport:
    ft = FlagType(tuple(data["type"]))
    classes = tuple(core.parse_partition(s) for s in data["classes"])
    return SearchReport(ft, classes, data["nodes"], data["elapsed"],
                        data["completed"])


# --------------------------------------------------------------------------
# Baseline oracle
# --------------------------------------------------------------------------

def _schedule_ok(blocks, N: int) -> bool:
    """Exact Ulrich test on integer entries, specialized for speed.

    Every cross-block pair must meet at an integer time in [1, N], all N
    times distinct (hence covering [1, N]).
    """
    covered = 0
    for i, bi in enumerate(blocks):
        for j in range(i + 1, len(blocks)):
            d = j - i
            for x in bi:
                for y in blocks[j]:
                    t, rem = divmod(x - y, d)
                    if rem or t < 1 or t > N:
                        return False
                    bit = 1 << t
                    if covered & bit:
                        return False
                    covered |= bit
    return True


def _window_candidates(ft: FlagType):
    """Yield every canonical entry tuple of the given type inside the windows.

    Canonical means smallest entry 0 (it lives in the last block).  An entry
    of block i must reach position 0 by time N, bounding it by N*(r-i); the
    remaining entries of the last block are bounded by the entries above.
    """
    r = ft.r
    N = ft.dimension
    lengths = ft.lengths

    def rec(i, floor, acc):
        # Blocks are generated from the last (i = r) to the first (i = 0);
        # floor is the value every new entry must exceed.
        if i < 0:
            yield tuple(reversed(acc))
            return
        if i == r:
            pool = range(1, N)
            for picked in itertools.combinations(pool, lengths[i] - 1):
                yield from rec(i - 1, max(picked, default=0),
                               acc + [tuple(sorted(picked + (0,), reverse=True))])
        else:
            ceiling = N * (r - i)
            pool = range(floor + 1, ceiling + 1)
            for picked in itertools.combinations(pool, lengths[i]):
                yield from rec(i - 1, picked[-1],
                               acc + [tuple(sorted(picked, reverse=True))])

    yield from rec(r, 0, [])


def baseline_oracle(ft: FlagType) -> tuple[BlockedPartition, ...]:
    """Classify a type by direct enumeration.  Requires N <= 14."""
    ft = FlagType(ft.lengths)
    if not ft.all_positive:
        raise ValueError("search types need every block nonempty")
    N = ft.dimension
    if N > 14:
        raise ValueError(f"baseline oracle is limited to N <= 14, got N = {N}")
    found = [core.from_blocks(blocks)
             for blocks in _window_candidates(ft)
             if _schedule_ok(blocks, N)]
    return tuple(sorted(found, key=lambda P: P.entries))


# --------------------------------------------------------------------------
# Time-branching engine
# --------------------------------------------------------------------------

class _Searcher:
    """Depth-first walk over partial placements, one per equivalence class.

    ``det`` holds the placed entries per block; ``covered`` is a bitmask with
    bit t-1 set when time t is realized by a placed pair.  Snapshots taken at
    a fixed depth let the search resume in worker processes.
    """

    def __init__(self, ft: FlagType, deadline: float | None,
                 max_nodes: int | None):
        self.lengths = ft.lengths
        self.r = ft.r
        self.N = ft.dimension
        self.total = sum(ft.lengths)
        self.full_bit = 1 << self.N
        self.det = [[] for _ in ft.lengths]
        self.covered = 0
        self.placed = 0
        self.nodes = 0
        self.deadline = deadline
        self.max_nodes = max_nodes
        self.found: list[tuple[tuple[int, ...], ...]] = []
        self.frontier: list | None = None
        self.frontier_depth = 0

    # -- bookkeeping --------------------------------------------------------

    def _tick(self):
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise BudgetExhausted
        if self.deadline is not None and self.nodes % 1024 == 0:
            if time.monotonic() > self.deadline:
                raise BudgetExhausted

    def _record(self):
        blocks = [sorted(block, reverse=True) for block in self.det]
        low = blocks[-1][-1]
        self.found.append(tuple(tuple(v - low for v in block)
                                for block in blocks))

    def snapshot(self):
        return ([list(block) for block in self.det], self.covered, self.placed)

    def restore(self, state):
        det, covered, placed = state
        self.det = [list(block) for block in det]
        self.covered = covered
        self.placed = placed

    # -- validation ---------------------------------------------------------

    def _cross_mask(self, b: int, x: int, t0: int, acc: int) -> int:
        """Crossing-time bits of a new entry x in block b against placements.

        Returns -1 if any crossing is fractional, out of [t0, N], or lands on
        a time already covered (or accumulated in acc); otherwise the updated
        accumulator.
        """
        N = self.N
        covered = self.covered
        for m, block in enumerate(self.det):
            if m == b or not block:
                continue
            d = m - b
            if d > 0:
                for v in block:
                    t, rem = divmod(x - v, d)
                    if rem or t < t0 or t > N:
                        return -1
                    bit = 1 << (t - 1)
                    if (covered | acc) & bit:
                        return -1
                    acc |= bit
            else:
                for v in block:
                    t, rem = divmod(v - x, -d)
                    if rem or t < t0 or t > N:
                        return -1
                    bit = 1 << (t - 1)
                    if (covered | acc) & bit:
                        return -1
                    acc |= bit
        return acc

    def _try(self, adds, bits):
        """Place entries, recurse, undo.  adds = [(block, value), ...]."""
        for b, x in adds:
            self.det[b].append(x)
        self.covered |= bits
        self.placed += len(adds)
        self._dfs()
        self.placed -= len(adds)
        self.covered &= ~bits
        for b, _ in reversed(adds):
            self.det[b].pop()

    # -- branching ----------------------------------------------------------

    def _dfs(self):
        self._tick()
        if self.placed == self.total:
            self._record()
            return
        if self.frontier is not None and self.placed >= self.frontier_depth:
            self.frontier.append(self.snapshot())
            return
        t0 = (((self.covered + 1) & ~self.covered)).bit_length()
        if t0 > self.N:
            return
        r = self.r
        det = self.det
        lengths = self.lengths
        vm = [r - m for m in range(r + 1)]
        pos = [[v - t0 * vm[m] for v in block] for m, block in enumerate(det)]
        if self.placed == 0:
            # Gauge-fixing move: the pair realizing time 1 sits at position 0.
            for i in range(r):
                if not lengths[i]:
                    continue
                for j in range(i + 1, r + 1):
                    if not lengths[j]:
                        continue
                    x = t0 * vm[i]
                    y = t0 * vm[j]
                    self._try([(i, x), (j, y)], 1 << (t0 - 1))
            return

        # (B) one new entry meets a placed one.
        for b in range(r + 1):
            if len(det[b]) >= lengths[b]:
                continue
            later = [q for m in range(b + 1, r + 1) for q in pos[m]]
            earlier = [q for m in range(b) for q in pos[m]]
            targets = set()
            if later:
                targets.add(max(later))
            if earlier:
                targets.add(min(earlier))
            for q in targets:
                x = q + t0 * vm[b]
                if x in det[b]:
                    continue
                acc = self._cross_mask(b, x, t0, 0)
                if acc >= 0:
                    self._try([(b, x)], acc)

        # (D) two new entries meet each other at a common position p.
        span = self.N - t0
        for i in range(r):
            if len(det[i]) >= lengths[i]:
                continue
            for j in range(i + 1, r + 1):
                if len(det[j]) >= lengths[j]:
                    continue
                lo, hi = None, None
                for m, qs in enumerate(pos):
                    for q in qs:
                        for s in (i, j):
                            if m > s:
                                wlo, whi = q + 1, q + span * (m - s)
                            elif m < s:
                                wlo, whi = q - span * (s - m), q - 1
                            else:
                                continue
                            if lo is None or wlo > lo:
                                lo = wlo
                            if hi is None or whi < hi:
                                hi = whi
                if lo is None or lo > hi:
                    continue
                for p in range(lo, hi + 1):
                    x = p + t0 * vm[i]
                    y = p + t0 * vm[j]
                    acc = self._cross_mask(i, x, t0, 1 << (t0 - 1))
                    if acc < 0:
                        continue
                    acc = self._cross_mask(j, y, t0, acc)
                    if acc < 0:
                        continue
                    self._try([(i, x), (j, y)], acc)

    # -- entry points -------------------------------------------------------

    def run(self) -> bool:
        try:
            self._dfs()
            return True
        except BudgetExhausted:
            return False

    def run_frontier(self, depth: int):
        """Collect resumable states at the given placement depth."""
        self.frontier = []
        self.frontier_depth = depth
        try:
            self._dfs()
            done = True
        except BudgetExhausted:
            done = False
        states = self.frontier
        self.frontier = None
        return states, done


def _blocks_to_partition(ft: FlagType, blocks) -> BlockedPartition:
    return core.from_blocks(blocks)


def _subtree_worker(args):
    lengths, state, deadline, max_nodes = args
    s = _Searcher(FlagType(lengths), deadline, max_nodes)
    s.restore(state)
    completed = s.run()
    return s.found, s.nodes, completed


def time_branching_search(ft: FlagType, limits: SearchLimits | None = None,
                          workers: int = 1) -> SearchReport:
    """Classify a type with the time-branching engine.

    With workers > 1 the tree is split at a shallow depth and subtrees are
    searched in parallel (fork-based, Linux).  Results are identical to the
    single-process run.
    """
    ft = FlagType(ft.lengths)
    if not ft.all_positive:
        raise ValueError("search types need every block nonempty")
    limits = limits or SearchLimits()
    start = time.monotonic()
    deadline = (start + limits.budget_seconds
                if limits.budget_seconds is not None else None)
    searcher = _Searcher(ft, deadline, limits.max_nodes)
    if workers <= 1 or sum(ft.lengths) <= 3:
        completed = searcher.run()
        found, nodes = searcher.found, searcher.nodes
    else:
        depth = min(4, sum(ft.lengths) - 1)
        states, completed = searcher.run_frontier(depth)
        found, nodes = list(searcher.found), searcher.nodes
        if completed and states:
            budget = limits.max_nodes
            jobs = [(ft.lengths, st, deadline, budget) for st in states]
            ctx = multiprocessing.get_context("fork")
            with ctx.Pool(workers) as pool:
                for sub_found, sub_nodes, sub_done in pool.imap_unordered(
                        _subtree_worker, jobs, chunksize=8):
                    found.extend(sub_found)
                    nodes += sub_nodes
                    completed = completed and sub_done
    classes = tuple(sorted(
        (core.from_blocks(blocks) for blocks in set(found)),
        key=lambda P: P.entries))
    assert len(classes) == len(found), "a class was generated twice"
    return SearchReport(ft, classes, nodes, time.monotonic() - start,
                        completed)


def enumerate_ulrich(spec: SearchSpec | FlagType,
                     limits: SearchLimits | None = None,
                     workers: int = 1, method: str = "auto") -> SearchReport:
    """Classify a type, dispatching on the requested method.

    ``auto`` and ``time-branching`` run the fast engine; ``baseline`` runs
    the enumeration oracle (N <= 14 only).
    """
    if isinstance(spec, SearchSpec):
        ft, limits, workers, method = (spec.type, spec.limits, spec.workers,
                                       spec.method)
    else:
        ft = FlagType(spec.lengths)
        limits = limits or SearchLimits()
    if method in ("auto", "time-branching"):
        return time_branching_search(ft, limits, workers)
    if method == "baseline":
        start = time.monotonic()
        classes = baseline_oracle(ft)
        return SearchReport(FlagType(ft.lengths), classes, 0,
                            time.monotonic() - start, True)
    raise ValueError(f"unknown method {method!r}")


# --------------------------------------------------------------------------
# Sweeps
# --------------------------------------------------------------------------

def _types_with_blocks(num_blocks: int, total: int):
    """All compositions of `total` into `num_blocks` positive parts."""
    for cuts in itertools.combinations(range(1, total), num_blocks - 1):
        bounds = (0,) + cuts + (total,)
        yield FlagType(tuple(b - a for a, b in zip(bounds, bounds[1:])))


def _search_type_worker(args):
    lengths, budget_seconds, max_nodes = args
    limits = SearchLimits(budget_seconds=budget_seconds, max_nodes=max_nodes)
    report = time_branching_search(FlagType(lengths), limits, workers=1)
    return report_to_dict(report)


def _run_type_sweep(types, limits: SearchLimits, workers: int,
                    checkpoint_path: str | None = None):
    """Search many types, optionally in parallel, with JSONL checkpointing."""
    done: dict[tuple[int, ...], SearchReport] = {}
    if checkpoint_path and os.path.exists(checkpoint_path):
        with open(checkpoint_path) as fh:
            for line in fh:
                if line.strip():
                    report = report_from_dict(json.loads(line))
                    done[report.type.lengths] = report
    todo = [ft for ft in types if ft.lengths not in done]
    sink = open(checkpoint_path, "a") if checkpoint_path else None

    def note(report: SearchReport):
        done[report.type.lengths] = report
        if sink:
            sink.write(json.dumps(report_to_dict(report)) + "\n")
            sink.flush()

    try:
        if workers <= 1:
            for ft in todo:
                note(time_branching_search(ft, limits, workers=1))
        else:
            jobs = [(ft.lengths, limits.budget_seconds, limits.max_nodes)
                    for ft in todo]
            ctx = multiprocessing.get_context("fork")
            with ctx.Pool(workers) as pool:
                for data in pool.imap_unordered(_search_type_worker, jobs):
                    note(report_from_dict(data))
    finally:
        if sink:
            sink.close()
    return done


def verify_no_multistep(max_total_length: int,
                        limits: SearchLimits | None = None,
                        workers: int = 1,
                        checkpoint_path: str | None = None):
    """Search every type with >= 4 blocks up to the given total length.

    Returns {lengths: SearchReport}.  The expectation (checked by callers,
    not here) is that every report is empty: Ulrich partitions stop at three
    blocks.
    """
    limits = limits or SearchLimits()
    types = [ft
             for blocks in range(4, max_total_length + 1)
             for total in range(blocks, max_total_length + 1)
             for ft in _types_with_blocks(blocks, total)]
    return _run_type_sweep(types, limits, workers, checkpoint_path)


def verify_conjecture_sweep(max_sum: int,
                            limits: SearchLimits | None = None,
                            workers: int = 1,
                            checkpoint_path: str | None = None):
    """Search every three-block type with all lengths >= 3, sum <= max_sum.

    The classification of types with a block of length <= 2 is complete; the
    conjecture is that nothing exists beyond it, i.e. all these searches come
    back empty.
    """
    limits = limits or SearchLimits()
    types = [FlagType(t)
             for total in range(9, max_sum + 1)
             for t in itertools.product(range(3, total + 1), repeat=3)
             if sum(t) == total]
    return _run_type_sweep(types, limits, workers, checkpoint_path)


def symmetric_pairing(classes):
    """Group classes of one type sweep by the mirror operation.

    Returns (pairs, fixed) where pairs holds {P, symmetric(P)} sets with the
    two members distinct, and fixed holds self-symmetric classes.  For a type
    that is not its own reverse the mirror lives in the reversed type and
    everything lands in pairs with a None partner.
    """
    canon = {P: core.canonicalize(core.symmetric(P)) for P in classes}
    seen, pairs, fixed = set(), [], []
    for P, Q in canon.items():
        if P in seen:
            continue
        if Q == P:
            fixed.append(P)
            seen.add(P)
        elif Q in canon:
            pairs.append((P, Q))
            seen.update((P, Q))
        else:
            pairs.append((P, None))
            seen.add(P)
    return pairs, fixed
