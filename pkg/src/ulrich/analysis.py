"""Structure theory for three-block partitions.

Three-block partitions (A|B|C) admit a greedy reconstruction: an Ulrich
partition is grown from its middle block by repeatedly adding the entry that
realizes the smallest still-uncovered meeting time, and the added value is
forced (Extension rules below).  This module implements the growth steps, the
greedy word of an Ulrich partition, the sumset reformulation for singleton
middle blocks, and two boundary rules (trapezoid, rectangle) that relate a
partition to its dual.

All formulas are phrased directly on entry values, which makes them
independent of the velocity normalization used for display.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import core
from .core import BlockedPartition


@dataclass(frozen=True)
class PreUlrichTriple:
    """Entry sets (A|B|C) of a partial three-block partition.

    A and C may be empty while the triple is being grown; B is fixed
    throughout.  Entries are stored strictly decreasing per block.
    """

    a: tuple[int, ...]
    b: tuple[int, ...]
    c: tuple[int, ...]

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if not self.b:
            raise ValueError("the middle block must be nonempty")
        for block in (self.a, self.b, self.c):
            if any(x <= y for x, y in zip(block, block[1:])):
                raise ValueError("blocks must be strictly decreasing")
        if self.a and self.a[-1] <= self.b[0]:
            raise ValueError("A entries must exceed all B entries")
        if self.c and self.b[-1] <= self.c[0]:
            raise ValueError("C entries must lie below all B entries")

    @property
    def dimension(self) -> int:
        """Number of cross-block pairs of the completed triple."""
        na, nb, nc = len(self.a), len(self.b), len(self.c)
        return na * nb + na * nc + nb * nc

    def as_partition(self) -> BlockedPartition:
        return core.from_blocks((self.a, self.b, self.c))


def triple_of(P: BlockedPartition) -> PreUlrichTriple:
    """View a three-block partition as a triple."""
    if len(P.type.lengths) != 3:
        raise ValueError("expected a three-block partition")
    a, b, c = P.blocks
    return PreUlrichTriple(a, b, c)


def meeting_times(T: PreUlrichTriple) -> list[Fraction]:
    """All pairwise meeting times of the triple, exact."""
    times = [Fraction(x - y) for x in T.a for y in T.b]
    times += [Fraction(x - y, 2) for x in T.a for y in T.c]
    times += [Fraction(x - y) for x in T.b for y in T.c]
    return times


def time_set(T: PreUlrichTriple) -> set[int] | None:
    """The set of integral meeting times, or None if a time is fractional."""
    out = set()
    for t in meeting_times(T):
        if t.denominator != 1:
            return None
        out.add(int(t))
    return out


def is_pre_ulrich(T: PreUlrichTriple) -> bool:
    """Same parity across A and C, and no two pairs meet at the same time."""
    outer = T.a + T.c
    if any((x - outer[0]) % 2 for x in outer):
        return False
    ts = time_set(T)
    return ts is not None and len(ts) == T.dimension


@dataclass(frozen=True)
class Extension:
    """Result of one greedy growth step.

    The candidate triple is always constructed; `pre_ulrich` records whether
    it is still consistent, and `clashes` lists any meeting times the new
    entry double-books (empty when the step is clean).
    """

    triple: PreUlrichTriple
    letter: str
    time: int
    value: int
    pre_ulrich: bool
    clashes: tuple[Fraction, ...]


def _smallest_uncovered(T: PreUlrichTriple) -> int:
    ts = time_set(T)
    if ts is None:
        raise ValueError("triple has a fractional meeting time")
    t0 = 1
    while t0 in ts:
        t0 += 1
    return t0


def _extend(T: PreUlrichTriple, letter: str) -> Extension:
    t0 = _smallest_uncovered(T)
    if letter == "a":
        if not (T.b or T.c):
            raise ValueError("cannot add to A: B and C are both empty")
        # Largest position among B and C at time t0, pulled back to an entry.
        value = max([b + t0 for b in T.b] + [c + 2 * t0 for c in T.c])
        candidate = PreUlrichTriple(
            tuple(sorted(T.a + (value,), reverse=True)), T.b, T.c)
        new_times = ([Fraction(value - b) for b in T.b]
                     + [Fraction(value - c, 2) for c in T.c])
    elif letter == "c":
        if not (T.a or T.b):
            raise ValueError("cannot add to C: A and B are both empty")
        value = min([a - 2 * t0 for a in T.a] + [b - t0 for b in T.b])
        candidate = PreUlrichTriple(
            T.a, T.b, tuple(sorted(T.c + (value,), reverse=True)))
        new_times = ([Fraction(a - value, 2) for a in T.a]
                     + [Fraction(b - value) for b in T.b])
    else:
        raise ValueError(f"letter must be 'a' or 'c', got {letter!r}")
    old = {Fraction(t) for t in (time_set(T) or ())}
    clashes, fresh = [], set(old)
    for t in new_times:
        if t.denominator != 1 or t in fresh:
            clashes.append(t)
        fresh.add(t)
    return Extension(candidate, letter, t0, value,
                     is_pre_ulrich(candidate), tuple(sorted(set(clashes))))


def add_a(T: PreUlrichTriple) -> Extension:
    """Add the forced A entry meeting the triple at its first uncovered time."""
    return _extend(T, "a")


def add_c(T: PreUlrichTriple) -> Extension:
    """Add the forced C entry meeting the triple at its first uncovered time."""
    return _extend(T, "c")


@dataclass(frozen=True)
class GreedyWord:
    """The a/c growth sequence that reconstructs an Ulrich triple from B."""

    letters: str

    def __str__(self) -> str:
        return self.letters


def greedy_word(P: BlockedPartition) -> GreedyWord:
    """Reconstruct the growth word of a three-block Ulrich partition.

    The word is translation-invariant.  At each step the full partition's
    collision at the current uncovered time tells which side grows; the value
    produced by the corresponding Extension rule must match the partition's
    actual entry, which is asserted.
    """
    full = triple_of(P)
    if not core.is_ulrich(P):
        raise ValueError("greedy reconstruction is defined for Ulrich input")
    by_time: dict[int, tuple[int, int, int]] = {}
    for ev in core.collision_schedule(P).events:
        bi, k = ev.left
        bj, h = ev.right
        x = P.blocks[bi][k]
        y = P.blocks[bj][h]
        by_time[int(ev.time)] = (bi, bj, x, y)
    sub = PreUlrichTriple((), full.b, ())
    letters = []
    while len(sub.a) < len(full.a) or len(sub.c) < len(full.c):
        t0 = _smallest_uncovered(sub)
        bi, bj, x, y = by_time[t0]
        if (bi, bj) == (0, 1):
            letter = "a"
        elif (bi, bj) == (1, 2):
            letter = "c"
        elif x in sub.a:
            letter = "c"
        elif y in sub.c:
            letter = "a"
        else:
            raise AssertionError(
                f"collision at t={t0} involves two unplaced outer entries")
        step = add_a(sub) if letter == "a" else add_c(sub)
        expected = x if letter == "a" else y
        if step.value != expected or not step.pre_ulrich:
            raise AssertionError(
                f"greedy step {letter}@{t0} produced {step.value}, "
                f"partition has {expected}")
        sub = step.triple
        letters.append(letter)
    return GreedyWord("".join(letters))


def replay(word: str, middle) -> PreUlrichTriple:
    """Grow a triple from the given middle block by a word of a/c letters.

    Raises ValueError if any step double-books a meeting time, i.e. if the
    word is not realizable from that middle block.
    """
    T = PreUlrichTriple((), tuple(middle), ())
    for pos, letter in enumerate(word):
        step = _extend(T, letter)
        if not step.pre_ulrich:
            why = (f"double-books times {step.clashes}" if step.clashes
                   else "breaks the outer parity invariant")
            raise ValueError(
                f"step {pos} ({letter!r} at t={step.time}) {why}")
        T = step.triple
    return T


def dual_blocks_centered(P: BlockedPartition):
    """Dual entry sets (A*, B, C*) normalized so the middle block is fixed.

    A* = C + (N+1) and C* = A - (N+1); this is the translation of core.dual
    under which the boundary rules below take their stated form.
    """
    T = triple_of(P)
    n1 = P.dimension + 1
    a_star = tuple(c + n1 for c in T.c)
    c_star = tuple(a - n1 for a in T.a)
    return a_star, T.b, c_star


def trapezoid_check(P: BlockedPartition, a: int, a_star: int,
                    c: int, c_star: int) -> bool:
    """Check the trapezoid rule on one quadruple.

    Preconditions: a in A, a* in A*, c in C, c* in C* (middle-fixed dual) and
    a* - a = c - c*.  Returns whether N+1 = a* - c = a - c*; this must hold
    for every such quadruple of an Ulrich partition, and a failure on a
    candidate partition certifies it non-Ulrich.
    """
    T = triple_of(P)
    astars, _, cstars = dual_blocks_centered(P)
    if a not in T.a or c not in T.c:
        raise ValueError("a must lie in A and c in C")
    if a_star not in astars or c_star not in cstars:
        raise ValueError("a* must lie in A* and c* in C*")
    if a_star - a != c - c_star:
        raise ValueError("hypothesis a* - a = c - c* not satisfied")
    n1 = P.dimension + 1
    return a_star - c == n1 and a - c_star == n1


def trapezoid_witnesses(P: BlockedPartition):
    """Yield every (a, a*, c, c*) quadruple satisfying the rule's hypothesis."""
    T = triple_of(P)
    astars, _, cstars = dual_blocks_centered(P)
    for a in T.a:
        for a_star in astars:
            for c in T.c:
                for c_star in cstars:
                    if a_star - a == c - c_star:
                        yield a, a_star, c, c_star


def rectangle_check(P: BlockedPartition) -> bool:
    """Check the rectangle rule: A and A* (resp. C and C*) share at most one entry."""
    T = triple_of(P)
    astars, _, cstars = dual_blocks_centered(P)
    return (len(set(T.a) & set(astars)) <= 1
            and len(set(T.c) & set(cstars)) <= 1)


def sumset_decompose(P: BlockedPartition):
    """Decompose a type (alpha, 1, gamma) partition into sumset form.

    After translating the middle entry to 0, the partition is Ulrich exactly
    when the shifted sets A' = A - 1 and C' = -C - 1 consist of even numbers
    and tile the interval [0, N-1] together with the averages (A' + C')/2,
    with no repeated average.  Returns (a_set, c_set, n_prime) on success and
    None if the decomposition fails; raises ValueError when the middle block
    is not a singleton.
    """
    blocks = P.blocks
    if len(blocks) != 3 or len(blocks[1]) != 1:
        raise ValueError("sumset form needs a singleton middle block")
    b = blocks[1][0]
    a_entries = [x - b for x in blocks[0]]
    c_entries = [-(x - b) for x in blocks[2]]
    if any(x % 2 == 0 for x in a_entries) or any(x % 2 == 0 for x in c_entries):
        return None
    a_set = {x - 1 for x in a_entries}
    c_set = {x - 1 for x in c_entries}
    n_prime = P.dimension - 1
    averages = [(x + y) // 2 for x in a_set for y in c_set]
    if len(set(averages)) != len(averages):
        return None
    union = a_set | c_set | set(averages)
    if a_set & c_set or (a_set | c_set) & set(averages):
        return None
    if union != set(range(n_prime + 1)):
        return None
    return (tuple(sorted(a_set)), tuple(sorted(c_set)), n_prime)
