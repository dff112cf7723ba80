"""Shared test utilities: an independent Ulrich oracle and random generators."""

from __future__ import annotations

import itertools
import random
from collections import Counter
from fractions import Fraction

from hypothesis import strategies as st

from ulrich import core
from ulrich.core import BlockedPartition, FlagType


def brute_is_ulrich(P: BlockedPartition) -> bool:
    """Independent formulation: the collision-time multiset is exactly 1..N.

    Computed straight from the definition with Counter and Fractions, sharing
    no code with core.is_ulrich's scan or the search engine's bitmasks.
    """
    blocks = P.blocks
    times = Counter()
    for i, bi in enumerate(blocks):
        for j in range(i + 1, len(blocks)):
            for x in bi:
                for y in blocks[j]:
                    times[Fraction(x - y, j - i)] += 1
    want = Counter(Fraction(t) for t in range(1, P.dimension + 1))
    return times == want


def repeated_position_ulrich(P: BlockedPartition) -> bool:
    """Second independent formulation: every time 1..N has a coincidence."""
    for t in range(1, P.dimension + 1):
        flat = [e for block in core.evolve(P, t) for e in block]
        if len(set(flat)) == len(flat):
            return False
    return True


def all_types(max_dim: int, min_blocks: int = 2, max_blocks: int = 6):
    """Every all-positive FlagType with pairwise dimension <= max_dim."""
    out = []
    for blocks in range(min_blocks, max_blocks + 1):
        for total in range(blocks, max_dim + 2):
            for cuts in itertools.combinations(range(1, total), blocks - 1):
                bounds = (0,) + cuts + (total,)
                ft = FlagType(tuple(b - a for a, b in zip(bounds, bounds[1:])))
                if ft.dimension <= max_dim:
                    out.append(ft)
    return out


def random_partition(rng: random.Random, max_blocks: int = 4,
                     max_len: int = 3, spread: int = 40) -> BlockedPartition:
    """A random valid blocked partition (rarely Ulrich)."""
    blocks = rng.randint(2, max_blocks)
    lengths = tuple(rng.randint(1, max_len) for _ in range(blocks))
    n = sum(lengths)
    entries = rng.sample(range(-spread, spread + 1), n)
    return BlockedPartition(FlagType(lengths), tuple(sorted(entries, reverse=True)))


@st.composite
def flag_types(draw, max_blocks: int = 4, max_len: int = 4, max_dim: int = 40):
    lengths = draw(
        st.lists(st.integers(1, max_len), min_size=2, max_size=max_blocks)
        .map(tuple)
        .filter(lambda ls: FlagType(ls).dimension <= max_dim))
    return FlagType(lengths)


@st.composite
def blocked_partitions(draw, max_blocks: int = 4, max_len: int = 3,
                       spread: int = 40):
    ft = draw(flag_types(max_blocks=max_blocks, max_len=max_len))
    entries = draw(st.lists(st.integers(-spread, spread), min_size=ft.n,
                            max_size=ft.n, unique=True))
    return BlockedPartition(ft, tuple(sorted(entries, reverse=True)))


@st.composite
def ulrich_members(draw):
    """A member of one of the known families, for properties of Ulrich inputs."""
    from ulrich import families
    pick = draw(st.sampled_from([
        ("one_n_one", 3), ("two_one_k", 1), ("one_two_k", 1),
        ("fundamental", 2), ("elongated", 2), ("p_u", 2), ("sporadic", 4),
        ("two_param", 1),
    ]))
    kind = pick[0]
    if kind == "one_n_one":
        n = draw(st.integers(1, 5))
        signs = draw(st.lists(st.sampled_from([1, -1]), min_size=n, max_size=n))
        return families.one_n_one(n, signs)
    if kind == "two_one_k":
        return families.two_one_k(draw(st.integers(0, 2)))
    if kind == "one_two_k":
        return families.one_two_k(draw(st.integers(0, 2)))
    if kind == "fundamental":
        return families.fundamental_F(draw(st.integers(1, 6)))
    if kind == "elongated":
        return families.elongated_family(draw(st.integers(0, 3)),
                                         draw(st.integers(1, 4)))
    if kind == "p_u":
        return families.p_u(draw(st.integers(1, 4)))
    if kind == "two_param":
        m1, m2 = draw(st.sampled_from([(0, 1), (1, 0), (0, 2), (2, 0)]))
        return families.two_param(m1, m2)
    return families.sporadic(draw(st.sampled_from(families.sporadic_names())))
