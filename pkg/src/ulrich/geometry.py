"""Geometric counterpart of the collision combinatorics.

A blocked partition P with n entries encodes an equivariant vector bundle on
the partial flag variety Fl(k; n) whose steps are the partial sums of the
block lengths: the bundle's blockwise highest weight is lambda = P - rho,
where rho = (n-1, ..., 1, 0).  Twisting by time t subtracts t times the block
velocity from each entry, exactly as partition evolution does.

Bott's algorithm computes the cohomology of each twist: the weight
v = lambda(t) + rho = P(t) either has a repeated entry (all cohomology
vanishes) or sorts to a dominant weight by a permutation with q inversions
(one cohomology group, in degree q, of known Schur dimension).  The partition
is Ulrich exactly when all twists t = 1..N vanish, which is the geometric
reading of the collision-time criterion.

Dimensions are computed by the hook-content formula and independently by
Weyl's dimension formula; degrees of flag varieties come from the leading
term of the Hilbert polynomial.  Everything is exact integer/rational
arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import core
from .core import BlockedPartition, FlagType


def rho(n: int) -> tuple[int, ...]:
    """The staircase (n-1, n-2, ..., 1, 0)."""
    return tuple(range(n - 1, -1, -1))


@dataclass(frozen=True)
class SchurWeight:
    """A blockwise-dominant integral weight: weakly decreasing in each block."""

    type: FlagType
    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if len(self.entries) != self.type.n:
            raise ValueError(
                f"type {self.type} needs {self.type.n} entries, "
                f"got {len(self.entries)}")
        for block in self.blocks:
            if any(x < y for x, y in zip(block, block[1:])):
                raise ValueError(
                    "weight entries must be weakly decreasing within blocks")

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        out, k = [], 0
        for l in self.type.lengths:
            out.append(self.entries[k:k + l])
            k += l
        return tuple(out)


def to_weight(P: BlockedPartition, normalize: bool = False) -> SchurWeight:
    """The blockwise highest weight lambda = P - rho of the bundle of P.

    With ``normalize`` the weight is translated so its smallest entry is 0
    (a determinant twist; ranks and vanishing are unaffected).
    """
    n = P.type.n
    lam = [e - s for e, s in zip(P.entries, rho(n))]
    if normalize:
        low = min(lam)
        lam = [x - low for x in lam]
    return SchurWeight(P.type, tuple(lam))


def to_partition(w: SchurWeight) -> BlockedPartition:
    """Inverse of ``to_weight``: w + rho, which must strictly decrease."""
    entries = tuple(x + s for x, s in zip(w.entries, rho(w.type.n)))
    return BlockedPartition(w.type, entries)


def _normalize_weight(mu, n: int):
    """Shift a weakly decreasing integer weight to a partition shape.

    Negative entries are only meaningful for GL(n) when all n entries are
    present (the shift is a determinant twist); fewer entries with negatives
    is rejected.
    """
    mu = tuple(mu)
    if any(x < y for x, y in zip(mu, mu[1:])):
        raise ValueError("weight must be weakly decreasing")
    if mu and mu[-1] < 0:
        if len(mu) != n:
            raise ValueError(
                "negative entries need all n weight entries to shift away")
        mu = tuple(x - mu[-1] for x in mu)
    while mu and mu[-1] == 0:
        mu = mu[:-1]
    return mu


def schur_dim(mu, n: int) -> int:
    """dim of the Schur module S_mu(C^n) by the hook-content formula."""
    parts = _normalize_weight(mu, n)
    if len(parts) > n:
        return 0
    num = den = 1
    for i, row in enumerate(parts):
        for j in range(row):
            num *= n + j - i
            arm = row - j - 1
            leg = sum(1 for other in parts[i + 1:] if other > j)
            den *= arm + leg + 1
    dim, rem = divmod(num, den)
    assert rem == 0, "hook-content product must divide exactly"
    return dim


def schur_dim_weyl(mu, n: int) -> int:
    """dim of S_mu(C^n) by Weyl's formula: an independent cross-check."""
    parts = _normalize_weight(mu, n)
    if len(parts) > n:
        return 0
    full = parts + (0,) * (n - len(parts))
    dim = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            dim *= Fraction(full[i] - full[j] + j - i, j - i)
    assert dim.denominator == 1
    return int(dim)


def bundle_rank(w: SchurWeight) -> int:
    """Rank of the bundle: product of blockwise Schur dimensions."""
    out = 1
    for block, l in zip(w.blocks, w.type.lengths):
        if l:
            out *= schur_dim(block, l)
    return out


def twist(w: SchurWeight, t: int) -> SchurWeight:
    """Time-t twist: subtract t times the block velocity from each block.

    Matches partition evolution: to_weight(P) twisted by t has
    v + rho = P(t).
    """
    r = w.type.r
    entries = []
    for b, block in enumerate(w.blocks):
        entries.extend(x - t * (r - b) for x in block)
    return SchurWeight(w.type, tuple(entries))


@dataclass(frozen=True)
class CohomologyAnswer:
    """Cohomology of one twist: at most one nonzero group, by Bott.

    ``degree`` is None exactly when all cohomology vanishes (dimension 0);
    otherwise H^degree is the Schur module of ``weight`` with the given
    dimension.
    """

    degree: int | None
    dimension: int
    weight: tuple[int, ...] | None

    @property
    def vanishes(self) -> bool:
        return self.dimension == 0


def bwb_cohomology(w: SchurWeight, t: int = 0) -> CohomologyAnswer:
    """Bott's algorithm on the time-t twist of the bundle of w."""
    n = w.type.n
    v = [x + s for x, s in zip(twist(w, t).entries, rho(n))]
    if len(set(v)) < n:
        return CohomologyAnswer(None, 0, None)
    q = sum(1 for i in range(n) for j in range(i + 1, n) if v[i] < v[j])
    mu = tuple(x - s for x, s in zip(sorted(v, reverse=True), rho(n)))
    dim = schur_dim(mu, n)
    assert dim == schur_dim_weyl(mu, n), "hook-content vs Weyl mismatch"
    return CohomologyAnswer(q, dim, mu)


def euler_characteristic(w: SchurWeight, t: int = 0) -> int:
    """chi of the time-t twist: 0 or (-1)^q times the surviving dimension."""
    answer = bwb_cohomology(w, t)
    if answer.vanishes:
        return 0
    return (-1) ** (answer.degree % 2) * answer.dimension


def is_ulrich_via_bwb(P: BlockedPartition) -> bool:
    """The geometric Ulrich test: every twist t = 1..N is Bott-singular.

    Only the repeated-entry check is needed (no dimensions), so this is fast
    and entirely independent of the collision-schedule implementation.
    """
    N = P.dimension
    n = P.type.n
    r = P.type.r
    velocities = []
    for b, l in enumerate(P.type.lengths):
        velocities.extend([r - b] * l)
    for t in range(1, N + 1):
        v = [e - t * m for e, m in zip(P.entries, velocities)]
        if len(set(v)) == n:
            return False
    return True


def flag_dimension(ft: FlagType) -> int:
    """dim Fl(k; n), computed two ways and cross-checked.

    Sum of l_i * l_j over block pairs, and equivalently the sum over steps of
    (k_i - k_{i-1}) * (n - k_i).
    """
    ft = FlagType(ft.lengths)
    pairs = ft.dimension
    n = ft.n
    ks = (0,) + ft.k
    steps = sum((ks[i] - ks[i - 1]) * (n - ks[i]) for i in range(1, len(ks)))
    assert pairs == steps, "the two dimension formulas disagree"
    return pairs


@dataclass(frozen=True)
class PolarizationWeights:
    """Ample class sum(a_i * omega_{k_i}) on a flag variety with r steps.

    ``a`` lists one positive coefficient per step; ``block_levels`` converts
    to the constant value the class takes on each block (suffix sums, last
    block 0).
    """

    a: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        if not self.a or any(x < 1 for x in self.a):
            raise ValueError("polarization coefficients must be >= 1")

    def block_levels(self) -> tuple[int, ...]:
        levels, acc = [0], 0
        for x in reversed(self.a):
            acc += x
            levels.append(acc)
        return tuple(reversed(levels))


def flag_degree(ft: FlagType, polarization: PolarizationWeights | None = None) -> int:
    """Degree of Fl(k; n) under the polarization (default: all ones).

    The Hilbert polynomial of the polarization is Weyl's dimension formula
    with the weight scaled by t; pairs inside a block contribute 1, and each
    cross-block pair (i, j) contributes (t*(c_u - c_w) + j - i)/(j - i), so
    the leading coefficient gives

        deg = N! * prod_{u<w} (c_u - c_w)^(l_u l_w) / prod_{cross pairs} (j - i).
    """
    ft = FlagType(ft.lengths)
    if not ft.all_positive:
        raise ValueError("degree needs every block nonempty")
    r = ft.r
    polarization = polarization or PolarizationWeights((1,) * r)
    if len(polarization.a) != r:
        raise ValueError(f"{r}-step flag needs {r} polarization coefficients")
    levels = polarization.block_levels()
    N = ft.dimension
    deg = Fraction(math.factorial(N))
    block_of = [b for b, l in enumerate(ft.lengths) for _ in range(l)]
    for i in range(ft.n):
        for j in range(i + 1, ft.n):
            u, w = block_of[i], block_of[j]
            if u != w:
                deg *= Fraction(levels[u] - levels[w], j - i)
    assert deg.denominator == 1 and deg > 0
    return int(deg)


def ulrich_identity_check(P: BlockedPartition,
                          polarization: PolarizationWeights | None = None):
    """Check h^0(E) = rank(E) * deg(X) for the bundle of P.

    Returns (h0, rank, degree, holds).  The identity is the hallmark of an
    Ulrich bundle: its pushforward to projective space under the polarization
    is a trivial module of rank deg(X) * rank(E).
    """
    w = to_weight(P)
    h0_answer = bwb_cohomology(w, 0)
    h0 = h0_answer.dimension if h0_answer.degree in (0, None) else 0
    rank = bundle_rank(w)
    degree = flag_degree(P.type, polarization)
    return h0, rank, degree, h0 == rank * degree
