"""Restrictions of truth tables and the identities they must satisfy.

A restriction fixes the variables of a head set H (a bitmask) to +-1 values
and leaves a function of the remaining variables, reindexed in ascending
original order.  Assignments are enumerated by a packed index: bit j of the
index refers to the j-th smallest head coordinate, and a set bit means that
coordinate is fixed to -1, matching the global row convention.

Two exact identities connect a function to its restrictions and are exposed as
checks: squared Fourier coefficients of restrictions average to coefficient
mass of the parent (over subsets attached to the head), and noise sensitivity
can only shrink on average under restriction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _bits
from .errors import CapExceededError, InvalidInputError
from .fncore import BooleanFunction, wht
from .noise import CHECK_TOL, ns_exact

DEFAULT_HEAD_CAP = 16


def _check_head(head: int, arity: int) -> list[int]:
    if not isinstance(head, (int, np.integer)) or isinstance(head, bool):
        raise InvalidInputError(f"head must be an int bitmask, got {head!r}")
    if head < 0 or head >= (1 << arity):
        raise InvalidInputError(f"head mask {head:#x} out of range for arity {arity}")
    return _bits.bit_positions(head)


@dataclass(frozen=True)
class Restriction:
    """Assignment of +-1 values to the coordinates of a head bitmask.

    ``values[j]`` fixes the j-th smallest head coordinate.
    """

    head: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.head < 0:
            raise InvalidInputError(f"head mask must be nonnegative, got {self.head}")
        if len(self.values) != _bits.popcount(self.head):
            raise InvalidInputError(
                f"head has {_bits.popcount(self.head)} coordinates, "
                f"got {len(self.values)} values"
            )
        if not all(v in (-1, 1) for v in self.values):
            raise InvalidInputError("assignment values must be +1 or -1")
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    @classmethod
    def from_index(cls, head: int, index: int) -> "Restriction":
        """Assignment from its packed index (set bit means -1)."""
        h = _bits.popcount(head)
        if not 0 <= index < (1 << h):
            raise InvalidInputError(f"assignment index {index} out of range for |H| = {h}")
        return cls(head=head, values=tuple(-1 if (index >> j) & 1 else 1 for j in range(h)))

    @property
    def assignment_index(self) -> int:
        """Packed index of this assignment (set bit means -1)."""
        return sum(1 << j for j, v in enumerate(self.values) if v == -1)


@dataclass(frozen=True)
class BiasProfile:
    """E[f given each head assignment], indexed by packed assignment."""

    head: int
    biases: np.ndarray

    def __post_init__(self) -> None:
        b = np.asarray(self.biases, dtype=np.float64).copy()
        b.setflags(write=False)
        object.__setattr__(self, "biases", b)

    def frac_unbiased(self, delta: float) -> float:
        """Fraction of assignments with |bias| <= 1 - delta."""
        delta = float(delta)
        if not 0.0 < delta <= 1.0:
            raise InvalidInputError(f"delta must be in (0, 1], got {delta}")
        return float(np.count_nonzero(np.abs(self.biases) <= 1.0 - delta)) / self.biases.size


@dataclass(frozen=True)
class RestrictionEnergy:
    """Average restricted coefficient mass against parent coefficient mass."""

    lhs: float
    rhs: float
    gap: float


@dataclass(frozen=True)
class ThresholdCorollary:
    """Consequence of many restrictions being noise sensitive at once."""

    frac_exceeding: float
    fires: bool
    implied_bound: float
    holds: bool


@dataclass(frozen=True)
class NsAggregation:
    """Noise sensitivity of a function against the mean over restrictions."""

    ns_value: float
    restricted_mean: float
    restricted: np.ndarray
    holds: bool

    def __post_init__(self) -> None:
        r = np.asarray(self.restricted, dtype=np.float64).copy()
        r.setflags(write=False)
        object.__setattr__(self, "restricted", r)

    def threshold_corollary(self, t: float, delta: float) -> ThresholdCorollary:
        """If more than a delta fraction of restrictions exceed t, the parent
        noise sensitivity must be at least t * delta."""
        t = float(t)
        delta = float(delta)
        if t < 0.0:
            raise InvalidInputError(f"t must be nonnegative, got {t}")
        if not 0.0 < delta < 1.0:
            raise InvalidInputError(f"delta must be in (0, 1), got {delta}")
        frac = float(np.count_nonzero(self.restricted > t)) / self.restricted.size
        fires = frac > delta
        implied = t * delta if fires else 0.0
        holds = (not fires) or self.ns_value >= implied - CHECK_TOL
        return ThresholdCorollary(
            frac_exceeding=frac, fires=fires, implied_bound=implied, holds=holds
        )


def restrict(f: BooleanFunction, r: Restriction) -> BooleanFunction:
    """Truth table of f with the head coordinates of ``r`` fixed.

    Remaining variables keep their ascending original order.
    """
    head_pos = _check_head(r.head, f.arity)
    rem_pos = [j for j in range(f.arity) if not (r.head >> j) & 1]
    fixed_bits = _bits.spread_bits(r.assignment_index, head_pos)
    sub = np.arange(1 << len(rem_pos), dtype=np.int64)
    rows = np.asarray(_bits.spread_bits(sub, rem_pos)) | fixed_bits
    return BooleanFunction(len(rem_pos), f.values[rows])


def bias_profile(f: BooleanFunction, head: int, head_cap: int = DEFAULT_HEAD_CAP) -> BiasProfile:
    """E[f] conditioned on every assignment of the head coordinates."""
    head_pos = _check_head(head, f.arity)
    h = len(head_pos)
    if h > head_cap:
        raise CapExceededError(f"head size {h} exceeds cap {head_cap}")
    hidx = np.asarray(_bits.compress_bits(np.arange(f.values.size, dtype=np.int64), head_pos))
    sums = np.bincount(hidx, weights=f.values.astype(np.float64), minlength=1 << h)
    return BiasProfile(head=head, biases=sums / (1 << (f.arity - h)))


def restriction_energy_identity(
    f: BooleanFunction, head: int, subset: int
) -> RestrictionEnergy:
    """Average of squared restricted coefficients at a fixed tail subset.

    Both sides of the exact identity are computed by separate routes: the left
    by restricting and transforming each assignment, the right by summing the
    parent's squared coefficients over all head subsets attached to ``subset``.
    Keep the routes independent; their agreement is the point.
    """
    head_pos = _check_head(head, f.arity)
    _check_head(subset, f.arity)
    if head & subset:
        raise InvalidInputError(
            f"subset {subset:#x} must be disjoint from head {head:#x}"
        )
    rem_pos = [j for j in range(f.arity) if not (head >> j) & 1]
    packed_subset = int(_bits.compress_bits(int(subset), rem_pos))
    h = len(head_pos)
    acc = 0.0
    for a in range(1 << h):
        g = restrict(f, Restriction.from_index(head, a))
        coeff = wht(g).coefficients[packed_subset]
        acc += float(coeff) * float(coeff)
    lhs = acc / (1 << h)
    parent = wht(f).coefficients
    attached = np.asarray(subset | _bits.submasks(head))
    rhs = float(np.sum(parent[attached] ** 2))
    return RestrictionEnergy(lhs=lhs, rhs=rhs, gap=abs(lhs - rhs))


def ns_aggregation_check(
    f: BooleanFunction, head: int, epsilon: float, head_cap: int = DEFAULT_HEAD_CAP
) -> NsAggregation:
    """Noise sensitivity of f against its mean over head restrictions.

    Restricting can only lower noise sensitivity on average; the result also
    carries the per-assignment values for threshold corollaries.
    """
    head_pos = _check_head(head, f.arity)
    h = len(head_pos)
    if h > head_cap:
        raise CapExceededError(f"head size {h} exceeds cap {head_cap}")
    restricted = np.empty(1 << h)
    for a in range(1 << h):
        g = restrict(f, Restriction.from_index(head, a))
        restricted[a] = ns_exact(wht(g), epsilon)
    ns_value = ns_exact(wht(f), epsilon)
    restricted_mean = float(np.mean(restricted))
    return NsAggregation(
        ns_value=ns_value,
        restricted_mean=restricted_mean,
        restricted=restricted,
        holds=ns_value >= restricted_mean - CHECK_TOL,
    )


def embed_junta(g: BooleanFunction, head: int, arity: int) -> BooleanFunction:
    """Lift a function of the head coordinates to the full cube.

    Variable j of ``g`` is identified with the j-th smallest head coordinate.
    """
    head_pos = _check_head(head, arity)
    if g.arity != len(head_pos):
        raise InvalidInputError(
            f"junta arity {g.arity} does not match head size {len(head_pos)}"
        )
    hidx = np.asarray(_bits.compress_bits(np.arange(1 << arity, dtype=np.int64), head_pos))
    return BooleanFunction(arity, g.values[hidx])
