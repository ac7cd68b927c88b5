"""Canonical linear threshold functions and critical-index analysis.

A threshold function is sign(w . x - theta) with sign(0) = +1.  The canonical
form drops exactly-zero weights (recording their coordinates), scales the rest
and the threshold by the inverse l2 norm, and sorts by decreasing magnitude
with ties broken by original coordinate.  Canonicalizing twice is the identity.

Sorted positions are 1-based in user-facing maps and indices (critical index,
head/tail splits); arrays underneath are 0-based as usual.  All evaluation
paths accumulate the linear form left to right over sorted positions, so the
dense truth table and pointwise evaluation agree bit for bit.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapExceededError, DegenerateLtfError, InvalidInputError
from .fncore import DEFAULT_ARITY_CAP, BooleanFunction

INFINITE_INDEX = math.inf

_TABLE_BLOCK = 1 << 16


@dataclass(frozen=True)
class Ltf:
    """Canonical threshold function.

    ``weights[p]`` is the weight at sorted position p (0-based internally) and
    ``original_index[p]`` the 0-based input coordinate it came from.
    ``n_inputs`` is the arity of the original weight vector, including dropped
    zero-weight coordinates.
    """

    weights: np.ndarray
    theta: float
    original_index: np.ndarray
    dropped: tuple[int, ...]
    n_inputs: int

    def __post_init__(self) -> None:
        w = np.asarray(self.weights, dtype=np.float64).copy()
        w.setflags(write=False)
        idx = np.asarray(self.original_index, dtype=np.int64).copy()
        idx.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "original_index", idx)

    @property
    def n_active(self) -> int:
        """Number of nonzero-weight coordinates."""
        return self.weights.size

    def __call__(self, x: np.ndarray) -> np.ndarray | int:
        """Evaluate at one +-1 point (1-D) or a stack of points (2-D)."""
        x = np.asarray(x)
        single = x.ndim == 1
        rows = np.atleast_2d(x)
        if rows.shape[1] != self.n_inputs:
            raise InvalidInputError(
                f"points have {rows.shape[1]} coordinates, function has {self.n_inputs} inputs"
            )
        if not np.all(np.abs(rows) == 1):
            raise InvalidInputError("points must have +-1 coordinates")
        out = np.where(linear_form(self, rows) - self.theta >= 0.0, 1, -1).astype(np.int8)
        return int(out[0]) if single else out


@dataclass(frozen=True)
class RegularityProfile:
    """Tail norms sigma_k = l2 norm of weights from sorted position k on.

    ``tail_norms[k-1]`` holds sigma_k for k = 1..n_active; ``tau_star`` is the
    smallest tau at which the whole vector is tau-regular, |w_1| / sigma_1.
    """

    tail_norms: np.ndarray
    tau_star: float

    def __post_init__(self) -> None:
        t = np.asarray(self.tail_norms, dtype=np.float64).copy()
        t.setflags(write=False)
        object.__setattr__(self, "tail_norms", t)


@dataclass(frozen=True)
class HeadSplit:
    """First ``len(head)`` sorted coordinates versus the rest.

    Maps are keyed by 1-based sorted position and hold canonical weights; the
    tail profile is computed on the renormalized tail (None for empty tails).
    """

    head: dict[int, float]
    tail: dict[int, float]
    tail_profile: RegularityProfile | None


def canonicalize(weights, theta: float) -> Ltf:
    """Canonical form of sign(w . x - theta); see the module docstring."""
    w = np.asarray(weights, dtype=np.float64)
    if w.ndim != 1 or w.size == 0:
        raise InvalidInputError("weights must be a nonempty 1-D array")
    if not np.all(np.isfinite(w)):
        raise InvalidInputError("weights must be finite")
    theta = float(theta)
    if not math.isfinite(theta):
        raise InvalidInputError("theta must be finite")
    nonzero = np.flatnonzero(w != 0.0)
    if nonzero.size == 0:
        raise DegenerateLtfError("all weights are zero")
    dropped = tuple(int(j) for j in np.flatnonzero(w == 0.0))
    wa = w[nonzero]
    # Primary key |w| descending, tie key original coordinate ascending.
    order = np.lexsort((nonzero, -np.abs(wa)))
    sorted_w = wa[order]
    norm = float(np.linalg.norm(sorted_w))
    return Ltf(
        weights=sorted_w / norm,
        theta=theta / norm,
        original_index=nonzero[order],
        dropped=dropped,
        n_inputs=w.size,
    )


def linear_form(ltf: Ltf, x: np.ndarray) -> np.ndarray:
    """w . x for a (rows, n_inputs) array, in canonical accumulation order."""
    rows = np.atleast_2d(np.asarray(x, dtype=np.float64))
    acc = np.zeros(rows.shape[0])
    for p in range(ltf.weights.size):
        acc += ltf.weights[p] * rows[:, ltf.original_index[p]]
    return acc


def evaluate(ltf: Ltf, x) -> int:
    """Sign of w . x - theta at a single +-1 point, with sign(0) = +1."""
    return int(ltf(np.asarray(x)))


def truth_table(ltf: Ltf, cap: int = DEFAULT_ARITY_CAP) -> BooleanFunction:
    """Dense table over all n_inputs variables (dropped coordinates ignored)."""
    acc = linear_form_table(ltf, cap)
    values = np.where(acc - ltf.theta >= 0.0, 1, -1).astype(np.int8)
    return BooleanFunction(ltf.n_inputs, values)


def linear_form_table(ltf: Ltf, cap: int = DEFAULT_ARITY_CAP) -> np.ndarray:
    """w . x at every row of the cube, same accumulation order as truth_table."""
    n = ltf.n_inputs
    if n > cap:
        raise CapExceededError(f"arity {n} exceeds cap {cap}")
    size = 1 << n
    out = np.empty(size)
    for lo in range(0, size, _TABLE_BLOCK):
        hi = min(lo + _TABLE_BLOCK, size)
        idx = np.arange(lo, hi, dtype=np.int64)
        acc = np.zeros(hi - lo)
        for p in range(ltf.weights.size):
            col = 1.0 - 2.0 * ((idx >> int(ltf.original_index[p])) & 1)
            acc += ltf.weights[p] * col
        out[lo:hi] = acc
    return out


def _profile_from_sorted(w: np.ndarray) -> RegularityProfile:
    sq = w * w
    tail = np.sqrt(np.cumsum(sq[::-1])[::-1])
    return RegularityProfile(tail_norms=tail, tau_star=float(np.abs(w[0]) / tail[0]))


def regularity_profile(ltf: Ltf) -> RegularityProfile:
    """Tail norms and tau* of the canonical weight vector."""
    return _profile_from_sorted(ltf.weights)


def critical_index(ltf: Ltf, tau: float) -> int | float:
    """Smallest 1-based position i with |w_i| <= tau * sigma_i, else INFINITE_INDEX.

    Compared on squares, so the result is exact whenever the defining
    inequality is not a floating-point knife edge.
    """
    tau = float(tau)
    if not 0.0 < tau <= 1.0:
        raise InvalidInputError(f"tau must be in (0, 1], got {tau}")
    sq = ltf.weights * ltf.weights
    tail_sq = np.cumsum(sq[::-1])[::-1]
    hits = np.flatnonzero(sq <= tau * tau * tail_sq)
    if hits.size == 0:
        return INFINITE_INDEX
    return int(hits[0]) + 1


def head_split(ltf: Ltf, ell: int) -> HeadSplit:
    """Split sorted positions into head 1..ell and tail ell+1..n_active."""
    m = ltf.weights.size
    if not isinstance(ell, (int, np.integer)) or isinstance(ell, bool):
        raise InvalidInputError(f"ell must be an int, got {ell!r}")
    if not 1 <= ell <= m:
        raise InvalidInputError(f"ell must be in [1, {m}], got {ell}")
    head = {p + 1: float(ltf.weights[p]) for p in range(ell)}
    tail = {p + 1: float(ltf.weights[p]) for p in range(ell, m)}
    tail_profile = None
    if ell < m:
        tw = ltf.weights[ell:]
        tail_profile = _profile_from_sorted(tw / np.linalg.norm(tw))
    return HeadSplit(head=head, tail=tail, tail_profile=tail_profile)


_FAMILY_ALIASES = {
    "equal": "equal",
    "equal-weights": "equal",
    "gaussian": "gaussian",
    "gaussian-weights": "gaussian",
    "geometric": "geometric",
    "geometric-decay": "geometric",
}


def parse_theta_law(law: str) -> tuple[str, float]:
    """Parse 'zero', 'fixed:<v>', or 'gaussian:<scale>' into (kind, value)."""
    if not isinstance(law, str):
        raise InvalidInputError(f"theta law must be a string, got {law!r}")
    if law == "zero":
        return "zero", 0.0
    kind, sep, raw = law.partition(":")
    if kind in ("fixed", "gaussian") and sep:
        try:
            value = float(raw)
        except ValueError:
            raise InvalidInputError(f"bad numeric part in theta law {law!r}") from None
        if not math.isfinite(value):
            raise InvalidInputError(f"theta law value must be finite, got {law!r}")
        if kind == "gaussian" and value < 0:
            raise InvalidInputError(f"gaussian theta scale must be nonnegative, got {law!r}")
        return kind, value
    raise InvalidInputError(
        f"unknown theta law {law!r}; expected 'zero', 'fixed:<v>' or 'gaussian:<scale>'"
    )


def random_ltf(
    n: int,
    family: str,
    *,
    rate: float | None = None,
    theta_law: str = "zero",
    seed=0,
) -> Ltf:
    """Seeded instance from a named weight family, already canonicalized.

    Families: 'equal' (all-ones weights), 'gaussian' (iid standard normal),
    'geometric' (w_i = rate**i, rate in (0, 1) required).  The theta law
    'gaussian:<scale>' draws the canonical threshold as scale * N(0, 1); the
    draw happens after the weights, so instances with the same seed share
    weights across theta laws.
    """
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise InvalidInputError(f"n must be a positive int, got {n!r}")
    kind = _FAMILY_ALIASES.get(family)
    if kind is None:
        raise InvalidInputError(
            f"unknown family {family!r}; expected one of {sorted(set(_FAMILY_ALIASES))}"
        )
    if kind == "geometric":
        if rate is None or not 0.0 < float(rate) < 1.0:
            raise InvalidInputError(f"geometric family needs rate in (0, 1), got {rate!r}")
    elif rate is not None:
        raise InvalidInputError(f"family {family!r} takes no rate")
    law_kind, law_value = parse_theta_law(theta_law)
    rng = np.random.default_rng(seed)
    if kind == "equal":
        weights = np.ones(n)
    elif kind == "gaussian":
        weights = rng.standard_normal(n)
        if not np.any(weights != 0.0):
            raise DegenerateLtfError("gaussian draw produced an all-zero vector")
    else:
        weights = float(rate) ** np.arange(1, n + 1, dtype=np.float64)
    if law_kind == "zero":
        theta = 0.0
    elif law_kind == "fixed":
        theta = law_value
    else:
        theta = law_value * rng.standard_normal() * float(np.linalg.norm(weights))
    return canonicalize(weights, theta)


def save_ltf_file(path, weights, theta: float) -> None:
    """Write a weights/theta document readable by :func:`load_ltf_file`."""
    doc = {"weights": [float(v) for v in np.asarray(weights, dtype=np.float64)],
           "theta": float(theta)}
    with open(path, "w", encoding="ascii") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def load_ltf_file(path) -> Ltf:
    """Read a weights/theta document and return its canonical form."""
    try:
        with open(path, "r", encoding="ascii") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"not a well-formed document: {exc}") from None
    if not isinstance(doc, dict):
        raise InvalidInputError("document must be an object with 'weights' and 'theta'")
    if "weights" not in doc:
        raise InvalidInputError("missing field 'weights'")
    if "theta" not in doc:
        raise InvalidInputError("missing field 'theta'")
    weights = doc["weights"]
    if not isinstance(weights, list) or not weights or not all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in weights
    ):
        raise InvalidInputError("field 'weights' must be a nonempty array of reals")
    theta = doc["theta"]
    if not isinstance(theta, (int, float)) or isinstance(theta, bool):
        raise InvalidInputError("field 'theta' must be a real")
    return canonicalize(np.asarray(weights, dtype=np.float64), float(theta))
