"""Exact truth-table engine for Boolean functions on {-1,+1}^n.

A function is stored as a dense value table of length 2**n over the row-index
convention of :mod:`hsf._bits`: bit j of row k set means variable j takes the
value -1.  Under that convention the parity of a variable set S (a bitmask)
evaluates to (-1)**popcount(k & S) at row k, so the in-place butterfly below
computes Fourier coefficients with no index remapping: coefficient S lands at
array position S.

All operations are pure and deterministic.  Exact transforms are O(n * 2**n)
and guarded by an arity cap (default 20, raisable to 24 by callers that accept
the memory cost).
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .errors import CapExceededError, InvalidInputError

DEFAULT_ARITY_CAP = 20
MAX_ARITY_CAP = 24


def _check_arity(n: int, cap: int) -> None:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise InvalidInputError(f"arity must be an int, got {n!r}")
    if n < 0:
        raise InvalidInputError(f"arity must be nonnegative, got {n}")
    if n > cap:
        raise CapExceededError(f"arity {n} exceeds cap {cap}")


@dataclass(frozen=True)
class BooleanFunction:
    """Dense {-1,+1} truth table over ``arity`` variables."""

    arity: int
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values)
        if values.shape != (1 << self.arity,):
            raise InvalidInputError(
                f"table for arity {self.arity} needs {1 << self.arity} entries, "
                f"got shape {values.shape}"
            )
        if not np.all(np.abs(values) == 1):
            raise InvalidInputError("table entries must be +1 or -1")
        values = values.astype(np.int8)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __call__(self, x: np.ndarray) -> np.ndarray | int:
        """Evaluate at one +-1 point (1-D) or a stack of points (2-D)."""
        x = np.asarray(x)
        single = x.ndim == 1
        rows = np.atleast_2d(x)
        if rows.shape[1] != self.arity:
            raise InvalidInputError(
                f"points have {rows.shape[1]} coordinates, function has arity {self.arity}"
            )
        if not np.all(np.abs(rows) == 1):
            raise InvalidInputError("points must have +-1 coordinates")
        bits = ((1 - rows.astype(np.int64)) // 2)
        idx = bits @ (np.int64(1) << np.arange(self.arity, dtype=np.int64))
        out = self.values[idx]
        return int(out[0]) if single else out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.arity == other.arity and np.array_equal(self.values, other.values)

    def __hash__(self) -> int:
        return hash((self.arity, self.values.tobytes()))


@dataclass(frozen=True)
class FourierSpectrum:
    """All 2**arity Fourier coefficients, indexed by variable-set bitmask."""

    arity: int
    coefficients: np.ndarray

    def __post_init__(self) -> None:
        coeffs = np.asarray(self.coefficients, dtype=np.float64)
        if coeffs.shape != (1 << self.arity,):
            raise InvalidInputError(
                f"spectrum for arity {self.arity} needs {1 << self.arity} coefficients, "
                f"got shape {coeffs.shape}"
            )
        coeffs = coeffs.copy()
        coeffs.setflags(write=False)
        object.__setattr__(self, "coefficients", coeffs)

    def total_weight(self) -> float:
        """Sum of squared coefficients (1.0 for a +-1-valued function)."""
        return float(np.dot(self.coefficients, self.coefficients))


def from_values(arity: int, values, cap: int = DEFAULT_ARITY_CAP) -> BooleanFunction:
    """Build a function from an explicit +-1 table of length 2**arity."""
    _check_arity(arity, cap)
    return BooleanFunction(int(arity), np.asarray(values))


def _butterfly(table: np.ndarray) -> np.ndarray:
    # One copied half per pass keeps the update order-independent of layout.
    a = table.astype(np.float64)
    h = 1
    while h < a.size:
        a = a.reshape(-1, 2 * h)
        left = a[:, :h].copy()
        a[:, :h] = left + a[:, h:]
        a[:, h:] = left - a[:, h:]
        h *= 2
    return a.reshape(-1)


def wht(f: BooleanFunction) -> FourierSpectrum:
    """Fourier coefficients of ``f`` via the fast transform.

    The butterfly runs unnormalized in n passes; the 2**-n normalization is
    applied once at the end, so every coefficient is exact up to one final
    rounding step.
    """
    coeffs = _butterfly(f.values)
    coeffs /= float(f.values.size)
    return FourierSpectrum(f.arity, coeffs)


def synthesize(spectrum: FourierSpectrum) -> np.ndarray:
    """Real-valued table of the polynomial with the given coefficients.

    Inverse of :func:`wht` up to rounding: the same butterfly without the
    final normalization.
    """
    return _butterfly(spectrum.coefficients)


def mean(f: BooleanFunction) -> float:
    """E[f] under the uniform distribution."""
    return float(np.mean(f.values, dtype=np.float64))


def distance(f: BooleanFunction, g: BooleanFunction) -> float:
    """Fraction of inputs where f and g disagree."""
    if f.arity != g.arity:
        raise InvalidInputError(f"arity mismatch: {f.arity} vs {g.arity}")
    return float(np.count_nonzero(f.values != g.values)) / f.values.size


def is_junta_on(f: BooleanFunction, variables: int) -> bool:
    """True when f depends on no variable outside the bitmask ``variables``."""
    if variables < 0 or variables >= (1 << f.arity):
        raise InvalidInputError(
            f"variable mask {variables:#x} out of range for arity {f.arity}"
        )
    idx = np.arange(f.values.size)
    for j in range(f.arity):
        if (variables >> j) & 1:
            continue
        if not np.array_equal(f.values, f.values[idx ^ (1 << j)]):
            return False
    return True


def random_function(arity: int, seed, cap: int = DEFAULT_ARITY_CAP) -> BooleanFunction:
    """Uniformly random +-1 table; identical seeds give identical tables."""
    _check_arity(arity, cap)
    rng = np.random.default_rng(seed)
    values = rng.integers(0, 2, size=1 << arity, dtype=np.int8) * 2 - 1
    return BooleanFunction(int(arity), values)


def to_text(f: BooleanFunction) -> str:
    """Two-line text form: ``n=<arity>`` then space-separated +1/-1 entries."""
    entries = " ".join("+1" if v > 0 else "-1" for v in f.values)
    return f"n={f.arity}\n{entries}\n"


def from_text(text: str, cap: int = DEFAULT_ARITY_CAP) -> BooleanFunction:
    """Parse the two-line text form produced by :func:`to_text`."""
    lines = [line.strip() for line in io.StringIO(text) if line.strip()]
    if not lines or not lines[0].startswith("n="):
        raise InvalidInputError("first line must be 'n=<int>'")
    try:
        arity = int(lines[0][2:])
    except ValueError:
        raise InvalidInputError(f"malformed arity line {lines[0]!r}") from None
    _check_arity(arity, cap)
    if len(lines) != 2:
        raise InvalidInputError(f"expected one entry line after the header, got {len(lines) - 1}")
    tokens = lines[1].split()
    if len(tokens) != (1 << arity):
        raise InvalidInputError(
            f"expected {1 << arity} entries for n={arity}, got {len(tokens)}"
        )
    table = np.empty(1 << arity, dtype=np.int8)
    for i, tok in enumerate(tokens):
        if tok == "+1":
            table[i] = 1
        elif tok == "-1":
            table[i] = -1
        else:
            raise InvalidInputError(f"entry {i} is {tok!r}, must be +1 or -1")
    return BooleanFunction(arity, table)


def save_table(f: BooleanFunction, path) -> None:
    """Write the text form of ``f`` to a file."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write(to_text(f))


def load_table(path, cap: int = DEFAULT_ARITY_CAP) -> BooleanFunction:
    """Read a function from the text form written by :func:`save_table`."""
    with open(path, "r", encoding="ascii") as fh:
        return from_text(fh.read(), cap=cap)
