"""Core value types: finite index windows, extended nonnegative arithmetic,
and (p, q) parameter regime classification.

A :class:`Window` is a finite contiguous slice of the integer line carrying a
nonnegative sequence.  It models a double-infinite sequence restricted to that
slice: sums over the test sequence ``a`` treat the outside as zero, while
weight envelopes and suprema are restricted to the window (never extended by
zero, which would spuriously trigger the ``0**(-alpha) = inf`` convention).

All scalar arithmetic on the extended nonnegative half-line follows the
conventions ``0**(-alpha) = inf``, ``inf**(-alpha) = 0`` for ``alpha > 0`` and
``0 * inf = 0``.  ``0**0`` is defined as ``1`` so that degenerate exponents in
parameter sweeps behave gracefully.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence

import numpy as np

__all__ = [
    "INF",
    "Window",
    "Regime",
    "RegimeCase",
    "classify_regime",
    "ext_pow",
    "ext_mul",
    "ext_div",
    "ext_pow_array",
    "ext_mul_array",
]

INF = math.inf


# ---------------------------------------------------------------------------
# Extended nonnegative arithmetic
# ---------------------------------------------------------------------------

def ext_pow(x: float, alpha: float) -> float:
    """``x**alpha`` on [0, inf] with the 0/inf power conventions.

    ``0**(-a) = inf`` and ``inf**(-a) = 0`` for ``a > 0``; ``x**0 = 1`` for
    every ``x`` including 0 and inf.
    """
    if x < 0:
        raise ValueError(f"extended power requires x >= 0, got {x}")
    if alpha == 0:
        return 1.0
    if x == 0:
        return 0.0 if alpha > 0 else INF
    if math.isinf(x):
        return INF if alpha > 0 else 0.0
    try:
        return float(x) ** alpha
    except OverflowError:
        return INF


def ext_mul(x: float, y: float) -> float:
    """Product on [0, inf] with ``0 * inf = 0``."""
    if x == 0 or y == 0:
        return 0.0
    return x * y


def ext_div(x: float, y: float) -> float:
    """Quotient on [0, inf]: ``x/0 = inf`` for x > 0, ``x/inf = 0``, ``0/0 = 0``."""
    if x == 0:
        return 0.0
    if y == 0:
        return INF
    if math.isinf(y):
        return 0.0
    return x / y


def ext_pow_array(x: np.ndarray, alpha: float) -> np.ndarray:
    """Elementwise :func:`ext_pow` for a nonnegative array and scalar exponent."""
    x = np.asarray(x, dtype=float)
    if alpha == 0:
        return np.ones_like(x)
    out = np.empty_like(x)
    zero = x == 0
    inf = np.isinf(x)
    rest = ~(zero | inf)
    out[rest] = x[rest] ** alpha
    if alpha > 0:
        out[zero] = 0.0
        out[inf] = INF
    else:
        out[zero] = INF
        out[inf] = 0.0
    return out


def ext_mul_array(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Elementwise product with ``0 * inf = 0`` (broadcasts)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    zero = (x == 0) | (y == 0)
    with np.errstate(invalid="ignore"):
        out = np.where(zero, 0.0, x * y)
    return out


# ---------------------------------------------------------------------------
# Windows
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Window:
    """A nonnegative sequence on a contiguous integer index range.

    ``values[k]`` is the entry at index ``start + k``.  Equality is
    index-aware: two windows are equal iff both start and values agree.
    """

    start: int
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.values) < 1:
            raise ValueError("window must contain at least one entry")
        vals = tuple(float(v) for v in self.values)
        for v in vals:
            if math.isnan(v) or v < 0:
                raise ValueError(f"window entries must be nonnegative, got {v}")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "start", int(self.start))

    def __len__(self) -> int:
        return len(self.values)

    @property
    def stop(self) -> int:
        """One past the last valid index."""
        return self.start + len(self.values)

    @property
    def last(self) -> int:
        return self.start + len(self.values) - 1

    def indices(self) -> range:
        return range(self.start, self.stop)

    def __contains__(self, n: int) -> bool:
        return self.start <= n < self.stop

    def value_at(self, n: int) -> float:
        if n not in self:
            raise IndexError(f"index {n} outside window [{self.start}, {self.last}]")
        return self.values[n - self.start]

    def __iter__(self) -> Iterator[float]:
        return iter(self.values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    @property
    def finite(self) -> bool:
        return all(math.isfinite(v) for v in self.values)

    def require_finite(self, name: str = "window") -> "Window":
        if not self.finite:
            raise ValueError(f"{name} must be finite-valued")
        return self

    def slice(self, lo: int, hi: int) -> "Window":
        """Contiguous sub-window on the inclusive index range [lo, hi]."""
        if not (self.start <= lo <= hi <= self.last):
            raise IndexError(
                f"slice [{lo}, {hi}] out of range for window [{self.start}, {self.last}]"
            )
        i, j = lo - self.start, hi - self.start + 1
        return Window(lo, self.values[i:j])

    def reversed(self) -> "Window":
        """Index reversal ``x_bar[n] = x[-n]`` (used by the dual inequalities)."""
        return Window(-self.last, tuple(reversed(self.values)))

    def with_values(self, values: Sequence[float]) -> "Window":
        if len(values) != len(self.values):
            raise ValueError("replacement values must match window length")
        return Window(self.start, tuple(float(v) for v in values))

    def scaled(self, t: float) -> "Window":
        return Window(self.start, tuple(t * v for v in self.values))

    # -- JSON wire format: {"start": int, "values": [numbers | "inf"]} -------

    def to_json(self) -> dict:
        out = []
        for v in self.values:
            out.append("inf" if math.isinf(v) else v)
        return {"start": self.start, "values": out}

    @classmethod
    def from_json(cls, obj: dict) -> "Window":
        if not isinstance(obj, dict) or "start" not in obj or "values" not in obj:
            raise ValueError('window JSON must be {"start": int, "values": [...]}')
        vals = []
        for v in obj["values"]:
            if isinstance(v, str):
                if v.strip().lower() in ("inf", "infinity", "+inf"):
                    vals.append(INF)
                else:
                    raise ValueError(f"unrecognized window entry {v!r}")
            else:
                vals.append(float(v))
        return cls(int(obj["start"]), tuple(vals))


def common_window(*windows: Window) -> None:
    """Validate that all windows share start and length."""
    first = windows[0]
    for w in windows[1:]:
        if w.start != first.start or len(w) != len(first):
            raise ValueError(
                "windows must share the same index range: "
                f"[{first.start}, {first.last}] vs [{w.start}, {w.last}]"
            )


# ---------------------------------------------------------------------------
# Parameter regimes
# ---------------------------------------------------------------------------

class RegimeCase(str, Enum):
    """The four (p, q) cases of the optimal-constant estimates.

    I:   1 < p <= q
    II:  p > 1 and q < p
    III: p <= 1 and p <= q
    IV:  q < p <= 1

    The four preimages tile (0, inf)^2; the diagonal p = q belongs to I for
    p > 1 and to III for p <= 1.
    """

    I = "I"
    II = "II"
    III = "III"
    IV = "IV"


@dataclass(frozen=True)
class Regime:
    p: float
    q: float
    case_id: RegimeCase

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q, "case": self.case_id.value}


def classify_regime(p: float, q: float) -> Regime:
    """Classify positive exponents (p, q) into the unique case I-IV."""
    p = float(p)
    q = float(q)
    if not (p > 0 and q > 0) or math.isnan(p) or math.isnan(q):
        raise ValueError(f"exponents must be positive, got p={p}, q={q}")
    if p > 1:
        case = RegimeCase.I if p <= q else RegimeCase.II
    else:
        case = RegimeCase.III if p <= q else RegimeCase.IV
    return Regime(p, q, case)
