"""Exact step-function calculus: the discrete to continuous bridge.

A window embeds as a piecewise-constant function on unit integer cells
(``f = sum a_n 1_[n, n+1)``), its cumulatives are exact piecewise-linear
functions, and weighted tail suprema of those cumulatives are computed as
finitely many interval endpoint evaluations.  Everything runs in rational
arithmetic, so the headline identity (the discrete left-hand side of the
principal inequality equals its continuous counterpart for step data) is
checked bit exactly when the outer exponent is a positive integer.

For the principal (gop) form the continuous integrand ``t -> sup_{s>=t}
u(s) * int_{-inf}^s f`` is constant on every cell, which collapses the
continuous integral to the discrete sum exactly.  For the reflected
(antigop) form the inner cumulative decreases, the integrand genuinely
depends on ``t`` inside the first cell, and only ``continuous <= discrete``
holds (the inequalities are still equivalent, with the same least constant,
by a spike-shrinking limit; the pointwise identity fails, e.g. on a
one-cell window with unit data the continuous side is ``(q+1)^(-1/q)``).
The checker computes the reflected cell integrals in closed form, splitting
each cell at the crossing of the moving and frozen suprema.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from .seqcore import Window, common_window

__all__ = [
    "StepFunction",
    "PiecewiseLinear",
    "BridgeCheckResult",
    "embed_sequence",
    "cumulative",
    "sup_weighted_tail",
    "bridge_check",
]

Rat = Fraction


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"step data must be finite, got {x}")
        return Fraction(x)  # exact binary value
    raise TypeError(f"cannot convert {type(x).__name__} to Fraction")


@dataclass(frozen=True)
class StepFunction:
    """Nonnegative piecewise-constant function on unit integer cells.

    ``values[k]`` is the value on ``[start + k, start + k + 1)``; the
    function vanishes outside the window.
    """

    start: int
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        vals = tuple(_to_fraction(v) for v in self.values)
        if any(v < 0 for v in vals):
            raise ValueError("step function values must be nonnegative")
        object.__setattr__(self, "values", vals)

    @property
    def stop(self) -> int:
        return self.start + len(self.values)

    def __call__(self, s: Fraction) -> Fraction:
        s = _to_fraction(s)
        n = math.floor(s)
        if self.start <= n < self.stop:
            return self.values[n - self.start]
        return Rat(0)

    def total(self) -> Fraction:
        return sum(self.values, Rat(0))


@dataclass(frozen=True)
class PiecewiseLinear:
    """Continuous piecewise-linear function, affine on each unit cell.

    Stored as its values at the integer knots ``start .. start + N``;
    constant outside (equal to the boundary knot values).
    """

    start: int
    knots: tuple[Fraction, ...]  # length N + 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "knots", tuple(_to_fraction(v) for v in self.knots))
        if len(self.knots) < 2:
            raise ValueError("need at least two knots")

    @property
    def stop(self) -> int:
        return self.start + len(self.knots) - 1

    def __call__(self, s) -> Fraction:
        s = _to_fraction(s)
        if s <= self.start:
            return self.knots[0]
        if s >= self.stop:
            return self.knots[-1]
        n = math.floor(s)
        lam = s - n
        k = n - self.start
        return self.knots[k] * (1 - lam) + self.knots[k + 1] * lam

    @property
    def nondecreasing(self) -> bool:
        return all(a <= b for a, b in zip(self.knots, self.knots[1:]))

    @property
    def nonincreasing(self) -> bool:
        return all(a >= b for a, b in zip(self.knots, self.knots[1:]))


def embed_sequence(a: Window) -> StepFunction:
    """Step function equal to ``a_n`` on ``[n, n+1)`` and zero elsewhere."""
    a.require_finite("a")
    return StepFunction(a.start, tuple(_to_fraction(v) for v in a.values))


def cumulative(f: StepFunction, direction: str) -> PiecewiseLinear:
    """Exact antiderivative: running integral from the left or from the right."""
    n = len(f.values)
    knots = [Rat(0)] * (n + 1)
    if direction == "from-left":
        acc = Rat(0)
        for k in range(n):
            knots[k] = acc
            acc += f.values[k]
        knots[n] = acc
    elif direction == "from-right":
        acc = Rat(0)
        for k in range(n - 1, -1, -1):
            knots[k + 1] = acc
            acc += f.values[k]
        knots[0] = acc
    else:
        raise ValueError(f"direction must be 'from-left' or 'from-right', got {direction!r}")
    return PiecewiseLinear(f.start, tuple(knots))


def sup_weighted_tail(u: StepFunction, F: PiecewiseLinear, t) -> Fraction:
    """``sup_{s >= t} u(s) * F(s)``, exact.

    On each cell ``u`` is constant and ``F`` affine, so the cell supremum sits
    at an endpoint (a right limit when ``F`` increases there, the left end
    otherwise); the global supremum is a maximum over the finitely many cells
    where ``u`` lives.  Requires ``F`` monotone.
    """
    if not (F.nondecreasing or F.nonincreasing):
        raise ValueError("sup_weighted_tail requires a monotone cumulative")
    t = _to_fraction(t)
    best = Rat(0)  # u vanishes outside its window
    for k, uval in enumerate(u.values):
        n = u.start + k
        if uval == 0 or t >= n + 1:
            continue
        lo = max(_to_fraction(n), t)
        cell_sup = F(n + 1) if F(n + 1) >= F(lo) else F(lo)
        cand = uval * cell_sup
        if cand > best:
            best = cand
    return best


# ---------------------------------------------------------------------------
# Full bridge comparison
# ---------------------------------------------------------------------------

def _pow_exact(x: Fraction, k: int) -> Fraction:
    return x**k


def _integral_power_affine(A: Fraction, B: Fraction, T: Fraction, q) -> Fraction | float:
    """``int_0^T (A - B*tau)^q dtau`` for ``A, A - B*T >= 0``.

    Exact Fraction for positive integer q, float via the same closed form
    otherwise.
    """
    if T == 0:
        return Rat(0) if isinstance(q, int) else 0.0
    if B == 0:
        if isinstance(q, int):
            return _pow_exact(A, q) * T
        return float(A) ** q * float(T)
    if isinstance(q, int):
        return (_pow_exact(A, q + 1) - _pow_exact(A - B * T, q + 1)) / (B * (q + 1))
    a, b, tt = float(A), float(B), float(T)
    return (a ** (q + 1) - (a - b * tt) ** (q + 1)) / (b * (q + 1))


@dataclass(frozen=True)
class BridgeCheckResult:
    form: str
    discrete_lhs: float
    continuous_lhs: float
    discrete_rhs: float
    continuous_rhs: float
    #: q-th powers of the two left sides (Fractions when exact_lhs)
    discrete_lhs_pow: Fraction | float
    continuous_lhs_pow: Fraction | float
    #: p-th powers of the two right sides (Fractions when exact_rhs)
    discrete_rhs_pow: Fraction | float
    continuous_rhs_pow: Fraction | float
    exact_lhs: bool
    exact_rhs: bool

    @property
    def lhs_equal(self) -> bool:
        return self.discrete_lhs_pow == self.continuous_lhs_pow

    @property
    def rhs_equal(self) -> bool:
        return self.discrete_rhs_pow == self.continuous_rhs_pow

    def to_json(self) -> dict:
        return {
            "form": self.form,
            "discrete_lhs": self.discrete_lhs,
            "continuous_lhs": self.continuous_lhs,
            "discrete_rhs": self.discrete_rhs,
            "continuous_rhs": self.continuous_rhs,
            "exact_lhs": self.exact_lhs,
            "exact_rhs": self.exact_rhs,
            "lhs_equal": self.lhs_equal,
            "rhs_equal": self.rhs_equal,
        }


def _as_int_exponent(x: float) -> int | None:
    if float(x).is_integer() and x >= 1:
        return int(x)
    return None


def bridge_check(
    u: Window,
    v: Window,
    w: Window,
    a: Window,
    p: float,
    q: float,
    form: str = "gop",
) -> BridgeCheckResult:
    """Compare both sides of the discrete and continuous inequalities.

    The sequence ``a`` is embedded as a unit-cell step function; weights
    embed likewise.  Returns all four quantities.  For ``form="gop"`` the two
    left sides agree exactly; for ``form="antigop"`` the continuous one is at
    most the discrete one.  Right sides always agree for embedded data.
    Exactness flags report whether the comparison ran in rational arithmetic
    (integer exponents) or floating point.
    """
    common_window(u, v, w, a)
    if not (p > 0 and q > 0):
        raise ValueError(f"exponents must be positive, got p={p}, q={q}")
    if form not in ("gop", "antigop"):
        raise ValueError(f"form must be 'gop' or 'antigop', got {form!r}")
    for win, name in ((u, "u"), (v, "v"), (w, "w"), (a, "a")):
        win.require_finite(name)

    U = [_to_fraction(x) for x in u.values]
    V = [_to_fraction(x) for x in v.values]
    W = [_to_fraction(x) for x in w.values]
    A = [_to_fraction(x) for x in a.values]
    n_len = len(A)
    qi = _as_int_exponent(q)
    pi = _as_int_exponent(p)

    f = embed_sequence(a)
    u_step = StepFunction(u.start, tuple(U))

    # Discrete iterated entries.
    if form == "gop":
        inner = []
        acc = Rat(0)
        for k in range(n_len):
            acc += A[k]
            inner.append(acc)
    else:
        inner = [Rat(0)] * n_len
        acc = Rat(0)
        for k in range(n_len - 1, -1, -1):
            acc += A[k]
            inner[k] = acc
    entries = [Rat(0)] * n_len
    best = Rat(0)
    for i in range(n_len - 1, -1, -1):
        cand = U[i] * inner[i]
        if cand > best:
            best = cand
        entries[i] = best

    if qi is not None:
        discrete_lhs_pow: Fraction | float = sum(
            (W[i] * _pow_exact(entries[i], qi) for i in range(n_len)), Rat(0)
        )
    else:
        discrete_lhs_pow = sum(float(W[i]) * float(entries[i]) ** q for i in range(n_len))

    # Continuous left side.
    if form == "gop":
        F = cumulative(f, "from-left")
        sups = [sup_weighted_tail(u_step, F, Rat(n)) for n in u.indices()]
        if qi is not None:
            continuous_lhs_pow: Fraction | float = sum(
                (W[i] * _pow_exact(sups[i], qi) for i in range(n_len)), Rat(0)
            )
        else:
            continuous_lhs_pow = sum(
                float(W[i]) * float(sups[i]) ** q for i in range(n_len)
            )
    else:
        G = cumulative(f, "from-right")
        cell_integrals: list[Fraction | float] = []
        for k in range(n_len):
            n = u.start + k
            frozen = sup_weighted_tail(u_step, G, Rat(n + 1))
            g_left = G(Rat(n))
            moving0 = U[k] * g_left
            slope = U[k] * A[k]
            qq: int | float = qi if qi is not None else q
            if moving0 <= frozen:
                # frozen supremum dominates throughout the cell
                if qi is not None:
                    cell = _pow_exact(frozen, qi)
                else:
                    cell = float(frozen) ** q
            else:
                tau = Rat(1) if slope == 0 else min(Rat(1), (moving0 - frozen) / slope)
                head = _integral_power_affine(moving0, slope, tau, qq)
                if qi is not None:
                    cell = head + _pow_exact(frozen, qi) * (1 - tau)
                else:
                    cell = head + float(frozen) ** q * float(1 - tau)
            cell_integrals.append(cell)
        if qi is not None:
            continuous_lhs_pow = sum(
                (W[i] * cell_integrals[i] for i in range(n_len)), Rat(0)
            )
        else:
            continuous_lhs_pow = sum(
                float(W[i]) * cell_integrals[i] for i in range(n_len)
            )

    # Right sides: for cell-constant data the integral of f^p v over a cell
    # is a_n^p v_n, so both reduce to the same rational sum at integer p.
    if pi is not None:
        discrete_rhs_pow: Fraction | float = sum(
            (V[i] * _pow_exact(A[i], pi) for i in range(n_len)), Rat(0)
        )
        continuous_rhs_pow: Fraction | float = sum(
            (V[i] * _pow_exact(f.values[i], pi) * Rat(1) for i in range(n_len)), Rat(0)
        )
    else:
        discrete_rhs_pow = sum(float(V[i]) * float(A[i]) ** p for i in range(n_len))
        continuous_rhs_pow = sum(
            float(V[i]) * float(f.values[i]) ** p for i in range(n_len)
        )

    return BridgeCheckResult(
        form=form,
        discrete_lhs=float(discrete_lhs_pow) ** (1.0 / q),
        continuous_lhs=float(continuous_lhs_pow) ** (1.0 / q),
        discrete_rhs=float(discrete_rhs_pow) ** (1.0 / p),
        continuous_rhs=float(continuous_rhs_pow) ** (1.0 / p),
        discrete_lhs_pow=discrete_lhs_pow,
        continuous_lhs_pow=continuous_lhs_pow,
        discrete_rhs_pow=discrete_rhs_pow,
        continuous_rhs_pow=continuous_rhs_pow,
        exact_lhs=qi is not None,
        exact_rhs=pi is not None,
    )
