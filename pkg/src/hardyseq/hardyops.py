"""Evaluation of the discrete iterated operators and both inequality sides.

The iterated operator at index ``n`` is

    sup over i in the outer range of  u_i * inner(a, i)

where the outer range is a tail ``{i >= n}`` or a head ``{i <= n}`` of the
window and the inner aggregation is one of

* ``sum``:   ``sum_{k <= i} a_k``  (left) or ``sum_{k >= i} a_k``  (right)
* ``sup``:   ``sup_{k <= i} a_k``  or ``sup_{k >= i} a_k``
* ``psum``:  r-powered sums; the entry is ``(sup_i u_i^r sum a_k^r)^(1/r)``

so that with a weighted outer l^q norm the eight combinations cover the
principal inequality, its reflected companion, both duals and the sup/powered
variants used by the equivalence theorems.

All aggregations run as prefix/suffix scans, O(N) per evaluation, and the
private batch helpers evaluate many candidate sequences at once (the
brute-force oracle calls them millions of times).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .seqcore import INF, Window, common_window, ext_div, ext_mul_array

__all__ = [
    "OperatorForm",
    "RatioProblem",
    "GOP",
    "ANTIGOP",
    "DUAL_GOP",
    "DUAL_ANTIGOP",
    "GOP_SUP",
    "ANTIGOP_SUP",
    "gop_psum",
    "antigop_psum",
    "apply_iterated",
    "lhs",
    "rhs",
    "ratio",
    "elementary_chain_check",
]


@dataclass(frozen=True)
class OperatorForm:
    """Shape of one iterated operator.

    outer:       "tail" (sup over i >= n) or "head" (sup over i <= n)
    inner_kind:  "sum", "sup" or "psum"
    inner_dir:   "left" (k <= i) or "right" (k >= i)
    inner_exponent: r for the psum kind; ignored otherwise
    """

    outer: str
    inner_kind: str
    inner_dir: str
    inner_exponent: float = 1.0

    def __post_init__(self) -> None:
        if self.outer not in ("tail", "head"):
            raise ValueError(f"outer must be 'tail' or 'head', got {self.outer!r}")
        if self.inner_kind not in ("sum", "sup", "psum"):
            raise ValueError(f"inner_kind must be sum/sup/psum, got {self.inner_kind!r}")
        if self.inner_dir not in ("left", "right"):
            raise ValueError(f"inner_dir must be 'left' or 'right', got {self.inner_dir!r}")
        if self.inner_kind == "psum" and not self.inner_exponent > 0:
            raise ValueError("psum exponent must be positive")

    @property
    def name(self) -> str:
        base = {
            ("tail", "sum", "left"): "gop",
            ("tail", "sum", "right"): "antigop",
            ("head", "sum", "right"): "dual-gop",
            ("head", "sum", "left"): "dual-antigop",
            ("tail", "sup", "left"): "gop-sup",
            ("tail", "sup", "right"): "antigop-sup",
            ("tail", "psum", "left"): "gop-psum",
            ("tail", "psum", "right"): "antigop-psum",
            ("head", "sup", "right"): "dual-gop-sup",
            ("head", "sup", "left"): "dual-antigop-sup",
            ("head", "psum", "right"): "dual-gop-psum",
            ("head", "psum", "left"): "dual-antigop-psum",
        }
        return base[(self.outer, self.inner_kind, self.inner_dir)]


# The named forms of the inequalities under study.
GOP = OperatorForm("tail", "sum", "left")
ANTIGOP = OperatorForm("tail", "sum", "right")
DUAL_GOP = OperatorForm("head", "sum", "right")
DUAL_ANTIGOP = OperatorForm("head", "sum", "left")
GOP_SUP = OperatorForm("tail", "sup", "left")
ANTIGOP_SUP = OperatorForm("tail", "sup", "right")


def gop_psum(r: float) -> OperatorForm:
    return OperatorForm("tail", "psum", "left", r)


def antigop_psum(r: float) -> OperatorForm:
    return OperatorForm("tail", "psum", "right", r)


def form_by_name(name: str, r: float = 1.0) -> OperatorForm:
    table = {
        "gop": GOP,
        "antigop": ANTIGOP,
        "dual-gop": DUAL_GOP,
        "dual-antigop": DUAL_ANTIGOP,
        "gop-sup": GOP_SUP,
        "antigop-sup": ANTIGOP_SUP,
        "gop-psum": gop_psum(r),
        "antigop-psum": antigop_psum(r),
    }
    try:
        return table[name]
    except KeyError:
        raise ValueError(f"unknown operator form {name!r}") from None


@dataclass(frozen=True)
class RatioProblem:
    """One instance of the three-weight inequality: weights, exponents, form.

    ``q = math.inf`` selects the weighted sup norm ``sup_n w_n * entry_n`` on
    the left-hand side (with ``w`` constant one this is the plain sup form of
    the exact q-infinity lemma).
    """

    u: Window
    v: Window
    w: Window
    p: float
    q: float
    form: OperatorForm = GOP

    def __post_init__(self) -> None:
        common_window(self.u, self.v, self.w)
        self.u.require_finite("u")
        self.v.require_finite("v")
        self.w.require_finite("w")
        if not self.p > 0:
            raise ValueError(f"p must be positive, got {self.p}")
        if not self.q > 0:
            raise ValueError(f"q must be positive, got {self.q}")

    @property
    def size(self) -> int:
        return len(self.u)


# ---------------------------------------------------------------------------
# Batched scans (candidates stacked along axis 0)
# ---------------------------------------------------------------------------

def _cums(x: np.ndarray, right: bool) -> np.ndarray:
    if right:
        return np.cumsum(x[..., ::-1], axis=-1)[..., ::-1]
    return np.cumsum(x, axis=-1)


def _cummax(x: np.ndarray, right: bool) -> np.ndarray:
    if right:
        return np.maximum.accumulate(x[..., ::-1], axis=-1)[..., ::-1]
    return np.maximum.accumulate(x, axis=-1)


def _iterated_entries(u: np.ndarray, a: np.ndarray, form: OperatorForm) -> np.ndarray:
    """Entries of the iterated operator for a batch of candidates ``a``.

    ``u`` has shape (N,), ``a`` shape (..., N); returns shape (..., N).
    """
    right = form.inner_dir == "right"
    tail_outer = form.outer == "tail"
    if form.inner_kind == "sum":
        inner = _cums(a, right)
        prod = u * inner
    elif form.inner_kind == "sup":
        inner = _cummax(a, right)
        prod = u * inner
    else:  # psum, entry = (sup u^r * sum a^r)^(1/r), computed on the rooted scale
        r = form.inner_exponent
        if r == 1.0:
            prod = u * _cums(a, right)
        else:
            s = _cums(a**r, right)
            # Tails with at most one nonzero term have p-norm equal to their
            # max; substituting that exact value avoids the pow round trip.
            counts = _cums((a > 0).astype(float), right)
            t = np.where(counts <= 1.0, _cummax(a, right), s ** (1.0 / r))
            prod = u * t
    return _cummax(prod, right=tail_outer)


def _lhs_batch(w: np.ndarray, q: float, entries: np.ndarray) -> np.ndarray:
    if math.isinf(q):
        return np.max(ext_mul_array(w, entries), axis=-1)
    return ext_mul_array(entries**q, w).sum(axis=-1) ** (1.0 / q)


def _rhs_batch(v: np.ndarray, p: float, a: np.ndarray) -> np.ndarray:
    return ((a**p) @ v) ** (1.0 / p)


def _ratio_batch(problem: RatioProblem, a: np.ndarray) -> np.ndarray:
    """Ratios lhs/rhs for a batch of candidates; 0/0 yields 0, x/0 yields inf."""
    u = problem.u.as_array()
    v = problem.v.as_array()
    w = problem.w.as_array()
    num = _lhs_batch(w, problem.q, _iterated_entries(u, a, problem.form))
    den = _rhs_batch(v, problem.p, a)
    out = np.zeros(np.broadcast_shapes(num.shape, den.shape))
    pos = den > 0
    out[pos] = num[pos] / den[pos]
    out[~pos & (num > 0)] = INF
    return out


# ---------------------------------------------------------------------------
# Public single-sequence operations
# ---------------------------------------------------------------------------

def apply_iterated(u: Window, a: Window, form: OperatorForm = GOP) -> Window:
    """Windowed entries of the iterated operator applied to ``a``."""
    common_window(u, a)
    u.require_finite("u")
    a.require_finite("a")
    entries = _iterated_entries(u.as_array(), a.as_array(), form)
    return u.with_values(entries.tolist())


def lhs(problem: RatioProblem, a: Window) -> float:
    """Left-hand side: the weighted l^q norm of the iterated entries."""
    common_window(problem.u, a)
    a.require_finite("a")
    entries = _iterated_entries(problem.u.as_array(), a.as_array(), problem.form)
    return float(_lhs_batch(problem.w.as_array(), problem.q, entries))


def rhs(v: Window, p: float, a: Window) -> float:
    """Right-hand side ``(sum a_n^p v_n)^(1/p)``."""
    common_window(v, a)
    if not p > 0:
        raise ValueError(f"p must be positive, got {p}")
    a.require_finite("a")
    return float(_rhs_batch(v.as_array(), p, a.as_array()))


def ratio(problem: RatioProblem, a: Window) -> float:
    """``lhs / rhs`` with the extended-value conventions; rejects ``a = 0``."""
    if not any(x > 0 for x in a.values):
        raise ValueError("ratio requires a nonzero candidate sequence")
    return ext_div(lhs(problem, a), rhs(problem.v, problem.p, a))


def elementary_chain_check(a: Window, p: float, n: int) -> tuple[float, float, float]:
    """The elementary tail chain at index ``n`` for ``p in (0, 1]``.

    Returns ``(sup_{i>=n} a_i, sum_{i>=n} a_i, (sum_{i>=n} a_i^p)^(1/p))``,
    which is nondecreasing.  Tails supported on at most one index are
    evaluated exactly (all three coincide there).
    """
    if not 0 < p <= 1:
        raise ValueError(f"the chain requires p in (0, 1], got {p}")
    a.require_finite("a")
    tail = a.as_array()[n - a.start:] if n in a else None
    if tail is None:
        raise IndexError(f"index {n} outside window [{a.start}, {a.last}]")
    s1 = float(np.max(tail))
    if s1 == 0.0:
        return 0.0, 0.0, 0.0
    # Evaluate on the max-normalized tail: the largest ratio is exactly 1, so
    # r**p >= r holds entry by entry in floating point and the summed chain
    # cannot invert by roundoff.
    r = tail / s1
    t1 = float(np.sum(r))
    if p == 1.0 or int((tail > 0).sum()) <= 1:
        t3 = t1
    else:
        t3 = float(np.sum(r**p) ** (1.0 / p))
        # exact t3 >= exact t1; flooring repairs sub-ulp pow drift near p = 1,
        # keeping the returned value a faithful rounding of the true one
        t3 = max(t3, t1)
    return s1, s1 * t1, s1 * t3


def dual_problem(problem: RatioProblem) -> RatioProblem:
    """Index-reversed companion problem (same ratio on reversed candidates)."""
    f = problem.form
    flipped = OperatorForm(
        "head" if f.outer == "tail" else "tail",
        f.inner_kind,
        "right" if f.inner_dir == "left" else "left",
        f.inner_exponent,
    )
    return RatioProblem(
        problem.u.reversed(),
        problem.v.reversed(),
        problem.w.reversed(),
        problem.p,
        problem.q,
        flipped,
    )
