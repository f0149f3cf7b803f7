"""Brute-force estimation of the true least constant on small windows.

The least constant equals ``sup_a lhs(a) / rhs(a)`` over nonnegative
sequences.  On a finite window this module maximizes the ratio over candidate
families (single spikes, indicator blocks, Dirichlet points on the constraint
surface, multiplicative-ascent polished candidates) and returns the best
ratio found, which is always a certified lower bound on the true constant.

For ``p <= 1 <= q`` (including ``q = inf``) the maximum is attained at a
spike: substituting ``x = a^p`` makes the numerator a composition of convex
maps of ``x`` and the constraint set the simplex ``sum x_m v_m = 1``, whose
extreme points are single spikes.  In that range the returned constant is
exact, certificate ``exact-spike``; everywhere else it is ``heuristic``.

Everything is deterministic given the config seed: per-restart generators are
derived from ``(seed, restart_index)`` and results merge by max, so the
outcome does not depend on evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .charformulas import CharacterizationResult, char_antigop, char_gop
from .hardyops import (
    ANTIGOP,
    ANTIGOP_SUP,
    GOP,
    GOP_SUP,
    RatioProblem,
    _ratio_batch,
    antigop_psum,
    gop_psum,
)
from .seqcore import Window, ext_div

__all__ = [
    "OracleConfig",
    "OracleResult",
    "EquivalenceRatio",
    "ChainEquivalenceReport",
    "spike_oracle",
    "brute_force_constant",
    "equivalence_ratio",
    "chain_equivalence_sweep",
]

_FAMILIES = ("spikes", "blocks", "random-dirichlet", "gradient-polished")


@dataclass(frozen=True)
class OracleConfig:
    restarts: int = 32
    iterations: int = 500
    step_init: float = 0.5
    step_decay: float = 0.9
    seed: int = 0
    candidate_families: tuple[str, ...] = _FAMILIES
    dirichlet_per_restart: int = 8

    def __post_init__(self) -> None:
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        for fam in self.candidate_families:
            if fam not in _FAMILIES:
                raise ValueError(f"unknown candidate family {fam!r}")


#: A light configuration for large verification sweeps.
FAST_CONFIG = OracleConfig(restarts=2, iterations=40, dirichlet_per_restart=8)


@dataclass(frozen=True)
class OracleResult:
    constant: float
    argmax: Window
    certificate: str  # "exact-spike" or "heuristic"
    evaluations: int

    def to_json(self) -> dict:
        return {
            "constant": self.constant,
            "argmax": self.argmax.to_json(),
            "certificate": self.certificate,
            "evaluations": self.evaluations,
        }


def _spike_exact(problem: RatioProblem) -> bool:
    return problem.p <= 1.0 and (problem.q >= 1.0 or math.isinf(problem.q))


def _spike_pool(n: int) -> np.ndarray:
    return np.eye(n)


def _block_pool(n: int) -> np.ndarray:
    rows = []
    for m1 in range(n):
        for m2 in range(m1, n):
            row = np.zeros(n)
            row[m1 : m2 + 1] = 1.0
            rows.append(row)
    return np.array(rows)


def _dirichlet_pool(problem: RatioProblem, cfg: OracleConfig) -> np.ndarray:
    n = problem.size
    v = problem.v.as_array()
    vsafe = np.where(v > 0, v, 1.0)
    draws = []
    for idx in range(cfg.restarts):
        rng = np.random.default_rng((cfg.seed, idx))
        x = rng.dirichlet(np.ones(n), size=cfg.dirichlet_per_restart)
        draws.append((x / vsafe) ** (1.0 / problem.p))
    return np.concatenate(draws)


def _polish(
    problem: RatioProblem, a0: np.ndarray, cfg: OracleConfig
) -> tuple[np.ndarray, float, int]:
    """Multiplicative coordinate ascent from ``a0``; returns (a, ratio, evals)."""
    n = problem.size
    a = a0.astype(float).copy()
    best = float(_ratio_batch(problem, a[None, :])[0])
    evals = 1
    step = cfg.step_init
    idx = np.arange(n)
    for _ in range(cfg.iterations):
        if step < 1e-12 or math.isinf(best):
            break
        probes = np.repeat(a[None, :], 2 * n, axis=0)
        probes[idx, idx] *= 1.0 + step
        probes[n + idx, idx] /= 1.0 + step
        r = _ratio_batch(problem, probes)
        evals += 2 * n
        k = int(np.argmax(r))
        if r[k] > best:
            best = float(r[k])
            a = probes[k]
        else:
            step *= cfg.step_decay
    return a, best, evals


def spike_oracle(problem: RatioProblem) -> OracleResult:
    """Exact maximization over single-spike candidates for sup-inner forms."""
    if problem.form.inner_kind != "sup":
        raise ValueError("spike oracle requires a sup-inner operator form")
    if not problem.p <= 1.0:
        raise ValueError(f"spike oracle requires p in (0, 1], got p={problem.p}")
    pool = _spike_pool(problem.size)
    ratios = _ratio_batch(problem, pool)
    k = int(np.argmax(ratios))
    cert = "exact-spike" if _spike_exact(problem) else "heuristic"
    return OracleResult(
        constant=float(ratios[k]),
        argmax=Window(problem.u.start, tuple(pool[k])),
        certificate=cert,
        evaluations=len(pool),
    )


def brute_force_constant(
    problem: RatioProblem, cfg: OracleConfig | None = None
) -> OracleResult:
    """Best ratio over all candidate families; a lower bound on the constant."""
    cfg = cfg or OracleConfig()
    pool, evals = _assemble_pool(problem, cfg)
    ratios = _ratio_batch(problem, pool)
    evals += len(pool)
    if "gradient-polished" in cfg.candidate_families and not np.isinf(ratios).any():
        order = np.argsort(ratios)[::-1][: cfg.restarts]
        extra = []
        for k in order:
            a, _, used = _polish(problem, pool[k], cfg)
            extra.append(a)
            evals += used
        pool = np.concatenate([pool, np.array(extra)])
        ratios = np.concatenate([ratios, _ratio_batch(problem, np.array(extra))])
        evals += len(extra)
    k = int(np.argmax(ratios))
    cert = "exact-spike" if _spike_exact(problem) else "heuristic"
    return OracleResult(
        constant=float(ratios[k]),
        argmax=Window(problem.u.start, tuple(pool[k])),
        certificate=cert,
        evaluations=evals,
    )


def _assemble_pool(problem: RatioProblem, cfg: OracleConfig) -> tuple[np.ndarray, int]:
    n = problem.size
    parts = []
    if "spikes" in cfg.candidate_families:
        parts.append(_spike_pool(n))
    if "blocks" in cfg.candidate_families and n > 1:
        parts.append(_block_pool(n))
    if "random-dirichlet" in cfg.candidate_families:
        parts.append(_dirichlet_pool(problem, cfg))
    if not parts:
        parts.append(_spike_pool(n))
    return np.concatenate(parts), 0


@dataclass(frozen=True)
class EquivalenceRatio:
    formula: float
    brute: float
    ratio: float
    sentinel: bool
    char: CharacterizationResult
    oracle: OracleResult

    def to_json(self) -> dict:
        return {
            "formula": self.formula,
            "brute": self.brute,
            "ratio": self.ratio,
            "sentinel": self.sentinel,
            "char": self.char.to_json(),
            "oracle": self.oracle.to_json(),
        }


def equivalence_ratio(
    problem: RatioProblem,
    cfg: OracleConfig | None = None,
    variant: str = "printed",
) -> EquivalenceRatio:
    """Closed-form estimate F vs brute-force B for a sum-inner problem.

    Degenerate 0/0 (and inf/inf) comparisons report the sentinel ratio 1
    with a flag rather than NaN.
    """
    if problem.form == GOP:
        ch = char_gop(problem.u, problem.v, problem.w, problem.p, problem.q)
    elif problem.form == ANTIGOP:
        ch = char_antigop(
            problem.u, problem.v, problem.w, problem.p, problem.q, variant=variant
        )
    else:
        raise ValueError(
            "equivalence ratios are defined for the gop/antigop sum forms, "
            f"got {problem.form.name}"
        )
    res = brute_force_constant(problem, cfg)
    F, B = ch.value, res.constant
    if (F == 0 and B == 0) or (math.isinf(F) and math.isinf(B)):
        return EquivalenceRatio(F, B, 1.0, True, ch, res)
    return EquivalenceRatio(F, B, ext_div(F, B), False, ch, res)


@dataclass(frozen=True)
class ChainEquivalenceReport:
    family: str
    a1: float
    a2: float
    a3: float
    violations: int
    ratio31: float
    sentinel: bool
    pool_size: int

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "A1": self.a1,
            "A2": self.a2,
            "A3": self.a3,
            "violations": self.violations,
            "ratio_A3_A1": self.ratio31,
            "sentinel": self.sentinel,
            "pool_size": self.pool_size,
        }


def chain_equivalence_sweep(
    u: Window,
    v: Window,
    w: Window,
    p: float,
    q: float,
    cfg: OracleConfig | None = None,
    family: str = "antigop",
) -> ChainEquivalenceReport:
    """Brute-force values of the sup / sum / powered-sum triple.

    All three quantities are maximized over one shared candidate pool (the
    base families plus the polished candidates of each objective), so the
    elementary tail chain makes the ordering A1 <= A2 <= A3 hold candidate by
    candidate, hence for the maxima.  ``family`` selects the iterated triple
    ("antigop" or "gop") or the non-iterated one ("simple", which fixes the
    inner weight at one).
    """
    if not 0 < p <= 1:
        raise ValueError(f"the chain equivalences require p in (0, 1], got {p}")
    cfg = cfg or OracleConfig()
    if family == "antigop":
        forms = (ANTIGOP_SUP, ANTIGOP, antigop_psum(p))
    elif family == "gop":
        forms = (GOP_SUP, GOP, gop_psum(p))
    elif family == "simple":
        forms = (ANTIGOP_SUP, ANTIGOP, antigop_psum(p))
        u = u.with_values([1.0] * len(u))
    else:
        raise ValueError(f"family must be antigop/gop/simple, got {family!r}")
    problems = [RatioProblem(u, v, w, p, q, f) for f in forms]
    pool, _ = _assemble_pool(problems[0], cfg)
    if "gradient-polished" in cfg.candidate_families:
        extra = []
        for prob in problems:
            r = _ratio_batch(prob, pool)
            if np.isinf(r).any():
                continue
            order = np.argsort(r)[::-1][: cfg.restarts]
            for k in order:
                a, _, _ = _polish(prob, pool[k], cfg)
                extra.append(a)
        if extra:
            pool = np.concatenate([pool, np.array(extra)])
    r1, r2, r3 = (_ratio_batch(prob, pool) for prob in problems)
    violations = int(np.sum((r1 > r2) | (r2 > r3)))
    a1, a2, a3 = float(np.max(r1)), float(np.max(r2)), float(np.max(r3))
    sentinel = a1 == 0 and a3 == 0
    ratio31 = 1.0 if sentinel else ext_div(a3, a1)
    return ChainEquivalenceReport(
        family, a1, a2, a3, violations, ratio31, sentinel, len(pool)
    )
