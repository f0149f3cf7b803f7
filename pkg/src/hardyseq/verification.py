"""Seeded verification sweeps: property suites with machine-readable reports.

Each suite draws random instances from a seeded generator, runs a hard
assertion per instance, and reports statistics.  Failing instances are
serialized in full so a later run can replay them bit for bit.  All
randomness flows from the sweep seed; reports are deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from . import blocks, bridge, charformulas, hardyops, oracle
from .hardyops import ANTIGOP, GOP, ANTIGOP_SUP, RatioProblem
from .oracle import FAST_CONFIG
from .seqcore import Window

__all__ = ["SweepSpec", "run_verification", "replay_instance", "SCHEMA_VERSION"]

SCHEMA_VERSION = 1

ALL_SUITES = (
    "chain",
    "bridge",
    "partition",
    "linft",
    "equivalence-ratio",
    "chain-equivalence",
    "doubling",
)

DEFAULT_REGIMES = ((2.0, 3.0), (3.0, 2.0), (1.0, 1.0), (0.5, 1.0), (1.0, 0.5), (0.5, 0.25))


@dataclass(frozen=True)
class SweepSpec:
    seed: int = 0
    suites: tuple[str, ...] = ALL_SUITES
    regimes: tuple[tuple[float, float], ...] = DEFAULT_REGIMES
    window_sizes: tuple[int, ...] = (3, 5, 8)
    ensemble: int = 40
    weight_exponent: float = 3.0
    out: str | None = None
    replay: tuple[dict, ...] = ()

    def __post_init__(self) -> None:
        if not self.suites:
            raise ValueError("suite list must not be empty")
        for s in self.suites:
            if s not in ALL_SUITES:
                raise ValueError(f"unknown suite {s!r}; known: {ALL_SUITES}")
        if not self.regimes:
            raise ValueError("regime list must not be empty")
        for pq in self.regimes:
            if len(pq) != 2 or not (pq[0] > 0 and pq[1] > 0):
                raise ValueError(f"regimes must be positive (p, q) pairs, got {pq}")
        if self.ensemble < 1:
            raise ValueError("ensemble size must be >= 1")
        if not all(n >= 1 for n in self.window_sizes):
            raise ValueError("window sizes must be >= 1")

    @classmethod
    def from_json(cls, obj: dict) -> "SweepSpec":
        if not isinstance(obj, dict):
            raise ValueError("sweep spec must be a JSON object")
        kwargs: dict[str, Any] = {}
        if "seed" in obj:
            kwargs["seed"] = int(obj["seed"])
        if "suites" in obj:
            kwargs["suites"] = tuple(obj["suites"])
        if "regimes" in obj:
            kwargs["regimes"] = tuple((float(p), float(q)) for p, q in obj["regimes"])
        if "window_sizes" in obj:
            kwargs["window_sizes"] = tuple(int(n) for n in obj["window_sizes"])
        if "ensemble" in obj:
            kwargs["ensemble"] = int(obj["ensemble"])
        if "weight_exponent" in obj:
            kwargs["weight_exponent"] = float(obj["weight_exponent"])
        if "out" in obj and obj["out"] is not None:
            kwargs["out"] = str(obj["out"])
        if "replay" in obj:
            kwargs["replay"] = tuple(obj["replay"])
        return cls(**kwargs)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "suites": list(self.suites),
            "regimes": [list(pq) for pq in self.regimes],
            "window_sizes": list(self.window_sizes),
            "ensemble": self.ensemble,
            "weight_exponent": self.weight_exponent,
            "out": self.out,
        }


# ---------------------------------------------------------------------------
# Random instance generators (shared with the test suite)
# ---------------------------------------------------------------------------

def rand_window(
    rng: np.random.Generator,
    n: int,
    start: int = 0,
    exponent: float = 3.0,
    zero_prob: float = 0.0,
) -> Window:
    """Log-uniform positive entries ``2**U(-e, e)``, optionally zeroed."""
    vals = 2.0 ** rng.uniform(-exponent, exponent, size=n)
    if zero_prob > 0:
        mask = rng.random(n) < zero_prob
        if mask.all():
            mask[rng.integers(0, n)] = False
        vals = np.where(mask, 0.0, vals)
    return Window(start, tuple(vals))


def rand_dyadic_window(
    rng: np.random.Generator, n: int, start: int = 0, allow_zero: bool = False
) -> Window:
    """Random dyadic rationals k / 2**j, exactly representable as floats."""
    num = rng.integers(0 if allow_zero else 1, 17, size=n)
    den = 2.0 ** rng.integers(0, 4, size=n)
    return Window(start, tuple(num / den))


def _weight_triple(rng: np.random.Generator, n: int, exponent: float) -> tuple[Window, Window, Window]:
    start = int(rng.integers(-4, 5))
    return (
        rand_window(rng, n, start, exponent),
        rand_window(rng, n, start, exponent),
        rand_window(rng, n, start, exponent),
    )


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

def _suite_chain(spec: SweepSpec, rng: np.random.Generator) -> dict:
    failures = []
    probes = max(spec.ensemble * 25, 100)
    for _ in range(probes):
        n_len = int(rng.choice(spec.window_sizes))
        a = rand_window(rng, n_len, int(rng.integers(-4, 5)), spec.weight_exponent, 0.2)
        p = float(rng.uniform(0.05, 1.0)) if rng.random() < 0.8 else 1.0
        n = int(rng.integers(a.start, a.stop))
        s1, s2, s3 = hardyops.elementary_chain_check(a, p, n)
        if not (s1 <= s2 <= s3):
            failures.append(
                {"suite": "chain", "a": a.to_json(), "p": p, "n": n, "observed": [s1, s2, s3]}
            )
    return {"passed": not failures, "probes": probes, "failures": failures}


def _suite_bridge(spec: SweepSpec, rng: np.random.Generator) -> dict:
    failures = []
    checks = 0
    for _ in range(spec.ensemble):
        n_len = int(min(max(spec.window_sizes), 12))
        n_len = int(rng.integers(1, n_len + 1))
        start = int(rng.integers(-4, 5))
        u = rand_dyadic_window(rng, n_len, start)
        v = rand_dyadic_window(rng, n_len, start)
        w = rand_dyadic_window(rng, n_len, start)
        a = rand_dyadic_window(rng, n_len, start, allow_zero=True)
        q = int(rng.integers(1, 4))
        res = bridge.bridge_check(u, v, w, a, 1.0, float(q), form="gop")
        anti = bridge.bridge_check(u, v, w, a, 1.0, float(q), form="antigop")
        checks += 1
        ok = res.lhs_equal and res.rhs_equal and res.exact_lhs and res.exact_rhs
        ok = ok and anti.continuous_lhs_pow <= anti.discrete_lhs_pow and anti.rhs_equal
        if not ok:
            failures.append(
                {
                    "suite": "bridge",
                    "u": u.to_json(),
                    "v": v.to_json(),
                    "w": w.to_json(),
                    "a": a.to_json(),
                    "q": q,
                    "observed": res.to_json(),
                }
            )
    return {"passed": not failures, "checks": checks, "failures": failures}


def _suite_partition(spec: SweepSpec, rng: np.random.Generator) -> dict:
    failures = []
    for _ in range(spec.ensemble):
        n_len = int(rng.choice(spec.window_sizes))
        w = rand_window(rng, n_len, int(rng.integers(-4, 5)), spec.weight_exponent, 0.25)
        n0 = int(rng.integers(w.start, w.stop))
        bp = blocks.block_partition(w, n0)
        report = blocks.verify_partition_invariants(w, bp)
        if not report.all_pass:
            failures.append(
                {
                    "suite": "partition",
                    "w": w.to_json(),
                    "n0": n0,
                    "observed": report.to_json(),
                    "partition": bp.to_json(),
                }
            )
    return {"passed": not failures, "checks": spec.ensemble, "failures": failures}


def _suite_linft(spec: SweepSpec, rng: np.random.Generator) -> dict:
    failures = []
    for _ in range(spec.ensemble):
        n_len = int(rng.choice(spec.window_sizes))
        start = int(rng.integers(-4, 5))
        u = rand_window(rng, n_len, start, spec.weight_exponent)
        v = rand_window(rng, n_len, start, spec.weight_exponent)
        p = float(rng.choice([0.25, 0.5, 1.0]))
        ones = Window(start, (1.0,) * n_len)
        prob = RatioProblem(u, v, ones, p, math.inf, ANTIGOP_SUP)
        exact = charformulas.char_linft_exact(u, v, p)
        spike = oracle.spike_oracle(prob)
        brute = oracle.brute_force_constant(prob, FAST_CONFIG)
        ok = math.isclose(spike.constant, exact, rel_tol=1e-9, abs_tol=0.0)
        ok = ok and math.isclose(brute.constant, exact, rel_tol=1e-6, abs_tol=0.0)
        if not ok:
            failures.append(
                {
                    "suite": "linft",
                    "u": u.to_json(),
                    "v": v.to_json(),
                    "p": p,
                    "observed": {
                        "exact": exact,
                        "spike": spike.constant,
                        "brute": brute.constant,
                    },
                }
            )
    return {"passed": not failures, "checks": spec.ensemble, "failures": failures}


def _suite_equivalence(spec: SweepSpec, rng: np.random.Generator) -> dict:
    failures = []
    stats: dict[str, dict] = {}
    for p, q in spec.regimes:
        for form_name, form in (("gop", GOP), ("antigop", ANTIGOP)):
            ratios = []
            for _ in range(spec.ensemble):
                n_len = int(rng.choice([n for n in spec.window_sizes if n <= 8] or [5]))
                u, v, w = _weight_triple(rng, n_len, spec.weight_exponent)
                prob = RatioProblem(u, v, w, p, q, form)
                eq = oracle.equivalence_ratio(prob, FAST_CONFIG)
                ratios.append(eq.ratio)
                if not (eq.sentinel or (0 < eq.ratio < math.inf)):
                    failures.append(
                        {
                            "suite": "equivalence-ratio",
                            "u": u.to_json(),
                            "v": v.to_json(),
                            "w": w.to_json(),
                            "p": p,
                            "q": q,
                            "form": form_name,
                            "observed": {"F": eq.formula, "B": eq.brute, "ratio": eq.ratio},
                        }
                    )
            arr = np.asarray(ratios)
            stats[f"{form_name}:p={p},q={q}"] = {
                "min": float(arr.min()),
                "median": float(np.median(arr)),
                "max": float(arr.max()),
            }
    return {"passed": not failures, "ratio_stats": stats, "failures": failures}


def _suite_chain_equivalence(spec: SweepSpec, rng: np.random.Generator) -> dict:
    failures = []
    ratios = []
    regimes = [(p, q) for p, q in spec.regimes if p <= 1] or [(1.0, 1.0)]
    for p, q in regimes:
        for family in ("antigop", "gop", "simple"):
            for _ in range(max(spec.ensemble // 4, 1)):
                n_len = int(rng.choice([n for n in spec.window_sizes if n <= 8] or [5]))
                u, v, w = _weight_triple(rng, n_len, spec.weight_exponent)
                rep = oracle.chain_equivalence_sweep(u, v, w, p, q, FAST_CONFIG, family)
                ratios.append(rep.ratio31)
                if rep.violations or not (rep.sentinel or rep.ratio31 < math.inf):
                    failures.append(
                        {
                            "suite": "chain-equivalence",
                            "u": u.to_json(),
                            "v": v.to_json(),
                            "w": w.to_json(),
                            "p": p,
                            "q": q,
                            "family": family,
                            "observed": rep.to_json(),
                        }
                    )
    return {
        "passed": not failures,
        "max_ratio_A3_A1": float(max(ratios)) if ratios else None,
        "failures": failures,
    }


def _suite_doubling(spec: SweepSpec, rng: np.random.Generator) -> dict:
    failures = []
    probes = max(spec.ensemble * 10, 50)
    for _ in range(probes):
        n_len = int(rng.integers(3, 10))
        factors = rng.uniform(2.0, 4.0, size=n_len - 1)
        b = Window(0, tuple(np.concatenate([[rng.uniform(0.5, 2.0)], factors]).cumprod()))
        c = rand_window(rng, n_len, 0, spec.weight_exponent, 0.3)
        alpha = float(rng.choice([0.25, 0.5, 1.0]))
        out = blocks.doubling_lemma_check(b, c, alpha, 0, n_len - 1)
        ok = out.lhs_sum <= 2.0 * out.rhs_sum and out.lhs_sup <= 2.0 * out.rhs_sup
        if not ok:
            failures.append(
                {
                    "suite": "doubling",
                    "b": b.to_json(),
                    "c": c.to_json(),
                    "alpha": alpha,
                    "observed": {
                        "lhs_sum": out.lhs_sum,
                        "rhs_sum": out.rhs_sum,
                        "lhs_sup": out.lhs_sup,
                        "rhs_sup": out.rhs_sup,
                    },
                }
            )
    return {"passed": not failures, "probes": probes, "failures": failures}


_SUITE_RUNNERS: dict[str, Callable[[SweepSpec, np.random.Generator], dict]] = {
    "chain": _suite_chain,
    "bridge": _suite_bridge,
    "partition": _suite_partition,
    "linft": _suite_linft,
    "equivalence-ratio": _suite_equivalence,
    "chain-equivalence": _suite_chain_equivalence,
    "doubling": _suite_doubling,
}


def run_verification(spec: SweepSpec) -> dict:
    """Run the selected suites; returns the full report as a JSON-able dict."""
    report: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "spec": spec.to_json(),
        "suites": {},
    }
    for name in spec.suites:
        rng = np.random.default_rng((spec.seed, ALL_SUITES.index(name)))
        report["suites"][name] = _SUITE_RUNNERS[name](spec, rng)
    if spec.replay:
        report["replay"] = [replay_instance(entry) for entry in spec.replay]
    report["passed"] = all(s["passed"] for s in report["suites"].values()) and all(
        r.get("passed", True) for r in report.get("replay", [])
    )
    return report


def replay_instance(entry: dict) -> dict:
    """Re-run one serialized instance and report the observed numbers."""
    suite = entry.get("suite")
    if suite == "chain":
        a = Window.from_json(entry["a"])
        s1, s2, s3 = hardyops.elementary_chain_check(a, float(entry["p"]), int(entry["n"]))
        return {"suite": suite, "observed": [s1, s2, s3], "passed": s1 <= s2 <= s3}
    if suite == "bridge":
        u, v, w, a = (Window.from_json(entry[k]) for k in ("u", "v", "w", "a"))
        res = bridge.bridge_check(u, v, w, a, 1.0, float(entry["q"]), form="gop")
        return {
            "suite": suite,
            "observed": res.to_json(),
            "passed": res.lhs_equal and res.rhs_equal,
        }
    if suite == "partition":
        w = Window.from_json(entry["w"])
        bp = blocks.block_partition(w, int(entry["n0"]))
        rep = blocks.verify_partition_invariants(w, bp)
        return {"suite": suite, "observed": rep.to_json(), "passed": rep.all_pass}
    if suite == "linft":
        u = Window.from_json(entry["u"])
        v = Window.from_json(entry["v"])
        p = float(entry["p"])
        ones = Window(u.start, (1.0,) * len(u))
        prob = RatioProblem(u, v, ones, p, math.inf, ANTIGOP_SUP)
        exact = charformulas.char_linft_exact(u, v, p)
        spike = oracle.spike_oracle(prob).constant
        return {
            "suite": suite,
            "observed": {"exact": exact, "spike": spike},
            "passed": math.isclose(spike, exact, rel_tol=1e-9, abs_tol=0.0),
        }
    if suite == "equivalence-ratio":
        u, v, w = (Window.from_json(entry[k]) for k in ("u", "v", "w"))
        form = GOP if entry["form"] == "gop" else ANTIGOP
        prob = RatioProblem(u, v, w, float(entry["p"]), float(entry["q"]), form)
        eq = oracle.equivalence_ratio(prob, FAST_CONFIG)
        return {
            "suite": suite,
            "observed": {"F": eq.formula, "B": eq.brute, "ratio": eq.ratio},
            "passed": eq.sentinel or 0 < eq.ratio < math.inf,
        }
    if suite == "chain-equivalence":
        u, v, w = (Window.from_json(entry[k]) for k in ("u", "v", "w"))
        rep = oracle.chain_equivalence_sweep(
            u, v, w, float(entry["p"]), float(entry["q"]), FAST_CONFIG, entry["family"]
        )
        return {"suite": suite, "observed": rep.to_json(), "passed": rep.violations == 0}
    if suite == "doubling":
        b = Window.from_json(entry["b"])
        c = Window.from_json(entry["c"])
        out = blocks.doubling_lemma_check(b, c, float(entry["alpha"]), b.start, b.last)
        return {
            "suite": suite,
            "observed": {"lhs_sum": out.lhs_sum, "rhs_sum": out.rhs_sum},
            "passed": out.lhs_sum <= 2.0 * out.rhs_sum,
        }
    raise ValueError(f"cannot replay suite {suite!r}")
