"""Randomized property suites runnable from the CLI and the test suite.

Each suite draws its cases from per-case child generators seeded as
(base_seed, case_index), so any failing case can be reproduced in isolation.
A case's margin is the signed amount by which it approaches its bound;
positive margin means the property failed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .channels import RealnessClass, classify_real, random_real_channel
from .linalg import symplectic_form, williamson
from .measures import imaginarity
from .sampling import inject_cross_entry, random_cm, random_real_state, random_state

SUITES = ("monotonicity", "faithfulness", "hierarchy", "williamson")

DEFAULT_TOLS = {
    "monotonicity": 1e-9,
    "faithfulness": 1e-10,
    "hierarchy": 1e-9,
    "williamson": 1e-8,
}


@dataclass
class FuzzResult:
    suite: str
    count: int
    tol: float
    seed: int
    failures: int = 0
    worst_margin: float = float("-inf")
    failing_cases: list[tuple[int, float]] = field(default_factory=list)

    def record(self, case: int, margin: float):
        self.worst_margin = max(self.worst_margin, margin)
        if margin > 0.0:
            self.failures += 1
            if len(self.failing_cases) < 10:
                self.failing_cases.append((case, margin))

    def summary(self) -> str:
        lines = [
            f"suite={self.suite} cases={self.count} failures={self.failures} "
            f"worst_margin={self.worst_margin:.3e} tol={self.tol:.3e} seed={self.seed}"
        ]
        for case, margin in self.failing_cases:
            lines.append(f"FAIL case={case} seed=({self.seed},{case}) margin={margin:.3e}")
        return "\n".join(lines)


def _case_rng(seed: int, case: int) -> np.random.Generator:
    return np.random.default_rng([seed, case])


def run_monotonicity(seed: int, count: int, tol: float) -> FuzzResult:
    """Imaginarity never increases under random real channels.

    Completely real channels must additionally output exactly-real states.
    """
    result = FuzzResult("monotonicity", count, tol, seed)
    kinds = (RealnessClass.COMPLETELY_REAL, RealnessClass.COVARIANT_REAL)
    for case in range(count):
        rng = _case_rng(seed, case)
        n = int(rng.integers(1, 4))
        state = random_state(n, rng)
        kind = kinds[case % 2]
        channel = random_real_channel(n, kind, rng)
        out = channel.apply(state)
        margin = imaginarity(out) - imaginarity(state) - tol
        if kind is RealnessClass.COMPLETELY_REAL:
            breaking = imaginarity(out) - 1e-10
            if not out.is_real():
                breaking = max(breaking, 1.0)
            margin = max(margin, breaking)
            assert classify_real(channel) in (kind, RealnessClass.BOTH)
        result.record(case, margin)
    return result


def run_faithfulness(seed: int, count: int, tol: float) -> FuzzResult:
    """Real-patterned states measure ~0; planted cross entries measure > 0."""
    result = FuzzResult("faithfulness", count, tol, seed)
    for case in range(count):
        rng = _case_rng(seed, case)
        n = int(rng.integers(1, 5))
        real = random_real_state(n, rng)
        if case % 2 == 0:
            margin = imaginarity(real) - tol
        else:
            eps = float(np.exp(rng.uniform(np.log(1e-3), np.log(0.1))))
            broken = inject_cross_entry(real, rng, eps)
            margin = 1e-8 - imaginarity(broken)
        result.record(case, margin)
    return result


def run_hierarchy(seed: int, count: int, tol: float) -> FuzzResult:
    """Reduction never raises imaginarity; mode permutations never change it."""
    result = FuzzResult("hierarchy", count, tol, seed)
    for case in range(count):
        rng = _case_rng(seed, case)
        n = int(rng.integers(2, 5))
        state = random_state(n, rng)
        full = imaginarity(state)
        margin = float("-inf")
        for mask in range(1, 2**n - 1):
            modes = [m + 1 for m in range(n) if mask >> m & 1]
            margin = max(margin, imaginarity(state.reduce(modes)) - full - tol)
        perm = [int(m) + 1 for m in rng.permutation(n)]
        margin = max(margin, abs(imaginarity(state.reduce(perm)) - full) - 1e-12)
        result.record(case, margin)
    return result


def run_williamson(seed: int, count: int, tol: float) -> FuzzResult:
    """Symplectic normal form reconstructs random covariance matrices."""
    result = FuzzResult("williamson", count, tol, seed)
    for case in range(count):
        rng = _case_rng(seed, case)
        n = int(rng.integers(1, 5))
        cm = random_cm(n, rng)
        # residuals are measured here against the suite tolerance, so the
        # internal residual guard is disabled
        form = williamson(cm, tol=float("inf"))
        delta = symplectic_form(n)
        res_cm = np.linalg.norm(form.s @ form.diagonal() @ form.s.T - cm) / np.linalg.norm(cm)
        res_sympl = float(np.linalg.norm(form.s @ delta @ form.s.T - delta))
        result.record(case, max(res_cm, res_sympl) - tol)
    return result


_RUNNERS = {
    "monotonicity": run_monotonicity,
    "faithfulness": run_faithfulness,
    "hierarchy": run_hierarchy,
    "williamson": run_williamson,
}


def run_suite(suite: str, seed: int = 0, count: int = 1000, tol: float | None = None) -> FuzzResult:
    if suite not in _RUNNERS:
        raise KeyError(f"unknown suite {suite!r}; choose from {SUITES}")
    if tol is None:
        tol = DEFAULT_TOLS[suite]
    return _RUNNERS[suite](seed, count, tol)
