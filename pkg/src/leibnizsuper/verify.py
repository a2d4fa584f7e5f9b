"""Seeded randomized probes and end-to-end verifiers.

Probes sample random rational parameter rows for chain skeletons, keep the
consistent completions, and look for counterexamples to the nonexistence
claims (a violation is a consistent completion with the target characteristic
sequence and nilindex at least n+m).  Verifiers cross-check the completion
engine against the closed product formula and the normalization map against
the normal form.  Every stochastic routine is a pure function of its seed:
trial t of a run with seed s uses random.Random(f"{s}:{t}").
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .algebra import (
    GradedMap,
    SuperAlgebra,
    apply_basis_change,
    odd_index,
    tables_match,
    to_complex,
)
from .catalog import (
    Skeleton,
    closed_formula_bracket,
    complete_by_superidentity,
    csq_model,
    expand_skeleton,
    thm32_basis_change,
    thm32_family,
    thm32_normal,
    zf_adapted,
)
from .errors import (
    BackendMismatch,
    DimensionMismatch,
    HypothesisViolated,
    InconsistentStructure,
    NotNilpotent,
    NotTwoGenerated,
    SingularMap,
)
from .invariants import (
    CharSequence,
    characteristic_sequence,
    descending_central_series,
    graded_dims,
    nilindex,
)
from .linalg import DEFAULT_TOL, RATIONAL


def random_rational(rng: random.Random) -> Fraction:
    """One draw from the probe distribution: p/q, p in [-9, 9], q in {1, 2, 3}."""
    return Fraction(rng.randint(-9, 9), rng.choice((1, 2, 3)))


def _draw_rows(rng: random.Random, count: int, length: int) -> tuple:
    return tuple(
        tuple(random_rational(rng) for _ in range(length)) for _ in range(count)
    )


def _trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(f"{seed}:{trial}")


def _fmt_rows(rows: Sequence) -> list:
    return [[str(v) for v in row] for row in rows]


_HIST_SPECIALS = ("inconsistent", "not_nilpotent")


def _ordered_histogram(hist: dict) -> dict:
    def order(key: str):
        if key.lstrip("-").isdigit():
            return (0, int(key))
        return (1, _HIST_SPECIALS.index(key))

    return {k: hist[k] for k in sorted(hist, key=order)}


@dataclass(frozen=True)
class ProbeReport:
    """Outcome of a nonexistence probe over seeded random parameter rows.

    The histogram buckets every trial: nilindex values for consistent
    completions, plus 'inconsistent' (and defensively 'not_nilpotent').
    ``violations`` must stay empty for the probed claim to stand.
    """

    trials: int
    seed: int
    max_nilindex: Optional[int]
    histogram: dict
    violations: tuple

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be positive")

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "max_nilindex": self.max_nilindex,
            "histogram": _ordered_histogram(self.histogram),
            "violations": list(self.violations),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def _run_probe(
    trials: int,
    seed: int,
    build: Callable[[random.Random], Skeleton],
    target: CharSequence,
) -> ProbeReport:
    if trials < 1:
        raise ValueError("trials must be positive")
    histogram: dict = {}
    violations = []
    max_nil: Optional[int] = None
    for t in range(trials):
        skeleton = build(_trial_rng(seed, t))
        try:
            algebra = complete_by_superidentity(skeleton)
        except InconsistentStructure:
            histogram["inconsistent"] = histogram.get("inconsistent", 0) + 1
            continue
        s = nilindex(algebra)
        if s is None:
            histogram["not_nilpotent"] = histogram.get("not_nilpotent", 0) + 1
            continue
        histogram[str(s)] = histogram.get(str(s), 0) + 1
        if max_nil is None or s > max_nil:
            max_nil = s
        if s >= skeleton.n + skeleton.m:
            seq = characteristic_sequence(algebra, samples=50, seed=t)
            if seq == target:
                violations.append(
                    {
                        "trial": t,
                        "nilindex": s,
                        "char_sequence": str(seq),
                        "alpha": _fmt_rows(skeleton.alpha),
                        "beta": _fmt_rows(skeleton.beta),
                    }
                )
    return ProbeReport(trials, seed, max_nil, histogram, tuple(violations))


def probe_zf_nonexistence(n: int, m: int, trials: int, seed: int) -> ProbeReport:
    """Search for a single-odd-chain completion with sequence (n | m) and nilindex >= n+m.

    The claim under test covers n, m >= 3; smaller sizes run the identical
    protocol and serve as sensitivity controls where such algebras do exist.
    """

    def build(rng: random.Random) -> Skeleton:
        alpha = _draw_rows(rng, n, m - 1)
        beta = _draw_rows(rng, m, n - 1)
        return zf_adapted(n, m, alpha, beta)

    return _run_probe(trials, seed, build, CharSequence((n,), (m,)))


def probe_csq_nonexistence(n: int, parts: Sequence, trials: int, seed: int) -> ProbeReport:
    """Search for a multi-chain completion with sequence (n | parts) and nilindex >= n+m.

    Requires at least two parts with max(parts) <= m - 2 (HypothesisViolated
    otherwise); the excluded boundary cases are classified elsewhere and are
    out of scope for this probe.
    """
    skeleton0 = csq_model(n, parts)
    m = skeleton0.m
    if max(skeleton0.parts) > m - 2:
        raise HypothesisViolated(
            f"largest part {max(skeleton0.parts)} exceeds m-2 = {m - 2}"
        )
    target = CharSequence((n,), tuple(sorted(skeleton0.parts, reverse=True)))

    def build(rng: random.Random) -> Skeleton:
        alpha = _draw_rows(rng, n, m - 1)
        beta = _draw_rows(rng, m, n - 1)
        return csq_model(n, skeleton0.parts, alpha, beta)

    return _run_probe(trials, seed, build, target)


@dataclass(frozen=True)
class LemmaFormulaReport:
    """Comparison of completion-derived odd-odd products with the closed formula.

    ``first_mismatch`` is None on success; otherwise it records the trial,
    the pair (i, j), both values and the beta rows that produced them.
    Comparison is exact and runs on every trial whether or not the completed
    table satisfies the full identity.
    """

    n: int
    m: int
    trials: int
    seed: int
    pairs_checked: int
    first_mismatch: Optional[dict]

    @property
    def passed(self) -> bool:
        return self.first_mismatch is None

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "trials": self.trials,
            "seed": self.seed,
            "pairs_checked": self.pairs_checked,
            "passed": self.passed,
            "first_mismatch": self.first_mismatch,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def verify_lemma_formula(n: int, m: int, trials: int, seed: int) -> LemmaFormulaReport:
    """Cross-check the completion engine against the closed product formula.

    Each trial draws random rational alpha and beta rows, expands the
    single-chain skeleton by the rewriting rules, and compares every derived
    [y_i, y_j] with closed_formula_bracket exactly (the derived value must
    also have no odd-part component).  Stops at the first mismatch.
    """
    if n < 1 or m < 1:
        raise DimensionMismatch(f"need n, m >= 1, got ({n}, {m})")
    pairs = 0
    for t in range(trials):
        rng = _trial_rng(seed, t)
        alpha = _draw_rows(rng, n, m - 1)
        beta = _draw_rows(rng, m, n - 1)
        skeleton = zf_adapted(n, m, alpha, beta)
        algebra = expand_skeleton(skeleton)
        for i in range(1, m + 1):
            for j in range(1, m + 1):
                derived = algebra.entry(odd_index(i), odd_index(j))
                expected = closed_formula_bracket(i, j, beta, n, m)
                pairs += 1
                if derived[:n] != expected or any(derived[n:]):
                    mismatch = {
                        "trial": t,
                        "i": i,
                        "j": j,
                        "derived": [str(v) for v in derived],
                        "formula": [str(v) for v in expected],
                        "beta": _fmt_rows(beta),
                    }
                    return LemmaFormulaReport(n, m, trials, seed, pairs, mismatch)
    return LemmaFormulaReport(n, m, trials, seed, pairs, None)


@dataclass(frozen=True)
class NormalizationReport:
    """Deviation of the normalized family from the normal form."""

    m: int
    tolerance: float
    deviation: float

    @property
    def passed(self) -> bool:
        return self.deviation < self.tolerance

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "tolerance": self.tolerance,
            "deviation": self.deviation,
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def _table_deviation(a: SuperAlgebra, b: SuperAlgebra) -> float:
    worst = 0.0
    indices = a.basis_indices()
    for left in indices:
        for right in indices:
            va = a.entry(left, right)
            vb = b.entry(left, right)
            for p, q in zip(va, vb):
                worst = max(worst, abs(p - q))
    return worst


def verify_thm32(m: int, gammas: Sequence, b1, tolerance: float = DEFAULT_TOL) -> NormalizationReport:
    """Build the gamma family, normalize it, and measure the residual.

    Applies the graded map from thm32_basis_change to the family over complex
    floats and reports the maximum entrywise deviation from thm32_normal(m).
    Passes when the deviation is below ``tolerance``.
    """
    family = thm32_family(m, gammas)
    change = thm32_basis_change(m, gammas, b1)
    transformed = apply_basis_change(to_complex(family), change)
    target = to_complex(thm32_normal(m))
    return NormalizationReport(m, tolerance, _table_deviation(transformed, target))


def verify_isomorphism(
    a: SuperAlgebra, b: SuperAlgebra, change: GradedMap, tolerance: float = DEFAULT_TOL
) -> bool:
    """True iff ``change`` is invertible and carries a's table onto b's.

    Exact comparison on the rational backend, entrywise within ``tolerance``
    on the complex backend.  Dimension disagreement raises DimensionMismatch;
    a singular map returns False.
    """
    if (a.n, a.m) != (b.n, b.m):
        raise DimensionMismatch(
            f"algebras have different dimensions ({a.n},{a.m}) vs ({b.n},{b.m})"
        )
    if a.backend != b.backend:
        raise BackendMismatch("algebras use different backends")
    try:
        moved = apply_basis_change(a, change, tolerance)
    except SingularMap:
        return False
    return tables_match(moved, b, tolerance)


@dataclass(frozen=True)
class GeneratorReport:
    """Parities of a generating pair read off a basis of L/L^2."""

    even_count: int
    odd_count: int
    representatives: tuple

    @property
    def mixed(self) -> bool:
        return self.even_count == 1 and self.odd_count == 1

    def to_json_dict(self) -> dict:
        return {
            "even_generators": self.even_count,
            "odd_generators": self.odd_count,
            "representatives": list(self.representatives),
            "mixed": self.mixed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def check_generator_placement(algebra: SuperAlgebra) -> GeneratorReport:
    """Count even and odd generators of a nilpotent algebra with dim L/L^2 = 2.

    Raises NotNilpotent for non-nilpotent input and NotTwoGenerated when the
    quotient dimension is not 2.  Representatives are the basis labels at the
    non-pivot coordinates of L^2.
    """
    if algebra.backend != RATIONAL:
        raise BackendMismatch("generator placement is certified exactly; use the rational backend")
    series = descending_central_series(algebra)
    if not series.is_nilpotent:
        raise NotNilpotent("generator placement needs a nilpotent algebra")
    square = series.chain[1]
    quotient = algebra.dim - square.dim
    if quotient != 2:
        raise NotTwoGenerated(f"dim L/L^2 = {quotient}, expected 2")
    even_in, odd_in = graded_dims(square, algebra.n)
    pivots = {next(k for k, v in enumerate(row) if v) for row in square.basis}
    reps = tuple(
        algebra.index_at(k).label for k in range(algebra.dim) if k not in pivots
    )
    return GeneratorReport(algebra.n - even_in, algebra.m - odd_in, reps)
