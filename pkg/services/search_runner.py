"""
Seeded searches for systems with many positive solutions.

Two trial generators:
- random_systems: fixed supports, random rational coefficients, one
  derived seed per trial so that any trial can be replayed alone
- perturbation_systems: a rational grid around a base system's coefficients
Every certified five-solution trinomial pair is checked against the Newton
polygon flags; counts above 3 * 2^(t-2) - 1 are violations.
"""

import hashlib
import itertools
import json
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Sequence, TextIO, Tuple

from algebra.errors import FewnomialError
from bivar.sparse_poly import Exponent, SparsePolyQ2
from fans.theorem3 import theorem3_check
from rootcount.bounds import bound_t
from rootcount.certified_count import count_positive_solutions
from services.expression_parser import SystemSpec, render_system
from services.settings import AnalysisSettings

logger = logging.getLogger(__name__)

# which polynomial ("f" or "g") and the index of the term in it
TermRef = Tuple[str, int]


def trial_seed(seed: int, index: int) -> int:
    digest = hashlib.sha256(f"{seed}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


@dataclass
class Trial:
    index: int
    seed: Optional[int]
    spec: SystemSpec


@dataclass
class TrialRecord:
    trial: int
    seed: Optional[int]
    system: str
    t: int
    count: Optional[Dict[str, Any]]
    theorem3: Optional[Dict[str, Any]] = None
    violations: List[str] = field(default_factory=list)

    def to_dict(self):
        return {
            "trial": self.trial,
            "seed": self.seed,
            "system": self.system,
            "t": self.t,
            "count": self.count,
            "theorem3": self.theorem3,
            "violations": list(self.violations),
        }


@dataclass
class SearchSummary:
    trials: int = 0
    records: int = 0
    max_count: Optional[int] = None
    undecided: int = 0
    errors: int = 0
    duplicates_skipped: int = 0
    histogram: Dict[int, int] = field(default_factory=dict)
    violations: List[str] = field(default_factory=list)

    def to_dict(self):
        return {
            "trials": self.trials,
            "records": self.records,
            "max_count": self.max_count,
            "undecided": self.undecided,
            "errors": self.errors,
            "duplicates_skipped": self.duplicates_skipped,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "violations": list(self.violations),
        }


def _random_coefficient(rng: random.Random, coeff_range: int, max_denominator: int) -> Fraction:
    sign = rng.choice((-1, 1))
    return sign * Fraction(rng.randint(1, coeff_range), rng.randint(1, max_denominator))


def random_systems(
    f_support: Sequence[Exponent],
    g_support: Sequence[Exponent],
    seed: int,
    trials: int,
    coeff_range: int = 100,
    max_denominator: int = 100,
) -> Iterator[Trial]:
    if len(g_support) != 3:
        raise ValueError(f"g support needs 3 exponents, got {len(g_support)}")
    for index in range(trials):
        s = trial_seed(seed, index)
        rng = random.Random(s)
        f = SparsePolyQ2.from_terms((_random_coefficient(rng, coeff_range, max_denominator), e) for e in f_support)
        g = SparsePolyQ2.from_terms((_random_coefficient(rng, coeff_range, max_denominator), e) for e in g_support)
        yield Trial(index, s, SystemSpec(f, g))


def perturbed_terms(spec: SystemSpec) -> List[TermRef]:
    """Terms whose coefficient is not +-1; these are the ones a grid perturbs by default."""
    refs = []
    for name, p in (("f", spec.f), ("g", spec.g)):
        for i, t in enumerate(p.terms):
            if abs(t.coefficient.as_fraction()) != 1:
                refs.append((name, i))
    return refs


def perturbation_systems(
    base: SystemSpec,
    relative: Fraction = Fraction(1, 20),
    steps: int = 21,
    terms: Optional[Sequence[TermRef]] = None,
) -> Iterator[Trial]:
    """Each chosen coefficient c runs over c * (1 + relative * (2k/(steps-1) - 1)), k = 0..steps-1."""
    if steps < 2:
        raise ValueError("perturbation grid needs at least 2 steps")
    refs = list(terms) if terms is not None else perturbed_terms(base)
    factors = [1 + Fraction(relative) * (Fraction(2 * k, steps - 1) - 1) for k in range(steps)]
    for index, choice in enumerate(itertools.product(factors, repeat=len(refs))):
        scaled = {ref: factor for ref, factor in zip(refs, choice)}
        polys = {}
        for name, p in (("f", base.f), ("g", base.g)):
            polys[name] = SparsePolyQ2.from_terms(
                (t.coefficient.as_fraction() * scaled.get((name, i), 1), t.exponent) for i, t in enumerate(p.terms)
            )
        yield Trial(index, None, SystemSpec(polys["f"], polys["g"]))


class SearchRunner:
    """Counts every trial and appends qualifying records as JSON lines."""

    def __init__(self, settings: AnalysisSettings, threshold: int = 5):
        self.settings = settings
        self.threshold = threshold
        self.seen = set()
        self.search_stats = {"counted": 0, "recorded": 0, "theorem3_checks": 0}

    def _key(self, spec: SystemSpec) -> str:
        return hashlib.md5(render_system(spec).encode()).hexdigest()

    def evaluate(self, trial: Trial) -> Tuple[Optional[TrialRecord], Optional[int], bool]:
        """(record or None, exact count or None, undecided)."""
        spec = trial.spec
        s = self.settings
        count = count_positive_solutions(spec.f, spec.g, s.precision, s.max_depth, s.max_precision)
        self.search_stats["counted"] += 1
        record = TrialRecord(trial.index, trial.seed, render_system(spec), spec.t, count.to_dict())
        if not count.exact:
            return None, None, True
        if spec.t >= 3 and count.count > bound_t(spec.t):
            record.violations.append(f"count {count.count} exceeds {bound_t(spec.t)}")
        if spec.t == 3 and count.count == 5:
            report = theorem3_check(spec.f, spec.g, s.precision, s.max_depth, s.max_precision, count=count)
            self.search_stats["theorem3_checks"] += 1
            record.theorem3 = {
                "hexagon": report.hexagon,
                "alternates": report.alternates,
                "consecutive_translate": report.consecutive_translate,
                "parallel_rays": report.parallel_rays,
            }
            record.violations.extend(report.violations)
        if count.count >= self.threshold or record.violations:
            return record, count.count, False
        return None, count.count, False

    def run(self, trials: Iterator[Trial], out: Optional[TextIO] = None) -> SearchSummary:
        summary = SearchSummary()
        for trial in trials:
            summary.trials += 1
            key = self._key(trial.spec)
            if key in self.seen:
                summary.duplicates_skipped += 1
                continue
            self.seen.add(key)
            try:
                record, n, undecided = self.evaluate(trial)
            except (FewnomialError, ValueError) as e:
                summary.errors += 1
                logger.warning("trial %d failed: %s", trial.index, str(e))
                continue
            if undecided:
                summary.undecided += 1
                continue
            summary.histogram[n] = summary.histogram.get(n, 0) + 1
            summary.max_count = n if summary.max_count is None else max(summary.max_count, n)
            if record is None:
                continue
            summary.records += 1
            self.search_stats["recorded"] += 1
            if record.violations:
                summary.violations.extend(f"trial {trial.index}: {v}" for v in record.violations)
                logger.error("violation in trial %d: %s", trial.index, record.to_dict())
            if out is not None:
                out.write(json.dumps(record.to_dict(), sort_keys=True) + "\n")
                out.flush()
        logger.info("search finished: %s", summary.to_dict())
        return summary
