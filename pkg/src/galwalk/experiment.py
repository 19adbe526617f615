"""Experiment orchestration: convergence runs, finite-field censuses, the
exact counterexample oracle, and catalog dumps.

Every run is fully determined by its config (scenario, k values, sample
count, prime window, budget, thresholds, seed); sub-streams are derived
from the seed so the output is independent of evaluation order.
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .exactmat import (
    RationalMatrix,
    char_poly,
    exact_poly_root,
    is_rational_square,
    mat_mul,
)
from .finfield import (
    BadPrimeError,
    census,
    density_report,
    enumerate_mod_p,
)
from .galois_id import (
    KIND_CERTIFIED_EXACT,
    KIND_CERTIFIED_SN,
    KIND_CONSISTENT,
    KIND_INCONCLUSIVE,
    KIND_REJECTED,
    Thresholds,
    collect_samples,
    expand_summary,
    match_verdict,
    quadratic_galois,
)
from .modpoly import primes_in_window, squarefree_over_q
from .scenarios import Scenario, builtin_scenarios
from .walker import RNG_ALGORITHM, batch_sample, stream_for

CONVERGENCE_FIELDS = (
    "k",
    "coset",
    "samples",
    "n_rs",
    "n_certified",
    "n_consistent",
    "n_rejected",
    "n_inconclusive",
    "mismatch_fraction",
)

QUADRATIC_FIELDS = (
    "k",
    "coset",
    "samples",
    "n_rs",
    "n_trivial",
    "n_order2",
    "trivial_fraction",
)

FINFIELD_FIELDS = (
    "p",
    "coset",
    "status",
    "cycle_type",
    "count",
    "rs_count",
    "total",
    "density_rs",
    "density_coset",
    "flagged",
)

ORACLE_FIELDS = (
    "k",
    "words",
    "off_count",
    "trivial_count",
    "trivial_fraction",
    "parity_exact",
)

CATALOG_FIELDS = (
    "scenario",
    "coset",
    "group",
    "degree",
    "order",
    "cycle_type",
    "frequency",
    "frequency_exact",
)


@dataclass(frozen=True)
class ExperimentConfig:
    scenario: str
    k_values: tuple[int, ...] = (10, 20, 30)
    samples: int = 100
    prime_min: int = 1_000
    prime_max: int = 100_000
    budget: int = 300
    tv_max: Fraction = Fraction(1, 10)
    coverage_min: Fraction = Fraction(1)
    seed: int = 1
    bound: int = 2_000_000

    def __post_init__(self):
        if not self.k_values or any(k < 0 for k in self.k_values):
            raise ValueError("k values must be nonnegative")
        if list(self.k_values) != sorted(self.k_values):
            raise ValueError("k values must be ascending")
        for name in ("samples", "prime_min", "prime_max", "budget", "bound"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.prime_min > self.prime_max:
            raise ValueError("empty prime window")
        if not (0 <= self.tv_max <= 1 and 0 <= self.coverage_min <= 1):
            raise ValueError("thresholds must lie in [0, 1]")

    def thresholds(self) -> Thresholds:
        return Thresholds(self.tv_max, self.coverage_min, self.budget)

    def metadata(self, command: str) -> dict:
        return {
            "artifact": "galwalk",
            "version": __version__,
            "command": command,
            "scenario": self.scenario,
            "seed": self.seed,
            "rng": RNG_ALGORITHM,
            "k_values": "+".join(str(k) for k in self.k_values),
            "samples": self.samples,
            "primes_min": self.prime_min,
            "primes_max": self.prime_max,
            "budget": self.budget,
            "tv_max": self.tv_max,
            "coverage_min": self.coverage_min,
        }


def batch_seed(seed: int, k: int) -> int:
    """Per-k sub-seed so adding k values never disturbs existing batches."""
    return stream_for(seed, k).next_uint64()


@dataclass
class SampleOutcome:
    """Identification result for one walk sample (None fields where n/a)."""

    label: int
    rs: bool
    kind: str | None = None
    summary: object = None
    verdict: object = None


def identify_sample(sample, spec, config: ExperimentConfig):
    """Classify one walk sample against its coset's predicted group."""
    chi = char_poly(sample.element)
    q = exact_poly_root(chi, spec.multiplicity)
    if q is None or q.degree == 0 or not squarefree_over_q(q):
        return SampleOutcome(sample.label, rs=False)
    summary = collect_samples(
        q, (config.prime_min, config.prime_max), config.budget
    )
    if summary.good_count == 0:
        return SampleOutcome(sample.label, rs=True, kind=KIND_INCONCLUSIVE)
    expanded = expand_summary(summary, spec.multiplicity)
    verdict = match_verdict(expanded, spec.predicted, config.thresholds())
    out = SampleOutcome(sample.label, rs=True, kind=verdict.kind)
    out.summary = expanded
    out.verdict = verdict
    return out


def run_convergence(config: ExperimentConfig):
    """Sample, identify, and tabulate per (k, coset).

    Returns (rows, fieldnames, metadata).  For the scenario without
    predictions the rows carry exact quadratic outcomes instead.
    """
    scenario = builtin_scenarios()[config.scenario]
    if not scenario.has_predictions:
        return _run_quadratic_outcomes(scenario, config)
    gens = scenario.admissible()
    rows = []
    for k in config.k_values:
        samples = batch_sample(gens, k, config.samples, batch_seed(config.seed, k))
        tallies: dict[int, dict[str, int]] = {}
        for sample in samples:
            spec = scenario.coset(sample.label)
            t = tallies.setdefault(
                sample.label,
                {"samples": 0, "n_rs": 0, KIND_CERTIFIED_SN: 0,
                 KIND_CERTIFIED_EXACT: 0, KIND_CONSISTENT: 0,
                 KIND_REJECTED: 0, KIND_INCONCLUSIVE: 0},
            )
            t["samples"] += 1
            outcome = identify_sample(sample, spec, config)
            if outcome.rs:
                t["n_rs"] += 1
                t[outcome.kind] += 1
        for label in sorted(tallies):
            t = tallies[label]
            matched = t[KIND_CERTIFIED_SN] + t[KIND_CERTIFIED_EXACT] + t[KIND_CONSISTENT]
            rows.append(
                {
                    "k": k,
                    "coset": label,
                    "samples": t["samples"],
                    "n_rs": t["n_rs"],
                    "n_certified": t[KIND_CERTIFIED_SN] + t[KIND_CERTIFIED_EXACT],
                    "n_consistent": t[KIND_CONSISTENT],
                    "n_rejected": t[KIND_REJECTED],
                    "n_inconclusive": t[KIND_INCONCLUSIVE],
                    "mismatch_fraction": Fraction(t["samples"] - matched, t["samples"]),
                }
            )
    _report_decay_fit(rows)
    return rows, CONVERGENCE_FIELDS, config.metadata("run")


def _run_quadratic_outcomes(scenario: Scenario, config: ExperimentConfig):
    if scenario.dimension != 2:
        raise ValueError("quadratic outcome mode needs dimension 2")
    gens = scenario.admissible()
    rows = []
    for k in config.k_values:
        samples = batch_sample(gens, k, config.samples, batch_seed(config.seed, k))
        tallies: dict[int, dict[str, int]] = {}
        for sample in samples:
            t = tallies.setdefault(
                sample.label,
                {"samples": 0, "n_rs": 0, "n_trivial": 0, "n_order2": 0},
            )
            t["samples"] += 1
            chi = char_poly(sample.element)
            if not squarefree_over_q(chi):
                continue
            t["n_rs"] += 1
            if quadratic_galois(chi) == "trivial":
                t["n_trivial"] += 1
            else:
                t["n_order2"] += 1
        for label in sorted(tallies):
            t = tallies[label]
            frac = Fraction(t["n_trivial"], t["n_rs"]) if t["n_rs"] else Fraction(0)
            rows.append(
                {
                    "k": k,
                    "coset": label,
                    "samples": t["samples"],
                    "n_rs": t["n_rs"],
                    "n_trivial": t["n_trivial"],
                    "n_order2": t["n_order2"],
                    "trivial_fraction": frac,
                }
            )
    return rows, QUADRATIC_FIELDS, config.metadata("run")


def _report_decay_fit(rows) -> None:
    """Descriptive log-linear fit of mismatch_fraction against k (stderr only)."""
    pts = [
        (row["k"], float(row["mismatch_fraction"]))
        for row in rows
        if row["mismatch_fraction"] > 0
    ]
    if len(pts) < 2:
        return
    xs = [k for k, _ in pts]
    ys = [math.log(m) for _, m in pts]
    n = len(pts)
    xbar, ybar = sum(xs) / n, sum(ys) / n
    denom = sum((x - xbar) ** 2 for x in xs)
    if denom == 0:
        return
    slope = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys)) / denom
    print(
        f"# mismatch decay fit (descriptive): "
        f"log(mismatch) ~ {ybar - slope * xbar:.3f} + {slope:.4f} * k",
        file=sys.stderr,
    )


def run_finite_field(config: ExperimentConfig):
    """Census rows over the configured prime list (see finfield)."""
    scenario = builtin_scenarios()[config.scenario]
    if scenario.dimension > 4:
        raise ValueError("finite-field mode supports dimension <= 4 only")
    rows = []
    for p in primes_in_window(config.prime_min, config.prime_max):
        try:
            if p <= scenario.dimension:
                raise BadPrimeError("p must exceed the matrix dimension")
            cosets = enumerate_mod_p(scenario, p, bound=config.bound)
        except BadPrimeError:
            rows.append(
                {
                    "p": p, "coset": -1, "status": "bad_prime", "cycle_type": "-",
                    "count": 0, "rs_count": 0, "total": 0,
                    "density_rs": Fraction(0), "density_coset": Fraction(0),
                    "flagged": 0,
                }
            )
            continue
        censuses = []
        targets = {}
        for spec in scenario.cosets:
            censuses.append(
                census(cosets[spec.label], p, spec.label, spec.multiplicity)
            )
            if spec.predicted is not None:
                targets[spec.label] = spec.predicted.group.types()
        prows, _ = density_report(censuses, targets)
        rows.extend(prows)
    return rows, FINFIELD_FIELDS, config.metadata("finfield")


def exact_word_census(scenario: Scenario, k: int):
    """Exact distribution over all |gens|^k words of the walk at step k.

    Dynamic programming over (element, coset label, identity-letter parity)
    states with exact word counts; equivalent to enumerating every word.
    Returns {(matrix, label, parity): count} with counts summing to gens^k.
    """
    gens = scenario.admissible()
    ident = RationalMatrix.identity(scenario.dimension)
    states: dict[tuple, int] = {(ident, 0, 0): 1}
    steps = [
        (g, lab, 1 if (g == ident and lab == 0) else 0)
        for g, lab in gens.generators
    ]
    for _ in range(k):
        nxt: dict[tuple, int] = {}
        for (m, lab, parity), count in states.items():
            for g, glab, is_id in steps:
                key = (
                    mat_mul(m, g),
                    scenario.component_group.mul(lab, glab),
                    parity ^ is_id,
                )
                nxt[key] = nxt.get(key, 0) + count
        states = nxt
    return states


def run_oracle(config: ExperimentConfig):
    """Exhaustive word census for the counterexample scenario.

    For each k, reports the exact off-coset count, the exact frequency of a
    trivial quadratic splitting field, and whether the parity law holds for
    every word: for even k the field is trivial iff the number of identity
    letters is odd, for odd k iff it is even.
    """
    scenario = builtin_scenarios()[config.scenario]
    if scenario.has_predictions:
        raise ValueError("oracle mode applies to the counterexample scenario")
    rows = []
    for k in config.k_values:
        states = exact_word_census(scenario, k)
        words = sum(states.values())
        off = trivial = 0
        parity_exact = 1
        for (m, lab, parity), count in states.items():
            if lab == 0:
                continue
            off += count
            chi = char_poly(m)
            disc = chi.coeffs[1] ** 2 - 4 * chi.coeffs[0]
            is_trivial = is_rational_square(disc)
            if is_trivial:
                trivial += count
            expected = (parity == 1) if k % 2 == 0 else (parity == 0)
            if is_trivial != expected:
                parity_exact = 0
        frac = Fraction(trivial, off) if off else Fraction(0)
        rows.append(
            {
                "k": k,
                "words": words,
                "off_count": off,
                "trivial_count": trivial,
                "trivial_fraction": frac,
                "parity_exact": parity_exact,
            }
        )
    return rows, ORACLE_FIELDS, config.metadata("oracle")


def catalog_rows():
    """One row per (scenario, coset, group, cycle type) with exact frequencies."""
    rows = []
    for name, scenario in builtin_scenarios().items():
        for spec in scenario.cosets:
            groups = []
            if spec.predicted is not None:
                groups.append(("predicted", spec.predicted))
            if spec.upper is not None:
                groups.append(("upper", spec.upper))
            for role, pg in groups:
                for ct, freq in pg.group.type_distribution.items():
                    rows.append(
                        {
                            "scenario": name,
                            "coset": spec.label,
                            "group": f"{pg.name}({role})",
                            "degree": pg.N,
                            "order": pg.group.order,
                            "cycle_type": ct,
                            "frequency": freq,
                            "frequency_exact": f"{freq.numerator}/{freq.denominator}",
                        }
                    )
    metadata = {
        "artifact": "galwalk",
        "version": __version__,
        "command": "catalog",
    }
    return rows, CATALOG_FIELDS, metadata
