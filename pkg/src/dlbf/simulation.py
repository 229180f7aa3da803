"""Monte-Carlo harness measuring deletability and false positives.

Each trial draws ``n + probes`` distinct elements, inserts the first ``n``
into a fresh filter, measures the false-positive rate on the remaining
probes, removes every inserted element in random order and measures the
false-positive rate again on the same probes. Trial ``i`` is seeded by
``trial_seed(master_seed, i)`` so results do not depend on scheduling.
"""

from __future__ import annotations

import math
import random
import statistics
import string
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from functools import lru_cache
from pathlib import Path
from typing import Optional

from .errors import ConfigurationError
from .filters import DeletableBloomFilter, FilterParams, RemoveOutcome, StandardBloomFilter

_MASK64 = (1 << 64) - 1
_ALPHABET = string.ascii_letters + string.digits
SYNTHETIC_LENGTH = 16
# byte -> alphanumeric map; the slight skew toward the first 8 symbols is harmless
_TO_ALNUM = bytes((_ALPHABET * 5)[:256], "ascii")
Z95 = 1.959963984540054


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def trial_seed(master_seed: int, trial_index: int) -> int:
    return splitmix64(splitmix64(master_seed & _MASK64) ^ trial_index)


@lru_cache(maxsize=8)
def _load_wordlist(path: str) -> tuple[str, ...]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ConfigurationError(f"cannot read wordlist {path}: {exc}") from None
    words = dict.fromkeys(line.strip() for line in text.splitlines())
    words.pop("", None)
    return tuple(words)


def generate_elements(
    count: int, seed: int, source: str = "synthetic", wordlist: Optional[str] = None
) -> list[bytes]:
    """``count`` distinct elements, reproducible for a given seed."""
    rng = random.Random(seed)
    if source == "synthetic":
        seen: dict[bytes, None] = {}
        while len(seen) < count:
            seen[rng.randbytes(SYNTHETIC_LENGTH).translate(_TO_ALNUM)] = None
        return list(seen)
    if source == "wordlist":
        if wordlist is None:
            raise ConfigurationError("wordlist source needs a wordlist path")
        words = _load_wordlist(str(wordlist))
        if len(words) < count:
            raise ConfigurationError(
                f"wordlist {wordlist} has {len(words)} distinct entries, need {count}"
            )
        return [w.encode("utf-8") for w in rng.sample(words, count)]
    raise ConfigurationError(f"unknown element source {source!r}")


@dataclass(frozen=True)
class ExperimentConfig:
    params: FilterParams
    n: int
    trials: int = 2000
    probes: int = 500
    master_seed: int = 0
    source: str = "synthetic"
    wordlist: Optional[str] = None

    def __post_init__(self):
        if self.n < 0:
            raise ConfigurationError(f"n must be >= 0, got {self.n}")
        if self.trials < 1:
            raise ConfigurationError(f"trials must be >= 1, got {self.trials}")
        if self.probes < 1:
            raise ConfigurationError(f"probes must be >= 1, got {self.probes}")
        if self.source not in ("synthetic", "wordlist"):
            raise ConfigurationError(f"unknown element source {self.source!r}")
        if self.source == "wordlist" and self.wordlist is None:
            raise ConfigurationError("wordlist source needs a wordlist path")


@dataclass(frozen=True)
class TrialResult:
    deletable_fraction: float
    bits_reset_fraction: float
    fpr_before: float
    fpr_after: float
    data_bits_set_before: int
    bitmap_saturation: float


METRICS = tuple(f.name for f in fields(TrialResult))


@dataclass(frozen=True)
class MetricSummary:
    mean: float
    std: float
    ci95: float


@dataclass(frozen=True)
class AggregateResult:
    config: ExperimentConfig
    metrics: dict[str, MetricSummary]

    def __getitem__(self, metric: str) -> MetricSummary:
        return self.metrics[metric]

    def as_row(self) -> dict:
        c = self.config
        return {
            "m": c.params.m,
            "r": c.params.r,
            "k": c.params.k,
            "n": c.n,
            "trials": c.trials,
            "probes": c.probes,
            "master_seed": c.master_seed,
            "mean_deletable": self["deletable_fraction"].mean,
            "std_deletable": self["deletable_fraction"].std,
            "ci95_deletable": self["deletable_fraction"].ci95,
            "mean_bits_reset": self["bits_reset_fraction"].mean,
            "mean_fpr_before": self["fpr_before"].mean,
            "ci95_fpr_before": self["fpr_before"].ci95,
            "mean_fpr_after": self["fpr_after"].mean,
            "ci95_fpr_after": self["fpr_after"].ci95,
            "mean_bitmap_saturation": self["bitmap_saturation"].mean,
        }


SIMULATION_COLUMNS = (
    "m", "r", "k", "n", "trials", "probes", "master_seed",
    "mean_deletable", "std_deletable", "ci95_deletable", "mean_bits_reset",
    "mean_fpr_before", "ci95_fpr_before", "mean_fpr_after", "ci95_fpr_after",
    "mean_bitmap_saturation",
)


def _trial_elements(config: ExperimentConfig, trial_index: int):
    seed = trial_seed(config.master_seed, trial_index)
    elements = generate_elements(config.n + config.probes, seed, config.source, config.wordlist)
    # separate stream for the removal order so it is independent of element draws
    order_rng = random.Random(splitmix64(seed))
    return elements[: config.n], elements[config.n :], order_rng


def _positive_rate(bloom, probe_indices) -> float:
    return sum(1 for idx in probe_indices if bloom.query_at(idx)) / len(probe_indices)


def run_trial(config: ExperimentConfig, trial_index: int) -> TrialResult:
    inserted, probes, order_rng = _trial_elements(config, trial_index)
    dlbf = DeletableBloomFilter(config.params)
    inserted_idx = [dlbf.indices(e) for e in inserted]
    probe_idx = [dlbf.indices(e) for e in probes]
    for idx in inserted_idx:
        dlbf.insert_at(idx)
    fpr_before = _positive_rate(dlbf, probe_idx)
    set_before, marked = dlbf.bit_counts()

    order = list(range(len(inserted)))
    order_rng.shuffle(order)
    deleted = sum(1 for j in order if dlbf.remove_at(inserted_idx[j]) is RemoveOutcome.DELETED)
    set_after, _ = dlbf.bit_counts()

    n = len(inserted)
    return TrialResult(
        deletable_fraction=deleted / n if n else 0.0,
        bits_reset_fraction=(set_before - set_after) / set_before if set_before else 0.0,
        fpr_before=fpr_before,
        fpr_after=_positive_rate(dlbf, probe_idx),
        data_bits_set_before=set_before,
        bitmap_saturation=marked / config.params.r,
    )


def run_sbf_trial(config: ExperimentConfig, trial_index: int) -> TrialResult:
    """Same elements as ``run_trial`` but inserted into a standard filter of all ``m`` bits."""
    inserted, probes, _ = _trial_elements(config, trial_index)
    p = config.params
    sbf = StandardBloomFilter(p.m, p.k, p.seed)
    for element in inserted:
        sbf.insert(element)
    fpr = _positive_rate(sbf, [sbf.indices(e) for e in probes])
    return TrialResult(
        deletable_fraction=0.0,
        bits_reset_fraction=0.0,
        fpr_before=fpr,
        fpr_after=fpr,
        data_bits_set_before=sbf.bits.popcount(),
        bitmap_saturation=0.0,
    )


def summarize(values: list[float]) -> MetricSummary:
    mean = math.fsum(values) / len(values)
    std = statistics.stdev(values, mean) if len(values) > 1 else 0.0
    return MetricSummary(mean=mean, std=std, ci95=Z95 * std / math.sqrt(len(values)))


def aggregate(config: ExperimentConfig, results: list[TrialResult]) -> AggregateResult:
    if len(results) != config.trials:
        raise ValueError(f"expected {config.trials} trial results, got {len(results)}")
    metrics = {
        name: summarize([float(getattr(t, name)) for t in results]) for name in METRICS
    }
    return AggregateResult(config=config, metrics=metrics)


def _run_chunk(args) -> list[TrialResult]:
    fn, config, start, stop = args
    return [fn(config, i) for i in range(start, stop)]


def _run_all(fn, config: ExperimentConfig, workers: int) -> list[TrialResult]:
    if workers <= 1 or config.trials < 2:
        return [fn(config, i) for i in range(config.trials)]
    step = -(-config.trials // (workers * 4))
    chunks = [(fn, config, s, min(s + step, config.trials)) for s in range(0, config.trials, step)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map preserves submission order, so reduction stays in trial-index order
        return [t for chunk in pool.map(_run_chunk, chunks) for t in chunk]


def run_experiment(config: ExperimentConfig, workers: int = 1) -> AggregateResult:
    return aggregate(config, _run_all(run_trial, config, workers))


def run_sbf_baseline(config: ExperimentConfig, workers: int = 1) -> AggregateResult:
    return aggregate(config, _run_all(run_sbf_trial, config, workers))


def sbf_row(result: AggregateResult) -> dict:
    """CSV row for a baseline run; ``r`` is reported as 0 to mark the standard filter."""
    row = result.as_row()
    row["r"] = 0
    return row


__all__ = [
    "AggregateResult", "ExperimentConfig", "MetricSummary", "TrialResult",
    "SIMULATION_COLUMNS", "aggregate", "generate_elements", "run_experiment",
    "run_sbf_baseline", "run_sbf_trial", "run_trial", "sbf_row", "splitmix64",
    "summarize", "trial_seed",
]

