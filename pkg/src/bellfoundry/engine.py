"""Seeded, thread-count-independent experiment execution.

Trials are split into fixed-size batches; batch k of logical stream s
draws from the Philox substream keyed by (seed, s, k).  Batch results are
integer PairCounts, whose merge is exact and associative, so the final
tallies are identical for any number of worker threads.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import model1, model2
from .geometry import Axis, PairCounts
from .lhv import DeterministicSignModel, sample_model_counts, sign_model_expectation_analytic
from .model1 import model1_expectation_analytic
from .quantum import sample_singlet_counts, singlet_expectation
from .rng import batch_sizes, substream

CountSampler = Callable[[np.random.Generator, Axis, Axis, int], PairCounts]


@dataclass(frozen=True)
class ModelRunner:
    """A registered model: a vectorized trial sampler plus optional closed form."""

    name: str
    sample_counts: CountSampler
    analytic_expectation: Optional[Callable[[Axis, Axis], float]]


def _sign_lhv_counts(rng, a, b, n):
    return sample_model_counts(DeterministicSignModel(), a, b, n, rng)


MODELS = {
    "quantum": ModelRunner("quantum", sample_singlet_counts, singlet_expectation),
    "sign-lhv": ModelRunner("sign-lhv", _sign_lhv_counts, sign_model_expectation_analytic),
    "model1": ModelRunner("model1", model1.sample_trial_counts, model1_expectation_analytic),
    # model2 reproduces the singlet law, so the quantum closed form applies
    "model2": ModelRunner("model2", model2.sample_trial_counts, singlet_expectation),
}


def run_pair_counts(
    runner: ModelRunner,
    a: Axis,
    b: Axis,
    trials: int,
    seed: int,
    stream: int,
    threads: int = 1,
) -> PairCounts:
    """Accumulate trials for one axis pair over deterministic batches."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    sizes = batch_sizes(trials)

    def one_batch(k_size):
        k, size = k_size
        return runner.sample_counts(substream(seed, stream, k), a, b, size)

    if threads <= 1 or len(sizes) == 1:
        batches = map(one_batch, enumerate(sizes))
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            batches = list(pool.map(one_batch, enumerate(sizes)))
    total = PairCounts(0, 0, 0, 0)
    for counts in batches:
        total = total + counts
    return total


def chsh_std_error(std_errors) -> float:
    """Combined standard error of a CHSH sum of four estimates."""
    return math.sqrt(sum(0.0 if math.isnan(s) else s * s for s in std_errors))
