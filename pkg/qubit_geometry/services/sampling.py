"""
Sampling Service

Seeded random ensembles and pure states, the sharded comparison of the
mixed-state formula against the Wootters oracle, and the (theta, phi) sweep.

Sample i always draws from SeedSequence(entropy=master_seed, spawn_key=(i,)),
so results depend only on the master seed and the sample index, never on how
the indices are split into shards.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

import math
import numpy as np

from qubit_geometry.models.spinops import Sector
from qubit_geometry.models.states import (
    Ensemble,
    EnsembleTerm,
    PureStateParams,
    StateVector,
    density_from_pure,
    ensemble_density,
    pure_state,
)
from qubit_geometry.services.entanglement import (
    big_phi_stats,
    mixed_concurrence,
    trig_expectations,
    wootters_concurrence,
)

MAX_TERMS = 6
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SampleResult:
    """Both concurrence values for one random ensemble"""
    index: int
    c_mixed: float
    c_wootters: float

    @property
    def difference(self) -> float:
        return abs(self.c_mixed - self.c_wootters)


@dataclass
class ComparisonSummary:
    """Aggregate of a random comparison run"""
    count: int
    seed: int
    max_difference: float
    mean_difference: float
    worst_index: int
    worst_ensemble: Ensemble
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_difference <= self.tolerance

    def to_dict(self) -> dict:
        return {
            'count': self.count,
            'seed': self.seed,
            'max_difference': self.max_difference,
            'mean_difference': self.mean_difference,
            'worst_index': self.worst_index,
            'tolerance': self.tolerance,
            'passed': self.passed,
            'worst_spec': self.worst_ensemble.to_dict(),
        }


@dataclass(frozen=True)
class SweepRow:
    theta: float
    phi: float
    c_geometric: float
    c_wootters: float
    cos_mean: float
    sin_mean: float
    var_sum: float
    big_phi_mean: float

    def to_dict(self) -> dict:
        return {
            'theta': self.theta,
            'phi': self.phi,
            'c_geometric': self.c_geometric,
            'c_wootters': self.c_wootters,
            'cos_mean': self.cos_mean,
            'sin_mean': self.sin_mean,
            'var_sum': self.var_sum,
            'big_phi_mean': self.big_phi_mean,
        }


def sample_rng(master_seed: int, index: int) -> np.random.Generator:
    """Generator for sample `index`, derived from (master_seed, index) only"""
    return np.random.default_rng(np.random.SeedSequence(entropy=master_seed, spawn_key=(index,)))


def random_params(rng: np.random.Generator, sector: Optional[Sector] = None) -> PureStateParams:
    if sector is None:
        sector = Sector.S0 if rng.integers(0, 2) == 0 else Sector.S1
    theta = float(rng.uniform(0.0, math.pi))
    phi = float(rng.uniform(0.0, TWO_PI))
    return PureStateParams(sector, theta, phi)


def random_ensemble(rng: np.random.Generator, max_terms: int = MAX_TERMS) -> Ensemble:
    """1..max_terms terms, Dirichlet-uniform weights via normalized exponentials"""
    count = int(rng.integers(1, max_terms + 1))
    raw = rng.exponential(size=count)
    weights = raw / raw.sum()
    terms = tuple(
        EnsembleTerm(float(weight), random_params(rng))
        for weight in weights
    )
    return Ensemble(terms)


def ensemble_for_sample(master_seed: int, index: int) -> Ensemble:
    return random_ensemble(sample_rng(master_seed, index))


def random_pure_states(master_seed: int, count: int, sector: Sector) -> Iterator[Tuple[PureStateParams, StateVector]]:
    for index in range(count):
        params = random_params(sample_rng(master_seed, index), sector)
        yield params, pure_state(params)


def compare_sample(master_seed: int, index: int) -> SampleResult:
    rho = ensemble_density(ensemble_for_sample(master_seed, index))
    return SampleResult(
        index=index,
        c_mixed=mixed_concurrence(rho),
        c_wootters=wootters_concurrence(rho),
    )


def _run_shard(master_seed: int, indices: range) -> List[SampleResult]:
    return [compare_sample(master_seed, index) for index in indices]


def shard_ranges(samples: int, shards: int) -> List[range]:
    """Split 0..samples-1 into at most `shards` contiguous ranges"""
    shards = max(1, min(shards, samples))
    size, extra = divmod(samples, shards)
    ranges = []
    start = 0
    for shard in range(shards):
        stop = start + size + (1 if shard < extra else 0)
        ranges.append(range(start, stop))
        start = stop
    return ranges


def compare_random(samples: int, seed: int, tolerance: float, workers: int = 1) -> ComparisonSummary:
    """
    Draw `samples` random ensembles and compare the mixed-state formula
    against the Wootters oracle.

    Results are gathered in index order, so the summary is identical for any
    number of workers.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")

    ranges = shard_ranges(samples, workers)
    if len(ranges) == 1:
        shards = [_run_shard(seed, ranges[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
            shards = list(pool.map(lambda r: _run_shard(seed, r), ranges))

    results = [result for shard in shards for result in shard]
    differences = [result.difference for result in results]
    worst = max(range(len(results)), key=lambda k: (differences[k], -k))

    return ComparisonSummary(
        count=len(results),
        seed=seed,
        max_difference=differences[worst],
        mean_difference=math.fsum(differences) / len(differences),
        worst_index=results[worst].index,
        worst_ensemble=ensemble_for_sample(seed, results[worst].index),
        tolerance=tolerance,
    )


def theta_grid(steps: int) -> List[float]:
    """steps points from 0 to pi inclusive"""
    return [math.pi * i / (steps - 1) for i in range(steps)]


def phi_grid(steps: int) -> List[float]:
    """steps points 2 pi j / steps, j < steps"""
    return [TWO_PI * j / steps for j in range(steps)]


def sweep_row(params: PureStateParams) -> SweepRow:
    rho = density_from_pure(pure_state(params))
    trig = trig_expectations(rho, params.sector)
    return SweepRow(
        theta=params.theta,
        phi=params.phi,
        c_geometric=min(1.0, trig.concurrence),
        c_wootters=wootters_concurrence(rho),
        cos_mean=trig.cos_mean,
        sin_mean=trig.sin_mean,
        var_sum=trig.variance_sum,
        big_phi_mean=big_phi_stats(rho).mean,
    )


def sweep(theta_steps: int, phi_steps: int, sector: Sector = Sector.S0, workers: int = 1) -> List[SweepRow]:
    """One row per grid point, theta-major"""
    points = [
        PureStateParams(sector, theta, phi)
        for theta in theta_grid(theta_steps)
        for phi in phi_grid(phi_steps)
    ]
    if workers <= 1:
        return [sweep_row(params) for params in points]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(sweep_row, points))
