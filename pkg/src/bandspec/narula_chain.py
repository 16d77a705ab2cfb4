"""The tridiagonal Cholesky pivot chain and its ergodic capacity estimate.

For the two-diagonal single-user channel the pivots of the shifted LDL
factorization form a Markov chain

    d_n = 1 + P |a_n|^2 + P |b_n|^2 (1 - P |a_{n-1}|^2 / d_{n-1})

whose state is the pair ``(d, |a|^2)`` of the previous step; carrying the
previous-row draw explicitly in the state is what keeps the recursion free
of off-by-one mistakes.  The chain has a unique ergodic stationary law, so
the running mean of ``log d_n`` estimates the channel's per-symbol rate.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .band_matrix import generate_channel, gram, ldl_shifted, wyner
from .fading import RAYLEIGH

__all__ = [
    "ChainState",
    "ChainRun",
    "chain_start",
    "narula_step",
    "simulate_chain",
    "simulate_chain_ensemble",
    "chain_vs_ldl",
]


class ChainState(NamedTuple):
    """Two-slot chain state: current pivot and current ``|a|^2`` draw."""

    d: float
    abs_a_sq: float


def chain_start(a: complex, b: complex, power: float) -> ChainState:
    """Initial pivot ``d_1 = 1 + P |a_1|^2 + P |b_1|^2``."""
    abs_a_sq = abs(a) ** 2
    return ChainState(1.0 + power * abs_a_sq + power * abs(b) ** 2, abs_a_sq)


def narula_step(state: ChainState, a: complex, b: complex, power: float) -> ChainState:
    """One chain transition; the correction term uses the previous row's a."""
    abs_a_sq = abs(a) ** 2
    d = 1.0 + power * abs_a_sq + power * abs(b) ** 2 * (
        1.0 - power * state.abs_a_sq / state.d
    )
    return ChainState(d, abs_a_sq)


@dataclass(frozen=True)
class ChainRun:
    """A simulated chain trajectory with its ergodic log-mean estimate.

    ``samples`` holds the retained pivots (after ``burn_in`` discarded
    steps); every retained value is >= 1.  The standard error comes from
    batch means over 100 batches, the simplest defensible estimator for
    correlated chain output.
    """

    power: float
    n_steps: int
    burn_in: int
    samples: np.ndarray
    ergodic_log_mean: float
    log_mean_stderr: float


def simulate_chain(
    power: float,
    n_steps: int,
    burn_in: int,
    rng: np.random.Generator,
    n_batches: int = 100,
) -> ChainRun:
    """Run the chain with complex Gaussian taps and estimate E[log d].

    Draws are i.i.d. CN(0, 1) for both taps.  ``burn_in`` steps are discarded
    before averaging; unique ergodicity makes any finite burn-in
    asymptotically irrelevant.
    """
    if not 0 <= burn_in < n_steps:
        raise ValueError("need 0 <= burn_in < n_steps")
    pa = power * np.abs(RAYLEIGH.sample(rng, n_steps)) ** 2
    pb = power * np.abs(RAYLEIGH.sample(rng, n_steps)) ** 2
    d = np.empty(n_steps)
    d[0] = 1.0 + pa[0] + pb[0]
    d_prev = d[0]
    for i in range(1, n_steps):
        d_prev = 1.0 + pa[i] + pb[i] * (1.0 - pa[i - 1] / d_prev)
        d[i] = d_prev
    samples = d[burn_in:]
    logs = np.log(samples)
    mean = float(logs.mean())
    stderr = _batch_means_stderr(logs, n_batches)
    return ChainRun(power, n_steps, burn_in, samples, mean, stderr)


def _batch_means_stderr(values: np.ndarray, n_batches: int) -> float:
    usable = (len(values) // n_batches) * n_batches
    if usable < n_batches or n_batches < 2:
        return float("nan")
    batches = values[:usable].reshape(n_batches, -1).mean(axis=1)
    return float(batches.std(ddof=1) / np.sqrt(n_batches))


def simulate_chain_ensemble(
    power: float,
    n_chains: int,
    n_steps: int,
    burn_in: int,
    rng: np.random.Generator,
):
    """Ergodic log-mean pooled over independent chains run in lockstep.

    The chains advance as vector state, so large total sample counts stay
    cheap; equally long chains make the plain average of per-chain means the
    inverse-variance-weighted one.  Returns ``(estimate, stderr)`` with the
    standard error taken across chains.
    """
    if not 0 <= burn_in < n_steps:
        raise ValueError("need 0 <= burn_in < n_steps")
    d = np.empty(n_chains)
    pa_prev = np.empty(n_chains)
    sums = np.zeros(n_chains)
    pa0 = power * np.abs(RAYLEIGH.sample(rng, n_chains)) ** 2
    pb0 = power * np.abs(RAYLEIGH.sample(rng, n_chains)) ** 2
    d[:] = 1.0 + pa0 + pb0
    pa_prev[:] = pa0
    if burn_in == 0:
        sums += np.log(d)
    for i in range(1, n_steps):
        pa = power * np.abs(RAYLEIGH.sample(rng, n_chains)) ** 2
        pb = power * np.abs(RAYLEIGH.sample(rng, n_chains)) ** 2
        d = 1.0 + pa + pb * (1.0 - pa_prev / d)
        pa_prev = pa
        if i >= burn_in:
            sums += np.log(d)
    chain_means = sums / (n_steps - burn_in)
    estimate = float(chain_means.mean())
    stderr = float(chain_means.std(ddof=1) / np.sqrt(n_chains))
    return estimate, stderr


def chain_vs_ldl(n: int, power: float, rng: np.random.Generator) -> float:
    """Max pivot discrepancy between the recursion and the banded LDL path.

    Builds one two-diagonal channel realization, runs the recursion on the
    draws actually present in the matrix (the first row carries no b tap, so
    its pivot is ``1 + P |a_1|^2``), factorizes ``I + P H H*`` in band form,
    and compares the two pivot sequences entrywise.
    """
    params = wyner(n, 1, alpha=1.0, beta=0.0, fading=RAYLEIGH, power=power)
    channel = generate_channel(params, rng)
    pa = power * np.abs(channel.blocks[0][:, 0]) ** 2
    pb = power * np.abs(channel.blocks[-1][:, 0]) ** 2  # pb[0] == 0 structurally
    d_rec = np.empty(n)
    d_rec[0] = 1.0 + pa[0] + pb[0]
    for i in range(1, n):
        d_rec[i] = 1.0 + pa[i] + pb[i] * (1.0 - pa[i - 1] / d_rec[i - 1])
    d_ldl = ldl_shifted(gram(channel), power)
    return float(np.abs(d_ldl - d_rec).max())
