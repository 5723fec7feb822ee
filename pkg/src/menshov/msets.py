"""M-sets, their measures, pushforward arc masses, and convergence scans.

An M-set of I = [a, b] with parameters (n, sigma, tau) is the union of n
equal closed intervals, one per block [a + k(b-a)/n, a + (k+1)(b-a)/n],
each occupying the width fraction tau at offset sigma inside its block.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .fourier import IndexSet
from .measures import Measure, normalize

__all__ = [
    "MSetSpec",
    "ArcSpec",
    "mset_intervals",
    "mset_mass",
    "pushforward_arc_mass",
    "proposition_scan",
    "ConvergenceScan",
]


@dataclass(frozen=True)
class MSetSpec:
    """(I, n, sigma, tau) data of an M-set."""

    interval: tuple[float, float]
    n: int
    sigma: float
    tau: float

    def __post_init__(self):
        a, b = self.interval
        if not a < b:
            raise ValueError("interval must have positive length")
        if self.n < 1:
            raise ValueError("n must be a positive integer")
        if self.sigma < 0 or self.tau <= 0 or self.sigma + self.tau > 1 + 1e-15:
            raise ValueError("need sigma >= 0, tau > 0, sigma + tau <= 1")

    @property
    def strict_hypothesis(self) -> bool:
        """Whether sigma > 0 and sigma + tau < 1 hold strictly."""
        return self.sigma > 0 and self.sigma + self.tau < 1


@dataclass(frozen=True)
class ArcSpec:
    """Circle arc {exp(2 pi i t) : t in [sigma, sigma + tau]}."""

    sigma: float
    tau: float

    def __post_init__(self):
        if not (0 <= self.sigma and self.tau > 0 and self.sigma + self.tau <= 1):
            raise ValueError("need 0 <= sigma < sigma + tau <= 1")


def mset_intervals(spec: MSetSpec) -> np.ndarray:
    """The n disjoint closed intervals of the M-set, as an (n, 2) array."""
    a, b = spec.interval
    w = (b - a) / spec.n
    k = np.arange(spec.n)
    left = a + (k + spec.sigma) * w
    right = a + (k + spec.sigma + spec.tau) * w
    return np.column_stack([left, right])


def mset_mass(mu: Measure, spec: MSetSpec) -> float:
    """Total mu-mass of the M-set's intervals."""
    a, b = spec.interval
    u, v = mu.domain
    if a < u - 1e-12 or b > v + 1e-12:
        raise DomainError("M-set interval outside measure domain")
    iv = mset_intervals(spec)
    return float(np.sum(mu.interval_mass(iv[:, 0], iv[:, 1])))


def pushforward_arc_mass(nu: Measure, n: int, arc: ArcSpec) -> float:
    """Mass of the arc under the distribution of x -> exp(2 pi i n x).

    Equals nu({x : frac(n x) in [sigma, sigma + tau]}), computed as the sum
    of nu([(k + sigma)/n, (k + sigma + tau)/n]) over k = 0..n-1.
    """
    if nu.domain != (0.0, 1.0):
        raise ValueError("pushforward expects a measure on [0, 1]")
    k = np.arange(n)
    left = (k + arc.sigma) / n
    right = (k + arc.sigma + arc.tau) / n
    return float(np.sum(nu.interval_mass(left, np.minimum(right, 1.0))))


@dataclass
class ConvergenceScan:
    """mu(A_n) along an index set, against the limit tau * mu(I)."""

    ns: np.ndarray
    masses: np.ndarray
    errors: np.ndarray
    target: float
    tail_sup: float
    horizon: int

    def rows(self):
        return list(zip(self.ns.tolist(), self.masses.tolist(),
                        self.errors.tolist()))


def proposition_scan(mu: Measure, interval, sigma: float, tau: float,
                     lam: IndexSet) -> ConvergenceScan:
    """Evaluate mu(A_n) for every n in lam and report |mu(A_n) - tau mu(I)|.

    tail_sup is the sup of the error over the last quartile of the horizon
    (falling back to the last quartile of the members if that slice is empty).
    """
    ns = np.asarray([n for n in lam.members if n >= 1], dtype=np.int64)
    if ns.size == 0:
        raise ValueError("index set has no usable members (n >= 1)")
    a, b = float(interval[0]), float(interval[1])
    target = tau * float(mu.interval_mass(a, b))
    masses = np.array([
        mset_mass(mu, MSetSpec((a, b), int(n), sigma, tau)) for n in ns
    ])
    errors = np.abs(masses - target)
    tail = errors[ns >= 0.75 * lam.horizon]
    if tail.size == 0:
        tail = errors[3 * ns.size // 4:]
    return ConvergenceScan(ns, masses, errors, target,
                           float(tail.max()), lam.horizon)
