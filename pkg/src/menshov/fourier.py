"""Fourier-Stieltjes coefficients, Wiener averages, and density-1 index sets.

Coefficients of a probability measure nu on [0,1] are

    nu_hat(j) = integral over [0,1] of exp(-2*pi*i*j*t) dnu(t).

Atoms are summed exactly; the continuous CDF part is integrated by a
midpoint Riemann-Stieltjes rule whose certified error bound is the phase
variation per cell times the continuous mass per cell, summed.  For scans
over many frequencies the cell masses are taken on one shared power-of-two
grid and all coefficients come out of a single real FFT.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import AtomicMeasureError, QuadratureError
from .measures import Measure, atomic_part

__all__ = [
    "CoefficientTable",
    "IndexSet",
    "coefficient",
    "coefficients_batch",
    "wiener_average",
    "lambda_jk",
    "build_lambda",
]

DEFAULT_REFINEMENT = 512
CERTIFY_LIMIT = 0.5  # an error bound above this makes a coefficient unusable


def _check_probability(nu: Measure):
    if abs(nu.total_mass - 1.0) > 1e-9 or nu.domain != (0.0, 1.0):
        raise ValueError("expected a probability measure on [0, 1]; "
                         "normalize the measure first")


def _atom_sum(nu: Measure, freqs):
    """Exact atomic contribution sum(mass * exp(-2 pi i f p)) per frequency."""
    if nu.atom_positions.size == 0:
        return 0.0
    f = np.asarray(freqs, dtype=float)
    phase = np.exp(-2j * np.pi * np.outer(f, nu.atom_positions))
    return phase @ nu.atom_masses


def coefficient(nu: Measure, j: int, refinement: int = DEFAULT_REFINEMENT):
    """Single Fourier-Stieltjes coefficient with a certified error bound.

    Returns (value, error_bound).  The continuous part is integrated on a
    uniform partition of at least refinement * max(1, |j|) cells.
    """
    _check_probability(nu)
    j = int(j)
    n_cells = refinement * max(1, abs(j))
    edges = np.linspace(0.0, 1.0, n_cells + 1)
    masses = np.diff(nu.cont(edges))
    mids = (edges[:-1] + edges[1:]) / 2.0
    val = np.sum(masses * np.exp(-2j * np.pi * j * mids)) + np.sum(
        np.atleast_1d(_atom_sum(nu, [j])))
    err = 2.0 * np.pi * abs(j) / n_cells * nu.cont_total
    if err > CERTIFY_LIMIT:
        raise QuadratureError(
            f"refinement {refinement} cannot certify coefficient at j={j}")
    return complex(val), float(err)


def _grid_rfft(nu: Measure, grid: int):
    """rfft of the continuous cell-mass vector on a `grid`-cell partition."""
    cache = nu._grid_cache
    if grid not in cache:
        edges = np.linspace(0.0, 1.0, grid + 1)
        masses = np.diff(nu.cont(edges))
        cache.clear()  # keep only the finest grid seen so far
        cache[grid] = np.fft.rfft(masses)
    return cache[grid]


def coefficients_batch(nu: Measure, freqs, refinement: int = DEFAULT_REFINEMENT):
    """Coefficients at many nonnegative integer frequencies via one FFT.

    The shared grid has at least refinement * max(1, f) cells for every
    requested frequency f, so each per-frequency certified bound is at most
    2*pi*f/grid * (continuous mass).  Returns (values, error_bounds).
    """
    _check_probability(nu)
    freqs = np.asarray(freqs, dtype=np.int64)
    if np.any(freqs < 0):
        raise ValueError("batch frequencies must be nonnegative; "
                         "use conjugate symmetry for negative ones")
    fmax = int(freqs.max()) if freqs.size else 0
    grid = 1 << int(np.ceil(np.log2(max(refinement * max(1, fmax), 1024))))
    spectrum = _grid_rfft(nu, grid)
    vals = spectrum[freqs] * np.exp(-1j * np.pi * freqs / grid)
    vals = vals + _atom_sum(nu, freqs)
    errs = 2.0 * np.pi * freqs / grid * nu.cont_total
    return vals, errs


def wiener_average(nu: Measure, k: int, N: int,
                   refinement: int = DEFAULT_REFINEMENT) -> float:
    """Cesaro average of |nu_hat(n*k)|^2 over n = 0..N."""
    if k == 0:
        raise ValueError("k must be nonzero")
    vals, errs = coefficients_batch(nu, abs(k) * np.arange(N + 1), refinement)
    if errs.max() > CERTIFY_LIMIT:
        raise QuadratureError("coefficient error bound exceeds certification limit")
    return float(np.mean(np.abs(vals) ** 2))


# ---------------------------------------------------------------------------
# Index sets

@dataclass(frozen=True)
class IndexSet:
    """A certified subset of {0..horizon} with density diagnostics."""

    members: np.ndarray
    horizon: int
    density: float
    provenance: dict = field(default_factory=dict)
    warnings: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "members",
                           np.asarray(self.members, dtype=np.int64))

    def __len__(self):
        return int(self.members.size)

    def __iter__(self):
        return iter(self.members.tolist())


def lambda_jk(nu: Measure, j: int, k: int, N_max: int,
              refinement: int = DEFAULT_REFINEMENT) -> IndexSet:
    """The set of n <= N_max with certified |nu_hat(n k)| <= 1/j.

    Membership is conservative: |value| + error_bound <= 1/j.
    """
    if j < 1:
        raise ValueError("j must be a positive integer")
    if k == 0:
        raise ValueError("k must be nonzero")
    vals, errs = coefficients_batch(nu, abs(k) * np.arange(N_max + 1), refinement)
    ok = np.abs(vals) + errs <= 1.0 / j
    members = np.flatnonzero(ok)
    density = members.size / (N_max + 1)
    return IndexSet(members, N_max, density, {"j": j, "k": k})


def build_lambda(nu: Measure, K: int, J: int, N_max: int, m: int = 1,
                 refinement: int = DEFAULT_REFINEMENT,
                 density_floor: float = 0.5,
                 atom_tol: float | None = None) -> IndexSet:
    """Certified subset of the intersection of all Lambda_{j,k}, j<=J, |k|<=K,
    restricted to multiples of m.

    This is the finite-horizon version of the density-1 diagonal argument:
    a finite intersection with per-(j,k) density diagnostics attached.
    Refuses atomic measures, for which the Wiener averages do not vanish.
    """
    _check_probability(nu)
    if min(K, J, m) < 1:
        raise ValueError("K, J, m must be positive integers")
    atoms = atomic_part(nu, atom_tol)
    if atoms:
        raise AtomicMeasureError(
            f"measure has {len(atoms)} atom(s) above tolerance; "
            "Wiener averages cannot vanish and no density-1 set is certifiable")

    ns = np.arange(N_max + 1)
    keep = (ns % m == 0)
    provenance = {}
    # |nu_hat(-f)| = |nu_hat(f)|: negative k give the same sets as positive k
    for k in range(1, K + 1):
        vals, errs = coefficients_batch(nu, k * ns, refinement)
        absv = np.abs(vals) + errs
        for j in range(1, J + 1):
            ok = absv <= 1.0 / j
            provenance[(j, k)] = float(np.count_nonzero(ok) / (N_max + 1))
        keep &= absv <= 1.0 / J  # Lambda_{J,k} is the smallest over j <= J
    members = np.flatnonzero(keep)
    density = members.size / (N_max + 1)
    warnings = ()
    if density < density_floor / m:
        warnings = (f"density {density:.4f} below floor {density_floor}/m",)
    return IndexSet(members, N_max, density, provenance, warnings)


@dataclass
class CoefficientTable:
    """Cache of coefficients of one measure: frequency -> (value, error)."""

    measure: Measure
    refinement: int = DEFAULT_REFINEMENT
    entries: dict = field(default_factory=dict)

    def get(self, j: int):
        j = int(j)
        if j not in self.entries:
            val, err = coefficient(self.measure, j, self.refinement)
            self.entries[j] = (val, err)
        return self.entries[j]

    def fill(self, freqs):
        freqs = np.asarray(freqs, dtype=np.int64)
        vals, errs = coefficients_batch(self.measure, np.abs(freqs),
                                        self.refinement)
        for f, v, e in zip(freqs.tolist(), vals, errs):
            self.entries[f] = (complex(v.conjugate() if f < 0 else v), float(e))
        return self

    def rows(self):
        """Sorted (frequency, value, error) triples."""
        return [(f, *self.entries[f]) for f in sorted(self.entries)]
