"""The piecewise-linear corrector on [c, d] and its verified properties.

Given gamma, eps, nu > 8 and a repetition count r, the layout divides
[c, d] into q = r * nu periods of nu * delta each, removes one interval of
width delta per interior period, and keeps the set E inside [a', b'].  The
corrector psi equals gamma on E, dips to -gamma(2 nu - 1) at the midpoint
of each removed interval (which cancels the integral over each period
exactly), ramps from 0 just outside [a', b'], and vanishes elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .piecewise import PiecewiseLinearFn

__all__ = [
    "CorrectorParams",
    "CorrectorLayout",
    "choose_r",
    "layout",
    "build_psi",
    "running_integral_sup",
    "kernel_sup",
]


def choose_r(c: float, d: float, gamma: float, eps: float, nu: int) -> int:
    """Smallest integer r with 4 |gamma| (d - c) / (r nu) < eps."""
    if nu <= 8:
        raise ValueError("nu must exceed 8")
    if eps <= 0:
        raise ValueError("eps must be positive")
    if gamma == 0:
        return 1
    x = 4.0 * abs(gamma) * (d - c) / (eps * nu)
    r = int(np.floor(x)) + 1
    # guard against the strict inequality failing on the boundary
    while 4.0 * abs(gamma) * (d - c) / (r * nu) >= eps:
        r += 1
    return r


@dataclass(frozen=True)
class CorrectorParams:
    c: float
    d: float
    gamma: float
    eps: float
    nu: int
    r: int

    def __post_init__(self):
        if not self.c < self.d:
            raise ValueError("need c < d")
        if int(self.nu) != self.nu or self.nu <= 8:
            raise ValueError("nu must be an integer > 8")
        if self.r < 1 or int(self.r) != self.r:
            raise ValueError("r must be a positive integer")
        if self.eps <= 0:
            raise ValueError("eps must be positive")
        q = self.r * self.nu
        if 4.0 * abs(self.gamma) * (self.d - self.c) / q >= self.eps:
            raise ValueError(
                "inadmissible parameters: 4|gamma|(d-c)/q must be < eps")

    @property
    def q(self) -> int:
        return int(self.r * self.nu)


@dataclass(frozen=True)
class CorrectorLayout:
    """Node grid and interval families of the corrector construction."""

    c: float
    d: float
    nu: int
    r: int
    q: int
    delta: float
    c_nodes: np.ndarray          # c_s = c + s (d-c)/q, s = 0..q
    a_prime: float               # = c_{2r}
    b_prime: float               # = c_{q-2r}
    removed: np.ndarray          # ((nu-4) r, 2): [a_s, c_s], s = 2r+1..q-2r
    e_intervals: np.ndarray      # ((nu-4) r + 1, 2); last one degenerate

    def lebesgue_e(self) -> float:
        return float(np.sum(self.e_intervals[:, 1] - self.e_intervals[:, 0]))


def layout(params: CorrectorParams) -> CorrectorLayout:
    """Build the node grid, removed intervals, and kept set E."""
    c, d, nu, r = params.c, params.d, params.nu, params.r
    q = params.q
    delta = (d - c) / (q * nu)
    s = np.arange(q + 1)
    c_nodes = c + s * ((d - c) / q)
    c_nodes[-1] = d  # exact right endpoint
    a_prime = c_nodes[2 * r]
    b_prime = c_nodes[q - 2 * r]
    s_rm = np.arange(2 * r + 1, q - 2 * r + 1)
    removed = np.column_stack([c_nodes[s_rm] - delta, c_nodes[s_rm]])
    # kept pieces: [c_s, a_{s+1}] for s = 2r..q-2r-1, then the point {b'}
    s_keep = np.arange(2 * r, q - 2 * r)
    kept = np.column_stack([c_nodes[s_keep], c_nodes[s_keep + 1] - delta])
    e_intervals = np.vstack([kept, [b_prime, b_prime]])
    return CorrectorLayout(c, d, int(nu), int(r), q, delta, c_nodes,
                           float(a_prime), float(b_prime), removed, e_intervals)


def build_psi(lay: CorrectorLayout, gamma: float, nu: int) -> PiecewiseLinearFn:
    """The corrector function for a given layout.

    Equals gamma on every kept interval of E; on each removed interval it
    dips linearly to h = -gamma (2 nu - 1) at the midpoint; entry/exit ramps
    of width delta connect to 0 just outside [a', b'].
    """
    if nu != lay.nu:
        raise ValueError("nu must match the layout")
    h = -gamma * (2 * nu - 1)
    delta = lay.delta
    xs = [lay.a_prime - delta, lay.a_prime]
    ys = [0.0, gamma]
    for a_s, c_s in lay.removed:
        xs.extend([a_s, (a_s + c_s) / 2.0, c_s])
        ys.extend([gamma, h, gamma])
    xs.append(lay.b_prime + delta)
    ys.append(0.0)
    return PiecewiseLinearFn(xs, ys)


def running_integral_sup(psi: PiecewiseLinearFn) -> float:
    """Exact sup over xi of |integral of psi from 0 to xi|.

    Candidates are the breakpoints plus the interior extrema of each
    quadratic piece of the antiderivative; no grids involved.
    """
    _, vals = psi.running_integral_extrema()
    return float(np.max(np.abs(vals)))


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(4)


def _segment_quadrature(psi: PiecewiseLinearFn, j: int, cells_per_period: int = 8):
    """Gauss-Legendre nodes/weights resolving psi's segments and the kernel.

    Each linear segment is split into enough cells that the kernel phase
    advances by at most 2 pi / cells_per_period per cell.
    """
    period = 2.0 * np.pi / j
    nodes, weights = [], []
    for x0, x1 in zip(psi.xs[:-1], psi.xs[1:]):
        n_cells = max(1, int(np.ceil(cells_per_period * (x1 - x0) / period)))
        edges = np.linspace(x0, x1, n_cells + 1)
        mid = (edges[:-1] + edges[1:]) / 2.0
        half = np.diff(edges) / 2.0
        nodes.append((mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel())
        weights.append((half[:, None] * _GL_WEIGHTS[None, :]).ravel())
    return np.concatenate(nodes), np.concatenate(weights)


def kernel_sup(psi: PiecewiseLinearFn, j_max: int, x_grid: int,
               nu: int | None = None, gamma: float | None = None):
    """Sup of |integral psi(t) sin(j (t - x)) / (t - x) dt| over j and x.

    j ranges over 1..j_max, x over a uniform x_grid-point grid in [0, 2 pi].
    The removable singularity is evaluated through sin(j u)/u = j sinc(j u / pi).
    Returns (sup_value, b_hat) where b_hat = sup_value / (nu |gamma|), or
    None when nu/gamma are not supplied or gamma is 0.
    """
    xs = np.linspace(0.0, 2.0 * np.pi, x_grid)
    sup = 0.0
    for j in range(1, j_max + 1):
        t, w = _segment_quadrature(psi, j)
        wpsi = w * psi(t)
        diff = t[:, None] - xs[None, :]
        kern = j * np.sinc(j * diff / np.pi)
        vals = wpsi @ kern
        sup = max(sup, float(np.max(np.abs(vals))))
    b_hat = None
    if nu is not None and gamma not in (None, 0, 0.0):
        b_hat = sup / (nu * abs(gamma))
    return sup, b_hat
