"""Numerical verification toolkit for measure-correction constructions:
CDF-backed Borel measures, Fourier-Stieltjes coefficients and Wiener
averages, density-1 index sets, M-set measure asymptotics, the
piecewise-linear corrector, and the certified large-set assembly."""

from .assembly import (ClaimResult, DemoResult, claim_run,
                       partial_sum_diagnostics, resample_equal, subdivide,
                       theorem_demo)
from .corrector import (CorrectorLayout, CorrectorParams, build_psi, choose_r,
                        kernel_sup, layout, running_integral_sup)
from .errors import (AtomicMeasureError, CertificationError, DomainError,
                     MeasureSpecError, QuadratureError)
from .fourier import (CoefficientTable, IndexSet, build_lambda, coefficient,
                      coefficients_batch, lambda_jk, wiener_average)
from .measures import (Measure, MeasureSpec, atomic_part, build_measure,
                       cantor_cdf, interval_mass, load_spec, normalize)
from .msets import (ArcSpec, ConvergenceScan, MSetSpec, mset_intervals,
                    mset_mass, proposition_scan, pushforward_arc_mass)
from .piecewise import PiecewiseLinearFn, StepFunction, fourier_partial_sums

__version__ = "0.1.0"
