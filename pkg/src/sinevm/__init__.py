"""Sine-skewed von Mises distribution: density, CDF, moments, sampling and
truncated-moment characterization checks."""

from .bessel import SeriesConfig, bessel_i
from .core import (
    CircularMoment,
    SvmParams,
    cdf,
    circular_moment,
    logpdf,
    mean,
    mode,
    pdf,
    pdf_series,
    quantile,
    recover_concentration,
    vm_circular_moment,
    wrap_angle,
)
from .errors import ConvergenceError, DegenerateInputError, DomainError, VanishingDensityError
from .sampling import RandomStream, sample_batch, sample_svm

__version__ = "0.1.0"
