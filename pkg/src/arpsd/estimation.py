"""AR(p) parameter estimation.

Three fitting routes share one coefficient convention (see
:class:`arpsd.core.ArModel`):

* ``yule_walker_fit`` solves the autocovariance normal equations with the
  Levinson-Durbin recursion.
* ``burg_fit`` runs the Burg lattice on the raw samples, minimizing the
  summed forward plus backward prediction error at each stage.
* ``mle_fit`` reuses the Yule-Walker coefficients (the likelihood is
  maximized by the same normal equations) and estimates the innovation
  variance by integrating |A(f)|^2 I(f) against the periodogram.

All three return a :class:`FitResult` carrying the model, the reflection
coefficients, and the prediction-error power at every order up to p.
"""

from dataclasses import dataclass

import numpy as np

from .core import ArModel, AutocovarianceSeq, SpectrumEstimate, TimeSeries
from .preprocess import biased_autocov, periodogram

__all__ = [
    "METHODS",
    "FitResult",
    "levinson_durbin",
    "yule_walker_fit",
    "burg_fit",
    "mle_fit",
    "ar_psd",
    "reflection_coefficients",
    "coefficients_from_reflection",
    "is_stable",
]

METHOD_YULE_WALKER = "yule_walker"
METHOD_BURG = "burg"
METHOD_MLE = "mle"
METHODS = (METHOD_YULE_WALKER, METHOD_BURG, METHOD_MLE)


@dataclass(frozen=True)
class FitResult:
    """Outcome of one AR fit.

    Attributes
    ----------
    model : ArModel
    method : str
        One of ``METHODS``.
    reflection_coeffs : np.ndarray
        Lattice reflection coefficients k(1..p); every entry has
        magnitude at most 1.
    prediction_error_by_order : np.ndarray
        Prediction-error power at orders 0..p.  Entry 0 is the sample
        variance; the sequence is non-increasing and nonnegative.
    """

    model: ArModel
    method: str
    reflection_coeffs: np.ndarray
    prediction_error_by_order: np.ndarray

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method: {self.method!r}")
        ks = np.array(self.reflection_coeffs, dtype=np.float64, copy=True)
        errs = np.array(self.prediction_error_by_order, dtype=np.float64, copy=True)
        if ks.size != self.model.order_p or errs.size != self.model.order_p + 1:
            raise ValueError("reflection/error arrays do not match model order")
        ks.setflags(write=False)
        errs.setflags(write=False)
        object.__setattr__(self, "reflection_coeffs", ks)
        object.__setattr__(self, "prediction_error_by_order", errs)


def _levinson_recursion(r: np.ndarray, p: int):
    """Order-recursive solve of the Toeplitz normal equations.

    Returns the coefficient vectors for every order 1..p, the reflection
    coefficients, and the prediction-error powers E(0..p).
    """
    if p < 1:
        raise ValueError("order must be at least 1")
    if r.size < p + 1:
        raise ValueError("need autocovariances up to lag p")
    if r[0] <= 0.0:
        raise ValueError("degenerate autocovariance")
    coeffs_by_order: list[np.ndarray] = []
    ks = np.empty(p)
    errs = np.empty(p + 1)
    errs[0] = r[0]
    a = np.empty(0)
    for m in range(1, p + 1):
        acc = r[m] + np.dot(a, r[m - 1 : 0 : -1])
        k = -acc / errs[m - 1]
        if abs(k) >= 1.0:
            raise ValueError("non-positive-definite autocovariance")
        new = np.empty(m)
        new[: m - 1] = a + k * a[::-1]
        new[m - 1] = k
        a = new
        ks[m - 1] = k
        errs[m] = errs[m - 1] * (1.0 - k * k)
        coeffs_by_order.append(a)
    return coeffs_by_order, ks, errs


def levinson_durbin(r: AutocovarianceSeq, p: int) -> FitResult:
    """Fit AR(p) coefficients from an autocovariance sequence.

    Solves sum_i a(i) r(l-i) = -r(l) for l = 1..p by the Levinson-Durbin
    recursion in O(p^2) operations.  The innovation variance is the
    final prediction-error power, which equals r(0) + sum_i a(i) r(i).

    Parameters
    ----------
    r : AutocovarianceSeq
        Values r(0..max_lag) with ``max_lag >= p`` and r(0) > 0.
    p : int
        Model order, at least 1.

    Returns
    -------
    FitResult

    Raises
    ------
    ValueError
        If r(0) <= 0 ("degenerate autocovariance") or a reflection
        coefficient reaches magnitude 1 ("non-positive-definite
        autocovariance").
    """
    coeffs_by_order, ks, errs = _levinson_recursion(r.values, p)
    model = ArModel(p, coeffs_by_order[-1], errs[p])
    return FitResult(model, METHOD_YULE_WALKER, ks, errs)


def yule_walker_fit(x: TimeSeries, p: int) -> FitResult:
    """Yule-Walker AR(p) fit of a signal.

    Demeans, computes the biased autocovariance to lag p, and solves the
    normal equations via :func:`levinson_durbin`.

    Raises
    ------
    ValueError
        "zero-variance signal" when the demeaned signal is identically
        zero (constant input).
    """
    if p < 1:
        raise ValueError("order must be at least 1")
    if len(x) < p + 1:
        raise ValueError("need more samples than the model order")
    r = biased_autocov(x, p)
    if r[0] == 0.0:
        raise ValueError("zero-variance signal")
    return levinson_durbin(r, p)


def _burg_recursion(samples: np.ndarray, p: int):
    """Burg lattice sweep returning per-order coefficients, k's and errors.

    At stage m the reflection coefficient minimizes the summed forward
    and backward prediction-error energy,

        k_m = -2 sum f(n) b(n-1) / sum [f(n)^2 + b(n-1)^2],

    which is bounded by 1 in magnitude (Cauchy-Schwarz).  Prediction
    error follows the lattice update E_m = E_{m-1} (1 - k_m^2) from
    E_0 = mean(x^2), so the sequence is non-increasing by construction.
    """
    n = samples.size
    if p < 1:
        raise ValueError("order must be at least 1")
    # n = p + 1 leaves exactly one term in the stage-p sums, which the
    # tiny hand-check cases rely on; anything shorter has none.
    if n < p + 1:
        raise ValueError("need more samples than the model order")
    f = samples.astype(np.float64, copy=True)
    b = samples.astype(np.float64, copy=True)
    coeffs_by_order: list[np.ndarray] = []
    ks = np.empty(p)
    errs = np.empty(p + 1)
    errs[0] = np.dot(samples, samples) / n
    a = np.empty(0)
    for m in range(1, p + 1):
        fv = f[m:]
        bv = b[m - 1 : n - 1]
        den = np.dot(fv, fv) + np.dot(bv, bv)
        if den == 0.0:
            raise ValueError("degenerate signal")
        k = -2.0 * np.dot(fv, bv) / den
        # Cauchy-Schwarz bounds |k| by 1 exactly; clamp 1-ulp spill.
        k = min(1.0, max(-1.0, k))
        new = np.empty(m)
        new[: m - 1] = a + k * a[::-1]
        new[m - 1] = k
        a = new
        # fv and bv alias f and b; materialize both updates before writing.
        new_f = fv + k * bv
        new_b = bv + k * fv
        f[m:] = new_f
        b[m:] = new_b
        ks[m - 1] = k
        errs[m] = errs[m - 1] * (1.0 - k * k)
        coeffs_by_order.append(a)
    return coeffs_by_order, ks, errs


def burg_fit(x: TimeSeries, p: int, demean: bool = True) -> FitResult:
    """Burg AR(p) fit of a signal.

    Parameters
    ----------
    x : TimeSeries
        At least p + 2 samples.
    p : int
        Model order, at least 1.
    demean : bool
        Subtract the sample mean first (the default, matching the
        zero-mean process model).  Pass False to run the lattice on the
        raw samples, e.g. when checking the recursion arithmetic on tiny
        hand-built inputs whose mean carries the signal.

    Raises
    ------
    ValueError
        "degenerate signal" when a lattice denominator vanishes
        (identically zero residuals).
    """
    samples = x.samples - x.samples.mean() if demean else x.samples
    coeffs_by_order, ks, errs = _burg_recursion(samples, p)
    model = ArModel(p, coeffs_by_order[-1], errs[p])
    return FitResult(model, METHOD_BURG, ks, errs)


def _mle_sigma2(coeffs: np.ndarray, pgram) -> float:
    """Innovation variance by spectral matching.

    sigma^2 = integral over [-1/2, 1/2] of |A(f)|^2 I(f) df, evaluated as
    twice the trapezoidal integral over [0, 1/2] (the integrand is even).
    """
    freqs = pgram.freqs_normalized
    amp2 = _transfer_mag2(coeffs, freqs)
    return float(2.0 * np.trapezoid(amp2 * pgram.values, freqs))


def mle_fit(x: TimeSeries, p: int, grid_size: int = 512) -> FitResult:
    """Approximate maximum-likelihood AR(p) fit.

    For a Gaussian AR process the likelihood equations for the
    coefficients reduce to the Yule-Walker normal equations, so the
    coefficient vector equals the :func:`yule_walker_fit` result exactly.
    The innovation variance is re-estimated by integrating the squared
    transfer function against the periodogram of the demeaned signal on
    a ``grid_size``-point frequency grid.

    Raises
    ------
    ValueError
        "grid too coarse for order" when ``grid_size < 2 p``.
    """
    if p < 1:
        raise ValueError("order must be at least 1")
    if grid_size < 2 * p:
        raise ValueError("grid too coarse for order")
    base = yule_walker_fit(x, p)
    centered = TimeSeries(x.samples - x.samples.mean(), x.sample_rate_hz)
    sigma2 = _mle_sigma2(base.model.coeffs, periodogram(centered, grid_size))
    model = ArModel(p, base.model.coeffs, sigma2)
    # The error profile documents the coefficient recursion; the spectral
    # variance estimate lives only in model.sigma2.
    return FitResult(model, METHOD_MLE, base.reflection_coeffs, base.prediction_error_by_order)


def reflection_coefficients(coeffs: np.ndarray) -> np.ndarray:
    """Reflection coefficients k(1..p) implied by AR coefficients.

    Runs the Levinson recursion backwards (step-down).  Raises
    ValueError("unstable AR polynomial") when any |k| >= 1, since the
    step-down division is then invalid and the model has a root on or
    outside the unit circle.
    """
    a = np.array(coeffs, dtype=np.float64, copy=True)
    p = a.size
    ks = np.empty(p)
    for m in range(p, 0, -1):
        k = a[m - 1]
        ks[m - 1] = k
        if abs(k) >= 1.0:
            raise ValueError("unstable AR polynomial")
        if m > 1:
            head = a[: m - 1]
            a = (head - k * head[::-1]) / (1.0 - k * k)
    return ks


def coefficients_from_reflection(ks) -> np.ndarray:
    """AR coefficients from reflection coefficients (step-up recursion)."""
    a = np.empty(0)
    for k in np.asarray(ks, dtype=np.float64):
        new = np.empty(a.size + 1)
        new[:-1] = a + k * a[::-1]
        new[-1] = k
        a = new
    return a


def is_stable(model: ArModel) -> bool:
    """True when every implied reflection coefficient has magnitude < 1."""
    if model.order_p == 0:
        return True
    try:
        reflection_coefficients(model.coeffs)
    except ValueError:
        return False
    return True


def _transfer_mag2(coeffs: np.ndarray, freqs: np.ndarray) -> np.ndarray:
    """|A(f)|^2 with A(f) = 1 + sum_i a(i) exp(-2j pi f i)."""
    p = coeffs.size
    if p == 0:
        return np.ones_like(freqs)
    phases = np.exp(-2j * np.pi * np.outer(freqs, np.arange(1, p + 1)))
    amp = 1.0 + phases @ coeffs
    return amp.real**2 + amp.imag**2


def ar_psd(model: ArModel, grid_size: int = 512, sample_rate_hz: float = 1.0) -> SpectrumEstimate:
    """Parametric power spectral density of an AR model.

        P(f) = sigma^2 / |A(f)|^2,  A(f) = 1 + sum_i a(i) exp(-2j pi f i)

    evaluated on ``grid_size`` equispaced normalized frequencies in
    [0, 0.5].

    Raises
    ------
    ValueError
        "unstable AR polynomial" when the model has a reflection
        coefficient of magnitude >= 1.  A model with sigma2 == 0 yields
        an all-zero spectrum.
    """
    if grid_size < 2:
        raise ValueError("grid_size must be at least 2")
    if model.order_p > 0:
        reflection_coefficients(model.coeffs)  # raises when unstable
    freqs = np.linspace(0.0, 0.5, grid_size)
    if model.sigma2 == 0.0:
        values = np.zeros(grid_size)
    else:
        values = model.sigma2 / _transfer_mag2(model.coeffs, freqs)
    return SpectrumEstimate(freqs, values, sample_rate_hz)
