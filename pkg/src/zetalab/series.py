"""Generalized sigmoid coefficients turning the divergent series convergent.

For s = sigma + it off the real axis, the weight of the n-th term is
1/(1 + exp((n - t/pi)/B)): close to 1 deep in the head, decaying past the
t/pi center so the weighted Dirichlet sum converges.  The scale B has no
closed form; calibrate_b recovers it per s by minimizing the absolute error
against the zeta oracle with a coarse log scan plus golden-section
refinement.  Sweeps over t and sigma feed the power-law and exponential
fits of the scaling study.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    DegenerateFitError,
    NoInteriorMinimumError,
    NonPositiveScaleError,
    NonPositiveValueError,
    NumericalError,
    RealAxisError,
    ValidationError,
)
from .oracle import zeta
from .precision import ComplexAP, PrecisionContext, _raw, _wrap

DEFAULT_BRACKET = (0.1, 100.0)
CALIBRATION_DIGITS = 30
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def _require_off_axis(s: ComplexAP):
    if s.im == 0:
        raise RealAxisError("generalized coefficients are undefined for Im s = 0")


def _require_scale(b: float):
    if not b > 0:
        raise NonPositiveScaleError(f"scale must be > 0, got {b}")


def generalized_delta(n: int, s: ComplexAP, b: float, ctx: PrecisionContext | None = None):
    """Weight 1/(1 + exp((n - t/pi)/b)) as an arbitrary-precision real."""
    if n < 1:
        raise ValidationError(f"term index must be >= 1, got {n}")
    _require_off_axis(s)
    _require_scale(b)
    if ctx is None:
        ctx = PrecisionContext(CALIBRATION_DIGITS)
    mp = ctx._mp
    center = abs(mp.mpf(s.im)) / mp.pi  # even in t: conjugates share weights
    x = (n - center) / mp.mpf(b)
    return 1 / (1 + mp.exp(x))


def truncation_length(s: ComplexAP, b: float, tail_eps: float) -> int:
    """Smallest N with weight(N) * N^(-sigma) < tail_eps, floored at ceil(t/pi)+1.

    The scan runs in log-domain double precision: the tail test only gates
    truncation noise, which sits far below the measured error.
    """
    _require_off_axis(s)
    _require_scale(b)
    if not tail_eps > 0:
        raise ValidationError("tail_eps must be > 0")
    sigma = float(s.re)
    center = abs(float(s.im)) / math.pi
    floor_n = max(math.ceil(center) + 1, 1)
    log_eps = math.log(tail_eps)

    def below(n: int) -> bool:
        x = (n - center) / b
        if x > 0:
            log_w = -x - math.log1p(math.exp(-x)) if x < 700 else -x
        else:
            log_w = -math.log1p(math.exp(x))
        return log_w - sigma * math.log(n) < log_eps

    n = floor_n
    while not below(n):
        n += 1
        if n > floor_n + 100_000_000:
            raise ValidationError("truncation scan exceeded 1e8 terms; check b/tail_eps")
    return n


def weighted_zeta(s: ComplexAP, b: float, n_terms: int, ctx: PrecisionContext) -> ComplexAP:
    """sum_{n=1}^{N} weight(n) * n^(-s), summed in increasing n."""
    if n_terms < 1:
        raise ValidationError(f"n_terms must be >= 1, got {n_terms}")
    _require_off_axis(s)
    _require_scale(b)
    mp = ctx._mp
    sw = _raw(s, ctx)
    center = abs(mp.mpf(s.im)) / mp.pi
    scale = mp.mpf(b)
    total = mp.mpc(0)
    for n in range(1, n_terms + 1):
        weight = 1 / (1 + mp.exp((n - center) / scale))
        total += weight * mp.exp(-sw * mp.ln(mp.mpf(n)))
    return _wrap(total)


@dataclass(frozen=True)
class BCalibration:
    """Optimal scale for one s: minimizer, achieved error, and search trace."""

    s: ComplexAP
    b_hat: float
    err_at_opt: float
    digits_gained: float
    trace: tuple[tuple[float, float], ...]
    terms: int


def calibrate_b(
    s: ComplexAP,
    ctx: PrecisionContext | None = None,
    bracket: tuple[float, float] = DEFAULT_BRACKET,
    coarse_samples: int = 64,
    rel_tol: float = 1e-6,
    tail_eps: float | None = None,
) -> BCalibration:
    """Minimize |zeta(s) - weighted sum| over the scale inside the bracket.

    A coarse logarithmic scan (>= 64 samples) locates the valley; the best
    neighborhood is refined by golden section until the interval is below
    rel_tol relative width.  A minimum on a bracket endpoint raises
    NoInteriorMinimumError: widen the bracket.
    """
    _require_off_axis(s)
    if ctx is None:
        ctx = PrecisionContext(CALIBRATION_DIGITS)
    lo, hi = bracket
    if not (0 < lo < hi):
        raise ValidationError(f"bracket must satisfy 0 < lo < hi, got {bracket}")
    if coarse_samples < 8:
        raise ValidationError("coarse_samples must be >= 8")
    eps = 10.0 ** (-ctx.digits) if tail_eps is None else tail_eps

    reference = _raw(zeta(s, ctx).value, ctx)
    trace: list[tuple[float, float]] = []

    def err(b: float) -> float:
        n = truncation_length(s, b, eps)
        approx = _raw(weighted_zeta(s, b, n, ctx), ctx)
        value = float(abs(reference - approx))
        trace.append((b, value))
        return value

    ratio = hi / lo
    coarse = [lo * ratio ** (j / (coarse_samples - 1)) for j in range(coarse_samples)]
    errors = [err(b) for b in coarse]
    best = min(range(coarse_samples), key=lambda j: errors[j])
    if best == 0 or best == coarse_samples - 1:
        raise NoInteriorMinimumError(
            f"error is monotone across the bracket {bracket}; minimum at endpoint B={coarse[best]:.4g}"
        )

    a, c = coarse[best - 1], coarse[best + 1]
    x1 = c - (c - a) * _INV_PHI
    x2 = a + (c - a) * _INV_PHI
    f1, f2 = err(x1), err(x2)
    while (c - a) > rel_tol * max(x2, 1e-300):
        if f1 < f2:
            c, x2, f2 = x2, x1, f1
            x1 = c - (c - a) * _INV_PHI
            f1 = err(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + (c - a) * _INV_PHI
            f2 = err(x2)

    b_hat, err_opt = min(trace, key=lambda item: item[1])
    terms = truncation_length(s, b_hat, eps)
    digits = -math.log10(err_opt) if err_opt > 0 else float(ctx.digits)
    return BCalibration(
        s=s,
        b_hat=b_hat,
        err_at_opt=err_opt,
        digits_gained=digits,
        trace=tuple(trace),
        terms=terms,
    )


@dataclass(frozen=True)
class AccuracyPoint:
    """One sweep entry: the calibration, or the failure that marked it."""

    t: float
    calibration: BCalibration | None
    error: str | None = None

    @property
    def failed(self) -> bool:
        return self.calibration is None


def accuracy_profile(
    sigma: float,
    t_values: list[float],
    ctx: PrecisionContext | None = None,
    bracket: tuple[float, float] = DEFAULT_BRACKET,
) -> list[AccuracyPoint]:
    """Calibrate sigma + i*t for each t; failures mark points, not the sweep."""
    if any(t <= 0 for t in t_values):
        raise ValidationError("t values must be positive")
    if list(t_values) != sorted(t_values):
        raise ValidationError("t values must be increasing")
    if ctx is None:
        ctx = PrecisionContext(CALIBRATION_DIGITS)
    points = []
    for t in t_values:
        s = ComplexAP(ctx.real(sigma), ctx.real(t))
        try:
            points.append(AccuracyPoint(t=t, calibration=calibrate_b(s, ctx, bracket)))
        except NumericalError as exc:
            points.append(AccuracyPoint(t=t, calibration=None, error=str(exc)))
    return points


@dataclass(frozen=True)
class ScalingFit:
    """Power law b_hat(t) = C * t^D fitted in log-log coordinates."""

    c_coef: float
    d_exp: float
    r_squared: float
    samples: tuple[tuple[float, float], ...]
    sigma: float | None = None


def _ols(xs: list[float], ys: list[float]) -> tuple[float, float, float]:
    """Least squares y = p + q*x; returns (p, q, r_squared)."""
    n = len(xs)
    mean_x = sum(xs) / n
    mean_y = sum(ys) / n
    sxx = sum((x - mean_x) ** 2 for x in xs)
    if sxx == 0:
        raise DegenerateFitError("no spread in the fit abscissa")
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    q = sxy / sxx
    p = mean_y - q * mean_x
    ss_res = sum((y - (p + q * x)) ** 2 for x, y in zip(xs, ys))
    ss_tot = sum((y - mean_y) ** 2 for y in ys)
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return p, q, r2


def fit_power_law(samples: list[tuple[float, float]], sigma: float | None = None) -> ScalingFit:
    """OLS on (ln t, ln b_hat); needs >= 2 distinct positive samples."""
    if len(samples) < 2:
        raise ValidationError("power-law fit needs at least 2 samples")
    for t, b in samples:
        if t <= 0 or b <= 0:
            raise NonPositiveValueError((t, b))
    xs = [math.log(t) for t, _ in samples]
    ys = [math.log(b) for _, b in samples]
    p, q, r2 = _ols(xs, ys)
    return ScalingFit(
        c_coef=math.exp(p),
        d_exp=q,
        r_squared=r2,
        samples=tuple((float(t), float(b)) for t, b in samples),
        sigma=sigma,
    )


@dataclass(frozen=True)
class ExponentialFit:
    """ln v = p + q*sigma; sign of q is reported, not assumed."""

    p: float
    q: float
    r_squared: float

    @property
    def coefficients(self) -> tuple[float, float]:
        return (self.p, self.q)


def fit_sigma_dependence(samples: list[tuple[float, float]]) -> ExponentialFit:
    """Least squares of ln(value) against sigma over >= 3 samples."""
    if len(samples) < 3:
        raise ValidationError("sigma-dependence fit needs at least 3 samples")
    for sigma, value in samples:
        if value <= 0:
            raise NonPositiveValueError((sigma, value))
    xs = [float(sig) for sig, _ in samples]
    ys = [math.log(v) for _, v in samples]
    p, q, r2 = _ols(xs, ys)
    return ExponentialFit(p=p, q=q, r_squared=r2)
