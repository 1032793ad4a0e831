"""Partial-sum trajectories of the functional-equation combination.

The raw series sum_n {n^(-s) - chi(s) n^(s-1)} spirals outward in the complex
plane; applying the generalized sigmoid weights turns it into a spiral that
winds back down to the origin.  The modulus of the weighted trace's final
point is the functional-equation residual.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PoleError, ValidationError
from .oracle import chi
from .precision import ComplexAP, PrecisionContext, _raw, _wrap
from .series import _require_off_axis, _require_scale

DISPLAY_DIGITS = 20


@dataclass(frozen=True)
class SpiralTrace:
    """Ordered partial sums; points[k] - points[k-1] is exactly the k-th term."""

    s: ComplexAP
    weighted: bool
    points: tuple[ComplexAP, ...]
    b_used: float | None = None


def _term_factory(s: ComplexAP, ctx: PrecisionContext):
    if s.im == 0 and s.re == 1:
        raise PoleError("trace undefined at s = 1")
    _require_off_axis(s)
    mp = ctx._mp
    sw = _raw(s, ctx)
    chi_s = _raw(chi(s, ctx), ctx)

    def term(n: int):
        ln_n = mp.ln(mp.mpf(n))
        return mp.exp(-sw * ln_n) - chi_s * mp.exp((sw - 1) * ln_n)

    return term


def raw_partial_sums(s: ComplexAP, n_terms: int, ctx: PrecisionContext) -> SpiralTrace:
    """Partial sums of the unweighted (divergent) combination."""
    if n_terms < 1:
        raise ValidationError(f"n_terms must be >= 1, got {n_terms}")
    term = _term_factory(s, ctx)
    acc = ctx._mp.mpc(0)
    points = []
    for n in range(1, n_terms + 1):
        acc += term(n)
        points.append(_wrap(acc))
    return SpiralTrace(s=s, weighted=False, points=tuple(points))


def weighted_partial_sums(s: ComplexAP, b: float, n_terms: int, ctx: PrecisionContext) -> SpiralTrace:
    """Partial sums with each term damped by the generalized coefficient."""
    if n_terms < 1:
        raise ValidationError(f"n_terms must be >= 1, got {n_terms}")
    _require_scale(b)
    term = _term_factory(s, ctx)
    mp = ctx._mp
    center = abs(mp.mpf(s.im)) / mp.pi
    scale = mp.mpf(b)
    acc = mp.mpc(0)
    points = []
    for n in range(1, n_terms + 1):
        weight = 1 / (1 + mp.exp((n - center) / scale))
        acc += weight * term(n)
        points.append(_wrap(acc))
    return SpiralTrace(s=s, weighted=True, points=tuple(points), b_used=b)


def functional_residual(s: ComplexAP, b: float, n_terms: int, ctx: PrecisionContext) -> float:
    """|sum w_n n^(-s) - chi(s) sum w_n n^(s-1)| = |final weighted point|."""
    trace = weighted_partial_sums(s, b, n_terms, ctx)
    last = trace.points[-1]
    return float(abs(ctx._mp.mpc(last.re, last.im)))
