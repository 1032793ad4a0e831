"""Arbitrary-precision real/complex arithmetic under an explicit digit budget.

Every other module computes through this layer.  A PrecisionContext owns a
private mpmath context sized to ceil(P*log2(10)) + 32 bits, so a context is
never mutated after construction and values from different budgets cannot be
mixed accidentally.  All operations are pure; contexts and ComplexAP values
are immutable and safe to share across threads.
"""

from __future__ import annotations

import math
import re as _re
from dataclasses import dataclass, field

import mpmath
from mpmath.ctx_mp import MPContext
from mpmath.libmp import to_str as _mpf_to_str

from .errors import (
    DivisionByZeroError,
    LogOfZeroError,
    NonFiniteValueError,
    ValidationError,
)

_LOG2_10 = math.log2(10)
_GUARD_BITS = 32

MIN_DIGITS = 15


@dataclass(frozen=True)
class PrecisionContext:
    """Decimal digit budget P plus optional extra guard digits.

    Primitives (add, mul, div, exp, ln away from branch cuts) are correct to
    within 10^(-digits) relative error; the 32 guard bits absorb rounding in
    long dot products.  Rounding is deterministic round-to-nearest-even.
    """

    digits: int
    guard_digits: int = 0
    _mp: MPContext = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.digits < MIN_DIGITS:
            raise ValidationError(f"digits must be >= {MIN_DIGITS}, got {self.digits}")
        if self.guard_digits < 0:
            raise ValidationError("guard_digits must be >= 0")
        mp = MPContext()
        mp.prec = math.ceil((self.digits + self.guard_digits) * _LOG2_10) + _GUARD_BITS
        object.__setattr__(self, "_mp", mp)

    @property
    def prec_bits(self) -> int:
        return self._mp.prec

    def real(self, x) -> "mpmath.mpf":
        """Convert int/float/str/mpf to this context's precision."""
        return self._mp.mpf(x)

    def with_digits(self, digits: int, guard_digits: int | None = None) -> "PrecisionContext":
        return PrecisionContext(digits, self.guard_digits if guard_digits is None else guard_digits)


@dataclass(frozen=True)
class ComplexAP:
    """Immutable arbitrary-precision complex value (re + im*i).

    Components are mpmath reals; NaN/infinite components are rejected at
    construction, so non-finite values cannot escape an operation.
    """

    re: object
    im: object

    def __post_init__(self):
        for part in (self.re, self.im):
            if mpmath.isnan(part) or mpmath.isinf(part):
                raise NonFiniteValueError(f"non-finite component in ComplexAP: {part}")

    def conjugate(self) -> "ComplexAP":
        return ComplexAP(self.re, -self.im)

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0


def make_complex(re, im, ctx: PrecisionContext) -> ComplexAP:
    return ComplexAP(ctx.real(re), ctx.real(im))


def _raw(z: ComplexAP, ctx: PrecisionContext):
    """Bridge a ComplexAP into the context's native complex type."""
    return ctx._mp.mpc(z.re, z.im)


def _wrap(v) -> ComplexAP:
    return ComplexAP(v.real, v.imag)


def add(a: ComplexAP, b: ComplexAP, ctx: PrecisionContext) -> ComplexAP:
    return _wrap(_raw(a, ctx) + _raw(b, ctx))


def sub(a: ComplexAP, b: ComplexAP, ctx: PrecisionContext) -> ComplexAP:
    return _wrap(_raw(a, ctx) - _raw(b, ctx))


def mul(a: ComplexAP, b: ComplexAP, ctx: PrecisionContext) -> ComplexAP:
    return _wrap(_raw(a, ctx) * _raw(b, ctx))


def div(a: ComplexAP, b: ComplexAP, ctx: PrecisionContext) -> ComplexAP:
    if b.is_zero:
        raise DivisionByZeroError("complex division by zero")
    return _wrap(_raw(a, ctx) / _raw(b, ctx))


def cexp(z: ComplexAP, ctx: PrecisionContext) -> ComplexAP:
    return _wrap(ctx._mp.exp(_raw(z, ctx)))


def cln(z: ComplexAP, ctx: PrecisionContext) -> ComplexAP:
    if z.is_zero:
        raise LogOfZeroError("complex logarithm of zero")
    return _wrap(ctx._mp.ln(_raw(z, ctx)))


def cabs(z: ComplexAP, ctx: PrecisionContext):
    return abs(_raw(z, ctx))


def carg(z: ComplexAP, ctx: PrecisionContext):
    if z.is_zero:
        raise LogOfZeroError("argument of zero is undefined")
    return ctx._mp.arg(_raw(z, ctx))


def power_term(n: int, s: ComplexAP, ctx: PrecisionContext) -> ComplexAP:
    """n^(-s) for a positive integer n, computed as exp(-s * ln n)."""
    if n < 1:
        raise ValidationError(f"power_term needs n >= 1, got {n}")
    mp = ctx._mp
    return _wrap(mp.exp(-mp.mpc(s.re, s.im) * mp.ln(mp.mpf(n))))


def _format_real(x, digits: int) -> str:
    return _mpf_to_str(x._mpf_, digits, strip_zeros=False)


def to_string(z: ComplexAP, ctx: PrecisionContext) -> str:
    """Serialize as "re+im i" / "re-im i" with exactly P significant digits."""
    digits = ctx.digits
    re_s = _format_real(ctx.real(z.re), digits)
    im_val = ctx.real(z.im)
    sign = "-" if im_val < 0 else "+"
    im_s = _format_real(abs(im_val), digits)
    return f"{re_s}{sign}{im_s}i"


# a decimal float literal: mantissa with optional exponent part
_REAL_PART = _re.compile(r"^[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?$")


def parse_complex(text: str, ctx: PrecisionContext) -> ComplexAP:
    """Parse the to_string grammar back into a ComplexAP."""
    s = text.strip().replace(" ", "")
    if not s.endswith("i"):
        raise ValidationError(f"complex literal must end in 'i': {text!r}")
    body = s[:-1]
    # split at the last +/- that is not an exponent sign and not leading
    split_at = -1
    for i in range(len(body) - 1, 0, -1):
        if body[i] in "+-" and body[i - 1] not in "eE":
            split_at = i
            break
    if split_at <= 0:
        raise ValidationError(f"cannot split complex literal {text!r}")
    re_s, im_s = body[:split_at], body[split_at:]
    if not _REAL_PART.match(re_s) or not _REAL_PART.match(im_s):
        raise ValidationError(f"malformed complex literal {text!r}")
    return make_complex(re_s, im_s, ctx)
