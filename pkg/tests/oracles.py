"""Independent test-side oracles.

The alternating-series zeta lives here (not in the library) so the library's
Euler-Maclaurin path is cross-checked against a genuinely different method:
Cohen-Rodriguez Villegas-Zagier acceleration of the eta series, with the depth
doubled until two successive depths agree to the target.
"""

from __future__ import annotations

import mpmath


def _cvz_eta(s, n: int, ref):
    """CVZ-accelerated eta(s) = sum (-1)^k (k+1)^(-s) with n terms."""
    d = (3 + 2 * ref.sqrt(2)) ** n
    d = (d + 1 / d) / 2
    b = ref.mpf(-1)
    c = -d
    acc = ref.mpc(0)
    for k in range(n):
        c = b - c
        acc += c * ref.power(k + 1, -s)
        b *= ref.mpf(2) * (k + n) * (k - n) / ((2 * k + 1) * (k + 1))
    return acc / d


def eta_zeta(s_re: str, s_im: str, digits: int):
    """zeta(s) = eta(s) / (1 - 2^(1-s)) via self-certified CVZ acceleration.

    Returns an mpc from a private high-precision mpmath clone.
    """
    ref = mpmath.mp.clone()
    ref.dps = digits + 15
    s = ref.mpc(s_re, s_im)
    tol = ref.mpf(10) ** (-digits)
    n = int(1.31 * digits) + 10
    prev = _cvz_eta(s, n, ref)
    for _ in range(8):
        n *= 2
        cur = _cvz_eta(s, n, ref)
        if abs(cur - prev) < tol * max(1, abs(cur)):
            eta = cur
            break
        prev = cur
    else:
        raise RuntimeError(f"CVZ eta failed to self-certify {digits} digits at s = {s}")
    return eta / (1 - ref.power(2, 1 - s))
