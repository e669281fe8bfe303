"""Independent cross-check oracles.

These deliberately take a different route from the exact core: dense
sampling for root counts, and floating-point ``atan2`` phases computed
straight from ``Z = -ch2 + (omega^2/2) ch0 + i omega.ch1`` at a given ``v``.
Floats live here and nowhere else.
"""

from __future__ import annotations

import math

from .exact import LaurentPoly, Rational
from .surface import ChernClass, SurfaceParams

EPS = 2.0**-52


def sign_changes_on_grid(p: LaurentPoly, lo: Rational, hi: Rational, points: int = 10_000) -> int:
    """Count sign changes of ``p`` over ``points`` equally spaced interior grid
    points of ``(lo, hi)``, skipping exact zeros. Evaluation is exact.

    Roots closer together than the grid spacing are invisible, and even
    multiplicity roots never produce a change.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no sign pattern")
    coeffs = p.cleared().to_coefficients()
    deg = len(coeffs) - 1
    # u_i = lo + i*(hi-lo)/(points+1); clear the common denominator so each
    # sample is an integer with the sign of p(u_i)
    span = hi - lo
    # plain ints: small Python ints beat mpz in this tight loop
    lo_n, lo_d, sp_n, sp_d = (int(v) for v in (lo.numerator, lo.denominator, span.numerator, span.denominator))
    den = (points + 1) * lo_d * sp_d
    a = lo_n * (points + 1) * sp_d
    step = sp_n * lo_d
    common = 1
    for c in coeffs:
        common = common * int(c.denominator) // math.gcd(common, int(c.denominator))
    scaled = [int(c * common) * den ** (deg - k) for k, c in enumerate(coeffs)]
    changes = 0
    last = 0
    for i in range(1, points + 1):
        x = a + i * step
        acc = 0
        for k in range(deg, -1, -1):
            acc = acc * x + scaled[k]
        s = (acc > 0) - (acc < 0)
        if s:
            if last and s != last:
                changes += 1
            last = s
    return changes


def u_on_curve(v: float, p: SurfaceParams) -> float:
    """Positive ``u`` with ``(m - e/2) u^2 + u v = m + alpha - e`` (cancellation-free root form)."""
    q = float(p.m - p.e / 2)
    K = float(p.curve_constant)
    return 2.0 * K / (v + math.sqrt(v * v + 4.0 * q * K))


def float_charge(x: ChernClass, p: SurfaceParams, v: float) -> tuple[float, float, float, float]:
    """``(Re Z, Im Z, bound on |error Re|, bound on |error Im|)`` at the curve point ``v``."""
    u = u_on_curve(v, p)
    m, e = float(p.m), float(p.e)
    n, d, c, s = (float(t) for t in x.as_tuple())
    q = m - e / 2
    re = -s + (q * u * u + u * v) * n
    im = u * (c + m * d) + v * d
    re_mag = abs(s) + (abs(q) * u * u + u * v) * abs(n)
    im_mag = u * (abs(c) + abs(m * d)) + v * abs(d)
    return re, im, 16 * EPS * re_mag, 16 * EPS * im_mag


def float_phase(x: ChernClass, p: SurfaceParams, v: float) -> float:
    """Phase of ``Z`` in units of ``pi`` at the curve point with the given ``v``."""
    re, im, _, _ = float_charge(x, p, v)
    return math.atan2(im, re) / math.pi


def float_compare(x: ChernClass, y: ChernClass, p: SurfaceParams, v: float) -> str | None:
    """Compare phases at a single ``v`` in double precision.

    The phase gap is taken as ``atan2(Im(Z_y conj Z_x), Re(Z_y conj Z_x))``,
    which stays accurate when the two phases are both close to the same
    limit. Returns ``"Precedes"`` or ``"Succeeds"`` when the sign of the gap
    clears a forward rounding-error bound, ``None`` otherwise (aligned
    charges, or a gap too small to resolve at this ``v``).
    """
    r1, i1, dr1, di1 = float_charge(x, p, v)
    r2, i2, dr2, di2 = float_charge(y, p, v)
    cross = r1 * i2 - i1 * r2
    dot = r1 * r2 + i1 * i2
    err = (
        abs(r1) * di2 + dr1 * abs(i2) + dr1 * di2
        + abs(i1) * dr2 + di1 * abs(r2) + di1 * dr2
        + 4 * EPS * (abs(r1 * i2) + abs(i1 * r2))
    )
    if abs(cross) <= err:
        return None
    gap = math.atan2(cross, dot) / math.pi
    return "Precedes" if gap > 0 else "Succeeds"
