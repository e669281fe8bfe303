"""Central charge ``Z_omega`` for ``omega = u(Theta + m f) + v f``.

``Z(F) = -ch2 + (omega^2/2) ch0 + i omega.ch1`` is kept as a pair of exact
polynomials in ``(u, v)``. Along the hyperbola
``(m - e/2) u^2 + u v + e = m + alpha`` we solve for ``v`` exactly,

    v(u) = (m + alpha - e)/u - (m - e/2) u,

so ``v -> infinity`` is the same limit as ``u -> 0+`` and every charge on the
curve is a finite Laurent polynomial in ``u``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .exact import BiPoly, LaurentPoly, Rational, RationalLike, Sign, as_rational, laurent_sign_at_zero_plus
from .fourier_mukai import phi, shift
from .surface import ChernClass, ParameterError, SurfaceParams, twisted_ch1_pair


@dataclass(frozen=True)
class ChargeExpr:
    real_part: BiPoly
    imag_part: BiPoly

    def evaluate(self, u0: RationalLike, v0: RationalLike) -> tuple[Rational, Rational]:
        return self.real_part.evaluate(u0, v0), self.imag_part.evaluate(u0, v0)

    def to_json(self) -> dict:
        return {"real": self.real_part.to_json(), "imag": self.imag_part.to_json()}


@dataclass(frozen=True)
class CurveCharge:
    real_part: LaurentPoly
    imag_part: LaurentPoly
    params: SurfaceParams

    def __post_init__(self):
        for part in (self.real_part, self.imag_part):
            if part and not (-1 <= part.lowest_exponent() and part.highest_exponent() <= 3):
                raise AssertionError(f"curve charge exponent out of range: {part}")

    def is_zero(self) -> bool:
        return self.real_part.is_zero() and self.imag_part.is_zero()

    def at(self, u0: RationalLike) -> tuple[Rational, Rational]:
        return self.real_part(u0), self.imag_part(u0)

    def to_json(self) -> dict:
        return {"real": self.real_part.to_json(), "imag": self.imag_part.to_json()}


def curve_v(p: SurfaceParams) -> LaurentPoly:
    """``v`` as a Laurent polynomial in ``u`` on the constraint curve."""
    if p.curve_constant <= 0:
        raise ParameterError("m + alpha - e must be positive for the curve to reach v -> infinity")
    return LaurentPoly({-1: p.curve_constant, 1: -(p.m - p.e / 2)})


def build_charge(x: ChernClass, p: SurfaceParams) -> ChargeExpr:
    m, e = p.m, p.e
    real = BiPoly({(0, 0): -x.s, (2, 0): (m - e / 2) * x.n, (1, 1): x.n})
    imag = BiPoly({(1, 0): x.c + m * x.d, (0, 1): x.d})
    return ChargeExpr(real, imag)


def substitute_curve(z: ChargeExpr, p: SurfaceParams) -> CurveCharge:
    v = curve_v(p)
    return CurveCharge(z.real_part.substitute_v(v), z.imag_part.substitute_v(v), p)


def curve_charge(x: ChernClass, p: SurfaceParams) -> CurveCharge:
    return substitute_curve(build_charge(x, p), p)


def twist_identity_residual(x: ChernClass, p: SurfaceParams) -> LaurentPoly:
    """``omega_bar.ch1^B(E) + (lam/alpha) Re Z(Phi(E)[1])`` along the curve.

    Identically zero for every class and admissible parameter set.
    """
    shifted = shift(phi(x, p), 1)
    re = curve_charge(shifted, p).real_part
    return re * p.a + twisted_ch1_pair(x, p)


class Admissibility(enum.Enum):
    IN_UPPER_HALF_PLANE = "InUpperHalfPlane"
    ZERO = "Zero"
    INADMISSIBLE = "Inadmissible"


def admissibility(cc: CurveCharge) -> Admissibility:
    """Whether ``Z`` lies in ``{r e^{i pi phi}: r > 0, 0 < phi <= 1}`` for all small ``u > 0``."""
    im = laurent_sign_at_zero_plus(cc.imag_part)
    if im is Sign.POSITIVE:
        return Admissibility.IN_UPPER_HALF_PLANE
    if im is Sign.NEGATIVE:
        return Admissibility.INADMISSIBLE
    re = laurent_sign_at_zero_plus(cc.real_part)
    if re is Sign.NEGATIVE:
        return Admissibility.IN_UPPER_HALF_PLANE
    if re is Sign.ZERO:
        return Admissibility.ZERO
    return Admissibility.INADMISSIBLE


def evaluate_on_curve(x: ChernClass, p: SurfaceParams, u0: RationalLike) -> dict:
    u0 = as_rational(u0)
    if u0 <= 0:
        raise ParameterError("u must be positive on the curve")
    v0 = curve_v(p)(u0)
    re, im = build_charge(x, p).evaluate(u0, v0)
    return {"u": u0, "v": v0, "real": re, "imag": im}
