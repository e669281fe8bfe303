"""Reduced Chern-character lattice of a Weierstrass elliptic surface.

A class is stored through its pairings with the section ``Theta`` and the
fiber ``f``: ``(n, d, c, s) = (ch0, f.ch1, Theta.ch1, ch2)``. The B-field is
always ``(e/2) f``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from functools import cached_property
from typing import Mapping, Sequence, Union

from .exact import Rational, RationalLike, as_rational, format_rational

INF = math.inf
Slope = Union[Rational, float]  # float only ever carries +inf


class ParameterError(ValueError):
    """Surface/stability parameters violate their invariants."""


class ClassFormatError(ValueError):
    """A serialized Chern class or parameter set could not be decoded."""

    def __init__(self, message: str, field_errors: Mapping[str, str] | None = None):
        super().__init__(message)
        self.field_errors = dict(field_errors or {})


def _decode_fields(data, names: Sequence[str], what: str) -> dict:
    if not isinstance(data, Mapping):
        raise ClassFormatError(f"{what} must be a JSON object", {"<root>": "expected object"})
    errors = {}
    values = {}
    for name in names:
        if name not in data:
            errors[name] = "missing"
            continue
        raw = data[name]
        if isinstance(raw, float):
            errors[name] = "floats are not exact; pass a string such as \"3/2\""
            continue
        try:
            values[name] = as_rational(raw)
        except (TypeError, ValueError) as exc:
            errors[name] = str(exc)
    extra = sorted(set(data) - set(names))
    for name in extra:
        errors[name] = "unknown field"
    if errors:
        raise ClassFormatError(f"malformed {what}", errors)
    return values


@dataclass(frozen=True)
class SurfaceParams:
    """``e = -Theta^2``, ample class ``Theta + m f``, curve parameter ``alpha``
    and the scale ``lam`` of the twisted polarisation."""

    e: Rational
    m: Rational
    alpha: Rational
    lam: Rational

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, as_rational(getattr(self, f.name)))
        problems = []
        if self.m <= 0:
            problems.append(f"m must be > 0 (got {self.m})")
        if self.alpha <= 0:
            problems.append(f"alpha must be > 0 (got {self.alpha})")
        if self.lam <= 0:
            problems.append(f"lambda must be > 0 (got {self.lam})")
        if self.m + self.alpha - self.e <= 0:
            problems.append(
                f"m + alpha - e must be > 0 (got {self.m + self.alpha - self.e}); "
                "otherwise the curve never reaches v -> infinity with u > 0"
            )
        if problems:
            raise ParameterError("; ".join(problems))

    @property
    def curve_constant(self) -> Rational:
        """``m + alpha - e``, the value of ``(m - e/2) u^2 + u v`` on the curve."""
        return self.m + self.alpha - self.e

    @cached_property
    def half_e(self) -> Rational:
        return self.e / 2

    @cached_property
    def a(self) -> Rational:
        return self.lam / self.alpha

    @property
    def b(self) -> Rational:
        return self.lam

    def to_json(self) -> dict:
        return {
            "e": format_rational(self.e),
            "m": format_rational(self.m),
            "alpha": format_rational(self.alpha),
            "lambda": format_rational(self.lam),
        }

    @classmethod
    def from_json(cls, data) -> "SurfaceParams":
        v = _decode_fields(data, ("e", "m", "alpha", "lambda"), "surface parameters")
        return cls(v["e"], v["m"], v["alpha"], v["lambda"])


@dataclass(frozen=True)
class ChernClass:
    n: Rational
    d: Rational
    c: Rational
    s: Rational

    def __post_init__(self):
        for name in ("n", "d", "c", "s"):
            value = getattr(self, name)
            if type(value) is not Rational:
                object.__setattr__(self, name, as_rational(value))

    @classmethod
    def of(cls, n: RationalLike = 0, d: RationalLike = 0, c: RationalLike = 0, s: RationalLike = 0) -> "ChernClass":
        return cls(n, d, c, s)

    @classmethod
    def zero(cls) -> "ChernClass":
        return cls(0, 0, 0, 0)

    def is_zero(self) -> bool:
        return not (self.n or self.d or self.c or self.s)

    def as_tuple(self) -> tuple[Rational, Rational, Rational, Rational]:
        return (self.n, self.d, self.c, self.s)

    def __add__(self, other: "ChernClass") -> "ChernClass":
        return ChernClass(self.n + other.n, self.d + other.d, self.c + other.c, self.s + other.s)

    def __sub__(self, other: "ChernClass") -> "ChernClass":
        return ChernClass(self.n - other.n, self.d - other.d, self.c - other.c, self.s - other.s)

    def __neg__(self) -> "ChernClass":
        return ChernClass(-self.n, -self.d, -self.c, -self.s)

    def __mul__(self, k: RationalLike) -> "ChernClass":
        k = as_rational(k)
        return ChernClass(k * self.n, k * self.d, k * self.c, k * self.s)

    __rmul__ = __mul__

    def half_integral_ch2(self) -> bool:
        return (2 * self.s).denominator == 1

    def to_json(self) -> dict:
        return {k: format_rational(v) for k, v in zip("ndcs", self.as_tuple())}

    @classmethod
    def from_json(cls, data) -> "ChernClass":
        v = _decode_fields(data, ("n", "d", "c", "s"), "Chern class")
        return cls(v["n"], v["d"], v["c"], v["s"])

    def __str__(self) -> str:
        return "(" + ", ".join(format_rational(v) for v in self.as_tuple()) + ")"


def format_slope(mu: Slope) -> str:
    return "+inf" if mu == INF else format_rational(mu)


def twisted_ch1_pair(x: ChernClass, p: SurfaceParams) -> Rational:
    """Twisted degree ``omega_bar . ch1^B`` for ``omega_bar = (lam/alpha)(Theta + m f) + lam f``."""
    return p.a * ((x.c - p.e / 2 * x.n) + (p.m + p.alpha) * x.d)


def mu_f(x: ChernClass) -> Slope:
    return x.d / x.n if x.n else INF


def mu_theta_mf(x: ChernClass, p: SurfaceParams) -> Slope:
    return (x.c + p.m * x.d) / x.n if x.n else INF


def twisted_slope(x: ChernClass, p: SurfaceParams) -> Slope:
    if not x.n:
        return INF
    a, b = p.a, p.b
    return (a * (x.c - p.e / 2 * x.n) + (a * p.m + b) * x.d) / x.n


# ---------------------------------------------------------------------------
# numerical membership conditions on caller-supplied HN factors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HNProfile:
    """Classes of claimed mu_f-HN factors, ordered by decreasing slope."""

    factors: tuple[ChernClass, ...]

    def __init__(self, factors: Sequence[ChernClass], total: ChernClass | None = None):
        factors = tuple(factors)
        if not factors:
            raise ValueError("an HN profile needs at least one factor")
        if total is not None:
            acc = ChernClass.zero()
            for fct in factors:
                acc = acc + fct
            if acc != total:
                raise ValueError(f"factors sum to {acc}, expected total {total}")
        object.__setattr__(self, "factors", factors)

    @property
    def total(self) -> ChernClass:
        acc = ChernClass.zero()
        for fct in self.factors:
            acc = acc + fct
        return acc


@dataclass(frozen=True)
class Membership:
    satisfied: bool
    index: int | None = None

    def to_json(self) -> dict:
        if self.satisfied:
            return {"status": "Satisfied"}
        return {"status": "Violated", "index": self.index}


def _fl_ok(x: ChernClass, p: SurfaceParams) -> bool:
    muf = mu_f(x)
    return muf < 0 or (muf == 0 and mu_theta_mf(x, p) <= 0)


def _tl_ok(x: ChernClass, p: SurfaceParams) -> bool:
    muf = mu_f(x)
    return muf > 0 or (muf == 0 and mu_theta_mf(x, p) > 0)


def check_Fl_conditions(profile: HNProfile, p: SurfaceParams) -> Membership:
    """Subsheaf-side test: every factor has ``mu_f < 0``, or ``mu_f = 0`` and
    ``mu_{Theta+mf} <= 0``. A necessary numerical condition only."""
    for i, fct in enumerate(profile.factors):
        if not _fl_ok(fct, p):
            return Membership(False, i)
    return Membership(True)


def check_Tl_conditions(profile: HNProfile, p: SurfaceParams) -> Membership:
    """Quotient-side test: every factor has ``mu_f > 0``, or ``mu_f = 0`` and
    ``mu_{Theta+mf} > 0``."""
    for i, fct in enumerate(profile.factors):
        if not _tl_ok(fct, p):
            return Membership(False, i)
    return Membership(True)
