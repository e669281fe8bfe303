"""Eventual phase comparison along the constraint curve (``u -> 0+``)."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .charge import Admissibility, CurveCharge, admissibility, curve_charge
from .exact import LaurentPoly, Rational, Sign, format_rational, laurent_sign_at_zero_plus
from .fourier_mukai import phi, shift
from .surface import ChernClass, SurfaceParams, twisted_ch1_pair


class InadmissibleChargeError(ValueError):
    """A class whose charge does not eventually lie in the upper half plane."""

    def __init__(self, message: str, argument: str | None = None):
        super().__init__(message)
        self.argument = argument


class Ordering(enum.Enum):
    PRECEDES = "Precedes"
    EVENTUALLY_EQUAL = "EventuallyEqual"
    SUCCEEDS = "Succeeds"

    def reversed(self) -> "Ordering":
        if self is Ordering.PRECEDES:
            return Ordering.SUCCEEDS
        if self is Ordering.SUCCEEDS:
            return Ordering.PRECEDES
        return self


@dataclass(frozen=True)
class PhaseVerdict:
    ordering: Ordering
    cross: LaurentPoly
    decisive: tuple[int, Rational] | None = None

    def to_json(self) -> dict:
        out = {"ordering": self.ordering.value, "cross": self.cross.to_json()}
        if self.decisive is not None:
            k, c = self.decisive
            out["witness"] = {"exponent": k, "coefficient": format_rational(c)}
        return out


def cross_term(z1: CurveCharge, z2: CurveCharge) -> LaurentPoly:
    """``Re Z1 Im Z2 - Im Z1 Re Z2 = Im(Z2 conj(Z1))``; positive iff ``phi1 < phi2``."""
    return z1.real_part * z2.imag_part - z1.imag_part * z2.real_part


def verdict_from_cross(cross: LaurentPoly) -> PhaseVerdict:
    sign = laurent_sign_at_zero_plus(cross)
    if sign is Sign.ZERO:
        return PhaseVerdict(Ordering.EVENTUALLY_EQUAL, cross)
    ordering = Ordering.PRECEDES if sign is Sign.POSITIVE else Ordering.SUCCEEDS
    return PhaseVerdict(ordering, cross, cross.lowest_term())


def _admissible_charge(x: ChernClass, p: SurfaceParams, argument: str) -> CurveCharge:
    cc = curve_charge(x, p)
    status = admissibility(cc)
    if status is Admissibility.ZERO:
        raise InadmissibleChargeError(f"{argument} class {x} has zero charge", argument)
    if status is Admissibility.INADMISSIBLE:
        raise InadmissibleChargeError(
            f"{argument} class {x} does not lie in the upper half plane for small u", argument
        )
    return cc


def compare_phases(x: ChernClass, y: ChernClass, p: SurfaceParams) -> PhaseVerdict:
    """Decide ``phi(x) < phi(y)``, ``==`` or ``>`` for all ``v >> 0`` on the curve.

    Both charges must eventually lie in the upper half plane. With phases in
    ``(0, 1]`` the difference lies in ``(-1, 1)``, so the sign of
    ``Im(Z_y conj Z_x) = |Z_x||Z_y| sin(pi (phi_y - phi_x))`` is the sign of
    ``phi_y - phi_x``.
    """
    zx = _admissible_charge(x, p, "left")
    zy = _admissible_charge(y, p, "right")
    return verdict_from_cross(cross_term(zx, zy))


class PhaseTag(enum.Enum):
    LIMIT_ZERO = "LimitZero"
    HALF = "Half"
    LIMIT_ONE = "LimitOne"


_TAG_VALUE = {
    PhaseTag.LIMIT_ZERO: Rational(0),
    PhaseTag.HALF: Rational(1, 2),
    PhaseTag.LIMIT_ONE: Rational(1),
}


@dataclass(frozen=True)
class LimitPhase:
    tag: PhaseTag
    attained: bool

    @property
    def value(self) -> Rational:
        return _TAG_VALUE[self.tag]

    def to_json(self) -> dict:
        return {"phase": format_rational(self.value), "attained": self.attained}


def classify_limit_phase(x: ChernClass, p: SurfaceParams) -> LimitPhase:
    """Limit of the phase as ``v -> infinity``, and whether it is attained
    identically for all small ``u``.

    On the curve ``Re Z = -s + (m + alpha - e) n`` is constant and
    ``Im Z = (m + alpha - e) d / u + (c + e d / 2) u``.
    """
    cc = _admissible_charge(x, p, "class")
    re0 = cc.real_part.coefficient(0)
    if x.d > 0:
        return LimitPhase(PhaseTag.HALF, attained=cc.real_part.is_zero())
    if cc.imag_part.is_zero():
        return LimitPhase(PhaseTag.LIMIT_ONE, attained=True)
    if re0 < 0:
        return LimitPhase(PhaseTag.LIMIT_ONE, attained=False)
    if re0 == 0:
        return LimitPhase(PhaseTag.HALF, attained=True)
    return LimitPhase(PhaseTag.LIMIT_ZERO, attained=False)


@dataclass(frozen=True)
class ScanEntry:
    candidate: ChernClass
    verdict: PhaseVerdict | None
    error: str | None = None

    @property
    def destabilizing(self) -> bool:
        return self.verdict is not None and self.verdict.ordering is not Ordering.PRECEDES

    def to_json(self) -> dict:
        out = {"candidate": self.candidate.to_json()}
        if self.verdict is None:
            out["error"] = self.error
        else:
            out["verdict"] = self.verdict.to_json()
            out["destabilizing"] = self.destabilizing
        return out


@dataclass(frozen=True)
class TheoremAReport:
    source: ChernClass
    shifted_transform: ChernClass
    twisted_degree: Rational
    real_part_negative: bool
    entries: tuple[ScanEntry, ...] = field(default_factory=tuple)

    @property
    def destabilizers(self) -> list[ChernClass]:
        return [e.candidate for e in self.entries if e.destabilizing]

    def to_json(self) -> dict:
        return {
            "class": self.source.to_json(),
            "shifted_transform": self.shifted_transform.to_json(),
            "twisted_degree": format_rational(self.twisted_degree),
            "real_part_negative": self.real_part_negative,
            "entries": [e.to_json() for e in self.entries],
            "destabilizers": [c.to_json() for c in self.destabilizers],
        }


def theorem_A_scan(x: ChernClass, candidates: Sequence[ChernClass], p: SurfaceParams) -> TheoremAReport:
    """Compare each candidate subobject class against ``F = Phi(E)[1]``.

    This is numerical evidence only: which candidates are realised by actual
    subobjects is the caller's claim. A candidate destabilizes when it does
    not strictly precede ``F``.
    """
    if x.n == 0:
        raise ValueError("theorem_A_scan expects a class of nonzero rank")
    big_f = shift(phi(x, p), 1)
    re_f = curve_charge(big_f, p).real_part
    entries = []
    for g in candidates:
        try:
            verdict = compare_phases(g, big_f, p)
        except InadmissibleChargeError as exc:
            entries.append(ScanEntry(g, None, str(exc)))
        else:
            entries.append(ScanEntry(g, verdict))
    return TheoremAReport(
        source=x,
        shifted_transform=big_f,
        twisted_degree=twisted_ch1_pair(x, p),
        real_part_negative=laurent_sign_at_zero_plus(re_f) is Sign.NEGATIVE,
        entries=tuple(entries),
    )
