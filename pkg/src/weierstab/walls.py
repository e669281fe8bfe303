"""Mini-walls: values of ``u`` on the curve where two charges align.

A wall is a root of the cross term ``Re Z1 Im Z2 - Im Z1 Re Z2`` in
``(0, u_max)``. Roots are isolated exactly with Sturm sequences after
square-free decomposition, so tangential walls carry their multiplicity.
"""

from __future__ import annotations

import itertools
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .charge import Admissibility, admissibility, curve_charge
from .exact import (
    DEFAULT_ISOLATION_WIDTH,
    LaurentPoly,
    Rational,
    RationalLike,
    RootInterval,
    as_rational,
    dominance_bound,
    format_rational,
    sign_of,
    sturm_isolate_roots,
)
from .phase import Ordering, PhaseVerdict, cross_term, verdict_from_cross
from .surface import ChernClass, ParameterError, SurfaceParams

DEFAULT_CANDIDATE_CAP = 10**6


class CandidateCapError(ValueError):
    def __init__(self, cap: int, requested: int):
        super().__init__(f"candidate box holds {requested} classes, above the cap of {cap}")
        self.cap = cap
        self.requested = requested


@dataclass(frozen=True)
class Wall:
    u_lo: Rational
    u_hi: Rational
    v_lo: Rational
    v_hi: Rational
    multiplicity: int

    def to_json(self) -> dict:
        return {
            "u": [format_rational(self.u_lo), format_rational(self.u_hi)],
            "v": [format_rational(self.v_lo), format_rational(self.v_hi)],
            "multiplicity": self.multiplicity,
        }


@dataclass(frozen=True)
class WallReport:
    pair: tuple[ChernClass, ChernClass]
    walls: tuple[Wall, ...]
    eventual: PhaseVerdict | None
    cross: LaurentPoly
    flags: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "pair": [self.pair[0].to_json(), self.pair[1].to_json()],
            "cross": self.cross.to_json(),
            "walls": [w.to_json() for w in self.walls],
            "eventual": None if self.eventual is None else self.eventual.to_json(),
            "flags": list(self.flags),
        }


def _v_interval(p: SurfaceParams, poly: LaurentPoly, u_lo: Rational, u_hi: Rational) -> tuple[Rational, Rational, Rational, Rational]:
    """Exact image of ``[u_lo, u_hi]`` under ``v(u)``.

    ``v`` is convex on ``u > 0``; when ``e > 2m`` it has a minimum at
    ``u_c^2 = K / (e/2 - m)``. An interval straddling ``u_c`` is narrowed
    around the root until it sits on one side.
    """
    K = p.curve_constant
    slope2 = p.e / 2 - p.m  # v'(u) = -K/u^2 + slope2

    def v(u: Rational) -> Rational:
        return K / u - (p.m - p.e / 2) * u

    if slope2 > 0:
        crit2 = K / slope2
        for _ in range(64):
            if u_hi * u_hi <= crit2 or u_lo * u_lo >= crit2:
                break
            mid = (u_lo + u_hi) / 2
            if mid * mid == crit2 and poly(mid) == 0:
                # root exactly at the critical point: v attains its minimum there
                return u_lo, u_hi, v(mid), max(v(u_lo), v(u_hi))
            s_lo, s_mid = sign_of(poly(u_lo)), sign_of(poly(mid))
            if s_mid == 0:
                u_lo = u_hi = mid
                break
            if s_lo != s_mid:
                u_hi = mid
            else:
                u_lo = mid
        else:
            # root numerically at the irrational critical point: enclose instead
            return u_lo, u_hi, K / u_hi + slope2 * u_lo, max(v(u_lo), v(u_hi))
    a, b = v(u_lo), v(u_hi)
    return u_lo, u_hi, min(a, b), max(a, b)


def find_walls(
    x: ChernClass,
    y: ChernClass,
    p: SurfaceParams,
    u_max: RationalLike = 1,
    tol: RationalLike = DEFAULT_ISOLATION_WIDTH,
) -> WallReport:
    u_max = as_rational(u_max)
    if u_max <= 0:
        raise ParameterError(f"u_max must be positive (got {u_max})")
    if x.is_zero() or y.is_zero():
        raise ValueError("find_walls needs two nonzero classes")
    zx, zy = curve_charge(x, p), curve_charge(y, p)
    cross = cross_term(zx, zy)
    flags = []
    if admissibility(zx) is not Admissibility.IN_UPPER_HALF_PLANE:
        flags.append("left-inadmissible")
    if admissibility(zy) is not Admissibility.IN_UPPER_HALF_PLANE:
        flags.append("right-inadmissible")
    admissible = not flags
    if cross.is_zero():
        flags.append("aligned")
        eventual = PhaseVerdict(Ordering.EVENTUALLY_EQUAL, cross) if admissible else None
        return WallReport((x, y), (), eventual, cross, tuple(flags))
    eventual = verdict_from_cross(cross) if admissible else None
    # clearing negative powers leaves the roots in u > 0 unchanged
    poly = cross.cleared()
    walls = []
    if poly.highest_exponent() > 0:
        # (0, dominance bound) is root-free: the lowest term fixes the sign there
        lo = min(dominance_bound(poly), u_max) / 2
        roots: list[RootInterval] = sturm_isolate_roots(poly, (lo, u_max), tol) if lo < u_max else []
        for r in roots:
            u_lo, u_hi, v_lo, v_hi = _v_interval(p, poly, r.lo, r.hi)
            walls.append(Wall(u_lo, u_hi, v_lo, v_hi, r.multiplicity))
    return WallReport((x, y), tuple(walls), eventual, cross, tuple(flags))


# ---------------------------------------------------------------------------
# batch scans over boxes of candidate classes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Box:
    """Inclusive integer ranges for ``n, d, c`` and ``2 s``."""

    n: tuple[int, int]
    d: tuple[int, int]
    c: tuple[int, int]
    s2: tuple[int, int]

    _PART = re.compile(r"^\s*(n|d|c|s2)\s*=\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$")

    @classmethod
    def parse(cls, text: str) -> "Box":
        ranges = {}
        for chunk in text.split(","):
            match = cls._PART.match(chunk)
            if not match:
                raise ValueError(f"bad box component {chunk!r}; expected e.g. 'c=0..2'")
            key, lo, hi = match.groups()
            if key in ranges:
                raise ValueError(f"box component {key!r} given twice")
            ranges[key] = (int(lo), int(hi))
        missing = {"n", "d", "c", "s2"} - set(ranges)
        if missing:
            raise ValueError(f"box is missing {', '.join(sorted(missing))}")
        return cls(**ranges)

    def size(self) -> int:
        total = 1
        for lo, hi in (self.n, self.d, self.c, self.s2):
            total *= max(hi - lo + 1, 0)
        return total

    def classes(self):
        for n, d, c, s2 in itertools.product(
            *(range(lo, hi + 1) for lo, hi in (self.n, self.d, self.c, self.s2))
        ):
            yield ChernClass(n, d, c, Rational(s2, 2))


def _scan_one(args) -> WallReport:
    x, g, p, u_max, tol = args
    if g.is_zero():
        return WallReport((x, g), (), None, LaurentPoly(), ("zero-candidate",))
    report = find_walls(x, g, p, u_max, tol)
    if g == x:
        report = WallReport(report.pair, report.walls, report.eventual, report.cross, report.flags + ("equals-class",))
    return report


def wall_grid_scan(
    x: ChernClass,
    box: Box,
    p: SurfaceParams,
    u_max: RationalLike = 1,
    cap: int = DEFAULT_CANDIDATE_CAP,
    tol: RationalLike = DEFAULT_ISOLATION_WIDTH,
    workers: int = 1,
) -> list[WallReport]:
    """Run :func:`find_walls` for ``x`` against every class in ``box``.

    Output order is lexicographic in ``(n, d, c, s)`` whatever ``workers`` is.
    """
    if x.is_zero():
        raise ValueError("wall_grid_scan needs a nonzero class")
    size = box.size()
    if size > cap:
        raise CandidateCapError(cap, size)
    u_max, tol = as_rational(u_max), as_rational(tol)
    if u_max <= 0:
        raise ParameterError(f"u_max must be positive (got {u_max})")
    jobs = [(x, g, p, u_max, tol) for g in sorted(box.classes(), key=ChernClass.as_tuple)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_scan_one, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    return [_scan_one(job) for job in jobs]


def largest_wall(reports: Sequence[WallReport]) -> Rational | None:
    """Largest ``u`` upper endpoint over all reported walls, if any."""
    ends = [w.u_hi for r in reports for w in r.walls]
    return max(ends) if ends else None
