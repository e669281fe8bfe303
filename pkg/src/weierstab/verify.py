"""Seeded invariant suites replayed by ``weier-stab verify``.

Every suite is deterministic for a given seed and reports only counts, so
two runs with the same seed print byte-identical output.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .charge import Admissibility, admissibility, curve_charge, twist_identity_residual
from .exact import LaurentPoly, Rational, sign_of, sturm_isolate_roots
from .fourier_mukai import phi, phi_hat
from .oracles import float_compare, sign_changes_on_grid
from .phase import Ordering, classify_limit_phase, compare_phases, cross_term, theorem_A_scan
from .surface import ChernClass, ParameterError, SurfaceParams, twisted_ch1_pair
from .walls import find_walls


@dataclass(frozen=True)
class SuiteSizes:
    classes: int = 1000
    param_sets: int = 10
    phase_pairs: int = 1000
    wall_pairs: int = 100
    grid_points: int = 10_000
    theorem_classes: int = 100
    random_polys: int = 50


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failed: int = 0
    excluded: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return self.checked - self.failed

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.checked > 0

    def to_json(self) -> dict:
        out = {
            "suite": self.name,
            "status": "PASS" if self.ok else "FAIL",
            "checked": self.checked,
            "passed": self.passed,
            "failed": self.failed,
            "excluded": self.excluded,
        }
        if self.notes:
            out["notes"] = self.notes[:5]
        return out


# ---------------------------------------------------------------------------
# random generators
# ---------------------------------------------------------------------------


def random_rational(rng: random.Random, bound: int = 10, max_den: int = 6) -> Rational:
    return Rational(rng.randint(-bound * max_den, bound * max_den), rng.randint(1, max_den))


def random_class(rng: random.Random, bound: int = 10, max_den: int = 6) -> ChernClass:
    return ChernClass(*(random_rational(rng, bound, max_den) for _ in range(4)))


def random_params(rng: random.Random) -> SurfaceParams:
    while True:
        e = Rational(rng.randint(-6, 6), rng.randint(1, 2))
        m = Rational(rng.randint(1, 12), rng.randint(1, 3))
        alpha = Rational(rng.randint(1, 12), rng.randint(1, 4))
        lam = Rational(rng.randint(1, 12), rng.randint(1, 4))
        try:
            return SurfaceParams(e, m, alpha, lam)
        except ParameterError:
            continue


def random_admissible_class(rng: random.Random, p: SurfaceParams) -> ChernClass:
    """Small class whose charge eventually lies in the upper half plane,
    drawn evenly from the three admissible shapes."""
    small = lambda: Rational(rng.randint(-12, 12), rng.randint(1, 3))  # noqa: E731
    shape = rng.randrange(3)
    while True:
        n, c, s = small(), small(), small()
        if shape == 0:
            x = ChernClass(n, Rational(rng.randint(1, 12), rng.randint(1, 3)), c, s)
        elif shape == 1:
            x = ChernClass(n, 0, Rational(rng.randint(1, 12), rng.randint(1, 3)), s)
        else:
            x = ChernClass(n, 0, 0, s)
        if admissibility(curve_charge(x, p)) is Admissibility.IN_UPPER_HALF_PLANE:
            return x


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def _lattice_cases(rng: random.Random, sizes: SuiteSizes):
    for _ in range(sizes.param_sets):
        p = random_params(rng)
        for _ in range(sizes.classes):
            yield random_class(rng), p


def suite_round_trip(rng: random.Random, sizes: SuiteSizes) -> SuiteResult:
    res = SuiteResult("round_trip_negation")
    for x, p in _lattice_cases(rng, sizes):
        res.checked += 1
        if phi_hat(phi(x, p), p) != -x or phi(phi_hat(x, p), p) != -x:
            res.failed += 1
            res.notes.append(f"{x} at {p.to_json()}")
    return res


def suite_fiber_degree(rng: random.Random, sizes: SuiteSizes) -> SuiteResult:
    res = SuiteResult("fiber_degree_laws")
    for x, p in _lattice_cases(rng, sizes):
        res.checked += 1
        y, z = phi(x, p), phi_hat(x, p)
        if not (y.n == x.d and y.d == -x.n and z.n == x.d and z.d == -x.n):
            res.failed += 1
            res.notes.append(str(x))
    return res


def suite_twist_identity(rng: random.Random, sizes: SuiteSizes) -> SuiteResult:
    res = SuiteResult("twist_identity")
    for x, p in _lattice_cases(rng, sizes):
        res.checked += 1
        r = twist_identity_residual(x, p)
        if not r.is_zero():
            res.failed += 1
            res.notes.append(f"{x}: residual {r}")
    return res


PHASE_TABLE = (
    # (label, class, expected limit phase)
    ("skyscraper", ChernClass(0, 0, 0, 1), Rational(1)),
    ("fiber degree > 0 torsion", ChernClass(0, 2, 5, 7), Rational(1, 2)),
    ("fiber-supported, ch2 > 0", ChernClass(0, 0, 1, 1), Rational(1)),
    ("fiber-supported, ch2 = 0", ChernClass(0, 0, 1, 0), Rational(1, 2)),
    ("fiber-supported, ch2 < 0", ChernClass(0, 0, 1, -1), Rational(0)),
    ("positive rank, fiber degree > 0", ChernClass(2, 3, -1, 4), Rational(1, 2)),
)


def suite_phase_table(p: SurfaceParams) -> SuiteResult:
    res = SuiteResult("phase_table")
    for label, x, expected in PHASE_TABLE:
        res.checked += 1
        got = classify_limit_phase(x, p).value
        if got != expected:
            res.failed += 1
            res.notes.append(f"{label}: got {got}, expected {expected}")
    return res


def suite_phase_oracle(rng: random.Random, sizes: SuiteSizes, vs=(1e6, 1e9)) -> SuiteResult:
    res = SuiteResult("phase_oracle")
    for _ in range(sizes.phase_pairs):
        p = random_params(rng)
        x, y = random_admissible_class(rng, p), random_admissible_class(rng, p)
        verdict = compare_phases(x, y, p)
        if verdict.decisive is not None and abs(verdict.decisive[1]) < Rational(1, 10**6):
            res.excluded += 1
            res.notes.append(f"excluded {x} vs {y}: decisive {verdict.decisive}")
            continue
        res.checked += 1
        answers = [float_compare(x, y, p, v) for v in vs]
        expected = verdict.ordering.value
        if verdict.ordering is Ordering.EVENTUALLY_EQUAL:
            bad = any(a is not None for a in answers)
        else:
            bad = any(a is not None and a != expected for a in answers) or all(a is None for a in answers)
        if bad:
            res.failed += 1
            res.notes.append(f"{x} vs {y} at {p.to_json()}: exact {expected}, float {answers}")
    if res.excluded * 100 >= sizes.phase_pairs:
        res.failed += 1
        res.notes.append(f"{res.excluded} exclusions exceed 1% of pairs")
    return res


def suite_wall_oracle(rng: random.Random, sizes: SuiteSizes) -> SuiteResult:
    res = SuiteResult("wall_oracle")
    lo, hi = Rational(0), Rational(1)
    walls_seen = 0
    while res.checked < sizes.wall_pairs:
        p = random_params(rng)
        x, y = random_class(rng, 5, 2), random_class(rng, 5, 2)
        cross = cross_term(curve_charge(x, p), curve_charge(y, p)).cleared()
        if cross.is_zero() or cross.highest_exponent() > 6:
            continue
        changes = sign_changes_on_grid(cross, lo, hi, sizes.grid_points)
        # second half of the sample is conditioned on the oracle seeing a wall
        if res.checked >= sizes.wall_pairs // 2 and changes == 0:
            continue
        res.checked += 1
        report = find_walls(x, y, p, hi)
        walls_seen += len(report.walls)
        odd = sum(1 for w in report.walls if w.multiplicity % 2)
        ok = odd == changes
        for w in report.walls:
            sa, sb = sign_of(cross(w.u_lo)), sign_of(cross(w.u_hi))
            if w.multiplicity % 2 and not sa * sb < 0:
                ok = False
            if w.multiplicity % 2 == 0 and not (sa == sb != 0):
                ok = False
        if not ok:
            res.failed += 1
            res.notes.append(f"{x} vs {y}: sturm {odd} odd walls, grid {changes} changes")
    res.notes.append(f"{walls_seen} walls isolated")
    return res


def suite_random_polys(rng: random.Random, sizes: SuiteSizes) -> SuiteResult:
    """Sturm counts vs dense sampling on random integer polynomials of degree <= 8."""
    res = SuiteResult("sturm_random_polys")
    lo, hi = Rational(1, 100), Rational(3)
    spacing = (hi - lo) / (sizes.grid_points + 1)
    for _ in range(sizes.random_polys):
        deg = rng.randint(1, 8)
        coeffs = {k: rng.randint(-10, 10) for k in range(deg + 1)}
        coeffs[deg] = coeffs[deg] or 1
        poly = LaurentPoly(coeffs)
        roots = sturm_isolate_roots(poly, (lo, hi))
        odd = sum(1 for r in roots if r.multiplicity % 2)
        changes = sign_changes_on_grid(poly, lo, hi, sizes.grid_points)
        gaps = [b.lo - a.hi for a, b in zip(roots, roots[1:])]
        if odd != changes and gaps and min(gaps) < 2 * spacing:
            res.excluded += 1
            res.notes.append(f"roots closer than the grid spacing: {poly}")
            continue
        res.checked += 1
        if odd != changes:
            res.failed += 1
            res.notes.append(f"{poly}: sturm {odd}, grid {changes}")
    return res


def _theorem_a_class(rng: random.Random, p: SurfaceParams, positive: bool) -> ChernClass:
    n = Rational(rng.randint(1, 6), rng.randint(1, 2))
    d = random_rational(rng, 5, 3)
    s = random_rational(rng, 5, 3)
    c = p.e / 2 * n - (p.m + p.alpha) * d
    if positive:
        c += Rational(rng.randint(1, 20), rng.randint(1, 4))
    return ChernClass(n, d, c, s)


def suite_theorem_a(rng: random.Random, sizes: SuiteSizes) -> SuiteResult:
    res = SuiteResult("theorem_a_consistency")
    candidate = ChernClass(0, 0, 1, 0)
    for positive, want in ((True, Ordering.PRECEDES), (False, Ordering.EVENTUALLY_EQUAL)):
        for _ in range(sizes.theorem_classes):
            p = random_params(rng)
            x = _theorem_a_class(rng, p, positive)
            assert (twisted_ch1_pair(x, p) > 0) if positive else (twisted_ch1_pair(x, p) == 0)
            res.checked += 1
            entry = theorem_A_scan(x, [candidate], p).entries[0]
            if entry.verdict is None or entry.verdict.ordering is not want:
                res.failed += 1
                res.notes.append(f"{x}: expected {want.value}")
    return res


def run_all(seed: int, p: SurfaceParams, sizes: SuiteSizes | None = None) -> list[SuiteResult]:
    sizes = sizes or SuiteSizes()
    rng = random.Random(seed)
    return [
        suite_round_trip(rng, sizes),
        suite_fiber_degree(rng, sizes),
        suite_twist_identity(rng, sizes),
        suite_phase_table(p),
        suite_phase_oracle(rng, sizes),
        suite_wall_oracle(rng, sizes),
        suite_random_polys(rng, sizes),
        suite_theorem_a(rng, sizes),
    ]
