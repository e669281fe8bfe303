"""Exact rational scalars, Laurent polynomials in ``u``, bivariate polynomials
in ``(u, v)`` and Sturm-sequence real root isolation.

Nothing in this module touches floating point. Rationals are GMP
``mpq`` values, which mix freely with :class:`fractions.Fraction` and
``int``; the helpers here only add parsing, canonical string rendering and
a checked four-function entry point.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _AnyRational
from typing import Iterable, Mapping, Sequence, Union

from gmpy2 import mpq as Rational

RationalLike = Union[Rational, Rational, int, str]

DEFAULT_ISOLATION_WIDTH = Rational(1, 2**20)


class ZeroPolynomialError(ValueError):
    """Raised when root isolation is requested for the zero polynomial."""


def as_rational(value: RationalLike) -> Rational:
    """Coerce ``value`` to an exact rational, refusing binary floats."""
    if type(value) is Rational:
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, _AnyRational):
        return Rational(value)
    if isinstance(value, str):
        try:
            return Rational(Fraction(value.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {value!r}") from exc
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_rational(q: Rational) -> str:
    """Render ``q`` as ``"p/q"``, or ``"p"`` when the denominator is one."""
    return str(q)


def rational_arith(a: RationalLike, b: RationalLike, op: str) -> Rational:
    a, b = as_rational(a), as_rational(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ZeroDivisionError(f"division of {a} by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


def sign_of(q: Rational) -> Sign:
    return Sign((q > 0) - (q < 0))


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------


class LaurentPoly:
    """Finite Laurent polynomial ``sum c_k u^k`` with Rational coefficients.

    Instances are immutable; zero coefficients are never stored.
    """

    __slots__ = ("_terms", "var")

    def __init__(self, terms: Mapping[int, RationalLike] | None = None, var: str = "u"):
        clean = {}
        if terms:
            for k, c in terms.items():
                c = as_rational(c)
                if c:
                    clean[int(k)] = c
        self._terms = dict(sorted(clean.items()))
        self.var = var

    @classmethod
    def _from_clean(cls, terms: dict, var: str = "u") -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._terms = dict(sorted((k, c) for k, c in terms.items() if c))
        obj.var = var
        return obj

    @classmethod
    def constant(cls, c: RationalLike, var: str = "u") -> "LaurentPoly":
        return cls({0: c}, var)

    @classmethod
    def monomial(cls, exponent: int, c: RationalLike = 1, var: str = "u") -> "LaurentPoly":
        return cls({exponent: c}, var)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def lowest_exponent(self) -> int:
        if not self._terms:
            raise ValueError("the zero polynomial has no lowest exponent")
        return next(iter(self._terms))

    def highest_exponent(self) -> int:
        if not self._terms:
            raise ValueError("the zero polynomial has no highest exponent")
        return next(reversed(self._terms))

    def lowest_term(self) -> tuple[int, Rational]:
        k = self.lowest_exponent()
        return k, self._terms[k]

    def coefficient(self, k: int) -> Rational:
        return self._terms.get(k, Rational(0))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, _AnyRational) and not isinstance(other, bool):
            return self._terms == LaurentPoly.constant(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        return LaurentPoly.constant(other, self.var)

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly._from_clean(out, self.var)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._from_clean({k: -c for k, c in self._terms.items()}, self.var)

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            c = as_rational(other)
            return LaurentPoly._from_clean({k: c * a for k, a in self._terms.items()}, self.var)
        out: dict = {}
        for i, a in self._terms.items():
            for j, b in other._terms.items():
                out[i + j] = out.get(i + j, 0) + a * b
        return LaurentPoly._from_clean(out, self.var)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``u**k``."""
        return LaurentPoly._from_clean({e + k: c for e, c in self._terms.items()}, self.var)

    def __call__(self, u0: RationalLike) -> Rational:
        u0 = as_rational(u0)
        if u0 == 0 and self._terms and self.lowest_exponent() < 0:
            raise ZeroDivisionError("negative exponent evaluated at zero")
        return sum((c * u0**k for k, c in self._terms.items()), Rational(0))

    def to_coefficients(self) -> list[Rational]:
        """Dense ascending coefficients; requires no negative exponents."""
        if not self._terms:
            return []
        if self.lowest_exponent() < 0:
            raise ValueError("polynomial has negative exponents; shift it first")
        out = [Rational(0)] * (self.highest_exponent() + 1)
        for k, c in self._terms.items():
            out[k] = c
        return out

    def cleared(self) -> "LaurentPoly":
        """Shift so the lowest exponent is zero (same nonzero roots)."""
        if not self._terms:
            return self
        return self.shift(-self.lowest_exponent())

    def to_json(self) -> list[dict]:
        return [{"exponent": k, "coefficient": format_rational(c)} for k, c in self._terms.items()]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "LaurentPoly":
        out: dict = {}
        for item in data:
            k = int(item["exponent"])
            out[k] = out.get(k, 0) + as_rational(item["coefficient"])
        return cls(out)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, c in self._terms.items():
            if k == 0:
                mono = str(c)
            else:
                power = self.var if k == 1 else f"{self.var}^{k}"
                mono = power if c == 1 else f"-{power}" if c == -1 else f"{c}*{power}"
            parts.append(mono)
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"


def laurent_sign_at_zero_plus(p: LaurentPoly) -> Sign:
    """Sign of ``p(u)`` for every sufficiently small ``u > 0``."""
    if p.is_zero():
        return Sign.ZERO
    return sign_of(p.lowest_term()[1])


def dominance_bound(p: LaurentPoly) -> Rational:
    """A rational ``u*`` with sign(p(u)) = sign of the lowest term on ``(0, u*)``.

    With lowest term ``c u^k`` this is ``min(1, |c| / (1 + sum |c_j|))``, the
    sum running over the remaining terms.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no dominant term")
    k, c = p.lowest_term()
    rest = sum((abs(cj) for j, cj in p.items() if j != k), Rational(0))
    return min(Rational(1), abs(c) / (1 + rest))


# ---------------------------------------------------------------------------
# Bivariate polynomials in (u, v)
# ---------------------------------------------------------------------------


class BiPoly:
    """Polynomial in ``u, v`` with non-negative exponents and exact coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], RationalLike] | None = None):
        clean = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError("BiPoly exponents must be non-negative")
            c = as_rational(c)
            if c:
                clean[(int(i), int(j))] = c
        self._terms = dict(sorted(clean.items()))

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def u_degree(self) -> int:
        return max((i for i, _ in self._terms), default=0)

    def v_degree(self) -> int:
        return max((j for _, j in self._terms), default=0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self._terms)
        for key, c in other._terms.items():
            out[key] = out.get(key, 0) + c
        return BiPoly(out)

    def __neg__(self) -> "BiPoly":
        return BiPoly({key: -c for key, c in self._terms.items()})

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def scale(self, c: RationalLike) -> "BiPoly":
        c = as_rational(c)
        return BiPoly({key: c * a for key, a in self._terms.items()})

    def evaluate(self, u0: RationalLike, v0: RationalLike) -> Rational:
        u0, v0 = as_rational(u0), as_rational(v0)
        return sum((c * u0**i * v0**j for (i, j), c in self._terms.items()), Rational(0))

    def substitute_v(self, v_of_u: LaurentPoly) -> LaurentPoly:
        """Replace ``v`` by a Laurent polynomial in ``u``."""
        out = LaurentPoly()
        powers = {0: LaurentPoly.constant(1)}
        for (i, j), c in self._terms.items():
            if j not in powers:
                acc = LaurentPoly.constant(1)
                for _ in range(j):
                    acc = acc * v_of_u
                powers[j] = acc
            out = out + powers[j].shift(i) * c
        return out

    def to_json(self) -> list[dict]:
        return [
            {"u": i, "v": j, "coefficient": format_rational(c)}
            for (i, j), c in self._terms.items()
        ]

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (i, j), c in self._terms.items():
            factors = [f for f in (
                "" if i == 0 else "u" if i == 1 else f"u^{i}",
                "" if j == 0 else "v" if j == 1 else f"v^{j}",
            ) if f]
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"BiPoly({str(self)!r})"


# ---------------------------------------------------------------------------
# Dense univariate helpers (ascending coefficient lists of Fractions)
# ---------------------------------------------------------------------------

Dense = list  # list[Rational], ascending, no trailing zeros


def _trim(p: Sequence[Rational]) -> Dense:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _deriv(p: Dense) -> Dense:
    return _trim([k * p[k] for k in range(1, len(p))])


def _divmod(a: Dense, b: Dense) -> tuple[Dense, Dense]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Rational(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / lead
        q[shift] = f
        for i, bc in enumerate(b):
            a[i + shift] -= f * bc
        a = _trim(a)
    return _trim(q), a


def _monic(p: Dense) -> Dense:
    return [c / p[-1] for c in p] if p else p


def _gcd(a: Dense, b: Dense) -> Dense:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _divmod(a, b)[1]
    return _monic(a)


def _primitive(p: Dense) -> Dense:
    """Positive rescaling of ``p`` to a primitive integer polynomial."""
    if not p:
        return p
    den = 1
    for c in p:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return [Rational(c // g) for c in ints]


def _eval(p: Dense, x: Rational) -> Rational:
    acc = Rational(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def squarefree_decomposition(p: Sequence[Rational]) -> list[tuple[Dense, int]]:
    """Yun's algorithm: ``p = lc * prod q_i**i`` with pairwise coprime,
    square-free monic ``q_i``. Returns ``[(q_i, i), ...]`` skipping constants.
    """
    p = _trim(p)
    if not p:
        raise ZeroPolynomialError("square-free decomposition of the zero polynomial")
    out: list[tuple[Dense, int]] = []
    dp = _deriv(p)
    a = _gcd(p, dp)
    b = _divmod(p, a)[0]
    c = _divmod(dp, a)[0]
    d = _trim([ci - bi for ci, bi in _pad(c, _deriv(b))])
    i = 1
    while len(b) > 1:
        g = _gcd(b, d)
        if len(g) > 1:
            out.append((g, i))
        b = _divmod(b, g)[0]
        c = _divmod(d, g)[0]
        d = _trim([ci - bi for ci, bi in _pad(c, _deriv(b))])
        i += 1
    return out


def _pad(a: Dense, b: Dense) -> list[tuple[Rational, Rational]]:
    n = max(len(a), len(b))
    z = Rational(0)
    return [(a[k] if k < len(a) else z, b[k] if k < len(b) else z) for k in range(n)]


def sturm_sequence(p: Sequence[Rational]) -> list[Dense]:
    """Sturm chain of ``p`` with primitive-part reduction at every step."""
    p0 = _primitive(_trim(p))
    seq = [p0]
    p1 = _primitive(_deriv(p0))
    while p1:
        seq.append(p1)
        r = _divmod(seq[-2], seq[-1])[1]
        p1 = _primitive([-c for c in r])
    return seq


def sign_variations(seq: Sequence[Dense], x: Rational) -> int:
    last = 0
    count = 0
    for q in seq:
        s = sign_of(_eval(q, x))
        if s:
            if last and s != last:
                count += 1
            last = s
    return count


@dataclass(frozen=True)
class RootInterval:
    """Open interval ``(lo, hi)`` holding exactly one real root of multiplicity ``multiplicity``."""

    lo: Rational
    hi: Rational
    multiplicity: int = 1

    @property
    def width(self) -> Rational:
        return self.hi - self.lo

    def to_json(self) -> dict:
        return {
            "lo": format_rational(self.lo),
            "hi": format_rational(self.hi),
            "multiplicity": self.multiplicity,
        }


def _isolate_squarefree(p: Dense, lo: Rational, hi: Rational, tol: Rational) -> list[tuple[Rational, Rational]]:
    seq = sturm_sequence(p)

    def count(a: Rational, b: Rational) -> int:
        return sign_variations(seq, a) - sign_variations(seq, b)

    found: list[tuple[Rational, Rational]] = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        k = count(a, b)
        if k == 0:
            continue
        if k == 1:
            found.append(_refine(p, a, b, tol))
            continue
        mid = (a + b) / 2
        if _eval(p, mid) == 0:
            h = min(tol, b - a) / 4
            while _eval(p, mid - h) == 0 or _eval(p, mid + h) == 0 or count(mid - h, mid + h) != 1:
                h /= 2
            found.append((mid - h, mid + h))
            stack.append((a, mid - h))
            stack.append((mid + h, b))
        else:
            stack.append((a, mid))
            stack.append((mid, b))
    return sorted(found)


def _refine(p: Dense, a: Rational, b: Rational, tol: Rational) -> tuple[Rational, Rational]:
    # a simple root strictly inside (a, b) with p(a), p(b) nonzero: signs differ
    sa = sign_of(_eval(p, a))
    while b - a > tol:
        mid = (a + b) / 2
        sm = sign_of(_eval(p, mid))
        if sm == 0:
            h = (b - a) / 4
            while h > tol / 2:
                h /= 2
            return mid - h, mid + h
        if sm == sa:
            a = mid
        else:
            b = mid
    return a, b


def sturm_isolate_roots(
    p: LaurentPoly,
    interval: tuple[RationalLike, RationalLike],
    tol: RationalLike = DEFAULT_ISOLATION_WIDTH,
) -> list[RootInterval]:
    """Isolate every real root of ``p`` in the open interval ``(lo, hi)``.

    Requires ``0 < lo < hi`` so clearing negative powers of ``u`` is harmless.
    The returned intervals are disjoint, sorted, at most ``tol`` wide and carry
    the multiplicity of the enclosed root.
    """
    lo, hi = as_rational(interval[0]), as_rational(interval[1])
    tol = as_rational(tol)
    if not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    if lo <= 0:
        raise ValueError("interval must lie in u > 0")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if p.is_zero():
        raise ZeroPolynomialError("every point is a root of the zero polynomial")
    dense = _trim(p.cleared().to_coefficients())
    if len(dense) <= 1:
        return []
    factors = squarefree_decomposition(dense)
    sqf: Dense = [Rational(1)]
    for q, _ in factors:
        sqf = _mul(sqf, q)
    # roots sitting on an endpoint are outside the open interval
    for endpoint in (lo, hi):
        while _eval(sqf, endpoint) == 0:
            sqf = _divmod(sqf, [-endpoint, Rational(1)])[0]
    if len(sqf) <= 1:
        return []
    out = []
    for a, b in _isolate_squarefree(sqf, lo, hi, tol):
        out.append(RootInterval(a, b, _multiplicity_in(factors, a, b)))
    return out


def _multiplicity_in(factors: list[tuple[Dense, int]], a: Rational, b: Rational) -> int:
    for q, mult in factors:
        seq = sturm_sequence(q)
        if sign_variations(seq, a) - sign_variations(seq, b) == 1:
            return mult
    raise AssertionError("isolated root not attributed to any square-free factor")


def _mul(a: Dense, b: Dense) -> Dense:
    if not a or not b:
        return []
    out = [Rational(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out
