"""Cohomological Fourier-Mukai transforms on the reduced lattice.

``phi_hat(phi(x)) == -x == phi(phi_hat(x))``: the composite of the two
relative transforms is the shift ``[-1]``.
"""

from __future__ import annotations

from .surface import ChernClass, SurfaceParams


def phi(x: ChernClass, p: SurfaceParams) -> ChernClass:
    n, d, c, s = x.as_tuple()
    e = p.e
    hd, hn, en = p.half_e * d, p.half_e * n, e * n
    return ChernClass(d, -n, s - hd + en, -c - (hd + hd) + hn)


def phi_hat(x: ChernClass, p: SurfaceParams) -> ChernClass:
    n, d, c, s = x.as_tuple()
    e = p.e
    hd, hn, en = p.half_e * d, p.half_e * n, e * n
    return ChernClass(d, -n, s + hd + en, -c - (hd + hd) - hn)


def shift(x: ChernClass, k: int) -> ChernClass:
    return -x if k % 2 else x


def phi_of_shifted_sheaf_charge_data(x: ChernClass, p: SurfaceParams) -> ChernClass:
    """Class of ``Phi(E)[1]``."""
    return shift(phi(x, p), 1)


def transform(x: ChernClass, p: SurfaceParams, functor: str = "phi", k: int = 0) -> ChernClass:
    if functor == "phi":
        y = phi(x, p)
    elif functor == "phihat":
        y = phi_hat(x, p)
    else:
        raise ValueError(f"unknown functor {functor!r}; expected 'phi' or 'phihat'")
    return shift(y, k)
