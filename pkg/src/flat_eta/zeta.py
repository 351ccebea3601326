"""Hurwitz zeta and the Dirichlet L-function of the primitive character mod 4.

zeta(s, a) = sum_{n>=0} (n+a)^{-s} continued to s != 1; the continuation is
delegated to mpmath (Euler-Maclaurin internally) at the configured working
precision.  L(s, chi_4) is assembled from the finite Hurwitz combination
4^{-s} (zeta(s, 1/4) - zeta(s, 3/4)); at s = 1, where the individual zetas
blow up, the convergent alternating series 1 - 1/3 + 1/5 - ... is summed
directly instead.
"""

from __future__ import annotations

import mpmath
from mpmath import mp

from .errors import PoleAtOne
from .trig import workprec


def hurwitz_zeta(s, a) -> mpmath.mpf:
    """zeta(s, a) for real s != 1 and a in (0, 1]."""
    if s == 1:
        raise PoleAtOne("Hurwitz zeta has its pole at s = 1")
    if not 0 < a <= 1:
        raise ValueError(f"a must lie in (0, 1], got {a}")
    with workprec():
        return mpmath.zeta(mpmath.mpf(s), mpmath.mpf(a))


def l_chi4(s) -> mpmath.mpf:
    """L(s, chi_4); entire, so defined for every real s."""
    with workprec():
        if s == 1:
            return mpmath.nsum(lambda n: (-1) ** n / (2 * n + 1), [0, mpmath.inf])
        s = mpmath.mpf(s)
        quarter = mpmath.zeta(s, mpmath.mpf(1) / 4)
        threequarter = mpmath.zeta(s, mpmath.mpf(3) / 4)
        return mp.power(4, -s) * (quarter - threequarter)


def zeta_quarter_difference(s) -> mpmath.mpf:
    """zeta(s, 1/4) - zeta(s, 3/4); the combination appearing in eta(s)."""
    with workprec():
        if s == 1:
            # removable: equals 4 L(1, chi_4)
            return 4 * l_chi4(1)
        s = mpmath.mpf(s)
        return mpmath.zeta(s, mpmath.mpf(1) / 4) - mpmath.zeta(s, mpmath.mpf(3) / 4)
