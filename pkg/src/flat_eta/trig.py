"""Trigonometric sums and products at angles k*pi/2^r, with their closed forms.

These identities do the heavy lifting in the eta computations, and double as
the independent numerical oracle for the closed-form engine:

  * floor sums      S*_N(k) = sum_{j odd < N} floor(jk/N) = (k-1)N/4
  * sine products   prod_{j odd <= 2^r-1} sin(jk pi/2^r) = 2^{1-2^{r-1}}
  * alternating sine sums S_{r,t}(2^nu l) = (-1)^{[l/2]} 2^{r-1} iff t = nu+1
  * cotangent products and alternating cotangent sums (value (-1)^{[l/2]} N/2)

Everything is evaluated in extended-precision floating point (mpmath, default
96 bits via FLAT_ETA_PRECISION_BITS) after reducing the angle as an exact
rational multiple of pi, so argument error never grows with k.
"""

from __future__ import annotations

import os
from fractions import Fraction

import mpmath
from mpmath import mp

from .errors import BadParity, InvalidSpec, PoleAtAngle

PRECISION_ENV = "FLAT_ETA_PRECISION_BITS"
_DEFAULT_BITS = 96

_sin_cache: dict = {}
_cos_cache: dict = {}


def precision_bits() -> int:
    return int(os.environ.get(PRECISION_ENV, _DEFAULT_BITS))


def workprec():
    """mpmath precision context at the configured working precision."""
    return mp.workprec(precision_bits())


def odd_range(n: int):
    """I*_N: the odd integers in 1..N."""
    return range(1, n + 1, 2)


def sin_pi(frac: Fraction) -> mpmath.mpf:
    """sin(frac * pi) with the reduction frac mod 2 done on the rational."""
    frac = Fraction(frac) % 2
    key = (frac.numerator, frac.denominator, mp.prec)
    val = _sin_cache.get(key)
    if val is None:
        val = mpmath.sinpi(mpmath.mpf(frac.numerator) / frac.denominator)
        _sin_cache[key] = val
    return val


def cos_pi(frac: Fraction) -> mpmath.mpf:
    frac = Fraction(frac) % 2
    key = (frac.numerator, frac.denominator, mp.prec)
    val = _cos_cache.get(key)
    if val is None:
        val = mpmath.cospi(mpmath.mpf(frac.numerator) / frac.denominator)
        _cos_cache[key] = val
    return val


def cot_pi(frac: Fraction) -> mpmath.mpf:
    """cot(frac * pi); raises PoleAtAngle at exact multiples of pi.

    Angles arrive as exact rationals, so the pole test is exact; hitting one
    signals a caller bug rather than a numerical accident.
    """
    frac = Fraction(frac) % 1
    if frac == 0:
        raise PoleAtAngle("cot at a multiple of pi")
    return cos_pi(frac) / sin_pi(frac)


def alternating_sign(k: int) -> int:
    """(-1)^{floor(k/2)}."""
    return -1 if (k // 2) % 2 else 1


def floor_sum_star(n: int, k: int) -> int:
    """S*_N(k) = sum over odd j < N of floor(jk/N), by direct summation.

    For N even and k odd this equals (k-1)N/4; the summation here is the
    oracle side, the closed form lives in the tests.
    """
    if n <= 0 or k <= 0 or n % 2 != 0 or k % 2 != 1:
        raise BadParity(f"need N even, k odd, both positive; got N={n}, k={k}")
    return sum(j * k // n for j in range(1, n, 2))


def sine_product(r: int, k: int) -> mpmath.mpf:
    """prod over odd j in 1..2^r of sin(j k pi / 2^r)  (r >= 2, k odd)."""
    if r < 2 or k % 2 != 1:
        raise BadParity(f"need r >= 2 and k odd; got r={r}, k={k}")
    n = 2 ** r
    with workprec():
        prod = mp.one
        for j in odd_range(n - 1):
            prod *= sin_pi(Fraction(j * k, n))
        return prod


def half_sine_product(r: int) -> mpmath.mpf:
    """prod over odd j in 1..2^{r-1} of sin(j pi / 2^r); equals sqrt(2)/2^{2^{r-2}}."""
    if r < 2:
        raise BadParity(f"need r >= 2; got r={r}")
    n = 2 ** r
    with workprec():
        prod = mp.one
        for j in odd_range(n // 2 - 1):
            prod *= sin_pi(Fraction(j, n))
        return prod


def alt_sine_sum(r: int, t: int, omega: int) -> mpmath.mpf:
    """S_{r,t}(omega) = sum over odd k in 1..2^r of (-1)^{[k/2]} sin(k omega pi / 2^t).

    For omega = 2^nu * l (l odd) and t <= r the closed form is
    (-1)^{[l/2]} 2^{r-1} when t = nu + 1 and 0 otherwise.
    """
    if r < 1:
        raise BadParity(f"need r >= 1; got r={r}")
    if t >= 0:
        base = Fraction(omega, 2 ** t)
    else:
        base = Fraction(omega * 2 ** (-t))
    with workprec():
        total = mp.zero
        for k in odd_range(2 ** r - 1):
            total += alternating_sign(k) * sin_pi(k * base)
        return total


def alt_sine_sum_closed(r: int, t: int, omega: int):
    """Closed-form value of S_{r,t}(omega) for omega != 0."""
    if omega == 0:
        return 0
    nu = 0
    ell = abs(omega)
    while ell % 2 == 0:
        ell //= 2
        nu += 1
    sign = 1 if omega > 0 else -1
    if t == nu + 1:
        return sign * alternating_sign(ell) * 2 ** (r - 1)
    return 0


def cot_product(r: int, k: int) -> mpmath.mpf:
    """prod over odd j in 1..2^{r-1} of cot(j k pi / 2^r) = 1  (r >= 2, k odd)."""
    if r < 2 or k % 2 != 1:
        raise BadParity(f"need r >= 2 and k odd; got r={r}, k={k}")
    n = 2 ** r
    with workprec():
        prod = mp.one
        for j in odd_range(n // 2 - 1):
            prod *= cot_pi(Fraction(j * k, n))
        return prod


def alt_cot_sum(r: int, n: int, ell: int) -> mpmath.mpf:
    """sum over odd k in 1..N of (-1)^{[k/2]} cot(k ell pi / 2^r).

    N must be 2^r or 2^{r-1}; the closed form is (-1)^{[ell/2]} N/2.
    """
    if r < 2 or ell % 2 != 1:
        raise BadParity(f"need r >= 2 and ell odd; got r={r}, ell={ell}")
    if n not in (2 ** r, 2 ** (r - 1)):
        raise InvalidSpec(f"N must be 2^r or 2^(r-1); got N={n} for r={r}")
    with workprec():
        total = mp.zero
        for k in odd_range(n - 1):
            total += alternating_sign(k) * cot_pi(Fraction(k * ell, 2 ** r))
        return total
