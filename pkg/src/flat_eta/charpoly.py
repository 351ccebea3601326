"""Exact characteristic polynomials and their 2-power cyclotomic factorization.

Polynomials live in Z[x] as lists of int coefficients in ascending degree.
For a finite-order integer matrix the characteristic polynomial factors as
a product of cyclotomics Phi_d with d dividing the order; when the order is
a power of two the only factors are Phi_1 = x - 1, Phi_2 = x + 1 and
Phi_{2^k} = x^{2^{k-1}} + 1, so factoring reduces to repeated exact division.
The total number of irreducible factors, counted with multiplicity, is f(B).
"""

from __future__ import annotations

from .errors import NotCyclotomicProduct
from .intlinalg import IntMatrix, identity, mat_mul, trace

IntPoly = list  # list[int], ascending degree


def degree(p: IntPoly) -> int:
    return len(p) - 1


def is_monic(p: IntPoly) -> bool:
    return bool(p) and p[-1] == 1


def poly_trim(p: IntPoly) -> IntPoly:
    q = list(p)
    while len(q) > 1 and q[-1] == 0:
        q.pop()
    return q


def poly_mul(p: IntPoly, q: IntPoly) -> IntPoly:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def poly_divmod(p: IntPoly, q: IntPoly):
    """Division by a monic divisor over Z: returns (quotient, remainder)."""
    assert is_monic(q)
    rem = list(p)
    dq = degree(q)
    if degree(rem) < dq:
        return [0], poly_trim(rem)
    quot = [0] * (degree(rem) - dq + 1)
    for k in range(degree(rem) - dq, -1, -1):
        coef = rem[k + dq]
        if coef:
            quot[k] = coef
            for j in range(dq + 1):
                rem[k + j] -= coef * q[j]
    return poly_trim(quot), poly_trim(rem)


def poly_eval(p: IntPoly, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def char_poly(b: IntMatrix) -> IntPoly:
    """det(xI - B) over Z via the Faddeev-LeVerrier recursion.

    All intermediate divisions are exact, so the result is computed purely
    in arbitrary-precision integers.
    """
    n = len(b)
    coeffs_desc = [1]  # c_n
    m = identity(n)
    for k in range(1, n + 1):
        m = mat_mul(b, m)
        t = trace(m)
        assert t % k == 0, "Faddeev-LeVerrier division must be exact"
        ck = -t // k
        coeffs_desc.append(ck)
        if k < n:
            for i in range(n):
                m[i][i] += ck
    return list(reversed(coeffs_desc))


def phi_two_power(k: int) -> IntPoly:
    """Phi_{2^k}: x - 1 for k = 0, else x^{2^{k-1}} + 1."""
    if k == 0:
        return [-1, 1]
    half = 2 ** (k - 1)
    return [1] + [0] * (half - 1) + [1]


def cyclotomic_factor(p: IntPoly):
    """Exponents {d: c_d} with p = prod Phi_d^{c_d}, d in {1} u {2^k}.

    Divides out Phi_{2^k} from the largest plausible k downward, then
    Phi_1; anything left over means p has a root that is not a 2-power root
    of unity and NotCyclotomicProduct is raised.
    """
    if not is_monic(p):
        raise NotCyclotomicProduct("polynomial is not monic")
    work = poly_trim(p)
    n = degree(work)
    exps: dict[int, int] = {}
    k = n.bit_length()  # largest k with deg Phi_{2^k} = 2^{k-1} <= n
    while k >= 1:
        phi = phi_two_power(k)
        while degree(work) >= degree(phi):
            quot, rem = poly_divmod(work, phi)
            if rem != [0]:
                break
            work = quot
            exps[2 ** k] = exps.get(2 ** k, 0) + 1
        k -= 1
    phi1 = phi_two_power(0)
    while degree(work) >= 1:
        quot, rem = poly_divmod(work, phi1)
        if rem != [0]:
            break
        work = quot
        exps[1] = exps.get(1, 0) + 1
    if work != [1]:
        raise NotCyclotomicProduct(
            "remainder after dividing out 2-power cyclotomics: %r" % (work,)
        )
    # degree identity: sum c_d * phi(d) recovers deg p
    total = sum(c * (1 if d == 1 else d // 2) for d, c in exps.items())
    assert total == n
    return exps


def expand_factorization(exps) -> IntPoly:
    """Multiply the factorization back out (round-trip check helper)."""
    out = [1]
    for d, c in sorted(exps.items()):
        k = 0 if d == 1 else d.bit_length() - 1
        phi = phi_two_power(k)
        for _ in range(c):
            out = poly_mul(out, phi)
    return out


def f_of_B(b: IntMatrix) -> int:
    """Number of irreducible factors of char_poly(B), with multiplicity."""
    return sum(cyclotomic_factor(char_poly(b)).values())
