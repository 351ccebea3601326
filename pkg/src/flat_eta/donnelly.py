"""The boundary-signature route to the eta invariant, and its limits.

For groups whose holonomy sits inside SO(n, Z) (every generator power sends
e_i to +/- e_j, canonical lattice, translation along e_n) the eta invariant
has the closed sum

    eta_do = ((-1)^h / |F|) * sum 2^{c(B')} prod_j cot(k t_j / 2) cot(pi k a)

over the asymmetric group elements, where c(B') counts the cycles of the
permutation underlying the rotational block and n = 4h - 1.  On the block
family this evaluates to (-1)^h 2^{j_{r-1}+...+j_1-1}, i.e. it agrees with
the spectral value up to the sign (-1)^{h+1}.  The 3-dimensional Z_3-manifold
over the hexagonal lattice (holonomy outside SO(2, Z)) breaks the formula:
forcing it yields -4/9 while the true eta invariant is -2/3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp

from . import trig
from .errors import HypothesisViolated
from .eta import ManifoldSpec, analyze, eta_invariant
from .matrices import cycle_count, is_signed_permutation, matrix_order
from .intlinalg import mat_pow


def hypothesis_met(spec: ManifoldSpec) -> bool:
    """True iff the restricted formula applies: signed-permutation holonomy
    fixing e_n, canonical lattice, translation supported on e_n."""
    b = spec.int_matrix()
    n = spec.n
    if spec.lattice is not None:
        return False
    if not is_signed_permutation(b):
        return False
    if any(b[i][n - 1] != (1 if i == n - 1 else 0) for i in range(n)):
        return False
    if spec.translation is None:
        return False
    if any(x != 0 for x in spec.translation[:-1]):
        return False
    return True


def _rationalize(value: mpmath.mpf, max_den: int):
    """Snap an mpf to the nearest fraction with denominator <= max_den
    (continued-fraction convergents); None if no convergent lands within
    1e-9."""
    frac = Fraction(float(value)).limit_denominator(max_den)
    if abs(value - mp.mpf(frac.numerator) / frac.denominator) < 1e-9:
        return frac
    return None


def eta_donnelly(spec: ManifoldSpec, force: bool = False):
    """The boundary-signature sum, rationalized when it snaps cleanly.

    Raises HypothesisViolated unless the spec satisfies the SO(n, Z)
    hypotheses; force=True evaluates the sum anyway (reproducing the failure
    mode outside the hypotheses is the point of the 3-dim Z_3 example, which
    has its own fixture below).
    """
    if not hypothesis_met(spec) and not force:
        raise HypothesisViolated(
            "holonomy/lattice/translation do not meet the SO(n,Z) hypotheses")
    if spec.n % 4 != 3:
        raise HypothesisViolated(f"dimension {spec.n} is not 4h - 1")
    h = (spec.n + 1) // 4
    data = analyze(spec)
    order = data.order
    a = spec.translation[-1]  # b = a e_n
    b_int = spec.int_matrix()
    with trig.workprec():
        total = mp.zero
        for k in range(1, order):
            if not (data.fixed_dimension == 1
                    and all((k * t) % 1 != 0 for t in data.angles)):
                continue
            cycles = cycle_count(mat_pow(b_int, k)) - 1  # drop the fixed e_n orbit
            term = mp.mpf(2 ** cycles)
            for t in data.angles:
                term *= trig.cot_pi((k * t / 2) % 1)
            term *= trig.cot_pi((k * a) % 1)
            total += term
        value = (-1) ** h * total / order
    exact = _rationalize(value, order ** 2)
    return exact if exact is not None else value


@dataclass(frozen=True)
class DonnellyReport:
    """Side-by-side record of the two eta computations."""

    eta_do: object            # Fraction when it snapped, else mpf
    eta_mp: Fraction          # spectral value
    hypothesis_met: bool
    ratio_ok: bool            # eta_do == (-1)^{h+1} eta_mp (meaningful when hypotheses hold)
    h: int

    def describe(self) -> str:
        status = "hypotheses met" if self.hypothesis_met else "hypotheses NOT met"
        return (f"eta_do = {self.eta_do}, eta_mp = {self.eta_mp} "
                f"(h = {self.h}, {status}, sign relation "
                + ("holds)" if self.ratio_ok else "FAILS)"))


def compare(spec: ManifoldSpec, force: bool = False) -> DonnellyReport:
    """Evaluate both routes and check eta_do = (-1)^{h+1} eta_mp."""
    h = (spec.n + 1) // 4
    met = hypothesis_met(spec)
    eta_do = eta_donnelly(spec, force=force or not met)
    eta_mp = Fraction(eta_invariant(spec))
    expected = (-1) ** (h + 1) * eta_mp
    ratio_ok = isinstance(eta_do, Fraction) and eta_do == expected
    return DonnellyReport(eta_do=eta_do, eta_mp=eta_mp, hypothesis_met=met,
                          ratio_ok=ratio_ok, h=h)


# ------------------------------------------------------- triscosm fixture --

# The unique 3-dimensional Z_3-manifold: holonomy diag(B', 1) over the
# hexagonal lattice Z e_1 + Z (-1/2, sqrt(3)/2) (+) Z e_3, translation e_3/3.
# B' is integral of order 3 but not a signed permutation, so the restricted
# formula's hypotheses fail.
TRISCOSM_B_PRIME = ((0, -1), (1, -1))
TRISCOSM_LATTICE = ((1.0, -0.5, 0.0),
                    (0.0, 0.8660254037844386, 0.0),  # sqrt(3)/2
                    (0.0, 0.0, 1.0))
TRISCOSM_TRANSLATION = (0, 0, Fraction(1, 3))
TRISCOSM_ETA = Fraction(-2, 3)      # true spectral value
TRISCOSM_ANGLE = Fraction(2, 3)     # rotation angle of B' as a fraction of pi


def triscosm_matrix():
    b = [[0, -1, 0], [1, -1, 0], [0, 0, 1]]
    assert matrix_order(b) == 3
    return b


def eta_donnelly_triscosm() -> mpmath.mpf:
    """Force-evaluate the restricted formula on the Z_3 fixture.

    h = 1, |F| = 3, both nontrivial powers qualify, c(B'^k) = 1 (the
    rotational block is one orbit), angles k * 2pi/3, translation pairing
    k/3.  The sum gives -2/3 (1/3 + 1/3) = -4/9, off the true value -2/3.
    """
    with trig.workprec():
        total = mp.zero
        for k in (1, 2):
            term = mp.mpf(2)  # 2^{c(B'^k)} with c = 1
            term *= trig.cot_pi((k * TRISCOSM_ANGLE / 2) % 1)
            term *= trig.cot_pi(Fraction(k, 3) % 1)
            total += term
        return -total / 3


def triscosm_report() -> DonnellyReport:
    value = eta_donnelly_triscosm()
    exact = _rationalize(value, 9)
    eta_do = exact if exact is not None else value
    return DonnellyReport(eta_do=eta_do, eta_mp=TRISCOSM_ETA,
                          hypothesis_met=False,
                          ratio_ok=False, h=1)
