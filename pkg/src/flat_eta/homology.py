"""First homology H_1(M, Z) = Gamma / [Gamma, Gamma] via Smith normal form.

The commutator subgroup of Gamma = <gamma, L_{Z^n}> is L_{(B-I)Lambda}, and
gamma^N is the lattice translation by w = N * P_fix(b), so the abelianization
is presented on the generators (gamma, e_1, ..., e_n) by the rows of

    [ 0 | (B - I)^T ]        (one row per lattice basis vector)
    [ N | -w^T      ]        (the relation gamma^N = L_w)

Invariant factors of that matrix give the torsion; the block family always
yields Z (+) Z_2^{j_{r-1} + ... + j_1}, which feeds the spin-structure count
and the eta = -|T|/2 cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidSpec
from .eta import ManifoldSpec, _frac_matvec, analyze, eta_invariant, eta_invariant_magnitude
from .intlinalg import identity, mat_mul, mat_sub, smith_normal_form, snf_diagonal
from .matrices import BlockSpec


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group: free rank plus invariant factors
    d_1 | d_2 | ... (each >= 2; factors equal to 1 are dropped)."""

    free_rank: int
    torsion: tuple

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise InvalidSpec(f"torsion factors {self.torsion} violate divisibility")

    @property
    def torsion_order(self) -> int:
        return math.prod(self.torsion) if self.torsion else 1

    def two_torsion_rank(self) -> int:
        return sum(1 for d in self.torsion if d % 2 == 0)

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z_{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def relation_matrix(spec: ManifoldSpec):
    """Presentation matrix of Gamma^ab on generators (gamma, e_1, ..., e_n)."""
    if spec.translation is None:
        raise InvalidSpec("homology needs the translation vector")
    b = spec.int_matrix()
    n = spec.n
    order = spec.order
    bmi = mat_sub(b, identity(n))
    rows = [[0] + [bmi[j][i] for j in range(n)] for i in range(n)]
    # gamma^N = L_w with w = sum_{i<N} B^i b, necessarily a lattice vector
    power = identity(n)
    w = [Fraction(0)] * n
    for _ in range(order):
        w = [a + f for a, f in zip(w, _frac_matvec(power, spec.translation))]
        power = mat_mul(power, b)
    if any(x.denominator != 1 for x in w):
        raise InvalidSpec(f"gamma^N translation {w} is not a lattice vector")
    rows.append([order] + [-int(x) for x in w])
    return rows


def h1(spec: ManifoldSpec) -> AbelianGroup:
    """H_1(M, Z) from the Smith normal form of the relation matrix."""
    rel = relation_matrix(spec)
    invariants = snf_diagonal(rel)
    free = (spec.n + 1) - len(invariants)
    torsion = tuple(d for d in invariants if d > 1)
    return AbelianGroup(free_rank=free, torsion=torsion)


def h1_closed_form(blocks: BlockSpec) -> AbelianGroup:
    """Z (+) Z_2^{sum j_i} for the block family, with no matrix work."""
    return AbelianGroup(free_rank=1, torsion=(2,) * blocks.total_blocks)


def cohomology_mod2_rank(spec) -> int:
    """dim_F2 H^1(M, Z_2) = free rank + number of even torsion factors.

    Universal coefficients: H^1(M, Z_2) = Hom(H_1, Z_2), and only the free
    part and 2-torsion of H_1 pair nontrivially with Z_2.
    """
    if isinstance(spec, BlockSpec):
        return blocks_total(spec) + 1
    group = h1(spec)
    return group.free_rank + group.two_torsion_rank()


def blocks_total(blocks: BlockSpec) -> int:
    return blocks.total_blocks


def spin_structure_count(spec) -> int:
    """2^{dim H^1(M, Z_2)}."""
    return 2 ** cohomology_mod2_rank(spec)


@dataclass(frozen=True)
class TorsionCheck:
    eta: int
    signed: bool           # eta carries the convention sign, else magnitude only
    torsion_order: int
    spin_structures: int
    passed: bool

    def describe(self) -> str:
        lhs = f"eta = {self.eta}" if self.signed else f"|eta| = {self.eta}"
        return (f"{lhs}, |T| = {self.torsion_order}, "
                f"#Spin = {self.spin_structures}: "
                + ("pass" if self.passed else "FAIL"))


def eta_torsion_check(spec: ManifoldSpec) -> TorsionCheck:
    """Check eta = -|T|/2 and |eta| = #Spin/4 against the homology.

    For specs without a pinned sign convention only the magnitudes are
    compared.  Failures are reported, not raised.
    """
    group = h1(spec)
    torsion = group.torsion_order
    spins = spin_structure_count(spec)
    if spec.metric_known:
        eta = eta_invariant(spec)
        ok = (2 * eta == -torsion) and (4 * abs(eta) == spins)
        return TorsionCheck(eta, True, torsion, spins, ok)
    eta = eta_invariant_magnitude(spec)
    ok = (2 * eta == torsion) and (4 * eta == spins)
    return TorsionCheck(eta, False, torsion, spins, ok)


def smith_form_with_check(matrix):
    """Smith normal form (d, u, v) plus the exact defect u * m * v - d.

    Exposed so callers can assert the transform identity on every SNF the
    homology computations rely on.
    """
    d, u, v = smith_normal_form(matrix)
    prod = mat_mul(mat_mul(u, matrix), v)
    defect = mat_sub(prod, d)
    return d, u, v, defect


def eta_vs_h1_record(spec: ManifoldSpec) -> dict:
    """Observation record for the open question whether H_1 determines eta.

    Purely descriptive: pairs the homology with whatever eta data the spec
    supports, asserting nothing.
    """
    group = h1(spec)
    record = {
        "name": spec.name or None,
        "n": spec.n,
        "order": spec.order,
        "h1": str(group),
        "torsion_order": group.torsion_order,
    }
    try:
        record["eta"] = eta_invariant(spec)
    except Exception:
        record["eta_abs"] = eta_invariant_magnitude(spec)
    record["f_B"] = analyze(spec).f_B
    return record
