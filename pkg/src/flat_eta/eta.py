"""Eta function and eta invariant of the odd signature operator on flat
manifolds with cyclic 2-power holonomy.

A manifold is specified by a holonomy generator B of order N = 2^r acting on
a lattice (canonical Z^n unless a rational basis is supplied) together with a
translation vector b; the group is Gamma = <B L_b, L_Lambda>.  In the
non-trivial cases the whole eta function collapses to

    eta(s) = sigma * 2^{f(B)-1} * (2^{r+1-nu} pi lambda)^(-s)
             * (zeta(s, 1/4) - zeta(s, 3/4)),

so eta = eta(0) = sigma * 2^{f(B)-2}, where f(B) counts the irreducible
factors of the characteristic polynomial, lambda is the norm of the primitive
B-fixed dual vector v, ell = N <v, b> = 2^nu * (odd), and sigma is a sign
pinned down by the orientation of an adapted basis.  The independent check is
the direct finite sum

    eta = -sigma_v * (2^m / N) * sum_k  prod_j sin(k t_j) * cot(pi k ell / N)

over the group elements whose rotation angles avoid pi*Z, evaluated in
extended precision and rounded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from mpmath import mp

from . import trig, zeta
from .charpoly import char_poly, cyclotomic_factor
from .errors import (
    BadDimension,
    FixedRankNotOne,
    InvalidSpec,
    MetricUnknown,
    NotTwoPowerOrder,
    ResidualTooLarge,
)
from .intlinalg import (
    frac_solve,
    identity,
    kernel_basis,
    mat_mul,
    mat_sub,
    solve_integer,
    transpose,
)
from .matrices import (
    BlockSpec,
    angles_from_exponents,
    assemble_B,
    cycle_sort_sign,
    fixed_dim,
    is_orthogonal_integral,
    is_signed_permutation,
    matrix_order,
)


def _frac_matvec(m, v):
    return [sum(Fraction(a) * Fraction(x) for a, x in zip(row, v)) for row in m]


def _to_tuple_matrix(m):
    return tuple(tuple(int(x) for x in row) for row in m)


@dataclass(frozen=True)
class ManifoldSpec:
    """A Z_{2^r}-manifold: holonomy matrix, translation, lattice, orientation.

    matrix is the integral holonomy (action in lattice coordinates);
    translation is in lattice coordinates; lattice, when given, has the basis
    vectors as columns in ambient orthonormal coordinates.  metric_known is
    False when the lattice geometry is unspecified, in which case only
    magnitude-level invariants are available.
    """

    matrix: tuple
    translation: tuple | None
    lattice: tuple | None = None
    orientation: int = 1
    blocks: BlockSpec | None = None
    metric_known: bool = True
    name: str = ""

    @classmethod
    def from_blocks(cls, blocks: BlockSpec, ell: int = 1, orientation: int = 1,
                    name: str = "") -> "ManifoldSpec":
        """Family manifold: B assembled from blocks, b = (ell / 2^r) e_n."""
        if ell <= 0 or ell % 2 == 0:
            raise InvalidSpec(f"translation numerator ell must be odd positive, got {ell}")
        if orientation not in (1, -1):
            raise InvalidSpec("orientation must be +1 or -1")
        m = assemble_B(blocks)
        n = len(m)
        b = [Fraction(0)] * (n - 1) + [Fraction(ell, 2 ** blocks.r)]
        return cls(matrix=_to_tuple_matrix(m), translation=tuple(b),
                   orientation=orientation, blocks=blocks, name=name)

    @classmethod
    def explicit(cls, matrix, translation=None, lattice=None, orientation: int = 1,
                 check_torsion: bool = True, name: str = "") -> "ManifoldSpec":
        """Explicit integral holonomy; lattice basis optional (None = Z^n,
        metric unknown if B is not orthogonal-integral)."""
        if orientation not in (1, -1):
            raise InvalidSpec("orientation must be +1 or -1")
        mat = _to_tuple_matrix(matrix)
        n = len(mat)
        if any(len(row) != n for row in mat):
            raise InvalidSpec("holonomy matrix must be square")
        trans = None
        if translation is not None:
            trans = tuple(Fraction(x) for x in translation)
            if len(trans) != n:
                raise InvalidSpec("translation length mismatch")
        lat = None
        metric_known = is_orthogonal_integral([list(r) for r in mat])
        if lattice is not None:
            lat = tuple(tuple(Fraction(x) for x in row) for row in lattice)
            metric_known = True
        spec = cls(matrix=mat, translation=trans, lattice=lat,
                   orientation=orientation, metric_known=metric_known, name=name)
        if check_torsion and trans is not None:
            torsion, k = group_has_torsion(spec.int_matrix(), trans, spec.order)
            if torsion:
                raise InvalidSpec(f"group has a torsion element at power k={k}")
        return spec

    def int_matrix(self):
        return [list(row) for row in self.matrix]

    @property
    def n(self) -> int:
        return len(self.matrix)

    @property
    def order(self) -> int:
        return _cached_order(self.matrix)

    @property
    def r(self) -> int:
        n = self.order
        if n & (n - 1):
            raise NotTwoPowerOrder(f"order {n} is not a power of two")
        return n.bit_length() - 1

    def with_generator_power(self, g: int) -> "ManifoldSpec":
        """Same group presented by the generator gamma^g (g odd, coprime to N)."""
        if g % 2 == 0 or g < 1:
            raise InvalidSpec("generator power must be odd and positive")
        if self.translation is None:
            raise InvalidSpec("generator power needs a translation vector")
        b0 = self.int_matrix()
        n = self.n
        power = identity(n)
        acc = [Fraction(0)] * n
        for _ in range(g):
            acc = [a + f for a, f in zip(acc, _frac_matvec(power, self.translation))]
            power = mat_mul(power, b0)
        return ManifoldSpec(matrix=_to_tuple_matrix(power), translation=tuple(acc),
                            lattice=self.lattice, orientation=self.orientation,
                            metric_known=self.metric_known,
                            name=self.name and f"{self.name}^({g})")

    def reversed_orientation(self) -> "ManifoldSpec":
        return ManifoldSpec(matrix=self.matrix, translation=self.translation,
                            lattice=self.lattice, orientation=-self.orientation,
                            blocks=self.blocks, metric_known=self.metric_known,
                            name=self.name and self.name + "-")


@lru_cache(maxsize=None)
def _cached_order(matrix_tuple):
    return matrix_order([list(r) for r in matrix_tuple])


def group_has_torsion(b, beta, order):
    """Exact torsion test for <B L_beta, L_{Z^n}>.

    gamma^k L_{-lam} has a fixed point iff the projection of its translation
    onto the fixed space of B^k lands in the projected lattice; both sides are
    rational, so the test is an integer linear solve.  Returns (flag, k).
    """
    n = len(b)
    power = identity(n)
    acc = [Fraction(0)] * n
    for k in range(1, order):
        acc = [a + f for a, f in zip(acc, _frac_matvec(power, beta))]
        power = mat_mul(power, b)
        a_mat = mat_sub(identity(n), power)
        left_kernel = kernel_basis(transpose(a_mat))
        if not left_kernel:
            # rotational part has no fixed vector: a fixed point always exists
            return True, k
        pairings = [sum(Fraction(wi) * ci for wi, ci in zip(w, acc)) for w in left_kernel]
        den = math.lcm(*(p.denominator for p in pairings))
        target = [int(p * den) for p in pairings]
        scaled = [[wi * den for wi in w] for w in left_kernel]
        if solve_integer(scaled, target) is not None:
            return True, k
    return False, None


@dataclass(frozen=True)
class HolonomyData:
    """Derived invariants of a holonomy generator gamma = B L_b."""

    order: int                      # N = 2^r
    r: int
    n: int
    fixed_dimension: int            # n_B
    angles: tuple                   # Fractions of pi, canonical order
    c_exponents: tuple              # ((d, c_d), ...) sorted by d
    f_B: int
    v_B: tuple | None               # primitive fixed dual vector (lattice coords)
    lambda_B_sq: Fraction | None    # |v_B|^2, exact
    ell_gamma: int | None           # N <v_B, b>
    nu: int | None                  # 2-adic valuation of ell_gamma
    ell_odd: int | None
    sigma_vB: int | None            # +1/-1, None when the metric is unknown
    in_prime_set: bool              # gamma lies in (Lambda \ Gamma)'

    @property
    def lambda_B(self) -> float:
        return math.sqrt(float(self.lambda_B_sq)) if self.lambda_B_sq is not None else None

    def exponent(self, d: int) -> int:
        return dict(self.c_exponents).get(d, 0)


def analyze(spec: ManifoldSpec) -> HolonomyData:
    """All invariants of gamma = B L_b needed by the eta formulas.

    v_B generates the rank-one fixed sublattice of the dual lattice (exact
    integer kernel of B^T - I), sign-normalized so that <v_B, b> > 0.
    Raises FixedRankNotOne when that rank is not one (the eta = 0 path).
    """
    return _analyze_cached(spec)


@lru_cache(maxsize=None)
def _analyze_cached(spec: ManifoldSpec) -> HolonomyData:
    b = spec.int_matrix()
    n = spec.n
    order = spec.order
    r = spec.r
    n_b = fixed_dim(b)
    exps = cyclotomic_factor(char_poly(b))
    angles = tuple(angles_from_exponents(exps))
    f_b = sum(exps.values())
    in_prime = n_b == 1 and exps.get(2, 0) == 0 and r >= 2

    kernel = kernel_basis(mat_sub(transpose(b), identity(n)))
    if len(kernel) != 1:
        raise FixedRankNotOne(
            f"(Lambda*)^B has rank {len(kernel)}, expected 1 (n_B = {n_b})")
    v = kernel[0]

    ell_gamma = nu = ell_odd = None
    lambda_sq = None
    if spec.translation is not None:
        pairing = sum(Fraction(vi) * bi for vi, bi in zip(v, spec.translation))
        if pairing < 0:
            v = [-x for x in v]
            pairing = -pairing
        ell_frac = order * pairing
        if ell_frac.denominator != 1:
            raise InvalidSpec(f"N <v_B, b> = {ell_frac} is not an integer")
        ell_gamma = int(ell_frac)
        if ell_gamma == 0:
            raise InvalidSpec("<v_B, b> = 0: gamma^N would be the identity")
        nu, ell_odd = 0, ell_gamma
        while ell_odd % 2 == 0:
            ell_odd //= 2
            nu += 1

    if spec.lattice is None:
        lambda_sq = Fraction(sum(x * x for x in v))
    else:
        gram = _lattice_gram(spec.lattice)
        z = frac_solve(gram, [Fraction(x) for x in v])
        lambda_sq = sum(Fraction(vi) * zi for vi, zi in zip(v, z))

    sigma = None
    if spec.metric_known and in_prime:
        sigma = spec.orientation * _sigma_vB(spec, angles, v)

    return HolonomyData(
        order=order, r=r, n=n, fixed_dimension=n_b, angles=angles,
        c_exponents=tuple(sorted(exps.items())), f_B=f_b,
        v_B=tuple(v), lambda_B_sq=lambda_sq,
        ell_gamma=ell_gamma, nu=nu, ell_odd=ell_odd,
        sigma_vB=sigma, in_prime_set=in_prime,
    )


def _lattice_gram(lattice):
    cols = len(lattice[0])
    return [[sum(Fraction(lattice[k][i]) * Fraction(lattice[k][j])
                 for k in range(len(lattice))) for j in range(cols)]
            for i in range(cols)]


def _sigma_vB(spec: ManifoldSpec, angles, v):
    """Sign convention for the conjugacy class of B in the rotation torus.

    Builds an adapted basis: for each rotation plane, taken in the canonical
    angle order, an oriented pair (u, (Bu - cos t u)/sin t); the fixed
    direction v_B comes last.  The determinant sign of that frame separates
    the classes x(t_1, ..., t_m) and x(-t_1, t_2, ..., t_m).  For signed
    permutation matrices the frame is measured against cycle-sorted
    coordinate order (the cycle_sort_sign factor); this is the convention
    that assigns +1 to every block-family assembly while diag(J_1, 1) with
    b = e_3/4 anchors the tetracosm at +1 and its cube at -1.  It is a
    pinned convention, not a derived invariant.
    """
    b_int = np.array(spec.int_matrix(), dtype=float)
    if spec.lattice is None:
        b_real = b_int
        v_real = np.array([float(x) for x in v])
    else:
        lat = np.array([[float(Fraction(x)) for x in row] for row in spec.lattice])
        b_real = lat @ b_int @ np.linalg.inv(lat)
        v_real = np.linalg.solve(lat.T, np.array([float(Fraction(x)) for x in v]))
    if not np.allclose(b_real @ b_real.T, np.eye(len(b_real)), atol=1e-9):
        raise MetricUnknown("holonomy is not orthogonal in the given lattice metric")

    evals, evecs = np.linalg.eig(b_real)
    mult: dict = {}
    for t in angles:
        mult[t] = mult.get(t, 0) + 1
    columns = []
    for t in sorted(mult, key=lambda f: (-f.denominator, f.numerator)):
        if t == 1:
            raise MetricUnknown("sigma undefined in the presence of angle pi")
        lam = complex(np.exp(1j * np.pi * float(t)))
        idx = [i for i in range(len(evals)) if abs(evals[i] - lam) < 1e-8]
        if len(idx) != mult[t]:
            raise ArithmeticError(
                f"eigenvalue multiplicity mismatch at angle {t}*pi")
        basis, _ = np.linalg.qr(evecs[:, idx])
        cos_t = math.cos(math.pi * float(t))
        sin_t = math.sin(math.pi * float(t))
        for col in range(basis.shape[1]):
            w = basis[:, col]
            if (w @ w).real < 0:  # keep the real part dominant
                w = 1j * w
            u = np.real(w)
            u /= np.linalg.norm(u)
            plane = (b_real @ u - cos_t * u) / sin_t
            columns.append(u)
            columns.append(plane / np.linalg.norm(plane))
    columns.append(v_real / np.linalg.norm(v_real))
    frame = np.column_stack(columns)
    det = float(np.linalg.det(frame))
    if abs(det) < 1e-6:
        raise ArithmeticError(f"adapted-basis frame is degenerate (det={det})")
    sign = 1 if det > 0 else -1
    b_lattice = spec.int_matrix()
    if is_signed_permutation(b_lattice):
        sign *= cycle_sort_sign(b_lattice)
    return sign


def _require_dim_3_mod_4(spec: ManifoldSpec):
    if spec.n % 4 != 3:
        raise BadDimension(f"dimension {spec.n} is not congruent to 3 mod 4")


def _sigma_gamma(sigma_vB: int, ell_odd: int) -> int:
    return -sigma_vB * trig.alternating_sign(ell_odd)


def eta_invariant(spec: ManifoldSpec) -> int:
    """Exact eta invariant via the closed form sigma * 2^{f(B)-2}.

    Zero when r = 1, the fixed space is bigger than a line, some rotation
    angle is a multiple of pi, or nu > r - 2; otherwise the sign is
    sigma = -sigma_vB * (-1)^{[ell/2]} with ell the odd part of ell_gamma.
    """
    _require_dim_3_mod_4(spec)
    try:
        data = analyze(spec)
    except FixedRankNotOne:
        return 0
    if not data.in_prime_set:
        return 0
    if data.ell_gamma is None:
        raise MetricUnknown("translation unknown; use eta_invariant_magnitude")
    if data.nu > data.r - 2:
        return 0
    if data.sigma_vB is None:
        raise MetricUnknown("sign convention needs a known lattice metric")
    return _sigma_gamma(data.sigma_vB, data.ell_odd) * 2 ** (data.f_B - 2)


def eta_invariant_magnitude(spec: ManifoldSpec) -> int:
    """|eta| from the integral representation alone: 2^{f(B)-2} or 0.

    Valid for specs whose metric data (lattice, translation) is not pinned
    down, assuming the group is genuinely torsion-free with nu <= r - 2.
    """
    _require_dim_3_mod_4(spec)
    try:
        data = analyze(spec)
    except FixedRankNotOne:
        return 0
    if not data.in_prime_set:
        return 0
    return 2 ** (data.f_B - 2)


def eta_invariant_bruteforce(spec: ManifoldSpec) -> int:
    """Independent oracle: the finite cotangent sum, rounded to an integer.

    eta = -sigma_v (2^m/N) sum over k with gamma^k in (Lambda \\ Gamma)' of
    prod_j sin(k t_j) * cot(pi k ell / N), evaluated in extended precision;
    raises ResidualTooLarge if the result does not round cleanly.
    """
    _require_dim_3_mod_4(spec)
    try:
        data = analyze(spec)
    except FixedRankNotOne:
        return 0
    m = (spec.n - 1) // 2
    order = data.order
    qualifying = []
    for k in range(1, order):
        if data.fixed_dimension == 1 and all((k * t) % 1 != 0 for t in data.angles):
            qualifying.append(k)
    if not qualifying:
        return 0
    if data.ell_gamma is None or data.sigma_vB is None:
        raise MetricUnknown("brute-force sum needs translation and sign data")
    with trig.workprec():
        total = mp.zero
        for k in qualifying:
            term = mp.one
            for t in data.angles:
                term *= trig.sin_pi(k * t)
            term *= trig.cot_pi(Fraction(k * data.ell_gamma, order))
            total += term
        value = -data.sigma_vB * mp.mpf(2 ** m) / order * total
        nearest = int(mp.nint(value))
        residual = abs(value - nearest)
        if residual > 1e-6:
            raise ResidualTooLarge(
                f"cotangent sum {value} is {residual} away from an integer")
        return nearest


@dataclass(frozen=True)
class EtaClosedForm:
    """eta(s) = sigma * 2^{f_B - 1} * (2^{r+1-nu} pi lambda)^(-s)
                * (zeta(s,1/4) - zeta(s,3/4)); zero form when is_zero."""

    is_zero: bool
    sigma: int | None = None
    f_B: int | None = None
    r: int | None = None
    nu: int | None = None
    lambda_B: float | None = None

    @property
    def scale(self) -> float:
        return 2 ** (self.r + 1 - self.nu) * math.pi * self.lambda_B

    def eta0(self) -> int:
        if self.is_zero:
            return 0
        return self.sigma * 2 ** (self.f_B - 2)

    def evaluate(self, s) -> float:
        """Pointwise value of eta(s), via L(s, chi_4) so s = 1 is fine."""
        if self.is_zero:
            return 0.0
        if self.sigma is None:
            raise MetricUnknown("closed form carries no sign")
        with trig.workprec():
            base = mp.mpf(2 ** (self.r - 1 - self.nu)) * mp.pi * self.lambda_B
            val = self.sigma * mp.mpf(2 ** (self.f_B - 1)) \
                * mp.power(base, -mp.mpf(s)) * zeta.l_chi4(s)
            return float(val)


def eta_closed_form(spec: ManifoldSpec) -> EtaClosedForm:
    """The (sigma, f(B), r, nu, lambda) record of eta(s), or the zero form."""
    _require_dim_3_mod_4(spec)
    try:
        data = analyze(spec)
    except FixedRankNotOne:
        return EtaClosedForm(is_zero=True)
    if not data.in_prime_set:
        return EtaClosedForm(is_zero=True)
    if data.ell_gamma is None:
        raise MetricUnknown("translation unknown; closed form needs nu")
    if data.nu > data.r - 2:
        return EtaClosedForm(is_zero=True)
    sigma = None
    if data.sigma_vB is not None:
        sigma = _sigma_gamma(data.sigma_vB, data.ell_odd)
    return EtaClosedForm(is_zero=False, sigma=sigma, f_B=data.f_B,
                         r=data.r, nu=data.nu, lambda_B=data.lambda_B)


# re-exported special functions (they belong to the eta engine's surface)
hurwitz_zeta = zeta.hurwitz_zeta
l_chi4 = zeta.l_chi4
