"""Named regression fixtures.

* tetracosm: the unique 3-dimensional Z_4-manifold, diag(J_1, 1) with
  translation e_3/4 on the canonical lattice; eta = -1 anchors the sign
  convention.
* nonstandard Z_8: a 7-dimensional manifold whose holonomy diag(K, J_1) is
  integral of order 8 but not a signed permutation; the stabilized lattice is
  known only up to coordinates, so the metric (hence the sign of eta) is not
  pinned and the engine reports |eta| = 2 together with H_1 = Z + Z_2^2.
"""

from __future__ import annotations

from fractions import Fraction

from .eta import ManifoldSpec
from .matrices import BlockSpec, block_diag, make_J


def tetracosm(ell: int = 1) -> ManifoldSpec:
    """diag(J_1, 1) with b = (ell/4) e_3; ell odd twists the translation."""
    return ManifoldSpec.from_blocks(BlockSpec.from_j_tuple(2, (1,), use_j=True),
                                    ell=ell, name="tetracosm")


def tetracosm_reversed() -> ManifoldSpec:
    return tetracosm().reversed_orientation()


# order-8 integral matrix with characteristic polynomial (x - 1)(x^4 + 1),
# stabilizing a rank-5 lattice whose Gram matrix is not part of the fixture
K_MATRIX = (
    (1, 0, 0, 1, 0),
    (0, 0, 1, 0, 0),
    (0, 0, 0, -1, 0),
    (-1, 0, 0, 0, -1),
    (-1, -1, 0, -1, 0),
)


def nonstandard_z8() -> ManifoldSpec:
    """diag(K, J_1) acting in lattice coordinates, translation f_1/4.

    The translation is normalized so that gamma^8 is the translation by the
    primitive fixed vector f_1 - f_5 (the same normalization the block
    family uses); this gives ell_gamma = 2, i.e. a genuine nu = 1 > 0 case,
    and H_1 = Z + Z_2^2.  The lattice geometry is unspecified, so
    metric-level data (sigma, the brute-force sum) is unavailable and the
    engine reports |eta| = 2^{f(B)-2} = 2 only.

    The torsion check is skipped deliberately: in these coordinates every
    translation along f_1 leaves a fixed point for some power (here
    gamma^4 L_{-f_1}: the e_6/e_7 components of the accumulated translation
    vanish because I + J_1 + J_1^2 + J_1^3 = 0, and the f-part pairing is
    integral), so no choice makes the literal affine group torsion-free;
    the fixture reproduces the representation-level invariants only.
    """
    matrix = block_diag([[list(r) for r in K_MATRIX], make_J(1)])
    translation = [Fraction(1, 4)] + [Fraction(0)] * 6
    return ManifoldSpec.explicit(matrix, translation, check_torsion=False,
                                 name="nonstandard-z8")
