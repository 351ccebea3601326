"""Integer orthogonal holonomy matrices and their elementary invariants.

The building blocks are the 2^r x 2^r matrices C_r (companion matrix of
x^{2^r} + 1) and J_r (the recursive block form with J_0 = (-1)); both lie in
SO(2^r, Z), have order 2^{r+1} and characteristic polynomial x^{2^r} + 1.
Block-diagonal assemblies diag(C/J blocks, 1) of odd size are the holonomy
generators used throughout; this module derives their order, fixed space,
cycle structure and exact rotation angles.

Angles are rational multiples of pi, kept as reduced Fractions in (0, 1]
(value = fraction * pi), never floats, so multiset comparisons are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import charpoly as _charpoly
from .errors import (
    InvalidSpec,
    NotFiniteOrder,
    NotSignedPermutation,
    NotTwoPowerOrder,
)
from .intlinalg import (
    IntMatrix,
    bareiss_det,
    bareiss_rank,
    identity,
    mat_mul,
    mat_sub,
)

ORDER_CAP = 2 ** 16  # matrix_order gives up beyond this many multiplications


def make_C(r: int) -> IntMatrix:
    """Companion matrix of x^{2^r} + 1: -1 in the top-right corner, identity
    in the subdiagonal block.  Size 2^r, order 2^{r+1}, determinant +1."""
    if r < 1:
        raise InvalidSpec(f"make_C requires r >= 1, got {r}")
    n = 2 ** r
    m = [[0] * n for _ in range(n)]
    m[0][n - 1] = -1
    for i in range(n - 1):
        m[i + 1][i] = 1
    return m


def make_J(r: int) -> IntMatrix:
    """Recursive block matrix J_r = [[0, J_{r-1}], [I, 0]] with J_0 = (-1).

    Same size, order, determinant and characteristic polynomial as make_C(r),
    but generally a different integral representation (J_1 = C_1).
    """
    if r < 1:
        raise InvalidSpec(f"make_J requires r >= 1, got {r}")
    prev = [[-1]]
    for k in range(1, r + 1):
        h = 2 ** (k - 1)
        m = [[0] * (2 * h) for _ in range(2 * h)]
        for i in range(h):
            for j in range(h):
                m[i][h + j] = prev[i][j]
        for i in range(h):
            m[h + i][i] = 1
        prev = m
    return prev


def block_diag(blocks) -> IntMatrix:
    n = sum(len(b) for b in blocks)
    m = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                m[off + i][off + j] = b[i][j]
        off += k
    return m


@dataclass(frozen=True)
class BlockSpec:
    """Block multiset for an assembled holonomy generator.

    counts maps block size index i (block is 2^i x 2^i) to a pair
    (#C_i, #J_i).  Conventions: i runs over 1..r-1, the top size must be
    populated (so the order is exactly 2^r), j_1 = #size-2 blocks is odd
    (forced by dimension 3 mod 4), and since C_1 = J_1 all size-2 blocks are
    counted as C (k'_1 = 0).
    """

    r: int
    counts: tuple = field(default=())  # tuple of (i, c_count, j_count), i descending

    def __post_init__(self):
        if self.r < 2:
            raise InvalidSpec("BlockSpec requires r >= 2")
        seen = set()
        for i, c, j in self.counts:
            if not (1 <= i <= self.r - 1):
                raise InvalidSpec(f"block size index {i} outside 1..{self.r - 1}")
            if i in seen:
                raise InvalidSpec(f"duplicate block size index {i}")
            seen.add(i)
            if c < 0 or j < 0:
                raise InvalidSpec("block counts must be nonnegative")
            if i == 1 and j != 0:
                raise InvalidSpec("size-2 blocks are all C_1 (J_1 = C_1); use C counts")
        top = self.j_count(self.r - 1)
        if top < 1:
            raise InvalidSpec("need at least one block of the top size 2^{r-1}")
        if self.j_count(1) % 2 != 1:
            raise InvalidSpec("j_1 (number of size-2 blocks) must be odd")
        object.__setattr__(
            self, "counts", tuple(sorted(self.counts, key=lambda t: -t[0]))
        )

    @classmethod
    def from_j_tuple(cls, r: int, j_tuple, use_j: bool = False) -> "BlockSpec":
        """j_tuple = (j_{r-1}, ..., j_1); all-C by default, all-J if use_j."""
        counts = []
        for idx, j in zip(range(r - 1, 0, -1), j_tuple):
            if j:
                if use_j and idx > 1:
                    counts.append((idx, 0, j))
                else:
                    counts.append((idx, j, 0))
        return cls(r, tuple(counts))

    def j_count(self, i: int) -> int:
        for idx, c, j in self.counts:
            if idx == i:
                return c + j
        return 0

    def j_tuple(self):
        return tuple(self.j_count(i) for i in range(self.r - 1, 0, -1))

    @property
    def dimension(self) -> int:
        return sum((2 ** i) * (c + j) for i, c, j in self.counts) + 1

    @property
    def total_blocks(self) -> int:
        """Number of rotation blocks (= f(B) - 1 for the assembled matrix)."""
        return sum(c + j for _, c, j in self.counts)


def assemble_B(spec: BlockSpec) -> IntMatrix:
    """diag(C_{r-1} x k_{r-1}, J_{r-1} x k'_{r-1}, ..., C_1 x j_1, 1).

    Sizes descend, C blocks precede J blocks within a size, and a trailing
    1 x 1 identity supplies the fixed axis, so output is byte-reproducible.
    """
    blocks = []
    for i, c, j in spec.counts:  # counts already sorted by descending i
        blocks.extend(make_C(i) for _ in range(c))
        blocks.extend(make_J(i) for _ in range(j))
    blocks.append([[1]])
    return block_diag(blocks)


def matrix_order(b: IntMatrix, cap: int = ORDER_CAP) -> int:
    """Least N >= 1 with B^N = I, by repeated multiplication."""
    n = len(b)
    ident = identity(n)
    power = b
    for k in range(1, cap + 1):
        if power == ident:
            return k
        power = mat_mul(power, b)
    raise NotFiniteOrder(f"no power up to {cap} equals the identity")


def fixed_dim(b: IntMatrix) -> int:
    """dim of the fixed space = n - rank(B - I), exactly over Q."""
    n = len(b)
    return n - bareiss_rank(mat_sub(b, identity(n)))


def is_signed_permutation(b: IntMatrix) -> bool:
    n = len(b)
    for row in b:
        nz = [x for x in row if x != 0]
        if len(nz) != 1 or nz[0] not in (1, -1):
            return False
    for j in range(n):
        if sum(1 for i in range(n) if b[i][j] != 0) != 1:
            return False
    return True


def is_orthogonal_integral(b: IntMatrix) -> bool:
    """Signed permutation with determinant +1 (i.e. lies in SO(n, Z))."""
    return is_signed_permutation(b) and bareiss_det(b) == 1


def signed_permutation(b: IntMatrix):
    """The underlying permutation i -> j with B e_i = +/- e_j."""
    if not is_signed_permutation(b):
        raise NotSignedPermutation("matrix is not a signed permutation")
    n = len(b)
    perm = [0] * n
    for i in range(n):
        for j in range(n):
            if b[j][i] != 0:
                perm[i] = j
                break
    return perm


def cycle_count(b: IntMatrix) -> int:
    """Number of orbits of the induced permutation, fixed points included."""
    perm = signed_permutation(b)
    seen = [False] * len(perm)
    orbits = 0
    for i in range(len(perm)):
        if not seen[i]:
            orbits += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
    return orbits


def cycle_sort_sign(b: IntMatrix) -> int:
    """Parity of relabeling each orbit from index order to visiting order.

    For a signed permutation matrix, every orbit (i_1 < i_2 < ... < i_L) is
    visited in some order starting from its smallest index; the product over
    orbits of the sign of that relabeling permutation measures how the
    coordinate labels of b differ from a cycle-sorted normal form.  (For the
    recursive block family the visiting order is a bit reversal, which is odd
    exactly for 4-cycles, i.e. for the size-4 recursive block.)
    """
    perm = signed_permutation(b)
    sign = 1
    seen = set()
    for start in range(len(perm)):
        if start in seen:
            continue
        orbit = [start]
        seen.add(start)
        j = perm[start]
        while j != start:
            orbit.append(j)
            seen.add(j)
            j = perm[j]
        position = {v: k for k, v in enumerate(sorted(orbit))}
        relabel = [position[v] for v in orbit]
        length = len(relabel)
        visited = [False] * length
        cycles = 0
        for s in range(length):
            if not visited[s]:
                cycles += 1
                t = s
                while not visited[t]:
                    visited[t] = True
                    t = relabel[t]
        sign *= (-1) ** (length - cycles)
    return sign


def rotation_angles(b: IntMatrix):
    """Rotation angle multiset of a 2-power-order matrix, as Fractions of pi.

    Read off the cyclotomic exponents c_d of the characteristic polynomial:
    divisor d = 2^k (k >= 2) contributes the angles j*pi/2^{k-1} for odd
    j < 2^{k-1}, each with multiplicity c_d, and d = 2 contributes pi with
    multiplicity c_2.  No floating eigensolve is involved.  Canonical order:
    descending denominator, then ascending numerator.
    """
    n = matrix_order(b)
    if n & (n - 1):
        raise NotTwoPowerOrder(f"order {n} is not a power of two")
    exps = _charpoly.cyclotomic_factor(_charpoly.char_poly(b))
    return angles_from_exponents(exps)


def angles_from_exponents(exps):
    angles = []
    for d in sorted(exps, reverse=True):
        c = exps[d]
        if c == 0 or d == 1:
            continue
        if d == 2:
            angles.extend([Fraction(1)] * c)
        else:
            half = d // 2  # angle denominator 2^{k-1}
            for num in range(1, half, 2):
                angles.extend([Fraction(num, half)] * c)
    return angles
