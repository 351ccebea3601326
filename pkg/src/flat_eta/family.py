"""The explicit family of Z_{2^r}-manifolds built from C_i / J_i blocks.

A dimension-n member is determined by a tuple (j_{r-1}, ..., j_1) with
n = sum 2^i j_i + 1, j_{r-1} >= 1 and j_1 odd, refined by a C/J split of each
size class.  This module enumerates the family per dimension, computes the
dimension-counting functions tau(n), n_r, n_{r,k}, realizes every attainable
eta value by an explicit witness (the block-splitting construction), builds
the constant-eta families, and renders the two reference tables.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadDimension, Unattainable
from .eta import ManifoldSpec
from .matrices import BlockSpec


def tau(n: int) -> int:
    """Number of ones in the binary expansion of n."""
    if n < 1:
        raise BadDimension(f"tau needs n >= 1, got {n}")
    return bin(n).count("1")


def n_r(r: int) -> int:
    """Least dimension of a Z_{2^r}-manifold with nonzero eta: 3 if r = 2,
    else 2^{r-1} + 3."""
    if r < 2:
        raise BadDimension(f"n_r needs r >= 2, got {r}")
    return 3 if r == 2 else 2 ** (r - 1) + 3


def n_rk(r: int, k: int) -> int:
    """Least dimension of a Z_{2^r}-manifold with |eta| = 2^k.

    For r >= 3 this is n_r + 4*floor(k/2).  For r = 2 only even exponents
    occur (f(B) = j_1 + 1 with j_1 odd), attained in dimension 3 + 2k.
    """
    if r == 2:
        if k % 2 != 0:
            raise Unattainable(f"|eta| = 2^{k} is not attained with r = 2")
        return 3 + 2 * k
    if r < 2 or k < 1:
        raise BadDimension(f"n_rk needs r >= 3, k >= 1 (or r = 2), got r={r}, k={k}")
    return n_r(r) + 4 * (k // 2)


def binary_partitions(n: int, max_part: int | None = None) -> int:
    """Number of partitions of n into powers of two (optionally <= max_part)."""
    if n < 0:
        raise BadDimension("binary_partitions needs n >= 0")
    parts = []
    p = 1
    while p <= max(n, 1):
        if max_part is None or p <= max_part:
            parts.append(p)
        p *= 2
    counts = [0] * (n + 1)
    counts[0] = 1
    for part in parts:
        for total in range(part, n + 1):
            counts[total] += counts[total - part]
    return counts[n]


def _check_dim(n: int):
    if n < 3 or n % 4 != 3:
        raise BadDimension(f"dimension must be 3 mod 4 and >= 3, got {n}")


def enumerate_j_tuples(n: int, r: int):
    """All (j_{r-1}, ..., j_1) with sum 2^i j_i = n - 1, j_{r-1} >= 1, j_1 odd,
    in descending lexicographic order."""
    _check_dim(n)
    if r < 2:
        return []

    sizes = [2 ** i for i in range(r - 1, 0, -1)]

    results = []

    def fill(idx, remaining, acc):
        if idx == len(sizes) - 1:
            # size-2 slot: j_1 must be odd and consume the remainder exactly
            if remaining % 2 == 0 and remaining >= 2:
                j1 = remaining // 2
                if j1 % 2 == 1:
                    results.append(tuple(acc + [j1]))
            return
        size = sizes[idx]
        low = 1 if idx == 0 else 0
        for count in range(remaining // size, low - 1, -1):
            fill(idx + 1, remaining - count * size, acc + [count])

    fill(0, n - 1, [])
    return results


def count_j_tuples(n: int, r: int) -> int:
    """Number of family j-tuples in dimension n for a fixed holonomy order 2^r."""
    return len(enumerate_j_tuples(n, r))


def max_family_r(n: int) -> int:
    """Largest r with a nonzero-eta Z_{2^r}-manifold in dimension n."""
    _check_dim(n)
    r = 2
    while n_r(r + 1) <= n:
        r += 1
    return r


def _cj_splits(j_tuple, r):
    """All C/J count assignments of a j-tuple; sizes 2 have no J variant."""
    sizes = list(range(r - 1, 0, -1))
    options = []
    for i, j in zip(sizes, j_tuple):
        if i == 1:
            options.append([(j, 0)] if j else [(0, 0)])
        else:
            options.append([(j - t, t) for t in range(j + 1)])
    splits = [[]]
    for opts in options:
        splits = [s + [o] for s in splits for o in opts]
    return [tuple(s) for s in splits]


def enumerate_family(n: int, r: int | None = None, expand_cj: bool = False):
    """All family BlockSpecs of dimension n (optionally fixed r).

    Collapsed mode returns one all-C representative per j-tuple; expand_cj
    emits every C/J assignment (sizes >= 4 only, since C_1 = J_1).  Order is
    deterministic: r ascending, j-tuples descending lexicographically, C
    counts descending.
    """
    _check_dim(n)
    rs = [r] if r is not None else list(range(2, max_family_r(n) + 1))
    specs = []
    for rr in rs:
        for j_tuple in enumerate_j_tuples(n, rr):
            if not expand_cj:
                specs.append(BlockSpec.from_j_tuple(rr, j_tuple))
                continue
            sizes = list(range(rr - 1, 0, -1))
            for split in _cj_splits(j_tuple, rr):
                counts = tuple((i, c, j) for i, (c, j) in zip(sizes, split) if c or j)
                specs.append(BlockSpec(rr, counts))
    return specs


@dataclass(frozen=True)
class DimensionProfile:
    """Attainable eta data in one dimension: tau, the largest holonomy
    order exponent, and the exponent window {tau(n)-2, ..., m-1}."""

    n: int
    tau: int
    max_r: int
    eta_exponents: tuple          # exponents k with +/- 2^k attainable
    witnesses: tuple              # ((k, BlockSpec), ...) one per exponent


def splitting_block_sequence(n: int):
    """Witness chain realizing every attainable exponent in dimension n.

    Start from the 2-adic expansion of n - 1 (tau(n) - 1 blocks, the fewest
    possible), then repeatedly split one largest block of size 2^i into two
    of size 2^{i-1}; each step adds one block, raising the exponent by one,
    until everything is size 2.
    """
    _check_dim(n)
    sizes = []
    bit = 1
    rest = n - 1
    while rest:
        if rest & bit:
            sizes.append(bit)
            rest ^= bit
        bit <<= 1
    sizes.sort(reverse=True)

    def to_blockspec(size_list):
        r = size_list[0].bit_length() - 1 + 1  # largest block 2^{r-1}
        j_tuple = tuple(size_list.count(2 ** i) for i in range(r - 1, 0, -1))
        return BlockSpec.from_j_tuple(r, j_tuple, use_j=True)

    chain = []
    current = sizes[:]
    exponent = len(current) - 1
    chain.append((exponent, to_blockspec(current)))
    while max(current) > 2:
        big = max(current)
        current.remove(big)
        current.extend([big // 2, big // 2])
        current.sort(reverse=True)
        exponent += 1
        chain.append((exponent, to_blockspec(current)))
    return chain


def image_eta(n: int) -> DimensionProfile:
    """Attainable |eta| exponents in dimension n, with explicit witnesses."""
    _check_dim(n)
    chain = splitting_block_sequence(n)
    exponents = tuple(k for k, _ in chain)
    m = (n - 1) // 2
    assert exponents[0] == tau(n) - 2 and exponents[-1] == m - 1
    return DimensionProfile(n=n, tau=tau(n), max_r=max_family_r(n),
                            eta_exponents=exponents, witnesses=tuple(chain))


def eta_zero_witness(n: int):
    """A Z_{2^r}-manifold of dimension n with eta = 0 (outside the family).

    Take the minimal-block witness and replace one size-2 rotation block by
    -I_2; the -1 eigenvalues force the symmetric-spectrum path.  For n = 3
    this degenerates to the Z_2-manifold diag(-1, -1, 1).
    """
    from .matrices import assemble_B, block_diag, make_J

    _check_dim(n)
    if n == 3:
        matrix = [[-1, 0, 0], [0, -1, 0], [0, 0, 1]]
        order = 2
    else:
        start = splitting_block_sequence(n)[0][1]
        sizes = []
        for i, c, j in start.counts:
            sizes.extend([i] * (c + j))
        sizes.remove(1)  # one J_1 becomes -I
        blocks = [make_J(i) for i in sizes]
        blocks.append([[-1, 0], [0, -1]])
        blocks.append([[1]])
        matrix = block_diag(blocks)
        order = 2 ** start.r
    from fractions import Fraction

    translation = [Fraction(0)] * (len(matrix) - 1) + [Fraction(1, order)]
    return ManifoldSpec.explicit(matrix, translation, name=f"eta-zero dim {n}")


def constant_eta_family(k: int, r_max: int):
    """One minimal-dimension spec per r in 2..r_max with |eta| = 2^k.

    Witnesses follow the block recipe: diag(J_{r-1}, J_2, J_1 x (k-1), 1) for
    k even, diag(J_{r-1}, J_1 x k, 1) for k odd; for r = 2 (k even) the
    matrix is diag(J_1 x (k+1), 1).
    """
    if k < 1:
        raise Unattainable("constant-eta families need k >= 1")
    specs = []
    for r in range(2, r_max + 1):
        if r == 2:
            if k % 2 != 0:
                continue
            blocks = BlockSpec.from_j_tuple(2, (k + 1,), use_j=True)
        elif k % 2 == 0:
            j_tuple = [1] + [0] * (r - 4) + [1, k - 1] if r >= 4 else [2, k - 1]
            blocks = BlockSpec.from_j_tuple(r, tuple(j_tuple), use_j=True)
        else:
            j_tuple = [1] + [0] * (r - 3) + [k]
            blocks = BlockSpec.from_j_tuple(r, tuple(j_tuple), use_j=True)
        spec = ManifoldSpec.from_blocks(blocks, name=f"G_{k} member r={r}")
        assert blocks.dimension == n_rk(r, k)
        specs.append(spec)
    return specs


# ---------------------------------------------------------------- tables --


@dataclass(frozen=True)
class EtaTableRow:
    n: int
    expansion: str
    tau: int
    max_r: int
    exponents: tuple


def _expansion_string(n: int) -> str:
    powers = [2 ** i for i in range(n.bit_length() - 1, -1, -1) if n & (2 ** i)]
    label = f"{n}=" + "+".join(str(p) for p in powers)
    for r in range(2, 40):
        if n_r(r) == n:
            label += f"=n_{r}"
            break
    return label


def table_eta_by_dim(n_max: int):
    """Rows (dimension, 2-adic expansion, tau, max r, exponent window) for
    every n = 3 mod 4 up to n_max."""
    rows = []
    for n in range(3, n_max + 1, 4):
        profile = image_eta(n)
        rows.append(EtaTableRow(n=n, expansion=_expansion_string(n),
                                tau=profile.tau, max_r=profile.max_r,
                                exponents=profile.eta_exponents))
    return rows


def _eta_value_str(k: int) -> str:
    return {0: "1", 1: "2"}.get(k, f"2^{k}")


def _eta_list_str(exponents) -> str:
    values = ["0"] + [_eta_value_str(k) for k in exponents]
    if len(exponents) > 5:
        values = values[:3] + ["...", _eta_value_str(exponents[-1])]
    return ", ".join(values)


def render_table1(rows) -> str:
    width = max(len(r.expansion) for r in rows) + 2
    lines = ["dimension n".ljust(width) + "tau  max r  eta-invariant"]
    lines.append("-" * (width + 26))
    for r in rows:
        lines.append(r.expansion.ljust(width) + f"{r.tau:<5}{r.max_r:<7}"
                     + _eta_list_str(r.exponents))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Eta8Row:
    n: int
    partition: tuple      # block sizes descending, including the trailing 1
    j_counts: tuple       # counts of sizes 16, 8, 4, 2, 1
    r: int

    @property
    def group(self) -> str:
        return f"Z_{2 ** self.r}"


def table_eta8(n_max: int):
    """All family members (collapsed over C/J) with |eta| = 8 and dim <= n_max.

    |eta| = 2^3 forces exactly four rotation blocks; rows are sorted by
    dimension, then by the block partition.
    """
    rows = []
    for n in range(3, n_max + 1, 4):
        for r in range(2, max_family_r(n) + 1):
            for j_tuple in enumerate_j_tuples(n, r):
                if sum(j_tuple) != 4:
                    continue
                sizes = []
                for i, j in zip(range(r - 1, 0, -1), j_tuple):
                    sizes.extend([2 ** i] * j)
                sizes.sort(reverse=True)
                partition = tuple(sizes + [1])
                counts = tuple(partition.count(s) for s in (16, 8, 4, 2, 1))
                rows.append(Eta8Row(n=n, partition=partition, j_counts=counts, r=r))
    rows.sort(key=lambda row: (row.n, row.partition))
    return rows


def render_table3(rows) -> str:
    lines = ["dim  partition of n     J4  J3  J2  J1  J0  r  F"]
    lines.append("-" * len(lines[0]))
    for row in rows:
        part = "+".join(str(p) for p in row.partition)
        counts = "".join(f"{c:<4}" for c in row.j_counts)
        lines.append(f"{row.n:<5}{part:<19}{counts}{row.r:<3}{row.group}")
    return "\n".join(lines) + "\n"


# ------------------------------------------------- experimental searches --


def z_conjugacy_witness(r: int, coeff_bound: int = 2):
    """Search for U in GL(2^r, Z) with U C_r = J_r U (open question probe).

    Enumerates small integer combinations of a basis of the intertwiner
    lattice {U : U C_r = J_r U} and returns the first unimodular one, or
    None.  Purely experimental; nothing is asserted about nonexistence.
    """
    from .intlinalg import bareiss_det, kernel_basis
    from .matrices import make_C, make_J

    c = make_C(r)
    j = make_J(r)
    n = 2 ** r
    # vec(U C - J U) = (C^T (x) I - I (x) J) vec(U), rows indexed by (p, q)
    system = []
    for p in range(n):
        for q in range(n):
            row = [0] * (n * n)
            for k in range(n):
                row[p * n + k] += c[k][q]      # (U C)[p][q]
                row[k * n + q] -= j[p][k]      # (J U)[p][q]
            system.append(row)
    basis = kernel_basis(system)
    if not basis:
        return None

    def unvec(vec):
        return [list(vec[i * n:(i + 1) * n]) for i in range(n)]

    from itertools import product as iproduct

    for coeffs in iproduct(range(-coeff_bound, coeff_bound + 1), repeat=len(basis)):
        if not any(coeffs):
            continue
        vec = [sum(a * b[i] for a, b in zip(coeffs, basis)) for i in range(n * n)]
        u = unvec(vec)
        if abs(bareiss_det(u)) == 1:
            return u
    return None
