"""Canonical line bundle sections over quantum projective space.

The degree-N bundle decomposes into blocks indexed by a single non-negative
integer n1; the block irrep has highest weight (n1, 0, ..., 0, n1+N) for
N >= 0 and (n1-N, 0, ..., 0, n1) for N < 0 (degenerating to (2 n1 + |N|,)
when l = 1).  Inside each block the bundle conditions

    K_i acts trivially and E_i, F_i annihilate   (i < l),
    K_1 K_2^2 ... K_l^l scales by q^(N l / 2),

cut out a constrained set of tableaux on one tensor leg; the other leg stays
free, so the constrained subspace has dimension (number of constrained
tableaux) * (block dimension).  The anti-holomorphic kernel is the kernel of
the E_l action on the constrained leg.  Both the conditions and the kernel
are computed here by applying the actual representation matrices; the known
closed-form shape of the constrained tableaux is kept only as an independent
cross-check (`closed_form_section_tableaux`), and the kernel count has an
independent combinatorial oracle (`ker_el_combinatorial`).
"""

from __future__ import annotations

import itertools
from collections import namedtuple

from .linalg import SparseMatrix, numeric_rank
from .qarith import DEFAULT_PRECISION, check_precision, parse_q
from .gtrep import (
    DEFAULT_DIM_CAP,
    DimensionCapError,
    GTTableau,
    apply_e,
    apply_f,
    enumerate_tableaux,
    top_row,
    weyl_dim,
)

__all__ = [
    "block_weight",
    "closed_form_section_tableaux",
    "ln_conditions_filter",
    "LineBundleBlock",
    "build_block",
    "ker_el_combinatorial",
    "ker_el_numeric",
    "BlockKernel",
    "FilterError",
]


class FilterError(RuntimeError):
    """The matrix-based constraint filter produced a non-coordinate kernel."""


def block_weight(ell: int, N: int, n1: int) -> tuple:
    """Highest weight of the degree-N bundle block labelled by n1 >= 0."""
    if ell < 1:
        raise ValueError("ell must be at least 1")
    if n1 < 0:
        raise ValueError("block label n1 must be non-negative")
    if ell == 1:
        return (2 * n1 + abs(N),)
    if N >= 0:
        return (n1,) + (0,) * (ell - 2) + (n1 + N,)
    return (n1 - N,) + (0,) * (ell - 2) + (n1,)


def closed_form_section_tableaux(ell: int, N: int, weight) -> list:
    """Closed-form candidates for the constrained tableaux of a block.

    The constrained tableau has every row below the top constant equal to m
    and top row (m_{1,l+1}, m, ..., m, 2m - m_{1,l+1} - N).  For a fixed
    (normalized) weight this pins everything down; the list is empty when the
    weight is incompatible, and has one member otherwise.  This is the
    independent cross-check route against `ln_conditions_filter`.
    """
    top = top_row(weight)
    size = len(top)
    if size - 1 != ell:
        raise ValueError("weight has %d parts, expected %d" % (size - 1, ell))
    if ell == 1:
        twice_m = top[0] + N
        if twice_m % 2 or not 0 <= twice_m // 2 <= top[0]:
            return []
        m = twice_m // 2
    else:
        middle = set(top[1:-1])
        if len(middle) != 1:
            return []
        m = top[1]
        if 2 * m - top[0] - N != top[-1]:
            return []
    rows = [top] + [(m,) * j for j in range(size - 1, 0, -1)]
    t = GTTableau(rows)
    return [t] if t.interlaces() else []


def ln_conditions_filter(ell: int, N: int, weight, q, precision: int = DEFAULT_PRECISION,
                         dim_cap: int = DEFAULT_DIM_CAP) -> list:
    """Tableaux of one block satisfying all bundle conditions, via matrices.

    The diagonal (K) conditions select a candidate set; the joint kernel of
    the stacked E_i, F_i columns (i < l) on that set is then computed by
    numeric rank and must be spanned by single tableaux, which are returned
    in lexicographic order.  Nothing here assumes the closed-form shape.
    """
    qf = parse_q(q)
    precision = check_precision(precision)
    weight = tuple(int(n) for n in weight)
    if len(weight) != ell:
        raise ValueError("weight %r does not match ell=%d" % (weight, ell))
    if weyl_dim(weight) > dim_cap:
        raise DimensionCapError(
            "block weight %s has dimension %d above the cap %d"
            % (weight, weyl_dim(weight), dim_cap))
    basis = enumerate_tableaux(weight)
    return _filter_on_basis(ell, N, basis, qf, precision)


def _filter_on_basis(ell, N, basis, qf, precision):
    selected = [
        t for t in basis
        if all(t.a(i) == 0 for i in range(1, ell))
        and sum(k * t.a(k) for k in range(1, ell + 1)) == N * ell
    ]
    if not selected:
        return []
    # Stack the E_i and F_i columns (i < l) over the selected tableaux.
    entries = {}
    row_ids = {}
    zero_cols = []
    for col, t in enumerate(selected):
        nonzero = False
        for i in range(1, ell):
            for tag, column in (("E", apply_e(i, t, qf, precision)),
                                ("F", apply_f(i, t, qf, precision))):
                for target, c in column.items():
                    key = (tag, i, target)
                    row = row_ids.setdefault(key, len(row_ids))
                    entries[(row, col)] = c
                    nonzero = True
        if not nonzero:
            zero_cols.append(t)
    if row_ids:
        stacked = SparseMatrix(len(row_ids), len(selected), entries)
        rank = numeric_rank(stacked, precision)
        kernel_dim = len(selected) - rank.rank
        if rank.ill_conditioned or kernel_dim != len(zero_cols):
            raise FilterError(
                "joint kernel (dim %d%s) is not spanned by single tableaux (%d found)"
                % (kernel_dim, ", ill-conditioned" if rank.ill_conditioned else "",
                   len(zero_cols)))
    return sorted(zero_cols, key=GTTableau.flat)


LineBundleBlock = namedtuple(
    "LineBundleBlock", "ell N n1 weight section_basis free_dim")

BlockKernel = namedtuple(
    "BlockKernel", "ell N n1 dim_constrained dim_kernel ill_conditioned")


def build_block(ell: int, N: int, n1: int, q, precision: int = DEFAULT_PRECISION,
                dim_cap: int = DEFAULT_DIM_CAP) -> LineBundleBlock:
    """Constrained tableaux and free-leg dimension of one bundle block."""
    weight = block_weight(ell, N, n1)
    qf = parse_q(q)
    precision = check_precision(precision)
    if weyl_dim(weight) > dim_cap:
        raise DimensionCapError(
            "block weight %s has dimension %d above the cap %d"
            % (weight, weyl_dim(weight), dim_cap))
    basis = enumerate_tableaux(weight)
    section = _filter_on_basis(ell, N, basis, qf, precision)
    return LineBundleBlock(ell, N, n1, weight, section, len(basis))


def ker_el_combinatorial(ell: int, N: int) -> int:
    """Kernel dimension by explicit sequence counting, not by a formula.

    Counts the non-increasing integer sequences N >= x_1 >= ... >= x_l >= 0
    (zero for negative N); this is the independent oracle the numeric route
    must reproduce.
    """
    if ell < 1:
        raise ValueError("ell must be at least 1")
    if N < 0:
        return 0
    count = 0
    for _seq in itertools.combinations_with_replacement(range(N + 1), ell):
        count += 1
    return count


def ker_el_numeric(ell: int, N: int, n1_max: int, q, precision: int = DEFAULT_PRECISION,
                   dim_cap: int = DEFAULT_DIM_CAP) -> list:
    """Per-block numeric kernel dimensions of the E_l action on sections.

    For each block, the E_l columns over the constrained tableaux are ranked
    numerically (relative threshold 10^(-precision/2)); the kernel on the
    constrained leg then multiplies the free-leg dimension.  Ill-conditioned
    rank decisions are flagged in the record, never resolved silently.
    """
    if n1_max < 0:
        raise ValueError("n1_max must be non-negative")
    qf = parse_q(q)
    precision = check_precision(precision)
    records = []
    for n1 in range(n1_max + 1):
        block = build_block(ell, N, n1, qf, precision, dim_cap)
        entries = {}
        row_ids = {}
        for col, t in enumerate(block.section_basis):
            for target, c in apply_e(ell, t, qf, precision).items():
                row = row_ids.setdefault(target, len(row_ids))
                entries[(row, col)] = c
        ill = False
        if block.section_basis and row_ids:
            stacked = SparseMatrix(len(row_ids), len(block.section_basis), entries)
            rank = numeric_rank(stacked, precision)
            ill = rank.ill_conditioned
            leg_kernel = len(block.section_basis) - rank.rank
        else:
            leg_kernel = len(block.section_basis)
        records.append(BlockKernel(
            ell, N, n1,
            dim_constrained=len(block.section_basis) * block.free_dim,
            dim_kernel=leg_kernel * block.free_dim,
            ill_conditioned=ill))
    return records
