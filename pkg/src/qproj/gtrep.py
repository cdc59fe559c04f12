"""Gelfand-Tsetlin bases and matrices for irreducible U_q(su(l+1)) modules.

A finite dimensional irreducible *-representation is labelled by a highest
weight n = (n_1, ..., n_l) of non-negative integers.  Its basis consists of
triangular Gelfand-Tsetlin arrays m_{i,j} (1 <= i <= j <= l+1, row j holding
j entries) that interlace row by row,

    m_{i,j+1} >= m_{i,j} >= m_{i+1,j+1},

whose top row encodes the weight through n_i = m_{i,l+1} - m_{i+1,l+1}.  The
top row is only fixed up to an additive constant; we normalize the gauge by
m_{l+1,l+1} = 0 so enumeration is reproducible.

Generator actions on the basis:

    K_k |m> = q^(a_k/2) |m>,
    a_k = 2 sum_{i<=k} m_{i,k} - sum_{i<=k-1} m_{i,k-1} - sum_{i<=k+1} m_{i,k+1},

    E_k |m> = sum_{j=1..k} A^j_k |m^j_k>,

where |m^j_k> raises entry (j, k) by one and, with l_{i,j} = m_{i,j} - i,

    (A^j_k)^2 = - prod_{i<=k+1}[l_{i,k+1} - l_{j,k}] prod_{i<=k-1}[l_{i,k-1} - l_{j,k} - 1]
                / prod_{i != j}[l_{i,k} - l_{j,k}][l_{i,k} - l_{j,k} - 1],

the positive square root taken.  The GT basis is orthonormal and E_k^* = F_k,
so at real q the F matrices are the transposes of the E matrices; that is how
they are built here.  The tests cross-check both raising and lowering
amplitudes against independently expanded longhand radicands.

Matrix construction is independent column by column (each column only reads
one tableau), and built modules are immutable, so they are safe to share.
"""

from __future__ import annotations

import itertools
from collections import namedtuple
from fractions import Fraction

from mpmath import mp

from .linalg import SparseMatrix
from .qarith import (
    DEFAULT_PRECISION,
    check_precision,
    guarded_sqrt,
    parse_q,
    q_int,
)

DEFAULT_DIM_CAP = 20000
DEFAULT_RELATION_TOL = "1e-40"

__all__ = [
    "GTTableau",
    "validate_weight",
    "top_row",
    "enumerate_tableaux",
    "weight_exponent",
    "raise_coeff",
    "apply_e",
    "apply_f",
    "weyl_dim",
    "IrrepModule",
    "build_irrep",
    "verify_relations",
    "RelationReport",
    "export_matrix",
    "DimensionCapError",
]


class DimensionCapError(ValueError):
    """A requested module exceeds the configured dimension cap."""


def validate_weight(weight) -> tuple:
    weight = tuple(int(n) for n in weight)
    if not weight:
        raise ValueError("a highest weight needs at least one component")
    if any(n < 0 for n in weight):
        raise ValueError("highest weight components must be non-negative: %r" % (weight,))
    return weight


def top_row(weight) -> tuple:
    """Normalized top row (m_{l+1,l+1} = 0) for a highest weight."""
    weight = validate_weight(weight)
    return tuple(sum(weight[i:]) for i in range(len(weight))) + (0,)


class GTTableau:
    """A triangular Gelfand-Tsetlin array, stored top row first.

    ``rows[0]`` is row l+1 (l+1 entries) down to ``rows[-1]`` = row 1 (one
    entry).  Instances are immutable; ``flat()`` is the canonical sort key.
    """

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        size = len(rows[0]) if rows else 0
        if [len(r) for r in rows] != list(range(size, 0, -1)):
            raise ValueError("rows must shrink from l+1 entries down to 1")
        self.rows = rows

    @property
    def size(self) -> int:
        """Number of entries in the top row, l+1."""
        return len(self.rows[0])

    @property
    def ell(self) -> int:
        return self.size - 1

    def row(self, j) -> tuple:
        """Row j (1-based, j entries)."""
        return self.rows[self.size - j]

    def entry(self, i, j) -> int:
        """m_{i,j}, 1-based."""
        return self.row(j)[i - 1]

    def l(self, i, j) -> int:
        """Shifted entry l_{i,j} = m_{i,j} - i."""
        return self.entry(i, j) - i

    def flat(self) -> tuple:
        return tuple(itertools.chain.from_iterable(self.rows))

    def weight(self) -> tuple:
        top = self.rows[0]
        return tuple(top[i] - top[i + 1] for i in range(len(top) - 1))

    def interlaces(self) -> bool:
        for j in range(self.size, 1, -1):
            upper, lower = self.row(j), self.row(j - 1)
            for i in range(j - 1):
                if not upper[i] >= lower[i] >= upper[i + 1]:
                    return False
        return True

    def a(self, k) -> int:
        """The K_k weight exponent a_k."""
        if not 1 <= k <= self.ell:
            raise ValueError("k must lie in 1..%d, got %d" % (self.ell, k))
        total = 2 * sum(self.row(k)) - sum(self.row(k + 1))
        if k >= 2:
            total -= sum(self.row(k - 1))
        return total

    def replaced(self, i, k, value) -> "GTTableau":
        rows = [list(r) for r in self.rows]
        rows[self.size - k][i - 1] = value
        return GTTableau(rows)

    def raised(self, i, k):
        """Entry (i, k) increased by one, or None if interlacing breaks."""
        t = self.replaced(i, k, self.entry(i, k) + 1)
        return t if t.interlaces() else None

    def lowered(self, i, k):
        """Entry (i, k) decreased by one, or None if interlacing breaks."""
        t = self.replaced(i, k, self.entry(i, k) - 1)
        return t if t.interlaces() else None

    def __eq__(self, other):
        return isinstance(other, GTTableau) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __lt__(self, other):
        return self.flat() < other.flat()

    def __repr__(self):
        return "GTTableau(%s)" % (list(map(list, self.rows)),)


def enumerate_tableaux(weight) -> list:
    """All interlacing tableaux for a weight, lexicographic in flat() order.

    The top row is the normalized one; lower rows range over every choice
    allowed by interlacing.
    """
    top = top_row(weight)
    out = []

    def descend(rows):
        upper = rows[-1]
        if len(upper) == 1:
            out.append(GTTableau(rows))
            return
        j = len(upper) - 1
        choices = [range(upper[i + 1], upper[i] + 1) for i in range(j)]
        for lower in itertools.product(*choices):
            descend(rows + [lower])

    descend([top])
    out.sort(key=GTTableau.flat)
    return out


def weight_exponent(k, tableau) -> int:
    """a_k for a tableau; K_k acts by q^(a_k/2)."""
    return tableau.a(k)


def raise_coeff(k, j, tableau, q, precision: int = DEFAULT_PRECISION):
    """The coefficient A^j_k of |m^j_k> in E_k |m>, as an mpf.

    Returns exact zero when raising entry (j, k) breaks interlacing.  The
    radicand is assembled exactly as a ratio of q-integer products and only
    then evaluated; a significantly negative value raises
    NegativeRadicandError since it can only come from a transcription bug.
    """
    qf = parse_q(q)
    precision = check_precision(precision)
    if not 1 <= j <= k <= tableau.ell:
        raise ValueError("need 1 <= j <= k <= %d, got j=%d k=%d" % (tableau.ell, j, k))
    if tableau.raised(j, k) is None:
        with mp.workdps(precision):
            return mp.mpf(0)
    ljk = tableau.l(j, k)
    num = q_int(1)
    for i in range(1, k + 2):
        num = num * q_int(tableau.l(i, k + 1) - ljk)
    for i in range(1, k):
        num = num * q_int(tableau.l(i, k - 1) - ljk - 1)
    den = q_int(1)
    for i in range(1, k + 1):
        if i != j:
            d = tableau.l(i, k) - ljk
            den = den * q_int(d) * q_int(d - 1)
    with mp.workdps(precision + 10):
        radicand = -(num.eval(qf, precision + 10) / den.eval(qf, precision + 10))
    return guarded_sqrt(radicand, precision)


def apply_e(k, tableau, q, precision: int = DEFAULT_PRECISION) -> dict:
    """E_k on a basis tableau: map target tableau -> coefficient."""
    out = {}
    for j in range(1, k + 1):
        target = tableau.raised(j, k)
        if target is None:
            continue
        c = raise_coeff(k, j, tableau, q, precision)
        if c:
            out[target] = c
    return out


def apply_f(k, tableau, q, precision: int = DEFAULT_PRECISION) -> dict:
    """F_k on a basis tableau, via transposition of the E_k coefficients."""
    out = {}
    for j in range(1, k + 1):
        target = tableau.lowered(j, k)
        if target is None:
            continue
        c = raise_coeff(k, j, target, q, precision)
        if c:
            out[target] = c
    return out


def weyl_dim(weight) -> int:
    """Weyl dimension formula for su(l+1); independent of tableau counting."""
    weight = validate_weight(weight)
    lam = [sum(weight[i:]) for i in range(len(weight))] + [0]
    n = len(lam)
    d = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            d *= Fraction(lam[i] - lam[j] + j - i, j - i)
    assert d.denominator == 1
    return int(d)


class IrrepModule:
    """A built irreducible module: ordered GT basis plus sparse matrices.

    ``K[k]``, ``Kinv[k]``, ``E[k]``, ``F[k]`` (k = 1..l) are SparseMatrix
    over mpf; F[k] is the transpose of E[k].  Immutable after construction.
    """

    def __init__(self, weight, basis, q, precision, K, Kinv, E, F):
        self.weight = weight
        self.basis = basis
        self.index = {t: i for i, t in enumerate(basis)}
        self.q = q
        self.precision = precision
        self.K = K
        self.Kinv = Kinv
        self.E = E
        self.F = F

    @property
    def dim(self):
        return len(self.basis)

    @property
    def ell(self):
        return len(self.weight)

    def __repr__(self):
        return "IrrepModule(n=%s, dim=%d, q=%s)" % (self.weight, self.dim, self.q)


def build_irrep(weight, q, precision: int = DEFAULT_PRECISION,
                dim_cap: int = DEFAULT_DIM_CAP) -> IrrepModule:
    """Enumerate the GT basis and populate all K/E/F matrices."""
    weight = validate_weight(weight)
    qf = parse_q(q)
    precision = check_precision(precision)
    expected = weyl_dim(weight)
    if expected > dim_cap:
        raise DimensionCapError(
            "weight %s has dimension %d, above the cap %d" % (weight, expected, dim_cap)
        )
    basis = enumerate_tableaux(weight)
    assert len(basis) == expected, "tableau count disagrees with the Weyl formula"
    index = {t: i for i, t in enumerate(basis)}
    ell = len(weight)
    dim = len(basis)
    K, Kinv, E, F = {}, {}, {}, {}
    with mp.workdps(precision):
        qs = mp.sqrt(mp.mpf(qf.numerator) / mp.mpf(qf.denominator))
        for k in range(1, ell + 1):
            K[k] = SparseMatrix.diagonal([qs ** t.a(k) for t in basis])
            Kinv[k] = SparseMatrix.diagonal([qs ** (-t.a(k)) for t in basis])
            entries = {}
            for col, t in enumerate(basis):
                for target, c in apply_e(k, t, qf, precision).items():
                    entries[(index[target], col)] = c
            E[k] = SparseMatrix(dim, dim, entries)
            F[k] = E[k].transpose()
    return IrrepModule(weight, basis, qf, precision, K, Kinv, E, F)


RelationCheck = namedtuple("RelationCheck", "name residual entry")


class RelationReport:
    """Per-relation max residuals from a defining-relation verification.

    Each check records the relation name, its max-entry residual, and the
    (row, col) position where that residual occurs (None for a zero matrix).
    """

    def __init__(self, checks, tolerance):
        self.checks = checks
        self.tolerance = tolerance

    @property
    def max_residual(self):
        return max((c.residual for c in self.checks), default=mp.mpf(0))

    @property
    def worst(self):
        return max(self.checks, key=lambda c: c.residual) if self.checks else None

    @property
    def ok(self):
        return all(c.residual <= self.tolerance for c in self.checks)

    def failures(self):
        return [c for c in self.checks if c.residual > self.tolerance]

    def __repr__(self):
        return "RelationReport(%d checks, max=%s, ok=%s)" % (
            len(self.checks), mp.nstr(self.max_residual, 6), self.ok)


def verify_relations(mod: IrrepModule, tol=None) -> RelationReport:
    """Check every defining relation of U_q(su(l+1)) on a built module.

    Covered: K commutativity, the three E-K exchange cases, E-F brackets
    against (K^2 - K^-2)/(q - q^-1), E-E commutation at distance > 1, Serre
    relations at distance 1, and the transposed F counterparts of all of the
    above.  Residuals are max-entry absolute values.
    """
    precision = mod.precision
    with mp.workdps(precision):
        tol = mp.mpf(DEFAULT_RELATION_TOL if tol is None else tol)
        qv = mp.mpf(mod.q.numerator) / mp.mpf(mod.q.denominator)
        qs = mp.sqrt(qv)
        ell = mod.ell
        K, Kinv, E, F = mod.K, mod.Kinv, mod.E, mod.F
        checks = []

        def residual(name, M):
            worst_val, worst_pos = mp.mpf(0), None
            for pos, v in M.entries():
                if abs(v) > worst_val:
                    worst_val, worst_pos = abs(v), pos
            checks.append(RelationCheck(name, worst_val, worst_pos))

        for i in range(1, ell + 1):
            for j in range(i + 1, ell + 1):
                residual("K%dK%d-K%dK%d" % (i, j, j, i), K[i] @ K[j] - K[j] @ K[i])

        for i in range(1, ell + 1):
            for j in range(1, ell + 1):
                EiKj = E[i] @ K[j]
                FiKj = F[i] @ K[j]
                if i == j:
                    residual("E%dK%d-q^-1K%dE%d" % (i, j, j, i),
                             EiKj - (K[j] @ E[i]).scaled(1 / qv))
                    residual("F%dK%d-qK%dF%d" % (i, j, j, i),
                             FiKj - (K[j] @ F[i]).scaled(qv))
                elif abs(i - j) == 1:
                    residual("E%dK%d-q^(1/2)K%dE%d" % (i, j, j, i),
                             EiKj - (K[j] @ E[i]).scaled(qs))
                    residual("F%dK%d-q^(-1/2)K%dF%d" % (i, j, j, i),
                             FiKj - (K[j] @ F[i]).scaled(1 / qs))
                else:
                    residual("E%dK%d-K%dE%d" % (i, j, j, i), EiKj - K[j] @ E[i])
                    residual("F%dK%d-K%dF%d" % (i, j, j, i), FiKj - K[j] @ F[i])

        for i in range(1, ell + 1):
            for j in range(1, ell + 1):
                bracket = E[i] @ F[j] - F[j] @ E[i]
                if i == j:
                    rhs = (K[i] @ K[i] - Kinv[i] @ Kinv[i]).scaled(1 / (qv - 1 / qv))
                    residual("E%dF%d-F%dE%d-(K%d^2-K%d^-2)/(q-q^-1)" % (i, j, j, i, i, i),
                             bracket - rhs)
                else:
                    residual("E%dF%d-F%dE%d" % (i, j, j, i), bracket)

        for i in range(1, ell + 1):
            for j in range(1, ell + 1):
                if abs(i - j) > 1:
                    residual("E%dE%d-E%dE%d" % (i, j, j, i), E[i] @ E[j] - E[j] @ E[i])
                    residual("F%dF%d-F%dF%d" % (i, j, j, i), F[i] @ F[j] - F[j] @ F[i])
                elif abs(i - j) == 1:
                    coeff = qv + 1 / qv
                    serre_e = (E[i] @ E[i] @ E[j]
                               - (E[i] @ E[j] @ E[i]).scaled(coeff)
                               + E[j] @ E[i] @ E[i])
                    serre_f = (F[i] @ F[i] @ F[j]
                               - (F[i] @ F[j] @ F[i]).scaled(coeff)
                               + F[j] @ F[i] @ F[i])
                    residual("serre(E%d,E%d)" % (i, j), serre_e)
                    residual("serre(F%d,F%d)" % (i, j), serre_f)

    return RelationReport(checks, tol)


def export_matrix(mod: IrrepModule, op: str, k: int) -> str:
    """Coordinate-list text export, one "row col value" line per entry.

    The header records the full provenance; rows are 0-based and sorted so
    identical inputs give byte-identical output.
    """
    if op not in ("K", "E", "F"):
        raise ValueError("op must be one of K, E, F, got %r" % (op,))
    if not 1 <= k <= mod.ell:
        raise ValueError("k must lie in 1..%d, got %d" % (mod.ell, k))
    M = {"K": mod.K, "E": mod.E, "F": mod.F}[op][k]
    header = "# irrep ℓ=%d n=%s op=%s%d q=%d/%d precision=%d" % (
        mod.ell, ",".join(map(str, mod.weight)), op, k,
        mod.q.numerator, mod.q.denominator, mod.precision)
    lines = [header]
    for (i, j) in sorted(M._d):
        lines.append("%d %d %s" % (i, j, mp.nstr(M._d[(i, j)], mod.precision)))
    return "\n".join(lines) + "\n"
