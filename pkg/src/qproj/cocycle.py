"""Shuffle combinatorics for the fundamental twisted cocycle.

Derivative patterns are balanced strings over two letters, encoded '0' for
the holomorphic slot and '1' for the anti-holomorphic one; a pattern of
length 2l with l of each letter is a balanced shuffle, and two patterns are
adjacent when they differ by one adjacent transposition of distinct letters.
The fundamental class is the formal sum tau of all binom(2l, l) pattern
symbols; the telescoping construction writes m*tau - k*phi_first as an exact
rational combination of adjacent-pair differences (phi - phi'), where the
pairs are read off two chains

    chain1: '0'^l '1'^l = pi_1 ~ pi_2 ~ ... ~ pi_r,
    chain2: '1'^l '0'^l = pi'_1 ~ pi'_2 ~ ... ~ pi'_r,

partitioning all patterns, plus one bridge pi_r ~ pi'_kappa.  Chains are
found by exhaustive backtracking with lexicographic tie-breaking, preferring
the bridge at kappa = 2 (kappa = 1 when r = 1) because that placement makes
the solved coefficients match the closed form x_i = -(2r-i)m with a single
sign absorption at x_{r+1}.

The flip graph is bipartite (an adjacent transposition moves one '1' by one
position) and a path alternates parity classes, so two r-vertex chains can
cover at most 2*ceil(r/2) vertices of either class.  For even l >= 4 the
class imbalance binomial(l, l/2) pushes the larger class past that bound, so
no chain partition exists at all; `build_chains` detects this up front and
raises with the counting certificate.  Cohomologousness itself survives: the
adjacent-pair differences of any spanning tree of the (connected) flip graph
span the full zero-coefficient-sum subspace, so `verify_membership` falls
back to a spanning tree when the two-chain structure is impossible.

Twisted Hochschild operators are exercised on a finite q-commuting toy
algebra with a diagonal scaling automorphism, in exact rational arithmetic.
"""

from __future__ import annotations

import itertools
import random
from collections import namedtuple
from fractions import Fraction

from .coordring import TruncatedPolynomialAlgebra

__all__ = [
    "enumerate_shuffles",
    "flip_neighbors",
    "is_flip_adjacent",
    "parity_split",
    "ChainSearchError",
    "Chains",
    "build_chains",
    "CocycleSolution",
    "solve_cocycle_system",
    "spanning_tree_edges",
    "MembershipCertificate",
    "verify_membership",
    "b_sigma",
    "lambda_sigma",
    "default_toy_algebra",
    "CoboundaryReport",
    "twisted_coboundary_check",
]


def enumerate_shuffles(ell: int) -> list:
    """All balanced patterns of length 2l, lexicographically ('0' < '1')."""
    if ell < 1:
        raise ValueError("ell must be at least 1")
    out = []
    for ones in itertools.combinations(range(2 * ell), ell):
        chars = ["0"] * (2 * ell)
        for p in ones:
            chars[p] = "1"
        out.append("".join(chars))
    return sorted(out)


def flip_neighbors(pattern: str) -> list:
    """Patterns one adjacent transposition away, sorted."""
    out = []
    for i in range(len(pattern) - 1):
        if pattern[i] != pattern[i + 1]:
            out.append(pattern[:i] + pattern[i + 1] + pattern[i] + pattern[i + 2:])
    return sorted(out)


def is_flip_adjacent(a: str, b: str) -> bool:
    diff = [i for i in range(len(a)) if a[i] != b[i]]
    return (
        len(a) == len(b)
        and len(diff) == 2
        and diff[1] == diff[0] + 1
        and a[diff[0]] == b[diff[1]]
        and a[diff[1]] == b[diff[0]]
    )


def parity_split(patterns) -> tuple:
    """Sizes of the two bipartition classes of the flip graph."""
    even = sum(1 for p in patterns if sum(i for i, c in enumerate(p) if c == "1") % 2 == 0)
    return even, len(patterns) - even


class ChainSearchError(RuntimeError):
    """No valid two-chain partition exists (or the search exhausted)."""


Chains = namedtuple("Chains", "chain1 chain2 bridge")


def build_chains(ell: int) -> Chains:
    """Partition all patterns into two adjacent-transposition chains.

    chain1 starts at '0'^l '1'^l, chain2 at '1'^l '0'^l, each of length
    r = binom(2l, l)/2; `bridge` is the 1-based position kappa in chain2
    adjacent to the end of chain1.  Exhaustive backtracking, lexicographic
    tie-breaking, bridge preferred at 2 (1 when r = 1).

    Raises ChainSearchError when the partition provably cannot exist (parity
    certificate, any even l >= 4) or when the search space is exhausted.
    """
    patterns = enumerate_shuffles(ell)
    r = len(patterns) // 2
    even, odd = parity_split(patterns)
    majority = max(even, odd)
    # A path on an alternating bipartite graph covers at most ceil(r/2)
    # vertices of one class; two chains cover at most 2*ceil(r/2).
    if majority > 2 * ((r + 1) // 2):
        raise ChainSearchError(
            "no two-chain partition exists for ell=%d: the flip graph is "
            "bipartite with classes (%d, %d), and two alternating paths of "
            "length r=%d cover at most %d vertices of the larger class"
            % (ell, even, odd, r, 2 * ((r + 1) // 2)))
    start1 = "0" * ell + "1" * ell
    start2 = "1" * ell + "0" * ell
    nbr = {p: tuple(flip_neighbors(p)) for p in patterns}

    def bridge_position(end, chain2, want):
        if want is None:
            for k, p in enumerate(chain2, start=1):
                if p in nbr[end]:
                    return k
            return None
        ok = len(chain2) >= want and chain2[want - 1] in nbr[end]
        return want if ok else None

    def search_chain2(chain2, used, end, want):
        if len(chain2) == r:
            k = bridge_position(end, chain2, want)
            return (list(chain2), k) if k is not None else None
        for n in nbr[chain2[-1]]:
            if n not in used:
                used.add(n)
                chain2.append(n)
                res = search_chain2(chain2, used, end, want)
                if res:
                    return res
                chain2.pop()
                used.remove(n)
        return None

    def search_chain1(chain1, used, want):
        if len(chain1) == r:
            if start2 in used:
                return None
            used.add(start2)
            res = search_chain2([start2], used, chain1[-1], want)
            used.remove(start2)
            if res:
                chain2, k = res
                return Chains(tuple(chain1), tuple(chain2), k)
            return None
        for n in nbr[chain1[-1]]:
            if n not in used and n != start2:
                used.add(n)
                chain1.append(n)
                res = search_chain1(chain1, used, want)
                if res:
                    return res
                chain1.pop()
                used.remove(n)
        return None

    preferences = (1,) if r == 1 else (2, None)
    for want in preferences:
        res = search_chain1([start1], {start1}, want)
        if res:
            return res
    raise ChainSearchError(
        "chain search exhausted for ell=%d without finding a partition" % ell)


def chain_edges(chains: Chains) -> list:
    """Ordered edge list: chain1 steps, the bridge, then chain2 steps."""
    c1, c2, k = chains
    edges = [(c1[i], c1[i + 1]) for i in range(len(c1) - 1)]
    edges.append((c1[-1], c2[k - 1]))
    edges.extend((c2[i], c2[i + 1]) for i in range(len(c2) - 1))
    return edges


def _solve_exact(rows, rhs):
    """Solve an exact rational linear system; returns (solution, consistent).

    `rows` is a list of coefficient lists (all Fractions), one per equation.
    Requires full column rank on the consistent part; free variables raise.
    """
    m = len(rows)
    n = len(rows[0]) if rows else 0
    A = [list(map(Fraction, row)) + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    pivots = []
    row = 0
    for col in range(n):
        piv = next((i for i in range(row, m) if A[i][col] != 0), None)
        if piv is None:
            continue
        A[row], A[piv] = A[piv], A[row]
        pv = A[row][col]
        A[row] = [x / pv for x in A[row]]
        for i in range(m):
            if i != row and A[i][col] != 0:
                f = A[i][col]
                A[i] = [a - f * b for a, b in zip(A[i], A[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    consistent = not any(
        all(x == 0 for x in A[i][:n]) and A[i][n] != 0 for i in range(m))
    if len(pivots) != n:
        raise ArithmeticError("underdetermined system (free variables left)")
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = A[i][n]
    return x, consistent


CocycleSolution = namedtuple(
    "CocycleSolution", "m r bridge x k edges matches_closed_form sign_absorbed")


def _closed_form(i, r, kappa, m):
    # Derived from the telescoping structure with the bridge at kappa:
    # chain1 edges and the bridge follow x_i = -(2r-i) m exactly; chain2
    # edges before the bridge carry +j m, after it -(r-j) m.
    if i <= r:
        return -(2 * r - i) * m
    j = i - r
    return j * m if j < kappa else -(r - j) * m


def solve_cocycle_system(ell: int, m=1, chains: Chains = None) -> CocycleSolution:
    """Exact coefficients writing m*tau - k*phi_first as a sum over the chains.

    Builds the linear system from the actual chain structure (each edge
    contributes +-(phi - phi') with the sign convention fixed edge-forward),
    solves it over the rationals, asserts the solution against the closed
    form above, and records which indices differ from -(2r-i)m only by the
    documented sign absorption.  Always yields k = 2 r m.
    """
    m = Fraction(m)
    if chains is None:
        chains = build_chains(ell)
    patterns = enumerate_shuffles(ell)
    r = len(patterns) // 2
    edges = chain_edges(chains)
    first = chains.chain1[0]
    pat_index = {p: i for i, p in enumerate(patterns)}
    # Unknowns: one coefficient per edge, then k.  Equation per pattern:
    #   sum_e inc(e, p) x_e + delta(p, first) k = m
    rows = []
    rhs = []
    for p in patterns:
        row = [Fraction(0)] * (len(edges) + 1)
        for e, (a, b) in enumerate(edges):
            if p == a:
                row[e] += 1
            if p == b:
                row[e] -= 1
        if p == first:
            row[-1] = Fraction(1)
        rows.append(row)
        rhs.append(m)
    solution, consistent = _solve_exact(rows, rhs)
    if not consistent:
        raise ArithmeticError(
            "telescoping system inconsistent at ell=%d (falsifies the construction)" % ell)
    x, k = solution[:-1], solution[-1]
    assert k == 2 * r * m, "solved k = %s differs from 2 r m = %s" % (k, 2 * r * m)
    kappa = chains.bridge
    expected = [_closed_form(i, r, kappa, m) for i in range(1, 2 * r)]
    matches = list(map(Fraction, x)) == expected
    # Indices where the solved coefficient deviates from the bare pattern
    # -(2r-i)m; with the bridge at kappa <= 2 this is at most {r+1}, where
    # only the sign differs (the documented sign absorption).
    sign_absorbed = tuple(
        i for i in range(1, 2 * r) if x[i - 1] != -(2 * r - i) * m)
    return CocycleSolution(m, r, kappa, tuple(x), k, tuple(edges), matches, sign_absorbed)


def spanning_tree_edges(ell: int) -> list:
    """Edges of the lexicographic BFS spanning tree of the flip graph.

    The flip graph is connected (bubble sort), so the tree always has
    binom(2l, l) - 1 edges; used by `verify_membership` when the two-chain
    partition does not exist.
    """
    patterns = enumerate_shuffles(ell)
    root = "0" * ell + "1" * ell
    seen = {root}
    queue = [root]
    edges = []
    while queue:
        cur = queue.pop(0)
        for n in flip_neighbors(cur):
            if n not in seen:
                seen.add(n)
                edges.append((cur, n))
                queue.append(n)
    assert len(seen) == len(patterns)
    return edges


MembershipCertificate = namedtuple(
    "MembershipCertificate", "ok ell r via_chains pairs coefficients")


def verify_membership(ell: int) -> MembershipCertificate:
    """Certify that tau - 2r*phi_first lies in the span of adjacent-pair
    differences, with explicit exact coefficients.

    Uses the chain edges when the two-chain partition exists; otherwise the
    spanning-tree pairs of the flip graph (2r - 1 pairs either way).
    """
    patterns = enumerate_shuffles(ell)
    r = len(patterns) // 2
    first = "0" * ell + "1" * ell
    try:
        edges = chain_edges(build_chains(ell))
        via_chains = True
    except ChainSearchError:
        edges = spanning_tree_edges(ell)
        via_chains = False
    rows = []
    rhs = []
    for p in patterns:
        row = [Fraction(0)] * len(edges)
        for e, (a, b) in enumerate(edges):
            if p == a:
                row[e] += 1
            if p == b:
                row[e] -= 1
        rows.append(row)
        rhs.append(Fraction(1) - (2 * r if p == first else 0))
    try:
        coeffs, consistent = _solve_exact(rows, rhs)
    except ArithmeticError:
        return MembershipCertificate(False, ell, r, via_chains, tuple(edges), ())
    if not consistent:
        return MembershipCertificate(False, ell, r, via_chains, tuple(edges), ())
    # Re-verify the certificate independently of the solver.
    total = {p: Fraction(0) for p in patterns}
    for y, (a, b) in zip(coeffs, edges):
        total[a] += y
        total[b] -= y
    ok = all(total[p] == (Fraction(1) - (2 * r if p == first else 0)) for p in patterns)
    return MembershipCertificate(ok, ell, r, via_chains, tuple(edges), tuple(coeffs))


# -- twisted Hochschild operators on the toy algebra -----------------------


def default_toy_algebra() -> TruncatedPolynomialAlgebra:
    """Two q-commuting generators truncated above total degree two."""
    return TruncatedPolynomialAlgebra(2, 2, Fraction(1, 2))


def b_sigma(algebra, sigma_eigs, phi, n: int):
    """Twisted Hochschild coboundary of an n-cochain, as a callable.

    phi maps (n+1)-tuples of basis indices to Fractions (dict or callable);
    the result evaluates on (n+2)-tuples.  The last face multiplies
    sigma(a_{n+1}) into a_0, picking up the diagonal eigenvalue.
    """
    lookup = phi if callable(phi) else lambda t, _d=phi: _d.get(t, Fraction(0))

    def out(tup):
        assert len(tup) == n + 2
        total = Fraction(0)
        for i in range(n + 1):
            c, idx = algebra.product(tup[i], tup[i + 1])
            if idx is not None and c:
                total += (-1) ** i * c * lookup(tup[:i] + (idx,) + tup[i + 2:])
        c, idx = algebra.product(tup[n + 1], tup[0])
        if idx is not None and c:
            total += (-1) ** (n + 1) * sigma_eigs[tup[n + 1]] * c * lookup((idx,) + tup[1:n + 1])
        return total

    return out


def lambda_sigma(algebra, sigma_eigs, phi, n: int):
    """Twisted cyclic rotation of an n-cochain, as a callable."""
    lookup = phi if callable(phi) else lambda t, _d=phi: _d.get(t, Fraction(0))

    def out(tup):
        assert len(tup) == n + 1
        return (-1) ** n * sigma_eigs[tup[n]] * lookup((tup[n],) + tup[:n])

    return out


CoboundaryReport = namedtuple(
    "CoboundaryReport",
    "n cochains tuples_checked invariant_cochains invariance_tuples ok")


def twisted_coboundary_check(n: int, samples: int = 50, seed: int = 0,
                             algebra=None, sigma_factors=(Fraction(2, 3), Fraction(3, 2)),
                             tuple_budget: int = 2000) -> CoboundaryReport:
    """Exact checks of the twisted coboundary on the toy algebra.

    Verifies b_sigma(b_sigma(phi)) = 0 on random rational cochains, and that
    the coboundary of a rotation-fixed cochain stays rotation-fixed (the
    fixedness condition is sigma-invariance, realized by supporting cochains
    on tuples of total sigma-eigenvalue one).  All arithmetic is exact; any
    nonzero value fails the report.
    """
    if n < 0 or n > 4:
        raise ValueError("cochain degree n must lie in 0..4")
    algebra = default_toy_algebra() if algebra is None else algebra
    sigma = algebra.scaling_automorphism(sigma_factors)
    rng = random.Random(seed)
    dim = algebra.dim

    def random_tuple(length):
        return tuple(rng.randrange(dim) for _ in range(length))

    def random_cochain(length, support=20):
        phi = {}
        for _ in range(support):
            phi[random_tuple(length)] = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        return phi

    def evaluation_tuples(length):
        if dim**length <= tuple_budget:
            return list(itertools.product(range(dim), repeat=length))
        return [random_tuple(length) for _ in range(tuple_budget // 5)]

    ok = True
    bsq_tuples = evaluation_tuples(n + 3)
    for _ in range(samples):
        phi = random_cochain(n + 1)
        bb = b_sigma(algebra, sigma, b_sigma(algebra, sigma, phi, n), n + 1)
        if any(bb(t) != 0 for t in bsq_tuples):
            ok = False
            break

    def tuple_weight(t):
        w = Fraction(1)
        for idx in t:
            w *= sigma[idx]
        return w

    # sigma-invariant cochains are exactly the rotation^(n+1)-fixed ones.
    # Support them on tuples of total sigma-eigenvalue one; enumerate the
    # pool when it is small, otherwise rejection-sample with a cap.
    if dim ** (n + 1) <= tuple_budget:
        fixed_pool = [t for t in itertools.product(range(dim), repeat=n + 1)
                      if tuple_weight(t) == 1]
    else:
        fixed_pool = []
        for _ in range(tuple_budget):
            t = random_tuple(n + 1)
            if tuple_weight(t) == 1:
                fixed_pool.append(t)
        fixed_pool = sorted(set(fixed_pool))
    invariant_count = max(3, samples // 10)
    inv_tuples = evaluation_tuples(n + 2)
    checked_invariance = 0
    for _ in range(invariant_count):
        support = rng.sample(fixed_pool, min(12, len(fixed_pool)))
        phi = {t: Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for t in support}
        rotated_phi = lambda t, _d=phi: _d.get(t, Fraction(0))
        for _ in range(n + 1):
            rotated_phi = lambda_sigma(algebra, sigma, rotated_phi, n)
        if any(rotated_phi(t) != phi.get(t, Fraction(0)) for t in phi):
            ok = False
            break
        psi = b_sigma(algebra, sigma, phi, n)
        rotated = psi
        for _ in range(n + 2):
            rotated = lambda_sigma(algebra, sigma, rotated, n + 1)
        if any(rotated(t) != psi(t) for t in inv_tuples):
            ok = False
            break
        checked_invariance += 1

    return CoboundaryReport(n, samples, len(bsq_tuples), checked_invariance,
                            len(inv_tuples), ok)
