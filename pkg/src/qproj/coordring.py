"""The q-commuting homogeneous coordinate ring.

Generators z_1, ..., z_g satisfy z_i z_j = q z_j z_i for i < j, so every
word has a normal form z_1^{s_1} ... z_g^{s_g} times an integer power of q:
each inversion (a larger generator index standing before a smaller one)
costs one factor q^-1 on the way to sorted order.  Monomials are plain
exponent tuples; the graded dimension is obtained by enumerating them.

`tensor_factorize` splits a degree N+M monomial Z into Z1 of degree N and Z2
of degree M with Z1 Z2 = q^-R Z, where, for a partition r of N supported on
the first k indices (k the first index whose exponent prefix sum exceeds N),

    R = r_k {(s_{k-1}-r_{k-1}) + ... + (s_1-r_1)} + ... + r_2 (s_1-r_1).

The greedy left-filling partition is the canonical choice (it makes R = 0);
an explicit partition can be passed to exercise nonzero R.  The factorization
verifies its own postcondition through `normal_order`.

`TruncatedPolynomialAlgebra` is the same ring cut off above a total degree,
over an exact rational q: a small finite dimensional algebra with diagonal
scaling automorphisms, used as the test bed for twisted Hochschild checks.
"""

from __future__ import annotations

from collections import namedtuple
from fractions import Fraction

from .qarith import QLaurent

__all__ = [
    "inversion_count",
    "normal_order",
    "monomials",
    "graded_dim",
    "factorization_exponent",
    "tensor_factorize",
    "Factorization",
    "format_monomial",
    "TruncatedPolynomialAlgebra",
]


def _check_word(word, num_generators=None):
    word = tuple(int(x) for x in word)
    g = max(word, default=1) if num_generators is None else int(num_generators)
    if any(not 1 <= x <= g for x in word):
        raise ValueError("generator indices must lie in 1..%d: %r" % (g, word))
    return word, g


def inversion_count(word) -> int:
    word, _g = _check_word(word)
    return sum(
        1
        for a in range(len(word))
        for b in range(a + 1, len(word))
        if word[a] > word[b]
    )


def normal_order(word, num_generators=None):
    """Sort a word of generator indices; returns (power of q, monomial).

    word = q^e * z_1^{s_1} ... z_g^{s_g} with e = -(number of inversions);
    the monomial is the exponent tuple (s_1, ..., s_g).
    """
    word, g = _check_word(word, num_generators)
    exps = [0] * g
    for x in word:
        exps[x - 1] += 1
    return QLaurent.q_power(-inversion_count(word)), tuple(exps)


def monomials(num_generators: int, degree: int):
    """Yield all exponent tuples of the given total degree, lexicographically."""
    if num_generators < 1:
        raise ValueError("need at least one generator")
    if degree < 0:
        raise ValueError("degree must be non-negative")

    def parts(remaining, slots):
        if slots == 1:
            yield (remaining,)
            return
        for first in range(remaining + 1):
            for rest in parts(remaining - first, slots - 1):
                yield (first,) + rest

    yield from parts(degree, num_generators)


def graded_dim(num_generators: int, degree: int) -> int:
    """Number of degree-N monomials in g q-commuting generators, by enumeration."""
    return sum(1 for _m in monomials(num_generators, degree))


def _word_of(mono):
    out = []
    for i, s in enumerate(mono, start=1):
        out.extend([i] * s)
    return tuple(out)


def format_monomial(mono) -> str:
    """Serialize an exponent tuple as z^[s1,s2,...]."""
    return "z^[%s]" % ",".join(str(s) for s in mono)


def factorization_exponent(s, r) -> int:
    """The commutation exponent R for moving the left factor past the right.

    R = sum over j >= 2 of r_j * sum_{i<j} (s_i - r_i); the nested form
    r_k{(s_{k-1}-r_{k-1}) + ...} + ... + r_2(s_1 - r_1) expands to exactly
    this.
    """
    s = tuple(int(x) for x in s)
    r = tuple(int(x) for x in r)
    if len(r) != len(s):
        raise ValueError("partition and monomial have different lengths")
    R = 0
    for j in range(1, len(s)):
        R += r[j] * sum(s[i] - r[i] for i in range(j))
    return R


Factorization = namedtuple("Factorization", "R left right")


def tensor_factorize(mono, N: int, partition=None) -> Factorization:
    """Split Z of degree N+M into (R, Z1, Z2) with Z1 Z2 = q^-R Z.

    The default partition fills r_1 = s_1, r_2 = s_2, ... greedily until N is
    exhausted.  An explicit partition must sum to N, satisfy 0 <= r_i <= s_i
    and be supported on indices 1..k, where k is the first index whose prefix
    sum of exponents exceeds N.  The stated postcondition is re-verified
    internally through `normal_order`.
    """
    s = tuple(int(x) for x in mono)
    if any(x < 0 for x in s):
        raise ValueError("exponents must be non-negative: %r" % (mono,))
    degree = sum(s)
    if not 0 <= N <= degree:
        raise ValueError("need 0 <= N <= deg(Z) = %d, got N=%d" % (degree, N))
    k = len(s)
    prefix = 0
    for i, x in enumerate(s, start=1):
        prefix += x
        if prefix > N:
            k = i
            break
    if partition is None:
        remaining = N
        r = []
        for x in s:
            take = min(x, remaining)
            r.append(take)
            remaining -= take
    else:
        r = [int(x) for x in partition]
        if len(r) != len(s):
            raise ValueError("partition length must match the monomial")
        if sum(r) != N:
            raise ValueError("partition must sum to N=%d" % N)
        if any(not 0 <= r[i] <= s[i] for i in range(len(s))):
            raise ValueError("partition must satisfy 0 <= r_i <= s_i")
        if any(r[i] for i in range(k, len(s))):
            raise ValueError("partition must be supported on the first k=%d indices" % k)
    left = tuple(r)
    right = tuple(s[i] - r[i] for i in range(len(s)))
    R = factorization_exponent(s, r)
    qpow, mono_check = normal_order(_word_of(left) + _word_of(right), len(s))
    assert mono_check == s and qpow == QLaurent.q_power(-R), \
        "factorization postcondition failed (internal bug)"
    return Factorization(R, left, right)


class TruncatedPolynomialAlgebra:
    """q-commuting polynomials modulo total degree > max_degree, exact q.

    Basis: exponent tuples of degree <= max_degree, graded then lexicographic.
    Products of basis monomials are single basis monomials scaled by an exact
    rational power of q (or zero past the cutoff), so multilinear cochains on
    this algebra can be evaluated with no rounding at all.
    """

    def __init__(self, num_generators: int, max_degree: int, q):
        if num_generators < 1 or max_degree < 0:
            raise ValueError("need at least one generator and max_degree >= 0")
        self.num_generators = num_generators
        self.max_degree = max_degree
        self.q = Fraction(q)
        if not 0 < self.q:
            raise ValueError("q must be a positive rational")
        basis = []
        for d in range(max_degree + 1):
            basis.extend(monomials(num_generators, d))
        self.basis = basis
        self.index = {m: i for i, m in enumerate(basis)}

    @property
    def dim(self):
        return len(self.basis)

    def product(self, i: int, j: int):
        """Product of basis elements i, j as (rational coefficient, index).

        Returns (0, None) when the product degree exceeds the cutoff.
        """
        a, b = self.basis[i], self.basis[j]
        total = tuple(x + y for x, y in zip(a, b))
        if sum(total) > self.max_degree:
            return Fraction(0), None
        e = -sum(
            a[p] * b[r]
            for p in range(self.num_generators)
            for r in range(p)
        )
        return self.q**e, self.index[total]

    def scaling_automorphism(self, factors):
        """Eigenvalues of z_i -> c_i z_i on the basis, as a list of Fractions."""
        factors = [Fraction(c) for c in factors]
        if len(factors) != self.num_generators:
            raise ValueError("need one scale per generator")
        out = []
        for m in self.basis:
            v = Fraction(1)
            for c, s in zip(factors, m):
                v *= c**s
            out.append(v)
        return out
