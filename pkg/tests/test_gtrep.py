"""Gelfand-Tsetlin machinery: enumeration, coefficients, relations, export."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp

from qproj.gtrep import (
    DimensionCapError,
    GTTableau,
    build_irrep,
    enumerate_tableaux,
    export_matrix,
    raise_coeff,
    verify_relations,
    weight_exponent,
    weyl_dim,
)

Q = Fraction(1, 2)
PREC = 60
TOL = mp.mpf("1e-40")


def qiv(z, q=Q, prec=PREC):
    """Numeric q-integer by direct power sum (independent of QLaurent)."""
    with mp.workdps(prec):
        qv = mp.mpf(q.numerator) / mp.mpf(q.denominator)
        if z == 0:
            return mp.mpf(0)
        s = 1 if z > 0 else -1
        return s * sum(qv**e for e in range(1 - abs(z), abs(z), 2))


# -- enumeration ---------------------------------------------------------------

def test_fundamental_su2():
    ts = enumerate_tableaux((1,))
    assert len(ts) == 2
    assert [t.rows for t in ts] == [((1, 0), (0,)), ((1, 0), (1,))]


def test_su3_antifundamental_count():
    assert len(enumerate_tableaux((0, 1))) == 3


def test_su3_adjoint_count_vs_weyl_oracle():
    assert weyl_dim((1, 1)) == 8
    assert len(enumerate_tableaux((1, 1))) == 8


@settings(max_examples=30, deadline=None)
@given(weight=st.lists(st.integers(0, 3), min_size=1, max_size=3).map(tuple))
def test_enumeration_matches_weyl_formula(weight):
    assert len(enumerate_tableaux(weight)) == weyl_dim(weight)


def test_ordering_is_lexicographic_on_flat():
    ts = enumerate_tableaux((1, 1))
    flats = [t.flat() for t in ts]
    assert flats == sorted(flats)


def test_fundamental_basis_is_the_integer_parametrization():
    # For weight (0,...,0,1) the basis vector |i> has ones above the step i.
    for ell in (1, 2, 3):
        weight = (0,) * (ell - 1) + (1,)
        ts = enumerate_tableaux(weight)
        assert len(ts) == ell + 1
        for i, t in enumerate(ts, start=1):
            for j in range(1, ell + 1):
                expected_last = 1 if j <= i - 1 else 0
                assert t.row(j)[-1] == expected_last


def test_interlacing_validation():
    assert GTTableau(((2, 0), (1,))).interlaces()
    assert not GTTableau(((2, 0), (3,))).interlaces()
    with pytest.raises(ValueError):
        GTTableau(((1, 0), (0, 0)))


# -- weight exponents ----------------------------------------------------------

def test_weight_exponent_direct_substitution():
    t = enumerate_tableaux((1,))[1]  # m_11 = 1 on top row (1, 0)
    assert weight_exponent(1, t) == 2 * 1 - (1 + 0)


def test_weight_exponent_constant_tableau_vanishes():
    m = 3
    t = GTTableau(((m, m, m, m), (m, m, m), (m, m), (m,)))
    for k in (1, 2, 3):
        assert weight_exponent(k, t) == 0


def test_weight_exponent_fundamental_delta_pattern():
    for ell in (1, 2, 3):
        ts = enumerate_tableaux((0,) * (ell - 1) + (1,))
        for j, t in enumerate(ts, start=1):
            for r in range(1, ell + 1):
                expected = (1 if r + 1 == j else 0) - (1 if r == j else 0)
                assert t.a(r) == expected


# -- raising coefficients --------------------------------------------------------

def test_fundamental_raise_coefficient_is_one():
    for ell in (1, 2, 3):
        ts = enumerate_tableaux((0,) * (ell - 1) + (1,))
        for r in range(1, ell + 1):
            c = raise_coeff(r, r, ts[r - 1], Q, PREC)
            assert abs(c - 1) < mp.mpf("1e-50")


def test_invalid_raise_gives_zero():
    ts = enumerate_tableaux((1,))
    top = ts[1]  # m_11 = 1, raising breaks m_11 <= m_12 = 1
    assert raise_coeff(1, 1, top, Q, PREC) == 0


def _longhand_e2(t, j):
    """Second-row raising radicands for ell = 2, expanded entry by entry.

    Written out independently of the library's shifted-entry product so a
    transcription slip on either side shows up as a numeric mismatch.
    """
    m13, m23, m33 = t.row(3)
    m12, m22 = t.row(2)
    m11 = t.row(1)[0]
    if j == 1:
        num = (qiv(m13 - m12) * qiv(m23 - m12 - 1) * qiv(m33 - m12 - 2)
               * qiv(m12 - m11 + 1))
        den = qiv(m12 - m22 + 1) * qiv(m12 - m22 + 2)
    else:
        num = (qiv(m13 - m22 + 1) * qiv(m23 - m22) * qiv(m33 - m22 - 1)
               * qiv(m11 - m22))
        den = qiv(m12 - m22 + 1) * qiv(m12 - m22)
    return num, den


def _longhand_f2(t, j):
    """Lowering radicands for ell = 2, expanded entry by entry.

    Obtained by transposing the longhand raising radicands (the basis is
    orthonormal, so lowering amplitudes are raising amplitudes of the
    lowered tableau).  The bottom-entry factors must be [m11 - m12] and
    [m11 - m22 + 1]; shifted variants would assign nonzero amplitude to
    interlacing-breaking moves (see the dedicated test below).
    """
    m13, m23, m33 = t.row(3)
    m12, m22 = t.row(2)
    m11 = t.row(1)[0]
    if j == 1:
        num = (qiv(m13 - m12 + 1) * qiv(m23 - m12) * qiv(m33 - m12 - 1)
               * qiv(m11 - m12))
        den = qiv(m12 - m22) * qiv(m12 - m22 + 1)
    else:
        num = (qiv(m13 - m22 + 2) * qiv(m23 - m22 + 1) * qiv(m33 - m22)
               * qiv(m11 - m22 + 1))
        den = qiv(m12 - m22 + 1) * qiv(m12 - m22 + 2)
    return num, den


def test_e2_coefficients_match_longhand_radicands():
    rng = random.Random(7)
    checked = 0
    while checked < 20:
        weight = (rng.randint(0, 4), rng.randint(0, 4))
        ts = enumerate_tableaux(weight)
        t = rng.choice(ts)
        for j in (1, 2):
            with mp.workdps(PREC):
                num, den = _longhand_e2(t, j)
                ours = raise_coeff(2, j, t, Q, PREC)
                if den == 0:
                    assert ours == 0
                    continue
                longhand = mp.sqrt(abs(num / den)) if num / den else mp.mpf(0)
                if t.raised(j, 2) is None:
                    assert longhand < mp.mpf("1e-45") and ours == 0
                else:
                    assert abs(ours - longhand) < mp.mpf("1e-45")
            checked += 1


def test_f2_coefficients_match_longhand_radicands():
    rng = random.Random(11)
    q = Q
    checked = 0
    while checked < 20:
        weight = (rng.randint(0, 4), rng.randint(0, 4))
        mod = build_irrep(weight, q, PREC, dim_cap=500)
        t = rng.choice(mod.basis)
        col = mod.index[t]
        for j in (1, 2):
            with mp.workdps(PREC):
                target = t.lowered(j, 2)
                entry = mp.mpf(0)
                if target is not None:
                    entry = mod.F[2].get(mod.index[target], col)
                num, den = _longhand_f2(t, j)
                if den == 0:
                    assert entry == 0
                    continue
                longhand = mp.sqrt(abs(num / den)) if num / den else mp.mpf(0)
                if target is None:
                    assert longhand < mp.mpf("1e-45")
                else:
                    assert abs(entry - longhand) < mp.mpf("1e-45")
            checked += 1


def test_f2_bottom_factor_shift_is_detectable():
    # A shifted bottom-entry factor [m11 - m22 - 2] in place of
    # [m11 - m22 + 1] would give the defining representation a lowering
    # amplitude sqrt([2]) != 1 on its top vector; the *-structure
    # (F = E transposed) forces amplitude exactly 1, so the cross-check
    # genuinely discriminates.
    t = enumerate_tableaux((0, 1))[2]
    m13, m23, m33 = t.row(3)
    m12, m22 = t.row(2)
    m11 = t.row(1)[0]
    shifted = (qiv(m13 - m22 + 2) * qiv(m23 - m22 + 1) * qiv(m33 - m22)
               * qiv(m11 - m22 - 2)) / (qiv(m12 - m22 + 1) * qiv(m12 - m22 + 2))
    assert abs(abs(shifted) - qiv(2)) < mp.mpf("1e-50")  # sqrt([2]) != 1
    mod = build_irrep((0, 1), Q, PREC)
    target = t.lowered(2, 2)
    assert abs(mod.F[2].get(mod.index[target], mod.index[t]) - 1) < mp.mpf("1e-50")


# -- module construction ---------------------------------------------------------

def test_su2_matrix_entries_reproduce_spin_formulas():
    # Weight (2J): E raises m with <m|E|m-1> = sqrt([l-m+1][l+m]), K diag q^m.
    for twoJ in (1, 2, 3):
        mod = build_irrep((twoJ,), Q, PREC)
        l = Fraction(twoJ, 2)
        with mp.workdps(PREC):
            qs = mp.sqrt(mp.mpf(Q.numerator) / mp.mpf(Q.denominator))
            for idx, t in enumerate(mod.basis):
                m = Fraction(t.row(1)[0]) - l
                assert abs(mod.K[1].get(idx, idx) - qs ** int(2 * m)) < mp.mpf("1e-50")
                if m > -l:
                    lower = mod.index[t.lowered(1, 1)]
                    expected = mp.sqrt(qiv(int(l - m + 1)) * qiv(int(l + m)))
                    assert abs(mod.E[1].get(idx, lower) - expected) < mp.mpf("1e-45")


def test_fundamental_matrix_units():
    for ell in (1, 2, 3):
        mod = build_irrep((0,) * (ell - 1) + (1,), Q, PREC)
        for r in range(1, ell + 1):
            entries = dict(mod.E[r].entries())
            assert set(entries) == {(r, r - 1)}  # 0-based (r+1, r) in 1-based
            assert abs(entries[(r, r - 1)] - 1) < mp.mpf("1e-50")


def test_trivial_representation():
    mod = build_irrep((0, 0), Q, PREC)
    assert mod.dim == 1
    for k in (1, 2):
        assert mod.E[k].nnz == 0 and mod.F[k].nnz == 0
        assert abs(mod.K[k].get(0, 0) - 1) < mp.mpf("1e-55")


def test_f_is_transpose_of_e():
    mod = build_irrep((1, 1), Q, PREC)
    for k in (1, 2):
        assert dict(mod.F[k].entries()) == {(j, i): v for (i, j), v in mod.E[k].entries()}


def test_dimension_cap():
    with pytest.raises(DimensionCapError):
        build_irrep((3, 3, 3), Q, PREC, dim_cap=10)


# -- relations --------------------------------------------------------------------

def test_relations_fundamental_su2_tight():
    report = verify_relations(build_irrep((1,), Q, PREC), mp.mpf("1e-50"))
    assert report.ok, report.failures()


def test_relations_su3_adjoint():
    report = verify_relations(build_irrep((1, 1), Q, PREC), TOL)
    assert report.ok, report.failures()


def test_relations_su4_serre_cases():
    report = verify_relations(build_irrep((1, 0, 1), Q, PREC), TOL)
    assert report.ok, report.failures()
    serre = {c.name for c in report.checks if c.name.startswith("serre(E")}
    assert {"serre(E1,E2)", "serre(E2,E1)", "serre(E2,E3)", "serre(E3,E2)"} <= serre


# -- structural invariants ---------------------------------------------------------

def test_e_f_targets_stay_interlacing():
    mod = build_irrep((1, 1), Q, PREC)
    for k in (1, 2):
        for (i, j), _v in mod.E[k].entries():
            assert mod.basis[i].interlaces() and mod.basis[j].interlaces()


def test_raising_amplitudes_are_nonnegative():
    # the positive square root is taken everywhere
    for weight in [(2,), (1, 1), (0, 2)]:
        mod = build_irrep(weight, Q, PREC)
        for k in range(1, mod.ell + 1):
            assert all(v >= 0 for _ij, v in mod.E[k].entries())


def test_weight_additivity_along_e():
    for weight in [(2,), (1, 1), (0, 2), (1, 0, 1)]:
        mod = build_irrep(weight, Q, PREC)
        ell = mod.ell
        for k in range(1, ell + 1):
            for (i, j), _v in mod.E[k].entries():
                src, dst = mod.basis[j], mod.basis[i]
                assert dst.a(k) == src.a(k) + 2
                for other in (k - 1, k + 1):
                    if 1 <= other <= ell:
                        assert dst.a(other) == src.a(other) - 1


def test_e_columns_have_at_most_k_entries():
    # E_k raises one of k entries in row k, so columns carry <= k values.
    for weight in [(1, 1), (1, 0, 1)]:
        mod = build_irrep(weight, Q, PREC)
        for k in range(1, mod.ell + 1):
            per_col = {}
            for (_i, j), _v in mod.E[k].entries():
                per_col[j] = per_col.get(j, 0) + 1
            assert all(count <= k for count in per_col.values())


def test_ef_commutator_is_diagonal():
    mod = build_irrep((1, 1), Q, PREC)
    with mp.workdps(PREC):
        for k in (1, 2):
            comm = mod.E[k] @ mod.F[k] - mod.F[k] @ mod.E[k]
            off = [v for (i, j), v in comm.entries() if i != j]
            assert all(abs(v) < mp.mpf("1e-50") for v in off)


# -- export --------------------------------------------------------------------

def test_export_header_and_determinism():
    mod = build_irrep((0, 1), Q, PREC)
    text = export_matrix(mod, "E", 2)
    lines = text.splitlines()
    assert lines[0] == "# irrep ℓ=2 n=0,1 op=E2 q=1/2 precision=60"
    assert text == export_matrix(mod, "E", 2)
    for line in lines[1:]:
        i, j, value = line.split()
        assert int(i) >= 0 and int(j) >= 0
        mp.mpf(value)  # parses back


def test_export_rejects_bad_op():
    mod = build_irrep((1,), Q, PREC)
    with pytest.raises(ValueError):
        export_matrix(mod, "X", 1)
    with pytest.raises(ValueError):
        export_matrix(mod, "E", 2)
