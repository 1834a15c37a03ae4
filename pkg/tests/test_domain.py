from fractions import Fraction

import numpy as np
import pytest

from koba.core import diagonal_svector, index_set, svector
from koba.domain import (
    box_contains,
    check_membership,
    enumerate_inequalities,
    is_on_pole,
    pole_families,
    swap_fixed_sites,
)
from koba.results import ResourceLimitError

from fixtures_domain import N5_INEQUALITIES, N6_INEQUALITIES, normalized_key

EXPECTED_COUNTS = {4: 3, 5: 10, 6: 25, 7: 56, 8: 119, 9: 246, 10: 501, 11: 1012, 12: 2035}


def test_counts():
    for N, expected in EXPECTED_COUNTS.items():
        system = enumerate_inequalities(N)
        assert len(system) == expected == 2 ** (N - 1) - N - 1


def test_refuses_oversized_n():
    with pytest.raises(ResourceLimitError):
        enumerate_inequalities(27)
    with pytest.raises(ValueError):
        enumerate_inequalities(3)


def test_sign_pattern():
    # every form is all-(+1) with gamma > 0 or all-(-1) with gamma < 0
    for N in range(4, 10):
        for form in enumerate_inequalities(N).forms:
            coeffs = {c for _, c in form.coeffs}
            assert coeffs == {1} and form.gamma > 0 or coeffs == {-1} and form.gamma < 0


def test_n4_system_explicit():
    system = enumerate_inequalities(4)
    keys = {f.key() for f in system.forms}
    iset = index_set(4)
    p12, p32 = iset.pairs
    assert keys == {
        (((p12, 1),), 1),
        (((p32, 1),), 1),
        ((tuple(sorted([(p12, -1), (p32, -1)]))), -1),
    }


@pytest.mark.parametrize("N,transcribed", [(5, N5_INEQUALITIES), (6, N6_INEQUALITIES)])
def test_golden_lists(N, transcribed):
    generated = {f.key() for f in enumerate_inequalities(N).forms}
    expected = {normalized_key(N, pairs, gamma, sense) for pairs, gamma, sense in transcribed}
    assert len(expected) == len(transcribed)
    assert generated == expected


def test_membership_inside_box_point():
    report = check_membership(enumerate_inequalities(5), diagonal_svector(5, -0.5))
    assert report.inside and report.status == "inside"


def test_membership_flags_factorized_divergent_point():
    # the point where the outer-region conditions of the 5-point domain fail
    s0 = svector(5, {(1, 2): -0.25, (1, 3): -2 / 3, (4, 2): -2 / 3,
                     (4, 3): -2 / 3, (2, 3): 0.0})
    report = check_membership(enumerate_inequalities(5), s0)
    assert report.status == "outside"
    assert len(report.violated) == 1
    form, slack = report.violated[0]
    assert form.tag == "EQ_E" and form.J == (2,)
    assert slack == pytest.approx(-1 / 12, abs=1e-15)
    # in the raw "< -1" orientation the left-hand side sits at -11/12
    lhs = form.gamma - slack
    assert lhs == pytest.approx(-11 / 12, abs=1e-15)


def test_membership_boundary():
    report = check_membership(enumerate_inequalities(4), diagonal_svector(4, -0.5))
    assert report.status == "boundary"
    assert not report.inside and not report.violated
    assert [f.tag for f, _ in report.boundary] == ["EQ_E"]


def test_membership_validation():
    system = enumerate_inequalities(4)
    with pytest.raises(ValueError):
        check_membership(system, diagonal_svector(5, -0.5))
    with pytest.raises(ValueError):
        check_membership(system, diagonal_svector(4, -0.6), tol=-1.0)


def test_box_contains():
    assert box_contains(5, diagonal_svector(5, -0.5))
    assert box_contains(6, diagonal_svector(6, -0.45))
    assert not box_contains(4, diagonal_svector(4, -1.2))
    with pytest.raises(ValueError):
        box_contains(5, diagonal_svector(4, -0.5))


def test_random_box_points_are_inside():
    rng = np.random.default_rng(20240901)
    for N in range(4, 10):
        system = enumerate_inequalities(N)
        M, gam = system.coefficient_matrix()
        d = N * (N - 3) // 2
        lo, hi = -2 / (N - 2), -2 / N
        pts = rng.uniform(lo, hi, size=(200, d))
        slacks = pts @ M.T + gam
        assert (slacks > 1e-12).all()


def test_fixed_site_symmetry_maps_eq_b_onto_eq_c():
    N = 6
    system = enumerate_inequalities(N)
    rng = np.random.default_rng(7)
    iset = index_set(N)
    vals = {p: complex(v) for p, v in zip(iset.pairs, rng.uniform(-0.5, -1 / 3, len(iset)))}
    s = svector(N, {tuple(p): v for p, v in vals.items()})
    swapped = swap_fixed_sites(s)
    by_key = {}
    for f in system.forms:
        by_key[(f.tag, f.J)] = f
    for f in system.forms:
        if f.tag == "EQ_B":
            partner = by_key[("EQ_C", f.J)]
            assert f.evaluate(s) == pytest.approx(partner.evaluate(swapped), abs=1e-12)
    # membership status is invariant under the swap
    assert check_membership(system, s).status == check_membership(system, swapped).status


def test_pole_families_n4():
    fams_r = pole_families(4, "R")
    assert len(fams_r) == 3
    assert all(f.step == Fraction(1) for f in fams_r)
    fams_c = pole_families(4, "C")
    assert all(f.step == Fraction(1, 2) for f in fams_c)
    # EQ_A family over R: hyperplanes s12 = -1 - t
    fam12 = next(f for f in fams_r if f.form.tag == "EQ_A" and f.form.J == (1, 2))
    for t in range(4):
        s = svector(4, {(1, 2): -1.0 - t, (3, 2): -0.3})
        assert abs(fam12.residual(s, t)) < 1e-15
    # over C the shift halves
    fam12c = next(f for f in fams_c if f.form.tag == "EQ_A" and f.form.J == (1, 2))
    s = svector(4, {(1, 2): -1.5, (3, 2): -0.3})
    assert abs(fam12c.residual(s, 1)) < 1e-15
    # over Qp only the real-part hyperplane at t = 0 counts
    fam12q = next(f for f in pole_families(4, "Qp")
                  if f.form.tag == "EQ_A" and f.form.J == (1, 2))
    s = svector(4, {(1, 2): complex(-1.0, 5.3), (3, 2): -0.3})
    assert abs(fam12q.residual(s, 0)) < 1e-15
    with pytest.raises(ValueError):
        pole_families(4, "F7")


def test_is_on_pole_examples():
    s_hit = svector(4, {(1, 2): -1.0, (3, 2): -0.3})
    hits = is_on_pole(4, s_hit, "R", t_max=3, tol=1e-9)
    assert [(h.family.form.tag, h.family.form.J, h.t) for h in hits] == [("EQ_A", (1, 2), 0)]

    s_miss = svector(4, {(1, 2): -0.6, (3, 2): -0.6})  # sum -1.2 avoids -1 + t
    assert is_on_pole(4, s_miss, "R", t_max=3, tol=1e-9) == []

    # the sum family over R: s12 + s32 = -1 + t
    s_sum = svector(4, {(1, 2): -0.4, (3, 2): 0.4})   # sum 0 = -1 + 1
    hits = is_on_pole(4, s_sum, "R", t_max=3, tol=1e-9)
    assert [(h.family.form.tag, h.t) for h in hits] == [("EQ_E", 1)]

    # over C half-integer shifts are scanned as well
    s_half = svector(4, {(1, 2): -1.5, (3, 2): -0.3})
    hits_c = is_on_pole(4, s_half, "C", t_max=3, tol=1e-9)
    assert ("EQ_A", (1, 2), 1) in [(h.family.form.tag, h.family.form.J, h.t) for h in hits_c]
    assert is_on_pole(4, s_half, "R", t_max=3, tol=1e-9) == []


def test_integer_sum_avoidance():
    # subset sums of these entries never land on -gamma - t for t <= 3
    s = svector(5, {(1, 2): -0.43, (1, 3): -0.57, (4, 2): -0.61,
                    (4, 3): -0.47, (2, 3): -0.53})
    assert is_on_pole(5, s, "R", t_max=3, tol=1e-9) == []
