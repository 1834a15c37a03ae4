import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from koba.core import diagonal_svector, svector
from koba.padic_eval import (
    PadicParams,
    eval_n4_padic,
    eval_padic_tree,
    is_prime,
    n4_padic_rational,
    sector_value,
)
from koba.results import DivergenceError


def brute_shell_sum(p, a, b, depth=600):
    """Independent oracle: sum the integral shell by shell.

    |x| = p^-m and |x-1| = p^-m shells (m >= 1) have measure p^-m (1-1/p);
    |x| = p^m shells have measure p^m (1-1/p) and |1-x| = |x| there; the
    remaining units contribute measure 1 - 2/p.
    """
    total = 1.0 - 2.0 / p
    unit = 1.0 - 1.0 / p
    for m in range(1, depth + 1):
        total += unit * float(p) ** (-(a + 1) * m)
        total += unit * float(p) ** (-(b + 1) * m)
        total += unit * float(p) ** ((a + b + 1) * m)
    return total


def random_rational_pair(rng):
    while True:
        a = Fraction(int(rng.integers(-99, -1)), 100)
        b = Fraction(int(rng.integers(-99, -1)), 100)
        if a > -1 and b > -1 and a + b < -1:
            return a, b


def test_is_prime():
    assert [n for n in range(2, 20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert not is_prime(1) and not is_prime(0) and not is_prime(-3)


def test_closed_form_against_brute_shells():
    for p in (2, 3, 5, 7):
        for a, b in [(-0.6, -0.6), (-0.6, -0.55), (-0.9, -0.2), (-0.35, -0.8)]:
            closed = eval_n4_padic(p, a, b)
            brute = brute_shell_sum(p, a, b)
            assert closed.imag == pytest.approx(0.0, abs=1e-14)
            assert closed.real == pytest.approx(brute, rel=1e-12)


def test_closed_form_specific_value():
    # p = 3, a = b = -3/5: constant 1/3 plus geometric terms in
    # u = 3^(-2/5) (twice) and w = 3^(-1/5)
    u = 3.0 ** (-0.4)
    w = 3.0 ** (-0.2)
    expected = (1 - 2 / 3) + (1 - 1 / 3) * (2 * u / (1 - u) + w / (1 - w))
    assert eval_n4_padic(3, -0.6, -0.6).real == pytest.approx(expected, rel=1e-14)


def test_closed_form_symmetry_and_p2():
    assert eval_n4_padic(5, -0.7, -0.4) == pytest.approx(eval_n4_padic(5, -0.4, -0.7))
    # for p = 2 the unit annulus is empty: value is the three series alone
    a, b = -0.7, -0.6
    u, v, w = 2.0 ** (-(a + 1)), 2.0 ** (-(b + 1)), 2.0 ** (a + b + 1)
    expected = 0.5 * (u / (1 - u) + v / (1 - v) + w / (1 - w))
    assert eval_n4_padic(2, a, b).real == pytest.approx(expected, rel=1e-14)


def test_closed_form_errors():
    with pytest.raises(ValueError):
        eval_n4_padic(4, -0.6, -0.6)
    with pytest.raises(DivergenceError):
        eval_n4_padic(3, -0.4, -0.4)


def test_rational_form_matches_direct():
    r = n4_padic_rational(3)
    rng = np.random.default_rng(2)
    for _ in range(5):
        a, b = random_rational_pair(rng)
        direct = eval_n4_padic(3, float(a), float(b))
        assert r.evaluate(float(a), float(b)) == pytest.approx(direct, rel=1e-12)
    blob = r.to_json_dict()
    assert blob["numerator"]["terms"] and blob["denominator"]["terms"]


def test_rationality_periodicity_witness():
    # shifting any exponent by 2 pi i / log p leaves p^-s unchanged
    period = 2j * math.pi / math.log(3)
    v0 = eval_n4_padic(3, -0.7, -0.52)
    assert abs(eval_n4_padic(3, -0.7 + period, -0.52) - v0) <= 1e-12 * abs(v0)
    assert abs(eval_n4_padic(3, -0.7, -0.52 + period) - v0) <= 1e-12 * abs(v0)


def test_tree_exactness_n4():
    rng = np.random.default_rng(40)
    for p in (2, 3, 5, 7):
        for _ in range(10):
            a, b = random_rational_pair(rng)
            closed = eval_n4_padic(p, float(a), float(b))
            s = svector(4, {(1, 2): float(a), (3, 2): float(b)})
            res = eval_padic_tree(PadicParams(p, s))
            assert res.status == "estimate"
            assert res.tail_bound == 0.0
            assert abs(res.value - closed) <= 1e-12 * abs(closed)


def test_tree_depth_insensitive():
    s = diagonal_svector(5, -0.5)
    v6 = eval_padic_tree(PadicParams(5, s, max_depth=6))
    v12 = eval_padic_tree(PadicParams(5, s, max_depth=12))
    assert v6.value == v12.value
    assert v6.tail_bound == 0.0 and v12.tail_bound == 0.0
    assert v6.tail_bound <= v12.tail_bound or v6.tail_bound == v12.tail_bound


def test_tree_n5_factorization_oracle():
    # s23 = 0 factorizes the 5-point integral into two 4-point ones
    for p in (2, 3, 5):
        s = svector(5, {(1, 2): -0.6, (1, 3): -0.55, (4, 2): -0.6,
                        (4, 3): -0.55, (2, 3): 0.0})
        res = eval_padic_tree(PadicParams(p, s))
        product = eval_n4_padic(p, -0.6, -0.6) * eval_n4_padic(p, -0.55, -0.55)
        assert abs(res.value - product) <= 1e-12 * abs(product)


def test_tree_measure_sanity():
    # integrand identically 1 on the all-bounded sector: exactly the unit
    # ball measure
    s0 = diagonal_svector(5, 0.0)
    full = sector_value(5, (2, 3), s0, p=3)
    assert abs(full - 1.0) <= 1e-15
    full4 = sector_value(4, (2,), diagonal_svector(4, 0.0), p=7)
    assert abs(full4 - 1.0) <= 1e-15


def test_tree_divergence_detection():
    s = svector(4, {(1, 2): -0.4, (3, 2): -0.4})
    res = eval_padic_tree(PadicParams(3, s))
    assert res.status == "diverged_by_domain" and res.value is None
    res_b = eval_padic_tree(PadicParams(3, diagonal_svector(4, -0.5)))
    assert res_b.status == "boundary"


def test_tree_complex_exponents():
    # complex s evaluates numerically through powers p^(-s m)
    a = complex(-0.6, 0.3)
    b = complex(-0.7, -0.2)
    s = svector(4, {(1, 2): a, (3, 2): b})
    res = eval_padic_tree(PadicParams(5, s))
    closed = eval_n4_padic(5, a, b)
    assert abs(res.value - closed) <= 1e-12 * abs(closed)


def test_params_validation():
    s = diagonal_svector(4, -0.6)
    with pytest.raises(ValueError):
        PadicParams(6, s)
    with pytest.raises(ValueError):
        PadicParams(3, s, max_depth=0)
