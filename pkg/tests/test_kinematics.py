import math
from fractions import Fraction

import numpy as np
import pytest

from koba.core import diagonal_svector
from koba.domain import box_contains, check_membership, enumerate_inequalities, is_on_pole
from koba.kinematics import (
    MomentumConfig,
    UBoxParams,
    build_equidistributed,
    build_prop3,
    check_kinematics,
    minkowski_product,
    momentum_to_s,
    sample_u,
    scattering_feasible,
)


def test_minkowski_signature():
    assert minkowski_product((1, 0), (1, 0)) == -1
    assert minkowski_product((0, 1), (0, 1)) == 1
    with pytest.raises(ValueError):
        minkowski_product((1, 0), (1, 0, 0))


def test_minkowski_bilinear_symmetric():
    rng = np.random.default_rng(3)
    for _ in range(50):
        a, b, c = (rng.normal(size=4) + 1j * rng.normal(size=4) for _ in range(3))
        lam = complex(rng.normal(), rng.normal())
        assert minkowski_product(a, b) == pytest.approx(minkowski_product(b, a))
        lhs = minkowski_product(a, lam * b + c)
        rhs = lam * minkowski_product(a, b) + minkowski_product(a, c)
        assert lhs == pytest.approx(rhs)


def test_prop3_products_and_domain():
    cfg = build_prop3(4, 3)
    s = momentum_to_s(cfg)
    assert all(v == pytest.approx(-2 / 3, abs=1e-14) for v in s.as_list())
    assert minkowski_product(cfg.vector(1), cfg.vector(2)) == pytest.approx(-2 / 3)
    assert check_membership(enumerate_inequalities(4), s).inside

    s5 = momentum_to_s(build_prop3(5, 4))
    assert all(v == pytest.approx(-0.5, abs=1e-14) for v in s5.as_list())

    with pytest.raises(ValueError):
        build_prop3(6, 4)


def test_prop3_constant_sits_in_box_exact():
    # -2/(N-2) < -2/(N-1) < -2/N as exact rationals
    for N in range(4, 51):
        val = Fraction(-2, N - 1)
        assert Fraction(-2, N - 2) < val < Fraction(-2, N)


def test_prop3_kinematics_pass():
    for N in range(4, 11):
        rep = check_kinematics(build_prop3(N, N - 1))
        assert rep.passed
        assert rep.conservation_residual <= 1e-12
        assert max(rep.mass_shell_residuals) <= 1e-12


def test_zero_momentum_entry():
    zero = (0j, 0j, 0j, 0j)
    cfg = MomentumConfig(4, 3, (build_prop3(4, 3).vector(1), zero,
                                build_prop3(4, 3).vector(3), build_prop3(4, 3).vector(4)))
    s = momentum_to_s(cfg)
    assert s[(1, 2)] == 0 and s[(3, 2)] == 0


def test_all_zero_config():
    zero = tuple([0j] * 4)
    cfg = MomentumConfig(4, 3, (zero,) * 4)
    rep = check_kinematics(cfg)
    assert rep.conservation_residual == 0.0
    assert all(r == pytest.approx(2.0) for r in rep.mass_shell_residuals)
    assert not rep.passed
    assert scattering_feasible(cfg) == "constraint-violated"


def test_equidistributed_constraints():
    for N in range(4, 13):
        rep = check_kinematics(build_equidistributed(N))
        assert rep.conservation_residual <= 1e-12
        assert max(rep.mass_shell_residuals) <= 1e-12


def test_equidistributed_products_match_cosine_formula():
    N = 5
    s = momentum_to_s(build_equidistributed(N))
    base = 2 / (N - 1) ** 2
    amp = 2 * N * (N - 2) / (N - 1) ** 2
    # angle difference m * 2pi/(N-1); the (1,3) pair has m = 2
    assert s[(1, 3)] == pytest.approx(base + math.cos(math.pi) * amp, abs=1e-12)
    assert s[(1, 3)] == pytest.approx(2 / 16 - 30 / 16, abs=1e-12)
    assert s[(1, 2)] == pytest.approx(base + math.cos(math.pi / 2) * amp, abs=1e-12)
    assert max(abs(v.imag) for v in s.as_list()) <= 1e-12


def test_equidistributed_avoids_poles():
    for N in (4, 5, 7, 10):
        s = momentum_to_s(build_equidistributed(N))
        assert is_on_pole(N, s, "R", t_max=10, tol=1e-9) == []


def test_ubox_invariants():
    with pytest.raises(ValueError):
        UBoxParams(5, 3, 0.05, 0.30)   # C - B != 1/N
    with pytest.raises(ValueError):
        UBoxParams(5, 3, 0.30, 0.50)   # C >= 1/(N-2)
    p = UBoxParams.default(5, 3)
    assert p.C - p.B == pytest.approx(1 / 5)


def test_sample_u_lands_in_box():
    params = UBoxParams(5, 3, 0.05, 0.25)
    configs = sample_u(params, seed=7, count=100)
    assert len(configs) == 100
    for cfg in configs:
        assert len(cfg.vectors) == 4
        assert box_contains(5, momentum_to_s(cfg))


def test_sample_u_deterministic():
    params = UBoxParams(5, 3, 0.05, 0.25)
    a = sample_u(params, seed=11, count=5)
    b = sample_u(params, seed=11, count=5)
    assert all(x.vectors == y.vectors for x, y in zip(a, b))
    c = sample_u(params, seed=12, count=5)
    assert a[0].vectors != c[0].vectors


def test_scattering_feasible_classes():
    assert scattering_feasible(build_prop3(5, 4)) == "feasible"
    # a planar (l = 1) solution of the constraints: back-to-back pairs;
    # such points always land on a candidate pole hyperplane
    k1 = (0.0, math.sqrt(2))
    k2 = (0.0, -math.sqrt(2))
    k3 = (1.0, math.sqrt(3))
    k4 = (-1.0, -math.sqrt(3))
    cfg = MomentumConfig(4, 1, tuple(tuple(complex(c) for c in v) for v in (k1, k2, k3, k4)))
    assert check_kinematics(cfg).passed
    assert scattering_feasible(cfg) in ("on-pole", "outside-domain")
    assert scattering_feasible(cfg) == "on-pole"


def test_momentum_config_validation():
    with pytest.raises(ValueError):
        MomentumConfig(4, 1, ((0j, 0j),))  # wrong vector count
    with pytest.raises(ValueError):
        MomentumConfig(4, 1, ((0j, 0j), (0j,), (0j, 0j), (0j, 0j)))
    with pytest.raises(ValueError):
        check_kinematics(MomentumConfig(5, 3, tuple([tuple([0j] * 4)] * 4)))
