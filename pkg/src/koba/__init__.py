"""Koba-Nielsen local zeta toolkit: convergence domains, candidate pole
families and numerical/exact evaluation over R, C and Q_p, plus the
kinematic and log-Coulomb-gas front ends."""

from .core import IndexSet, PairIndex, SVector, diagonal_svector, index_set, svector
from .domain import (
    AffineForm,
    InequalitySystem,
    MembershipReport,
    PoleFamily,
    PoleHit,
    box_contains,
    check_membership,
    enumerate_inequalities,
    is_on_pole,
    pole_families,
)
from .kinematics import (
    KinematicsReport,
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
from .real_eval import (
    GrowthProbe,
    eval_mc,
    eval_n4_closed_complex,
    eval_n4_closed_real,
    eval_quadrature_n4,
    growth_probe,
)
from .padic_eval import PadicParams, eval_n4_padic, eval_padic_tree, n4_padic_rational
from .coulomb import GasSpec, beta_window, charges_to_s, partition_function
from .results import DivergenceError, EvalResult, EvalSettings, ResourceLimitError

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
