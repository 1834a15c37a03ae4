"""Tachyon momentum configurations and the map to exponent space.

Momenta live in C^(l+1) with the bilinear Minkowski pairing
k.k' = -k_0 k'_0 + k_1 k'_1 + ... + k_l k'_l (no conjugation: the pairing
is evaluated at complex momenta).  Units put the tachyon mass at
m^2 = -2, so the mass shell is k.k = 2 and total momentum must vanish.

Two explicit constructors of scattering solutions are provided, plus a
sampler for the product box U whose image under k -> (k_i.k_j) lands in
the open cube (-2/(N-2), -2/N)^d where the amplitude integral converges.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import SVector, index_set
from .domain import box_contains, is_on_pole
from ._rng import stream


@dataclass(frozen=True)
class MomentumConfig:
    """N-point configuration; vectors[i] is k_{i+1}, each of length l+1.

    Constructors produce all N momenta.  U-box samples carry only the
    N-1 vectors constrained by the box (the last momentum is free there),
    which is enough for the exponent map.
    """

    N: int
    l: int
    vectors: tuple[tuple[complex, ...], ...]

    def __post_init__(self) -> None:
        if self.l < 1:
            raise ValueError("need l >= 1")
        if len(self.vectors) not in (self.N - 1, self.N):
            raise ValueError(f"expected {self.N - 1} or {self.N} vectors, got {len(self.vectors)}")
        if any(len(v) != self.l + 1 for v in self.vectors):
            raise ValueError("all vectors must have length l+1")

    def vector(self, i: int) -> tuple[complex, ...]:
        """Momentum of the i-th tachyon, 1-based."""
        return self.vectors[i - 1]

    def to_json_dict(self) -> dict:
        return {
            "N": self.N,
            "l": self.l,
            "vectors": [[{"re": c.real, "im": c.imag} for c in v] for v in self.vectors],
        }

    @classmethod
    def from_json_dict(cls, data) -> "MomentumConfig":
        vecs = tuple(
            tuple(complex(float(c.get("re", 0.0)), float(c.get("im", 0.0))) for c in v)
            for v in data["vectors"]
        )
        return cls(int(data["N"]), int(data["l"]), vecs)


def minkowski_product(a, b) -> complex:
    """Bilinear signature (-,+,...,+) product of two momentum vectors."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    total = -a[0] * b[0]
    for x, y in zip(a[1:], b[1:]):
        total += x * y
    return complex(total)


def momentum_to_s(cfg: MomentumConfig) -> SVector:
    """Exponent vector s_ij = k_i . k_j over the canonical pairs."""
    if cfg.N < 4:
        raise ValueError("need N >= 4")
    iset = index_set(cfg.N)
    values = {p: minkowski_product(cfg.vector(p.i), cfg.vector(p.j)) for p in iset.pairs}
    return SVector(iset, values)


@dataclass
class KinematicsReport:
    conservation_residual: float
    mass_shell_residuals: list[float]
    tol: float

    @property
    def passed(self) -> bool:
        return self.conservation_residual <= self.tol and all(
            r <= self.tol for r in self.mass_shell_residuals
        )

    def to_json_dict(self) -> dict:
        return {
            "passed": self.passed,
            "conservation_residual": self.conservation_residual,
            "mass_shell_residuals": self.mass_shell_residuals,
            "tol": self.tol,
        }


def check_kinematics(cfg: MomentumConfig, tol: float = 1e-12) -> KinematicsReport:
    """Residuals of momentum conservation and the mass shell k.k = 2."""
    if len(cfg.vectors) != cfg.N:
        raise ValueError("conservation check needs all N momenta")
    total = np.sum(np.asarray(cfg.vectors, dtype=complex), axis=0)
    conservation = float(np.linalg.norm(total))
    mass = [abs(minkowski_product(v, v) - 2.0) for v in cfg.vectors]
    return KinematicsReport(conservation, mass, tol)


def build_prop3(N: int, l: int) -> MomentumConfig:
    """Real scattering solution with constant products -2/(N-1).

    Takes equal time components sqrt(2/(N-1)) and pairwise orthogonal
    spatial parts of norm sqrt(2N/(N-1)) for the first N-1 momenta; the
    last momentum balances the total.  Needs N-1 <= l spatial directions.
    """
    if N < 4:
        raise ValueError("need N >= 4")
    if N > l + 1:
        raise ValueError(f"construction requires N <= l+1, got N={N}, l={l}")
    t = math.sqrt(2.0 / (N - 1))
    r = math.sqrt(2.0 * N / (N - 1))
    vectors = []
    for i in range(1, N):
        v = [0.0] * (l + 1)
        v[0] = t
        v[i] = r
        vectors.append(tuple(complex(c) for c in v))
    last = [-sum(v[m] for v in vectors) for m in range(l + 1)]
    vectors.append(tuple(last))
    return MomentumConfig(N, l, tuple(vectors))


def build_equidistributed(N: int) -> MomentumConfig:
    """Solution family with l = 2, purely imaginary time components and
    planar spatial parts spaced by the angle 2*pi/(N-1).

    The products k_i.k_j take the values
    2/(N-1)^2 + cos(2*pi*m/(N-1)) * 2N(N-2)/(N-1)^2.
    """
    if N < 4:
        raise ValueError("need N >= 4")
    t = cmath.sqrt(-2) / (N - 1)
    r = math.sqrt(2.0 * N * (N - 2)) / (N - 1)
    vectors = []
    for i in range(N - 1):
        angle = 2.0 * math.pi * i / (N - 1)
        vectors.append((t, complex(r * math.cos(angle)), complex(r * math.sin(angle))))
    vectors.append((-cmath.sqrt(-2), 0j, 0j))
    return MomentumConfig(N, 2, tuple(vectors))


@dataclass(frozen=True)
class UBoxParams:
    """Parameters of the product box U in C^((N-1)(l+1)).

    Each time component has Re in (sqrt(C), sqrt(1/(N-2))) and Im in
    (0, sqrt(B)); each spatial component has Re in (0, sqrt(B/l)) and Im
    in (sqrt(C/l), sqrt(1/(l(N-2)))).
    """

    N: int
    l: int
    B: float
    C: float

    def __post_init__(self) -> None:
        if self.N < 4 or self.l < 1:
            raise ValueError("need N >= 4 and l >= 1")
        if not (0.0 < self.B < self.C < 1.0 / (self.N - 2)):
            raise ValueError("need 0 < B < C < 1/(N-2)")
        if abs((self.C - self.B) - 1.0 / self.N) > 1e-12:
            raise ValueError("need C - B = 1/N")

    @classmethod
    def default(cls, N: int, l: int) -> "UBoxParams":
        # B = 1/(2N) keeps C = B + 1/N = 3/(2N) < 1/(N-2) for every N >= 4
        return cls(N, l, 1.0 / (2 * N), 3.0 / (2 * N))


def sample_u(params: UBoxParams, seed: int, count: int) -> list[MomentumConfig]:
    """Draw `count` configurations uniformly from the U box.

    Each sample uses its own counter-based stream keyed by (seed, index),
    so draws are reproducible and order-independent.  Only the N-1
    box-constrained momenta are returned.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    N, l = params.N, params.l
    t_re = (math.sqrt(params.C), math.sqrt(1.0 / (N - 2)))
    t_im = (0.0, math.sqrt(params.B))
    x_re = (0.0, math.sqrt(params.B / l))
    x_im = (math.sqrt(params.C / l), math.sqrt(1.0 / (l * (N - 2))))
    configs = []
    for n in range(count):
        rng = stream(seed, n)
        vectors = []
        for _ in range(N - 1):
            comps = [complex(rng.uniform(*t_re), rng.uniform(*t_im))]
            comps += [complex(rng.uniform(*x_re), rng.uniform(*x_im)) for _ in range(l)]
            vectors.append(tuple(comps))
        configs.append(MomentumConfig(N, l, tuple(vectors)))
    return configs


def scattering_feasible(cfg: MomentumConfig, tol: float = 1e-12) -> str:
    """Classify a configuration against the scattering conditions.

    'feasible' needs the kinematic constraints and an exponent image inside
    the open cube (-2/(N-2), -2/N)^d; failures of the constraints give
    'constraint-violated'; otherwise the point is 'on-pole' when a candidate
    pole hyperplane (t <= 2N, tol 1e-9) contains it, else 'outside-domain'.
    """
    if not check_kinematics(cfg, tol).passed:
        return "constraint-violated"
    s = momentum_to_s(cfg)
    if box_contains(cfg.N, s):
        return "feasible"
    if is_on_pole(cfg.N, s, "R", t_max=2 * cfg.N, tol=1e-9):
        return "on-pole"
    return "outside-domain"
