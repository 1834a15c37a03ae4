"""Log-Coulomb gas wrapper around the field evaluators.

A gas of N-1 charges (one fixed at 0, one fixed at 1, the rest mobile)
at inverse temperature beta has partition function equal to the N-point
integral at the exponents s_ij = beta * e_i * e_j; the convergence window
in beta is where that exponent vector passes the domain check, and its
edges are the candidate phase-transition points.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import SVector, index_set
from .domain import check_membership, enumerate_inequalities
from .results import DivergenceError, EvalResult, EvalSettings
from . import padic_eval, real_eval


@dataclass(frozen=True)
class GasSpec:
    """Charges e_1 (site 0), e_2..e_(N-2) (mobile), e_(N-1) (site 1)."""

    N: int
    charges: tuple[float, ...]
    beta: float

    def __post_init__(self) -> None:
        if self.N < 4:
            raise ValueError("need N >= 4")
        if len(self.charges) != self.N - 1:
            raise ValueError(f"need N-1 = {self.N - 1} charges, got {len(self.charges)}")
        if not self.beta > 0:
            raise ValueError("beta must be > 0")


def charges_to_s(gas: GasSpec) -> SVector:
    """Exponent vector s_ij = beta * e_i * e_j over the canonical pairs."""
    e = {i + 1: gas.charges[i] for i in range(gas.N - 1)}
    iset = index_set(gas.N)
    values = {p: complex(gas.beta * e[p.i] * e[p.j]) for p in iset.pairs}
    return SVector(iset, values)


def _inside(N: int, charges: tuple[float, ...], beta: float, system) -> bool:
    gas = GasSpec(N, charges, beta)
    return check_membership(system, charges_to_s(gas)).status == "inside"


def beta_window(N: int, charges, beta_grid, refine_tol: float = 1e-6) -> list[tuple[float, float]]:
    """Maximal beta intervals on the grid where the exponents pass the
    domain check, with edges refined by bisection to refine_tol."""
    charges = tuple(float(c) for c in charges)
    grid = [float(b) for b in beta_grid]
    if not grid:
        raise ValueError("empty beta grid")
    if any(b <= 0 for b in grid) or any(y <= x for x, y in zip(grid, grid[1:])):
        raise ValueError("beta grid must be increasing and positive")
    system = enumerate_inequalities(N)
    flags = [_inside(N, charges, b, system) for b in grid]

    def bisect(lo: float, hi: float, want_inside_high: bool) -> float:
        # predicate flips between lo and hi; locate the edge
        while hi - lo > refine_tol:
            mid = 0.5 * (lo + hi)
            if _inside(N, charges, mid, system) == want_inside_high:
                hi = mid
            else:
                lo = mid
        return 0.5 * (lo + hi)

    windows: list[tuple[float, float]] = []
    k = 0
    while k < len(grid):
        if not flags[k]:
            k += 1
            continue
        start = k
        while k + 1 < len(grid) and flags[k + 1]:
            k += 1
        lo = grid[start]
        if start > 0:
            lo = bisect(grid[start - 1], grid[start], want_inside_high=True)
        hi = grid[k]
        if k + 1 < len(grid):
            hi = bisect(grid[k], grid[k + 1], want_inside_high=False)
        windows.append((lo, hi))
        k += 1
    return windows


def partition_function(gas: GasSpec, field: str, settings: EvalSettings | None = None,
                       p: int | None = None) -> EvalResult:
    """Evaluate the gas partition function through the field evaluators.

    The exponent vector is passed bit-for-bit to the evaluator: for N = 4
    over R/C the gamma closed form is used (unless settings force mc),
    over Q_p the digit tree.
    """
    s = charges_to_s(gas)
    use_closed = gas.N == 4 and (settings is None or settings.mode != "mc")
    settings = settings or EvalSettings()
    if field == "Qp":
        if p is None:
            raise ValueError("field Qp needs a prime p")
        return padic_eval.eval_padic_tree(padic_eval.PadicParams(p, s))
    if field not in ("R", "C"):
        raise ValueError(f"field must be R, C or Qp, got {field!r}")

    if use_closed:
        a, b = s[(1, 2)], s[(3, 2)]
        closed = (real_eval.eval_n4_closed_real if field == "R"
                  else real_eval.eval_n4_closed_complex)
        try:
            if settings.mode == "quadrature" and field == "R":
                value = real_eval.eval_quadrature_n4(a, b)
            else:
                value = closed(a, b)
        except DivergenceError as err:
            return EvalResult(status=err.status)
        return EvalResult("estimate", value, 0.0, {})
    return real_eval.eval_mc(gas.N, field, s, settings)
