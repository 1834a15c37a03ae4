"""Exact evaluation of the N-point integrals over Q_p.

The integral is split by the unit-ball cutoff into 2^(N-3) sectors; the
coordinates outside the ball are inverted, after which each sector is an
integral over Z_p^(N-3) of a product of factors |x_i - a|^sigma and
|x_i - x_j|^sigma (a in {0, 1}).  Branching on leading digits maps every
factor either to a unit (it drops) or to p * (same kind of factor), so
each node of the digit tree is characterized by its surviving factor
pattern.  A branch whose pattern repeats the node's own pattern closes as
a geometric series; all other branches have strictly fewer factors, hence
the recursion always terminates with an exact value and a zero tail
bound.  The divergence of a closing series (ratio >= 1) is exactly a
violated domain condition.

For N = 4 the three-shell closed form and its rational-function shape in
u = p^-(a+1), v = p^-(b+1), w = p^(a+b+1) are available explicitly.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass

from .core import SVector
from .domain import check_membership, enumerate_inequalities
from .results import DivergenceError, EvalResult, ResourceLimitError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# N = 4 closed form

def _require_n4_domain(a: complex, b: complex) -> None:
    a, b = complex(a), complex(b)
    if not (a.real > -1.0 and b.real > -1.0 and (a.real + b.real) < -1.0):
        raise DivergenceError(
            f"(a, b) = ({a}, {b}) outside Re(a) > -1, Re(b) > -1, Re(a+b) < -1"
        )


def eval_n4_padic(p: int, a: complex, b: complex) -> complex:
    """Three-shell value of the 4-point p-adic integral.

    Partitioning Q_p into |x| < 1, |x - 1| < 1, |x| > 1 and the remaining
    units gives three geometric series and the constant 1 - 2/p (which
    vanishes for p = 2):

        (1 - 2/p) + (1 - 1/p) * (u/(1-u) + v/(1-v) + w/(1-w)).
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    _require_n4_domain(a, b)
    a, b = complex(a), complex(b)
    u = p ** (-(a + 1))
    v = p ** (-(b + 1))
    w = p ** (a + b + 1)
    return (1 - 2.0 / p) + (1 - 1.0 / p) * (u / (1 - u) + v / (1 - v) + w / (1 - w))


Monomial = tuple[int, int, int]   # exponents of (u, v, w)


def _poly_mul(f: dict[Monomial, int], g: dict[Monomial, int]) -> dict[Monomial, int]:
    out: dict[Monomial, int] = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c != 0}


def _poly_scale(f: dict[Monomial, int], k: int) -> dict[Monomial, int]:
    return {m: k * c for m, c in f.items() if k * c != 0}


def _poly_add(*fs: dict[Monomial, int]) -> dict[Monomial, int]:
    out: dict[Monomial, int] = {}
    for f in fs:
        for m, c in f.items():
            out[m] = out.get(m, 0) + c
    return {m: c for m, c in out.items() if c != 0}


@dataclass(frozen=True)
class PadicRational:
    """Integer-coefficient rational function num/den in u, v, w."""

    p: int
    numerator: tuple[tuple[Monomial, int], ...]
    denominator: tuple[tuple[Monomial, int], ...]

    def evaluate(self, a: complex, b: complex) -> complex:
        a, b = complex(a), complex(b)
        u = self.p ** (-(a + 1))
        v = self.p ** (-(b + 1))
        w = self.p ** (a + b + 1)

        def at(terms):
            return sum(c * u ** m[0] * v ** m[1] * w ** m[2] for m, c in terms)

        return at(self.numerator) / at(self.denominator)

    def to_json_dict(self) -> dict:
        def dump(terms):
            return [{"u_exp": m[0], "v_exp": m[1], "w_exp": m[2], "coeff": c}
                    for m, c in terms]

        return {
            "p": self.p,
            "u": "p^-(a+1)", "v": "p^-(b+1)", "w": "p^(a+b+1)",
            "numerator": {"terms": dump(self.numerator)},
            "denominator": {"terms": dump(self.denominator)},
        }


def n4_padic_rational(p: int) -> PadicRational:
    """Symbolic form of eval_n4_padic over a common denominator.

    num = (p-2)(1-u)(1-v)(1-w)
          + (p-1)[u(1-v)(1-w) + v(1-u)(1-w) + w(1-u)(1-v)],
    den = p (1-u)(1-v)(1-w).
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    one = {(0, 0, 0): 1}
    U, V, W = {(1, 0, 0): 1}, {(0, 1, 0): 1}, {(0, 0, 1): 1}
    fU = _poly_add(one, _poly_scale(U, -1))
    fV = _poly_add(one, _poly_scale(V, -1))
    fW = _poly_add(one, _poly_scale(W, -1))
    prod3 = _poly_mul(_poly_mul(fU, fV), fW)
    num = _poly_add(
        _poly_scale(prod3, p - 2),
        _poly_scale(_poly_add(
            _poly_mul(U, _poly_mul(fV, fW)),
            _poly_mul(V, _poly_mul(fU, fW)),
            _poly_mul(W, _poly_mul(fU, fV)),
        ), p - 1),
    )
    den = _poly_scale(prod3, p)
    return PadicRational(
        p,
        tuple((m, num[m]) for m in sorted(num)),
        tuple((m, den[m]) for m in sorted(den)),
    )


# ---------------------------------------------------------------------------
# digit tree for general N

@dataclass(frozen=True)
class PadicParams:
    p: int
    s: SVector
    max_depth: int = 64

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")


# a factor is (coords, shift, exponent): |x_c - shift| or |x_c1 - x_c2|
Factor = tuple[tuple[int, ...], int, complex]
Pattern = tuple[Factor, ...]


def _canonical(factors: list[Factor]) -> Pattern:
    """Relabel active coordinates to make the pattern a canonical key."""
    coords = sorted({c for f in factors for c in f[0]})
    if not coords:
        return ()
    best: Pattern | None = None
    for perm in itertools.permutations(range(len(coords))):
        relabel = {c: perm[k] for k, c in enumerate(coords)}
        cand = tuple(sorted(
            (tuple(sorted(relabel[c] for c in f[0])), f[1],
             (complex(f[2]).real, complex(f[2]).imag))
            for f in factors
        ))
        if best is None or cand < best:
            best = cand
    # re-wrap exponents as complex for arithmetic downstream
    return tuple((coords_, shift, complex(*exp)) for coords_, shift, exp in best)


class _TreeEvaluator:
    """Memoized pattern recursion over Z_p^k."""

    def __init__(self, p: int, max_depth: int):
        self.p = p
        self.max_depth = max_depth
        self.memo: dict[Pattern, complex] = {}

    def _p_pow(self, exponent: complex) -> complex:
        return cmath.exp(-complex(exponent) * math.log(self.p))

    def value(self, pattern: Pattern, depth: int = 0) -> complex:
        if not pattern:
            return 1.0 + 0.0j
        if pattern in self.memo:
            return self.memo[pattern]
        if depth > self.max_depth:
            raise ResourceLimitError(
                f"digit-tree pattern recursion exceeded max_depth={self.max_depth}"
            )
        p = self.p
        coords = sorted({c for f in pattern for c in f[0]})
        k = len(coords)
        pos = {c: k_ for k_, c in enumerate(coords)}
        measure = p ** (-float(k))
        ratio = 0.0 + 0.0j
        total = 0.0 + 0.0j
        for digits in itertools.product(range(p), repeat=k):
            surviving: list[Factor] = []
            weight = complex(measure)
            for f in pattern:
                cs, shift, exp = f
                if len(cs) == 1:
                    alive = digits[pos[cs[0]]] == shift
                else:
                    alive = digits[pos[cs[0]]] == digits[pos[cs[1]]]
                if alive:
                    weight *= self._p_pow(exp)
                    surviving.append((cs, 0, exp))
            if len(surviving) == len(pattern):
                ratio += weight
            else:
                total += weight * self.value(_canonical(surviving), depth + 1)
        if abs(ratio) >= 1.0:
            raise DivergenceError(
                "self-similar branch does not contract (geometric ratio >= 1); "
                "the exponents violate a convergence condition"
            )
        out = total / (1.0 - ratio)
        self.memo[pattern] = out
        return out


def _sector_factors(N: int, I: tuple[int, ...], s: SVector) -> tuple[list[Factor], complex]:
    """Factor list over Z_p^(N-3) for sector I, plus the constant exponent.

    Coordinates outside I are inverted and rescaled by p, pulling out the
    constant p^-(sum e_i + sum_(out pairs) s_ij + #out); cross pairs and
    the |1 - x_i| factors of inverted coordinates become units and drop.
    """
    labels = list(range(2, N - 1))
    inside = set(I)
    factors: list[Factor] = []
    const_exp = 0.0 + 0.0j

    def sv(i, j):
        return s[(i, j)]

    for i in labels:
        if i in inside:
            factors.append(((i,), 0, sv(1, i)))
            factors.append(((i,), 1, sv(N - 1, i)))
        else:
            e_i = -(sv(1, i) + sv(N - 1, i) + sum(sv(i, j) for j in labels if j != i)) - 2.0
            factors.append(((i,), 0, e_i))
            const_exp += e_i + 1.0
    for i, j in itertools.combinations(labels, 2):
        if (i in inside) and (j in inside):
            factors.append(((i, j), 0, sv(i, j)))
        elif (i not in inside) and (j not in inside):
            factors.append(((i, j), 0, sv(i, j)))
            const_exp += sv(i, j)
    return factors, const_exp


def sector_value(N: int, I: tuple[int, ...], s: SVector, p: int, max_depth: int = 64) -> complex:
    """Exact value of one inversion sector of the p-adic integral."""
    factors, const_exp = _sector_factors(N, I, s)
    tree = _TreeEvaluator(p, max_depth)
    prefactor = cmath.exp(-complex(const_exp) * math.log(p))
    return prefactor * tree.value(_canonical(factors))


def eval_padic_tree(params: PadicParams) -> EvalResult:
    """Exact digit-tree evaluation of the N-point p-adic integral.

    The value is the sum over the 2^(N-3) unit-ball sectors; every sector
    closes by self-similar geometric summation, so the certified tail
    bound is zero.
    """
    s = params.s
    N = s.N
    report = check_membership(enumerate_inequalities(N), s)
    if report.status != "inside":
        status = "boundary" if report.status == "boundary" else "diverged_by_domain"
        return EvalResult(status=status)

    labels = list(range(2, N - 1))
    breakdown: dict[tuple[int, ...], tuple[complex, float]] = {}
    total = 0.0 + 0.0j
    for mask in range(2 ** len(labels)):
        I = tuple(l for k, l in enumerate(labels) if mask >> k & 1)
        val = sector_value(N, I, s, params.p, params.max_depth)
        breakdown[I] = (val, 0.0)
        total += val
    return EvalResult("estimate", total, 0.0, breakdown, tail_bound=0.0)
