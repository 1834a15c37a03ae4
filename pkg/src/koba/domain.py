"""Exact convergence domain and candidate pole families.

The convergence region of the N-point integral is cut out by
2^(N-1) - N - 1 affine inequalities on the real parts of the exponents,
organised in five families over subsets J of the mobile labels {2..N-2}:

* EQ_A:  Re(s_ij) > -1                                   (one per variable)
* EQ_B:  sum_{j in J} Re(s_1j)     + sum_{i<j in J} Re(s_ij) > -|J|,  |J| >= 2
* EQ_C:  sum_{j in J} Re(s_(N-1)j) + sum_{i<j in J} Re(s_ij) > -|J|,  |J| >= 2
* EQ_D:  sum_{i<j in J} Re(s_ij) > -|J| + 1,                          |J| >= 3
* EQ_E:  sum over both fixed-site columns of J, the J-to-complement
         cross pairs and the pairs inside J  < -|J|,                  |J| >= 1

Every form is stored in the normalized sense "sum coeff*Re(s) + gamma > 0";
the "<" family EQ_E is negated, so its coefficients are all -1 and its
constant is negative.  Candidate poles are the hyperplanes obtained by
shifting each form by t*step with t a natural number (step 1 over R,
1/2 over C; over Q_p only the t = 0 real-part hyperplane remains, the
polar set being periodic in the imaginary directions).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .core import PairIndex, SVector, index_set, normalize_pair
from .results import ResourceLimitError

FIELDS = ("R", "C", "Qp")

# enumerate_inequalities(26) already needs ~3.3e7 forms; past that the
# exponential count is no longer worth materializing
MAX_ENUMERATION_N = 26


@dataclass(frozen=True)
class AffineForm:
    """Normalized affine condition: sum coeffs*Re(s_ij) + gamma > 0."""

    coeffs: tuple[tuple[PairIndex, int], ...]
    gamma: int
    tag: str
    J: tuple[int, ...] = ()

    def evaluate(self, s: SVector) -> float:
        """Slack of the form at s; positive means satisfied."""
        return sum(c * s[p].real for p, c in self.coeffs) + self.gamma

    def evaluate_complex(self, s: SVector) -> complex:
        return sum(c * s[p] for p, c in self.coeffs) + self.gamma

    def sign(self) -> int:
        return 1 if self.gamma > 0 else -1

    def key(self) -> tuple:
        # identity of the form irrespective of tag/J bookkeeping
        return (self.coeffs, self.gamma)

    def describe(self) -> str:
        terms = []
        for p, c in self.coeffs:
            sgn = "+" if c > 0 else "-"
            terms.append(f"{sgn} s{p.i}{p.j}" if p.i < 10 and p.j < 10 else f"{sgn} s({p.i},{p.j})")
        lhs = " ".join(terms).lstrip("+ ")
        return f"{lhs} {'+' if self.gamma >= 0 else '-'} {abs(self.gamma)} > 0"

    def latex(self) -> str:
        terms = []
        for p, c in self.coeffs:
            sgn = "+" if c > 0 else "-"
            terms.append(f"{sgn} \\operatorname{{Re}}(s_{{{p.i}{p.j}}})")
        lhs = " ".join(terms).lstrip("+ ")
        return f"{lhs} {'+' if self.gamma >= 0 else '-'} {abs(self.gamma)} > 0"

    def to_json_dict(self) -> dict:
        return {
            "tag": self.tag,
            "J": list(self.J),
            "coeffs": [{"i": p.i, "j": p.j, "c": c} for p, c in self.coeffs],
            "gamma": self.gamma,
        }


@dataclass(frozen=True)
class InequalitySystem:
    N: int
    forms: tuple[AffineForm, ...]

    def __len__(self) -> int:
        return len(self.forms)

    def __iter__(self):
        return iter(self.forms)

    def to_json_dict(self) -> dict:
        return {"N": self.N, "count": len(self.forms),
                "forms": [f.to_json_dict() for f in self.forms]}

    def coefficient_matrix(self):
        """(M, gamma) with slack(s) = M @ Re(s-in-index-order) + gamma.

        Handy for checking many points at once: rows follow self.forms,
        columns the canonical pair order of index_set(N).
        """
        import numpy as np

        iset = index_set(self.N)
        col = {p: k for k, p in enumerate(iset.pairs)}
        M = np.zeros((len(self.forms), len(iset)))
        gam = np.zeros(len(self.forms))
        for r, form in enumerate(self.forms):
            gam[r] = form.gamma
            for p, c in form.coeffs:
                M[r, col[p]] = c
        return M, gam


@dataclass
class MembershipReport:
    inside: bool
    violated: list[tuple[AffineForm, float]]
    boundary: list[tuple[AffineForm, float]]

    @property
    def status(self) -> str:
        if self.inside:
            return "inside"
        return "boundary" if not self.violated else "outside"

    def to_json_dict(self) -> dict:
        return {
            "inside": self.inside,
            "status": self.status,
            "violated": [{"form": f.to_json_dict(), "slack": sl} for f, sl in self.violated],
            "boundary": [{"form": f.to_json_dict(), "slack": sl} for f, sl in self.boundary],
        }


def _subsets(mobile: range, min_size: int):
    for size in range(min_size, len(mobile) + 1):
        yield from itertools.combinations(mobile, size)


def enumerate_inequalities(N: int) -> InequalitySystem:
    """All 2^(N-1) - N - 1 normalized forms of the N-point domain."""
    if N < 4:
        raise ValueError(f"need N >= 4, got {N}")
    if N > MAX_ENUMERATION_N:
        raise ResourceLimitError(
            f"refusing N={N}: 2^(N-1) - N - 1 forms exceed the enumeration guard"
        )
    iset = index_set(N)
    mobile = range(2, N - 1)
    forms: list[AffineForm] = []

    for p in iset.pairs:
        forms.append(AffineForm(((p, 1),), 1, "EQ_A", (p.i, p.j)))

    for J in _subsets(mobile, 2):
        coeffs = [(PairIndex(1, j), 1) for j in J]
        coeffs += [(normalize_pair(N, i, j), 1) for i, j in itertools.combinations(J, 2)]
        forms.append(AffineForm(tuple(sorted(coeffs)), len(J), "EQ_B", J))

    for J in _subsets(mobile, 2):
        coeffs = [(PairIndex(N - 1, j), 1) for j in J]
        coeffs += [(normalize_pair(N, i, j), 1) for i, j in itertools.combinations(J, 2)]
        forms.append(AffineForm(tuple(sorted(coeffs)), len(J), "EQ_C", J))

    for J in _subsets(mobile, 3):
        coeffs = [(normalize_pair(N, i, j), 1) for i, j in itertools.combinations(J, 2)]
        forms.append(AffineForm(tuple(sorted(coeffs)), len(J) - 1, "EQ_D", J))

    # EQ_E is a "<" condition; stored negated (all coefficients -1, gamma < 0)
    for J in _subsets(mobile, 1):
        inside = set(J)
        coeffs = [(PairIndex(1, j), -1) for j in J]
        coeffs += [(PairIndex(N - 1, j), -1) for j in J]
        coeffs += [(normalize_pair(N, i, j), -1)
                   for j in J for i in mobile if i not in inside]
        coeffs += [(normalize_pair(N, i, j), -1) for i, j in itertools.combinations(J, 2)]
        forms.append(AffineForm(tuple(sorted(coeffs)), -len(J), "EQ_E", J))

    expected = 2 ** (N - 1) - N - 1
    assert len(forms) == expected, (len(forms), expected)
    assert len({f.key() for f in forms}) == len(forms), "duplicate forms"
    return InequalitySystem(N, tuple(forms))


def check_membership(system: InequalitySystem, s: SVector, tol: float = 1e-12) -> MembershipReport:
    """Classify s against the system: inside / violated forms / boundary forms.

    A positive slack means satisfied; |slack| <= tol is reported as boundary
    rather than divergent, since the proven region is open.
    """
    if s.N != system.N:
        raise ValueError(f"dimension mismatch: system N={system.N}, vector N={s.N}")
    if tol < 0:
        raise ValueError("tol must be >= 0")
    violated: list[tuple[AffineForm, float]] = []
    boundary: list[tuple[AffineForm, float]] = []
    for form in system.forms:
        slack = form.evaluate(s)
        if abs(slack) <= tol:
            boundary.append((form, slack))
        elif slack < 0:
            violated.append((form, slack))
    return MembershipReport(not violated and not boundary, violated, boundary)


def box_contains(N: int, s: SVector) -> bool:
    """True iff every Re(s_ij) lies strictly in (-2/(N-2), -2/N)."""
    if s.N != N:
        raise ValueError(f"dimension mismatch: N={N}, vector N={s.N}")
    lo, hi = -2.0 / (N - 2), -2.0 / N
    return all(lo < v.real < hi for v in s.values.values())


@dataclass(frozen=True)
class PoleFamily:
    """Hyperplanes sum coeffs*s + gamma + t*step = 0, t = 0, 1, 2, ...

    Over Q_p the family collapses to the single t = 0 hyperplane on the
    real parts (poles recur periodically in the imaginary directions).
    """

    form: AffineForm
    field: str
    step: Fraction

    def shift(self, t: int) -> float:
        return float(self.step) * t

    def residual(self, s: SVector, t: int) -> complex:
        """Value of the defining equation at s for shift index t."""
        if self.field == "Qp":
            return complex(sum(c * s[p].real for p, c in self.form.coeffs) + self.form.gamma)
        return self.form.evaluate_complex(s) + self.shift(t)

    def to_json_dict(self) -> dict:
        return {"form": self.form.to_json_dict(), "field": self.field,
                "step": str(self.step)}


@dataclass(frozen=True)
class PoleHit:
    family: PoleFamily
    t: int
    residual: float

    def to_json_dict(self) -> dict:
        return {"form": self.family.form.to_json_dict(), "t": self.t,
                "shift": float(self.family.step) * self.t, "residual": self.residual}


def pole_families(N: int, field: str) -> list[PoleFamily]:
    """One candidate pole family per domain form, with the field's step."""
    if field not in FIELDS:
        raise ValueError(f"field must be one of {FIELDS}, got {field!r}")
    step = Fraction(1, 2) if field == "C" else Fraction(1)
    return [PoleFamily(f, field, step) for f in enumerate_inequalities(N).forms]


def is_on_pole(N: int, s: SVector, field: str, t_max: int, tol: float = 1e-9) -> list[PoleHit]:
    """All candidate pole hyperplanes containing s, scanning shifts t <= t_max.

    An empty list means no candidate pole was detected up to the scan depth;
    it is not a proof that s is off the polar locus.
    """
    if s.N != N:
        raise ValueError(f"dimension mismatch: N={N}, vector N={s.N}")
    if t_max < 0:
        raise ValueError("t_max must be >= 0")
    hits: list[PoleHit] = []
    for family in pole_families(N, field):
        ts = (0,) if field == "Qp" else range(t_max + 1)
        for t in ts:
            if abs(family.residual(s, t)) <= tol:
                hits.append(PoleHit(family, t, abs(family.residual(s, t))))
    return hits


def swap_fixed_sites(s: SVector) -> SVector:
    """Exchange the roles of the fixed labels 1 and N-1 in an SVector."""
    N = s.N
    values = {}
    for p, v in s.values.items():
        if p.i == 1:
            values[normalize_pair(N, N - 1, p.j)] = v
        elif p.i == N - 1:
            values[normalize_pair(N, 1, p.j)] = v
        else:
            values[p] = v
    return SVector(s.index_set, values)
