"""Shared result/settings containers for the integral evaluators."""

from __future__ import annotations

from dataclasses import dataclass, field


class DivergenceError(Exception):
    """Raised when an evaluation point lies outside the proven convergence
    region (status 'diverged_by_domain') or on its boundary ('boundary')."""

    def __init__(self, message: str, status: str = "diverged_by_domain", report=None):
        super().__init__(message)
        self.status = status
        self.report = report


class ResourceLimitError(Exception):
    """Raised when an enumeration or recursion guard trips."""


@dataclass(frozen=True)
class EvalSettings:
    """Monte Carlo evaluation knobs.

    samples_per_sector are split into `groups` batches whose means feed a
    median-of-means estimator; chi_epsilon is the width of the smooth
    cutoff transition (plateau on [-2, 2], support within [-2-eps, 2+eps]).
    """

    samples_per_sector: int = 100_000
    groups: int = 32
    seed: int = 0
    mode: str = "mc"
    chi_epsilon: float = 0.1

    def __post_init__(self) -> None:
        if self.groups < 1 or self.samples_per_sector < self.groups:
            raise ValueError("need samples_per_sector >= groups >= 1")
        if not 0.0 < self.chi_epsilon < 1.0:
            raise ValueError("need 0 < chi_epsilon < 1")
        if self.mode not in ("mc", "quadrature", "closed"):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass
class EvalResult:
    """Outcome of one integral evaluation.

    For status 'estimate' the value and stderr are set; otherwise value is
    None.  sector_breakdown maps each inversion subset I (a tuple of the
    coordinate labels kept bounded) to its (estimate, stderr) pair, and the
    reported value is exactly the sum of the sector estimates.
    """

    status: str
    value: complex | None = None
    stderr: float = 0.0
    sector_breakdown: dict[tuple[int, ...], tuple[complex, float]] = field(default_factory=dict)
    tail_bound: float = 0.0

    def to_json_dict(self) -> dict:
        out: dict = {"status": self.status}
        if self.value is not None:
            out["value"] = {"re": complex(self.value).real, "im": complex(self.value).imag}
            out["stderr"] = self.stderr
        if self.sector_breakdown:
            out["sectors"] = [
                {"I": list(I), "re": complex(v).real, "im": complex(v).imag, "stderr": e}
                for I, (v, e) in sorted(self.sector_breakdown.items())
            ]
        if self.tail_bound:
            out["tail_bound"] = self.tail_bound
        return out
