"""Canonical indexing of the Koba-Nielsen exponent variables.

An N-point configuration (N >= 4) carries d = N(N-3)/2 exponent variables
s_ij, one per unordered pair drawn from three families:

* (1, j)    for 2 <= j <= N-2   -- pairs the 0-site with a mobile site,
* (N-1, j)  for 2 <= j <= N-2   -- pairs the 1-site with a mobile site,
* (i, j)    for 2 <= i < j <= N-2  -- mobile/mobile pairs.

Lookups treat ij and ji as the same variable.  The canonical ordering is
lexicographic on (i, j) with 1 < 2 < ... < N-2 < N-1, which keeps
serialized vectors stable across runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple


class PairIndex(NamedTuple):
    i: int
    j: int

    def __str__(self) -> str:
        return f"s{self.i},{self.j}"


def normalize_pair(N: int, i: int, j: int) -> PairIndex:
    """Return the canonical orientation of the label pair {i, j}.

    Raises ValueError if {i, j} is not a variable of the N-point family.
    """
    if i == j:
        raise ValueError(f"diagonal pair ({i},{i}) is not an index")
    a, b = (i, j) if i < j else (j, i)
    # families: (1, m), (N-1, m), (m, m') with mobile labels 2..N-2
    if a == 1 and 2 <= b <= N - 2:
        return PairIndex(1, b)
    if b == N - 1 and 2 <= a <= N - 2:
        return PairIndex(N - 1, a)
    if 2 <= a < b <= N - 2:
        return PairIndex(a, b)
    raise ValueError(f"pair ({i},{j}) is not an index for N={N}")


@dataclass(frozen=True)
class IndexSet:
    """The ordered list of the d = N(N-3)/2 canonical pair labels."""

    N: int
    pairs: tuple[PairIndex, ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __contains__(self, pair) -> bool:
        try:
            return self.normalize(*pair) in set(self.pairs)
        except ValueError:
            return False

    def normalize(self, i: int, j: int) -> PairIndex:
        return normalize_pair(self.N, i, j)


def index_set(N: int) -> IndexSet:
    """Build the canonical IndexSet for an N-point configuration."""
    if N < 4:
        raise ValueError(f"need N >= 4, got {N}")
    pairs = [PairIndex(1, j) for j in range(2, N - 1)]
    pairs += [PairIndex(i, j) for i in range(2, N - 1) for j in range(i + 1, N - 1)]
    pairs += [PairIndex(N - 1, j) for j in range(2, N - 1)]
    pairs.sort()
    iset = IndexSet(N, tuple(pairs))
    assert len(iset) == N * (N - 3) // 2
    return iset


@dataclass
class SVector:
    """An assignment of one complex value per canonical pair label.

    Values are stored as full complex numbers even though the convergence
    checks only use real parts; the same container then serves evaluation
    at genuinely complex exponents.
    """

    index_set: IndexSet
    values: dict[PairIndex, complex] = field(default_factory=dict)

    def __post_init__(self) -> None:
        missing = set(self.index_set.pairs) - set(self.values)
        extra = set(self.values) - set(self.index_set.pairs)
        if missing or extra:
            raise ValueError(
                f"SVector keys do not match index set (missing={sorted(missing)}, "
                f"extra={sorted(extra)})"
            )

    @property
    def N(self) -> int:
        return self.index_set.N

    def __getitem__(self, pair) -> complex:
        i, j = pair
        return self.values[self.index_set.normalize(i, j)]

    def __len__(self) -> int:
        return len(self.values)

    def real(self, pair) -> float:
        return self[pair].real

    def as_list(self) -> list[complex]:
        return [self.values[p] for p in self.index_set.pairs]

    def map_values(self, fn) -> "SVector":
        return SVector(self.index_set, {p: fn(v) for p, v in self.values.items()})

    def to_json_dict(self) -> dict:
        return {
            "N": self.N,
            "s": [
                {"i": p.i, "j": p.j, "re": complex(self.values[p]).real,
                 "im": complex(self.values[p]).imag}
                for p in self.index_set.pairs
            ],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "SVector":
        iset = index_set(int(data["N"]))
        values: dict[PairIndex, complex] = {}
        for entry in data["s"]:
            p = iset.normalize(int(entry["i"]), int(entry["j"]))
            values[p] = complex(float(entry.get("re", 0.0)), float(entry.get("im", 0.0)))
        return cls(iset, values)


def svector(N: int, mapping: Mapping | Iterable) -> SVector:
    """Build an SVector from {(i, j): value} pairs (orientation-insensitive)."""
    iset = index_set(N)
    items = mapping.items() if isinstance(mapping, Mapping) else mapping
    values = {iset.normalize(i, j): complex(v) for (i, j), v in items}
    return SVector(iset, values)


def diagonal_svector(N: int, s: complex) -> SVector:
    """SVector with every entry equal to s (the diagonal restriction)."""
    iset = index_set(N)
    return SVector(iset, {p: complex(s) for p in iset.pairs})
