import json

import pytest

from koba.core import PairIndex, SVector, diagonal_svector, index_set, svector


def test_index_set_sizes_exhaustive():
    for N in range(4, 21):
        assert len(index_set(N)) == N * (N - 3) // 2


def test_index_set_families():
    iset = index_set(4)
    assert [tuple(p) for p in iset.pairs] == [(1, 2), (3, 2)]
    iset6 = index_set(6)
    assert [tuple(p) for p in iset6.pairs] == [
        (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (5, 2), (5, 3), (5, 4),
    ]


def test_index_set_rejects_small_n():
    with pytest.raises(ValueError):
        index_set(3)


def test_normalize_orientation_insensitive():
    iset = index_set(6)
    assert iset.normalize(2, 1) == PairIndex(1, 2)
    assert iset.normalize(2, 5) == PairIndex(5, 2)
    assert iset.normalize(4, 3) == PairIndex(3, 4)
    with pytest.raises(ValueError):
        iset.normalize(1, 5)  # the (0-site, 1-site) pair carries no variable
    with pytest.raises(ValueError):
        iset.normalize(2, 2)


def test_reversed_lookup_returns_same_value():
    s = svector(5, {(1, 2): 0.1, (1, 3): 0.2, (4, 2): 0.3, (4, 3): 0.4, (2, 3): 0.5})
    assert s[(2, 1)] == s[(1, 2)] == 0.1
    assert s[(2, 4)] == s[(4, 2)] == 0.3
    assert s[(3, 2)] == 0.5


def test_diagonal_fill():
    for N, val in [(4, -0.6), (5, -0.5), (6, -0.45)]:
        s = diagonal_svector(N, val)
        assert len(s) == N * (N - 3) // 2
        assert all(v == complex(val) for v in s.values.values())
    with pytest.raises(ValueError):
        diagonal_svector(3, -0.5)


def test_svector_rejects_mismatched_keys():
    iset = index_set(4)
    with pytest.raises(ValueError):
        SVector(iset, {PairIndex(1, 2): 1.0})  # missing (3, 2)


def test_json_round_trip():
    s = svector(5, {(1, 2): complex(-0.1, 0.7), (1, 3): -0.2, (4, 2): -0.3,
                    (4, 3): -0.4, (2, 3): -0.5})
    blob = json.dumps(s.to_json_dict())
    back = SVector.from_json_dict(json.loads(blob))
    assert back.values == s.values
    # serialization follows the canonical pair order
    order = [(e["i"], e["j"]) for e in s.to_json_dict()["s"]]
    assert order == [tuple(p) for p in s.index_set.pairs]
