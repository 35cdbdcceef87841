"""rmq_tree のテスト: 既知の値と、シャドウ配列を使ったランダム操作列の突き合わせ。"""
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from overlap_chain.rmq_tree import (
    NEG_INF,
    DuplicateKeyError,
    Key1D,
    Key2D,
    RMaxTree1D,
    RMaxTree2D,
    UnknownKeyError,
    UnsortedKeysError,
)


def _keys(*coords):
    return [Key1D(c, i) for i, c in enumerate(coords)]


# ---------------------------------------------------------------------------
# 1次元
# ---------------------------------------------------------------------------

def test_build1d_all_values_negative_infinity():
    tree = RMaxTree1D.build(_keys(0, 3, 7))
    assert tree.rmaxq(0, 7) == NEG_INF
    assert tree.rmaxq_arg(0, 7) == (NEG_INF, None)


def test_upgrade_then_query():
    tree = RMaxTree1D.build(_keys(0, 3, 7))
    tree.upgrade(Key1D(3, 1), 5)
    assert tree.rmaxq(0, 7) == 5
    assert tree.rmaxq(4, 7) == NEG_INF
    tree.upgrade(Key1D(7, 2), 2)
    assert tree.rmaxq(1, 7) == 5
    assert tree.rmaxq_arg(4, 100) == (2, Key1D(7, 2))


def test_upgrade_keeps_maximum_and_update_overwrites():
    tree = RMaxTree1D.build(_keys(1, 2))
    k = Key1D(1, 0)
    tree.upgrade(k, 5)
    tree.upgrade(k, 3)
    assert tree.value(k) == 5
    tree.update(k, NEG_INF)
    assert tree.value(k) == NEG_INF
    assert tree.rmaxq(0, 10) == NEG_INF


def test_query_spans_all_tags_and_ties_prefer_smaller_tag():
    tree = RMaxTree1D.build([Key1D(4, 2), Key1D(4, 5), Key1D(4, 9)])
    tree.upgrade(Key1D(4, 9), 7)
    tree.upgrade(Key1D(4, 5), 7)
    assert tree.rmaxq_arg(4, 4) == (7, Key1D(4, 5))
    assert tree.rmaxq(5, 9) == NEG_INF


def test_empty_range_and_empty_tree():
    tree = RMaxTree1D.build(_keys(1, 5))
    tree.upgrade(Key1D(5, 1), 1)
    assert tree.rmaxq(6, 4) == NEG_INF
    empty = RMaxTree1D.build([])
    assert empty.rmaxq(-10, 10) == NEG_INF
    assert empty.coord_bounds == (0, -1)


def test_build1d_rejects_bad_keys():
    with pytest.raises(DuplicateKeyError):
        RMaxTree1D.build([Key1D(1, 0), Key1D(1, 0)])
    with pytest.raises(UnsortedKeysError):
        RMaxTree1D.build([Key1D(2, 0), Key1D(1, 1)])


def test_unknown_key_rejected():
    tree = RMaxTree1D.build(_keys(1, 2))
    with pytest.raises(UnknownKeyError):
        tree.upgrade(Key1D(1, 7), 3)
    with pytest.raises(KeyError):
        tree.update(Key1D(3, 0), 3)


def _run_1d_ops(coords, ops):
    keys = sorted({Key1D(c, i) for i, c in enumerate(coords)})
    tree = RMaxTree1D.build(keys)
    shadow = {k: NEG_INF for k in keys}
    for kind, pos, val, lo, hi in ops:
        key = keys[pos % len(keys)]
        if kind == "update":
            tree.update(key, val)
            shadow[key] = val
        elif kind == "upgrade":
            tree.upgrade(key, val)
            shadow[key] = max(shadow[key], val)
        else:
            lo, hi = min(lo, hi), max(lo, hi)
            expected = max((v for k, v in shadow.items() if lo <= k.coord <= hi), default=NEG_INF)
            assert tree.rmaxq(lo, hi) == expected
            # クエリは状態を変えない
            assert tree.rmaxq(lo, hi) == expected


_VALUES = st.one_of(st.integers(-50, 50), st.just(NEG_INF))
_OPS = st.tuples(
    st.sampled_from(["update", "upgrade", "query"]),
    st.integers(0, 63),
    _VALUES,
    st.integers(-2, 20),
    st.integers(-2, 20),
)


@pytest.mark.property_based
@given(st.lists(st.integers(0, 16), min_size=1, max_size=64), st.lists(_OPS, max_size=60))
@settings(max_examples=200)
def test_1d_matches_shadow_array(coords, ops):
    _run_1d_ops(coords, ops)


@pytest.mark.property_based
@given(st.integers(0, 20), st.lists(st.integers(-50, 50), min_size=1, max_size=10))
def test_upgrade_is_monotone(start, values):
    tree = RMaxTree1D.build([Key1D(3, 0)])
    tree.upgrade(Key1D(3, 0), start)
    seen = start
    for v in values:
        tree.upgrade(Key1D(3, 0), v)
        assert tree.value(Key1D(3, 0)) == max(seen, v)
        seen = max(seen, v)


# ---------------------------------------------------------------------------
# 2次元
# ---------------------------------------------------------------------------

def test_rmaxq2d_known_value():
    tree = RMaxTree2D.build([Key2D(1, 10, 0), Key2D(2, 20, 1)])
    tree.upgrade(Key2D(1, 10, 0), 4)
    tree.upgrade(Key2D(2, 20, 1), 9)
    assert tree.rmaxq(1, 2, 0, 30) == 9
    assert tree.rmaxq(1, 2, 0, 19) == 4
    assert tree.rmaxq_arg(1, 1, 0, 30) == (4, Key2D(1, 10, 0))
    assert tree.rmaxq(3, 5, 0, 30) == NEG_INF
    assert tree.rmaxq(1, 2, 21, 30) == NEG_INF


def test_update2d_deactivates_point():
    tree = RMaxTree2D.build([Key2D(1, 10, 0), Key2D(2, 20, 1)])
    tree.upgrade(Key2D(2, 20, 1), 9)
    tree.update(Key2D(2, 20, 1), NEG_INF)
    assert tree.rmaxq(0, 5, 0, 30) == NEG_INF


def test_build2d_rejects_bad_points():
    with pytest.raises(DuplicateKeyError):
        RMaxTree2D.build([Key2D(1, 1, 0), Key2D(1, 1, 0)])
    with pytest.raises(DuplicateKeyError):
        RMaxTree2D.build([Key2D(1, 1, 0), Key2D(1, 2, 0)])
    with pytest.raises(UnsortedKeysError):
        RMaxTree2D.build([Key2D(2, 1, 0), Key2D(1, 1, 1)])
    tree = RMaxTree2D.build([Key2D(1, 1, 0)])
    with pytest.raises(UnknownKeyError):
        tree.update(Key2D(1, 2, 0), 1)


def test_2d_ties_prefer_smaller_tag_across_nodes():
    pts = [Key2D(1, 5, 7), Key2D(2, 5, 3), Key2D(3, 1, 0), Key2D(4, 9, 1)]
    tree = RMaxTree2D.build(pts)
    for p in pts:
        tree.upgrade(p, 6)
    assert tree.rmaxq_arg(1, 2, 0, 10) == (6, Key2D(2, 5, 3))
    assert tree.rmaxq_arg(1, 4, 2, 10) == (6, Key2D(4, 9, 1))
    tree.update(Key2D(4, 9, 1), NEG_INF)
    assert tree.rmaxq_arg(1, 4, 2, 10) == (6, Key2D(2, 5, 3))
    tree.update(Key2D(4, 9, 1), 6)
    assert tree.rmaxq_arg(0, 9, 0, 10) == (6, Key2D(3, 1, 0))
    assert tree.value(Key2D(4, 9, 1)) == 6


def test_build2d_rejects_negative_tag():
    with pytest.raises(ValueError):
        RMaxTree2D.build([Key2D(1, 1, -1)])


def test_empty_2d_tree():
    tree = RMaxTree2D.build([])
    assert tree.rmaxq(-5, 5, -5, 5) == NEG_INF
    assert tree.primary_bounds == (0, -1)


def _run_2d_ops(points, ops):
    pts = sorted({Key2D(p, s, i) for i, (p, s) in enumerate(points)})
    tree = RMaxTree2D.build(pts)
    shadow = {k: NEG_INF for k in pts}
    for kind, pos, val, (p_lo, p_hi, s_lo, s_hi) in ops:
        key = pts[pos % len(pts)]
        if kind == "update":
            tree.update(key, val)
            shadow[key] = val
        elif kind == "upgrade":
            tree.upgrade(key, val)
            shadow[key] = max(shadow[key], val)
        else:
            expected = max(
                (v for k, v in shadow.items()
                 if p_lo <= k.primary <= p_hi and s_lo <= k.secondary <= s_hi),
                default=NEG_INF,
            )
            assert tree.rmaxq(p_lo, p_hi, s_lo, s_hi) == expected
    full = max(shadow.values(), default=NEG_INF)
    assert tree.rmaxq(-100, 100, -100, 100) == full


_RECT = st.tuples(st.integers(-2, 10), st.integers(-2, 10), st.integers(-2, 10), st.integers(-2, 10))
_OPS_2D = st.tuples(st.sampled_from(["update", "upgrade", "query"]), st.integers(0, 63), _VALUES, _RECT)


@pytest.mark.property_based
@given(
    st.lists(st.tuples(st.integers(-3, 8), st.integers(0, 8)), min_size=1, max_size=64),
    st.lists(_OPS_2D, max_size=60),
)
@settings(max_examples=200)
def test_2d_matches_shadow_array(points, ops):
    _run_2d_ops(points, ops)


# ---------------------------------------------------------------------------
# 受け入れ規模
# ---------------------------------------------------------------------------

def _random_ops(rng, count):
    ops = []
    for _ in range(count):
        kind = rng.choice(["update", "upgrade", "query", "query"])
        val = NEG_INF if rng.random() < 0.1 else rng.randint(-1000, 1000)
        ops.append((kind, rng.randrange(64), val))
    return ops


@pytest.mark.slow
def test_1d_random_operations_at_scale():
    rng = random.Random(1)
    for _ in range(100):
        coords = [rng.randint(0, 40) for _ in range(rng.randint(1, 64))]
        ops = [
            (kind, pos, val, rng.randint(-1, 41), rng.randint(-1, 41))
            for kind, pos, val in _random_ops(rng, 1000)
        ]
        _run_1d_ops(coords, ops)


@pytest.mark.slow
def test_2d_random_operations_at_scale():
    rng = random.Random(2)
    for _ in range(100):
        points = [(rng.randint(-20, 20), rng.randint(0, 40)) for _ in range(rng.randint(1, 64))]
        ops = [
            (kind, pos, val, tuple(sorted(rng.sample(range(-21, 21), 2)) + sorted(rng.sample(range(-1, 41), 2))))
            for kind, pos, val in _random_ops(rng, 1000)
        ]
        _run_2d_ops(points, ops)
