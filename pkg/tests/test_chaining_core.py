"""
chaining_core のテスト

  - 既知の値（重なりのある2アンカー、各重なりケース）
  - 総当たり O(N²) と全チェーン列挙の一致
  - スイープ系と総当たりの一致、支配関係、入れ子なし入力での厳密・弱いの一致
  - トレースバックと正規化の整合性
"""
import random

import pytest
from helpers import OVERLAP_EXAMPLE, any_sets, eml_sets, exhaustive_best, make_set
from hypothesis import given, settings
from hypothesis import strategies as st

from overlap_chain.anchor_model import Chain, ChainMode, ChainValidationError, EmlRequiredError, coverage, validate
from overlap_chain.chaining_core import (
    SOLVERS,
    Case,
    Event,
    EventKind,
    best_chain,
    chain_brute_one_sided,
    chain_brute_strict,
    chain_brute_weak,
    chain_one_sided,
    chain_two_sided_strict,
    chain_two_sided_weak,
    normalize_weak_chain,
    solve,
    traceback,
)
from overlap_chain.synthetic import random_eml_instance

FAST = [chain_one_sided, chain_two_sided_strict, chain_two_sided_weak]


# ---------------------------------------------------------------------------
# 既知の値
# ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    "solver, expected",
    [
        (chain_brute_strict, (5, 8)),
        (chain_brute_weak, (5, 8)),
        (chain_two_sided_strict, (5, 8)),
        (chain_two_sided_weak, (5, 8)),
        (chain_one_sided, (5, 6)),
        (chain_brute_one_sided, (5, 6)),
    ],
)
def test_overlap_example(solver, expected):
    result = solver(make_set(*OVERLAP_EXAMPLE))
    assert result.c_plus == expected
    assert result.best_score == max(expected)
    assert result.best == 1


def test_single_anchor():
    for solver in SOLVERS.values():
        result = solver(make_set((1, 4, 1, 4)))
        assert result.c_plus == (4,)
        assert result.c == (0,)
        assert result.pred == (None,)


def test_empty_set():
    for solver in SOLVERS.values():
        result = solver(validate([]))
        assert result.c_plus == ()
        assert result.best is None
        assert result.best_score == 0
        assert best_chain(result, validate([])) == Chain((), result.mode)


def test_disjoint_chain_sums_lengths():
    anchor_set = make_set((1, 2, 1, 2), (5, 6, 5, 6))
    result = chain_one_sided(anchor_set)
    assert result.c_plus == (2, 4)
    assert result.case[1] is Case.A


def test_overlap_longer_in_first_dimension():
    # c - a が増える: 重なりは第1次元の方が長く、増分は I.a - I'.a = 3
    anchor_set = make_set((1, 6, 1, 6), (4, 9, 6, 11))
    result = chain_two_sided_strict(anchor_set)
    assert result.c_plus == (6, 9)
    assert result.case[1] is Case.C
    assert result.case_scores[1].c == 3
    assert chain_brute_strict(anchor_set).c_plus == (6, 9)


def test_overlap_longer_in_second_dimension():
    # c - a が減る: 増分は I.c - I'.c = 1
    anchor_set = make_set((1, 6, 1, 6), (4, 9, 2, 7))
    for solver in (chain_brute_strict, chain_two_sided_strict, chain_two_sided_weak):
        assert solver(anchor_set).c_plus == (6, 7)
    assert chain_two_sided_strict(anchor_set).case[1] is Case.D


def test_overlap_in_second_dimension_only():
    anchor_set = make_set((1, 5, 1, 5), (7, 10, 3, 6))
    for solver in FAST:
        result = solver(anchor_set)
        assert result.c_plus == (5, 6)
        assert result.case[1] is Case.B


def test_weak_predecessor_containing_second_interval():
    # 第1次元で先に終わり、第2次元の区間が後続を含む先行アンカー
    anchor_set = make_set((1, 10, 1, 10), (20, 22, 5, 7))
    assert chain_brute_weak(anchor_set).c_plus == (10, 7)
    assert chain_two_sided_weak(anchor_set).c_plus == (10, 7)
    assert chain_two_sided_strict(anchor_set).c_plus == (10, 3)


def test_nested_pair_weak_and_strict():
    anchor_set = make_set((1, 6, 1, 6), (2, 5, 2, 5))
    assert chain_brute_weak(anchor_set).c_plus == (6, 5)
    assert chain_two_sided_weak(anchor_set).c_plus == (6, 5)
    assert chain_brute_strict(anchor_set).c_plus == (6, 4)
    assert chain_two_sided_strict(anchor_set).c_plus == (6, 4)


@pytest.mark.parametrize("copies", [1, 50])
def test_tied_non_predecessor_with_smaller_index_is_skipped(copies):
    # (3,4,6,7) は X=(5,5,5,5) に先行しないが、𝒯ᵇ では M=(1,2,4,5) と同じ値で小さい添字を持つ。
    # Z=(6,6,7,7) はその後で (3,4,6,7) を先行アンカーに使うので、木の値が元に戻っている必要がある
    raw = [(3, 4, 6, 7)] * copies + [(1, 2, 4, 5), (5, 5, 5, 5), (6, 6, 7, 7)]
    anchor_set = make_set(*raw)
    m, x, z = copies, copies + 1, copies + 2

    result = chain_two_sided_weak(anchor_set)
    assert result.c[:copies] == (2,) * copies
    assert (result.c[m], result.c[x], result.c[z]) == (0, 1, 3)
    assert result.pred[x] == m
    assert result.case[x] is Case.B
    assert result.pred[z] == 0
    oracle = chain_brute_weak(anchor_set)
    assert (result.c, result.pred) == (oracle.c, oracle.pred)
    strict = chain_two_sided_strict(anchor_set)
    assert (strict.c, strict.pred) == (chain_brute_strict(anchor_set).c, chain_brute_strict(anchor_set).pred)


def test_equal_start_coordinates_do_not_chain():
    anchor_set = make_set((3, 5, 1, 3), (3, 4, 2, 3), (3, 3, 4, 4))
    for solver in FAST:
        assert solver(anchor_set).c == (0, 0, 0)


def test_duplicates_do_not_chain_to_each_other():
    anchor_set = make_set((2, 4, 2, 4), (2, 4, 2, 4), (5, 6, 5, 6))
    for solver in FAST:
        assert solver(anchor_set).c_plus == (3, 3, 5)


def test_fast_modes_reject_non_eml():
    anchor_set = make_set((1, 3, 1, 4))
    for solver in FAST:
        with pytest.raises(EmlRequiredError):
            solver(anchor_set)
    assert chain_brute_strict(anchor_set).c_plus == (3,)


def test_solve_unknown_mode():
    with pytest.raises(ValueError):
        solve("fastest", make_set((1, 1, 1, 1)))


def test_event_order_puts_starts_first():
    events = sorted([Event(5, EventKind.END, 0), Event(5, EventKind.START, 1), Event(4, EventKind.END, 2)])
    assert [e.anchor for e in events] == [2, 1, 0]


# ---------------------------------------------------------------------------
# 総当たりと全列挙
# ---------------------------------------------------------------------------

@pytest.mark.property_based
@given(any_sets(max_n=7))
@settings(max_examples=150, deadline=None)
def test_brute_strict_matches_exhaustive(anchor_set):
    assert list(chain_brute_strict(anchor_set).c_plus) == exhaustive_best(anchor_set, ChainMode.STRICT)


@pytest.mark.property_based
@given(any_sets(max_n=7))
@settings(max_examples=150, deadline=None)
def test_brute_weak_matches_exhaustive(anchor_set):
    assert list(chain_brute_weak(anchor_set).c_plus) == exhaustive_best(anchor_set, ChainMode.WEAK)


@pytest.mark.property_based
@given(any_sets(max_n=7))
@settings(max_examples=150, deadline=None)
def test_brute_one_sided_matches_exhaustive(anchor_set):
    expected = exhaustive_best(anchor_set, ChainMode.STRICT, one_sided=True)
    assert list(chain_brute_one_sided(anchor_set).c_plus) == expected


# ---------------------------------------------------------------------------
# スイープと総当たり
# ---------------------------------------------------------------------------

@pytest.mark.property_based
@given(eml_sets())
@settings(max_examples=300, deadline=None)
def test_two_sided_strict_matches_brute(anchor_set):
    assert chain_two_sided_strict(anchor_set).c_plus == chain_brute_strict(anchor_set).c_plus


@pytest.mark.property_based
@given(eml_sets())
@settings(max_examples=300, deadline=None)
def test_two_sided_weak_matches_brute(anchor_set):
    assert chain_two_sided_weak(anchor_set).c_plus == chain_brute_weak(anchor_set).c_plus


@pytest.mark.property_based
@given(eml_sets())
@settings(max_examples=300, deadline=None)
def test_one_sided_matches_brute(anchor_set):
    assert chain_one_sided(anchor_set).c_plus == chain_brute_one_sided(anchor_set).c_plus


@pytest.mark.property_based
@given(eml_sets())
@settings(max_examples=200, deadline=None)
def test_strict_and_weak_maxima_agree(anchor_set):
    assert chain_brute_strict(anchor_set).best_score == chain_brute_weak(anchor_set).best_score


@pytest.mark.property_based
@given(eml_sets())
@settings(max_examples=200, deadline=None)
def test_one_sided_strict_weak_dominance(anchor_set):
    one = chain_one_sided(anchor_set).c_plus
    strict = chain_two_sided_strict(anchor_set).c_plus
    weak = chain_two_sided_weak(anchor_set).c_plus
    assert all(x <= y <= z for x, y, z in zip(one, strict, weak))


@pytest.mark.property_based
@given(eml_sets())
@settings(max_examples=200, deadline=None)
def test_non_nested_collapse(anchor_set):
    if anchor_set.non_nested:
        assert chain_two_sided_strict(anchor_set).c_plus == chain_two_sided_weak(anchor_set).c_plus


@pytest.mark.property_based
@given(eml_sets(), st.randoms(use_true_random=False))
@settings(max_examples=150, deadline=None)
def test_permutation_invariance(anchor_set, rnd):
    order = list(range(len(anchor_set)))
    rnd.shuffle(order)
    shuffled = validate([anchor_set[i] for i in order])
    for solver in FAST:
        before = solver(anchor_set).c_plus
        after = solver(shuffled).c_plus
        assert [after[pos] for pos in range(len(order))] == [before[i] for i in order]


@pytest.mark.property_based
@given(eml_sets())
@settings(max_examples=150, deadline=None)
def test_score_bounds(anchor_set):
    best = chain_two_sided_weak(anchor_set).best_score
    span1 = len({i for x in anchor_set for i in range(x.a, x.b + 1)})
    span2 = len({i for x in anchor_set for i in range(x.c, x.d + 1)})
    assert 0 <= best <= min(span1, span2)
    assert best <= sum(x.min_length for x in anchor_set)


# ---------------------------------------------------------------------------
# トレースバックと正規化
# ---------------------------------------------------------------------------

def test_traceback_overlap_example():
    anchor_set = make_set(*OVERLAP_EXAMPLE)
    result = chain_two_sided_strict(anchor_set)
    chain = traceback(result, anchor_set, 1)
    assert chain.indices == (0, 1)
    assert coverage(chain, anchor_set) == 8
    assert traceback(result, anchor_set, 0).indices == (0,)


def test_traceback_index_out_of_range():
    anchor_set = make_set(*OVERLAP_EXAMPLE)
    result = chain_two_sided_strict(anchor_set)
    with pytest.raises(IndexError):
        traceback(result, anchor_set, 2)
    with pytest.raises(ValueError):
        traceback(result, make_set((1, 1, 1, 1)), 0)


@pytest.mark.property_based
@given(eml_sets())
@settings(max_examples=200, deadline=None)
def test_traceback_realizes_c_plus(anchor_set):
    for solver in list(FAST) + [chain_brute_strict, chain_brute_weak, chain_brute_one_sided]:
        result = solver(anchor_set)
        for j in range(len(anchor_set)):
            chain = traceback(result, anchor_set, j)
            assert chain.indices[-1] == j
            assert coverage(chain, anchor_set) == result.c_plus[j]


def test_normalize_strict_chain_unchanged():
    anchor_set = make_set(*OVERLAP_EXAMPLE)
    normalized = normalize_weak_chain(Chain((0, 1), ChainMode.WEAK), anchor_set)
    assert normalized.anchors == tuple(anchor_set.anchors)
    assert normalized.coverage == 8


def test_normalize_nested_pair():
    anchor_set = make_set((1, 6, 1, 6), (2, 5, 2, 5))
    normalized = normalize_weak_chain(Chain((0, 1), ChainMode.WEAK), anchor_set)
    assert [x.as_tuple() for x in normalized.anchors] == [(1, 4, 1, 4), (2, 5, 2, 5)]
    assert normalized.coverage == 5


def test_normalize_rejects_invalid_input():
    with pytest.raises(ChainValidationError):
        normalize_weak_chain(Chain((1, 0), ChainMode.WEAK), make_set((1, 6, 1, 6), (2, 5, 2, 5)))
    with pytest.raises(EmlRequiredError):
        normalize_weak_chain(Chain((0,), ChainMode.WEAK), make_set((1, 3, 1, 4)))


@pytest.mark.property_based
@given(eml_sets())
@settings(max_examples=200, deadline=None)
def test_normalize_preserves_coverage_of_weak_tracebacks(anchor_set):
    result = chain_two_sided_weak(anchor_set)
    for j in range(len(anchor_set)):
        chain = traceback(result, anchor_set, j)
        normalized = normalize_weak_chain(chain, anchor_set)
        assert normalized.coverage == result.c_plus[j]


# ---------------------------------------------------------------------------
# 受け入れ規模
# ---------------------------------------------------------------------------

@pytest.mark.slow
@pytest.mark.parametrize(
    "fast, brute",
    [
        (chain_two_sided_strict, chain_brute_strict),
        (chain_two_sided_weak, chain_brute_weak),
        (chain_one_sided, chain_brute_one_sided),
    ],
)
def test_oracle_equivalence_at_scale(fast, brute):
    rng = random.Random(20240101)
    for _ in range(1000):
        anchor_set = random_eml_instance(rng, 200, 10 ** 4)
        assert fast(anchor_set).c_plus == brute(anchor_set).c_plus


@pytest.mark.slow
def test_maxima_and_normalization_at_scale():
    rng = random.Random(7)
    for _ in range(1000):
        anchor_set = random_eml_instance(rng, 200, 10 ** 4)
        weak = chain_brute_weak(anchor_set)
        assert chain_brute_strict(anchor_set).best_score == weak.best_score
        fast_weak = chain_two_sided_weak(anchor_set)
        assert normalize_weak_chain(best_chain(fast_weak, anchor_set), anchor_set).coverage == weak.best_score
