"""テスト用の総当たりオラクルと hypothesis ストラテジー。"""
from __future__ import annotations

from hypothesis import strategies as st

from overlap_chain.anchor_model import Anchor, AnchorSet, ChainMode, coverage_of, relation_for, validate

# 重なりのある2アンカーの例: 被覆スコア 6 + 2 = 8
OVERLAP_EXAMPLE = [(1, 5, 2, 6), (3, 8, 5, 10)]


def make_set(*raw: tuple[int, int, int, int]) -> AnchorSet:
    return validate(list(raw))


@st.composite
def eml_anchors(draw, max_start: int = 20, max_len: int = 8) -> Anchor:
    length = draw(st.integers(1, max_len))
    a = draw(st.integers(1, max_start))
    c = draw(st.integers(1, max_start))
    return Anchor(a, a + length - 1, c, c + length - 1)


@st.composite
def any_anchors(draw, max_start: int = 20, max_len: int = 8) -> Anchor:
    a = draw(st.integers(1, max_start))
    c = draw(st.integers(1, max_start))
    return Anchor(a, a + draw(st.integers(0, max_len - 1)), c, c + draw(st.integers(0, max_len - 1)))


def eml_sets(max_n: int = 30, max_start: int = 20, max_len: int = 8):
    return st.lists(eml_anchors(max_start, max_len), max_size=max_n).map(validate)


def any_sets(max_n: int = 8, max_start: int = 12, max_len: int = 6):
    return st.lists(any_anchors(max_start, max_len), max_size=max_n).map(validate)


def exhaustive_best(anchor_set: AnchorSet, mode: ChainMode, one_sided: bool = False) -> list[int]:
    """
    すべてのチェーンを列挙し、各アンカーで終わるチェーンの最大被覆スコアを返す。

    one_sided=True なら隣接アンカーが第1次元で重なるチェーンを除く。N <= 8 程度まで。
    """
    anchors = anchor_set.anchors
    relation = relation_for(mode)
    best = [0] * len(anchors)

    def extend(chain: list[int]) -> None:
        last = chain[-1]
        best[last] = max(best[last], coverage_of([anchors[i] for i in chain], mode))
        for nxt in range(len(anchors)):
            p, q = anchors[last], anchors[nxt]
            if relation(p, q) and (not one_sided or p.b < q.a):
                extend(chain + [nxt])

    for j in range(len(anchors)):
        extend([j])
    return best
