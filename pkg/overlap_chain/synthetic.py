"""
合成データ: ベンチマーク・検証・テスト用のシード付きランダムなアンカー集合と文字列ペア

すべて呼び出し側が渡す random.Random から乱数を引くので、シードが同じなら出力も同じ。
"""
from __future__ import annotations

import random

from .anchor_gen import StringPair
from .anchor_model import Anchor, AnchorSet, validate


def synthetic_eml_anchors(rng: random.Random, n: int, max_len: int, span: int) -> AnchorSet:
    """
    ベンチマーク用の EML アンカーを n 個作る。

    Args:
        rng:     乱数生成器
        n:       アンカー数
        max_len: 区間長の上限 L（長さは [1, L] の一様分布）
        span:    始点 a, c の上限（始点は [1, span] の一様分布、独立に引く）
    """
    if n < 0 or max_len < 1 or span < 1:
        raise ValueError(f"不正なパラメータです: n={n}, max_len={max_len}, span={span}")
    anchors = []
    for _ in range(n):
        length = rng.randint(1, max_len)
        a = rng.randint(1, span)
        c = rng.randint(1, span)
        anchors.append(Anchor(a, a + length - 1, c, c + length - 1))
    return validate(anchors)


def random_eml_instance(rng: random.Random, max_n: int, max_coord: int) -> AnchorSet:
    """
    検証用の EML アンカー集合。N は 0 以上 max_n 以下。

    座標の範囲を狭くとることがあり、端点の同値・重複アンカー・入れ子が頻繁に起きるようにしている。
    すべての座標は max_coord 以下。
    """
    if max_coord < 2:
        raise ValueError(f"max_coord は 2 以上でなければなりません: {max_coord}")
    n = rng.randint(0, max_n)
    # 座標の密度をインスタンスごとに変える（狭いほど同値が増える）
    scale = rng.choice([max(2, max_coord // 100), max(2, max_coord // 10), max_coord])
    max_len = rng.randint(1, max(1, scale // 2))

    anchors: list[Anchor] = []
    for _ in range(n):
        roll = rng.random()
        if anchors and roll < 0.15:
            anchors.append(rng.choice(anchors))
            continue
        if anchors and roll < 0.35:
            outer = rng.choice(anchors)
            if outer.length1 > 1:
                # outer の内側に入れ子のアンカーを置く（第2次元のずれは任意）
                length = rng.randint(1, outer.length1 - 1)
                a = rng.randint(outer.a, outer.b - length + 1)
                c = outer.c + (a - outer.a) if rng.random() < 0.5 else rng.randint(1, scale)
                c = min(c, max_coord - length + 1)
                anchors.append(Anchor(a, a + length - 1, c, c + length - 1))
                continue
        length = rng.randint(1, max_len)
        hi = max(1, min(scale, max_coord) - length + 1)
        a = rng.randint(1, hi)
        c = rng.randint(1, hi)
        anchors.append(Anchor(a, a + length - 1, c, c + length - 1))
    return validate(anchors)


def random_string_pair(rng: random.Random, max_len: int, alphabet: str) -> StringPair:
    """長さ [1, max_len] の T と P を alphabet から一様に作る。"""
    if max_len < 1 or not alphabet:
        raise ValueError(f"不正なパラメータです: max_len={max_len}, alphabet={alphabet!r}")
    t = "".join(rng.choice(alphabet) for _ in range(rng.randint(1, max_len)))
    p = "".join(rng.choice(alphabet) for _ in range(rng.randint(1, max_len)))
    return StringPair(t, p)
