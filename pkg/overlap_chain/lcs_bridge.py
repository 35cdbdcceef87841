"""
LCS との橋渡し: 古典的 LCS、アンカー制限付き LCS、チェーンスコアとの一致検証

アンカー制限付き LCS は、一致する文字ペア (i, j) のうち
あるアンカー ([a..b],[c..d]) について a+x = i, c+x = j (0 <= x <= b-a) となるもの（支持されたペア）
だけを対角移動に使う LCS。
完全一致アンカーの集合に対して、弱い先行関係の最適チェーンスコアと一致する。
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .anchor_gen import StringPair
from .anchor_model import AnchorSet
from .chaining_core import chain_two_sided_weak


class AnchorMismatchError(ValueError):
    """アンカーが文字列ペアの完全一致になっていない。index はアンカー番号（0始まり）。"""

    def __init__(self, index: int, message: str) -> None:
        super().__init__(f"アンカー #{index + 1}: {message}")
        self.index = index


@dataclass(frozen=True)
class SupportedMatchSet:
    """支持された (i, j) ペア（1始まり）の昇順・重複なしリスト。"""
    pairs: tuple[tuple[int, int], ...]
    _lookup: frozenset[tuple[int, int]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_lookup", frozenset(self.pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair: object) -> bool:
        return pair in self._lookup


class LcsWitness(NamedTuple):
    length: int
    pairs: tuple[tuple[int, int], ...]


class ChainLcsComparison(NamedTuple):
    chain_score: int
    lcs_length: int
    equal: bool


def lcs_classic(sp: StringPair) -> int:
    """標準的な O(|T|·|P|) の動的計画法による LCS 長。"""
    t, p = sp.text, sp.pattern
    prev = [0] * (len(p) + 1)
    for i in range(1, len(t) + 1):
        cur = [0] * (len(p) + 1)
        ti = t[i - 1]
        for j in range(1, len(p) + 1):
            if ti == p[j - 1]:
                cur[j] = prev[j - 1] + 1
            else:
                cur[j] = max(prev[j], cur[j - 1])
        prev = cur
    return prev[-1]


def supported_matches(sp: StringPair, anchor_set: AnchorSet) -> SupportedMatchSet:
    """
    アンカーが支持する (i, j) ペアをすべて列挙する。

    Raises:
        AnchorMismatchError: 部分文字列が一致しない、または文字列の範囲外のアンカーがある場合
    """
    t, p = sp.text, sp.pattern
    pairs: set[tuple[int, int]] = set()
    for index, x in enumerate(anchor_set):
        if x.b - x.a != x.d - x.c:
            raise AnchorMismatchError(index, f"{x} の区間長が異なります")
        if x.b > len(t) or x.d > len(p):
            raise AnchorMismatchError(index, f"{x} が文字列の長さ (|T|={len(t)}, |P|={len(p)}) を超えています")
        if t[x.a - 1:x.b] != p[x.c - 1:x.d]:
            raise AnchorMismatchError(index, f"{x} の部分文字列が一致しません")
        pairs.update((x.a + off, x.c + off) for off in range(x.length1))
    return SupportedMatchSet(tuple(sorted(pairs)))


def _suffix_table(sp: StringPair, supported: SupportedMatchSet) -> list[list[int]]:
    """S[i][j] = T[i+1..], P[j+1..] （0始まりで i, j 以降）のアンカー制限付き LCS 長。"""
    n, m = len(sp.text), len(sp.pattern)
    table = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        row, below = table[i], table[i + 1]
        for j in range(m - 1, -1, -1):
            best = max(below[j], row[j + 1])
            if (i + 1, j + 1) in supported:
                best = max(best, below[j + 1] + 1)
            row[j] = best
    return table


def anchor_restricted_lcs(sp: StringPair, anchor_set: AnchorSet) -> int:
    """
    アンカー制限付き LCS の長さ。

    Raises:
        AnchorMismatchError: anchor_set が sp の完全一致になっていない場合
    """
    supported = supported_matches(sp, anchor_set)
    if not supported:
        return 0
    return _suffix_table(sp, supported)[0][0]


def restricted_lcs_witness(sp: StringPair, anchor_set: AnchorSet) -> LcsWitness:
    """
    アンカー制限付き LCS の長さと、それを実現するペア列を1つ返す。

    同じ長さの候補が複数ある場合は、各段で (i, j) が辞書式に最小のペアを選ぶ。

    Raises:
        AnchorMismatchError: anchor_set が sp の完全一致になっていない場合
    """
    supported = supported_matches(sp, anchor_set)
    if not supported:
        return LcsWitness(0, ())
    table = _suffix_table(sp, supported)
    length = table[0][0]

    pairs: list[tuple[int, int]] = []
    i0 = j0 = 0
    remaining = length
    while remaining:
        found = next(
            (i, j)
            for i, j in supported.pairs
            if i > i0 and j > j0 and table[i][j] + 1 == remaining
        )
        pairs.append(found)
        i0, j0 = found
        remaining -= 1
    return LcsWitness(length, tuple(pairs))


def verify_chain_lcs_equivalence(sp: StringPair, anchor_set: AnchorSet) -> ChainLcsComparison:
    """
    弱い先行関係の最適チェーンスコアとアンカー制限付き LCS 長を比べる。

    Returns:
        chain_score: chain_two_sided_weak の max C⁺（空なら 0）
        lcs_length:  anchor_restricted_lcs
        equal:       両者が一致するか
    """
    lcs_length = anchor_restricted_lcs(sp, anchor_set)
    chain_score = chain_two_sided_weak(anchor_set).best_score
    return ChainLcsComparison(chain_score, lcs_length, chain_score == lcs_length)
