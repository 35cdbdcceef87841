"""
範囲最大値探索木: キー集合を構築時に固定する半動的な 1次元・2次元 RMaxQ 木

  - RMaxTree1D: キー (coord, tag) の配列上のボトムアップ型セグメント木。
                Update / Upgrade / RMaxQ がいずれも O(log n)。
  - RMaxTree2D: 主キー順のセグメント木の各ノードに、その部分木の点を副キー順に並べた
                配列上のセグメント木を持たせた層状レンジ木。点更新・矩形クエリが O(log² n)。

値の「未登録」は NEG_INF で表す。NEG_INF に整数を足してはならない（呼び出し側で判定する）。
同じ値の最大が複数ある場合は tag の小さい方を返す。
"""
from __future__ import annotations

import heapq
from bisect import bisect_left, bisect_right
from typing import NamedTuple, Sequence

NEG_INF = float("-inf")


class Key1D(NamedTuple):
    """座標 coord とアンカー番号 tag の組。(coord, tag) の辞書式順序で全順序になる。"""
    coord: int
    tag: int


class Key2D(NamedTuple):
    primary: int
    secondary: int
    tag: int


class DuplicateKeyError(ValueError):
    pass


class UnsortedKeysError(ValueError):
    pass


class UnknownKeyError(KeyError):
    pass


def _check_sorted_distinct(keys: Sequence[tuple]) -> None:
    for pos in range(1, len(keys)):
        prev, cur = keys[pos - 1], keys[pos]
        if prev == cur:
            raise DuplicateKeyError(f"キーが重複しています: {tuple(cur)}")
        if prev > cur:
            raise UnsortedKeysError(f"キーが昇順に並んでいません: {tuple(prev)} > {tuple(cur)}")


class RMaxTree1D:
    """
    1次元の範囲最大値探索木。

    葉 i がキー keys[i] に対応する。内部ノードは部分木の最大値と、
    その最大値を持つ葉の位置（_arg）を保持する。ノード 0 は常に「空」の番兵。
    """

    __slots__ = ("_keys", "_coords", "_pos", "_size", "_val", "_arg")

    def __init__(self, keys: Sequence[Key1D]) -> None:
        keys = list(keys)
        _check_sorted_distinct(keys)
        size = 1
        while size < len(keys):
            size <<= 1
        self._keys = keys
        self._coords = [k.coord for k in keys]
        self._pos = {k: i for i, k in enumerate(keys)}
        self._size = size
        self._val: list[float | int] = [NEG_INF] * (2 * size)
        self._arg: list[int] = [-1] * (2 * size)

    @classmethod
    def build(cls, keys: Sequence[Key1D]) -> RMaxTree1D:
        """昇順・重複なしのキー列から、全値 NEG_INF の木を O(n) で構築する。"""
        return cls(keys)

    def __len__(self) -> int:
        return len(self._keys)

    @property
    def coord_bounds(self) -> tuple[int, int]:
        """構築済みキーの最小・最大座標。空の木では空範囲 (0, -1)。"""
        if not self._keys:
            return (0, -1)
        return (self._coords[0], self._coords[-1])

    def _locate(self, key: tuple) -> int:
        i = self._pos.get(key)
        if i is None:
            raise UnknownKeyError(f"キー {tuple(key)} は木に登録されていません")
        return i

    def _prefers(self, x: int, y: int) -> bool:
        """ノード x の最大値をノード y より優先するなら True（同値なら tag の小さい方）。"""
        vx, vy = self._val[x], self._val[y]
        if vx != vy:
            return vx > vy
        if vx == NEG_INF:
            return True
        return self._keys[self._arg[x]].tag <= self._keys[self._arg[y]].tag

    def _set(self, i: int, val: float | int) -> None:
        v = i + self._size
        self._val[v] = val
        self._arg[v] = -1 if val == NEG_INF else i
        v >>= 1
        while v:
            w = 2 * v if self._prefers(2 * v, 2 * v + 1) else 2 * v + 1
            self._val[v] = self._val[w]
            self._arg[v] = self._arg[w]
            v >>= 1

    def value(self, key: tuple) -> float | int:
        return self._val[self._locate(key) + self._size]

    def update(self, key: tuple, val: float | int) -> None:
        """キーの値を val で上書きする（NEG_INF で無効化）。"""
        self._set(self._locate(key), val)

    def upgrade(self, key: tuple, val: float | int) -> None:
        """キーの値を max(現在値, val) にする。"""
        i = self._locate(key)
        if val > self._val[i + self._size]:
            self._set(i, val)

    def rmaxq_arg(self, lo: float, hi: float) -> tuple[float | int, Key1D | None]:
        """
        lo <= coord <= hi のキーの最大値と、それを持つキーを返す。

        tag は範囲判定に使わない（同じ座標のキーはすべて範囲に入る）。
        該当する値がなければ (NEG_INF, None)。
        """
        l = bisect_left(self._coords, lo) + self._size
        r = bisect_right(self._coords, hi) + self._size
        best = 0
        while l < r:
            if l & 1:
                if self._prefers(l, best):
                    best = l
                l += 1
            if r & 1:
                r -= 1
                if self._prefers(r, best):
                    best = r
            l >>= 1
            r >>= 1
        val = self._val[best]
        if val == NEG_INF:
            return NEG_INF, None
        return val, self._keys[self._arg[best]]

    def rmaxq(self, lo: float, hi: float) -> float | int:
        return self.rmaxq_arg(lo, hi)[0]


class RMaxTree2D:
    """
    2次元の範囲最大値探索木（層状レンジ木）。

    点は (primary, secondary, tag) で、tag は木の中で一意でなければならない。
    クエリの主キー範囲はセグメント木の O(log n) 個のノードに分解され、
    各ノードの副キー木で副キー範囲の最大値を求める。

    副キー木はオブジェクトにせず、ノードごとに平坦な配列で持つ:
      _coords[v]  部分木の点の副キー（(secondary, tag) 昇順）
      _vals[v]    副キー上のセグメント木の値（葉は _leaf[v] 以降）
      _tags[v]    各ノードで最大値を持つ点の tag（値が NEG_INF なら -1）
    点 i が根までの各ノードで何番目の葉にあるかは _paths[i] に構築時に求めておく。
    """

    __slots__ = ("_points", "_primaries", "_index", "_size", "_coords", "_leaf", "_vals", "_tags", "_paths")

    def __init__(self, points: Sequence[Key2D]) -> None:
        points = list(points)
        _check_sorted_distinct(points)
        index = {p.tag: i for i, p in enumerate(points)}
        if len(index) != len(points):
            raise DuplicateKeyError("2次元木の点の tag が重複しています")
        if index and min(index) < 0:
            raise ValueError("2次元木の点の tag は 0 以上でなければなりません")
        size = 1
        while size < len(points):
            size <<= 1

        inner: list[list[tuple[int, int]]] = [[] for _ in range(2 * size)]
        for i, p in enumerate(points):
            inner[size + i] = [(p.secondary, p.tag)]
        for v in range(size - 1, 0, -1):
            inner[v] = list(heapq.merge(inner[2 * v], inner[2 * v + 1]))

        # 副キー木は要素数 m ちょうどの配列で持つ（葉は m..2m-1）
        leaf = [len(keys) for keys in inner]
        paths: list[list[int]] = [[] for _ in points]
        # v の降順に走査すると、各点について葉から根の順に位置が積まれる
        for v in range(2 * size - 1, 0, -1):
            for pos, (_, tag) in enumerate(inner[v]):
                paths[index[tag]].append(pos)

        self._points = points
        self._primaries = [p.primary for p in points]
        self._index = index
        self._size = size
        self._coords = [[s for s, _ in keys] for keys in inner]
        self._leaf = leaf
        self._vals: list[list[float | int]] = [[NEG_INF] * (2 * w) for w in leaf]
        self._tags: list[list[int]] = [[-1] * (2 * w) for w in leaf]
        self._paths = paths

    @classmethod
    def build(cls, points: Sequence[Key2D]) -> RMaxTree2D:
        """(主キー, 副キー, tag) 昇順の点列から O(n log n) で構築する。"""
        return cls(points)

    def __len__(self) -> int:
        return len(self._points)

    @property
    def primary_bounds(self) -> tuple[int, int]:
        if not self._points:
            return (0, -1)
        return (self._primaries[0], self._primaries[-1])

    def _locate(self, point: tuple) -> int:
        i = self._index.get(point[2])
        if i is None or self._points[i] != point:
            raise UnknownKeyError(f"点 {tuple(point)} は木に登録されていません")
        return i

    def value(self, point: Key2D) -> float | int:
        # 葉ノードの副キー木は要素1つなので、その値は位置 1 にある
        return self._vals[self._size + self._locate(point)][1]

    def update(self, point: Key2D, val: float | int) -> None:
        """点の値を val で上書きする。葉から根までの O(log n) 個の副キー木を更新する。"""
        i = self._locate(point)
        tag = -1 if val == NEG_INF else point[2]
        v = self._size + i
        for pos in self._paths[i]:
            vals, tags = self._vals[v], self._tags[v]
            u = pos + self._leaf[v]
            vals[u] = val
            tags[u] = tag
            while u > 1:
                u >>= 1
                lv, rv = vals[2 * u], vals[2 * u + 1]
                if lv > rv or (lv == rv and tags[2 * u] <= tags[2 * u + 1]):
                    vals[u], tags[u] = lv, tags[2 * u]
                else:
                    vals[u], tags[u] = rv, tags[2 * u + 1]
            v >>= 1

    def upgrade(self, point: Key2D, val: float | int) -> None:
        if val > self.value(point):
            self.update(point, val)

    def rmaxq_arg(
        self, p_lo: float, p_hi: float, s_lo: float, s_hi: float
    ) -> tuple[float | int, Key2D | None]:
        """p_lo <= primary <= p_hi かつ s_lo <= secondary <= s_hi の点の最大値と、その点。"""
        l = bisect_left(self._primaries, p_lo) + self._size
        r = bisect_right(self._primaries, p_hi) + self._size
        best_val: float | int = NEG_INF
        best_tag = -1
        while l < r:
            if l & 1:
                best_val, best_tag = self._visit(l, s_lo, s_hi, best_val, best_tag)
                l += 1
            if r & 1:
                r -= 1
                best_val, best_tag = self._visit(r, s_lo, s_hi, best_val, best_tag)
            l >>= 1
            r >>= 1
        if best_tag < 0:
            return NEG_INF, None
        return best_val, self._points[self._index[best_tag]]

    def _visit(self, v, s_lo, s_hi, best_val, best_tag):
        coords = self._coords[v]
        if not coords:
            return best_val, best_tag
        width = self._leaf[v]
        vals, tags = self._vals[v], self._tags[v]
        l = bisect_left(coords, s_lo) + width
        r = bisect_right(coords, s_hi) + width
        while l < r:
            if l & 1:
                if tags[l] >= 0 and (best_tag < 0 or vals[l] > best_val or (vals[l] == best_val and tags[l] < best_tag)):
                    best_val, best_tag = vals[l], tags[l]
                l += 1
            if r & 1:
                r -= 1
                if tags[r] >= 0 and (best_tag < 0 or vals[r] > best_val or (vals[r] == best_val and tags[r] < best_tag)):
                    best_val, best_tag = vals[r], tags[r]
            l >>= 1
            r >>= 1
        return best_val, best_tag

    def rmaxq(self, p_lo: float, p_hi: float, s_lo: float, s_hi: float) -> float | int:
        return self.rmaxq_arg(p_lo, p_hi, s_lo, s_hi)[0]
