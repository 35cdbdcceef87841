"""
アンカーモデル: アンカー区間ペア・チェーン・先行/重なり関係と対称順序被覆スコア

座標はすべて 1 始まり・両端を含む整数。0 は探索木の番兵キーに予約しているため、
入力に 0 以下の座標が含まれる場合は validate() で拒否する。

TSV 形式（CLI が読み書きする唯一のアンカー形式）:
  - 1行1アンカー、タブ区切りの10進整数4つ `a b c d`
  - `#` で始まる行と空行は無視
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator, Sequence

# これを超える座標は受け付けない（スコアは座標幅で抑えられるので桁あふれは起きない）
MAX_COORD = 2 ** 40


class ChainMode(str, Enum):
    """チェーンが満たすべき先行関係。"""
    STRICT = "strict"
    WEAK = "weak"


class AnchorValidationError(ValueError):
    """座標が不正なアンカー。index は入力中の位置（0始まり）。"""

    def __init__(self, index: int, message: str) -> None:
        super().__init__(f"アンカー #{index + 1}: {message}")
        self.index = index


class AnchorParseError(ValueError):
    """TSV の構文エラー。line_no は 1 始まりの行番号。"""

    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"{line_no} 行目: {message}")
        self.line_no = line_no


class ChainValidationError(ValueError):
    """チェーンが主張する先行関係を満たしていない、または添字が範囲外。"""


class EmlRequiredError(ValueError):
    """Equal Match Length 性を前提とする処理に EML でない入力が渡された。"""


@dataclass(frozen=True)
class Anchor:
    """
    アンカー区間ペア ([a..b], [c..d])。

    [a..b] が第1次元（テキスト T 側）、[c..d] が第2次元（パターン P 側）の区間。
    """
    a: int
    b: int
    c: int
    d: int

    @property
    def length1(self) -> int:
        return self.b - self.a + 1

    @property
    def length2(self) -> int:
        return self.d - self.c + 1

    @property
    def min_length(self) -> int:
        return min(self.length1, self.length2)

    @property
    def diagonal(self) -> int:
        """c - a。EML のもとで区間の「ずれ」を表し、2次元木の主キーになる。"""
        return self.c - self.a

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def translated(self, offset: int) -> Anchor:
        return Anchor(self.a + offset, self.b + offset, self.c + offset, self.d + offset)

    def __str__(self) -> str:
        return f"([{self.a}..{self.b}],[{self.c}..{self.d}])"


@dataclass(frozen=True)
class AnchorSet:
    """
    検証済みのアンカー配列 A[1..N] と、その性質フラグ。

    eml:        すべてのアンカーで b-a == d-c が成り立つ
    non_nested: どのアンカーの区間も、他のアンカーの同じ次元の区間の真部分集合になっていない
    """
    anchors: tuple[Anchor, ...]
    eml: bool
    non_nested: bool

    @classmethod
    def from_anchors(cls, anchors: Iterable[Anchor]) -> AnchorSet:
        """座標検証済みのアンカー列からフラグを計算して AnchorSet を作る。"""
        items = tuple(anchors)
        eml = all(x.b - x.a == x.d - x.c for x in items)
        non_nested = (
            not _has_proper_nesting([(x.a, x.b) for x in items])
            and not _has_proper_nesting([(x.c, x.d) for x in items])
        )
        return cls(items, eml, non_nested)

    def __len__(self) -> int:
        return len(self.anchors)

    def __getitem__(self, index: int) -> Anchor:
        return self.anchors[index]

    def __iter__(self) -> Iterator[Anchor]:
        return iter(self.anchors)


@dataclass(frozen=True)
class Chain:
    """AnchorSet への添字（0始まり）の順序付きリストと、満たすと主張する先行関係。"""
    indices: tuple[int, ...]
    mode: ChainMode = ChainMode.STRICT

    def __len__(self) -> int:
        return len(self.indices)


def _has_proper_nesting(intervals: list[tuple[int, int]]) -> bool:
    """
    区間の集合に「ある区間が別の区間の真部分集合」となる組があるかを O(n log n) で調べる。

    同一区間の重複は入れ子とみなさない。相異なる区間を (始点昇順, 終点降順) に並べると、
    それより前の区間の終点の最大値以下で終わる区間がちょうど入れ子の区間になる。
    """
    distinct = sorted(set(intervals), key=lambda iv: (iv[0], -iv[1]))
    max_end = None
    for _, end in distinct:
        if max_end is not None and end <= max_end:
            return True
        max_end = end if max_end is None else max(max_end, end)
    return False


# ---------------------------------------------------------------------------
# 関係
# ---------------------------------------------------------------------------

def precedes(p: Anchor, q: Anchor) -> bool:
    """p ≺ q: 4つの端点すべてで p が q より真に小さい。"""
    return p.a < q.a and p.b < q.b and p.c < q.c and p.d < q.d


def weakly_precedes(p: Anchor, q: Anchor) -> bool:
    """p ≺w q: 始点 a, c だけが真に小さい。"""
    return p.a < q.a and p.c < q.c


def overlaps(p: Anchor, q: Anchor) -> bool:
    """どちらかの次元で区間が交わる。"""
    return (p.a <= q.b and q.a <= p.b) or (p.c <= q.d and q.c <= p.d)


def relation_for(mode: ChainMode):
    return precedes if mode is ChainMode.STRICT else weakly_precedes


# ---------------------------------------------------------------------------
# スコア
# ---------------------------------------------------------------------------

def step_coverage(p: Anchor, q: Anchor) -> int:
    """チェーン中で p の直後に q が続くとき、p が新たに被覆する長さ（両次元の最小）。"""
    return min(
        min(q.a, p.b + 1) - p.a,
        min(q.c, p.d + 1) - p.c,
    )


def coverage_of(anchors: Sequence[Anchor], mode: ChainMode = ChainMode.STRICT) -> int:
    """
    アンカー列をチェーンとみなした対称順序被覆スコアを返す。

    Args:
        anchors: チェーン順に並んだアンカー
        mode:    隣接ペアが満たすべき先行関係

    Returns:
        被覆スコア（空のチェーンは 0）

    Raises:
        ChainValidationError: 隣接ペアが mode の先行関係を満たさない場合
    """
    if not anchors:
        return 0
    relation = relation_for(mode)
    total = 0
    for pos in range(len(anchors) - 1):
        p, q = anchors[pos], anchors[pos + 1]
        if not relation(p, q):
            raise ChainValidationError(
                f"チェーンの {pos + 1} 番目と {pos + 2} 番目が {mode.value} 先行関係を満たしません: {p} → {q}"
            )
        total += step_coverage(p, q)
    return total + anchors[-1].min_length


def coverage(chain: Chain, anchor_set: AnchorSet) -> int:
    """チェーン（添字列）の対称順序被覆スコアを返す。添字の範囲外は ChainValidationError。"""
    for idx in chain.indices:
        if not 0 <= idx < len(anchor_set):
            raise ChainValidationError(f"添字 {idx} は範囲外です（N={len(anchor_set)}）")
    return coverage_of([anchor_set[i] for i in chain.indices], chain.mode)


# ---------------------------------------------------------------------------
# 検証と TSV 入出力
# ---------------------------------------------------------------------------

def validate(raw: Iterable[Sequence[int]]) -> AnchorSet:
    """
    生の (a, b, c, d) 列を検証し、入力順を保った AnchorSet を返す。重複は残す。

    Raises:
        AnchorValidationError: 非正の座標・逆転した区間・上限超えの座標があった場合
    """
    anchors: list[Anchor] = []
    for index, item in enumerate(raw):
        if isinstance(item, Anchor):
            item = item.as_tuple()
        if len(item) != 4:
            raise AnchorValidationError(index, f"座標は4つ必要です（{len(item)} 個）")
        a, b, c, d = (int(v) for v in item)
        if min(a, b, c, d) < 1:
            raise AnchorValidationError(index, f"座標は 1 以上でなければなりません: {a} {b} {c} {d}")
        if max(a, b, c, d) > MAX_COORD:
            raise AnchorValidationError(index, f"座標が上限 2^40 を超えています: {a} {b} {c} {d}")
        if a > b or c > d:
            raise AnchorValidationError(index, f"区間が逆転しています: [{a}..{b}], [{c}..{d}]")
        anchors.append(Anchor(a, b, c, d))
    return AnchorSet.from_anchors(anchors)


# 符号・空白・桁区切りの _ を含まない ASCII の10進数字列
_DECIMAL = re.compile(r"[0-9]+")


def parse_anchor_tsv(text: str) -> AnchorSet:
    """アンカー TSV テキストを解析して検証済み AnchorSet を返す。"""
    raw: list[tuple[int, ...]] = []
    for line_no, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.rstrip("\r").split("\t")
        if len(fields) != 4:
            raise AnchorParseError(line_no, f"タブ区切りの整数が4つ必要です: {line!r}")
        if not all(_DECIMAL.fullmatch(f) for f in fields):
            raise AnchorParseError(line_no, f"10進整数として読めません: {line!r}")
        raw.append(tuple(int(f) for f in fields))
    return validate(raw)


def format_anchor_tsv(anchors: Iterable[Anchor]) -> str:
    return "".join(f"{x.a}\t{x.b}\t{x.c}\t{x.d}\n" for x in anchors)


def read_anchor_tsv(path: str | Path) -> AnchorSet:
    with open(path, "r", encoding="utf-8") as f:
        return parse_anchor_tsv(f.read())


def write_anchor_tsv(path: str | Path, anchors: Iterable[Anchor]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(format_anchor_tsv(anchors))
