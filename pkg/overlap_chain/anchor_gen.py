"""
アンカー生成: 文字列ペアから k-mer 一致・極大完全一致 (MEM)・1文字一致のアンカー集合を作る

いずれも机上規模（|T|·|P| が数百万程度まで）を想定した素朴な実装。
座標は 1 始まり・両端を含む。出力順は (i, j) の昇順で決定的。
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path

from pyfaidx import Fasta, FastaIndexingError, FetchError

from .anchor_model import Anchor, AnchorSet, validate


class SequenceFormatError(ValueError):
    """配列ファイルが2行形式・2レコードの FASTA のどちらでもない。"""


@dataclass(frozen=True)
class StringPair:
    """テキスト T とパターン P。アンカーの第1次元が T、第2次元が P に対応する。"""
    text: str
    pattern: str

    def __post_init__(self) -> None:
        if not self.text or not self.pattern:
            raise SequenceFormatError("T と P はどちらも空であってはなりません")


def kmer_matches(sp: StringPair, k: int) -> AnchorSet:
    """
    長さ k の一致をすべてアンカーとして返す。

    Args:
        sp: 文字列ペア
        k:  一致長（1 <= k <= min(|T|, |P|)）

    Returns:
        ([i..i+k-1],[j..j+k-1]) の集合。i、次に j の昇順。

    Raises:
        ValueError: k が範囲外の場合
    """
    t, p = sp.text, sp.pattern
    if not 1 <= k <= min(len(t), len(p)):
        raise ValueError(f"k は 1 以上 min(|T|, |P|) = {min(len(t), len(p))} 以下でなければなりません: k={k}")

    occurrences: dict[str, list[int]] = defaultdict(list)
    for j in range(len(p) - k + 1):
        occurrences[p[j:j + k]].append(j + 1)

    anchors = []
    for i in range(len(t) - k + 1):
        for j in occurrences.get(t[i:i + k], ()):
            anchors.append(Anchor(i + 1, i + k, j, j + k - 1))
    return validate(anchors)


def maximal_exact_matches(sp: StringPair, minlen: int = 1) -> AnchorSet:
    """
    長さ minlen 以上の極大完全一致をすべてアンカーとして返す。

    各対角線 j - i = 一定 を端から走査し、不一致で区切られた一致の連続を1つの MEM として出力する。
    O(|T|·|P|)。

    Raises:
        ValueError: minlen が 1 未満の場合
    """
    if minlen < 1:
        raise ValueError(f"minlen は 1 以上でなければなりません: {minlen}")
    t, p = sp.text, sp.pattern
    n, m = len(t), len(p)

    anchors = []
    for offset in range(-(n - 1), m):
        i = max(0, -offset)
        run = 0
        while True:
            j = i + offset
            inside = i < n and j < m
            if inside and t[i] == p[j]:
                run += 1
            else:
                if run >= minlen:
                    a, c = i - run + 1, j - run + 1
                    anchors.append(Anchor(a, i, c, j))
                run = 0
            if not inside:
                break
            i += 1
    anchors.sort(key=lambda x: (x.a, x.c))
    return validate(anchors)


def unit_matches(sp: StringPair) -> AnchorSet:
    """T[i] == P[j] となるすべての (i, j) を長さ 1 のアンカーにする（kmer_matches の k=1）。"""
    return kmer_matches(sp, 1)


# ---------------------------------------------------------------------------
# 配列ファイルの読み込み
# ---------------------------------------------------------------------------

def _read_text(path: Path) -> str:
    raw = path.read_bytes()
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError:
        # 任意の 8bit 文字を受け付ける
        return raw.decode("latin-1")


def _read_fasta(path: Path) -> StringPair:
    try:
        fasta = Fasta(str(path), as_raw=True, sequence_always_upper=False)
    except (FastaIndexingError, FetchError) as e:
        # 行長の不揃い・レコード内の空行など
        raise SequenceFormatError(f"FASTA を解釈できません: {path}: {e}") from e
    try:
        names = list(fasta.keys())
        if len(names) != 2:
            raise SequenceFormatError(f"FASTA のレコード数は2つでなければなりません（{len(names)} 個）: {path}")
        return StringPair(fasta[names[0]][:], fasta[names[1]][:])
    except FetchError as e:
        raise SequenceFormatError(f"FASTA を解釈できません: {path}: {e}") from e
    finally:
        fasta.close()


def read_string_pair(path: str | Path) -> StringPair:
    """
    配列ファイルを読み込む。先頭が `>` なら FASTA（pyfaidx で読む）、それ以外は2行形式。

    2行形式: 1行目が T、2行目が P。末尾の空行は無視する。

    Raises:
        SequenceFormatError: どちらの形式としても解釈できない場合
        OSError:             ファイルを読めない場合
    """
    path = Path(path)
    text = _read_text(path)
    if text.startswith(">"):
        return _read_fasta(path)

    lines = [line.rstrip("\r") for line in text.split("\n")]
    while lines and not lines[-1]:
        lines.pop()
    if len(lines) != 2:
        raise SequenceFormatError(f"2行形式の配列ファイルは T と P の2行でなければなりません（{len(lines)} 行）: {path}")
    return StringPair(lines[0], lines[1])
