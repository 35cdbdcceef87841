"""
チェイニング本体: 重なりを許すアンカーチェーンの対称順序被覆スコアを全アンカーについて求める

アルゴリズム:
  chain_brute_strict      O(N²) の漸化式 C[j] = max(0, D[j], O[j])（厳密な先行関係）
  chain_brute_weak        同上（弱い先行関係）
  chain_brute_one_sided   同上（第1次元で重ならないチェーンに限定。片側重なり版の検証用）
  chain_one_sided         片側重なりのスイープ                         O(N log N)
  chain_two_sided_strict  両側重なりのスイープ（𝒯ᶜ/𝒯ᵈ は2次元木）     O(N log² N)
  chain_two_sided_weak    両側重なりのスイープ（𝒯ᶜ/𝒯ᵈ は1次元木）     O(N log N)

スイープ系は Equal Match Length 性（b-a == d-c）を前提とし、満たさない入力は拒否する。

添字はすべて 0 始まり。C[j] は A[j] 自身の寄与を足す前のスコア、
C⁺[j] = C[j] + min(A[j] の区間長)。
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum
from itertools import groupby
from typing import Callable, NamedTuple

from .anchor_model import (
    Anchor,
    AnchorSet,
    Chain,
    ChainMode,
    ChainValidationError,
    EmlRequiredError,
    coverage,
    coverage_of,
    precedes,
    relation_for,
    step_coverage,
    weakly_precedes,
)
from .rmq_tree import NEG_INF, Key1D, Key2D, RMaxTree1D, RMaxTree2D

# 𝒯ᵃ の番兵キー（座標 0 は入力に現れない）
_SENTINEL_TAG = -1
_SENTINEL = Key1D(0, _SENTINEL_TAG)


class EventKind(IntEnum):
    START = 0
    END = 1


class Event(NamedTuple):
    """スイープのイベント。(coord, kind, anchor) の順で並べると 同一座標では始点が先になる。"""
    coord: int
    kind: EventKind
    anchor: int


class Case(str, Enum):
    """C[j] を与えた場合分け。"""
    NONE = "-"       # 先行アンカーなし（C[j] = 0）
    A = "a"          # 両次元とも重ならない（𝒯ᵃ）
    B = "b"          # 第2次元のみで重なる（𝒯ᵇ）
    C = "c"          # 第1次元で重なり、重なりは第1次元の方が長い（𝒯ᶜ）
    D = "d"          # 第1次元で重なり、重なりは第2次元の方が長い（𝒯ᵈ）
    DISJOINT = "D"   # 総当たりの D[j]
    OVERLAP = "O"    # 総当たりの O[j]


class CaseScores(NamedTuple):
    """スイープが求めた場合ごとのスコア。None はその場合が使えなかったことを表す。"""
    a: int | None
    b: int | None
    c: int | None
    d: int | None


class _Lookup(NamedTuple):
    case: Case
    tree: RMaxTree1D | RMaxTree2D
    bounds: tuple
    offset: int


@dataclass(frozen=True)
class ChainingResult:
    algorithm: str
    mode: ChainMode
    c: tuple[int, ...]
    c_plus: tuple[int, ...]
    pred: tuple[int | None, ...]
    case: tuple[Case, ...]
    case_scores: tuple[CaseScores | None, ...]
    best: int | None

    def __len__(self) -> int:
        return len(self.c)

    @property
    def best_score(self) -> int:
        return 0 if self.best is None else self.c_plus[self.best]


def _argbest(c_plus: list[int]) -> int | None:
    """C⁺ の最大値を持つ最小の添字。"""
    best = None
    for j, value in enumerate(c_plus):
        if best is None or value > c_plus[best]:
            best = j
    return best


# ---------------------------------------------------------------------------
# O(N²) の総当たり
# ---------------------------------------------------------------------------

def _chain_brute(
    anchor_set: AnchorSet,
    algorithm: str,
    mode: ChainMode,
    extra: Callable[[Anchor, Anchor], bool] | None = None,
) -> ChainingResult:
    anchors = anchor_set.anchors
    n = len(anchors)
    relation = relation_for(mode)
    # 先行アンカーは必ず始点 a が小さいので、a 昇順に評価すれば依存先は計算済み
    order = sorted(range(n), key=lambda j: (anchors[j].a, j))

    c = [0] * n
    pred: list[int | None] = [None] * n
    case = [Case.NONE] * n
    for pos, j in enumerate(order):
        cur = anchors[j]
        best, best_from = 0, None
        for jp in order[:pos]:
            prev = anchors[jp]
            if not relation(prev, cur):
                continue
            if extra is not None and not extra(prev, cur):
                continue
            value = c[jp] + step_coverage(prev, cur)
            if value > best or (value == best and best_from is not None and jp < best_from):
                best, best_from = value, jp
        c[j] = best
        pred[j] = best_from
        if best_from is not None:
            prev = anchors[best_from]
            disjoint = prev.b < cur.a and prev.d < cur.c
            case[j] = Case.DISJOINT if disjoint else Case.OVERLAP

    c_plus = [c[j] + anchors[j].min_length for j in range(n)]
    return ChainingResult(
        algorithm=algorithm,
        mode=mode,
        c=tuple(c),
        c_plus=tuple(c_plus),
        pred=tuple(pred),
        case=tuple(case),
        case_scores=(None,) * n,
        best=_argbest(c_plus),
    )


def chain_brute_strict(anchor_set: AnchorSet) -> ChainingResult:
    """厳密な先行関係のチェーン問題を O(N²) で解く（EML 不要）。"""
    return _chain_brute(anchor_set, "brute-strict", ChainMode.STRICT)


def chain_brute_weak(anchor_set: AnchorSet) -> ChainingResult:
    """弱い先行関係のチェーン問題を O(N²) で解く（EML 不要）。"""
    return _chain_brute(anchor_set, "brute-weak", ChainMode.WEAK)


def chain_brute_one_sided(anchor_set: AnchorSet) -> ChainingResult:
    """隣接アンカーが第1次元で重ならない厳密チェーンに限定した O(N²) 解。"""
    return _chain_brute(
        anchor_set, "brute-one-sided", ChainMode.STRICT,
        extra=lambda prev, cur: prev.b < cur.a,
    )


# ---------------------------------------------------------------------------
# スイープ
# ---------------------------------------------------------------------------

class _Variant(str, Enum):
    ONE_SIDED = "one-sided"
    STRICT = "strict"
    WEAK = "weak"


def _require_eml(anchor_set: AnchorSet, algorithm: str) -> None:
    if not anchor_set.eml:
        raise EmlRequiredError(
            f"{algorithm} は Equal Match Length 性（全アンカーで b-a == d-c）を満たす入力が必要です"
        )


def _build_events(anchors: tuple[Anchor, ...]) -> list[Event]:
    events = [Event(x.a, EventKind.START, j) for j, x in enumerate(anchors)]
    events += [Event(x.b, EventKind.END, j) for j, x in enumerate(anchors)]
    events.sort()
    return events


class _Sweep:
    """
    1回のスイープの状態（探索木と計算済みの配列）。

    𝒯ᵃ, 𝒯ᵇ: 第1次元で終了済みのアンカーを キー (d, j) で保持する。
             𝒯ᵃ の値は C⁺[j]、𝒯ᵇ の値は C[j] - c。
    𝒯ᶜ, 𝒯ᵈ: 第1次元で現在開いているアンカーを 主キー (c - a, j) で保持する。
             strict では副キーに b（𝒯ᶜ）/ d（𝒯ᵈ）を持つ2次元木。
             𝒯ᶜ の値は C[j] - a、𝒯ᵈ の値は C[j] - c。
    """

    def __init__(self, anchor_set: AnchorSet, variant: _Variant) -> None:
        self.anchors = anchor_set.anchors
        self.variant = variant
        self.mode = ChainMode.WEAK if variant is _Variant.WEAK else ChainMode.STRICT
        self.relation = relation_for(self.mode)
        n = len(self.anchors)

        d_keys = sorted(Key1D(x.d, j) for j, x in enumerate(self.anchors))
        self.tree_a = RMaxTree1D.build([_SENTINEL] + d_keys)
        self.tree_b = RMaxTree1D.build(d_keys)
        self.tree_a.upgrade(_SENTINEL, 0)

        self.tree_c = self.tree_d = None
        if variant is _Variant.STRICT:
            self.tree_c = RMaxTree2D.build(sorted(self._key_c(j) for j in range(n)))
            self.tree_d = RMaxTree2D.build(sorted(self._key_d(j) for j in range(n)))
        elif variant is _Variant.WEAK:
            diag_keys = sorted(self._key_c(j) for j in range(n))
            self.tree_c = RMaxTree1D.build(diag_keys)
            self.tree_d = RMaxTree1D.build(diag_keys)

        self.c = [0] * n
        self.c_plus = [0] * n
        self.pred: list[int | None] = [None] * n
        self.case = [Case.NONE] * n
        self.case_scores: list[CaseScores | None] = [None] * n

    def _key_c(self, j: int):
        x = self.anchors[j]
        if self.variant is _Variant.STRICT:
            return Key2D(x.diagonal, x.b, j)
        return Key1D(x.diagonal, j)

    def _key_d(self, j: int):
        x = self.anchors[j]
        if self.variant is _Variant.STRICT:
            return Key2D(x.diagonal, x.d, j)
        return Key1D(x.diagonal, j)

    def run(self) -> None:
        events = _build_events(self.anchors)
        for (_, kind), group in groupby(events, key=lambda e: (e.coord, e.kind)):
            batch = [e.anchor for e in group]
            if kind is EventKind.START:
                # 同じ座標で始まるアンカー同士は先行し得ないので、全員を評価してから有効化する
                for j in batch:
                    self._score(j)
                if self.tree_c is not None:
                    for j in batch:
                        self._activate(j)
            else:
                for j in batch:
                    self._finish(j)

    def _lookups(self, cur: Anchor) -> list[_Lookup]:
        """A[j] の始点で問い合わせる木と範囲。score = offset + 木の値。"""
        hi_b = float("inf") if self.variant is _Variant.WEAK else cur.d - 1
        lookups = [
            _Lookup(Case.A, self.tree_a, (0, cur.c - 1), 0),
            _Lookup(Case.B, self.tree_b, (cur.c, hi_b), cur.c),
        ]
        if self.variant is _Variant.STRICT:
            lo, hi = self.tree_c.primary_bounds
            lookups.append(_Lookup(Case.C, self.tree_c, (lo, cur.diagonal, 0, cur.b - 1), cur.a))
            lookups.append(_Lookup(Case.D, self.tree_d, (cur.diagonal + 1, hi, 0, cur.d - 1), cur.c))
        elif self.variant is _Variant.WEAK:
            lo, hi = self.tree_c.coord_bounds
            lookups.append(_Lookup(Case.C, self.tree_c, (lo, cur.diagonal), cur.a))
            lookups.append(_Lookup(Case.D, self.tree_d, (cur.diagonal + 1, hi), cur.c))
        return lookups

    def _score(self, j: int) -> None:
        cur = self.anchors[j]
        hits = []
        scores: dict[Case, int | None] = {Case.C: None, Case.D: None}
        for lookup in self._lookups(cur):
            val, key = lookup.tree.rmaxq_arg(*lookup.bounds)
            scores[lookup.case] = None if key is None else int(lookup.offset + val)
            hits.append((lookup, val, key))

        # 𝒯ᵃ の番兵があるので Case.A は常に値を持つ
        best = max(s for s in scores.values() if s is not None)
        self.c[j] = best
        self.c_plus[j] = best + cur.length1
        self.case_scores[j] = CaseScores(scores[Case.A], scores[Case.B], scores[Case.C], scores[Case.D])
        if best == 0:
            self.pred[j], self.case[j] = None, Case.NONE
        else:
            self.pred[j], self.case[j] = self._resolve_pred(j, best, hits)

    def _realizes(self, jp: int, j: int) -> bool:
        prev, cur = self.anchors[jp], self.anchors[j]
        if not self.relation(prev, cur):
            return False
        if self.variant is _Variant.ONE_SIDED and not prev.b < cur.a:
            return False
        return self.c[jp] + step_coverage(prev, cur) == self.c[j]

    def _resolve_pred(self, j: int, best: int, hits: list) -> tuple[int, Case]:
        """
        C[j] = best を実現する最小添字の先行アンカーと、それを返した場合を求める。

        木には A[j] に先行しない入れ子のアンカーも残っており、値は best を超えないが
        同値で argmax に選ばれることがある。その場合はそのキーを一時的に NEG_INF にして
        同じ範囲を問い合わせ直し、終わったら値を戻す。
        実現する先行アンカーはどれも、いずれかの木の範囲に値 best で入っている。
        """
        found: tuple[int, Case] | None = None
        masked = []
        try:
            for lookup, val, key in hits:
                while key is not None and lookup.offset + val == best:
                    if self._realizes(key.tag, j):
                        if found is None or key.tag < found[0]:
                            found = (key.tag, lookup.case)
                        break
                    masked.append((lookup.tree, key, lookup.tree.value(key)))
                    lookup.tree.update(key, NEG_INF)
                    val, key = lookup.tree.rmaxq_arg(*lookup.bounds)
        finally:
            for tree, key, old in reversed(masked):
                tree.update(key, old)
        if found is None:
            raise RuntimeError(f"アンカー {j} のスコア {best} を実現する先行アンカーが見つかりません")
        return found

    def _activate(self, j: int) -> None:
        cur = self.anchors[j]
        self.tree_c.upgrade(self._key_c(j), self.c[j] - cur.a)
        self.tree_d.upgrade(self._key_d(j), self.c[j] - cur.c)

    def _finish(self, j: int) -> None:
        cur = self.anchors[j]
        self.tree_a.upgrade(Key1D(cur.d, j), self.c_plus[j])
        self.tree_b.upgrade(Key1D(cur.d, j), self.c[j] - cur.c)
        if self.tree_c is not None:
            self.tree_c.update(self._key_c(j), NEG_INF)
            self.tree_d.update(self._key_d(j), NEG_INF)

    def result(self) -> ChainingResult:
        return ChainingResult(
            algorithm=self.variant.value,
            mode=self.mode,
            c=tuple(self.c),
            c_plus=tuple(self.c_plus),
            pred=tuple(self.pred),
            case=tuple(self.case),
            case_scores=tuple(self.case_scores),
            best=_argbest(self.c_plus),
        )


def _chain_sweep(anchor_set: AnchorSet, variant: _Variant) -> ChainingResult:
    _require_eml(anchor_set, variant.value)
    sweep = _Sweep(anchor_set, variant)
    sweep.run()
    return sweep.result()


def chain_one_sided(anchor_set: AnchorSet) -> ChainingResult:
    """
    第1次元で隣接アンカーが重ならないチェーンに限定して全アンカーの最適値を求める。

    始点イベントで 𝒯ᵃ.RMaxQ(0, c-1)（重なりなし）と c + 𝒯ᵇ.RMaxQ(c, d-1)（第2次元のみ重なる）を
    問い合わせ、終点イベントで 𝒯ᵃ/𝒯ᵇ にアンカーを登録する。O(N log N)。

    Raises:
        EmlRequiredError: 入力が EML でない場合
    """
    return _chain_sweep(anchor_set, _Variant.ONE_SIDED)


def chain_two_sided_strict(anchor_set: AnchorSet) -> ChainingResult:
    """
    厳密な先行関係で両側の重なりを許すチェーン問題を O(N log² N) で解く。

    片側版に加え、第1次元で開いているアンカーを c-a をキーとする2次元木 𝒯ᶜ（副キー b）と
    𝒯ᵈ（副キー d）に保持し、
      Cᶜ = a + 𝒯ᶜ.RMaxQ(-∞, c-a, 0, b-1)   重なりが第1次元で長い場合
      Cᵈ = c + 𝒯ᵈ.RMaxQ(c-a+1, +∞, 0, d-1) 重なりが第2次元で長い場合
    を加えた4通りの最大を C[j] とする。

    Raises:
        EmlRequiredError: 入力が EML でない場合
    """
    return _chain_sweep(anchor_set, _Variant.STRICT)


def chain_two_sided_weak(anchor_set: AnchorSet) -> ChainingResult:
    """
    弱い先行関係で両側の重なりを許すチェーン問題を O(N log N) で解く。

    chain_two_sided_strict から 𝒯ᶜ/𝒯ᵈ の副キー次元を除いたもの。
    𝒯ᵇ は [c, +∞) で問い合わせる（第2次元区間が A[j] を含む先行アンカーも弱い先行関係では有効）。

    Raises:
        EmlRequiredError: 入力が EML でない場合
    """
    return _chain_sweep(anchor_set, _Variant.WEAK)


# ---------------------------------------------------------------------------
# トレースバックと正規化
# ---------------------------------------------------------------------------

def traceback(result: ChainingResult, anchor_set: AnchorSet, j: int) -> Chain:
    """
    先行アンカーのリンクをたどり、A[j] で終わる最適チェーンを返す。

    Raises:
        IndexError: j が範囲外の場合
        ValueError: result が anchor_set 上で計算されたものでない場合
    """
    if len(result) != len(anchor_set):
        raise ValueError(f"結果の長さ {len(result)} と AnchorSet の長さ {len(anchor_set)} が一致しません")
    if not 0 <= j < len(anchor_set):
        raise IndexError(f"アンカー番号 {j} は範囲外です（N={len(anchor_set)}）")
    indices = []
    cur: int | None = j
    while cur is not None:
        indices.append(cur)
        cur = result.pred[cur]
    indices.reverse()
    return Chain(tuple(indices), result.mode)


def best_chain(result: ChainingResult, anchor_set: AnchorSet) -> Chain:
    """スコア最大のチェーン。空の入力では空のチェーン。"""
    if result.best is None:
        return Chain((), result.mode)
    return traceback(result, anchor_set, result.best)


class NormalizedChain(NamedTuple):
    anchors: tuple[Anchor, ...]
    coverage: int


def normalize_weak_chain(chain: Chain, anchor_set: AnchorSet) -> NormalizedChain:
    """
    弱いチェーンを、被覆スコアを変えずに厳密な先行関係を満たすアンカー列へ変換する。

    右から順に、S[j] が S[j-1] に対して厳密に後続しない（どちらかの次元で入れ子になっている）
    場合、S[j-1] の終点を両次元同じだけ縮めて S[j-1]' ≺ S[j] にする。
    縮める量は max(S[j-1].b - S[j].b, S[j-1].d - S[j].d) + 1。
    EML のもとでは縮めた後も長さ 1 以上が残り、S[j-2] → S[j-1] と S[j-1] → S[j] の寄与は変わらない。

    Raises:
        EmlRequiredError: anchor_set が EML でない場合
        ChainValidationError: chain が弱いチェーンとして不正な場合
    """
    if not anchor_set.eml:
        raise EmlRequiredError("チェーンの正規化には Equal Match Length 性が必要です")
    original = coverage(Chain(chain.indices, ChainMode.WEAK), anchor_set)

    trimmed = [anchor_set[i] for i in chain.indices]
    for pos in range(len(trimmed) - 1, 0, -1):
        prev, cur = trimmed[pos - 1], trimmed[pos]
        if precedes(prev, cur):
            continue
        if not weakly_precedes(prev, cur):
            raise ChainValidationError(f"弱い先行関係を満たさないペアがあります: {prev} → {cur}")
        shrink = max(prev.b - cur.b, prev.d - cur.d) + 1
        trimmed[pos - 1] = Anchor(prev.a, prev.b - shrink, prev.c, prev.d - shrink)

    normalized = coverage_of(trimmed, ChainMode.STRICT)
    if normalized != original:
        raise RuntimeError(f"正規化で被覆スコアが変化しました: {original} → {normalized}")
    return NormalizedChain(tuple(trimmed), normalized)


# CLI の --mode 名とアルゴリズムの対応
SOLVERS: dict[str, Callable[[AnchorSet], ChainingResult]] = {
    "one-sided": chain_one_sided,
    "strict": chain_two_sided_strict,
    "weak": chain_two_sided_weak,
    "brute-strict": chain_brute_strict,
    "brute-weak": chain_brute_weak,
    "brute-one-sided": chain_brute_one_sided,
}


def solve(mode: str, anchor_set: AnchorSet) -> ChainingResult:
    """
    モード名でアルゴリズムを選んで実行する。

    Raises:
        ValueError: 未知のモード名
        EmlRequiredError: スイープ系のモードに EML でない入力を渡した場合
    """
    try:
        solver = SOLVERS[mode]
    except KeyError:
        raise ValueError(f"未知のモードです: {mode}（{', '.join(SOLVERS)} のいずれか）") from None
    return solver(anchor_set)
