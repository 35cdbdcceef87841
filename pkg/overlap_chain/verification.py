"""
検証エンジン: ランダムに生成したインスタンスでチェイニングの各アルゴリズムを相互に突き合わせる

アンカー集合ごとのチェック:
  strict-oracle     chain_two_sided_strict と chain_brute_strict の C⁺ が一致
  weak-oracle       chain_two_sided_weak と chain_brute_weak の C⁺ が一致
  one-sided-oracle  chain_one_sided と chain_brute_one_sided の C⁺ が一致
  strict-weak-max   厳密・弱いの総当たりで max C⁺ が一致
  normalize         弱い最適チェーンの正規化で被覆スコアが保たれる
  traceback         高速版の全トレースバックの被覆スコアが C⁺[j] と一致

文字列ペアごとのチェック:
  lcs-mem           MEM アンカー（minlen 1..3）で弱い最適スコア == アンカー制限付き LCS
  lcs-unit          1文字アンカーで弱い最適スコア == 古典的 LCS
  kmer-collapse     k-mer アンカー（k = 2, 4, 8）で厳密・弱いの C⁺ が一致

最初に見つかった失敗は、アンカーを1つずつ取り除いても失敗し続ける限り縮小してから返す。
"""
from __future__ import annotations

import operator
import random
from dataclasses import dataclass
from typing import Any, Callable, Iterator, NamedTuple

from .anchor_gen import StringPair, kmer_matches, maximal_exact_matches, unit_matches
from .anchor_model import AnchorSet, coverage
from .chaining_core import (
    best_chain,
    chain_brute_one_sided,
    chain_brute_strict,
    chain_brute_weak,
    chain_one_sided,
    chain_two_sided_strict,
    chain_two_sided_weak,
    normalize_weak_chain,
    traceback,
)
from .lcs_bridge import lcs_classic, verify_chain_lcs_equivalence
from .synthetic import random_eml_instance, random_string_pair

Comparator = Callable[[Any, Any], bool]

# アンカー集合インスタンスの座標上限
VERIFY_MAX_COORD = 10 ** 4
STRING_MAX_LEN = 40
ALPHABETS = ("ab", "acgt")
KMER_SIZES = (2, 4, 8)


class Check(NamedTuple):
    """1つのチェック。anchors だけを入力に取り、成功なら True を返す。"""
    name: str
    run: Callable[[AnchorSet], bool]
    shrinkable: bool = True


class VerificationFailure(NamedTuple):
    check: str
    instance: int
    anchors: AnchorSet
    sequences: StringPair | None


@dataclass
class VerificationReport:
    seed: int
    anchor_instances: int = 0
    string_pairs: int = 0
    checks_run: int = 0
    failure: VerificationFailure | None = None

    @property
    def passed(self) -> bool:
        return self.failure is None


# ---------------------------------------------------------------------------
# チェックの定義
# ---------------------------------------------------------------------------

def _traceback_consistent(anchor_set: AnchorSet, result, same: Comparator) -> bool:
    for j in range(len(anchor_set)):
        chain = traceback(result, anchor_set, j)
        if not same(coverage(chain, anchor_set), result.c_plus[j]):
            return False
    return True


def anchor_checks(same: Comparator) -> list[Check]:
    """アンカー集合に対するチェックの一覧。"""

    def strict_oracle(s: AnchorSet) -> bool:
        return same(chain_two_sided_strict(s).c_plus, chain_brute_strict(s).c_plus)

    def weak_oracle(s: AnchorSet) -> bool:
        return same(chain_two_sided_weak(s).c_plus, chain_brute_weak(s).c_plus)

    def one_sided_oracle(s: AnchorSet) -> bool:
        return same(chain_one_sided(s).c_plus, chain_brute_one_sided(s).c_plus)

    def strict_weak_max(s: AnchorSet) -> bool:
        return same(chain_brute_strict(s).best_score, chain_brute_weak(s).best_score)

    def normalize(s: AnchorSet) -> bool:
        result = chain_two_sided_weak(s)
        normalized = normalize_weak_chain(best_chain(result, s), s)
        return same(normalized.coverage, result.best_score)

    def traceback_check(s: AnchorSet) -> bool:
        return all(
            _traceback_consistent(s, solve(s), same)
            for solve in (chain_one_sided, chain_two_sided_strict, chain_two_sided_weak)
        )

    return [
        Check("strict-oracle", strict_oracle),
        Check("weak-oracle", weak_oracle),
        Check("one-sided-oracle", one_sided_oracle),
        Check("strict-weak-max", strict_weak_max),
        Check("normalize", normalize),
        Check("traceback", traceback_check),
    ]


def string_checks(sp: StringPair, rng: random.Random, same: Comparator) -> Iterator[tuple[Check, AnchorSet]]:
    """文字列ペアに対するチェックと、その入力アンカー集合を順に返す。"""
    minlen = rng.randint(1, 3)
    mems = maximal_exact_matches(sp, minlen)

    def lcs_mem(s: AnchorSet) -> bool:
        cmp = verify_chain_lcs_equivalence(sp, s)
        return same(cmp.chain_score, cmp.lcs_length)

    yield Check(f"lcs-mem(minlen={minlen})", lcs_mem), mems

    def lcs_unit(s: AnchorSet) -> bool:
        return same(chain_two_sided_weak(s).best_score, lcs_classic(sp))

    # 一部のアンカーを除くと古典的 LCS と一致しなくなるので縮小しない
    yield Check("lcs-unit", lcs_unit, shrinkable=False), unit_matches(sp)

    def kmer_collapse(s: AnchorSet) -> bool:
        return same(chain_two_sided_strict(s).c_plus, chain_two_sided_weak(s).c_plus)

    for k in KMER_SIZES:
        if k <= min(len(sp.text), len(sp.pattern)):
            yield Check(f"kmer-collapse(k={k})", kmer_collapse), kmer_matches(sp, k)


# ---------------------------------------------------------------------------
# 縮小と実行
# ---------------------------------------------------------------------------

def shrink_counterexample(anchor_set: AnchorSet, fails: Callable[[AnchorSet], bool]) -> AnchorSet:
    """
    fails(s) が True のまま、アンカーを1つずつ貪欲に取り除いた集合を返す。

    どのアンカーを1つ除いても fails が False になる（1-極小）まで繰り返す。
    """
    current = list(anchor_set.anchors)
    shrunk = True
    while shrunk:
        shrunk = False
        for pos in range(len(current)):
            candidate = AnchorSet.from_anchors(current[:pos] + current[pos + 1:])
            if fails(candidate):
                current = list(candidate.anchors)
                shrunk = True
                break
    return AnchorSet.from_anchors(current)


def _failed(check: Check, anchor_set: AnchorSet) -> bool:
    return not check.run(anchor_set)


def run_verification(
    seed: int,
    instances: int,
    max_n: int,
    comparator: Comparator = operator.eq,
    string_pairs: int | None = None,
) -> VerificationReport:
    """
    ランダムなアンカー集合と文字列ペアで全チェックを実行する。

    最初のインスタンスは必ず空のアンカー集合（N=0）。

    Args:
        seed:         乱数シード
        instances:    アンカー集合インスタンスの数
        max_n:        1インスタンスあたりの最大アンカー数
        comparator:   期待値と実測値の比較関数（テストで差し替える）
        string_pairs: 文字列ペアの数（None なら instances と同じ）

    Returns:
        VerificationReport（失敗時は縮小済みの反例を含む）
    """
    rng = random.Random(seed)
    report = VerificationReport(seed=seed)
    checks = anchor_checks(comparator)

    for index in range(instances):
        anchor_set = AnchorSet.from_anchors(()) if index == 0 else random_eml_instance(rng, max_n, VERIFY_MAX_COORD)
        report.anchor_instances += 1
        for check in checks:
            report.checks_run += 1
            if _failed(check, anchor_set):
                minimal = shrink_counterexample(anchor_set, lambda s, c=check: _failed(c, s))
                report.failure = VerificationFailure(check.name, index, minimal, None)
                return report

    pairs = instances if string_pairs is None else string_pairs
    for index in range(pairs):
        sp = random_string_pair(rng, STRING_MAX_LEN, rng.choice(ALPHABETS))
        report.string_pairs += 1
        for check, anchor_set in string_checks(sp, rng, comparator):
            report.checks_run += 1
            if _failed(check, anchor_set):
                minimal = anchor_set
                if check.shrinkable:
                    minimal = shrink_counterexample(anchor_set, lambda s, c=check: _failed(c, s))
                report.failure = VerificationFailure(check.name, index, minimal, sp)
                return report

    return report
