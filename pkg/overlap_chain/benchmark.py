"""
ベンチマーク: 合成 EML アンカーで N を倍々に増やし、モードごとの実行時間と t(2N)/t(N) を測る
"""
from __future__ import annotations

import random
import time
from typing import Callable, Iterable, NamedTuple

from .chaining_core import SOLVERS
from .synthetic import synthetic_eml_anchors

DEFAULT_MODES = ("one-sided", "strict", "weak", "brute-strict", "brute-weak")


class BenchRow(NamedTuple):
    mode: str
    n: int
    seconds: float
    ratio: float | None


def bench_schedule(min_log2: int, max_log2: int) -> list[int]:
    """2^min_log2 から 2^max_log2 までの倍々の N。"""
    if min_log2 < 0 or max_log2 < min_log2:
        raise ValueError(f"不正なサイズ範囲です: 2^{min_log2}..2^{max_log2}")
    return [1 << k for k in range(min_log2, max_log2 + 1)]


def run_benchmark(
    seed: int,
    min_log2: int,
    max_log2: int,
    brute_max_log2: int,
    max_len: int,
    span_factor: int,
    modes: Iterable[str] = DEFAULT_MODES,
    repeat: int = 1,
    progress: Callable[[BenchRow], None] | None = None,
) -> list[BenchRow]:
    """
    各モードを N = 2^min_log2 .. 2^max_log2 で計測する。

    総当たりモード（brute-*）は N <= 2^brute_max_log2 までしか実行しない。
    同じ N のワークロードは全モードで共通（seed と N から決まる）。
    repeat 回実行した最小時間を採用する。

    Args:
        progress: 1行計測するたびに呼ばれるコールバック

    Returns:
        BenchRow のリスト（mode ごとに N 昇順）。各モードの最初の行の ratio は None。
    """
    modes = list(modes)
    for mode in modes:
        if mode not in SOLVERS:
            raise ValueError(f"未知のモードです: {mode}")

    workloads = {
        n: synthetic_eml_anchors(random.Random(seed * 1_000_003 + n), n, max_len, span_factor * n)
        for n in bench_schedule(min_log2, max_log2)
    }

    rows: list[BenchRow] = []
    for mode in modes:
        solver = SOLVERS[mode]
        limit = 1 << brute_max_log2 if mode.startswith("brute") else None
        previous: float | None = None
        for n, anchor_set in workloads.items():
            if limit is not None and n > limit:
                break
            best = float("inf")
            for _ in range(repeat):
                start = time.perf_counter()
                solver(anchor_set)
                best = min(best, time.perf_counter() - start)
            ratio = None if previous is None or previous <= 0 else best / previous
            row = BenchRow(mode, n, best, ratio)
            rows.append(row)
            if progress is not None:
                progress(row)
            previous = best
    return rows


def format_bench_row(row: BenchRow) -> str:
    ratio = "-" if row.ratio is None else f"{row.ratio:.3f}"
    return f"{row.mode}\t{row.n}\t{row.seconds:.6f}\t{ratio}\n"


def format_bench_tsv(rows: Iterable[BenchRow]) -> str:
    """`mode N seconds ratio` のタブ区切り（ヘッダ行付き）。"""
    return "mode\tN\tseconds\tratio\n" + "".join(format_bench_row(r) for r in rows)
