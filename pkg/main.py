#!/usr/bin/env python3
"""
overlap_chain - 重なりを許すアンカーチェイニング（対称順序被覆スコア）の CLI ツール

サブコマンド:
  chain     アンカー集合の全アンカーについて C / C⁺ を計算し、最適スコアを出力する
  gen       配列ファイルまたは合成ワークロードからアンカー TSV を生成する
  lcs       チェーンスコア・アンカー制限付き LCS・古典的 LCS を比較する
  verify    ランダムなインスタンスで全アルゴリズムを相互検証する
  bench     合成ワークロードで実行時間のスケーリングを測る
  config    .env の既定値の表示・変更

終了コード: 0 成功 / 1 使い方・入力エラー / 2 検証失敗
"""
import argparse
import io
import json
import random
import sys
import time

# Windows の CP932 端末で日本語メッセージの出力が失敗するのを防ぐ
if sys.stdout.encoding and sys.stdout.encoding.lower() not in ("utf-8", "utf8"):
    sys.stdout = io.TextIOWrapper(sys.stdout.buffer, encoding="utf-8", errors="replace")
if sys.stderr.encoding and sys.stderr.encoding.lower() not in ("utf-8", "utf8"):
    sys.stderr = io.TextIOWrapper(sys.stderr.buffer, encoding="utf-8", errors="replace")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VERIFY_FAILED = 2


def _info(message: str) -> None:
    print(f"[INFO] {message}", file=sys.stderr)


def _error(message: str) -> None:
    print(f"[ERROR] {message}", file=sys.stderr)


# ---------------------------------------------------------------------------
# 入力の解決
# ---------------------------------------------------------------------------

def _anchors_from_sequences(args: argparse.Namespace):
    from overlap_chain.anchor_gen import kmer_matches, maximal_exact_matches, read_string_pair, unit_matches

    sp = read_string_pair(args.seqs)
    if args.k is not None:
        anchor_set = kmer_matches(sp, args.k)
        source = f"k-mer 一致 (k={args.k})"
    elif args.unit:
        anchor_set = unit_matches(sp)
        source = "1文字一致"
    else:
        minlen = 1 if args.minlen is None else args.minlen
        anchor_set = maximal_exact_matches(sp, minlen)
        source = f"MEM (minlen={minlen})"
    _info(f"{args.seqs}: |T|={len(sp.text)}, |P|={len(sp.pattern)} から {source} を {len(anchor_set)} 個生成しました")
    return sp, anchor_set


def _load_anchor_set(args: argparse.Namespace):
    from overlap_chain.anchor_model import read_anchor_tsv

    if args.anchors is not None:
        if args.k is not None or args.minlen is not None or args.unit:
            raise ValueError("--k / --minlen / --unit は --seqs と組み合わせて使ってください")
        anchor_set = read_anchor_tsv(args.anchors)
        _info(f"{args.anchors}: アンカー {len(anchor_set)} 個を読み込みました")
        return anchor_set
    return _anchors_from_sequences(args)[1]


# ---------------------------------------------------------------------------
# chain コマンド
# ---------------------------------------------------------------------------

def _write_chain_tsv(out, anchor_set, result, chain) -> None:
    for j, x in enumerate(anchor_set):
        out.write(f"{j + 1}\t{x.a}\t{x.b}\t{x.c}\t{x.d}\t{result.c[j]}\t{result.c_plus[j]}\n")
    index = 0 if result.best is None else result.best + 1
    out.write(f"best\t{result.best_score}\t{index}\n")
    if chain is not None:
        out.write("\t".join(["chain"] + [str(i + 1) for i in chain.indices]) + "\n")


def _write_chain_jsonl(out, anchor_set, result, chain) -> None:
    for j, x in enumerate(anchor_set):
        row = {"j": j + 1, "a": x.a, "b": x.b, "c": x.c, "d": x.d, "C": result.c[j], "Cplus": result.c_plus[j]}
        out.write(json.dumps(row) + "\n")
    index = 0 if result.best is None else result.best + 1
    out.write(json.dumps({"best": result.best_score, "index": index}) + "\n")
    if chain is not None:
        out.write(json.dumps({"chain": [i + 1 for i in chain.indices]}) + "\n")


def cmd_chain(args: argparse.Namespace) -> int:
    from overlap_chain.chaining_core import best_chain, solve
    from overlap_chain.config_manager import load_config, validate_env

    validate_env()
    config = load_config()
    mode = args.mode or config["default_mode"]
    fmt = args.format or config["output_format"]

    anchor_set = _load_anchor_set(args)
    result = solve(mode, anchor_set)
    chain = best_chain(result, anchor_set) if args.traceback else None

    writer = _write_chain_jsonl if fmt == "jsonl" else _write_chain_tsv
    writer(sys.stdout, anchor_set, result, chain)
    _info(f"mode={mode}: 最適スコア {result.best_score}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# gen / lcs コマンド
# ---------------------------------------------------------------------------

def cmd_gen(args: argparse.Namespace) -> int:
    from overlap_chain.anchor_model import format_anchor_tsv, write_anchor_tsv
    from overlap_chain.config_manager import load_config, validate_env
    from overlap_chain.synthetic import synthetic_eml_anchors

    if args.synthetic is not None:
        if args.seqs is not None:
            raise ValueError("--seqs と --synthetic は同時に指定できません")
        validate_env()
        config = load_config()
        seed = config["seed"] if args.seed is None else args.seed
        max_len = config["bench_max_len"] if args.max_len is None else args.max_len
        span = args.span or config["bench_span_factor"] * max(1, args.synthetic)
        anchor_set = synthetic_eml_anchors(random.Random(seed), args.synthetic, max_len, span)
        _info(f"合成 EML アンカーを {len(anchor_set)} 個生成しました (seed={seed}, L={max_len}, span={span})")
    elif args.seqs is not None:
        anchor_set = _anchors_from_sequences(args)[1]
    else:
        raise ValueError("--seqs または --synthetic のどちらかを指定してください")

    if args.output:
        write_anchor_tsv(args.output, anchor_set)
        print(f"[OK] {args.output} に書き出しました。", file=sys.stderr)
    else:
        sys.stdout.write(format_anchor_tsv(anchor_set))
    return EXIT_OK


def cmd_lcs(args: argparse.Namespace) -> int:
    from overlap_chain.lcs_bridge import lcs_classic, restricted_lcs_witness, verify_chain_lcs_equivalence

    sp, anchor_set = _anchors_from_sequences(args)
    comparison = verify_chain_lcs_equivalence(sp, anchor_set)
    out = sys.stdout
    out.write(f"chain_score\t{comparison.chain_score}\n")
    out.write(f"restricted_lcs\t{comparison.lcs_length}\n")
    out.write(f"classic_lcs\t{lcs_classic(sp)}\n")
    out.write(f"equal\t{'true' if comparison.equal else 'false'}\n")
    if args.witness:
        witness = restricted_lcs_witness(sp, anchor_set)
        out.write("\t".join(["witness"] + [f"{i}:{j}" for i, j in witness.pairs]) + "\n")
    if not comparison.equal:
        print("[FAIL] チェーンスコアとアンカー制限付き LCS が一致しません", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify / bench コマンド
# ---------------------------------------------------------------------------

def cmd_verify(args: argparse.Namespace) -> int:
    from overlap_chain.anchor_model import format_anchor_tsv
    from overlap_chain.config_manager import load_config, validate_env
    from overlap_chain.verification import run_verification

    validate_env()
    config = load_config()
    seed = config["seed"] if args.seed is None else args.seed
    instances = config["verify_instances"] if args.instances is None else args.instances
    max_n = config["verify_max_n"] if args.max_n is None else args.max_n

    _info(f"検証を開始します (seed={seed}, インスタンス {instances} 個, N <= {max_n})")
    report = run_verification(seed, instances, max_n, comparator=args.comparator, string_pairs=args.pairs)

    if report.passed:
        print(
            f"[OK] アンカー集合 {report.anchor_instances} 個・文字列ペア {report.string_pairs} 個で"
            f" {report.checks_run} 件のチェックをすべて通過しました。",
            file=sys.stderr,
        )
        return EXIT_OK

    failure = report.failure
    print(
        f"[FAIL] チェック {failure.check} がインスタンス #{failure.instance} で失敗しました"
        f"（縮小後のアンカー数 {len(failure.anchors)}）",
        file=sys.stderr,
    )
    if failure.sequences is not None:
        sys.stdout.write(f"# T={failure.sequences.text}\n# P={failure.sequences.pattern}\n")
    sys.stdout.write(format_anchor_tsv(failure.anchors))
    return EXIT_VERIFY_FAILED


def cmd_bench(args: argparse.Namespace) -> int:
    from overlap_chain.benchmark import DEFAULT_MODES, format_bench_row, run_benchmark
    from overlap_chain.config_manager import load_config, validate_env

    validate_env()
    config = load_config()

    def pick(name: str):
        value = getattr(args, name)
        return config[name] if value is None else value

    modes = DEFAULT_MODES if args.modes is None else tuple(m.strip() for m in args.modes.split(",") if m.strip())
    seed = pick("seed")
    _info(f"ベンチマークを開始します (seed={seed}, N=2^{pick('bench_min_log2')}..2^{pick('bench_max_log2')})")

    sys.stdout.write("mode\tN\tseconds\tratio\n")

    def progress(row) -> None:
        sys.stdout.write(format_bench_row(row))
        sys.stdout.flush()

    started = time.perf_counter()
    rows = run_benchmark(
        seed=seed,
        min_log2=pick("bench_min_log2"),
        max_log2=pick("bench_max_log2"),
        brute_max_log2=pick("bench_brute_max_log2"),
        max_len=pick("bench_max_len"),
        span_factor=pick("bench_span_factor"),
        modes=modes,
        repeat=args.repeat,
        progress=progress,
    )
    elapsed = time.perf_counter() - started
    print(f"[OK] {len(rows)} 行を計測しました（合計 {elapsed:.1f} 秒）", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# config コマンド
# ---------------------------------------------------------------------------

def cmd_config(args: argparse.Namespace) -> int:
    from overlap_chain.config_manager import check_key, check_value, describe_config, get_env_path, update_env_var

    if args.config_action == "set":
        if args.key is None or args.value is None:
            raise ValueError("使い方: python main.py config set KEY VALUE")
        check_value(args.key, args.value)
        env_path = update_env_var(args.key, args.value.strip())
        print(f"[OK] {args.key} を {args.value.strip()} に変更しました。({env_path} を更新)", file=sys.stderr)
        return EXIT_OK

    if args.config_action == "unset":
        if args.key is None:
            raise ValueError("使い方: python main.py config unset KEY")
        check_key(args.key)
        env_path = update_env_var(args.key, None)
        print(f"[OK] {args.key} を既定値に戻しました。({env_path} を更新)", file=sys.stderr)
        return EXIT_OK

    # --- show ---
    print("現在の設定:（.env で未設定の項目は既定値）")
    for key, value, description, from_env in describe_config():
        origin = ".env" if from_env else "既定値"
        print(f"  {key:<30} {value:<10} {origin:<6} {description}")
    print(f"  設定ファイル: {get_env_path()}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# パーサー定義
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    """使い方の誤りを終了コード 1 で報告する ArgumentParser。"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        _error(message)
        sys.exit(EXIT_ERROR)


def _add_generator_args(p: argparse.ArgumentParser) -> None:
    gen = p.add_mutually_exclusive_group()
    gen.add_argument("--k", type=int, default=None, metavar="INT", help="k-mer 一致のアンカーを使う")
    gen.add_argument("--minlen", type=int, default=None, metavar="INT",
                     help="長さ INT 以上の MEM をアンカーにする（--seqs 使用時の既定: 1）")
    gen.add_argument("--unit", action="store_true", default=False, help="1文字一致をアンカーにする")


def build_parser() -> argparse.ArgumentParser:
    from overlap_chain.config_manager import FORMATS, KNOWN_KEYS, MODES

    parser = _Parser(
        prog="overlap_chain",
        description="重なりを許すアンカーチェイニング（対称順序被覆スコア）",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
使用例:
  # アンカー TSV をチェイニング
  python main.py chain --anchors anchors.tsv --mode strict --traceback
  python main.py chain --anchors anchors.tsv --mode weak --format jsonl

  # 配列ファイルから MEM / k-mer アンカーを作ってチェイニング
  python main.py chain --seqs pair.fa --minlen 3
  python main.py gen --seqs pair.txt --k 4 -o anchors.tsv

  # LCS との比較・相互検証・ベンチマーク
  python main.py lcs --seqs pair.txt --unit --witness
  python main.py verify --seed 7 --instances 1000 --max-n 200
  python main.py bench --bench-max-log2 17

  # 設定
  python main.py config
  python main.py config set OVCHAIN_DEFAULT_MODE weak
""",
    )

    subparsers = parser.add_subparsers(dest="command", required=True)

    # --- chain ---
    p_chain = subparsers.add_parser(
        "chain",
        help="全アンカーの C / C⁺ と最適スコアを計算する",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
モード:
  one-sided     第1次元で重ならないチェーン（O(N log N)）
  strict        厳密な先行関係・両側の重なりを許す（O(N log² N)）
  weak          弱い先行関係・両側の重なりを許す（O(N log N)）
  brute-strict  strict の O(N²) 総当たり（EML 不要）
  brute-weak    weak の O(N²) 総当たり（EML 不要）

出力（TSV）:
  j a b c d C Cplus   アンカーごと（j は 1 始まり）
  best <score> <j>    最適スコアとその終端アンカー（空なら 0）
  chain <j1> <j2> ... --traceback 指定時の最適チェーン
""",
    )
    source = p_chain.add_mutually_exclusive_group(required=True)
    source.add_argument("--anchors", default=None, metavar="PATH", help="アンカー TSV ファイル")
    source.add_argument("--seqs", default=None, metavar="PATH", help="配列ファイル（2行形式または2レコードの FASTA）")
    _add_generator_args(p_chain)
    p_chain.add_argument("--mode", choices=MODES, default=None, help="アルゴリズム（既定: OVCHAIN_DEFAULT_MODE）")
    p_chain.add_argument("--traceback", action="store_true", default=False, help="最適チェーンのアンカー番号も出力する")
    p_chain.add_argument("--format", choices=FORMATS, default=None, help="出力形式（既定: OVCHAIN_OUTPUT_FORMAT）")
    p_chain.set_defaults(func=cmd_chain)

    # --- gen ---
    p_gen = subparsers.add_parser("gen", help="アンカー TSV を生成する")
    p_gen.add_argument("--seqs", default=None, metavar="PATH", help="配列ファイル")
    _add_generator_args(p_gen)
    p_gen.add_argument("--synthetic", type=int, default=None, metavar="N", help="合成 EML アンカーを N 個生成する")
    p_gen.add_argument("--seed", type=int, default=None, help="合成ワークロードのシード（既定: OVCHAIN_SEED）")
    p_gen.add_argument("--max-len", dest="max_len", type=int, default=None, metavar="L",
                       help="合成アンカーの最大長（既定: OVCHAIN_BENCH_MAX_LEN）")
    p_gen.add_argument("--span", type=int, default=None, help="合成アンカーの始点の上限（既定: 係数×N）")
    p_gen.add_argument("--output", "-o", default=None, metavar="PATH", help="出力先（省略時は標準出力）")
    p_gen.set_defaults(func=cmd_gen)

    # --- lcs ---
    p_lcs = subparsers.add_parser("lcs", help="チェーンスコアとアンカー制限付き LCS・古典的 LCS を比較する")
    p_lcs.add_argument("--seqs", required=True, metavar="PATH", help="配列ファイル")
    _add_generator_args(p_lcs)
    p_lcs.add_argument("--witness", action="store_true", default=False, help="制限付き LCS を実現するペア列も出力する")
    p_lcs.set_defaults(func=cmd_lcs)

    # --- verify ---
    p_verify = subparsers.add_parser("verify", help="ランダムなインスタンスで全アルゴリズムを相互検証する")
    p_verify.add_argument("--seed", type=int, default=None, help="乱数シード（既定: OVCHAIN_SEED）")
    p_verify.add_argument("--instances", type=int, default=None, help="アンカー集合の数（既定: OVCHAIN_VERIFY_INSTANCES）")
    p_verify.add_argument("--max-n", dest="max_n", type=int, default=None, help="最大アンカー数（既定: OVCHAIN_VERIFY_MAX_N）")
    p_verify.add_argument("--pairs", type=int, default=None, help="文字列ペアの数（既定: --instances と同じ）")
    p_verify.set_defaults(func=cmd_verify, comparator=_default_comparator)

    # --- bench ---
    p_bench = subparsers.add_parser("bench", help="合成ワークロードで実行時間のスケーリングを測る")
    p_bench.add_argument("--seed", type=int, default=None, help="乱数シード（既定: OVCHAIN_SEED）")
    p_bench.add_argument("--bench-min-log2", dest="bench_min_log2", type=int, default=None, metavar="INT")
    p_bench.add_argument("--bench-max-log2", dest="bench_max_log2", type=int, default=None, metavar="INT")
    p_bench.add_argument("--brute-max-log2", dest="bench_brute_max_log2", type=int, default=None, metavar="INT")
    p_bench.add_argument("--max-len", dest="bench_max_len", type=int, default=None, metavar="L")
    p_bench.add_argument("--span-factor", dest="bench_span_factor", type=int, default=None, metavar="INT")
    p_bench.add_argument("--modes", default=None, help="カンマ区切りのモード（既定: one-sided,strict,weak,brute-strict,brute-weak）")
    p_bench.add_argument("--repeat", type=int, default=1, help="各計測の繰り返し回数（最小時間を採用）")
    p_bench.set_defaults(func=cmd_bench)

    # --- config ---
    p_config = subparsers.add_parser(
        "config",
        help=".env の既定値の表示・変更",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="設定キー:\n" + "\n".join(f"  {k}" for k in KNOWN_KEYS),
    )
    p_config.add_argument("config_action", nargs="?", choices=["show", "set", "unset"], default="show",
                          help="実行するアクション（省略時: show）")
    p_config.add_argument("key", nargs="?", default=None, help="設定キー")
    p_config.add_argument("value", nargs="?", default=None, help="set アクション時の設定値")
    p_config.set_defaults(func=cmd_config)

    return parser


def _default_comparator(x, y) -> bool:
    return x == y


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except KeyError as e:
        _error(e.args[0] if e.args else str(e))
    except (ValueError, OSError) as e:
        _error(str(e))
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
