"""
設定マネージャー: CLI の既定値を .env で一元管理する

【設計方針】
  既定値は .env ファイル一箇所に集約する。すべて任意項目で、未設定なら組み込みの既定値を使う。
  コマンドラインのフラグは .env の値より優先する。

【設定項目】
  OVCHAIN_DEFAULT_MODE          : chain の既定モード（strict）
  OVCHAIN_OUTPUT_FORMAT         : 出力形式 tsv / jsonl（tsv）
  OVCHAIN_SEED                  : verify / bench の既定シード（20240101）
  OVCHAIN_VERIFY_INSTANCES      : verify のインスタンス数（200）
  OVCHAIN_VERIFY_MAX_N          : verify の1インスタンスあたり最大アンカー数（40）
  OVCHAIN_BENCH_MIN_LOG2        : bench の最小サイズ 2^k（10）
  OVCHAIN_BENCH_MAX_LOG2        : bench の最大サイズ 2^k（14）
  OVCHAIN_BENCH_BRUTE_MAX_LOG2  : 総当たりモードを実行する最大サイズ 2^k（13）
  OVCHAIN_BENCH_MAX_LEN         : 合成アンカーの最大長 L（64）
  OVCHAIN_BENCH_SPAN_FACTOR     : 合成アンカーの始点範囲 [1, factor·N] の factor（8）

【config コマンドの動作】
  `python main.py config`                 → 現在の設定を表示
  `python main.py config set KEY VALUE`   → .env の KEY を書き換える
  `python main.py config unset KEY`       → .env の KEY をコメントアウトする（既定値に戻す）
"""
import os
import re
import sys
from pathlib import Path
from typing import Callable, NamedTuple

from dotenv import load_dotenv

load_dotenv()

MODES = ("one-sided", "strict", "weak", "brute-strict", "brute-weak")
FORMATS = ("tsv", "jsonl")


def _parse_choice(choices: tuple[str, ...]) -> Callable[[str], str]:
    def parse(raw: str) -> str:
        if raw not in choices:
            raise ValueError(f"{' / '.join(choices)} のいずれかを指定してください")
        return raw
    return parse


def _parse_int(minimum: int) -> Callable[[str], int]:
    def parse(raw: str) -> int:
        value = int(raw, 10)
        if value < minimum:
            raise ValueError(f"{minimum} 以上の整数を指定してください")
        return value
    return parse


class _Setting(NamedTuple):
    key: str
    name: str
    default: str
    parse: Callable[[str], object]
    description: str


_SETTINGS = [
    _Setting("OVCHAIN_DEFAULT_MODE", "default_mode", "strict", _parse_choice(MODES),
             "chain の既定モード"),
    _Setting("OVCHAIN_OUTPUT_FORMAT", "output_format", "tsv", _parse_choice(FORMATS),
             "出力形式"),
    _Setting("OVCHAIN_SEED", "seed", "20240101", _parse_int(0),
             "verify / bench の既定シード"),
    _Setting("OVCHAIN_VERIFY_INSTANCES", "verify_instances", "200", _parse_int(1),
             "verify のインスタンス数"),
    _Setting("OVCHAIN_VERIFY_MAX_N", "verify_max_n", "40", _parse_int(0),
             "verify の最大アンカー数"),
    _Setting("OVCHAIN_BENCH_MIN_LOG2", "bench_min_log2", "10", _parse_int(0),
             "bench の最小サイズ 2^k"),
    _Setting("OVCHAIN_BENCH_MAX_LOG2", "bench_max_log2", "14", _parse_int(0),
             "bench の最大サイズ 2^k"),
    _Setting("OVCHAIN_BENCH_BRUTE_MAX_LOG2", "bench_brute_max_log2", "13", _parse_int(0),
             "総当たりモードの最大サイズ 2^k"),
    _Setting("OVCHAIN_BENCH_MAX_LEN", "bench_max_len", "64", _parse_int(1),
             "合成アンカーの最大長 L"),
    _Setting("OVCHAIN_BENCH_SPAN_FACTOR", "bench_span_factor", "8", _parse_int(1),
             "合成アンカーの始点範囲の係数"),
]
_BY_KEY = {s.key: s for s in _SETTINGS}

KNOWN_KEYS = tuple(_BY_KEY)


def get_env_path() -> Path:
    """プロジェクトの .env ファイルパスを返す。"""
    # main.py と同じ階層の .env を探す
    candidates = [
        Path(os.getcwd()) / ".env",
        Path(__file__).parent.parent / ".env",
    ]
    for p in candidates:
        if p.exists():
            return p
    # 存在しない場合は カレントディレクトリ/.env を返す（新規作成先）
    return candidates[0]


def _raw_value(setting: _Setting) -> str:
    return os.getenv(setting.key, "").strip() or setting.default


def check_key(key: str) -> None:
    """未知のキーなら KeyError。"""
    if key not in _BY_KEY:
        raise KeyError(f"未知の設定キーです: {key}（{', '.join(KNOWN_KEYS)} のいずれか）")


def check_value(key: str, value: str) -> None:
    """
    KEY に VALUE を設定してよいか検証する。

    Raises:
        KeyError:   未知のキー
        ValueError: 値が不正
    """
    check_key(key)
    try:
        _BY_KEY[key].parse(value.strip())
    except ValueError as e:
        raise ValueError(f"{key}={value!r} は不正な値です: {e}") from None


def validate_env() -> None:
    """
    .env の設定値を検証する。
    不正な値の項目があればエラーメッセージを出力して sys.exit(1) する。
    """
    invalid = []
    for setting in _SETTINGS:
        raw = _raw_value(setting)
        try:
            setting.parse(raw)
        except ValueError as e:
            invalid.append((setting.key, raw, str(e)))
    if not invalid:
        return

    env_path = get_env_path()
    print("[ERROR] .env に不正な設定値があります:\n", file=sys.stderr)
    for key, raw, reason in invalid:
        print(f"  {key}={raw}\n    → {reason}\n", file=sys.stderr)
    print(
        f"  .env ファイルの場所: {env_path}\n"
        f"  .env.example を参考に修正するか、python main.py config unset KEY で既定値に戻してください。",
        file=sys.stderr,
    )
    sys.exit(1)


def load_config() -> dict:
    """
    .env から全設定を読み込んで返す。
    値の検証は呼び出し元（main.py）で validate_env() を使うこと。

    Returns:
        default_mode, output_format, seed, verify_instances, verify_max_n,
        bench_min_log2, bench_max_log2, bench_brute_max_log2,
        bench_max_len, bench_span_factor
    """
    return {s.name: s.parse(_raw_value(s)) for s in _SETTINGS}


def describe_config() -> list[tuple[str, str, str, bool]]:
    """表示用に (キー, 現在値, 説明, .env で設定済みか) の一覧を返す。"""
    return [
        (s.key, _raw_value(s), s.description, bool(os.getenv(s.key, "").strip()))
        for s in _SETTINGS
    ]


def update_env_var(key: str, value: str | None) -> Path:
    """
    .env ファイルの指定キーの値を書き換える。
    キーが存在しない場合はファイル末尾に追記し、.env 自体がなければ作成する。
    value が None の場合はキーをコメントアウトする。

    Args:
        key:   環境変数名（例: OVCHAIN_DEFAULT_MODE）
        value: 設定する値。None の場合はコメントアウト（未設定扱いにする）

    Returns:
        書き込んだ .env のパス
    """
    env_path = get_env_path()
    content = env_path.read_text(encoding="utf-8") if env_path.exists() else ""
    lines = content.splitlines(keepends=True)

    # 既存行を検索（コメント行も含めて key= の行を探す）
    pattern_active = re.compile(rf"^{re.escape(key)}\s*=.*$")
    pattern_comment = re.compile(rf"^#\s*{re.escape(key)}\s*=.*$")

    new_line = f"# {key}=\n" if value is None else f"{key}={value}\n"

    replaced = False
    for i, line in enumerate(lines):
        if pattern_active.match(line.rstrip()) or pattern_comment.match(line.rstrip()):
            lines[i] = new_line
            replaced = True
            break

    if not replaced:
        # 末尾に追記
        if lines and not lines[-1].endswith("\n"):
            lines.append("\n")
        lines.append(new_line)

    env_path.write_text("".join(lines), encoding="utf-8")

    # 同じプロセス内の以降の load_config() に反映する
    if value is None:
        os.environ.pop(key, None)
    else:
        os.environ[key] = value
    return env_path
