import pytest

from overlap_chain import config_manager


@pytest.fixture
def env_file(tmp_path, monkeypatch):
    """.env を tmp_path に向け、OVCHAIN_* 環境変数を未設定扱いにする。"""
    for key in config_manager.KNOWN_KEYS:
        monkeypatch.setenv(key, "")
    path = tmp_path / ".env"
    monkeypatch.setattr(config_manager, "get_env_path", lambda: path)
    return path


@pytest.fixture
def overlap_anchors(tmp_path):
    path = tmp_path / "overlap.tsv"
    path.write_text("1\t5\t2\t6\n3\t8\t5\t10\n", encoding="utf-8")
    return path
