import pytest

from digitsums.config import DEFAULT_CAPS, Caps, load_caps, parse_config


def test_parse_config():
    text = "# caps\nfactorial_n = 100\nlcm-n=7  # inline comment\n\n"
    assert parse_config(text) == {"factorial_n": 100, "lcm_n": 7}
    with pytest.raises(ValueError, match=":1:"):
        parse_config("bogus=1")
    with pytest.raises(ValueError, match="integer"):
        parse_config("sparse_n=many")


def test_load_caps(tmp_path, monkeypatch):
    monkeypatch.delenv("DIGITSUMS_CONFIG", raising=False)
    assert load_caps() == DEFAULT_CAPS
    cfg = tmp_path / "caps.cfg"
    cfg.write_text("sparse_n=5\n")
    assert load_caps(str(cfg)).sparse_n == 5
    monkeypatch.setenv("DIGITSUMS_CONFIG", str(cfg))
    assert load_caps().sparse_n == 5


def test_replace_ignores_none():
    caps = Caps().replace(sparse_n=None, lcm_n=3)
    assert caps.sparse_n == DEFAULT_CAPS.sparse_n and caps.lcm_n == 3
