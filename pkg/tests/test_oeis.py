import functools
import http.server
import threading

import pytest

from digitsums.errors import BFileParseError, CoverageError, DigitSumsError, TransportError
from digitsums.oeis import (
    BFile,
    crosscheck,
    dump_bfile,
    load_bfile,
    parse_bfile,
    resolve_generator,
)


@pytest.fixture
def server(tmp_path):
    """Serve tmp_path/www over HTTP on an ephemeral port."""
    root = tmp_path / "www"
    root.mkdir()
    handler = functools.partial(http.server.SimpleHTTPRequestHandler, directory=str(root))
    handler.log_message = lambda *args: None
    httpd = http.server.ThreadingHTTPServer(("127.0.0.1", 0), handler)
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    url = f"http://127.0.0.1:{httpd.server_address[1]}/{{id}}/b{{digits}}.txt"
    yield root, url
    httpd.shutdown()
    httpd.server_close()


def test_fixture_a001370():
    bf = load_bfile("A001370")
    assert bf.entries[:6] == ((0, 1), (1, 2), (2, 4), (3, 8), (4, 7), (5, 5))
    assert crosscheck(bf, "s10pow2", range(11)).passed


def test_fixture_a000079():
    bf = load_bfile("A000079")
    assert all(v == 2**i for i, v in bf.entries)
    report = crosscheck(bf, "pow:2", range(51))
    assert report.passed and report.lines()[-1].endswith("PASS")


def test_parse_errors_carry_line_numbers():
    with pytest.raises(BFileParseError) as info:
        parse_bfile("# header\n0 1\nx y z\n", "A000001")
    assert info.value.line_number == 3
    with pytest.raises(BFileParseError):
        parse_bfile("0 1\n0 2\n", "A000001")
    with pytest.raises(BFileParseError):
        parse_bfile("0 -1\n", "A000001")
    with pytest.raises(DigitSumsError):
        parse_bfile("0 1\n", "B123")


def test_perturbed_fixture_fails(tmp_path):
    text = load_bfile("A001370")
    entries = list(text.entries)
    entries[7] = (7, entries[7][1] + 1)
    (tmp_path / "b001370.txt").write_text(dump_bfile(BFile("A001370", tuple(entries))))
    bf = load_bfile("A001370", fixtures_dir=tmp_path)
    report = crosscheck(bf, "digitsum-pow:2:10", range(11))
    assert not report.passed and report.first_mismatch == 7
    assert "FAIL first mismatch at index 7" in report.lines()[-1]


def test_coverage_gap():
    with pytest.raises(CoverageError) as info:
        crosscheck(load_bfile("A001370"), "s10pow2", range(5, 15))
    assert info.value.missing == [11, 12, 13, 14]


def test_generators():
    assert resolve_generator("factorial")(5) == 120
    assert resolve_generator("lcm")(10) == 2520
    assert resolve_generator("digitsum-factorial:10")(10) == 27
    assert resolve_generator("digitsum-lcm:10")(10) == 9
    assert resolve_generator("nonzero-pow:2:10")(10) == 3
    for bad in ("pow", "pow:x", "nope"):
        with pytest.raises(DigitSumsError):
            resolve_generator(bad)


def test_network_writes_cache_byte_identical(server, tmp_path):
    root, url = server
    payload = b"# served\n0 1\n1 2\n2 4\n3 8\n4 7\n"
    (root / "A001370").mkdir()
    (root / "A001370" / "b001370.txt").write_bytes(payload)
    cache = tmp_path / "cache"
    bf = load_bfile("A001370", "network", cache=cache, url_template=url, timeout=5)
    assert bf.entries[-1] == (4, 7)
    assert (cache / "b001370.txt").read_bytes() == payload


def test_network_falls_back_to_cache(server, tmp_path):
    _, url = server
    cache = tmp_path / "cache"
    cache.mkdir()
    (cache / "b001370.txt").write_bytes(b"0 1\n1 2\n")
    # nothing is served, so the request 404s
    bf = load_bfile("A001370", "network", cache=cache, url_template=url, timeout=5)
    assert bf.entries == ((0, 1), (1, 2))


def test_network_cache_miss(server, tmp_path):
    _, url = server
    with pytest.raises(TransportError, match="cache miss"):
        load_bfile("A001370", "network", cache=tmp_path / "empty", url_template=url, timeout=5)


def test_cache_env(server, tmp_path, monkeypatch):
    root, url = server
    (root / "A000079").mkdir()
    (root / "A000079" / "b000079.txt").write_bytes(b"0 1\n1 2\n")
    monkeypatch.setenv("DIGITSUMS_CACHE", str(tmp_path / "envcache"))
    monkeypatch.setenv("DIGITSUMS_OEIS_URL", url)
    load_bfile("A000079", "network", timeout=5)
    assert (tmp_path / "envcache" / "b000079.txt").exists()
