"""OEIS b-files: parse, cache, and compare against computed sequences.

Fixtures shipped with the package are the default source, so nothing here
touches the network unless asked to.
"""

from __future__ import annotations

import logging
import os
import re
import tempfile
import urllib.error
import urllib.request
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, Optional

from .bigdigits import digit_sum, nonzero_count
from .bounds import factorial, lcm_upto
from .errors import BFileParseError, CoverageError, DigitSumsError, TransportError

log = logging.getLogger(__name__)

CACHE_ENV = "DIGITSUMS_CACHE"
URL_ENV = "DIGITSUMS_OEIS_URL"
DEFAULT_URL_TEMPLATE = "https://oeis.org/{id}/b{digits}.txt"

_ID_RE = re.compile(r"^A\d{6}$")


def check_id(sequence_id: str) -> str:
    if not isinstance(sequence_id, str) or not _ID_RE.match(sequence_id):
        raise DigitSumsError(f"not an OEIS id (A followed by six digits): {sequence_id!r}")
    return sequence_id


def bfile_name(sequence_id: str) -> str:
    return f"b{check_id(sequence_id)[1:]}.txt"


@dataclass(frozen=True)
class BFile:
    sequence_id: str
    entries: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    def __post_init__(self):
        check_id(self.sequence_id)
        prev = None
        for index, value in self.entries:
            if prev is not None and index <= prev:
                raise DigitSumsError(f"{self.sequence_id}: index {index} does not increase")
            if value < 0:
                raise DigitSumsError(f"{self.sequence_id}: negative value at index {index}")
            prev = index

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)


def parse_bfile(text: str, sequence_id: str) -> BFile:
    """Parse ``index value`` lines; '#' lines and blank lines are skipped."""
    entries = []
    prev = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise BFileParseError(f"expected 'index value', got {raw!r}", lineno)
        try:
            index, value = int(parts[0]), int(parts[1])
        except ValueError:
            raise BFileParseError(f"non-integer field in {raw!r}", lineno) from None
        if prev is not None and index <= prev:
            raise BFileParseError(f"index {index} is not greater than {prev}", lineno)
        if value < 0:
            raise BFileParseError(f"negative value {value}", lineno)
        entries.append((index, value))
        prev = index
    return BFile(sequence_id, tuple(entries))


def dump_bfile(bfile: BFile) -> str:
    return "".join(f"{i} {v}\n" for i, v in bfile.entries)


def cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    root = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(root) / "digitsums" / "oeis"


def _write_atomic(path: Path, data: bytes) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".part")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _fixture_text(sequence_id: str, fixtures_dir: Optional[Path]) -> str:
    name = bfile_name(sequence_id)
    if fixtures_dir is not None:
        path = Path(fixtures_dir) / name
        if not path.exists():
            raise DigitSumsError(f"no fixture for {sequence_id} in {fixtures_dir}")
        return path.read_text(encoding="utf-8")
    res = resources.files("digitsums") / "fixtures" / name
    if not res.is_file():
        raise DigitSumsError(f"no bundled fixture for {sequence_id}; try the network source")
    return res.read_text(encoding="utf-8")


def fetch_bfile_bytes(sequence_id: str, url_template: Optional[str] = None, timeout: float = 30.0) -> bytes:
    template = url_template or os.environ.get(URL_ENV) or DEFAULT_URL_TEMPLATE
    url = template.format(id=sequence_id, digits=sequence_id[1:])
    with urllib.request.urlopen(url, timeout=timeout) as resp:
        return resp.read()


def load_bfile(
    sequence_id: str,
    source: str = "fixtures",
    *,
    fixtures_dir: Optional[Path] = None,
    cache: Optional[Path] = None,
    url_template: Optional[str] = None,
    timeout: float = 30.0,
) -> BFile:
    """Load a b-file from the bundled fixtures or from the network.

    The network source writes the raw response through to the cache and
    falls back to a cached copy when the request fails.
    """
    check_id(sequence_id)
    if source == "fixtures":
        return parse_bfile(_fixture_text(sequence_id, fixtures_dir), sequence_id)
    if source != "network":
        raise ValueError(f"source must be 'fixtures' or 'network', got {source!r}")
    path = Path(cache or cache_dir()) / bfile_name(sequence_id)
    try:
        data = fetch_bfile_bytes(sequence_id, url_template, timeout)
    except (urllib.error.URLError, OSError, ValueError) as exc:
        if path.exists():
            log.warning("fetching %s failed (%s); using cached %s", sequence_id, exc, path)
            data = path.read_bytes()
        else:
            raise TransportError(f"fetching {sequence_id} failed ({exc}); cache miss at {path}") from exc
    else:
        _write_atomic(path, data)
    return parse_bfile(data.decode("utf-8"), sequence_id)


# -- generators ---------------------------------------------------------------


def _ints(args, count, name):
    if len(args) != count:
        raise DigitSumsError(f"generator {name!r} takes {count} integer argument(s)")
    try:
        return [int(x) for x in args]
    except ValueError:
        raise DigitSumsError(f"generator {name!r} takes integer arguments") from None


_ALIASES = {
    "pow2": "pow:2",
    "s10pow2": "digitsum-pow:2:10",
}


def resolve_generator(spec: str) -> Callable[[int], int]:
    """Turn a generator name such as ``digitsum-pow:2:10`` into a function of n.

    Known names: pow:A, digitsum-pow:A:B, nonzero-pow:A:B, factorial, lcm,
    digitsum-factorial:B, digitsum-lcm:B, plus the aliases pow2, s10pow2.
    """
    name, *args = _ALIASES.get(spec, spec).split(":")
    if name == "pow":
        (a,) = _ints(args, 1, name)
        return lambda n: a**n
    if name == "digitsum-pow":
        a, b = _ints(args, 2, name)
        return lambda n: digit_sum(a**n, b)
    if name == "nonzero-pow":
        a, b = _ints(args, 2, name)
        return lambda n: nonzero_count(a**n, b)
    if name == "factorial":
        _ints(args, 0, name)
        return factorial
    if name == "lcm":
        _ints(args, 0, name)
        return lcm_upto
    if name == "digitsum-factorial":
        (b,) = _ints(args, 1, name)
        return lambda n: digit_sum(factorial(n), b)
    if name == "digitsum-lcm":
        (b,) = _ints(args, 1, name)
        return lambda n: digit_sum(lcm_upto(n), b)
    raise DigitSumsError(f"unknown generator {spec!r}")


@dataclass(frozen=True)
class CrosscheckReport:
    sequence_id: str
    generator: str
    indices: tuple[int, ...]
    mismatches: tuple[tuple[int, int, int], ...]  # (index, b-file value, computed)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    @property
    def first_mismatch(self) -> Optional[int]:
        return self.mismatches[0][0] if self.mismatches else None

    def lines(self) -> list[str]:
        out = [f"{i} {bfile} {computed} MISMATCH" for i, bfile, computed in self.mismatches]
        verdict = "PASS" if self.passed else f"FAIL first mismatch at index {self.first_mismatch}"
        out.append(
            f"{self.sequence_id} vs {self.generator}: {len(self.indices) - len(self.mismatches)}"
            f"/{len(self.indices)} equal; {verdict}"
        )
        return out


def crosscheck(bfile: BFile, generator: str, indices: Iterable[int]) -> CrosscheckReport:
    fn = resolve_generator(generator)
    table = bfile.as_dict()
    wanted = tuple(sorted(set(indices)))
    missing = [i for i in wanted if i not in table]
    if missing:
        raise CoverageError(bfile.sequence_id, missing)
    mismatches = []
    for i in wanted:
        computed = fn(i)
        if computed != table[i]:
            mismatches.append((i, table[i], computed))
    return CrosscheckReport(bfile.sequence_id, generator, wanted, tuple(mismatches))
