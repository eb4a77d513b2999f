"""Resource caps, read from a key=value file and overridable per call."""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

CONFIG_ENV = "DIGITSUMS_CONFIG"


@dataclass(frozen=True)
class Caps:
    factorial_n: int = 5000
    lcm_n: int = 5000
    sparse_n: int = 64
    power_exponent: int = 100_000
    scan_n: int = 100_000
    factor_limit: int = 10**6
    precision_start: int = 128
    precision_cap: int = 8192

    def replace(self, **overrides) -> "Caps":
        return dataclasses.replace(self, **{k: v for k, v in overrides.items() if v is not None})


DEFAULT_CAPS = Caps()


def parse_config(text: str, origin: str = "<config>") -> dict:
    known = {f.name for f in dataclasses.fields(Caps)}
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or key not in known:
            raise ValueError(f"{origin}:{lineno}: expected one of {sorted(known)} as key=value, got {raw!r}")
        try:
            values[key] = int(value.strip())
        except ValueError:
            raise ValueError(f"{origin}:{lineno}: {key} must be an integer") from None
    return values


def load_caps(path: Optional[str] = None) -> Caps:
    """Caps from ``path``, else from $DIGITSUMS_CONFIG, else the defaults."""
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return DEFAULT_CAPS
    p = Path(path)
    return DEFAULT_CAPS.replace(**parse_config(p.read_text(encoding="utf-8"), str(p)))
