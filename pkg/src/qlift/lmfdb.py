"""Newform coefficients from LMFDB: bundled fixtures, an on-disk cache, and an opt-in HTTP client."""

from __future__ import annotations

import json
import os
import re
import threading
import time
import urllib.error
import urllib.parse
import urllib.request
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .qseries import Series24

DEFAULT_BASE_URL = "https://www.lmfdb.org"
LABEL_RE = re.compile(r"^(\d+)\.(\d+)\.([a-z]+)\.([a-z]+)$")
MIN_INTERVAL = 1.0   # seconds between network requests

_fetch_lock = threading.Lock()
_last_fetch = [0.0]


class LmfdbError(Exception):
    pass


class NetworkError(LmfdbError):
    """The HTTP request failed (connection, timeout, non-200 status)."""


class ParseError(LmfdbError):
    """The payload or a cache file could not be parsed."""


class UnknownLabel(LmfdbError):
    """The label is malformed or the database has no such newform."""


class CountExceeded(LmfdbError):
    """More coefficients were requested than the record holds."""


@dataclass(frozen=True)
class NewformRecord:
    label: str
    level: int
    weight: int
    coeffs: tuple          # a(1), a(2), ...
    source: str = "fixture"
    fetched: float | None = None

    def __post_init__(self):
        if self.coeffs and self.coeffs[0] != 1:
            raise ParseError(f"{self.label}: a(1) = {self.coeffs[0]}, not normalized")

    @property
    def count(self) -> int:
        return len(self.coeffs)

    def a(self, n: int) -> int:
        if not 1 <= n <= self.count:
            raise CountExceeded(f"{self.label} holds a(1)..a({self.count}); asked for a({n})")
        return self.coeffs[n - 1]

    def series(self, count: int | None = None) -> Series24:
        count = self.count if count is None else count
        if count > self.count:
            raise CountExceeded(f"{self.label} holds {self.count} coefficients, asked for {count}")
        return Series24({24 * n: c for n, c in enumerate(self.coeffs[:count], start=1)},
                        24 * (count + 1), 24)

    def dumps(self) -> str:
        head = f"{self.label} {self.weight} {self.level} {self.count}"
        return "\n".join([head] + [str(c) for c in self.coeffs]) + "\n"


def parse_label(label: str) -> tuple[int, int]:
    m = LABEL_RE.match(label)
    if not m:
        raise UnknownLabel(f"malformed newform label {label!r}")
    return int(m.group(1)), int(m.group(2))


def loads(text: str, source: str = "fixture") -> NewformRecord:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty record")
    head = lines[0].split()
    if len(head) != 4:
        raise ParseError(f"bad header {lines[0]!r}")
    label, weight, level, count = head[0], *head[1:]
    try:
        weight, level, count = int(weight), int(level), int(count)
        coeffs = tuple(int(x) for x in lines[1:])
    except ValueError as exc:
        raise ParseError(f"{label}: {exc}") from None
    if len(coeffs) != count:
        raise ParseError(f"{label}: header says {count} coefficients, found {len(coeffs)}")
    if parse_label(label) != (level, weight):
        raise ParseError(f"{label}: header level/weight disagree with the label")
    return NewformRecord(label, level, weight, coeffs, source)


def load_fixture(label: str) -> NewformRecord:
    """Record bundled with the package (data/lmfdb/<label>.txt)."""
    parse_label(label)
    ref = resources.files("qlift").joinpath("data", "lmfdb", f"{label}.txt")
    try:
        text = ref.read_text()
    except (FileNotFoundError, OSError):
        raise UnknownLabel(f"no bundled fixture for {label}") from None
    return loads(text, "fixture")


def fixture_labels() -> list[str]:
    d = resources.files("qlift").joinpath("data", "lmfdb")
    return sorted(p.name[:-4] for p in d.iterdir() if p.name.endswith(".txt"))


def cache_dir() -> Path:
    env = os.environ.get("QLIFT_CACHE_DIR")
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "qlift"


def base_url() -> str:
    return os.environ.get("LMFDB_BASE_URL", DEFAULT_BASE_URL).rstrip("/")


def _cache_path(label: str) -> Path:
    return cache_dir() / f"{label}.txt"


def read_cache(label: str) -> NewformRecord | None:
    path = _cache_path(label)
    if not path.exists():
        return None
    try:
        rec = loads(path.read_text(), "cache")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return rec


def write_cache(record: NewformRecord) -> Path:
    path = _cache_path(record.label)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(record.dumps())
    tmp.replace(path)
    return path


def parse_payload(label: str, payload: bytes | str) -> NewformRecord:
    """Coefficients from the JSON answer of /api/mf_newforms/?label=...&_format=json."""
    try:
        doc = json.loads(payload)
    except (ValueError, TypeError) as exc:
        raise ParseError(f"{label}: invalid JSON ({exc})") from None
    rows = doc.get("data") if isinstance(doc, dict) else None
    if not isinstance(rows, list):
        raise ParseError(f"{label}: payload has no data list")
    rows = [r for r in rows if isinstance(r, dict) and r.get("label") == label]
    if not rows:
        raise UnknownLabel(f"LMFDB has no newform {label}")
    row = rows[0]
    traces = row.get("traces")
    if not isinstance(traces, list) or not traces:
        raise ParseError(f"{label}: no traces field")
    if row.get("dim", 1) != 1:
        raise ParseError(f"{label}: coefficient field of degree {row.get('dim')} is not supported")
    try:
        coeffs = tuple(int(c) for c in traces)
        level = int(row.get("level"))
        weight = int(row.get("weight"))
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{label}: {exc}") from None
    if coeffs[0] == 0:
        coeffs = coeffs[1:]    # some dumps start at a(0)
    return NewformRecord(label, level, weight, coeffs, "network", time.time())


def _http_get(url: str, timeout: float) -> bytes:
    with _fetch_lock:
        wait = MIN_INTERVAL - (time.monotonic() - _last_fetch[0])
        if wait > 0:
            time.sleep(wait)
        try:
            req = urllib.request.Request(url, headers={"Accept": "application/json",
                                                       "User-Agent": "qlift"})
            with urllib.request.urlopen(req, timeout=timeout) as resp:
                body = resp.read()
        except urllib.error.HTTPError as exc:
            raise NetworkError(f"HTTP {exc.code} for {url}") from None
        except (urllib.error.URLError, OSError, TimeoutError) as exc:
            raise NetworkError(f"request to {url} failed: {exc}") from None
        finally:
            _last_fetch[0] = time.monotonic()
    return body


def fetch(label: str, count: int, network: bool = False, timeout: float = 20.0) -> NewformRecord:
    """Record for `label` with at least `count` coefficients.

    Lookup order: cache directory, bundled fixture, then (only if `network`)
    the LMFDB API; network results are written to the cache.
    """
    parse_label(label)
    for source in (read_cache, _fixture_or_none):
        rec = source(label)
        if rec is not None and rec.count >= count:
            return rec
    if not network:
        raise CountExceeded(f"{label}: {count} coefficients not available offline")
    query = urllib.parse.urlencode({"label": label, "_format": "json"})
    rec = parse_payload(label, _http_get(f"{base_url()}/api/mf_newforms/?{query}", timeout))
    if rec.count < count:
        raise CountExceeded(f"{label}: LMFDB returned {rec.count} coefficients, asked for {count}")
    write_cache(rec)
    return rec


def _fixture_or_none(label: str) -> NewformRecord | None:
    try:
        return load_fixture(label)
    except UnknownLabel:
        return None


def compare(record: NewformRecord, f: Series24, through: int, weight: int | None = None):
    """Exact comparison of a(1..through) against an integer-grid series."""
    from .verify import CheckReport
    if weight is not None and weight != record.weight:
        raise ValueError(f"{record.label} has weight {record.weight}, series has weight {weight}")
    if through > record.count:
        raise CountExceeded(f"{record.label} holds {record.count} coefficients, asked {through}")
    if 24 * through >= f.prec:
        raise ValueError(f"series precision {f.prec} does not reach a({through})")
    cid = f"lmfdb:{record.label}"
    inputs = f"{record.label} ({record.source}) through {through}"
    for n in range(1, through + 1):
        got = f.coeff(24 * n)
        if got != record.coeffs[n - 1]:
            return CheckReport(cid, inputs, 24 * n, "fail", (24 * n, got, record.coeffs[n - 1]),
                               reason=f"a({n}) differs")
    return CheckReport(cid, inputs, 24 * (through + 1), "pass")
