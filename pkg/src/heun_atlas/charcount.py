"""Symmetric-group characters (Murnaghan-Nakayama) and the Frobenius count
of permutation triples with prescribed cycle types and product one."""
from __future__ import annotations

import os
import re
import threading
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from pathlib import Path
from typing import Iterable, Sequence

from .patterns import partitions

IntPartition = tuple[int, ...]

CACHE_VERSION = 1
CACHE_HEADER = f"# heun-atlas character cache v{CACHE_VERSION}"


class CharacterError(ValueError):
    pass


def normalize(parts: Iterable[int]) -> IntPartition:
    p = tuple(sorted((int(x) for x in parts), reverse=True))
    if any(x <= 0 for x in p):
        raise CharacterError(f"partition parts must be positive: {p}")
    return p


_POWER = re.compile(r"^(\d+)(?:\^(\d+))?$")


def parse_partition(text: str) -> IntPartition:
    """``"2^12"``, ``"10+6+4+2+1+1"`` or ``"3^2+1"``."""
    parts: list[int] = []
    for tok in text.replace(" ", "").split("+"):
        m = _POWER.match(tok)
        if not m:
            raise CharacterError(f"bad partition token {tok!r}")
        parts.extend([int(m.group(1))] * int(m.group(2) or 1))
    return normalize(parts)


def format_partition(p: Sequence[int]) -> str:
    return "+".join(map(str, p))


def _to_beta(lam: IntPartition) -> tuple[int, ...]:
    L = len(lam)
    return tuple(lam[i] + (L - 1 - i) for i in range(L))


def _from_beta(beta: Iterable[int]) -> IntPartition:
    b = sorted(beta, reverse=True)
    L = len(b)
    return tuple(x for x in (b[i] - (L - 1 - i) for i in range(L)) if x > 0)


@lru_cache(maxsize=None)
def _mn(lam: IntPartition, mu: IntPartition) -> int:
    if not mu:
        return 1
    k, rest = mu[0], mu[1:]
    beta = _to_beta(lam)
    present = set(beta)
    total = 0
    for b in beta:
        t = b - k
        if t < 0 or t in present:
            continue
        height = sum(1 for c in beta if t < c < b)
        sub = _from_beta([t if c == b else c for c in beta])
        value = _mn(sub, rest)
        total += -value if height % 2 else value
    return total


def mn_character(lam: Sequence[int], mu: Sequence[int]) -> int:
    """chi_lambda(mu) by border-strip removal, longest strips first."""
    lam_p, mu_p = normalize(lam), normalize(mu)
    if sum(lam_p) != sum(mu_p):
        raise CharacterError(f"|lambda| = {sum(lam_p)} but |mu| = {sum(mu_p)}")
    return _mn(lam_p, mu_p)


def dimension(lam: Sequence[int]) -> int:
    """Hook length formula."""
    lam_p = normalize(lam)
    n = sum(lam_p)
    conj = [sum(1 for x in lam_p if x > j) for j in range(lam_p[0])] if lam_p else []
    hooks = 1
    for i, row in enumerate(lam_p):
        for j in range(row):
            hooks *= (row - j - 1) + (conj[j] - i - 1) + 1
    return factorial(n) // hooks


def centralizer_order(mu: Sequence[int]) -> int:
    z = 1
    for k, m in Counter(normalize(mu)).items():
        z *= k ** m * factorial(m)
    return z


def class_size(mu: Sequence[int]) -> int:
    return factorial(sum(mu)) // centralizer_order(mu)


# --------------------------------------------------------------- disk cache

def default_cache_dir() -> Path:
    env = os.environ.get("HEUN_ATLAS_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "heun-atlas"


class CharacterCache:
    """Full character values chi_lambda(mu), persisted as text lines."""

    def __init__(self, directory: str | Path | None = None):
        self.path = Path(directory or default_cache_dir()) / f"characters-v{CACHE_VERSION}.txt"
        self._values: dict[tuple[IntPartition, IntPartition], int] = {}
        self._dirty = False
        self._lock = threading.Lock()
        self._load()

    def _load(self) -> None:
        if not self.path.exists():
            return
        lines = self.path.read_text().splitlines()
        if not lines or lines[0].strip() != CACHE_HEADER:
            return  # stale or foreign file; rebuilt on save
        for line in lines[1:]:
            try:
                lam, mu, value = (s.strip() for s in line.split(":"))
                self._values[(parse_partition(lam), parse_partition(mu))] = int(value)
            except (ValueError, CharacterError):
                continue

    def __len__(self) -> int:
        return len(self._values)

    def get(self, lam: IntPartition, mu: IntPartition) -> int:
        key = (lam, mu)
        with self._lock:
            if key in self._values:
                return self._values[key]
        value = _mn(lam, mu)
        with self._lock:
            self._values[key] = value
            self._dirty = True
        return value

    def save(self) -> None:
        with self._lock:
            if not self._dirty:
                return
            self.path.parent.mkdir(parents=True, exist_ok=True)
            tmp = self.path.with_suffix(".tmp")
            body = [CACHE_HEADER]
            for (lam, mu), v in sorted(self._values.items()):
                body.append(f"{format_partition(lam)} : {format_partition(mu)} : {v}")
            tmp.write_text("\n".join(body) + "\n")
            os.replace(tmp, self.path)
            self._dirty = False


# --------------------------------------------------------------- counting

def frobenius_count(mu1: Sequence[int], mu2: Sequence[int], mu3: Sequence[int],
                    cache: CharacterCache | None = None) -> int:
    """Number of triples (s1, s2, s3) in S_n of the given cycle types with s1 s2 s3 = 1.

    Connected or not, unweighted.  The division by n! is done last and must be exact.
    """
    classes = [normalize(m) for m in (mu1, mu2, mu3)]
    sizes = {sum(m) for m in classes}
    if len(sizes) != 1:
        raise CharacterError(f"partitions of different sizes: {classes}")
    n = sizes.pop()
    value = cache.get if cache is not None else _mn
    acc = Fraction(0)
    for lam in partitions(n):
        chis = []
        for mu in classes:
            c = value(lam, mu)
            if c == 0:
                break
            chis.append(c)
        else:
            acc += Fraction(chis[0] * chis[1] * chis[2], dimension(lam))
    total = acc * class_size(classes[0]) * class_size(classes[1]) * class_size(classes[2]) / factorial(n)
    if total.denominator != 1 or total < 0:
        raise CharacterError(f"Frobenius sum is not a non-negative integer: {total}")
    return int(total)


def character_slice(n: int, classes: Sequence[Sequence[int]],
                    cache: CharacterCache | None = None) -> dict[IntPartition, tuple[int, ...]]:
    """lambda -> (chi(mu1), chi(mu2), chi(mu3), dim) for every lambda of n."""
    cls = [normalize(m) for m in classes]
    value = cache.get if cache is not None else _mn
    return {lam: tuple(value(lam, mu) for mu in cls) + (dimension(lam),) for lam in partitions(n)}


def _sub_multisets(p: IntPartition) -> list[IntPartition]:
    counts = sorted(Counter(p).items(), reverse=True)
    out: list[IntPartition] = [()]
    for part, k in counts:
        out = [q + (part,) * j for q in out for j in range(k + 1)]
    return out


def _remove(p: IntPartition, q: IntPartition) -> IntPartition:
    c = Counter(p)
    c.subtract(q)
    return normalize(c.elements())


def connected_count(mu1: Sequence[int], mu2: Sequence[int], mu3: Sequence[int],
                    cache: CharacterCache | None = None) -> int:
    """Number of transitive triples with the given cycle types and product one.

    Peels off the orbit of the point 1 from the Frobenius count:
    T(mu) = sum over sub-types nu of binom(n-1, |nu|-1) * C(nu) * T(mu - nu).
    """
    classes = tuple(normalize(m) for m in (mu1, mu2, mu3))
    total_cache: dict[tuple, int] = {}
    conn_cache: dict[tuple, int] = {}

    def total(key: tuple) -> int:
        if not key[0]:
            return 1
        if key not in total_cache:
            total_cache[key] = frobenius_count(*key, cache=cache)
        return total_cache[key]

    def conn(key: tuple) -> int:
        if key in conn_cache:
            return conn_cache[key]
        n = sum(key[0])
        subs = [[q for q in _sub_multisets(m) if q] for m in key]
        value = total(key)
        for a in subs[0]:
            k = sum(a)
            if k == n:
                continue
            for b in subs[1]:
                if sum(b) != k:
                    continue
                for c in subs[2]:
                    if sum(c) != k:
                        continue
                    rest = (_remove(key[0], a), _remove(key[1], b), _remove(key[2], c))
                    inner = conn((a, b, c))
                    if inner:
                        value -= comb(n - 1, k - 1) * inner * total(rest)
        conn_cache[key] = value
        return value

    if len({sum(m) for m in classes}) != 1:
        raise CharacterError(f"partitions of different sizes: {classes}")
    return conn(classes)
