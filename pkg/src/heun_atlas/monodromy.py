"""Permutation triples, orbit counting, dessins and block systems.

Permutations are tuples of 0-based images.  Products read left to right:
``mul(p, q)`` applies p first, so a triple satisfies mul(mul(s0, s1), sinf) = id.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import factorial
from typing import Iterator, Sequence

Perm = tuple[int, ...]
Partition = tuple[int, ...]

MAX_DEGREE = 14


class DegreeTooLarge(ValueError):
    pass


class InvalidTriple(ValueError):
    pass


def identity(n: int) -> Perm:
    return tuple(range(n))


def mul(p: Perm, q: Perm) -> Perm:
    return tuple(q[i] for i in p)


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def conjugate(p: Perm, g: Perm) -> Perm:
    """g^-1 p g: the relabelling of p along g."""
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[g[i]] = g[j]
    return tuple(out)


def cycles(p: Perm) -> list[tuple[int, ...]]:
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = p[i]
        out.append(tuple(cyc))
    return out


def cycle_type(p: Perm) -> Partition:
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def class_size(lam: Partition) -> int:
    n = sum(lam)
    z = 1
    for k, m in Counter(lam).items():
        z *= k ** m * factorial(m)
    return factorial(n) // z


def from_cycles(n: int, cyc: Sequence[Sequence[int]]) -> Perm:
    images = list(range(n))
    for c in cyc:
        for a, b in zip(c, c[1:] + type(c)(c[:1])):
            images[a] = b
    return tuple(images)


def canonical_perm(lam: Partition) -> Perm:
    """Consecutive cycles (0 1 .. k-1)(k ..) in descending length order."""
    n = sum(lam)
    cyc, start = [], 0
    for k in sorted(lam, reverse=True):
        cyc.append(tuple(range(start, start + k)))
        start += k
    return from_cycles(n, cyc)


def perms_of_type(lam: Partition) -> Iterator[Perm]:
    """Each permutation of cycle type lam exactly once.

    The smallest unused point opens the next cycle; only the choice of its
    length and of the following points is branched on.
    """
    n = sum(lam)
    images = [-1] * n
    lengths = Counter(lam)

    def rec(unused: list[int]) -> Iterator[Perm]:
        if not unused:
            yield tuple(images)
            return
        head, rest = unused[0], unused[1:]
        for k in sorted(lengths):
            if not lengths[k]:
                continue
            lengths[k] -= 1
            yield from place(head, head, k - 1, rest)
            lengths[k] += 1

    def place(head: int, last: int, left: int, pool: list[int]) -> Iterator[Perm]:
        if left == 0:
            images[last] = head
            yield from rec(pool)
            return
        for idx, nxt in enumerate(pool):
            images[last] = nxt
            yield from place(head, nxt, left - 1, pool[:idx] + pool[idx + 1:])

    yield from rec(list(range(n)))


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def is_transitive(gens: Sequence[Perm]) -> bool:
    n = len(gens[0])
    uf = _UnionFind(n)
    comps = n
    for g in gens:
        for i, j in enumerate(g):
            if uf.union(i, j):
                comps -= 1
    return comps == 1


@dataclass(frozen=True)
class PermTriple:
    sigma0: Perm
    sigma1: Perm
    sigma_inf: Perm

    @property
    def degree(self) -> int:
        return len(self.sigma0)

    def as_tuple(self) -> tuple[Perm, Perm, Perm]:
        return (self.sigma0, self.sigma1, self.sigma_inf)

    def is_valid(self) -> bool:
        return mul(mul(self.sigma0, self.sigma1), self.sigma_inf) == identity(self.degree)

    def cycle_types(self) -> tuple[Partition, Partition, Partition]:
        return tuple(cycle_type(p) for p in self.as_tuple())  # type: ignore[return-value]

    def to_cycles(self) -> list[list[tuple[int, ...]]]:
        """1-based cycle notation, for reports."""
        return [[tuple(i + 1 for i in c) for c in cycles(p)] for p in self.as_tuple()]


def centralizer_generators(p: Perm) -> list[Perm]:
    """Per-cycle rotations plus swaps of neighbouring cycles of equal length."""
    n = len(p)
    cyc = sorted(cycles(p), key=lambda c: (-len(c), c))
    gens = []
    for c in cyc:
        if len(c) > 1:
            gens.append(from_cycles(n, [c]))
    for c, d in zip(cyc, cyc[1:]):
        if len(c) == len(d):
            images = list(range(n))
            for a, b in zip(c, d):
                images[a], images[b] = b, a
            gens.append(tuple(images))
    return gens


@dataclass(frozen=True)
class TripleCount:
    raw_count: int
    orbit_count: int
    representatives: tuple[PermTriple, ...]


def _check_fibers(fibers: Sequence[Sequence[int]]) -> tuple[Partition, Partition, Partition]:
    if len(fibers) != 3:
        raise ValueError("need exactly three partitions")
    parts = tuple(tuple(sorted(f, reverse=True)) for f in fibers)
    sums = {sum(f) for f in parts}
    if len(sums) != 1:
        raise ValueError(f"partitions of different sizes: {parts}")
    n = sums.pop()
    if n > MAX_DEGREE:
        raise DegreeTooLarge(f"degree {n} exceeds the enumeration bound {MAX_DEGREE}")
    return parts  # type: ignore[return-value]


def _scan(a: Perm, candidates: list[Perm], target: Partition) -> list[tuple[Perm, bool]]:
    out = []
    for b in candidates:
        c = inverse(mul(a, b))
        if cycle_type(c) == target:
            out.append((b, is_transitive((a, b))))
    return out


def count_triples(fibers: Sequence[Sequence[int]], threads: int = 1) -> TripleCount:
    """Count triples with the given cycle types and product identity.

    A canonical permutation is fixed in one class while the smallest class is
    scanned, so the number of candidates is the smallest class size.
    """
    parts = _check_fibers(fibers)
    order = sorted(range(3), key=lambda i: (class_size(parts[i]), i))
    scan_i, fix_i = order[0], order[1]
    last_i = 3 - scan_i - fix_i
    a = canonical_perm(parts[fix_i])
    candidates = list(perms_of_type(parts[scan_i]))
    if threads > 1 and len(candidates) > 2000:
        step = -(-len(candidates) // threads)
        chunks = [candidates[k:k + step] for k in range(0, len(candidates), step)]
        with ThreadPoolExecutor(threads) as pool:
            found = [m for part in pool.map(lambda ch: _scan(a, ch, parts[last_i]), chunks) for m in part]
    else:
        found = _scan(a, candidates, parts[last_i])
    raw = class_size(parts[fix_i]) * len(found)

    connected = [b for b, ok in found if ok]
    index = {b: k for k, b in enumerate(connected)}
    uf = _UnionFind(len(connected))
    for g in centralizer_generators(a):
        for k, b in enumerate(connected):
            uf.union(k, index[conjugate(b, g)])
    reps = []
    for k, b in enumerate(connected):
        if uf.find(k) == k:
            reps.append(_orient(fix_i, scan_i, last_i, a, b))
    return TripleCount(raw, len(reps), tuple(reps))


def _orient(fix_i: int, scan_i: int, last_i: int, a: Perm, b: Perm) -> PermTriple:
    """Place (a, b, (ab)^-1) back into fiber order, inverting on odd reorderings."""
    c = inverse(mul(a, b))
    slots: list[Perm] = [()] * 3
    slots[fix_i], slots[scan_i], slots[last_i] = a, b, c
    even = (fix_i, scan_i, last_i) in ((0, 1, 2), (1, 2, 0), (2, 0, 1))
    if not even:
        slots = [inverse(p) for p in slots]
    t = PermTriple(*slots)
    assert t.is_valid()
    return t


def genus(t: PermTriple) -> int:
    n = t.degree
    chi = sum(len(cycles(p)) for p in t.as_tuple()) - n
    if chi > 2 or (2 - chi) % 2:
        raise InvalidTriple(f"Euler characteristic {chi} is not of the form 2-2g")
    return (2 - chi) // 2


# --------------------------------------------------------------- dessins

@dataclass(frozen=True)
class Dessin:
    """Black vertices, white vertices and faces as 1-based cycles."""

    black: tuple[tuple[int, ...], ...]
    white: tuple[tuple[int, ...], ...]
    faces: tuple[tuple[int, ...], ...]
    genus: int

    @property
    def edges(self) -> int:
        return sum(len(c) for c in self.black)

    @staticmethod
    def _orders(cs: Sequence[Sequence[int]]) -> Partition:
        return tuple(sorted((len(c) for c in cs), reverse=True))

    @property
    def black_orders(self) -> Partition:
        return self._orders(self.black)

    @property
    def white_orders(self) -> Partition:
        return self._orders(self.white)

    @property
    def face_orders(self) -> Partition:
        return self._orders(self.faces)


def dessin(t: PermTriple) -> Dessin:
    b, w, f = t.to_cycles()
    return Dessin(tuple(b), tuple(w), tuple(f), genus(t))


def emit_dot(d: Dessin, name: str = "dessin") -> str:
    """Abstract bipartite graph; edge labels give the cyclic order around vertices."""
    lines = [f"graph {name} {{"]
    for k, c in enumerate(d.black):
        lines.append(f'  black{k} [shape=circle,label="{len(c)}"];')
    for k, c in enumerate(d.white):
        lines.append(f'  white{k} [shape=circle,style=filled,fillcolor=black,fontcolor=white,label="{len(c)}"];')
    where_white = {e: k for k, c in enumerate(d.white) for e in c}
    for k, c in enumerate(d.black):
        for pos, e in enumerate(c):
            lines.append(f'  black{k} -- white{where_white[e]} [label="{e}",taillabel="{pos}"];')
    for k, c in enumerate(d.faces):
        lines.append(f"  // face{k} order {len(c)}: {' '.join(map(str, c))}")
    lines.append("}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------- block systems

BlockSystem = tuple[tuple[int, ...], ...]


def _minimal_block(gens: Sequence[Perm], j: int) -> BlockSystem:
    n = len(gens[0])
    uf = _UnionFind(n)
    uf.union(0, j)
    queue = [(0, j)]
    while queue:
        a, b = queue.pop()
        for g in gens:
            ga, gb = g[a], g[b]
            if uf.union(ga, gb):
                queue.append((ga, gb))
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(uf.find(i), []).append(i)
    return tuple(sorted(tuple(v) for v in groups.values()))


def _block_systems_of(gens: Sequence[Perm]) -> list[BlockSystem]:
    n = len(gens[0])
    found = set()
    for j in range(1, n):
        sys = _minimal_block(gens, j)
        if len(sys) > 1:
            found.add(sys)
    return sorted(found, key=lambda s: (len(s[0]), s))


def _chains(gens: Sequence[Perm]) -> set[tuple[int, ...]]:
    n = len(gens[0])
    systems = _block_systems_of(gens)
    if not systems:
        return {(n,)}
    out: set[tuple[int, ...]] = set()
    for sys in systems:
        where = {e: k for k, blk in enumerate(sys) for e in blk}
        induced = [tuple(where[g[blk[0]]] for blk in sys) for g in gens]
        for rest in _chains(induced):
            out.add((len(sys[0]),) + rest)
    return out


@dataclass(frozen=True)
class BlockReport:
    systems: tuple[BlockSystem, ...]
    chains: tuple[tuple[int, ...], ...]

    @property
    def decomposable(self) -> bool:
        return bool(self.systems)

    def factor_multisets(self) -> set[tuple[int, ...]]:
        """Factor multisets of every chain and every coarsening of it."""
        out: set[tuple[int, ...]] = set()
        for chain in self.chains:
            out |= _coarsenings(chain)
        return out


def _coarsenings(chain: tuple[int, ...]) -> set[tuple[int, ...]]:
    found = {tuple(sorted(chain))}
    for k in range(len(chain) - 1):
        merged = chain[:k] + (chain[k] * chain[k + 1],) + chain[k + 2:]
        found |= _coarsenings(merged)
    return found


def block_systems(t: PermTriple) -> BlockReport:
    gens = (t.sigma0, t.sigma1)
    if not is_transitive(gens):
        raise InvalidTriple("block systems need a transitive triple")
    systems = tuple(_block_systems_of(gens))
    chains = tuple(sorted(_chains(gens))) if systems else ()
    return BlockReport(systems, chains)


def triple_from_cycles(n: int, s0: Sequence[Sequence[int]], s1: Sequence[Sequence[int]]) -> PermTriple:
    """Build a triple from 1-based cycles of sigma0 and sigma1."""
    a = from_cycles(n, [tuple(i - 1 for i in c) for c in s0])
    b = from_cycles(n, [tuple(i - 1 for i in c) for c in s1])
    return PermTriple(a, b, inverse(mul(a, b)))

