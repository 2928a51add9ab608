from itertools import permutations

import pytest

from heun_atlas.charcount import CharacterCache


@pytest.fixture(scope="session", autouse=True)
def cache_dir(tmp_path_factory):
    path = tmp_path_factory.mktemp("cache")
    mp = pytest.MonkeyPatch()
    mp.setenv("HEUN_ATLAS_CACHE", str(path))
    yield path
    mp.undo()


@pytest.fixture(scope="session")
def char_cache(cache_dir):
    return CharacterCache(cache_dir)


def _cycle_type(p):
    seen, out = set(), []
    for i in range(len(p)):
        if i in seen:
            continue
        n, j = 0, i
        while j not in seen:
            seen.add(j)
            j = p[j]
            n += 1
        out.append(n)
    return tuple(sorted(out, reverse=True))


def brute_triples(mu1, mu2, mu3):
    """Oracle: (all, transitive) triples with s1 s2 s3 = 1, by full enumeration of S_n."""
    n = sum(mu1)
    perms = list(permutations(range(n)))
    by_type = {}
    for p in perms:
        by_type.setdefault(_cycle_type(p), []).append(p)
    want3 = tuple(sorted(mu3, reverse=True))
    total = transitive = 0
    for a in by_type.get(tuple(sorted(mu1, reverse=True)), []):
        for b in by_type.get(tuple(sorted(mu2, reverse=True)), []):
            ab = tuple(b[a[i]] for i in range(n))  # apply a then b
            if _cycle_type(ab) != want3:
                continue
            total += 1
            orbit, todo = {0}, [0]
            while todo:
                x = todo.pop()
                for y in (a[x], b[x]):
                    if y not in orbit:
                        orbit.add(y)
                        todo.append(y)
            transitive += len(orbit) == n
    return total, transitive
