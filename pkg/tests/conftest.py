"""Independent oracles shared by the test modules.

Nothing here uses stabilizer chains: groups are enumerated by BFS on the
Cayley graph, tuple orbits by BFS in tuple space, and lines come from the
native coordinates of PG(n, q).
"""

from itertools import permutations

import pytest

from genrec.gfgeom import builtin_group


def mul(p, r):
    return tuple(r[x] for x in p)


def enumerate_group(gens, degree):
    """All elements generated by ``gens`` (image tuples), by Cayley-graph BFS."""
    ident = tuple(range(degree))
    gens = [tuple(g) for g in gens]
    seen = {ident}
    frontier = [ident]
    for g in frontier:
        for s in gens:
            h = mul(g, s)
            if h not in seen:
                seen.add(h)
                frontier.append(h)
    return seen


def tuple_orbits(gens, tuples):
    """Partition ``tuples`` into orbits under the generators, by BFS."""
    remaining = set(tuples)
    out = []
    while remaining:
        start = min(remaining)
        orb = {start}
        frontier = [start]
        for t in frontier:
            for s in gens:
                img = tuple(s[x] for x in t)
                if img not in orb:
                    orb.add(img)
                    frontier.append(img)
        remaining -= orb
        out.append(orb)
    return out


def distinct_tuples(m, k):
    return list(permutations(range(m), k))


def raw(group):
    return group.raw_generators


@pytest.fixture(scope="session")
def pg23():
    return builtin_group("pgl", 2, 3)


@pytest.fixture(scope="session")
def pg32():
    return builtin_group("pgl", 3, 2)
