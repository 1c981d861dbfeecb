"""Permutation groups given by generators, with lazily built stabilizer chains."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import BudgetExceeded, DegreeMismatch, NotTransitive
from .chain import StabilizerChain, change_base_prefix, schreier_sims
from .perm import Permutation, is_identity, mul

MAX_TUPLE_LENGTH = 8


@dataclass(frozen=True)
class OrbitClass:
    """An orbit on points or on tuples of points."""

    representative: object
    size: int
    qdegree: int | None = None
    points: tuple | None = None


class PermGroup:
    """A permutation group on ``range(degree)``.

    Stabilizer chains are built on first use and cached per base prefix,
    so the object behaves as an immutable value.
    """

    def __init__(self, generators, degree=None, name=None, order=None):
        gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("need a degree or at least one generator")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch(f"generator of degree {g.degree} in a group of degree {degree}")
        if not gens:
            gens = [Permutation.identity(degree)]
        self.degree = degree
        self.generators = tuple(gens)
        self.name = name
        self._known_order = order
        self._chains = {}

    @classmethod
    def _from_chain(cls, chain, name=None):
        gens = [Permutation(g, check=False) for g in chain.strong_generators()]
        group = cls(gens, degree=chain.degree, name=name, order=chain.order())
        group._chains[()] = chain
        return group

    @property
    def raw_generators(self):
        return [g.images for g in self.generators]

    def chain(self, base_hint=()):
        base_hint = tuple(base_hint)
        if () not in self._chains:
            self._chains[()] = schreier_sims(
                self.degree, self.raw_generators, (), self._known_order)
        if not base_hint:
            return self._chains[()]
        if base_hint in self._chains:
            return self._chains[base_hint]
        for chain in self._chains.values():
            if tuple(chain.base[:len(base_hint)]) == base_hint:
                return chain
        chain = change_base_prefix(self._chains[()], base_hint)
        self._chains[base_hint] = chain
        return chain

    def order(self):
        return self.chain().order()

    def __len__(self):
        return self.order()

    def contains(self, g):
        images = g.images if isinstance(g, Permutation) else tuple(g)
        return len(images) == self.degree and self.chain().contains(images)

    __contains__ = contains

    def identity(self):
        return Permutation.identity(self.degree)

    def is_trivial(self):
        return all(g.is_identity() for g in self.generators)

    def is_abelian(self):
        gens = self.raw_generators
        return all(mul(a, b) == mul(b, a) for i, a in enumerate(gens) for b in gens[i + 1:])

    def orbit_points(self, x):
        seen = {x}
        frontier = [x]
        gens = self.raw_generators
        for y in frontier:
            for g in gens:
                z = g[y]
                if z not in seen:
                    seen.add(z)
                    frontier.append(z)
        return sorted(seen)

    def orbits(self, points=None):
        """Orbit partition of ``points`` (default: all points), sorted by least element."""
        todo = range(self.degree) if points is None else sorted(points)
        done = set()
        out = []
        for x in todo:
            if x not in done:
                orb = self.orbit_points(x)
                done.update(orb)
                out.append(orb)
        return out

    def is_transitive(self, points=None):
        points = range(self.degree) if points is None else points
        points = sorted(points)
        return not points or self.orbit_points(points[0]) == points

    def elements(self):
        for g in self.chain().elements():
            yield Permutation(g, check=False)

    def random_element(self, rng):
        g = tuple(range(self.degree))
        for lv in reversed(self.chain().levels):
            g = mul(g, lv.transversal[rng.choice(lv.orbit)])
        return Permutation(g, check=False)

    def __repr__(self):
        label = self.name or "PermGroup"
        return f"<{label} degree={self.degree} gens={len(self.generators)}>"


def orbit(g, x):
    if not 0 <= x < g.degree:
        raise ValueError(f"point {x} out of range")
    pts = g.orbit_points(x)
    return OrbitClass(x, len(pts), points=tuple(pts))


def build_chain(g, base_hint=None):
    return g.chain(tuple(base_hint or ()))


def _distinct(points):
    out = []
    for p in points:
        if p not in out:
            out.append(p)
    return out


def pointwise_stabilizer(g, pts):
    """The subgroup fixing every point of ``pts``."""
    pts = _distinct(pts)
    if not pts:
        return g
    chain = g.chain(tuple(pts))
    tail = StabilizerChain(chain.degree, chain.levels[len(pts):])
    return PermGroup._from_chain(tail)


def orbit_of_tuple(g, t, cap=MAX_TUPLE_LENGTH):
    """Orbit of ``g`` on the tuple ``t``, sized by orbit-stabilizer."""
    t = tuple(t)
    if len(t) > cap:
        raise ValueError(f"tuple length {len(t)} exceeds cap {cap}")
    if any(not 0 <= x < g.degree for x in t):
        raise ValueError("tuple entry out of range")
    pts = _distinct(t)
    chain = g.chain(tuple(pts))
    return OrbitClass(t, chain.order() // chain.suborder(len(pts)))


def same_tuple_orbit(g, s, t):
    """Return an element mapping tuple ``s`` to ``t`` entrywise, or None."""
    s, t = tuple(s), tuple(t)
    if len(s) != len(t):
        return None
    # repeated entries must be repeated in the same places
    if [s.index(x) for x in s] != [t.index(y) for y in t]:
        return None
    pts = _distinct(s)
    dst = [t[s.index(p)] for p in pts]
    chain = g.chain(tuple(pts))
    found = chain.find_element(pts, dst)
    return None if found is None else Permutation(found, check=False)


def fixed_points(g):
    gens = g.raw_generators
    return {x for x in range(g.degree) if all(s[x] == x for s in gens)}


def minimal_block_systems(g, transitive_on=None):
    """Minimal block systems joining a base point to each other point.

    For each ``y`` the finest ``g``-invariant partition with ``x0 ~ y`` is
    computed by union-find closure.  Trivial partitions are dropped and
    duplicates removed; blocks and systems come out sorted.
    """
    omega = sorted(range(g.degree) if transitive_on is None else set(transitive_on))
    if not omega:
        return []
    if not g.is_transitive(omega):
        raise NotTransitive("group is not transitive on the given set")
    gens = g.raw_generators
    x0 = omega[0]
    systems = []
    for y in omega[1:]:
        parent = {x: x for x in omega}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        parent[find(y)] = find(x0)
        queue = [(x0, y)]
        while queue:
            a, b = queue.pop()
            for s in gens:
                ra, rb = find(s[a]), find(s[b])
                if ra != rb:
                    parent[rb] = ra
                    queue.append((s[a], s[b]))
        blocks = {}
        for x in omega:
            blocks.setdefault(find(x), []).append(x)
        if len(blocks) == 1:
            continue
        partition = sorted(sorted(b) for b in blocks.values())
        if partition not in systems:
            systems.append(partition)
    return sorted(systems, key=lambda p: (len(p[0]), p))


def is_block_system(g, partition):
    """True when every generator maps each block onto a block."""
    lookup = {}
    for i, block in enumerate(partition):
        for x in block:
            lookup[x] = i
    for s in g.raw_generators:
        for block in partition:
            images = {lookup.get(s[x]) for x in block}
            if len(images) != 1 or None in images:
                return False
    return True


def centralizer_small(g, h, budget=10**6):
    """Centralizer in ``g`` of the group ``h``, by enumerating ``g``."""
    if g.order() > budget:
        raise BudgetExceeded(f"|G| = {g.order()} exceeds budget {budget}")
    hgens = [s for s in h.raw_generators if not is_identity(s)]
    found = []
    for c in g.chain().elements():
        if all(mul(c, s) == mul(s, c) for s in hgens):
            found.append(c)
    return _group_from_elements(g.degree, found)


def _group_from_elements(degree, elements):
    members = {tuple(range(degree))}
    gens = []
    for c in sorted(elements):
        if c in members:
            continue
        gens.append(c)
        frontier = list(members)
        for x in frontier:
            for s in gens:
                y = mul(x, s)
                if y not in members:
                    members.add(y)
                    frontier.append(y)
    return PermGroup([Permutation(c, check=False) for c in gens], degree=degree,
                     order=len(members))
