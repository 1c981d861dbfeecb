"""Projective spaces PG(n, q) with a canonical point order."""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from ..errors import EqualPoints
from .field import gf_construct


def normalize(F, vec):
    """Scale a nonzero vector so its first nonzero coordinate is 1."""
    lead = next((x for x in vec if x), 0)
    if lead == 0:
        raise ValueError("zero vector is not a projective point")
    if lead == 1:
        return tuple(vec)
    s = F.inv(lead)
    return tuple(F.mul(s, x) for x in vec)


def pg_points(F, n):
    """All normalized points of PG(n, q), sorted lexicographically."""
    if n < 1:
        raise ValueError("n must be at least 1")
    pts = []
    for lead in range(n + 1):
        for tail in product(range(F.q), repeat=n - lead):
            pts.append((0,) * lead + (1,) + tail)
    return sorted(pts)


def pg_line(F, n, a, b):
    """The q+1 points on the line through distinct points a and b."""
    a = normalize(F, a)
    b = normalize(F, b)
    if a == b:
        raise EqualPoints("a line needs two distinct points")
    out = {a, b}
    for lam in range(1, F.q):
        out.add(normalize(F, [F.add(x, F.mul(lam, y)) for x, y in zip(a, b)]))
    return frozenset(out)


class ProjectiveSpace:
    """PG(n, q) with index lookup both ways and the full line set."""

    def __init__(self, q, n):
        self.field = gf_construct(q)
        self.n = n
        self.q = q
        self.points = pg_points(self.field, n)
        self.index = {p: i for i, p in enumerate(self.points)}
        self._lines = None
        self._pair_line = None

    def __len__(self):
        return len(self.points)

    def point_index(self, vec):
        return self.index[normalize(self.field, vec)]

    @property
    def lines(self):
        """Lines as sorted tuples of point indices, in sorted order."""
        if self._lines is None:
            seen = set()
            m = len(self.points)
            pair_line = {}
            for a in range(m):
                for b in range(a + 1, m):
                    if (a, b) in pair_line:
                        continue
                    line = tuple(sorted(self.index[p] for p in
                                        pg_line(self.field, self.n, self.points[a], self.points[b])))
                    seen.add(line)
                    for i, x in enumerate(line):
                        for y in line[i + 1:]:
                            pair_line[(x, y)] = line
            self._lines = sorted(seen)
            self._pair_line = pair_line
        return self._lines

    def line_through(self, a, b):
        """Sorted index tuple of the line through point indices a != b."""
        if a == b:
            raise EqualPoints("a line needs two distinct points")
        self.lines
        return self._pair_line[(min(a, b), max(a, b))]

    def label(self, i):
        return "(" + ",".join(str(x) for x in self.points[i]) + ")"


@lru_cache(maxsize=None)
def projective_space(q, n):
    return ProjectiveSpace(q, n)
