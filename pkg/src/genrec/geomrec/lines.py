"""Collinearity from two-point suborbits, and the incidence geometry it builds."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from ..errors import (
    DegenerateLine,
    InconsistentLines,
    LineTooLarge,
    NoGap,
    NotTwoTransitive,
)
from ..permcore import OrbitClass, orbit_of_tuple, pointwise_stabilizer


@dataclass(frozen=True)
class LineDetectionPolicy:
    """How "small" two-point suborbits are told apart from large ones.

    ``mode="gap"`` cuts the sorted suborbit sizes at the largest ratio
    between neighbours (the pair itself counts as a leading size 2).
    ``mode="degree"`` trusts ``small_orbit_degrees``: one q-degree per
    sorted suborbit, small meaning degree <= 1.
    """

    gamma: Fraction = Fraction(3)
    mode: str = "gap"
    max_line_fraction: Fraction = Fraction(1, 2)
    small_orbit_degrees: tuple | None = None

    def __post_init__(self):
        if self.gamma <= 1:
            raise ValueError("gap ratio must exceed 1")
        if self.mode not in ("gap", "degree"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "degree" and self.small_orbit_degrees is None:
            raise ValueError("degree mode needs small_orbit_degrees")


DEFAULT_POLICY = LineDetectionPolicy()


class IncidenceGeometry:
    """Points ``0..m-1`` and lines as sorted point tuples.

    Lines are stored as given (no dedup) so that broken hand-made
    geometries can be represented and then diagnosed by the axiom checks.
    """

    def __init__(self, m, lines):
        self.m = m
        self.lines = [tuple(sorted(line)) for line in lines]
        self.line_sets = [frozenset(line) for line in self.lines]
        self.pair_to_line = {}
        self.pencils = [[] for _ in range(m)]
        for idx, line in enumerate(self.lines):
            for i, a in enumerate(line):
                self.pencils[a].append(idx)
                for b in line[i + 1:]:
                    self.pair_to_line.setdefault((a, b), idx)
        self._index = {line: i for i, line in enumerate(self.lines)}

    def line_through(self, a, b):
        """Index of the (first) line through distinct a and b, or None."""
        if a > b:
            a, b = b, a
        return self.pair_to_line.get((a, b))

    def line_index(self, points):
        return self._index.get(tuple(sorted(points)))

    def collinear(self, a, b, c):
        idx = self.line_through(a, b)
        return idx is not None and c in self.line_sets[idx]

    def line_sizes(self):
        return sorted({len(line) for line in self.lines})

    def image_is_line_set(self, images):
        """True when the point map ``images`` sends every line onto a line."""
        return all(tuple(sorted(images[x] for x in line)) in self._index for line in self.lines)

    def validate(self):
        """Problems with the structural invariants, as strings (empty if fine)."""
        problems = []
        for line in self.lines:
            if len(line) < 3 or len(line) >= self.m:
                problems.append(f"line {line} has {len(line)} points")
        for a in range(self.m):
            for b in range(a + 1, self.m):
                if (a, b) not in self.pair_to_line:
                    problems.append(f"pair {(a, b)} on no line")
                    break
        return problems

    def __repr__(self):
        return f"<IncidenceGeometry points={self.m} lines={len(self.lines)}>"


def two_point_suborbits(g, a, b):
    """Orbits of the two-point stabilizer on the remaining points, smallest first."""
    m = g.degree
    if a == b:
        raise ValueError("need two distinct points")
    if orbit_of_tuple(g, (a, b)).size != m * (m - 1):
        raise NotTwoTransitive(f"{g!r} is not 2-transitive")
    h = pointwise_stabilizer(g, [a, b])
    rest = [x for x in range(m) if x not in (a, b)]
    orbs = h.orbits(rest)
    out = [OrbitClass(o[0], len(o), points=tuple(o)) for o in orbs]
    return sorted(out, key=lambda o: (o.size, o.representative))


def split_suborbits(sizes, gamma):
    """Return (cut, ratio) for the largest neighbour ratio in ``[2] + sizes``.

    ``sizes`` must be ascending; the first ``cut`` suborbits are small.
    Ties keep the earliest cut.
    """
    best_cut, best_ratio = None, Fraction(0)
    prev = 2
    for i, s in enumerate(sizes):
        ratio = Fraction(s, prev)
        if ratio > best_ratio:
            best_cut, best_ratio = i, ratio
        prev = s
    return best_cut, best_ratio


def detect_line(g, a, b, policy=DEFAULT_POLICY):
    """Points collinear with a and b: the pair plus its small suborbits."""
    subs = two_point_suborbits(g, a, b)
    if policy.mode == "degree":
        degrees = policy.small_orbit_degrees
        if len(degrees) != len(subs):
            raise ValueError("one degree per suborbit expected")
        small = [o for o, d in zip(subs, degrees) if d <= 1]
        if len(small) == len(subs):
            raise NoGap("every suborbit has degree <= 1")
    else:
        cut, ratio = split_suborbits([o.size for o in subs], policy.gamma)
        if cut is None or ratio < policy.gamma:
            raise NoGap(f"largest suborbit size ratio {ratio} is below {policy.gamma}")
        small = subs[:cut]
    if not small:
        raise DegenerateLine("no small suborbits; the line would be just {a, b}")
    line = sorted({a, b}.union(*(o.points for o in small)))
    if len(line) > policy.max_line_fraction * g.degree:
        raise LineTooLarge(f"line of {len(line)} points in a set of {g.degree}")
    return tuple(line)


def line_orbit(g, line):
    """All images of a point set under ``g``, as sorted tuples in sorted order."""
    start = tuple(sorted(line))
    seen = {start}
    frontier = [start]
    gens = g.raw_generators
    for cur in frontier:
        for s in gens:
            img = tuple(sorted(s[x] for x in cur))
            if img not in seen:
                seen.add(img)
                frontier.append(img)
    return sorted(seen)


def build_geometry(g, policy=DEFAULT_POLICY, samples=20, seed=0):
    """Translate one detected line around ``g`` and cross-check a sample of pairs."""
    m = g.degree
    if m < 3:
        raise NotTwoTransitive("need at least 3 points")
    first = detect_line(g, 0, 1, policy)
    lines = line_orbit(g, first)
    geom = IncidenceGeometry(m, lines)
    rng = random.Random(seed)
    for _ in range(samples):
        a, b = rng.sample(range(m), 2)
        direct = detect_line(g, a, b, policy)
        if geom.line_index(direct) is None:
            raise InconsistentLines(f"line through {a}, {b} detected as {direct}, not a translate")
    return geom
