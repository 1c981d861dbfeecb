"""Permutations as image tuples on {0, ..., m-1}.

Products act left to right: ``(p * r)(x) == r(p(x))``.  Text I/O uses
1-based cycle notation, internal indices are 0-based.
"""

from __future__ import annotations

import re

from ..errors import DegreeMismatch, MalformedCycle, OutOfRange, RepeatedPoint


def mul(p, r):
    """Raw left-to-right product of two image tuples."""
    return tuple(map(r.__getitem__, p))


def inv(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def is_identity(p):
    return all(i == x for i, x in enumerate(p))


class Permutation:
    """An immutable bijection of ``range(degree)``."""

    __slots__ = ("images",)

    def __init__(self, images, check=True):
        images = tuple(images)
        if check and sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images!r}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def identity(cls, degree):
        return cls(range(degree), check=False)

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, x):
        return self.images[x]

    def __mul__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return compose(self, other)

    def __pow__(self, k):
        result = Permutation.identity(self.degree)
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self):
        return Permutation(inv(self.images), check=False)

    def is_identity(self):
        return is_identity(self.images)

    def support(self):
        return [i for i, x in enumerate(self.images) if i != x]

    def cycles(self):
        """Nontrivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cycle.append(x)
                seen.add(x)
                x = self.images[x]
            out.append(tuple(cycle))
        return out

    def to_cycle_string(self):
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cycles)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other):
        return self.images < other.images

    def __repr__(self):
        return f"Permutation({self.to_cycle_string()!r}, degree={self.degree})"


def compose(p, r):
    """Return the permutation ``x -> r(p(x))``."""
    if p.degree != r.degree:
        raise DegreeMismatch(f"degrees differ: {p.degree} != {r.degree}")
    return Permutation(mul(p.images, r.images), check=False)


def inverse(p):
    return p.inverse()


_TOKEN = re.compile(r"\s*(?:(\()|(\))|(\d+)|(,)|(\S))")


def parse_permutation(text, degree):
    """Parse 1-based disjoint-cycle notation such as ``"(1 2 3)(4 5)"``.

    Commas between points are accepted as separators.  Unnamed points are
    fixed; ``"()"`` and the empty string give the identity.
    """
    if degree < 1:
        raise ValueError("degree must be at least 1")
    images = list(range(degree))
    seen = set()
    cycle = None
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        col = m.start(m.lastindex) + 1
        pos = m.end()
        lpar, rpar, num, comma, junk = m.groups()
        if lpar:
            if cycle is not None:
                raise MalformedCycle("nested '('", col)
            cycle = []
        elif rpar:
            if cycle is None:
                raise MalformedCycle("unbalanced ')'", col)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a] = b
            cycle = None
        elif num:
            if cycle is None:
                raise MalformedCycle("point outside a cycle", col)
            point = int(num)
            if point < 1 or point > degree:
                raise OutOfRange(f"point {point} not in 1..{degree}", col)
            if point - 1 in seen:
                raise RepeatedPoint(f"point {point} appears twice", col)
            seen.add(point - 1)
            cycle.append(point - 1)
        elif comma:
            if cycle is None:
                raise MalformedCycle("',' outside a cycle", col)
        else:
            raise MalformedCycle(f"unexpected token {junk!r}", col)
    if cycle is not None:
        raise MalformedCycle("unbalanced '('", len(text) + 1)
    return Permutation(images, check=False)
