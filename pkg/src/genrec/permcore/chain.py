"""Base and strong generating sets built by deterministic Schreier-Sims.

Everything here works on raw image tuples; :mod:`genrec.permcore.group`
wraps the results in :class:`~genrec.permcore.perm.Permutation` objects.
"""

from __future__ import annotations

from math import prod

from .perm import inv, is_identity, mul


class Level:
    """One level of a stabilizer chain.

    ``transversal[b]`` maps the base point to ``b``; ``inverses[b]`` is its
    inverse.  ``gens`` generate the stabilizer of all earlier base points.
    """

    __slots__ = ("point", "gens", "transversal", "inverses", "orbit")

    def __init__(self, point, degree, gens=()):
        ident = tuple(range(degree))
        self.point = point
        self.gens = []
        self.transversal = {point: ident}
        self.inverses = {point: ident}
        self.orbit = [point]
        for g in gens:
            self.add_gen(g)

    def add_gen(self, g):
        """Append a generator and extend the orbit in place."""
        self.gens.append(g)
        trans = self.transversal
        new = []
        for b in self.orbit:
            c = g[b]
            if c not in trans:
                trans[c] = mul(trans[b], g)
                new.append(c)
        i = 0
        while i < len(new):
            b = new[i]
            i += 1
            for s in self.gens:
                c = s[b]
                if c not in trans:
                    trans[c] = mul(trans[b], s)
                    new.append(c)
        for c in new:
            self.orbit.append(c)
            self.inverses[c] = inv(trans[c])

    def conjugated(self, u, u_inv):
        """This level conjugated by ``u`` (base point moves to ``u[point]``)."""
        out = Level.__new__(Level)
        out.point = u[self.point]
        out.gens = [mul(mul(u_inv, g), u) for g in self.gens]
        out.transversal = {}
        out.inverses = {}
        out.orbit = []
        for b in self.orbit:
            c = u[b]
            out.orbit.append(c)
            t = mul(mul(u_inv, self.transversal[b]), u)
            out.transversal[c] = t
            out.inverses[c] = inv(t)
        return out


class StabilizerChain:
    """A verified chain ``G = G^(0) >= G^(1) >= ... >= G^(k) = 1``."""

    def __init__(self, degree, levels):
        self.degree = degree
        self.levels = levels

    @property
    def base(self):
        return [lv.point for lv in self.levels]

    def order(self):
        return prod(len(lv.orbit) for lv in self.levels)

    def suborder(self, start):
        """Order of the stabilizer of the first ``start`` base points."""
        return prod(len(lv.orbit) for lv in self.levels[start:])

    def sift(self, g, start=0):
        """Strip ``g`` through levels ``start..``; return (residue, level)."""
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            b = g[lv.point]
            if b not in lv.inverses:
                return g, i
            g = mul(g, lv.inverses[b])
        return g, len(self.levels)

    def contains(self, g):
        h, j = self.sift(g)
        return j == len(self.levels) and is_identity(h)

    def strong_generators(self, start=0):
        seen = set()
        out = []
        for lv in self.levels[start:]:
            for g in lv.gens:
                if g not in seen:
                    seen.add(g)
                    out.append(g)
        return out

    def elements(self):
        """Yield every group element once, as raw tuples."""
        ident = tuple(range(self.degree))
        reps = [list(lv.transversal.values()) for lv in self.levels]

        def walk(level, acc):
            if level < 0:
                yield acc
                return
            for u in reps[level]:
                yield from walk(level - 1, mul(acc, u))

        yield from walk(len(reps) - 1, ident)

    def find_element(self, src, dst):
        """Find g with g[src[i]] == dst[i]; ``src`` must be a base prefix.

        Returns None when no element maps the tuple that way.
        """
        g = tuple(range(self.degree))
        # Build g = h_k ... h_0 from the top: at level i we need an element of
        # G^(i) sending base[i] to dst[i] pulled back through what is fixed.
        word = []
        target = list(dst)
        for i, lv in enumerate(self.levels[:len(src)]):
            b = target[i]
            if b not in lv.transversal:
                return None
            u = lv.transversal[b]
            u_inv = lv.inverses[b]
            word.append(u)
            target = [u_inv[x] for x in target]
        for u in reversed(word):
            g = mul(g, u)
        return g


def _first_moved(g):
    for i, x in enumerate(g):
        if i != x:
            return i
    return None


def schreier_sims(degree, gens, base_hint=(), known_order=None):
    """Build a :class:`StabilizerChain` for the group generated by ``gens``.

    The base starts with ``base_hint`` (duplicates dropped).  When
    ``known_order`` is given the construction stops as soon as the product
    of the basic orbit lengths reaches it; that product never exceeds the
    true order, so equality certifies the chain.
    """
    gens = [tuple(g) for g in gens if not is_identity(g)]
    base = []
    for b in base_hint:
        if b not in base:
            base.append(b)
    for g in gens:
        if all(g[b] == b for b in base):
            base.append(_first_moved(g))
    levels = []
    for i, b in enumerate(base):
        fixed = base[:i]
        levels.append(Level(b, degree, [g for g in gens if all(g[x] == x for x in fixed)]))
    chain = StabilizerChain(degree, levels)
    if not gens:
        return chain
    checked = [set() for _ in levels]

    def done():
        return known_order is not None and chain.order() == known_order

    i = len(levels) - 1
    while i >= 0 and not done():
        lv = levels[i]
        restart = False
        for b in lv.orbit:
            u = lv.transversal[b]
            for si, s in enumerate(lv.gens):
                key = (b, si)
                if key in checked[i]:
                    continue
                c = s[b]
                sg = mul(mul(u, s), lv.inverses[c])
                if is_identity(sg):
                    checked[i].add(key)
                    continue
                h, j = chain.sift(sg, i + 1)
                if j == len(levels):
                    if is_identity(h):
                        checked[i].add(key)
                        continue
                    levels.append(Level(_first_moved(h), degree))
                    checked.append(set())
                for lvl in range(i + 1, j + 1):
                    levels[lvl].add_gen(h)
                    # old verdicts at lvl stay valid: groups only grow
                i = j
                restart = True
                break
            if restart:
                break
        if not restart:
            i -= 1
    return chain


def change_base_prefix(chain, prefix):
    """Return a chain for the same group whose base begins with ``prefix``.

    Levels already matching are shared; a point in the current basic orbit
    is reached by conjugating the tail, anything else triggers Schreier-Sims
    on the (smaller) stabilizer with the tail's known order.
    """
    degree = chain.degree
    levels = list(chain.levels)
    for i, p in enumerate(prefix):
        if i < len(levels) and levels[i].point == p:
            continue
        if i < len(levels) and p in levels[i].transversal:
            u = levels[i].transversal[p]
            u_inv = levels[i].inverses[p]
            levels = levels[:i] + [lv.conjugated(u, u_inv) for lv in levels[i:]]
            continue
        if i >= len(levels) or not levels[i].gens:
            # the stabilizer is already trivial here
            levels = levels[:i] + [Level(p, degree)] + levels[i:]
            continue
        tail = StabilizerChain(degree, levels[i:])
        sub = schreier_sims(degree, tail.strong_generators(), [p], tail.order())
        levels = levels[:i] + sub.levels
    return StabilizerChain(degree, levels)
