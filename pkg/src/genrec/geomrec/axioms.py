"""Projective-space axiom checks with re-checkable witnesses."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

DEFAULT_VEBLEN_BUDGET = 2_000_000


def _one_based(points):
    return None if points is None else [x + 1 for x in points]


@dataclass
class AxiomReport:
    name: str
    passed: bool
    witness: tuple | None = None
    checked: int = 0
    exhaustive: bool = True
    seed: int | None = None
    detail: str = ""
    example: tuple | None = None

    def to_dict(self):
        return {
            "name": self.name,
            "pass": self.passed,
            "witness": _one_based(self.witness),
            "checked": self.checked,
            "exhaustive": self.exhaustive,
            "seed": self.seed,
            "detail": self.detail,
            "example": _one_based(self.example),
        }


def check_unique_line(geom):
    """Every unordered pair of distinct points lies on exactly one line."""
    counts = {}
    for line in geom.lines:
        for i, a in enumerate(line):
            for b in line[i + 1:]:
                counts[(a, b)] = counts.get((a, b), 0) + 1
    checked = 0
    for a in range(geom.m):
        for b in range(a + 1, geom.m):
            checked += 1
            c = counts.get((a, b), 0)
            if c != 1:
                return AxiomReport("unique_line", False, (a, b), checked,
                                   detail=f"pair lies on {c} lines")
    return AxiomReport("unique_line", True, checked=checked)


def veblen_holds(geom, x, y, z, w):
    """Conclusion of Veblen's axiom for one configuration."""
    l1 = geom.line_through(y, z)
    l2 = geom.line_through(x, w)
    return l1 == l2 or bool(geom.line_sets[l1] & geom.line_sets[l2])


def _config_count(k1, k2):
    # ordered (x, y) on one line, (z, w) on another, meeting in one point,
    # minus the choices that use the meet twice
    return k1 * (k1 - 1) * k2 * (k2 - 1) - 4 * (k1 - 1) * (k2 - 1)


def check_veblen(geom, budget=DEFAULT_VEBLEN_BUDGET, seed=0):
    """Veblen's axiom over configurations (x, y, z, w).

    Configurations are distinct points with lines xy and zw different but
    meeting; the check is that lines yz and xw meet.  Exhaustive up to
    ``budget`` configurations, otherwise ``budget`` uniform samples.
    Assumes the unique-line check passed.
    """
    lines = geom.lines
    sets = geom.line_sets
    nl = len(lines)
    meet = [[bool(sets[i] & sets[j]) for j in range(nl)] for i in range(nl)]
    m = geom.m
    pl = [[-1] * m for _ in range(m)]
    for (a, b), idx in geom.pair_to_line.items():
        pl[a][b] = pl[b][a] = idx
    pairs = [(i, j) for i in range(nl) for j in range(nl) if i != j and meet[i][j]]
    weights = [_config_count(len(lines[i]), len(lines[j])) for i, j in pairs]
    total = sum(weights)

    if total <= budget:
        checked = 0
        for i, j in pairs:
            L1, L2 = lines[i], lines[j]
            for x in L1:
                for y in L1:
                    if y == x:
                        continue
                    row_y, row_x = pl[y], pl[x]
                    for z in L2:
                        if z == x or z == y:
                            continue
                        lyz = row_y[z]
                        mrow = meet[lyz]
                        for w in L2:
                            if w == z or w == x or w == y:
                                continue
                            checked += 1
                            lxw = row_x[w]
                            if lyz != lxw and not mrow[lxw]:
                                return AxiomReport("veblen", False, (x, y, z, w), checked,
                                                   detail="lines yz and xw do not meet")
        return AxiomReport("veblen", True, checked=checked)

    rng = random.Random(seed)
    picks = rng.choices(range(len(pairs)), weights=weights, k=budget)
    for n_done, p in enumerate(picks, 1):
        L1, L2 = lines[pairs[p][0]], lines[pairs[p][1]]
        while True:
            x, y = rng.sample(L1, 2)
            z, w = rng.sample(L2, 2)
            if len({x, y, z, w}) == 4:
                break
        lyz, lxw = pl[y][z], pl[x][w]
        if lyz != lxw and not meet[lyz][lxw]:
            return AxiomReport("veblen", False, (x, y, z, w), n_done, exhaustive=False,
                               seed=seed, detail="lines yz and xw do not meet")
    return AxiomReport("veblen", True, checked=budget, exhaustive=False, seed=seed,
                       detail=f"sampled {budget} of {total} configurations")


def _no_three_collinear(geom, pts):
    return not any(geom.collinear(a, b, c) for a, b, c in combinations(pts, 3))


def check_quadrilateral(geom):
    """Four points, no three collinear (greedy first, then exhaustive)."""
    m = geom.m
    if m < 4:
        return AxiomReport("quadrilateral", False, tuple(range(m)), 0,
                           detail="fewer than four points")
    chosen = [0, 1]
    for _ in range(2):
        nxt = next((c for c in range(m) if c not in chosen
                    and _no_three_collinear(geom, chosen + [c])), None)
        if nxt is None:
            break
        chosen.append(nxt)
    if len(chosen) == 4:
        return AxiomReport("quadrilateral", True, checked=1, example=tuple(chosen))
    checked = 0
    for quad in combinations(range(m), 4):
        checked += 1
        if _no_three_collinear(geom, quad):
            return AxiomReport("quadrilateral", True, checked=checked, example=quad)
    # witness: the whole point set, in which no quadrilateral exists
    return AxiomReport("quadrilateral", False, tuple(range(m)), checked,
                       detail="no four points with no three collinear")


@dataclass
class AxiomSuite:
    unique_line: AxiomReport
    veblen: AxiomReport | None = None
    quadrilateral: AxiomReport | None = None

    @property
    def passed(self):
        reports = [self.unique_line, self.veblen, self.quadrilateral]
        return all(r is not None and r.passed for r in reports)


def run_axioms(geom, budget=DEFAULT_VEBLEN_BUDGET, seed=0):
    """Unique-line, then Veblen (only if lines are unique), then quadrilateral."""
    ul = check_unique_line(geom)
    veb = check_veblen(geom, budget, seed) if ul.passed else None
    quad = check_quadrilateral(geom)
    return AxiomSuite(ul, veb, quad)
