"""Rank as q-degree: exact counting polynomials across a family of fields.

Orbit sizes are measured as products of fibres (the orbit length of each
new point under the stabilizer of the earlier ones).  Each fibre is fitted
on its own, so a degree-8 group order needs only enough samples for the
degree-2 fibres, and the product is then checked against every measured
count, held-out fields included.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

from . import poly
from .errors import (
    HoldoutMismatch,
    InsufficientSamples,
    NonPolynomialFamily,
)
from .geomrec import detect_line, greedy_max_tuple, two_point_suborbits
from .gfgeom import builtin_group, prime_power

STATISTICS = (
    "points", "group_order", "line_size", "collinear_triples", "triangles",
    "generic_orbit", "complement",
)


@dataclass(frozen=True)
class QSample:
    q: int
    count: int


@dataclass
class QFit:
    coeffs: tuple
    degree: int | None
    fit_qs: list
    holdout_qs: list
    holdout_ok: bool

    def __call__(self, q):
        return poly.evaluate(self.coeffs, q)

    def to_dict(self):
        return {
            "polynomial": poly.to_string(self.coeffs),
            "coefficients": [rational(c) for c in self.coeffs],
            "degree": self.degree,
            "fit_q": self.fit_qs,
            "holdout_q": self.holdout_qs,
            "holdout_ok": self.holdout_ok,
        }


def rational(x):
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def _as_samples(samples):
    out = []
    for s in samples:
        out.append(s if isinstance(s, QSample) else QSample(*s))
    out.sort(key=lambda s: s.q)
    qs = [s.q for s in out]
    if len(set(qs)) != len(qs):
        raise ValueError("q values must be distinct")
    for q in qs:
        prime_power(q)
    return out


def qdegree_fit(samples, holdout=2, strict=False):
    """Minimal-degree exact interpolant on all but the ``holdout`` largest q.

    A failed holdout is reported through ``holdout_ok``; with ``strict``
    it raises HoldoutMismatch instead.
    """
    samples = _as_samples(samples)
    if holdout < 0:
        raise ValueError("holdout must be non-negative")
    if len(samples) < holdout + 1:
        raise InsufficientSamples(f"{len(samples)} samples cannot leave {holdout} held out")
    fit = samples[:len(samples) - holdout]
    rest = samples[len(samples) - holdout:]
    coeffs = poly.interpolate([s.q for s in fit], [s.count for s in fit])
    ok = all(poly.evaluate(coeffs, s.q) == s.count for s in rest)
    if strict and not ok:
        raise HoldoutMismatch("counts are not polynomial in q on this grid")
    return QFit(coeffs, poly.degree(coeffs), [s.q for s in fit], [s.q for s in rest], ok)


# measurements


def _family(family, n, q):
    return builtin_group(family, n, q).group


def chain_fibres(g, t):
    """Fibre sizes of the tuple ``t`` of distinct points."""
    chain = g.chain(tuple(t))
    return [len(chain.levels[i].orbit) for i in range(len(t))]


def order_fibres(g):
    """Greedy fibres continued until the stabilizer is trivial."""
    k = 1
    while True:
        t, fibres = greedy_max_tuple(g, k)
        chain = g.chain(t)
        if chain.suborder(k) == 1:
            return fibres
        k += 1


def _parse_stat(name, n):
    base, _, k = name.partition(":")
    if base not in STATISTICS:
        raise ValueError(f"unknown statistic {name!r}")
    if base in ("generic_orbit", "complement"):
        return base, int(k) if k else n + 2
    return base, None


def measure(family, n, q, statistics):
    """Fibre lists for each statistic of one group (a picklable worker)."""
    g = _family(family, n, q)
    m = g.degree
    out = {}
    line = None
    for name in statistics:
        base, k = _parse_stat(name, n)
        if base == "points":
            out[name] = [m]
        elif base == "group_order":
            out[name] = order_fibres(g)
        elif base in ("line_size", "collinear_triples", "triangles"):
            if line is None:
                line = detect_line(g, 0, 1)
            if base == "line_size":
                out[name] = [len(line)]
            elif base == "collinear_triples":
                c = min(set(line) - {0, 1})
                out[name] = chain_fibres(g, (0, 1, c))
            else:
                c = two_point_suborbits(g, 0, 1)[-1].representative
                out[name] = chain_fibres(g, (0, 1, c))
        elif base in ("generic_orbit", "complement"):
            out[name] = greedy_max_tuple(g, k)[1]
    return q, out


def _measure_all(family, n, q_list, statistics, threads):
    args = [(family, n, q, tuple(statistics)) for q in q_list]
    if threads and threads > 1 and len(q_list) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(measure, *zip(*args)))
    else:
        results = [measure(*a) for a in args]
    return dict(results)


@dataclass
class StatisticFit:
    name: str
    samples: list
    factor_fits: list
    coeffs: tuple
    degree: int | None
    holdout_ok: bool

    def to_dict(self):
        return {
            "name": self.name,
            "samples": [{"q": s.q, "count": s.count} for s in self.samples],
            "polynomial": poly.to_string(self.coeffs),
            "coefficients": [rational(c) for c in self.coeffs],
            "degree": self.degree,
            "holdout_ok": self.holdout_ok,
            "factors": [f.to_dict() for f in self.factor_fits],
        }


def _fit_fibres(name, q_list, fibres_by_q, holdout):
    width = max(len(fibres_by_q[q]) for q in q_list)
    padded = {q: fibres_by_q[q] + [1] * (width - len(fibres_by_q[q])) for q in q_list}
    fits = [qdegree_fit([(q, padded[q][j]) for q in q_list], holdout) for j in range(width)]
    coeffs = poly.product(f.coeffs for f in fits)
    samples = [QSample(q, prod(padded[q])) for q in q_list]
    ok = all(f.holdout_ok for f in fits) and all(
        poly.evaluate(coeffs, s.q) == s.count for s in samples)
    return StatisticFit(name, samples, fits, coeffs, poly.degree(coeffs), ok)


def _complement_fit(name, k, points_fit, generic_fit):
    coeffs = poly.sub(poly.power(points_fit.coeffs, k), generic_fit.coeffs)
    samples = [QSample(p.q, p.count ** k - o.count)
               for p, o in zip(points_fit.samples, generic_fit.samples)]
    ok = points_fit.holdout_ok and generic_fit.holdout_ok and all(
        poly.evaluate(coeffs, s.q) == s.count for s in samples)
    factors = points_fit.factor_fits + generic_fit.factor_fits
    return StatisticFit(name, samples, factors, coeffs, poly.degree(coeffs), ok)


@dataclass
class RankProfile:
    family: str
    n: int
    q_list: list
    holdout: int
    statistics: dict = field(default_factory=dict)

    def degrees(self):
        return {name: fit.degree for name, fit in self.statistics.items()}

    @property
    def holdout_ok(self):
        return all(fit.holdout_ok for fit in self.statistics.values())

    def to_dict(self):
        return {
            "family": self.family,
            "n": self.n,
            "q": self.q_list,
            "holdout": self.holdout,
            "holdout_ok": self.holdout_ok,
            "statistics": {k: v.to_dict() for k, v in self.statistics.items()},
        }

    def table(self):
        names = list(self.statistics)
        width = max(len(x) for x in names + ["statistic"])
        head = f"{'statistic':<{width}}  deg  ok  " + "  ".join(f"q={q}" for q in self.q_list)
        rows = [head, "-" * len(head)]
        for name in names:
            fit = self.statistics[name]
            counts = "  ".join(str(s.count) for s in fit.samples)
            deg = "-" if fit.degree is None else str(fit.degree)
            rows.append(f"{name:<{width}}  {deg:>3}  {'y' if fit.holdout_ok else 'n':>2}  {counts}")
            rows.append(f"{'':<{width}}  = {poly.to_string(fit.coeffs)}")
        return "\n".join(rows)


DEFAULT_STATISTICS = ("points", "group_order", "line_size", "collinear_triples",
                      "triangles", "generic_orbit", "complement")


def default_statistics(family, n):
    """All statistics, minus the line-based ones on a projective line."""
    if family in ("pgl", "psl", "pgammal") and n == 1:
        return tuple(s for s in DEFAULT_STATISTICS
                     if s not in ("line_size", "collinear_triples", "triangles"))
    return DEFAULT_STATISTICS


def rank_profile(family, n, q_list, statistics=None, holdout=2, threads=None):
    """Measure each statistic at every q and fit its q-polynomial exactly."""
    q_list = sorted(q_list)
    if statistics is None:
        statistics = default_statistics(family, n)
    for q in q_list:
        prime_power(q)
    statistics = list(statistics)
    needed = list(statistics)
    for name in statistics:
        base, k = _parse_stat(name, n)
        if base == "complement" and "points" not in needed:
            needed.append("points")
    measured = _measure_all(family, n, q_list, needed, threads)
    fits = {}
    for name in needed:
        base, k = _parse_stat(name, n)
        fibres = {q: measured[q][name] for q in q_list}
        fits[name] = _fit_fibres(name, q_list, fibres, holdout)
    out = RankProfile(family, n, q_list, holdout)
    for name in statistics:
        base, k = _parse_stat(name, n)
        if base == "complement":
            out.statistics[name] = _complement_fit(name, k, fits["points"], fits[name])
        else:
            out.statistics[name] = fits[name]
    return out


@dataclass
class KTransitivity:
    k: int
    orbit: StatisticFit
    complement: StatisticFit
    generic: bool

    def to_dict(self):
        return {
            "k": self.k,
            "orbit_degree": self.orbit.degree,
            "orbit_leading_coefficient": rational(poly.leading(self.orbit.coeffs)),
            "complement_degree": self.complement.degree,
            "generically_transitive": self.generic,
            "orbit": self.orbit.to_dict(),
            "complement": self.complement.to_dict(),
        }


@dataclass
class ExtremalityReport:
    family: str
    n: int
    q_list: list
    rank: int
    levels: list
    generic_degree: int

    @property
    def extremal(self):
        return bool(self.levels) and self.levels[0].generic and self.generic_degree == self.rank + 2

    def to_dict(self):
        return {
            "family": self.family,
            "n": self.n,
            "q": self.q_list,
            "rank_of_points": self.rank,
            "degree_of_generic_transitivity": self.generic_degree,
            "extremal": self.extremal,
            "levels": [lv.to_dict() for lv in self.levels],
        }


def extremality_certificate(family, n, q_list, holdout=1, max_k=None, threads=None):
    """Degree of generic transitivity from exact fibre polynomials.

    Generically k-transitive means the complement of the largest orbit on
    k-tuples has q-degree below k times the q-degree of the point count.
    """
    q_list = sorted(q_list)
    # the point rank decides how far to go, so it is measured first
    measured = _measure_all(family, n, q_list, ["points"], threads)
    pts = _fit_fibres("points", q_list, {q: v["points"] for q, v in measured.items()}, holdout)
    if not pts.holdout_ok:
        raise NonPolynomialFamily("point counts are not polynomial in q")
    rank = pts.degree
    top = max_k or rank + 3
    names = [f"generic_orbit:{k}" for k in range(1, top + 1)]
    measured = _measure_all(family, n, q_list, names, threads)
    levels = []
    for k, name in enumerate(names, 1):
        orbit_fit = _fit_fibres(name, q_list, {q: measured[q][name] for q in q_list}, holdout)
        comp = _complement_fit(f"complement:{k}", k, pts, orbit_fit)
        if not (orbit_fit.holdout_ok and comp.holdout_ok):
            raise NonPolynomialFamily(f"orbit sizes on {k}-tuples are not polynomial in q")
        generic = comp.degree is None or comp.degree < k * rank
        levels.append(KTransitivity(k, orbit_fit, comp, generic))
    degree = 0
    for lv in levels:
        if not lv.generic:
            break
        degree = lv.k
    return ExtremalityReport(family, n, q_list, rank, levels, degree)


def suborbit_degrees(family, n, q_list, holdout=2):
    """q-degrees of the sorted two-point suborbit sizes, for degree-mode detection."""
    q_list = sorted(q_list)
    sizes = {q: [o.size for o in two_point_suborbits(_family(family, n, q), 0, 1)] for q in q_list}
    widths = {len(v) for v in sizes.values()}
    if len(widths) != 1:
        raise NonPolynomialFamily("suborbit count varies with q")
    degrees = []
    for j in range(widths.pop()):
        fit = qdegree_fit([(q, sizes[q][j]) for q in q_list], holdout)
        if not fit.holdout_ok:
            raise NonPolynomialFamily("suborbit sizes are not polynomial in q")
        degrees.append(fit.degree)
    return tuple(degrees)


__all__ = [
    "ExtremalityReport", "KTransitivity", "QFit", "QSample", "RankProfile",
    "StatisticFit", "default_statistics", "extremality_certificate", "measure", "qdegree_fit",
    "rank_profile", "suborbit_degrees",
]
