"""Coordinatize a reconstructed projective space and identify the group.

A frame of n+2 points in general position is sent to the standard frame
of PG(n, q).  Joins of mapped points and meets of mapped lines then force
further images; when that stalls, an unmapped point on a mapped line is
tried against each free point of the image line, with backtracking.
Generators are then read back as semilinear maps x -> M x^(p^j).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations

from .errors import (
    CompletionFailed,
    GenrecError,
    NotABlockSystem,
    NotACollineation,
    NotProjectiveParameters,
)
from .geomrec import (
    DEFAULT_POLICY,
    DEFAULT_VEBLEN_BUDGET,
    IncidenceGeometry,
    build_geometry,
    frame_stabilizer_report,
    infer_dimension,
    pencil_quotient_report,
    run_axioms,
)
from .gfgeom import normalize, pgl_order, projective_space
from .gfgeom.linalg import mat_mul, mat_vec, normalize_matrix, solve, transpose
from .permcore import Permutation, orbit_of_tuple

PROJECTIVE_PGL = "ProjectivePGL"
PROPER_SUBGROUP = "ProperCollineationSubgroup"
SEMILINEAR = "ProjectiveSemilinear"
NOT_PROJECTIVE = "NotProjective"
DEGENERATE = "Degenerate"
VERDICTS = (PROJECTIVE_PGL, PROPER_SUBGROUP, SEMILINEAR, NOT_PROJECTIVE, DEGENERATE)


def _span(geom, pts):
    """Smallest subspace containing ``pts`` (closed under joining lines)."""
    span = set(pts)
    todo = list(span)
    while todo:
        x = todo.pop()
        for y in list(span):
            if y == x:
                continue
            li = geom.line_through(x, y)
            if li is None:
                continue
            for z in geom.line_sets[li]:
                if z not in span:
                    span.add(z)
                    todo.append(z)
    return span


def find_frame(geom, n):
    """Lexicographically first n+2 points with no n+1 of them in a hyperplane."""
    base = []
    for _ in range(n + 1):
        span = _span(geom, base) if base else set()
        nxt = next((x for x in range(geom.m) if x not in span), None)
        if nxt is None:
            raise CompletionFailed(f"points span less than {n} dimensions")
        base.append(nxt)
    hyperplanes = [_span(geom, sub) for sub in combinations(base, n)]
    last = next((x for x in range(geom.m)
                 if all(x not in h for h in hyperplanes)), None)
    if last is None:
        raise CompletionFailed("no point completes the frame")
    return tuple(base) + (last,)


def standard_frame(space):
    n = space.n
    pts = [tuple(int(i == j) for j in range(n + 1)) for i in range(n + 1)]
    pts.append((1,) * (n + 1))
    return tuple(space.index[p] for p in pts)


class _Conflict(Exception):
    pass


class _State:
    """Partial incidence map from the source geometry into PG(n, q)."""

    def __init__(self, src, tgt):
        self.src = src
        self.tgt = tgt
        self.f = [-1] * src.m
        self.used = [False] * tgt.m
        self.line_map = {}

    def copy(self):
        other = _State.__new__(_State)
        other.src, other.tgt = self.src, self.tgt
        other.f = list(self.f)
        other.used = list(self.used)
        other.line_map = dict(self.line_map)
        return other

    def assign(self, x, y):
        points, lines = [(x, y)], []
        while points or lines:
            if points:
                self._set_point(*points.pop(), lines)
            else:
                self._set_line(*lines.pop(), points)

    def _set_point(self, x, y, lines):
        if self.f[x] == y:
            return
        if self.f[x] != -1 or self.used[y]:
            raise _Conflict
        self.f[x] = y
        self.used[y] = True
        src, tgt, f = self.src, self.tgt, self.f
        for li in src.pencils[x]:
            if li in self.line_map:
                if y not in tgt.line_sets[self.line_map[li]]:
                    raise _Conflict
                continue
            other = next((z for z in src.lines[li] if z != x and f[z] != -1), None)
            if other is not None:
                lines.append((li, tgt.line_through(y, f[other])))

    def _set_line(self, li, ti, points):
        if li in self.line_map:
            if self.line_map[li] != ti:
                raise _Conflict
            return
        src, tgt, f = self.src, self.tgt, self.f
        tset = tgt.line_sets[ti]
        for z in src.lines[li]:
            if f[z] != -1 and f[z] not in tset:
                raise _Conflict
        sset = src.line_sets[li]
        for lj, tj in list(self.line_map.items()):
            meet = sset & src.line_sets[lj]
            if not meet:
                continue
            tmeet = tset & tgt.line_sets[tj]
            if len(tmeet) != 1:
                raise _Conflict
            (z,), (w,) = meet, tmeet
            if f[z] == -1:
                points.append((z, w))
            elif f[z] != w:
                raise _Conflict
        self.line_map[li] = ti

    def branch_point(self):
        """An unmapped point on a mapped line, with that line's image."""
        for li, ti in sorted(self.line_map.items()):
            for z in self.src.lines[li]:
                if self.f[z] == -1:
                    return z, ti
        return None


@dataclass
class Coordinatization:
    """Incidence-preserving bijection from a geometry onto PG(n, q)."""

    n: int
    q: int
    frame: tuple
    images: list
    branches: int = 0
    space: object = field(default=None, repr=False)

    def __post_init__(self):
        if self.space is None:
            self.space = projective_space(self.q, self.n)
        self.preimages = [0] * len(self.images)
        for x, y in enumerate(self.images):
            self.preimages[y] = x

    def coords(self, x):
        return self.space.points[self.images[x]]

    def conjugate(self, g):
        """The permutation of PG(n, q) corresponding to ``g``."""
        g = g.images if isinstance(g, Permutation) else g
        return [self.images[g[x]] for x in self.preimages]

    def to_dict(self):
        return {
            "n": self.n,
            "q": self.q,
            "frame": [x + 1 for x in self.frame],
            "branches": self.branches,
            "map": [self.space.label(y) for y in self.images],
        }


def _check_parameters(geom):
    dims = infer_dimension(geom)
    if dims is None or dims[0] < 2:
        raise NotProjectiveParameters(
            f"{geom.m} points with line sizes {geom.line_sizes()} fit no PG(n, q) with n >= 2")
    return dims


def completions(geom, frame=None, stats=None):
    """Yield every incidence-preserving bijection that sends ``frame`` to the standard frame.

    ``stats["branches"]`` counts branch points visited so far.
    """
    n, q = _check_parameters(geom)
    space = projective_space(q, n)
    tgt = IncidenceGeometry(len(space.points), space.lines)
    frame = tuple(frame) if frame is not None else find_frame(geom, n)
    if len(frame) != n + 2:
        raise ValueError(f"a frame of PG({n}, {q}) has {n + 2} points")
    stats = {} if stats is None else stats
    stats.setdefault("branches", 0)

    start = _State(geom, tgt)
    try:
        for x, y in zip(frame, standard_frame(space)):
            start.assign(x, y)
    except _Conflict:
        return

    spans = {}

    def hyperplane(g, pts):
        key = (id(g), frozenset(pts))
        if key not in spans:
            spans[key] = frozenset(_span(g, pts))
        return spans[key]

    hyper_size = (q ** n - 1) // (q - 1)

    def meet_hyperplanes(state):
        # a mapped line meets the span of n mapped points in one forced point
        mapped = [x for x in range(geom.m) if state.f[x] != -1]
        for sub in combinations(mapped, n):
            h = hyperplane(geom, sub)
            if len(h) != hyper_size:
                continue
            th = hyperplane(tgt, [state.f[x] for x in sub])
            for li, ti in state.line_map.items():
                meet = geom.line_sets[li] & h
                if len(meet) != 1:
                    continue
                (z,) = meet
                if state.f[z] != -1:
                    continue
                tmeet = tgt.line_sets[ti] & th
                if len(tmeet) != 1:
                    raise _Conflict
                state.assign(z, next(iter(tmeet)))
                return True
        return False

    def settle(state):
        try:
            while n >= 3 and state.branch_point() is not None and meet_hyperplanes(state):
                pass
        except _Conflict:
            return False
        return True

    def search(state):
        if not settle(state):
            return
        nxt = state.branch_point()
        if nxt is None:
            if -1 not in state.f and all(
                    tgt.line_index([state.f[z] for z in line]) is not None for line in geom.lines):
                yield state.f
            return
        stats["branches"] += 1
        x, ti = nxt
        for y in tgt.lines[ti]:
            if state.used[y]:
                continue
            trial = state.copy()
            try:
                trial.assign(x, y)
            except _Conflict:
                continue
            yield from search(trial)

    for images in search(start):
        yield Coordinatization(n, q, frame, list(images), stats["branches"], space)


def coordinatize(geom, frame=None):
    """First full coordinatization found from ``frame`` (or a canonical frame)."""
    stats = {}
    for coord in completions(geom, frame, stats):
        return coord
    raise CompletionFailed("no incidence-preserving completion of the frame exists")


def _frame_matrix(F, space, h):
    # the standard frame is fixed by every field automorphism, so the
    # matrix part is determined by the frame images alone
    n = space.n
    frame = standard_frame(space)
    cols = [space.points[h[i]] for i in frame[:n + 1]]
    unit = space.points[h[frame[n + 1]]]
    W = transpose(cols)
    c = solve(F, W, list(unit))
    if c is None or 0 in c:
        return None
    return [[F.mul(W[r][k], c[k]) for k in range(n + 1)] for r in range(n + 1)]


def _reproduces(space, M, j, h):
    F = space.field
    for i, pt in enumerate(space.points):
        v = [F.frobenius(x, j) for x in pt] if j else pt
        if space.index[normalize(F, mat_vec(F, M, v))] != h[i]:
            return False
    return True


def represent_permutation(space, h):
    """(M, j) with x -> M x^(p^j) equal to ``h`` on PG(n, q), preferring j = 0."""
    F = space.field
    M = _frame_matrix(F, space, h)
    if M is not None:
        for j in range(F.e):
            if _reproduces(space, M, j, h):
                return normalize_matrix(F, M), j
    raise NotACollineation("no semilinear map reproduces the permutation")


def represent_generator(coord, g):
    """Matrix and Frobenius exponent of ``g`` in the coordinates of ``coord``."""
    return represent_permutation(coord.space, coord.conjugate(g))


def matrix_product(F, a, b):
    """Matrix of the semilinear product ``a`` then ``b``, each given as (M, j)."""
    (Ma, ja), (Mb, jb) = a, b
    twisted = [[F.frobenius(x, jb) for x in row] for row in Ma]
    return normalize_matrix(F, mat_mul(F, Mb, twisted)), (ja + jb) % F.e


@dataclass
class RecognizeOptions:
    policy: object = DEFAULT_POLICY
    veblen_budget: int = DEFAULT_VEBLEN_BUDGET
    seed: int = 0
    centralizer_budget: int = 10**6
    line_samples: int = 20


@dataclass
class RecognitionReport:
    verdict: str
    stage: str | None = None
    reason: str = ""
    degree: int = 0
    n: int | None = None
    q: int | None = None
    order: int | None = None
    pgl_order: int | None = None
    generators: list = field(default_factory=list)
    coordinatization: Coordinatization | None = None
    axioms: object = None
    geometry: object = None
    pencil: object = None
    frame: object = None
    seed: int = 0
    timing: dict = field(default_factory=dict)

    @property
    def index(self):
        if self.order is None or self.pgl_order is None or self.verdict not in (
                PROJECTIVE_PGL, PROPER_SUBGROUP):
            return None
        return self.pgl_order // self.order

    def to_dict(self, timing=False):
        ax = self.axioms
        out = {
            "verdict": self.verdict,
            "stage": self.stage,
            "reason": self.reason,
            "degree": self.degree,
            "n": self.n,
            "q": self.q,
            "order": self.order,
            "pgl_order": self.pgl_order,
            "index": self.index,
            "seed": self.seed,
            "lines": None if self.geometry is None else len(self.geometry.lines),
            "axioms": None if ax is None else {
                "unique_line": ax.unique_line.to_dict(),
                "veblen": None if ax.veblen is None else ax.veblen.to_dict(),
                "quadrilateral": ax.quadrilateral.to_dict(),
            },
            "pencil": None if self.pencil is None else self.pencil.to_dict(),
            "frame_stabilizer": None if self.frame is None else self.frame.to_dict(),
            "coordinatization": (None if self.coordinatization is None
                                 else self.coordinatization.to_dict()),
            "generators": [{"matrix": M, "frobenius": j} for M, j in self.generators],
        }
        if timing:
            out["timing_us"] = {k: int(v * 1e6) for k, v in self.timing.items()}
        return out

    def summary(self):
        head = f"verdict: {self.verdict}"
        if self.n is not None:
            head += f"  (n={self.n}, q={self.q})"
        lines = [head, f"degree: {self.degree}"]
        if self.order is not None:
            lines.append(f"order: {self.order}")
        if self.pgl_order is not None:
            lines.append(f"|PGL_{self.n + 1}({self.q})|: {self.pgl_order}")
        if self.index is not None:
            lines.append(f"index: {self.index}")
        if self.stage:
            lines.append(f"failed at: {self.stage} ({self.reason})")
        if self.generators:
            exps = [j for _, j in self.generators]
            lines.append(f"generators recovered: {len(exps)}, frobenius exponents {exps}")
        if self.coordinatization is not None:
            lines.append(f"coordinatization branches: {self.coordinatization.branches}")
        return "\n".join(lines)


def recognize(g, options=None):
    """Decide whether ``g`` is PGL_{n+1}(q) in its action on PG(n, q)."""
    opts = options or RecognizeOptions()
    report = RecognitionReport(NOT_PROJECTIVE, degree=g.degree, seed=opts.seed)
    clock = time.perf_counter()

    def lap(name):
        nonlocal clock
        now = time.perf_counter()
        report.timing[name] = now - clock
        clock = now

    def reject(stage, reason):
        report.verdict, report.stage, report.reason = NOT_PROJECTIVE, stage, reason
        return report

    if g.degree < 3:
        report.verdict, report.reason = DEGENERATE, "fewer than three points"
        return report
    report.order = g.order()
    if not g.is_transitive():
        return reject("transitivity", "group is not transitive")
    m = g.degree
    if orbit_of_tuple(g, (0, 1)).size != m * (m - 1):
        return reject("two_transitivity", "group is not 2-transitive")
    lap("transitivity")

    try:
        geom = build_geometry(g, opts.policy, samples=opts.line_samples, seed=opts.seed)
    except GenrecError as exc:
        return reject("line_detection", f"{type(exc).__name__}: {exc}")
    report.geometry = geom
    lap("geometry")

    suite = run_axioms(geom, opts.veblen_budget, opts.seed)
    report.axioms = suite
    lap("axioms")
    if not suite.passed:
        failed = next(r for r in (suite.unique_line, suite.veblen, suite.quadrilateral)
                      if r is not None and not r.passed)
        return reject("axioms", f"{failed.name} fails at {[x + 1 for x in failed.witness]}")

    dims = infer_dimension(geom)
    if dims is None or dims[0] < 2:
        return reject("parameters", "point and line counts fit no PG(n, q) with n >= 2")
    n, q = dims
    report.n, report.q = n, q
    report.pgl_order = pgl_order(n, q)

    try:
        report.pencil = pencil_quotient_report(g, geom, 0)
    except NotABlockSystem as exc:
        return reject("pencil", str(exc))
    if not report.pencil.among_minimal_systems:
        return reject("pencil", "pencil partition is not a minimal block system")
    report.frame = frame_stabilizer_report(g, geom, opts.centralizer_budget, opts.seed)
    lap("structure")

    try:
        coord = coordinatize(geom)
    except GenrecError as exc:
        return reject("coordinatize", f"{type(exc).__name__}: {exc}")
    report.coordinatization = coord
    lap("coordinatize")

    try:
        report.generators = [represent_generator(coord, s) for s in g.generators]
    except NotACollineation as exc:
        return reject("represent", str(exc))
    lap("represent")

    report.stage, report.reason = None, ""
    if any(j for _, j in report.generators):
        report.verdict = SEMILINEAR
    elif report.order == report.pgl_order:
        report.verdict = PROJECTIVE_PGL
    else:
        report.verdict = PROPER_SUBGROUP
    return report


__all__ = [
    "DEGENERATE", "NOT_PROJECTIVE", "PROJECTIVE_PGL", "PROPER_SUBGROUP", "SEMILINEAR",
    "VERDICTS", "Coordinatization", "RecognitionReport", "RecognizeOptions",
    "completions", "coordinatize", "find_frame", "matrix_product", "recognize",
    "represent_generator", "represent_permutation", "standard_frame",
]
