from fractions import Fraction
from itertools import combinations, product

import pytest

from conftest import distinct_tuples, enumerate_group, raw, tuple_orbits
from genrec.errors import DegenerateLine, DimensionTooSmall, LineTooLarge, NoGap
from genrec.geomrec import (
    IncidenceGeometry,
    LineDetectionPolicy,
    build_geometry,
    check_quadrilateral,
    check_unique_line,
    check_veblen,
    detect_line,
    frame_stabilizer_report,
    general_position_tuple,
    infer_dimension,
    pencil_quotient_report,
    run_axioms,
    split_suborbits,
    two_point_suborbits,
    veblen_holds,
)
from genrec.gfgeom import builtin_group, gf_construct
from genrec.permcore import minimal_block_systems, pointwise_stabilizer

_GEOMS = {}


def geometry(family, n, q=None):
    key = (family, n, q)
    if key not in _GEOMS:
        b = builtin_group(family, n, q)
        _GEOMS[key] = (b, build_geometry(b.group))
    return _GEOMS[key]


def affine_lines(q, d):
    """Native oracle: lines {v + t w} of AG(d, q) as sorted index tuples."""
    F = gf_construct(q)
    vecs = list(product(range(q), repeat=d))
    index = {v: i for i, v in enumerate(vecs)}
    out = set()
    for v in vecs:
        for w in vecs:
            if any(w):
                out.add(tuple(sorted(index[tuple(F.add(a, F.mul(t, b)) for a, b in zip(v, w))]
                                     for t in range(q))))
    return sorted(out)


def brute_suborbits(g, a, b):
    # oracle: orbits of the enumerated two-point stabilizer
    stab = [e for e in enumerate_group(raw(g), g.degree) if e[a] == a and e[b] == b]
    rest = [x for x in range(g.degree) if x not in (a, b)]
    return sorted(len(o) for o in tuple_orbits(stab, [(x,) for x in rest]))


def test_two_point_suborbits_examples(pg23):
    g = pg23.group
    for a, b in [(0, 1), (3, 11), (12, 5)]:
        sizes = [o.size for o in two_point_suborbits(g, a, b)]
        assert sizes == [2, 9] == brute_suborbits(g, a, b)
    sym7 = builtin_group("sym", 7).group
    assert [o.size for o in two_point_suborbits(sym7, 2, 5)] == [5]
    agl = builtin_group("agl", 3, 2).group
    assert [o.size for o in two_point_suborbits(agl, 0, 1)] == [6] == brute_suborbits(agl, 0, 1)


def test_detect_line_matches_native(pg23):
    g, space = pg23.group, pg23.space
    for a, b in combinations(range(13), 2):
        assert detect_line(g, a, b) == space.line_through(a, b)


def test_detect_line_negative_controls():
    with pytest.raises(NoGap):
        detect_line(builtin_group("sym", 7).group, 0, 1)
    with pytest.raises(DegenerateLine):
        detect_line(builtin_group("agl", 3, 2).group, 0, 1)


def test_line_too_large():
    g = builtin_group("pgl", 2, 3).group
    policy = LineDetectionPolicy(max_line_fraction=Fraction(1, 4))
    with pytest.raises(LineTooLarge):
        detect_line(g, 0, 1, policy)


def test_split_suborbits():
    assert split_suborbits([2, 9], 3) == (1, Fraction(9, 2))
    assert split_suborbits([5], 3) == (0, Fraction(5, 2))
    assert split_suborbits([6], 3) == (0, Fraction(3))


def test_policy_validation():
    with pytest.raises(ValueError):
        LineDetectionPolicy(gamma=Fraction(1))
    with pytest.raises(ValueError):
        LineDetectionPolicy(mode="degree")
    policy = LineDetectionPolicy(mode="degree", small_orbit_degrees=(1, 2))
    g = builtin_group("pgl", 2, 3).group
    assert detect_line(g, 0, 1, policy) == detect_line(g, 0, 1)


@pytest.mark.parametrize("n, q", [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3)])
def test_reconstruction_equals_native(n, q):
    b, geom = geometry("pgl", n, q)
    assert geom.lines == b.space.lines
    expect = (q ** (n + 1) - 1) * (q ** n - 1) // ((q * q - 1) * (q - 1))
    assert len(geom.lines) == expect
    assert geom.line_sizes() == [q + 1]
    assert all(len(p) == (q ** n - 1) // (q - 1) for p in geom.pencils)
    assert infer_dimension(geom) == (n, q)
    assert geom.validate() == []


def test_pg32_has_35_lines():
    b, geom = geometry("pgl", 3, 2)
    assert len(geom.lines) == 35 == (15 * 14 // 2) // (3 * 2 // 2)


def test_affine_plane_reconstruction():
    b, geom = geometry("agl", 2, 3)
    assert geom.lines == affine_lines(3, 2)
    assert len(geom.lines) == 12
    assert infer_dimension(geom) is None


@pytest.mark.parametrize("family, n, q", [("pgl", 2, 3), ("pgl", 3, 2), ("psl", 2, 4),
                                          ("agl", 2, 3), ("pgammal", 2, 4)])
def test_equivariance(family, n, q):
    b, geom = geometry(family, n, q)
    lines = set(geom.lines)
    for s in raw(b.group):
        for line in geom.lines:
            assert tuple(sorted(s[x] for x in line)) in lines


@pytest.mark.parametrize("n, q", [(2, 3), (2, 4), (3, 2)])
def test_line_minus_point_is_block(n, q):
    b, geom = geometry("pgl", n, q)
    g = b.group
    a = 0
    line = detect_line(g, a, 1)
    block = set(line) - {a}
    gx = pointwise_stabilizer(g, [a])
    images = {tuple(sorted(s[x] for x in block)) for s in raw(gx)}
    for img in images:
        assert set(img) == block or not set(img) & block
    # the block system generated by it is the pencil partition
    systems = minimal_block_systems(gx, range(1, g.degree))
    pencil = sorted(sorted(set(geom.lines[i]) - {a}) for i in geom.pencils[a])
    assert pencil in systems
    assert sorted(block) in pencil


@pytest.mark.parametrize("q", [3, 4, 5])
def test_triangle_dichotomy(q):
    b, geom = geometry("pgl", 2, q)
    m = len(geom.lines)
    classes = tuple_orbits(raw(b.group), distinct_tuples(m, 3))
    assert len(classes) == 2
    sizes = sorted(len(c) for c in classes)
    collinear = next(c for c in classes if geom.collinear(*next(iter(c))))
    triangles = next(c for c in classes if c is not collinear)
    assert all(geom.collinear(*t) for t in collinear)
    assert not any(geom.collinear(*t) for t in triangles)
    assert len(triangles) == sizes[-1] > sizes[0]


def test_unique_line():
    _, geom = geometry("pgl", 2, 3)
    rep = check_unique_line(geom)
    assert rep.passed and rep.checked == 78
    _, geom = geometry("agl", 2, 3)
    assert check_unique_line(geom).passed
    bad = IncidenceGeometry(7, builtin_group("pgl", 2, 2).space.lines + [(0, 1, 3)])
    rep = check_unique_line(bad)
    assert not rep.passed
    a, b = rep.witness
    assert sum(1 for line in bad.lines if a in line and b in line) != 1


def _recheck_veblen_witness(geom, w):
    x, y, z, w_ = w
    sets = [set(line) for line in geom.lines]

    def line(a, b):
        return next(s for s in sets if a in s and b in s)

    assert len({x, y, z, w_}) == 4
    assert line(x, y) != line(z, w_) and line(x, y) & line(z, w_)
    assert line(y, z) != line(x, w_) and not line(y, z) & line(x, w_)


@pytest.mark.parametrize("n, q", [(2, 3), (2, 4), (3, 2)])
def test_veblen_passes_exhaustively(n, q):
    _, geom = geometry("pgl", n, q)
    rep = check_veblen(geom)
    assert rep.passed and rep.exhaustive and rep.checked > 0


def test_veblen_counts_pg23():
    _, geom = geometry("pgl", 2, 3)
    # every ordered pair of distinct lines meets; configurations avoid the meet twice
    k = 4
    count = 13 * 12 * (k * (k - 1) * k * (k - 1) - 4 * (k - 1) * (k - 1))
    assert check_veblen(geom).checked == count


def test_veblen_fails_on_affine_plane():
    _, geom = geometry("agl", 2, 3)
    rep = check_veblen(geom)
    assert not rep.passed and rep.witness is not None
    _recheck_veblen_witness(geom, rep.witness)
    assert not veblen_holds(geom, *rep.witness)


def test_veblen_sampling_is_seeded():
    _, geom = geometry("agl", 2, 3)
    a = check_veblen(geom, budget=500, seed=4)
    b = check_veblen(geom, budget=500, seed=4)
    assert a == b
    assert not a.exhaustive and a.seed == 4
    assert not a.passed
    _recheck_veblen_witness(geom, a.witness)
    _, geom = geometry("pgl", 2, 4)
    rep = check_veblen(geom, budget=1000, seed=1)
    assert rep.passed and not rep.exhaustive and rep.checked == 1000


def test_quadrilateral():
    _, geom = geometry("pgl", 2, 3)
    rep = check_quadrilateral(geom)
    assert rep.passed
    quad = rep.example
    assert not any(geom.collinear(*t) for t in combinations(quad, 3))
    one_line = IncidenceGeometry(5, [range(5)])
    rep = check_quadrilateral(one_line)
    assert not rep.passed and rep.witness == (0, 1, 2, 3, 4)


def test_quadrilateral_pg32_exhaustive():
    _, geom = geometry("pgl", 3, 2)
    assert check_quadrilateral(geom).passed
    found = [t for t in combinations(range(15), 4)
             if not any(geom.collinear(*s) for s in combinations(t, 3))]
    assert found


def test_axiom_failure_has_witness():
    _, geom = geometry("agl", 2, 3)
    suite = run_axioms(geom)
    assert suite.unique_line.passed and suite.quadrilateral.passed
    assert not suite.veblen.passed and not suite.passed
    d = suite.veblen.to_dict()
    assert d["pass"] is False and len(d["witness"]) == 4


def test_pencil_pg23_every_point(pg23):
    g = pg23.group
    _, geom = geometry("pgl", 2, 3)
    elements = enumerate_group(raw(g), 13)
    for x in range(13):
        rep = pencil_quotient_report(g, geom, x)
        assert rep.pencil_size == 4
        assert rep.block_sizes == [3]
        assert rep.stabilizer_order == 432
        assert rep.image_order == 24 and rep.kernel_order == 18
        assert rep.passed
    # oracle for x = 0: induced action of the enumerated stabilizer on the pencil
    pencil = [frozenset(geom.lines[i]) for i in geom.pencils[0]]
    induced = {tuple(pencil.index(frozenset(e[y] for y in line)) for line in pencil)
               for e in elements if e[0] == 0}
    assert len(induced) == 24


def test_pencil_pg32_and_affine():
    b, geom = geometry("pgl", 3, 2)
    rep = pencil_quotient_report(b.group, geom, 4)
    assert rep.pencil_size == 7 and rep.image_order == 168
    b, geom = geometry("agl", 2, 3)
    rep = pencil_quotient_report(b.group, geom, 0)
    assert rep.pencil_size == 4 and rep.block_sizes == [2]


def test_general_position(pg23):
    g = pg23.group
    _, geom = geometry("pgl", 2, 3)
    gp3 = general_position_tuple(g, geom, 3)
    assert gp3.orbit_size == 1404 == 13 * 12 * 11 - 312
    assert not geom.collinear(*gp3.points)
    assert gp3.sanity_ok
    gp4 = general_position_tuple(g, geom, 4)
    assert gp4.orbit_size == 5616
    assert general_position_tuple(g, geom, 2).orbit_size == 13 * 12
    with pytest.raises(DimensionTooSmall):
        general_position_tuple(g, geom, 5)


@pytest.mark.parametrize("q", [3, 4, 5])
def test_frame_report(q):
    b, geom = geometry("pgl", 2, q)
    rep = frame_stabilizer_report(b.group, geom)
    assert rep.frame_stabilizer_order == 1
    assert rep.torus_order == (q - 1) ** 2 and rep.torus_abelian
    assert sorted(rep.torus_fixed_points) == sorted(rep.frame[:3])
    assert rep.checks["sharp"] == rep.checks["torus"] == rep.checks["fixed_points"] == "pass"
    assert rep.checks["self_centralizing"] == "pass"
    assert rep.passed


def test_frame_report_degenerate_q2():
    b, geom = geometry("pgl", 3, 2)
    rep = frame_stabilizer_report(b.group, geom)
    assert rep.checks["sharp"] == "pass"
    for key in ("torus", "fixed_points", "self_centralizing"):
        assert rep.checks[key] == "degenerate"
    assert rep.passed


def test_frame_report_skips_over_budget():
    b, geom = geometry("pgl", 2, 3)
    rep = frame_stabilizer_report(b.group, geom, centralizer_budget=100)
    assert rep.checks["self_centralizing"] == "skip"
