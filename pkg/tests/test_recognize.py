import random

import pytest

from genrec.errors import CompletionFailed, NotACollineation, NotProjectiveParameters
from genrec.geomrec import IncidenceGeometry, build_geometry
from genrec.gfgeom import builtin_group, matrix_permutation, pgl_order, projective_space
from genrec.gfgeom.linalg import identity, normalize_matrix
from genrec.permcore import PermGroup, Permutation, parse_permutation
from genrec.recognize import (
    DEGENERATE,
    NOT_PROJECTIVE,
    PROJECTIVE_PGL,
    PROPER_SUBGROUP,
    SEMILINEAR,
    completions,
    coordinatize,
    matrix_product,
    recognize,
    represent_generator,
    represent_permutation,
)

_CACHE = {}


def setup(family, n, q):
    key = (family, n, q)
    if key not in _CACHE:
        b = builtin_group(family, n, q)
        geom = build_geometry(b.group)
        _CACHE[key] = (b, geom, coordinatize(geom))
    return _CACHE[key]


def assert_incidence_preserving(geom, coord):
    space = coord.space
    native = set(space.lines)
    assert sorted(coord.images) == list(range(len(space.points)))
    images = {tuple(sorted(coord.images[x] for x in line)) for line in geom.lines}
    assert images == native


def test_native_plane_round_trip():
    space = projective_space(3, 2)
    geom = IncidenceGeometry(len(space.points), space.lines)
    coord = coordinatize(geom)
    assert_incidence_preserving(geom, coord)
    # the coordinatization is itself a collineation of PG(2, 3)
    M, j = represent_permutation(space, coord.images)
    assert j == 0
    assert list(matrix_permutation(space, M).images) == coord.images


def test_pg32_coordinatization():
    b, geom, coord = setup("pgl", 3, 2)
    assert len(coord.images) == 15 and len(geom.lines) == 35
    assert_incidence_preserving(geom, coord)


def test_affine_plane_has_no_projective_parameters():
    geom = build_geometry(builtin_group("agl", 2, 3).group)
    with pytest.raises(NotProjectiveParameters):
        coordinatize(geom)


def test_scrambled_plane_fails_completion():
    space = projective_space(3, 2)
    lines = [list(line) for line in space.lines]
    # move one point between two lines: counts stay, incidence breaks
    a, b = lines[0], lines[5]
    x = next(p for p in a if p not in b)
    y = next(p for p in b if p not in a and p != x)
    a[a.index(x)], b[b.index(y)] = y, x
    geom = IncidenceGeometry(13, lines)
    with pytest.raises(CompletionFailed):
        coordinatize(geom)


@pytest.mark.parametrize("n, q", [(2, 2), (2, 3), (2, 5), (2, 7), (3, 2), (3, 3)])
def test_prime_fields_never_branch(n, q):
    b, geom, coord = setup("pgl", n, q)
    assert coord.branches == 0
    assert len(list(completions(geom))) == 1


def test_gf4_completions_differ_by_frobenius():
    b, geom, coord = setup("pgl", 2, 4)
    found = list(completions(geom))
    assert len(found) == 2
    c1, c2 = found
    for c in found:
        assert_incidence_preserving(geom, c)
    # c2 after c1^-1 fixes the standard frame and is x -> x^2
    relabel = [0] * len(c1.images)
    for x in range(len(c1.images)):
        relabel[c1.images[x]] = c2.images[x]
    M, j = represent_permutation(c1.space, relabel)
    assert j == 1
    assert M == identity(c1.space.field, 3)


@pytest.mark.parametrize("q", [4, 8, 9])
def test_completion_count_is_field_degree(q):
    b, geom, _ = setup("pgl", 2, q)
    assert len(list(completions(geom))) == b.space.field.e


def test_represent_identity_and_generators():
    b, geom, coord = setup("pgl", 2, 3)
    M, j = represent_generator(coord, Permutation.identity(13))
    assert (M, j) == (identity(coord.space.field, 3), 0)
    for s in b.group.generators:
        M, j = represent_generator(coord, s)
        assert j == 0
        assert list(matrix_permutation(coord.space, M).images) == coord.conjugate(s)


def test_frobenius_generator_exponent():
    b, geom, coord = setup("pgammal", 2, 4)
    frob = b.group.generators[-1]
    assert not frob.is_identity()
    M, j = represent_generator(coord, frob)
    assert j == 1
    assert list(matrix_permutation(coord.space, M, 1).images) == coord.conjugate(frob)


def test_not_a_collineation():
    b, geom, coord = setup("pgl", 2, 3)
    swap = parse_permutation("(1 2)", 13)
    with pytest.raises(NotACollineation):
        represent_generator(coord, swap)


@pytest.mark.parametrize("family, n, q", [("pgl", 2, 3), ("pgl", 2, 4), ("pgammal", 2, 4),
                                          ("pgl", 3, 2), ("psl", 2, 4)])
def test_matrices_multiply(family, n, q):
    b, geom, coord = setup(family, n, q)
    F = coord.space.field
    gens = list(b.group.generators)
    mats = [represent_generator(coord, s) for s in gens]
    rng = random.Random(11)
    for _ in range(100):
        word = [rng.randrange(len(gens)) for _ in range(rng.randint(1, 8))]
        perm = gens[word[0]]
        acc = mats[word[0]]
        for i in word[1:]:
            perm = perm * gens[i]
            acc = matrix_product(F, acc, mats[i])
        M, j = represent_generator(coord, perm)
        assert (normalize_matrix(F, acc[0]), acc[1]) == (M, j)


@pytest.mark.parametrize("n, q", [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3)])
def test_recognize_round_trip(n, q):
    b = builtin_group("pgl", n, q)
    rep = recognize(b.group)
    assert rep.verdict == PROJECTIVE_PGL
    assert (rep.n, rep.q) == (n, q)
    assert rep.order == rep.pgl_order == pgl_order(n, q)
    assert all(j == 0 for _, j in rep.generators)
    for s, (M, j) in zip(b.group.generators, rep.generators):
        perm = rep.coordinatization.conjugate(s)
        assert list(matrix_permutation(rep.coordinatization.space, M, j).images) == perm


def test_recognize_subgroup_and_semilinear():
    rep = recognize(builtin_group("psl", 2, 4).group)
    assert rep.verdict == PROPER_SUBGROUP and rep.index == 3
    assert (rep.order, rep.pgl_order) == (20160, 60480)
    rep = recognize(builtin_group("pgammal", 2, 4).group)
    assert rep.verdict == SEMILINEAR
    assert [j for _, j in rep.generators][-1] == 1


def test_recognize_rejections():
    rep = recognize(builtin_group("sym", 7).group)
    assert rep.verdict == NOT_PROJECTIVE and rep.stage == "line_detection"
    assert rep.reason.startswith("NoGap")
    rep = recognize(builtin_group("agl", 3, 2).group)
    assert rep.stage == "line_detection" and rep.reason.startswith("DegenerateLine")
    rep = recognize(builtin_group("agl", 2, 3).group)
    assert rep.stage == "axioms" and not rep.axioms.veblen.passed
    assert len(rep.axioms.veblen.witness) == 4
    cyclic = PermGroup([parse_permutation("(1 2 3 4 5 6 7)", 7)])
    assert recognize(cyclic).stage == "two_transitivity"
    split = PermGroup([parse_permutation("(1 2 3)", 5)])
    assert recognize(split).stage == "transitivity"
    assert recognize(builtin_group("sym", 2).group).verdict == DEGENERATE


def test_report_json_is_exact():
    rep = recognize(builtin_group("pgl", 3, 2).group)
    data = rep.to_dict()

    def walk(x):
        assert not isinstance(x, float)
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        elif isinstance(x, (list, tuple)):
            for v in x:
                walk(v)

    walk(data)
    assert "timing_us" not in data
    assert all(isinstance(v, int) for v in rep.to_dict(timing=True)["timing_us"].values())
    assert rep.frame.checks["torus"] == "degenerate"
