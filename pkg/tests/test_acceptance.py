"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` to see the verdict lines.
"""

import json
import subprocess
import sys
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

from conftest import enumerate_group, raw
from genrec import poly
from genrec.geomrec import (
    build_geometry,
    check_quadrilateral,
    check_unique_line,
    check_veblen,
    frame_stabilizer_report,
    pencil_quotient_report,
)
from genrec.gfgeom import builtin_group, matrix_permutation, pgl_order
from genrec.recognize import PROJECTIVE_PGL, recognize
from genrec.rankfit import extremality_certificate, rank_profile

TESTS = Path(__file__).parent
PROPERTY_FILES = ["test_perm.py", "test_groups.py", "test_gfgeom.py",
                  "test_geomrec.py", "test_rankfit.py", "test_recognize.py"]


@contextmanager
def criterion(capsys, number, title):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        status = "PASS"
    finally:
        took = time.perf_counter() - start
        with capsys.disabled():
            print(f"\ncriterion {number}: {status}  {title}  ({took:.1f} s)")


def test_criterion_1_geometry_reconstruction(capsys):
    with criterion(capsys, 1, "line set equals native PG(2,q), axioms pass, q=3,4,5"):
        for q in (3, 4, 5):
            start = time.perf_counter()
            b = builtin_group("pgl", 2, q)
            geom = build_geometry(b.group)
            assert geom.lines == b.space.lines
            assert len(geom.lines) == q * q + q + 1
            assert all(len(line) == q + 1 for line in geom.lines)
            assert check_unique_line(geom).passed
            quad = check_quadrilateral(geom)
            assert quad.passed
            veb = check_veblen(geom, budget=2_000_000)
            assert veb.passed and veb.checked <= 2_000_000
            if q in (3, 4):
                assert veb.exhaustive
            assert time.perf_counter() - start <= 10


@pytest.mark.parametrize("n, q, order", [(3, 2, 20160), (2, 5, 372000)])
def test_criterion_2_recognition(capsys, n, q, order):
    with criterion(capsys, 2, f"recognize pgl({n},{q}) -> ProjectivePGL of order {order}"):
        start = time.perf_counter()
        b = builtin_group("pgl", n, q)
        rep = recognize(b.group)
        assert rep.verdict == PROJECTIVE_PGL
        assert rep.order == order == pgl_order(n, q)
        coord = rep.coordinatization
        for s, (M, j) in zip(b.group.generators, rep.generators):
            assert list(matrix_permutation(coord.space, M, j).images) == coord.conjugate(s)
        assert time.perf_counter() - start <= 60


def test_criterion_3_rank_arithmetic(capsys):
    with criterion(capsys, 3, "rank profile degrees 2/8/1/5/6 with 2 holdouts"):
        prof = rank_profile("pgl", 2, [2, 3, 4, 5, 7, 8, 9, 11, 13], holdout=2)
        n = 2
        expect = {"points": 2, "group_order": n * (n + 2), "line_size": 1,
                  "collinear_triples": 2 * n + 1, "triangles": 3 * n}
        for name, deg in expect.items():
            fit = prof.statistics[name]
            assert fit.degree == deg, name
            assert fit.holdout_ok, name
            for factor in fit.factor_fits:
                assert factor.holdout_qs == [11, 13]
            assert all(poly.evaluate(fit.coeffs, s.q) == s.count for s in fit.samples)


def test_criterion_4_extremality(capsys):
    with criterion(capsys, 4, "pgl(n=2) generically 4-transitive; psl and agl not extremal"):
        cert = extremality_certificate("pgl", 2, [2, 3, 4, 5, 7, 8, 9, 11, 13])
        assert cert.generic_degree == 4 and cert.extremal
        k4, k5 = cert.levels[3], cert.levels[4]
        assert k4.complement.degree == 7 < 8
        assert k5.orbit.degree == 8 < 10 and not k5.generic
        psl = extremality_certificate("psl", 2, [4, 7, 13, 16])
        assert not psl.extremal
        agl = extremality_certificate("agl", 2, [3, 4, 5, 7])
        assert not agl.extremal


def test_criterion_5_sharpness_fpa_torus(capsys):
    with criterion(capsys, 5, "frame stabilizer trivial, torus (q-1)^2, FPA, self-centralizing"):
        for q in (3, 4, 5):
            b = builtin_group("pgl", 2, q)
            geom = build_geometry(b.group)
            rep = frame_stabilizer_report(b.group, geom)
            assert rep.frame_stabilizer_order == 1
            assert rep.torus_order == (q - 1) ** 2 and rep.torus_abelian
            assert sorted(rep.torus_fixed_points) == sorted(rep.frame[:3])
            if q in (3, 4):
                assert rep.checks["self_centralizing"] == "pass"
        b = builtin_group("pgl", 3, 2)
        rep = frame_stabilizer_report(b.group, build_geometry(b.group))
        assert rep.frame_stabilizer_order == 1
        assert all(rep.checks[k] == "degenerate"
                   for k in ("torus", "fixed_points", "self_centralizing"))
        assert rep.passed


def test_criterion_6_pencil_quotient(capsys):
    with criterion(capsys, 6, "pgl(2,3) pencils: 4 lines, 4 blocks of 3, image order 24"):
        b = builtin_group("pgl", 2, 3)
        geom = build_geometry(b.group)
        for x in range(13):
            rep = pencil_quotient_report(b.group, geom, x)
            assert rep.pencil_size == 4
            assert rep.is_block_system and rep.block_sizes == [3]
            assert rep.image_order == 24
        # oracle at x = 0: induced action of the enumerated stabilizer on the pencil
        pencil = [frozenset(geom.lines[i]) for i in geom.pencils[0]]
        induced = {tuple(pencil.index(frozenset(e[y] for y in line)) for line in pencil)
                   for e in enumerate_group(raw(b.group), 13) if e[0] == 0}
        assert len(induced) == 24


def cli(*args):
    proc = subprocess.run([sys.executable, "-m", "genrec.cli", *args],
                          capture_output=True, text=True, timeout=120)
    return proc.returncode, json.loads(proc.stdout)


def test_criterion_7_negative_controls(capsys):
    with criterion(capsys, 7, "Sym(7), AGL_3(2), AGL_2(3), psl(2,4) rejected with exit 1"):
        code, data = cli("recognize", "--builtin", "sym", "--n", "7")
        assert code == 1 and data["verdict"] == "NotProjective"
        assert data["reason"].startswith("NoGap")

        code, data = cli("recognize", "--builtin", "agl", "--n", "3", "--q", "2")
        assert code == 1 and data["verdict"] == "NotProjective"
        assert data["reason"].startswith("DegenerateLine")

        code, data = cli("recognize", "--builtin", "agl", "--n", "2", "--q", "3")
        assert code == 1 and data["verdict"] == "NotProjective" and data["stage"] == "axioms"
        assert data["lines"] == 12
        x, y, z, w = (p - 1 for p in data["axioms"]["veblen"]["witness"])
        geom = build_geometry(builtin_group("agl", 2, 3).group)
        sets = [set(line) for line in geom.lines]

        def line(a, b):
            return next(s for s in sets if a in s and b in s)

        assert line(x, y) & line(z, w) and line(x, y) != line(z, w)
        # yz and xw are distinct parallel lines
        assert line(y, z) != line(x, w) and not line(y, z) & line(x, w)

        code, data = cli("recognize", "--builtin", "psl", "--n", "2", "--q", "4")
        assert code == 1 and data["verdict"] == "ProperCollineationSubgroup"
        assert data["index"] == 3 and data["order"] * 3 == data["pgl_order"]


def test_criterion_8_property_suites(capsys):
    with criterion(capsys, 8, "property suites green within 5 minutes"):
        start = time.perf_counter()
        proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider",
                               *[str(TESTS / f) for f in PROPERTY_FILES]],
                              capture_output=True, text=True, cwd=TESTS.parent, timeout=600)
        took = time.perf_counter() - start
        assert proc.returncode == 0, proc.stdout[-2000:]
        assert took <= 300
