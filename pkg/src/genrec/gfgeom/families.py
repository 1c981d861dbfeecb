"""Builtin permutation groups: PGL, PSL, PGammaL, AGL, Sym and Alt.

Projective families act on the canonical point list of PG(n, q); ``agl``
acts on the q**n vectors of GF(q)**n in lexicographic order; ``sym`` and
``alt`` act on ``n`` points.

Generator scheme for GL(d, q): a Singer cycle (companion matrix of the
first primitive polynomial of degree d) and the transvection I + E[0][1].
If those fail to reach the expected order the elementary scheme
(diag(w, 1, ..., 1) plus adjacent elementary transvections) is appended;
``BuiltinGroup.scheme`` records which one was used.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import gcd, prod

from ..errors import BadParams, UnknownFamily
from ..permcore import Permutation, PermGroup
from .field import gf_construct, prime_factors, is_prime_power
from .linalg import identity, mat_pow, mat_vec
from .projective import normalize, projective_space

FAMILIES = ("pgl", "psl", "pgammal", "agl", "sym", "alt")


@dataclass
class BuiltinGroup:
    family: str
    params: dict
    group: PermGroup
    labels: list
    expected_order: int
    scheme: str
    space: object = None
    coords: list | None = None
    matrices: list = field(default_factory=list)

    @property
    def name(self):
        return self.group.name


def pgl_order(n, q):
    """|PGL_{n+1}(q)|."""
    return prod(q ** (n + 1) - q ** i for i in range(n + 1)) // (q - 1)


def gl_order(d, q):
    return prod(q ** d - q ** i for i in range(d))


def psl_order(n, q):
    return pgl_order(n, q) // gcd(n + 1, q - 1)


def pg_point_count(n, q):
    return (q ** (n + 1) - 1) // (q - 1)


def companion(F, coeffs):
    """Companion matrix of x^d + c[d-1] x^(d-1) + ... + c[0]."""
    d = len(coeffs)
    C = [[0] * d for _ in range(d)]
    for i in range(1, d):
        C[i][i - 1] = 1
    for i in range(d):
        C[i][d - 1] = F.neg(coeffs[i])
    return C


def _mat_order_is(F, M, N):
    d = len(M)
    ident = identity(F, d)
    if mat_pow(F, M, N) != ident:
        return False
    return all(mat_pow(F, M, N // r) != ident for r in prime_factors(N))


@lru_cache(maxsize=None)
def singer_polynomial(q, d):
    """Lexicographically first monic primitive polynomial of degree d over GF(q)."""
    F = gf_construct(q)
    N = q ** d - 1
    for tail in product(range(q), repeat=d):
        coeffs = list(reversed(tail))
        if coeffs[0] == 0:
            continue
        if _mat_order_is(F, companion(F, coeffs), N):
            return tuple(coeffs)
    raise AssertionError("no primitive polynomial found")


def elementary(F, d, i, j, a):
    M = identity(F, d)
    M[i][j] = a
    return M


def gl_generators(F, d, scheme="singer"):
    """Matrix generators of GL(d, q) for the named scheme."""
    if scheme == "singer":
        gens = [companion(F, list(singer_polynomial(F.q, d)))]
        if d >= 2:
            gens.append(elementary(F, d, 0, 1, 1))
        return gens
    gens = [identity(F, d)]
    gens[0][0][0] = F.primitive
    for i in range(d - 1):
        gens.append(elementary(F, d, i, i + 1, 1))
        gens.append(elementary(F, d, i + 1, i, 1))
    return gens


def sl_generators(F, d):
    """Root elements x_{i,i+1}(b), x_{i+1,i}(b) for b in the polynomial basis."""
    gens = []
    for i in range(d - 1):
        for b in F.basis():
            gens.append(elementary(F, d, i, i + 1, b))
            gens.append(elementary(F, d, i + 1, i, b))
    return gens


def matrix_permutation(space, M, frob=0):
    """Permutation of PG(n, q) induced by v -> M v^(p^frob)."""
    F = space.field
    images = []
    for pt in space.points:
        v = [F.frobenius(x, frob) for x in pt] if frob else pt
        images.append(space.index[normalize(F, mat_vec(F, M, v))])
    return Permutation(images, check=False)


def _check_params(family, n, q):
    if family in ("sym", "alt"):
        if n is None or n < 1 or (family == "alt" and n < 3):
            raise BadParams(f"{family} needs n >= {3 if family == 'alt' else 1} points")
        return
    if n is None or q is None:
        raise BadParams(f"{family} needs n and q")
    if not is_prime_power(q):
        raise BadParams(f"q = {q} is not a prime power")
    if n < 1:
        raise BadParams("n must be at least 1")


def _projective(family, n, q):
    space = projective_space(q, n)
    F = space.field
    d = n + 1
    if family == "psl":
        mats = sl_generators(F, d)
        expected = psl_order(n, q)
        scheme = "sl-root-elements"
    else:
        mats = gl_generators(F, d, "singer")
        expected = pgl_order(n, q)
        scheme = "singer+transvection"
    pairs = [(M, 0) for M in mats]
    gens = [matrix_permutation(space, M) for M in mats]
    if family == "pgammal" and F.e > 1:
        pairs.append((identity(F, d), 1))
        gens.append(matrix_permutation(space, identity(F, d), 1))
        expected *= F.e
    group = PermGroup(gens, degree=len(space.points), order=expected)
    if group.order() != expected:
        extra = gl_generators(F, d, "elementary") if family != "psl" else []
        pairs.extend((M, 0) for M in extra)
        gens.extend(matrix_permutation(space, M) for M in extra)
        group = PermGroup(gens, degree=len(space.points), order=expected)
        scheme += "+elementary"
    return space, pairs, group, expected, scheme


def _affine(n, q):
    F = gf_construct(q)
    vectors = list(product(range(q), repeat=n))
    index = {v: i for i, v in enumerate(vectors)}

    def perm(M, shift):
        return Permutation([index[tuple(F.add(x, s) for x, s in zip(mat_vec(F, M, v), shift))]
                            for v in vectors], check=False)

    zero = (0,) * n
    e0 = (1,) + (0,) * (n - 1)
    expected = q ** n * gl_order(n, q)
    gens = [perm(identity(F, n), e0)] + [perm(M, zero) for M in gl_generators(F, n, "singer")]
    scheme = "translation+singer+transvection"
    group = PermGroup(gens, degree=len(vectors), order=expected)
    if group.order() != expected:
        gens += [perm(M, zero) for M in gl_generators(F, n, "elementary")]
        group = PermGroup(gens, degree=len(vectors), order=expected)
        scheme += "+elementary"
    labels = ["(" + ",".join(map(str, v)) + ")" for v in vectors]
    return vectors, labels, group, expected, scheme


def _cycle(points, degree):
    images = list(range(degree))
    for a, b in zip(points, points[1:] + points[:1]):
        images[a] = b
    return Permutation(images, check=False)


def builtin_group(name, n=None, q=None):
    """Construct a builtin family member; see the module docstring for actions."""
    family = name.lower()
    if family not in FAMILIES:
        raise UnknownFamily(f"unknown family {name!r}; expected one of {FAMILIES}")
    _check_params(family, n, q)
    params = {"n": n} if family in ("sym", "alt") else {"n": n, "q": q}
    if family in ("pgl", "psl", "pgammal"):
        space, pairs, group, expected, scheme = _projective(family, n, q)
        group.name = f"{family}(n={n},q={q})"
        labels = [space.label(i) for i in range(len(space.points))]
        return BuiltinGroup(family, params, group, labels, expected, scheme,
                            space=space, coords=list(space.points), matrices=pairs)
    if family == "agl":
        vectors, labels, group, expected, scheme = _affine(n, q)
        group.name = f"agl(n={n},q={q})"
        return BuiltinGroup(family, params, group, labels, expected, scheme, coords=vectors)
    m = n
    if family == "sym":
        gens = [_cycle([0, 1], m), _cycle(list(range(m)), m)] if m >= 2 else []
        expected = prod(range(1, m + 1))
        scheme = "transposition+long-cycle"
    else:
        long_cycle = list(range(m)) if m % 2 else list(range(1, m))
        gens = [_cycle([0, 1, 2], m), _cycle(long_cycle, m)]
        expected = prod(range(1, m + 1)) // 2
        scheme = "3-cycle+long-cycle"
    group = PermGroup(gens, degree=m, name=f"{family}(n={m})", order=expected)
    return BuiltinGroup(family, params, group, [str(i + 1) for i in range(m)], expected, scheme)


__all__ = [
    "BuiltinGroup", "FAMILIES", "builtin_group", "companion", "gl_generators",
    "gl_order", "matrix_permutation", "pg_point_count", "pgl_order",
    "psl_order", "singer_polynomial", "sl_generators",
]
