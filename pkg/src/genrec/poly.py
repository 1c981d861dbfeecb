"""Exact univariate polynomials with Fraction coefficients, lowest degree first."""

from __future__ import annotations

from fractions import Fraction


def trim(c):
    c = [Fraction(x) for x in c]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(c):
    """Degree of ``c``; the zero polynomial has degree None."""
    c = trim(c)
    return len(c) - 1 if c else None


def evaluate(c, x):
    acc = Fraction(0)
    for a in reversed(c):
        acc = acc * x + a
    return acc


def add(a, b):
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def sub(a, b):
    return add(a, [-x for x in b])


def mul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def power(a, k):
    out = (Fraction(1),)
    for _ in range(k):
        out = mul(out, a)
    return out


def product(polys):
    out = (Fraction(1),)
    for p in polys:
        out = mul(out, p)
    return out


def interpolate(xs, ys):
    """Newton divided differences, expanded to monomial coefficients."""
    if len(xs) != len(set(xs)):
        raise ValueError("interpolation nodes must be distinct")
    n = len(xs)
    dd = [Fraction(y) for y in ys]
    for k in range(1, n):
        for i in range(n - 1, k - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k])
    out = ()
    basis = (Fraction(1),)
    for k in range(n):
        out = add(out, [dd[k] * b for b in basis])
        basis = mul(basis, (Fraction(-xs[k]), Fraction(1)))
    return trim(out)


def leading(c):
    c = trim(c)
    return c[-1] if c else Fraction(0)


def to_string(c, var="q"):
    c = trim(c)
    if not c:
        return "0"
    terms = []
    for i in range(len(c) - 1, -1, -1):
        a = c[i]
        if a == 0:
            continue
        sign = "-" if a < 0 else "+"
        a = abs(a)
        if i == 0:
            body = str(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if a == 1 else f"{a}*{mono}"
        terms.append((sign, body))
    first_sign, first = terms[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        text += f" {sign} {body}"
    return text
