"""Finite fields GF(q) with table-driven arithmetic.

Elements are the integers ``0..q-1``; the base-p digits of an element are
its polynomial coefficients (constant term first) modulo the field's
modulus.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from ..errors import NotPrimePower


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(q):
    """Return (p, e) with q == p**e, or raise NotPrimePower."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e = 0
    r = q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    return p, e


def is_prime_power(q):
    try:
        prime_power(q)
    except NotPrimePower:
        return False
    return True


def prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# polynomials over GF(p): coefficient lists, constant term first

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a, b, p):
    """Remainder of a modulo b over GF(p); b must be monic."""
    a = _trim(a)
    b = _trim(b)
    while len(a) >= len(b):
        c = a[-1]
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a = _trim(a)
    return a


def monic_polys(p, d):
    """Monic degree-d polynomials over GF(p) in increasing integer encoding."""
    for tail in product(range(p), repeat=d):
        yield list(reversed(tail)) + [1]


def is_irreducible(f, p):
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    f = _trim(f)
    e = len(f) - 1
    if e <= 1:
        return e == 1
    if f[0] == 0:
        return False
    for d in range(1, e // 2 + 1):
        for g in monic_polys(p, d):
            if not poly_mod(f, g, p):
                return False
    return True


class Field:
    """GF(q) for q = p**e."""

    def __init__(self, q):
        p, e = prime_power(q)
        self.p, self.e, self.q = p, e, q
        if e == 1:
            self.modulus = (0, 1)
        else:
            self.modulus = tuple(next(f for f in monic_polys(p, e) if is_irreducible(f, p)))
        self._build_tables()

    def _digits(self, a):
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def _encode(self, coeffs):
        return sum(c * self.p ** i for i, c in enumerate(coeffs))

    def _build_tables(self):
        p, e, q = self.p, self.e, self.q
        digits = [self._digits(a) for a in range(q)]
        self.add_table = [[self._encode([(x + y) % p for x, y in zip(digits[a], digits[b])])
                           for b in range(q)] for a in range(q)]
        self.neg_table = [self._encode([(-x) % p for x in digits[a]]) for a in range(q)]
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                prod_ = [0] * (2 * e - 1)
                for i, x in enumerate(digits[a]):
                    if x:
                        for j, y in enumerate(digits[b]):
                            prod_[i + j] = (prod_[i + j] + x * y) % p
                r = poly_mod(prod_, self.modulus, p) if e > 1 else [prod_[0]]
                mul[a][b] = mul[b][a] = self._encode(r)
        self.mul_table = mul
        self.inv_table = [0] * q
        for a in range(1, q):
            self.inv_table[a] = next(b for b in range(1, q) if mul[a][b] == 1)
        self.primitive = next(a for a in range(1, q) if self.mult_order(a) == q - 1)

    @property
    def elements(self):
        return range(self.q)

    def add(self, a, b):
        return self.add_table[a][b]

    def sub(self, a, b):
        return self.add_table[a][self.neg_table[b]]

    def neg(self, a):
        return self.neg_table[a]

    def mul(self, a, b):
        return self.mul_table[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.inv_table[a]

    def div(self, a, b):
        return self.mul_table[a][self.inv(b)]

    def pow(self, a, k):
        if k < 0:
            a, k = self.inv(a), -k
        result = 1
        while k:
            if k & 1:
                result = self.mul_table[result][a]
            a = self.mul_table[a][a]
            k >>= 1
        return result

    def mult_order(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        k, x = 1, a
        while x != 1:
            x = self.mul_table[x][a]
            k += 1
        return k

    def frobenius(self, a, j=1):
        """a ** (p ** j)."""
        return self.pow(a, self.p ** (j % self.e)) if self.e > 1 else a

    def basis(self):
        """The polynomial basis 1, x, ..., x^(e-1) as field elements."""
        return [self.p ** i for i in range(self.e)]

    def __eq__(self, other):
        return isinstance(other, Field) and (self.q, self.modulus) == (other.q, other.modulus)

    def __hash__(self):
        return hash((self.q, self.modulus))

    def __repr__(self):
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def gf_construct(q):
    """GF(q) with the smallest irreducible modulus; cached per q."""
    return Field(q)
