"""Arithmetic in GF(2^m) and in the polynomial ring GF(2^m)[z].

Field elements are plain ints holding m-bit polynomial-basis encodings
(bit i = coefficient of z^i).  Small fields (m <= 12) get log/antilog
tables; larger ones multiply by shift-and-reduce.
"""
from __future__ import annotations

import random

from .errors import NotInvertible, ParameterError, RangeError, ZeroInverse, ZeroOperand

__all__ = [
    "FieldParams",
    "Gf2mPoly",
    "NEG_INF",
    "field_inv",
    "field_mul",
    "field_pow",
    "is_irreducible",
    "least_irreducible",
    "poly_add",
    "poly_divmod",
    "poly_eval",
    "poly_ext_gcd",
    "poly_inv_mod",
    "poly_mod",
    "poly_mul",
    "poly_sqrt_mod",
    "random_irreducible",
]

NEG_INF = float("-inf")  # degree of the zero polynomial

_TABLE_MAX_M = 12


def _gf2_mod(a: int, b: int) -> int:
    """Remainder of carry-less division of a by b over GF(2)."""
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def _gf2_irreducible(f: int, deg: int) -> bool:
    """Trial-divide an int-encoded GF(2) polynomial by everything up to deg/2."""
    for d in range(1, deg // 2 + 1):
        for div in range(1 << d, 1 << (d + 1)):
            if _gf2_mod(f, div) == 0:
                return False
    return True


_LEAST_IRRED_CACHE: dict[int, int] = {}


def least_irreducible(m: int) -> int:
    """Smallest int encoding of an irreducible degree-m polynomial over GF(2)."""
    if m < 1:
        raise ParameterError(f"degree must be positive, got {m}")
    if m not in _LEAST_IRRED_CACHE:
        f = 1 << m
        while not _gf2_irreducible(f, m):
            f += 1
        _LEAST_IRRED_CACHE[m] = f
    return _LEAST_IRRED_CACHE[m]


def _mul_noreduce_tables(m: int, modulus: int):
    """Build (exp, log) tables for GF(2^m) over the given modulus."""
    order = (1 << m) - 1

    def raw_mul(a: int, b: int) -> int:
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> m & 1:
                a ^= modulus
        return r

    def raw_pow(a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = raw_mul(r, a)
            a = raw_mul(a, a)
            e >>= 1
        return r

    factors = []
    n, q = order, 2
    while q * q <= n:
        if n % q == 0:
            factors.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        factors.append(n)

    gen = 2 if m > 1 else 1
    while any(raw_pow(gen, order // q) == 1 for q in factors):
        gen += 1

    exp = [0] * order
    log = [0] * (1 << m)
    x = 1
    for i in range(order):
        exp[i] = x
        log[x] = i
        x = raw_mul(x, gen)
    return exp, log


class FieldParams:
    """GF(2^m) description: extension degree, reduction modulus, mul tables."""

    __slots__ = ("m", "modulus", "order", "exp", "log")

    def __init__(self, m: int, modulus: int | None = None):
        if not 1 <= m <= 16:
            raise ParameterError(f"unsupported extension degree m={m}")
        if modulus is None:
            modulus = least_irreducible(m)
        if modulus.bit_length() != m + 1 or not _gf2_irreducible(modulus, m):
            raise ParameterError(f"modulus {modulus:#x} is not irreducible of degree {m}")
        self.m = m
        self.modulus = modulus
        self.order = (1 << m) - 1
        if m <= _TABLE_MAX_M:
            self.exp, self.log = _mul_noreduce_tables(m, modulus)
        else:
            self.exp = self.log = None

    def __repr__(self):
        return f"FieldParams(m={self.m}, modulus={self.modulus:#x})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldParams)
            and self.m == other.m
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.m, self.modulus))


def field_mul(a: int, b: int, p: FieldParams) -> int:
    """Product in GF(2^m)."""
    if a == 0 or b == 0:
        return 0
    if p.exp is not None:
        s = p.log[a] + p.log[b]
        if s >= p.order:
            s -= p.order
        return p.exp[s]
    m, modulus = p.m, p.modulus
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> m & 1:
            a ^= modulus
    return r


def field_pow(a: int, e: int, p: FieldParams) -> int:
    """a**e in GF(2^m), e >= 0."""
    if e < 0:
        raise RangeError("negative exponent")
    r = 1
    a &= (1 << p.m) - 1
    while e:
        if e & 1:
            r = field_mul(r, a, p)
        a = field_mul(a, a, p)
        e >>= 1
    return r


def field_inv(a: int, p: FieldParams) -> int:
    """Multiplicative inverse in GF(2^m)."""
    if a == 0:
        raise ZeroInverse("0 has no inverse")
    if p.exp is not None:
        la = p.log[a]
        return p.exp[(p.order - la) % p.order]
    return field_pow(a, p.order - 1, p)


class Gf2mPoly:
    """Polynomial over GF(2^m); coeffs[i] is the coefficient of z^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, Gf2mPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Gf2mPoly({list(self.coeffs)})"


POLY_ZERO = Gf2mPoly()
POLY_ONE = Gf2mPoly((1,))
POLY_Z = Gf2mPoly((0, 1))


def poly_add(f: Gf2mPoly, g: Gf2mPoly) -> Gf2mPoly:
    """Sum (= difference) of two polynomials; coefficient-wise XOR."""
    a, b = f.coeffs, g.coeffs
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] ^= c
    return Gf2mPoly(out)


def poly_mul(f: Gf2mPoly, g: Gf2mPoly, p: FieldParams) -> Gf2mPoly:
    """Schoolbook product."""
    if f.is_zero() or g.is_zero():
        return POLY_ZERO
    a, b = f.coeffs, g.coeffs
    out = [0] * (len(a) + len(b) - 1)
    for i, ci in enumerate(a):
        if ci == 0:
            continue
        for j, cj in enumerate(b):
            if cj:
                out[i + j] ^= field_mul(ci, cj, p)
    return Gf2mPoly(out)


def _poly_sqr(f: Gf2mPoly, p: FieldParams) -> Gf2mPoly:
    # squaring is coefficient-wise in char 2: (sum c_i z^i)^2 = sum c_i^2 z^(2i)
    if f.is_zero():
        return POLY_ZERO
    out = [0] * (2 * len(f.coeffs) - 1)
    for i, c in enumerate(f.coeffs):
        if c:
            out[2 * i] = field_mul(c, c, p)
    return Gf2mPoly(out)


def poly_divmod(f: Gf2mPoly, g: Gf2mPoly, p: FieldParams):
    """Quotient and remainder of polynomial long division."""
    if g.is_zero():
        raise ZeroOperand("division by zero polynomial")
    dg = len(g.coeffs) - 1
    lead_inv = field_inv(g.coeffs[-1], p)
    rem = list(f.coeffs)
    if len(rem) <= dg:
        return POLY_ZERO, Gf2mPoly(rem)
    quot = [0] * (len(rem) - dg)
    for i in range(len(rem) - 1, dg - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        q = field_mul(c, lead_inv, p)
        quot[i - dg] = q
        for j, gj in enumerate(g.coeffs):
            if gj:
                rem[i - dg + j] ^= field_mul(q, gj, p)
    return Gf2mPoly(quot), Gf2mPoly(rem)


def poly_mod(f: Gf2mPoly, g: Gf2mPoly, p: FieldParams) -> Gf2mPoly:
    return poly_divmod(f, g, p)[1]


def poly_eval(f: Gf2mPoly, x: int, p: FieldParams) -> int:
    """Horner evaluation of f at the field element x."""
    acc = 0
    for c in reversed(f.coeffs):
        acc = field_mul(acc, x, p) ^ c
    return acc


def poly_ext_gcd(a: Gf2mPoly, b: Gf2mPoly, stop_deg, p: FieldParams):
    """Extended Euclid on (a, b), halted early.

    Returns the first remainder-sequence entry (r, u, v), r = u*a + v*b,
    with deg(r) <= stop_deg.  stop_deg < 0 runs to completion and returns
    the last nonzero remainder (a gcd, up to a scalar).
    """
    if b.is_zero():
        raise ZeroOperand("ext_gcd with zero second operand")
    cur = (a, POLY_ONE, POLY_ZERO)
    nxt = (b, POLY_ZERO, POLY_ONE)
    if stop_deg < 0:
        while not nxt[0].is_zero():
            q, r = poly_divmod(cur[0], nxt[0], p)
            cur, nxt = nxt, (
                r,
                poly_add(cur[1], poly_mul(q, nxt[1], p)),
                poly_add(cur[2], poly_mul(q, nxt[2], p)),
            )
        return cur
    while cur[0].degree > stop_deg:
        if nxt[0].is_zero():
            return nxt
        q, r = poly_divmod(cur[0], nxt[0], p)
        cur, nxt = nxt, (
            r,
            poly_add(cur[1], poly_mul(q, nxt[1], p)),
            poly_add(cur[2], poly_mul(q, nxt[2], p)),
        )
    return cur


def poly_inv_mod(f: Gf2mPoly, g: Gf2mPoly, p: FieldParams) -> Gf2mPoly:
    """Inverse of f modulo g; g must be irreducible."""
    f = poly_mod(f, g, p)
    if f.is_zero():
        raise NotInvertible("zero has no inverse mod g")
    r, u, _ = poly_ext_gcd(f, g, -1, p)
    if r.degree != 0:
        raise NotInvertible("operand shares a factor with the modulus")
    c = field_inv(r.coeffs[0], p)
    return Gf2mPoly([field_mul(c, ui, p) for ui in u.coeffs])


def poly_sqrt_mod(f: Gf2mPoly, g: Gf2mPoly, p: FieldParams) -> Gf2mPoly:
    """Square root in GF(2^m)[z]/(g): f^(2^(m*t-1)) for t = deg(g)."""
    t = g.degree
    if t is NEG_INF or t < 1:
        raise ZeroOperand("modulus must have positive degree")
    r = poly_mod(f, g, p)
    for _ in range(p.m * int(t) - 1):
        r = poly_mod(_poly_sqr(r, p), g, p)
    return r


def _poly_gcd(a: Gf2mPoly, b: Gf2mPoly, p: FieldParams) -> Gf2mPoly:
    while not b.is_zero():
        a, b = b, poly_mod(a, b, p)
    return a


def is_irreducible(f: Gf2mPoly, p: FieldParams) -> bool:
    """Ben-Or test: no irreducible factor of degree <= deg(f)/2."""
    d = f.degree
    if d is NEG_INF or d < 1:
        return False
    if d == 1:
        return True
    h = POLY_Z
    for _ in range(int(d) // 2):
        for _ in range(p.m):  # h <- h^(2^m) mod f, one Frobenius step
            h = poly_mod(_poly_sqr(h, p), f, p)
        if _poly_gcd(poly_add(h, POLY_Z), f, p).degree != 0:
            return False
    return True


def random_irreducible(t: int, p: FieldParams, rng: random.Random) -> Gf2mPoly:
    """Uniform monic irreducible of degree t over GF(2^m), by rejection."""
    if t < 1:
        raise ParameterError(f"degree must be positive, got {t}")
    size = 1 << p.m
    while True:
        g = Gf2mPoly([rng.randrange(size) for _ in range(t)] + [1])
        if is_irreducible(g, p):
            return g
