"""Binary irreducible Goppa codes with Patterson decoding.

Code support is the full field in natural order: L_i is the element
whose polynomial-basis encoding is the integer i, for i = 0 .. 2^m - 1.
The public parity-check matrix H_bin is the GF(2) expansion (m bits per
field entry, rows r*m .. r*m+m-1 for power r) of the t x n matrix with
entries L_i^r / g(L_i).
"""
from __future__ import annotations

import random

from .binmat import BitMatrix, BitVector, mat_rank, mat_vec_mul
from .errors import DimensionMismatch, ParameterError, Undecodable
from .gf2m import (
    NEG_INF,
    POLY_Z,
    FieldParams,
    Gf2mPoly,
    field_inv,
    field_mul,
    is_irreducible,
    poly_add,
    poly_ext_gcd,
    poly_eval,
    poly_inv_mod,
    poly_mul,
    poly_sqrt_mod,
    random_irreducible,
)

__all__ = [
    "GoppaCode",
    "binary_syndrome",
    "build_goppa",
    "code_from_poly",
    "patterson_decode",
    "syndrome_bits",
    "syndrome_poly",
]


class GoppaCode:
    """[n, k] binary Goppa code determined by (field, t, g)."""

    __slots__ = ("params", "t", "support", "g", "H_bin", "n", "k")

    def __init__(self, params: FieldParams, t: int, g: Gf2mPoly, H_bin: BitMatrix):
        self.params = params
        self.t = t
        self.n = 1 << params.m
        self.k = self.n - params.m * t
        self.support = tuple(range(self.n))
        self.g = g
        self.H_bin = H_bin

    def __repr__(self):
        return f"GoppaCode(m={self.params.m}, t={self.t}, n={self.n}, k={self.k})"


def _check_code_params(params: FieldParams, t: int) -> None:
    if not 3 <= params.m <= 16:
        raise ParameterError(f"m={params.m} outside the supported range 3..16")
    if t < 2:
        raise ParameterError(f"t={t} too small; need t >= 2")
    if params.m * t >= (1 << params.m):
        raise ParameterError(f"m*t={params.m * t} leaves no code dimension")


def _assemble_parity(params: FieldParams, t: int, g: Gf2mPoly) -> BitMatrix:
    """GF(2) expansion of the t x n matrix with entries L_i^r / g(L_i)."""
    m = params.m
    n = 1 << m
    rows = [0] * (m * t)
    for i in range(n):
        entry = field_inv(poly_eval(g, i, params), params)
        bit = 1 << i
        for r in range(t):
            v = entry
            base = r * m
            while v:
                low = v & -v
                rows[base + low.bit_length() - 1] |= bit
                v ^= low
            entry = field_mul(entry, i, params)
    return BitMatrix(m * t, n, rows)


def code_from_poly(params: FieldParams, t: int, g: Gf2mPoly) -> GoppaCode:
    """Code for a caller-supplied Goppa polynomial; parity matrix must be full rank."""
    _check_code_params(params, t)
    if g.degree != t or g.coeffs[-1] != 1:
        raise ParameterError("Goppa polynomial must be monic of degree t")
    if not is_irreducible(g, params):
        raise ParameterError("Goppa polynomial must be irreducible")
    H = _assemble_parity(params, t, g)
    if mat_rank(H) != params.m * t:
        raise ParameterError("parity-check matrix is rank deficient for this polynomial")
    return GoppaCode(params, t, g, H)


def build_goppa(params: FieldParams, t: int, rng: random.Random) -> GoppaCode:
    """Random irreducible Goppa code; redraws g until H_bin has full rank."""
    _check_code_params(params, t)
    while True:
        g = random_irreducible(t, params, rng)
        H = _assemble_parity(params, t, g)
        if mat_rank(H) == params.m * t:
            return GoppaCode(params, t, g, H)


def binary_syndrome(code: GoppaCode, e: BitVector) -> BitVector:
    """H_bin @ e, length m*t."""
    return mat_vec_mul(code.H_bin, e)


def syndrome_poly(code: GoppaCode, s: BitVector) -> Gf2mPoly:
    """Key-equation syndrome S(z) = sum over errors of 1/(z - L_i) mod g.

    The bits of s pack the weighted power sums p_r = sum L_i^r / g(L_i)
    (m bits each, r = 0 .. t-1); S's coefficients are the triangular
    combination of those sums through g's own coefficients:
    S_r = sum_{j=r+1..t} g_j * p_{j-1-r}.
    """
    params, t = code.params, code.t
    m = params.m
    if s.n != m * t:
        raise DimensionMismatch(f"syndrome length {s.n}, expected {m * t}")
    mask = (1 << m) - 1
    sums = [(s.bits >> (r * m)) & mask for r in range(t)]
    gc = code.g.coeffs
    out = []
    for r in range(t):
        acc = 0
        for j in range(r + 1, t + 1):
            cj = gc[j]
            if cj:
                acc ^= field_mul(cj, sums[j - 1 - r], params)
        out.append(acc)
    return Gf2mPoly(out)


def syndrome_bits(code: GoppaCode, S: Gf2mPoly) -> BitVector:
    """Inverse of syndrome_poly: pack a degree-<t polynomial back into bits."""
    params, t = code.params, code.t
    if S.degree >= t:
        raise DimensionMismatch(f"degree {S.degree} too large for t={t}")
    coeffs = list(S.coeffs) + [0] * (t - len(S.coeffs))
    gc = code.g.coeffs
    sums = [0] * t
    for w in range(t):
        acc = coeffs[t - 1 - w]
        for u in range(w):
            cu = gc[u + t - w]
            if cu:
                acc ^= field_mul(cu, sums[u], params)
        sums[w] = acc  # leading coefficient of g is 1
    bits = 0
    for r in range(t):
        bits |= sums[r] << (r * params.m)
    return BitVector(params.m * t, bits)


def patterson_decode(code: GoppaCode, s: BitVector) -> BitVector:
    """Error vector of weight <= t with binary_syndrome(e) == s.

    Raises Undecodable when s is outside the decoding radius; the result
    is always re-verified against the syndrome before being returned.
    """
    params, t, g = code.params, code.t, code.g
    if s.n != params.m * t:
        raise DimensionMismatch(f"syndrome length {s.n}, expected {params.m * t}")
    if s.bits == 0:
        return BitVector.zeros(code.n)

    S = syndrome_poly(code, s)
    T = poly_inv_mod(S, g, params)
    if T == POLY_Z:
        sigma = POLY_Z  # lone error at the support element 0
    else:
        R = poly_sqrt_mod(poly_add(T, POLY_Z), g, params)
        if R.is_zero():
            raise Undecodable("no square root branch")
        a, _, b = poly_ext_gcd(g, R, t // 2, params)
        za2 = poly_mul(a, a, params)
        zb2 = poly_mul(b, b, params)
        sigma = poly_add(za2, Gf2mPoly((0,) + zb2.coeffs))
    if sigma.is_zero():
        raise Undecodable("vanishing locator")

    bits = 0
    count = 0
    for i in range(code.n):
        if poly_eval(sigma, i, params) == 0:
            bits |= 1 << i
            count += 1
    if sigma.degree is NEG_INF or count != sigma.degree:
        raise Undecodable("locator does not split over the support")
    e = BitVector(code.n, bits)
    if binary_syndrome(code, e) != s:
        raise Undecodable("recomputed syndrome mismatch")
    return e
