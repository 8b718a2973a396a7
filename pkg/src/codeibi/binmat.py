"""Dense linear algebra over GF(2) with int-packed rows and vectors.

A vector of length n lives in one Python int; bit i is coordinate i.
Packed into bytes, coordinate i lands in bit (i mod 8) of byte i//8,
least significant bit first.
"""
from __future__ import annotations

import random

from .errors import DimensionMismatch, Inconsistent, ParameterError, RangeError, Singular

__all__ = [
    "BitMatrix",
    "BitVector",
    "Permutation",
    "apply_inverse_permutation",
    "apply_permutation",
    "gaussian_solve",
    "mat_mul",
    "mat_rank",
    "mat_vec_mul",
    "perm_matrix",
    "permute_columns",
    "random_nonsingular",
    "random_permutation",
]


class BitVector:
    """Fixed-length bit string over GF(2)."""

    __slots__ = ("n", "bits")

    def __init__(self, n: int, bits: int = 0):
        if n < 0:
            raise RangeError(f"negative length {n}")
        if bits < 0 or bits >> n:
            raise RangeError("bits outside the declared length")
        self.n = n
        self.bits = bits

    @classmethod
    def zeros(cls, n: int) -> "BitVector":
        return cls(n, 0)

    @classmethod
    def from_support(cls, n: int, positions) -> "BitVector":
        bits = 0
        for i in positions:
            if not 0 <= i < n:
                raise RangeError(f"position {i} out of range for length {n}")
            bits |= 1 << i
        return cls(n, bits)

    @classmethod
    def random(cls, n: int, rng: random.Random) -> "BitVector":
        return cls(n, rng.getrandbits(n) if n else 0)

    @classmethod
    def random_weight(cls, n: int, w: int, rng: random.Random) -> "BitVector":
        """Uniform vector of exact Hamming weight w."""
        if not 0 <= w <= n:
            raise RangeError(f"weight {w} out of range for length {n}")
        return cls.from_support(n, rng.sample(range(n), w))

    @classmethod
    def from_bytes(cls, data: bytes, n: int) -> "BitVector":
        if len(data) != (n + 7) // 8:
            raise RangeError("byte length does not match bit length")
        return cls(n, int.from_bytes(data, "little"))

    def to_bytes(self) -> bytes:
        return self.bits.to_bytes((self.n + 7) // 8, "little")

    def get(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise RangeError(f"index {i} out of range")
        return (self.bits >> i) & 1

    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> tuple:
        out = []
        b = self.bits
        while b:
            low = b & -b
            out.append(low.bit_length() - 1)
            b ^= low
        return tuple(out)

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.n != other.n:
            raise DimensionMismatch(f"xor of lengths {self.n} and {other.n}")
        return BitVector(self.n, self.bits ^ other.bits)

    def __eq__(self, other):
        return isinstance(other, BitVector) and self.n == other.n and self.bits == other.bits

    def __hash__(self):
        return hash((self.n, self.bits))

    def __repr__(self):
        return f"BitVector(n={self.n}, weight={self.weight()})"


class BitMatrix:
    """Matrix over GF(2); each row is an int with bit j = column j."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows):
        rows = tuple(rows)
        if len(rows) != nrows:
            raise DimensionMismatch(f"expected {nrows} rows, got {len(rows)}")
        for r in rows:
            if r < 0 or r >> ncols:
                raise RangeError("row value outside the declared width")
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls(nrows, ncols, [0] * nrows)

    def get(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def column_int(self, j: int) -> int:
        """Column j packed as an int (bit i = row i)."""
        out = 0
        for i, r in enumerate(self.rows):
            out |= ((r >> j) & 1) << i
        return out

    def __eq__(self, other):
        return (
            isinstance(other, BitMatrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.rows))

    def __repr__(self):
        return f"BitMatrix({self.nrows}x{self.ncols})"


def mat_vec_mul(mat: BitMatrix, v: BitVector) -> BitVector:
    """mat @ v over GF(2); row-by-row parity of the masked vector."""
    if v.n != mat.ncols:
        raise DimensionMismatch(f"matrix has {mat.ncols} columns, vector length {v.n}")
    vb = v.bits
    bits = 0
    for i, row in enumerate(mat.rows):
        if (row & vb).bit_count() & 1:
            bits |= 1 << i
    return BitVector(mat.nrows, bits)


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.ncols != b.nrows:
        raise DimensionMismatch(f"inner dimensions {a.ncols} and {b.nrows} differ")
    out = []
    for row in a.rows:
        acc = 0
        r = row
        while r:
            low = r & -r
            acc ^= b.rows[low.bit_length() - 1]
            r ^= low
        out.append(acc)
    return BitMatrix(a.nrows, b.ncols, out)


def mat_rank(mat: BitMatrix) -> int:
    rows = [r for r in mat.rows if r]
    rank = 0
    for col in range(mat.ncols):
        mask = 1 << col
        pivot = None
        for i in range(rank, len(rows)):
            if rows[i] & mask:
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i] & mask:
                rows[i] ^= prow
        rank += 1
    return rank


def mat_invert(mat: BitMatrix) -> BitMatrix:
    """Gauss-Jordan inverse; raises Singular if rank deficient."""
    if mat.nrows != mat.ncols:
        raise DimensionMismatch("only square matrices invert")
    n = mat.nrows
    aug = [mat.rows[i] | (1 << (n + i)) for i in range(n)]
    for col in range(n):
        mask = 1 << col
        pivot = None
        for i in range(col, n):
            if aug[i] & mask:
                pivot = i
                break
        if pivot is None:
            raise Singular(f"no pivot in column {col}")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        prow = aug[col]
        for i in range(n):
            if i != col and aug[i] & mask:
                aug[i] ^= prow
    return BitMatrix(n, n, [r >> n for r in aug])


def gaussian_solve(mat: BitMatrix, y: BitVector) -> BitVector:
    """One solution of mat @ x = y, free variables zeroed.

    Pivots are chosen at the lowest available row and column indices, so
    the answer is deterministic.  Raises Inconsistent when y is outside
    the column space.
    """
    if y.n != mat.nrows:
        raise DimensionMismatch(f"matrix has {mat.nrows} rows, rhs length {y.n}")
    n = mat.ncols
    aug = [mat.rows[i] | (y.get(i) << n) for i in range(mat.nrows)]
    pivots = []
    rank = 0
    for col in range(n):
        mask = 1 << col
        pivot = None
        for i in range(rank, len(aug)):
            if aug[i] & mask:
                pivot = i
                break
        if pivot is None:
            continue
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        prow = aug[rank]
        for i in range(len(aug)):
            if i != rank and aug[i] & mask:
                aug[i] ^= prow
        pivots.append((rank, col))
        rank += 1
    for i in range(rank, len(aug)):
        if aug[i] >> n:
            raise Inconsistent("rhs not in the column space")
    x = 0
    for row, col in pivots:
        if aug[row] >> n:
            x |= 1 << col
    return BitVector(n, x)


def random_nonsingular(dim: int, rng: random.Random) -> BitMatrix:
    """Uniform invertible dim x dim matrix, by rejection sampling."""
    if dim < 1:
        raise ParameterError(f"dimension must be positive, got {dim}")
    while True:
        m = BitMatrix(dim, dim, [rng.getrandbits(dim) for _ in range(dim)])
        if mat_rank(m) == dim:
            return m


class Permutation:
    """Permutation of {0..n-1}; map[i] is the image of position i."""

    __slots__ = ("map", "_inv")

    def __init__(self, images):
        images = tuple(images)
        seen = [False] * len(images)
        for v in images:
            if not 0 <= v < len(images) or seen[v]:
                raise ParameterError("not a permutation")
            seen[v] = True
        self.map = images
        self._inv = None

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @property
    def n(self) -> int:
        return len(self.map)

    def inverse(self) -> "Permutation":
        if self._inv is None:
            inv = [0] * len(self.map)
            for i, v in enumerate(self.map):
                inv[v] = i
            self._inv = Permutation(inv)
            self._inv._inv = self
        return self._inv

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.map == other.map

    def __hash__(self):
        return hash(self.map)

    def __repr__(self):
        return f"Permutation(n={self.n})"


def random_permutation(n: int, rng: random.Random) -> Permutation:
    """Uniform permutation (Fisher-Yates via rng.shuffle)."""
    if n < 1:
        raise ParameterError(f"length must be positive, got {n}")
    images = list(range(n))
    rng.shuffle(images)
    return Permutation(images)


def apply_permutation(perm: Permutation, v: BitVector) -> BitVector:
    """Vector with coordinate i of v moved to coordinate map[i]."""
    if v.n != perm.n:
        raise DimensionMismatch(f"permutation on {perm.n} points, vector length {v.n}")
    pm = perm.map
    out = 0
    b = v.bits
    while b:
        low = b & -b
        out |= 1 << pm[low.bit_length() - 1]
        b ^= low
    return BitVector(v.n, out)


def apply_inverse_permutation(perm: Permutation, v: BitVector) -> BitVector:
    return apply_permutation(perm.inverse(), v)


def perm_matrix(perm: Permutation) -> BitMatrix:
    """Matrix M with M @ v = apply_permutation(perm, v)."""
    rows = [0] * perm.n
    for i, v in enumerate(perm.map):
        rows[v] = 1 << i
    return BitMatrix(perm.n, perm.n, rows)


def permute_columns(mat: BitMatrix, perm: Permutation) -> BitMatrix:
    """mat @ perm_matrix(perm): new column j is old column map[j]."""
    if mat.ncols != perm.n:
        raise DimensionMismatch(f"matrix has {mat.ncols} columns, permutation on {perm.n}")
    pm = perm.map
    out = []
    for row in mat.rows:
        acc = 0
        for j in range(mat.ncols):
            if (row >> pm[j]) & 1:
                acc |= 1 << j
        out.append(acc)
    return BitMatrix(mat.nrows, mat.ncols, out)
