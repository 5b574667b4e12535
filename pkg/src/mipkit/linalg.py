"""Exact linear algebra over the prime field GF(p).

Vectors are 1-d integer numpy arrays with entries in ``0..p-1``.  A
:class:`Subspace` keeps a fully reduced echelon basis.  For ``p == 2`` rows
are packed into Python ints (bit ``i`` is coordinate ``i``) and elimination
is done with XOR; for odd ``p`` rows stay numpy arrays.

Pivots are the *lowest* nonzero coordinate of each basis row.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np


def _pack(row: np.ndarray) -> int:
    bits = np.packbits(np.asarray(row, dtype=np.uint8) & 1, bitorder="little")
    return int.from_bytes(bits.tobytes(), "little")


def _unpack(x: int, dim: int) -> np.ndarray:
    nbytes = (dim + 7) // 8
    raw = np.frombuffer(x.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:dim].astype(np.int64)


def _low_bit(x: int) -> int:
    return (x & -x).bit_length() - 1


class Subspace:
    """A subspace of GF(p)^dim held as a reduced echelon basis.

    Instances are treated as immutable by the rest of the package; the
    in-place ``_add`` is only used while building a new subspace.
    """

    __slots__ = ("p", "dim_ambient", "_rows", "_pivmask", "_matrix")

    def __init__(self, p: int, dim_ambient: int, vectors: Iterable | None = None):
        self.p = int(p)
        self.dim_ambient = int(dim_ambient)
        # pivot column -> row (int for p == 2, ndarray otherwise)
        self._rows: dict = {}
        self._pivmask = 0
        self._matrix = None
        if vectors is not None:
            self.extend(vectors)

    # -- construction ---------------------------------------------------
    @classmethod
    def zero(cls, p: int, dim: int) -> "Subspace":
        return cls(p, dim)

    @classmethod
    def full(cls, p: int, dim: int) -> "Subspace":
        return cls(p, dim, np.eye(dim, dtype=np.int64))

    def copy(self) -> "Subspace":
        out = Subspace(self.p, self.dim_ambient)
        out._rows = {k: (v if self.p == 2 else v.copy()) for k, v in self._rows.items()}
        out._pivmask = self._pivmask
        return out

    def extend(self, vectors: Iterable) -> int:
        """Add vectors to the span; returns the number of new dimensions."""
        added = 0
        if isinstance(vectors, np.ndarray) and vectors.ndim == 1:
            vectors = [vectors]
        full = self.dim_ambient
        for v in vectors:
            if len(self._rows) == full:
                break
            if self._add(v):
                added += 1
        if added:
            self._matrix = None
        return added

    def _reduce_packed(self, x: int) -> int:
        hit = x & self._pivmask
        rows = self._rows
        while hit:
            low = hit & -hit
            x ^= rows[low.bit_length() - 1]
            hit ^= low
        return x

    def _reduce_array(self, v: np.ndarray) -> np.ndarray:
        v = np.mod(np.asarray(v, dtype=np.int64), self.p)
        for c, row in self._rows.items():
            a = v[c]
            if a:
                v = (v - a * row) % self.p
        return v

    def _add(self, v) -> bool:
        if self.p == 2:
            x = v if isinstance(v, int) else _pack(v)
            x = self._reduce_packed(x)
            if not x:
                return False
            c = _low_bit(x)
            bit = 1 << c
            for k, row in self._rows.items():
                if row & bit:
                    self._rows[k] = row ^ x
            self._rows[c] = x
            self._pivmask |= bit
            return True
        r = self._reduce_array(v)
        nz = np.flatnonzero(r)
        if nz.size == 0:
            return False
        c = int(nz[0])
        r = (r * pow(int(r[c]), -1, self.p)) % self.p
        for k, row in self._rows.items():
            a = row[c]
            if a:
                self._rows[k] = (row - a * r) % self.p
        self._rows[c] = r
        self._pivmask |= 1 << c
        return True

    # -- queries --------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def codim(self) -> int:
        return self.dim_ambient - len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    @property
    def matrix(self) -> np.ndarray:
        """Basis rows (reduced echelon form, sorted by pivot)."""
        if self._matrix is None:
            if not self._rows:
                m = np.zeros((0, self.dim_ambient), dtype=np.int64)
            elif self.p == 2:
                m = np.array([_unpack(self._rows[c], self.dim_ambient) for c in sorted(self._rows)])
            else:
                m = np.array([self._rows[c] for c in sorted(self._rows)], dtype=np.int64)
            self._matrix = m
        return self._matrix

    def is_zero(self) -> bool:
        return not self._rows

    def is_full(self) -> bool:
        return len(self._rows) == self.dim_ambient

    def reduce(self, v) -> np.ndarray:
        """Normal form of ``v`` modulo this subspace."""
        if self.p == 2:
            return _unpack(self._reduce_packed(_pack(v)), self.dim_ambient)
        return self._reduce_array(v)

    def contains(self, v) -> bool:
        if self.p == 2:
            return self._reduce_packed(_pack(v)) == 0
        return not self._reduce_array(v).any()

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def _check(self, other: "Subspace") -> None:
        if self.p != other.p or self.dim_ambient != other.dim_ambient:
            raise ValueError("subspaces live in different ambient spaces")

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        if self.dim > other.dim:
            return False
        if self.p == 2:
            return all(other._reduce_packed(x) == 0 for x in self._rows.values())
        return all(other.contains(r) for r in self._rows.values())

    def __ge__(self, other: "Subspace") -> bool:
        return other <= self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        self._check(other)
        if self.dim != other.dim or self._pivmask != other._pivmask:
            return False
        if self.p == 2:
            return self._rows == other._rows
        return all(np.array_equal(self._rows[c], other._rows[c]) for c in self._rows)

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        big, small = (self, other) if self.dim >= other.dim else (other, self)
        out = big.copy()
        out.extend(small._rows.values() if self.p == 2 else list(small._rows.values()))
        return out

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersection(self, other)

    def __repr__(self) -> str:
        return f"Subspace(p={self.p}, dim={self.dim}/{self.dim_ambient})"


def span(p: int, dim: int, vectors) -> Subspace:
    return Subspace(p, dim, vectors)


def rank(rows, p: int) -> int:
    rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
    if rows.size == 0:
        return 0
    return Subspace(p, rows.shape[1], rows).dim


def intersection(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: echelonize [[a, a], [b, 0]]; rows with zero left half span a & b."""
    a._check(b)
    n = a.dim_ambient
    if a.is_zero() or b.is_zero():
        return Subspace(a.p, n)
    if a <= b:
        return a.copy()
    if b <= a:
        return b.copy()
    A, B = a.matrix, b.matrix
    stacked = np.vstack([np.hstack([A, A]), np.hstack([B, np.zeros_like(B)])])
    work = Subspace(a.p, 2 * n, stacked)
    out = [row[n:] for row in work.matrix if not row[:n].any()]
    return Subspace(a.p, n, out)


def kernel(images: np.ndarray, p: int) -> np.ndarray:
    """Coefficient vectors ``c`` with ``c @ images == 0`` (mod p), as rows."""
    images = np.atleast_2d(np.asarray(images, dtype=np.int64)) % p
    r, n = images.shape
    if r == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if p == 2:
        return _kernel_gf2(images)
    aug = np.hstack([images, np.eye(r, dtype=np.int64)])
    work = Subspace(p, n + r, aug)
    rows = [row[n:] for row in work.matrix if not row[:n].any()]
    if not rows:
        return np.zeros((0, r), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def inverse(M: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square matrix over GF(p); raises ValueError when singular."""
    M = np.asarray(M, dtype=np.int64) % p
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("matrix is not square")
    work = Subspace(p, 2 * n, np.hstack([M, np.eye(n, dtype=np.int64)]))
    R = work.matrix
    if R.shape[0] != n or work.pivots[n - 1] != n - 1:
        raise ValueError("matrix is singular")
    return R[:, n:]


def _kernel_gf2(images: np.ndarray) -> np.ndarray:
    """Bit-packed elimination; the identity block rides above bit n."""
    r, n = images.shape
    packed = np.packbits(images.astype(np.uint8), axis=1, bitorder="little")
    rows = [int.from_bytes(b.tobytes(), "little") | (1 << (n + i)) for i, b in enumerate(packed)]
    low = (1 << n) - 1
    pivots: dict[int, int] = {}
    out = []
    for x in rows:
        while x & low:
            b = (x & -x).bit_length() - 1
            if b not in pivots:
                pivots[b] = x
                break
            x ^= pivots[b]
        else:
            out.append(x >> n)
    if not out:
        return np.zeros((0, r), dtype=np.int64)
    return np.array([[(x >> i) & 1 for i in range(r)] for x in out], dtype=np.int64)


def complement_basis(sub: Subspace, candidates: Sequence) -> list[int]:
    """Indices of ``candidates`` extending a basis of ``sub`` to span everything reachable."""
    work = sub.copy()
    picked = []
    for i, v in enumerate(candidates):
        if work.extend([v]):
            picked.append(i)
    return picked
