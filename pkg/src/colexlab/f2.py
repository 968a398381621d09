"""Exact linear algebra over GF(2) and phase-tracked Pauli operators.

Binary vectors are packed into Python ints (bit j = coordinate j), so XOR,
AND and popcounts run at word speed for the problem sizes we care about
(n up to a few thousand).  Matrices are tuples of packed rows.

Paulis are stored in the normal form i^phase * X^x * Z^z, with X written
before Z.  Every module in the package shares this convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional


def parity(bits: int) -> int:
    return bits.bit_count() & 1


@dataclass(frozen=True)
class BinVec:
    """A length-n vector over GF(2), packed into an int."""

    n: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("negative length")
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError("bits outside declared length")

    @staticmethod
    def from_indices(n: int, indices: Iterable[int]) -> "BinVec":
        bits = 0
        for i in indices:
            if not 0 <= i < n:
                raise ValueError(f"index {i} out of range for length {n}")
            bits |= 1 << i
        return BinVec(n, bits)

    def __xor__(self, other: "BinVec") -> "BinVec":
        if self.n != other.n:
            raise ValueError("length mismatch")
        return BinVec(self.n, self.bits ^ other.bits)

    def __and__(self, other: "BinVec") -> "BinVec":
        if self.n != other.n:
            raise ValueError("length mismatch")
        return BinVec(self.n, self.bits & other.bits)

    def dot(self, other: "BinVec") -> int:
        if self.n != other.n:
            raise ValueError("length mismatch")
        return parity(self.bits & other.bits)

    def weight(self) -> int:
        return self.bits.bit_count()

    def __getitem__(self, i: int) -> int:
        return (self.bits >> i) & 1

    def indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if (self.bits >> i) & 1)

    def __iter__(self):
        return iter(self.indices())


@dataclass(frozen=True)
class BinMat:
    """A matrix over GF(2): a tuple of packed rows of equal length."""

    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        for r in self.rows:
            if not 0 <= r < (1 << self.ncols):
                raise ValueError("row outside declared width")

    @staticmethod
    def from_vectors(vecs: Iterable[BinVec]) -> "BinMat":
        vecs = list(vecs)
        if not vecs:
            raise ValueError("empty matrix")
        n = vecs[0].n
        if any(v.n != n for v in vecs):
            raise ValueError("rows of unequal length")
        return BinMat(n, tuple(v.bits for v in vecs))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def row(self, i: int) -> BinVec:
        return BinVec(self.ncols, self.rows[i])


def f2_rank_solve(
    a: BinMat, b: Optional[BinVec] = None
) -> tuple[int, Optional[BinVec]]:
    """Rank of `a` and, if `b` is given, a solution x of x*a = b.

    The solution is a combination of rows (length = number of rows); it is
    present only when the system is consistent.  Gaussian elimination with
    leftmost-pivot selection, deterministic for a fixed input.
    """
    if a.nrows == 0:
        raise ValueError("empty matrix")
    if b is not None and b.n != a.ncols:
        raise ValueError("dimension mismatch between matrix and target")
    rows = list(a.rows)
    combos = [1 << i for i in range(len(rows))]  # row-combination bookkeeping
    rank = 0
    for col in range(a.ncols):
        pivot = None
        for r in range(rank, len(rows)):
            if (rows[r] >> col) & 1:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        combos[rank], combos[pivot] = combos[pivot], combos[rank]
        for r in range(len(rows)):
            if r != rank and ((rows[r] >> col) & 1):
                rows[r] ^= rows[rank]
                combos[r] ^= combos[rank]
        rank += 1
        if rank == len(rows):
            break
    if b is None:
        return rank, None
    target = b.bits
    combo = 0
    for r in range(rank):
        low = rows[r] & -rows[r]  # pivot bit of this reduced row
        if target & low:
            target ^= rows[r]
            combo ^= combos[r]
    if target != 0:
        return rank, None
    return rank, BinVec(a.nrows, combo)


def f2_rank(rows: Iterable[int], ncols: int) -> int:
    return f2_rank_solve(BinMat(ncols, tuple(rows)))[0]


def solve_in_rowspace(rows: Iterable[int], ncols: int, target: int) -> Optional[int]:
    """Combination mask c with XOR of rows[i] (i in c) == target, or None."""
    mat = BinMat(ncols, tuple(rows))
    _, sol = f2_rank_solve(mat, BinVec(ncols, target))
    return None if sol is None else sol.bits


def in_rowspace(rows: Iterable[int], ncols: int, target: int) -> bool:
    return solve_in_rowspace(rows, ncols, target) is not None


def independent_rows(rows: Iterable[int], ncols: int) -> list[int]:
    """Indices of a maximal independent subset, greedy in row order."""
    basis: list[int] = []
    picked: list[int] = []
    for i, r in enumerate(rows):
        v = r
        for b in basis:
            low = b & -b
            if v & low:
                v ^= b
        if v:
            # keep the reduced vector; order of reduction is deterministic
            basis.append(v)
            basis.sort(key=lambda x: x & -x)
            picked.append(i)
    return picked


def nullspace(rows: tuple[int, ...], ncols: int) -> list[int]:
    """Basis of {v : row . v = 0 for all rows}, as packed ints."""
    work = list(rows)
    pivots: list[int] = []  # column index per pivot row
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(work)):
            if (work[r] >> col) & 1:
                pivot = r
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        for r in range(len(work)):
            if r != rank and ((work[r] >> col) & 1):
                work[r] ^= work[rank]
        pivots.append(col)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fc in free:
        v = 1 << fc
        for r, pc in enumerate(pivots):
            if (work[r] >> fc) & 1:
                v |= 1 << pc
        out.append(v)
    return out


@dataclass(frozen=True)
class Pauli:
    """i^phase * X^x * Z^z on n qubits; phase is an exponent of i, mod 4."""

    n: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.x < (1 << self.n) or not 0 <= self.z < (1 << self.n):
            raise ValueError("support outside declared length")
        object.__setattr__(self, "phase", self.phase % 4)

    @staticmethod
    def identity(n: int) -> "Pauli":
        return Pauli(n)

    @staticmethod
    def single(n: int, kind: str, qubit: int) -> "Pauli":
        if kind == "X":
            return Pauli(n, x=1 << qubit)
        if kind == "Z":
            return Pauli(n, z=1 << qubit)
        if kind == "Y":
            return Pauli(n, x=1 << qubit, z=1 << qubit, phase=1)
        raise ValueError(f"unknown Pauli kind {kind!r}")

    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    def dagger(self) -> "Pauli":
        return Pauli(self.n, self.x, self.z, (-self.phase + 2 * (self.x & self.z).bit_count()) % 4)

    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0 and self.phase == 0


def pauli_product(p: Pauli, q: Pauli) -> Pauli:
    """Operator product p*q in the shared normal form.

    Moving q's X part through p's Z part contributes (-1) per overlap bit.
    """
    if p.n != q.n:
        raise ValueError("length mismatch")
    phase = (p.phase + q.phase + 2 * (p.z & q.x).bit_count()) % 4
    return Pauli(p.n, p.x ^ q.x, p.z ^ q.z, phase)


def symplectic_commute(p: Pauli, q: Pauli) -> bool:
    """True iff p and q commute (symplectic inner product is even)."""
    if p.n != q.n:
        raise ValueError("length mismatch")
    return (parity(p.x & q.z) ^ parity(p.z & q.x)) == 0
