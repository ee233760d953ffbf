"""Linear algebra over GF(2) with rows stored as python ints (bitsets).

Bit i of a row int is the coefficient of variable/column i.  Ints are
arbitrary precision, so the same helpers serve 4-qubit toys and
128-qubit lattices.
"""

from __future__ import annotations


def rank(rows: list[int]) -> int:
    """Rank of the span of ``rows``."""
    pivots: list[int] = []
    for row in rows:
        for p in pivots:
            row = min(row, row ^ p)
        if row:
            pivots.append(row)
    return len(pivots)


def echelon(rows: list[int]) -> list[int]:
    """Reduced echelon basis (each pivot bit appears in one row only),
    sorted by descending leading bit."""
    basis: list[int] = []
    for row in rows:
        for b in basis:
            row = min(row, row ^ b)
        if row:
            basis.append(row)
    # back-substitute so every pivot occurs in exactly one basis row
    basis.sort(reverse=True)
    for i, b in enumerate(basis):
        lead = 1 << (b.bit_length() - 1)
        for j in range(i):
            if basis[j] & lead:
                basis[j] ^= b
    return basis


def in_rowspan(rows: list[int], vec: int) -> bool:
    """True if ``vec`` lies in the GF(2) span of ``rows``."""
    for row in rows:
        if row == 0:
            continue
        lead = 1 << (row.bit_length() - 1)
        if vec & lead:
            vec ^= row
    # rows may not be echelonized; fall back to full reduction
    if vec:
        basis = echelon(rows)
        for b in basis:
            vec = min(vec, vec ^ b)
    return vec == 0


def solve(rows: list[int], targets: list[int]) -> int | None:
    """Solve ``A x = b`` over GF(2) where row i of A is ``rows[i]`` and
    ``targets[i]`` is the bit b_i.  Returns one solution as a bitset of
    x-bits, or None if inconsistent.  Free variables are set to 0.

    The right-hand side is kept in bit 0 of each augmented row (body
    shifted up by one), so echelonization can never pivot on it.
    """
    if len(rows) != len(targets):
        raise ValueError("rows and targets must have equal length")
    aug = echelon([(r << 1) | (b & 1) for r, b in zip(rows, targets)])
    x = 0
    for row in aug:
        if row == 1:
            return None  # empty combination with rhs 1: inconsistent
        # after full reduction each pivot column appears in one row only,
        # so with free variables fixed at 0 the pivot equals the rhs bit
        if row & 1:
            x |= 1 << (row.bit_length() - 2)
    return x


def nullspace(rows: list[int], n_cols: int) -> list[int]:
    """Basis of {x : A x = 0} with A's rows given as bitsets over
    ``n_cols`` variables."""
    basis = echelon(rows)
    pivot_cols = {b.bit_length() - 1 for b in basis}
    free_cols = [c for c in range(n_cols) if c not in pivot_cols]
    out = []
    for f in free_cols:
        x = 1 << f
        for b in basis:
            if b & (1 << f):
                # pivot var of this row must absorb the free column
                x |= 1 << (b.bit_length() - 1)
        out.append(x)
    return out


def popcount_parity(v: int) -> int:
    """Parity (0/1) of the number of set bits."""
    return bin(v).count("1") & 1
