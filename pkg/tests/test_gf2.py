import random

from hypothesis import given
from hypothesis import strategies as st

from fermenc import gf2

rows_strategy = st.lists(st.integers(min_value=0, max_value=2**12 - 1),
                         max_size=10)


def naive_rank(rows):
    """Rank by enumerating the span."""
    span = {0}
    for r in rows:
        span |= {s ^ r for s in span}
    return len(span).bit_length() - 1


@given(rows_strategy)
def test_rank_matches_span_size(rows):
    assert gf2.rank(rows) == naive_rank(rows)


@given(rows_strategy)
def test_echelon_spans_same_space(rows):
    basis = gf2.echelon(rows)
    assert gf2.rank(basis) == len(basis) == gf2.rank(rows)
    for r in rows:
        assert gf2.in_rowspan(basis, r)
    for b in basis:
        assert gf2.in_rowspan(rows, b)
    # reduced: each pivot bit occurs in exactly one basis row
    for i, b in enumerate(basis):
        lead = 1 << (b.bit_length() - 1)
        assert all(not (other & lead) for j, other in enumerate(basis)
                   if j != i)


@given(rows_strategy, st.integers(min_value=0, max_value=2**12 - 1))
def test_in_rowspan_matches_enumeration(rows, vec):
    span = {0}
    for r in rows:
        span |= {s ^ r for s in span}
    assert gf2.in_rowspan(rows, vec) == (vec in span)


@given(rows_strategy, st.randoms(use_true_random=False))
def test_solve_roundtrip(rows, rng):
    # build a guaranteed-consistent system, check the solution solves it
    x_true = rng.getrandbits(12)
    targets = [gf2.popcount_parity(r & x_true) for r in rows]
    x = gf2.solve(rows, targets)
    assert x is not None
    for r, b in zip(rows, targets):
        assert gf2.popcount_parity(r & x) == b


def test_solve_inconsistent():
    # x0 = 0 and x0 = 1
    assert gf2.solve([1, 1], [0, 1]) is None
    # 0 = 1
    assert gf2.solve([0], [1]) is None


def test_solve_underdetermined_sets_free_vars_zero():
    x = gf2.solve([0b11], [1])
    assert x is not None
    assert gf2.popcount_parity(0b11 & x) == 1


@given(rows_strategy)
def test_nullspace(rows):
    n_cols = 12
    null = gf2.nullspace(rows, n_cols)
    assert len(null) == n_cols - gf2.rank(rows)
    for v in null:
        assert all(gf2.popcount_parity(r & v) == 0 for r in rows)
    assert gf2.rank(null) == len(null)


def test_nullspace_exhaustive_small():
    rng = random.Random(7)
    for _ in range(50):
        n_cols = 6
        rows = [rng.getrandbits(n_cols) for _ in range(rng.randrange(5))]
        null = gf2.nullspace(rows, n_cols)
        kernel = {v for v in range(2**n_cols)
                  if all(gf2.popcount_parity(r & v) == 0 for r in rows)}
        span = {0}
        for b in null:
            span |= {s ^ b for s in span}
        assert span == kernel
