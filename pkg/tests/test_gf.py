"""Exact GF(p) linear algebra: unit oracles plus algebraic properties."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from filicoh import gf

PRIMES = [2, 3, 5, 7]


def test_is_prime_small_range():
    expected = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}
    assert {n for n in range(2, 32) if gf.is_prime(n)} == expected
    assert not gf.is_prime(1)
    assert not gf.is_prime(0)


def test_inv_mod_known_values():
    assert gf.inv_mod(3, 7) == 5
    assert gf.inv_mod(1, 2) == 1
    assert gf.inv_mod(2, 5) == 3


def test_inv_mod_zero_rejected():
    with pytest.raises(ValueError):
        gf.inv_mod(0, 5)
    with pytest.raises(ValueError):
        gf.inv_mod(10, 5)


@pytest.mark.parametrize("p", PRIMES)
def test_inv_mod_exhaustive(p):
    for a in range(1, p):
        assert (a * gf.inv_mod(a, p)) % p == 1


def test_rref_singular_2x2():
    r, pivots = gf.rref([[2, 1], [1, 2]], 3)
    assert r.tolist() == [[1, 2], [0, 0]]
    assert pivots == [0]


def test_rref_empty_and_zero():
    r, pivots = gf.rref(np.zeros((2, 3), dtype=np.int64), 5)
    assert r.tolist() == [[0, 0, 0], [0, 0, 0]]
    assert pivots == []


def test_kernel_basis_known():
    # Oracle: exhaustive enumeration of all 25 vectors over GF(5).
    m = [[1, 2], [2, 4]]
    basis = gf.kernel_basis(m, 5)
    assert basis.tolist() == [[3, 1]]
    arr = np.array(m)
    brute = [
        (x, y)
        for x in range(5)
        for y in range(5)
        if ((arr @ np.array([x, y])) % 5 == 0).all()
    ]
    span = {tuple((c * basis[0]) % 5) for c in range(5)}
    assert set(brute) == span


def test_complement_basis_prefers_candidate_order():
    sub = [[1, 1]]
    whole = [[1, 0], [0, 1]]
    comp = gf.complement_basis(sub, whole, 3)
    assert comp.tolist() == [[1, 0]]
    comp_rev = gf.complement_basis(sub, [[0, 1], [1, 0]], 3)
    assert comp_rev.tolist() == [[0, 1]]


def test_complement_basis_empty_sub():
    comp = gf.complement_basis([], [[1, 2], [2, 4], [0, 1]], 5)
    assert comp.tolist() == [[1, 2], [0, 1]]


def test_in_span():
    rows = [[1, 0, 2], [0, 1, 1]]
    assert gf.in_span(rows, [1, 1, 3], 5)
    assert not gf.in_span(rows, [0, 0, 1], 5)
    assert gf.in_span([], [0, 0], 5)
    assert not gf.in_span([], [1, 0], 5)


def matrices(p, max_dim=4):
    side = st.integers(min_value=1, max_value=max_dim)
    return side.flatmap(
        lambda n: side.flatmap(
            lambda m: st.lists(
                st.lists(st.integers(min_value=0, max_value=p - 1), min_size=m, max_size=m),
                min_size=n,
                max_size=n,
            )
        )
    )


@settings(max_examples=60, derandomize=True)
@given(data=st.data(), p=st.sampled_from(PRIMES))
def test_rref_idempotent(data, p):
    """rref of an rref is itself."""
    m = data.draw(matrices(p))
    r, pivots = gf.rref(m, p)
    r2, pivots2 = gf.rref(r, p)
    assert (r == r2).all()
    assert pivots == pivots2


@settings(max_examples=60, derandomize=True)
@given(data=st.data(), p=st.sampled_from(PRIMES))
def test_kernel_vectors_annihilate(data, p):
    """Every kernel basis vector multiplies to zero, and count matches rank."""
    m = data.draw(matrices(p))
    arr = gf.normalize(m, p)
    basis = gf.kernel_basis(arr, p)
    for v in basis:
        assert not ((arr @ v) % p).any()
    assert len(basis) == arr.shape[1] - gf.rank(arr, p)


@settings(max_examples=60, derandomize=True)
@given(data=st.data(), p=st.sampled_from(PRIMES))
def test_complement_restores_full_rank(data, p):
    """sub plus its complement spans exactly span(whole)."""
    whole = gf.normalize(data.draw(matrices(p)), p)
    k = data.draw(st.integers(min_value=0, max_value=len(whole)))
    sub = whole[:k]
    comp = gf.complement_basis(sub, whole, p)
    combined = np.vstack([sub, comp]) if comp.size else sub
    assert gf.rank(combined, p) == gf.rank(whole, p)
    assert len(comp) == gf.rank(whole, p) - gf.rank(sub, p)


@settings(max_examples=40, derandomize=True)
@given(data=st.data(), p=st.sampled_from(PRIMES))
def test_mat_pow_matches_repeated_mul(data, p):
    n = data.draw(st.integers(min_value=1, max_value=3))
    m = gf.normalize(
        data.draw(
            st.lists(
                st.lists(st.integers(min_value=0, max_value=p - 1), min_size=n, max_size=n),
                min_size=n,
                max_size=n,
            )
        ),
        p,
    )
    k = data.draw(st.integers(min_value=0, max_value=6))
    expected = gf.identity(n)
    for _ in range(k):
        expected = gf.mat_mul(expected, m, p)
    assert (gf.mat_pow(m, k, p) == expected).all()


def test_span_tracker_matches_rank_and_in_span():
    rng = np.random.default_rng(71)
    for p in (2, 5, 13):
        rows = rng.integers(0, p, size=(6, 9))
        tracker = gf.SpanTracker(p, rows)
        assert tracker.rank == gf.rank(rows, p)
        for _ in range(20):
            v = rng.integers(0, p, size=9)
            assert tracker.contains(v) == gf.in_span(rows, v, p)


def test_span_tracker_add_reports_growth():
    p = 7
    tracker = gf.SpanTracker(p)
    assert tracker.rank == 0
    assert tracker.contains(np.zeros(4, dtype=np.int64))
    assert tracker.add([1, 2, 0, 0])
    assert not tracker.add([2, 4, 0, 0])
    assert tracker.add([0, 0, 3, 1])
    assert tracker.rank == 2
    assert tracker.contains([3, 6, 3, 1])
    assert not tracker.contains([0, 1, 0, 0])


def test_span_tracker_greedy_matches_rank_filter():
    # the add-if-it-grows loop must pick the same rows a rank check would
    rng = np.random.default_rng(73)
    p = 5
    rows = rng.integers(0, p, size=(10, 6))
    tracker = gf.SpanTracker(p)
    picked = []
    kept = []
    for row in rows:
        before = len(picked)
        if tracker.add(row):
            picked.append(row)
        stack = np.vstack(kept + [row]) if kept else row.reshape(1, -1)
        if gf.rank(stack, p) > (gf.rank(np.vstack(kept), p) if kept else 0):
            kept.append(row)
            assert len(picked) == before + 1
        else:
            assert len(picked) == before
