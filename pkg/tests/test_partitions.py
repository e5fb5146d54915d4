from fractions import Fraction
from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, strategies as st

from matchscheme.partitions import (
    content_polynomial_at,
    dominates,
    dominating_partitions,
    double_factorial_product,
    is_subpartition,
    make_partition,
    odd_double_factorial,
    parse_partition,
    partitions_of,
    refinement_count,
    set_partition_count,
    set_partition_shape,
    set_partitions_of_shape,
    sub_partitions,
    z_value,
)

# p(n) for n = 0..15 (OEIS A000041)
PARTITION_NUMBERS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176]


def test_partition_counts():
    for n, p in enumerate(PARTITION_NUMBERS):
        assert len(partitions_of(n)) == p


def test_partition_order():
    assert partitions_of(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
    assert partitions_of(0) == ((),)


def test_parse_and_normalise():
    assert parse_partition("4,2") == (4, 2)
    assert parse_partition("(1, 3, 2)") == (3, 2, 1)
    assert make_partition([0, 2, 5]) == (5, 2)
    with pytest.raises(ValueError):
        parse_partition("4,x")
    with pytest.raises(ValueError):
        parse_partition("2,-1")


def test_dominance_examples():
    assert dominates((3, 1), (2, 2))
    assert not dominates((2, 2), (3, 1))
    assert dominates((3, 3), (4, 1, 1)) is False
    assert dominates((4, 1, 1), (3, 3)) is False
    with pytest.raises(ValueError):
        dominates((3,), (2, 1, 1))


def _box_moves(lam):
    # partitions obtained by moving one box to a strictly higher row
    out = set()
    parts = list(lam) + [0]
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            if parts[j] == 0:
                continue
            new = parts.copy()
            new[i] += 1
            new[j] -= 1
            if all(new[k] >= new[k + 1] for k in range(len(new) - 1)):
                out.add(make_partition(new))
    return out


@given(st.integers(min_value=1, max_value=10), st.data())
def test_dominance_is_transitive_closure_of_box_moves(n, data):
    lam = data.draw(st.sampled_from(partitions_of(n)))
    reach, frontier = {lam}, [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for nu in _box_moves(mu):
                if nu not in reach:
                    reach.add(nu)
                    nxt.append(nu)
        frontier = nxt
    assert reach == {mu for mu in partitions_of(n) if dominates(mu, lam)}


def test_dominating_partitions_matches_filter():
    for n in range(0, 11):
        for lam in partitions_of(n):
            assert dominating_partitions(lam) == [mu for mu in partitions_of(n) if dominates(mu, lam)]


def test_double_factorials():
    assert [odd_double_factorial(k) for k in range(7)] == [1, 1, 3, 15, 105, 945, 10395]
    assert double_factorial_product((4, 2)) == 105 * 3
    with pytest.raises(ValueError):
        odd_double_factorial(-1)


def test_z_value_is_centraliser_order():
    # sum over classes of m!/z_rho is m!
    for m in range(1, 9):
        assert sum(Fraction(1, z_value(rho)) for rho in partitions_of(m)) == 1


def _brute_set_partitions(N, shape):
    seen = set()
    for perm in permutations(range(1, N + 1)):
        blocks, start = [], 0
        for s in shape:
            blocks.append(tuple(sorted(perm[start:start + s])))
            start += s
        seen.add(tuple(sorted(blocks)))
    return seen


@pytest.mark.parametrize("shape", [(4, 2), (2, 2, 2), (3, 2, 1), (2, 2, 1, 1), (6,)])
def test_set_partitions_of_shape_against_brute_force(shape):
    N = sum(shape)
    got = list(set_partitions_of_shape(N, shape))
    assert len(got) == len(set(got)) == set_partition_count(shape)
    assert {tuple(sorted(b)) for b in got} == _brute_set_partitions(N, shape)
    assert all(set_partition_shape(b) == shape for b in got)
    # blocks come sorted by their minimum element
    assert all([b[0] for b in sp] == sorted(b[0] for b in sp) for sp in got)


def test_set_partition_order_is_deterministic():
    got = list(set_partitions_of_shape(4, (2, 2)))
    assert got == [((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3))]


def test_refinement_count():
    # a fixed matching refines n!/(prod lam_i! m_i!) set partitions of shape 2*lam
    assert refinement_count((4, 2)) == 15
    assert refinement_count((2, 1, 1)) == 6
    assert refinement_count((3, 1, 1, 1)) == 20
    assert refinement_count((2, 1)) == 3


def test_content_polynomial():
    # (1^n): cells (i,1), factor x - i + 1
    for n in range(5, 9):
        assert content_polynomial_at((1,) * n, 4) == 0
    assert content_polynomial_at((1,) * 4, 4) == 4 * 3 * 2 * 1
    assert content_polynomial_at((2,), 0) == (0 - 1 + 2 - 1) * (0 - 1 + 4 - 1)


def test_sub_partitions():
    assert set(sub_partitions((3, 1, 1))) == {(3,), (1,), (1, 1), (3, 1)}
    assert all(is_subpartition(mu, (4, 2, 2, 1)) for mu in sub_partitions((4, 2, 2, 1)))
    # long hooks stay cheap: 2 * 41 choices minus the empty and full ones
    assert len(sub_partitions((10,) + (1,) * 40)) == 2 * 41 - 2
