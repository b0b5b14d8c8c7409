import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from foldenc.lattice import Instance, enumerate_saws, fold_to_coords, native_energy
from foldenc.pbpoly import PBPoly
from foldenc.solve import exhaustive_min
from foldenc.turn_ancilla import fold_to_info
from foldenc.turn_circuit import (MAX_N, adjacency, digit_width, encode_circuit, half_adder,
                                  mobius, overlap_pair, ripple_sum, sum_string, xnor, xor)

from helpers import all_bits, random_instance


def all_info_assignments(N):
    n = 2 * N - 5
    for bits in itertools.product((0, 1), repeat=n):
        yield dict(zip(range(1, n + 1), bits))


def walk_coords(a, N):
    """Coordinates of the (possibly self-intersecting) walk encoded by info bits."""
    turns = ["01", f"0{a[1]}"] + [f"{a[2 * j - 4]}{a[2 * j - 3]}" for j in range(3, N)]
    return fold_to_coords(turns)


def test_gates_truth_tables():
    x, y = PBPoly.var(1), PBPoly.var(2)
    for a, b in itertools.product((0, 1), repeat=2):
        v = {1: a, 2: b}
        assert xor(x, y).evaluate(v) == a ^ b
        assert xnor(x, y).evaluate(v) == 1 - (a ^ b)
        s, c = half_adder(x, y)
        assert (s.evaluate(v), c.evaluate(v)) == (a ^ b, a & b)


@pytest.mark.parametrize("n", range(1, 9))
def test_ripple_sum_counts_ones(n):
    s = ripple_sum([PBPoly.var(v) for v in range(1, n + 1)])
    assert s.width == digit_width(n)
    X = all_bits(n)
    for row in X:
        assert s.value(list(row)) == int(row.sum())


def test_digit_width_at_powers_of_two():
    # four turns can all point the same way: the count 4 needs three digits
    assert digit_width(4) == 3
    assert digit_width(3) == 2


def test_mobius_is_exact_inverse_of_evaluation():
    rng = random.Random(0)
    for _ in range(20):
        m = rng.randint(0, 6)
        vals = np.array([rng.randint(-5, 5) for _ in range(1 << m)])
        variables = sorted(rng.sample(range(1, 12), m))
        p = mobius(vals, variables)
        for x in range(1 << m):
            a = {v: (x >> b) & 1 for b, v in enumerate(variables)}
            assert p.evaluate(a) == vals[x]


@pytest.mark.parametrize("N", range(4, 9))
def test_sum_strings_count_directional_turns(N):
    for a in itertools.islice(all_info_assignments(N), 0, None, 3):
        coords = walk_coords(a, N)
        steps = [(x1 - x0, y1 - y0) for (x0, y0), (x1, y1) in zip(coords, coords[1:])]
        for i in range(1, N):
            for j in range(i + 1, N + 1):
                seg = steps[i - 1:j - 1]
                for d, step in (("x+", (1, 0)), ("x-", (-1, 0)), ("y+", (0, 1)), ("y-", (0, -1))):
                    assert sum_string(i, j, d).value(a) == seg.count(step)


@pytest.mark.parametrize("N", range(4, 8))
def test_overlap_and_adjacency_against_coordinates(N):
    for a in all_info_assignments(N):
        c = walk_coords(a, N)
        for i in range(1, N + 1):
            for j in range(i + 2, N + 1, 2):
                assert overlap_pair(i, j).evaluate(a) == int(c[i - 1] == c[j - 1])
            for j in range(i + 3, N + 1, 2):
                dx, dy = abs(c[i - 1][0] - c[j - 1][0]), abs(c[i - 1][1] - c[j - 1][1])
                assert adjacency("x", i, j).evaluate(a) == int(dx == 1 and dy == 0)
                assert adjacency("y", i, j).evaluate(a) == int(dx == 0 and dy == 1)


@pytest.mark.parametrize("N", range(4, 8))
def test_symbolic_and_table_builds_agree(N):
    for i in range(1, N - 1):
        for j in range(i + 2, N + 1, 2):
            assert overlap_pair(i, j, symbolic=True) == overlap_pair(i, j)
        for j in range(i + 3, N + 1, 2):
            assert adjacency("x", i, j, symbolic=True) == adjacency("x", i, j)


def test_size_cap():
    with pytest.raises(ValueError):
        encode_circuit(Instance.hp("H" * (MAX_N + 1)))


def test_psvkma_minimum():
    enc = encode_circuit(Instance.mj("PSVKMA"))
    res = exhaustive_min(enc.poly, enc.layout)
    assert res.value == -6
    assert res.fold == ("01", "00", "00", "10", "11")


@settings(max_examples=15, deadline=None)
@given(st.integers(4, 7), st.integers(0, 10**6))
def test_valid_folds_score_their_energy(N, seed):
    inst = random_instance(random.Random(seed), N)
    enc = encode_circuit(inst)
    for fold in enumerate_saws(N):
        assert enc.poly.evaluate(fold_to_info(fold)) == native_energy(fold, inst)
