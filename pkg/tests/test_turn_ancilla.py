import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from foldenc.lattice import Instance, enumerate_saws, fold_to_coords, native_energy
from foldenc.pbpoly import PBPoly
from foldenc.solve import info_values
from foldenc.turn_ancilla import (Penalties, bit_count, build_layout, canonical_completion,
                                  choose_lambda, e_back, e_pair, encode, fold_to_info, g,
                                  info_to_fold, position, slack_width)

from goldens import HPPHP_REMAP, HPPHP_TURN_ANCILLA, N6_BACK, PSVKMA_PAIR
from helpers import all_bits, random_instance


def test_hpphp_matches_reference_coefficients():
    enc = encode(Instance.hp("HPPHP"), Penalties(1))
    assert enc.nvars == 10
    assert enc.poly.relabel(HPPHP_REMAP) == PBPoly(dict(HPPHP_TURN_ANCILLA))


def test_back_penalty_n6_matches_reference():
    assert e_back(6, Penalties(1)) == PBPoly(dict(N6_BACK))


def test_pair_term_psvkma_matches_reference():
    inst = Instance.mj("PSVKMA")
    assert e_pair(build_layout(inst), inst) == PBPoly(dict(PSVKMA_PAIR))


def test_psvkma_layout():
    layout = build_layout(Instance.mj("PSVKMA"))
    assert layout.slack_bits == {(1, 5): (8, 4), (2, 6): (12, 4)}
    assert layout.omega_bits == {(1, 4): 16, (1, 6): 17, (2, 5): 18, (3, 6): 19}
    assert layout.total_bits == 19 == bit_count(6, 4)


@pytest.mark.parametrize("d,mu", [(2, 2), (4, 4), (6, 6), (8, 6), (9, 7)])
def test_slack_width_holds_the_largest_distance(d, mu):
    assert slack_width(d) == mu
    assert 2 ** mu >= d * d > 2 ** (mu - 1)


@pytest.mark.parametrize("N", range(4, 9))
def test_positions_and_distances_match_coordinates(N):
    for fold in enumerate_saws(N):
        bits = fold_to_info(fold)
        coords = fold_to_coords(fold)
        for n in range(1, N + 1):
            assert (position(n, "x", N).evaluate(bits), position(n, "y", N).evaluate(bits)) == coords[n - 1]
        for i, j in itertools.combinations(range(1, N + 1), 2):
            (xi, yi), (xj, yj) = coords[i - 1], coords[j - 1]
            assert g(i, j).evaluate(bits) == (xi - xj) ** 2 + (yi - yj) ** 2


def test_info_round_trip():
    for fold in enumerate_saws(7):
        assert info_to_fold(fold_to_info(fold), 7) == fold


def test_lambda_is_above_total_reward():
    assert choose_lambda(Instance.mj("PSVKMA")).lambda_overlap == 11
    with pytest.raises(ValueError):
        Penalties(3, 4)


@settings(max_examples=15, deadline=None)
@given(st.integers(4, 6), st.integers(0, 10**6))
def test_info_spectrum_equals_native_energy(N, seed):
    """Min over ancillae of every valid fold equals its energy; invalid folds cost more."""
    inst = random_instance(random.Random(seed), N)
    enc = encode(inst)
    spectrum = info_values(enc.poly, enc.layout.info_vars)
    valid = set()
    for fold in enumerate_saws(N):
        key = tuple(fold_to_info(fold)[v] for v in enc.layout.info_vars)
        valid.add(key)
        assert spectrum[key] == native_energy(fold, inst)
        assert enc.poly.evaluate(canonical_completion(enc.layout, fold, inst)) == native_energy(fold, inst)
    ground = min(spectrum[k] for k in valid)
    assert all(v > ground for k, v in spectrum.items() if k not in valid)
