import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from foldenc.diamond import (build_layout, decode_placement, diamond_sites, encode_diamond,
                             placement_to_bits)
from foldenc.lattice import Instance, conformation_energy, enumerate_saws, fold_to_coords, is_saw
from foldenc.solve import brute_force_min, diamond_min, one_hot_certificate

from helpers import random_instance


def test_first_shell_is_clockwise_from_north():
    assert diamond_sites(2) == [(0, 1), (1, 0), (0, -1), (-1, 0)]


def test_register_sizes_with_cutoff():
    assert build_layout(6, cutoff=3).widths() == [4, 8, 16, 8, 16]
    assert build_layout(6).widths() == [4, 8, 16, 24, 36]


def test_equal_parity_registers_share_a_prefix():
    a, b = diamond_sites(4), diamond_sites(6)
    assert b[:len(a)] == a


def test_always_quadratic():
    rng = random.Random(2)
    for N in range(3, 8):
        assert encode_diamond(random_instance(rng, N)).poly.degree() == 2


def test_placement_round_trip():
    layout = build_layout(5)
    for fold in enumerate_saws(5):
        coords = fold_to_coords(fold)
        assert decode_placement(placement_to_bits(coords, layout), layout) == coords


def test_brute_force_agrees_on_small_layout():
    inst = Instance.hp("HPPH")
    enc = encode_diamond(inst, cutoff=2)
    assert enc.nvars == 16
    value, _ = brute_force_min(enc.poly, enc.layout.info_vars)
    assert one_hot_certificate(enc.poly, enc.layout)
    assert diamond_min(enc.poly, enc.layout).value == value == -1


@settings(max_examples=10, deadline=None)
@given(st.integers(4, 5), st.integers(0, 10**6))
def test_one_hot_placements_score_energy_or_more(N, seed):
    """Valid walks cost their native energy; any other one-hot placement costs more than the ground."""
    inst = random_instance(random.Random(seed), N)
    enc = encode_diamond(inst)
    layout = enc.layout
    regs = [layout.sites[k] for k in range(2, N + 1)]
    ground = min(conformation_energy(fold_to_coords(f), inst) for f in enumerate_saws(N))
    for choice in itertools.product(*regs):
        coords = [(0, 0), *choice]
        e = enc.poly.evaluate(placement_to_bits(coords, layout))
        chain = all(abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1 for a, b in zip(coords, coords[1:]))
        if chain and is_saw(coords):
            assert e == conformation_energy(coords, inst)
        else:
            assert e > ground


def test_decode_rejects_double_occupancy():
    layout = build_layout(3)
    bits = {v: 0 for v in layout.info_vars}
    bits[layout.register(2)[0]] = bits[layout.register(2)[1]] = 1
    bits[layout.register(3)[0]] = 1
    with pytest.raises(ValueError):
        decode_placement(bits, layout)


def test_one_bit_penalty_covers_concentrated_contacts():
    # one residue pair carries all the interaction: a surplus bit can earn 4 |J| from it
    J = [[0] * 6 for _ in range(6)]
    J[1][4] = J[4][1] = -3
    enc = encode_diamond(Instance.from_matrix("ABCDEF", J))
    assert enc.penalties["lambda_one"] == 8 * 4 + 4 * 3 + 1
    assert one_hot_certificate(enc.poly, enc.layout)
