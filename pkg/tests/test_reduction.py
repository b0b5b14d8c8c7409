import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from foldenc.lattice import Instance
from foldenc.pbpoly import PBPoly
from foldenc.reduction import (QuboModel, and_gadget, build_cover, choose_delta, format_qubo,
                               greedy_cover, parse_qubo, qubo_to_ising, reduce_to_2local)
from foldenc.solve import exhaustive_min
from foldenc.turn_ancilla import Penalties, encode

from helpers import all_bits, qubo_energies_all, random_poly

# reference 28-bit minimizer of the reduced PSVKMA model
PSVKMA_QUBO_SOLUTION = "0001011110011100101000001000"


def test_gadget_rejects_nonpositive_delta():
    with pytest.raises(ValueError):
        and_gadget(1, 2, 3, 0)


def test_hpphp_cover():
    poly = encode(Instance.hp("HPPHP"), Penalties(1)).poly
    cover = build_cover(poly)
    counts = sorted(len(t) for t in cover.high_terms)
    assert counts == [3] * 27 + [4] * 3
    assert greedy_cover(cover) == [(2, 4), (1, 3), (1, 5), (3, 5)]
    assert cover.is_covered()


def test_psvkma_reduction_with_lambda_five():
    enc = encode(Instance.mj("PSVKMA"), Penalties(5))
    qubo, rmap = reduce_to_2local(enc.poly, enc.nvars)
    assert qubo.n == 28
    assert qubo.constant == 180
    assert qubo.Q[0, 0] == 320 and qubo.Q[0, 1] == 485
    assert [(g.i, g.j, g.n) for g in rmap.gadgets] == [
        (2, 4, 20), (1, 3, 21), (3, 5, 22), (1, 5, 23), (2, 6, 24),
        (4, 6, 25), (5, 7, 26), (3, 7, 27), (1, 7, 28)]
    res = exhaustive_min(qubo.to_poly(), enc.layout)
    assert res.value == -6
    assert res.value - qubo.constant == -186
    bits = "".join(str(res.assignment[v]) for v in range(1, 29))
    assert bits == PSVKMA_QUBO_SOLUTION
    assert qubo.energy([int(c) for c in PSVKMA_QUBO_SOLUTION]) == -6


def test_delta_counts_terms_touching_either_variable():
    p = PBPoly({(1, 2, 3): 4, (1,): -2, (3, 4): 7, (5,): 100})
    assert choose_delta(p, (1, 2)) == 1 + 4 + 2


def test_qubo_text_round_trip():
    m, _ = reduce_to_2local(PBPoly({(1, 2, 3): -3, (2, 3): 2, (): 1}), 3)
    back = parse_qubo(format_qubo(m))
    assert back.n == m.n and back.constant == m.constant and np.array_equal(back.Q, m.Q)


def test_ising_matches_qubo_pointwise():
    m, _ = reduce_to_2local(random_poly(random.Random(3), 6, n_terms=10), 6)
    ising = qubo_to_ising(m)
    X, E = qubo_energies_all(m)
    assert np.allclose(ising.energies(2 * X - 1), E)


@pytest.mark.parametrize("rule", ["objective", "state"])
def test_delta_rules_are_sound(rule):
    rng = random.Random(11)
    for _ in range(10):
        p = random_poly(rng, 6, max_degree=4, n_terms=8)
        m, rmap = reduce_to_2local(p, 6, delta_rule=rule)
        if m.n > 18:
            continue
        X, E = qubo_energies_all(m)
        truth = p.evaluate_many(all_bits(6)).min()
        assert E.min() == truth
        ok = np.ones(len(X), dtype=bool)
        for g in rmap.gadgets:
            ok &= X[:, g.n - 1] == (X[:, g.i - 1] & X[:, g.j - 1])
        if (~ok).any():
            assert E[~ok].min() > truth


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 7))
def test_lifted_assignments_preserve_value(seed, n):
    """On the gadget-consistent slice the reduced model equals the original."""
    p = random_poly(random.Random(seed), n, max_degree=4, n_terms=8)
    m, rmap = reduce_to_2local(p, n)
    assert m.to_poly().degree() <= 2
    X = all_bits(n)
    full = rmap.extend_array(X)
    assert np.array_equal(m.energies(full[:, 1:]), p.evaluate_many(X))


def test_delta_simple_cases():
    assert choose_delta(PBPoly({(3, 4): 9}), (1, 2)) == 1
    assert choose_delta(PBPoly({(1, 2, 3): 5}), (1, 2)) == 6


def test_two_local_input_is_unchanged():
    p = PBPoly({(1, 2): -3, (2,): 4, (): 7})
    m, rmap = reduce_to_2local(p, 2)
    assert not rmap.gadgets and m.constant == 7 and m.to_poly() == p
