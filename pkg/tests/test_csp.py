import random

import numpy as np
from hypothesis import given, settings, strategies as st

from foldenc.csp import (format_lp, format_wcnf, ilp_optimum, parse_wcnf, pb_to_wcnf, wcnf_min,
                         wcnf_to_ilp)
from foldenc.pbpoly import PBPoly

from helpers import all_bits, random_poly


def test_negative_cubic_term():
    w = pb_to_wcnf(PBPoly({(1, 2, 3): -3}))
    assert w.offset == -3
    assert sorted(w.clauses) == [(3, (-1, -2, 3)), (3, (-1, 2)), (3, (1,))]


def test_positive_term_is_one_clause():
    w = pb_to_wcnf(PBPoly({(1, 2): 5, (): 2}))
    assert w.clauses == [(5, (-1, -2))] and w.offset == 2


def test_constant_polynomial_has_no_clauses():
    text = format_wcnf(pb_to_wcnf(PBPoly.constant(7), 0))
    assert text.splitlines() == ["c offset 7", "p wcnf 0 0"]


def test_identical_clauses_are_merged():
    w = pb_to_wcnf(PBPoly({(1, 2): -1, (1,): -2}))
    assert dict((lits, wt) for wt, lits in w.clauses)[(1,)] == 3


def test_lp_text():
    lp = format_lp(wcnf_to_ilp(pb_to_wcnf(PBPoly({(1, 2): -2}))))
    assert "Minimize" in lp and "Subject To" in lp and lp.rstrip().endswith("End")
    assert " c1: y1 + x2 - x1 >= 0" in lp


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 8))
def test_cost_plus_offset_is_the_polynomial(seed, n):
    p = random_poly(random.Random(seed), n, n_terms=10)
    w = pb_to_wcnf(p, n)
    X = all_bits(n)
    assert np.array_equal(w.costs(X), p.evaluate_many(X))
    assert parse_wcnf(format_wcnf(w)) == w


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 8))
def test_ilp_optimum_matches_enumeration(seed, n):
    p = random_poly(random.Random(seed), n, n_terms=10)
    w = pb_to_wcnf(p, n)
    assert ilp_optimum(wcnf_to_ilp(w)) == wcnf_min(w) == p.evaluate_many(all_bits(n)).min()
