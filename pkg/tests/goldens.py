"""Reference polynomials as (variables, coefficient) pairs."""

# HPPHP, turn-ancilla, both penalties 1, reference variable order.
HPPHP_TURN_ANCILLA = [
    ((), 36), ((1,), 28), ((2,), 108), ((3,), 28), ((4,), 108), ((5,), 28), ((6,), 3),
    ((7,), -32), ((8,), -32), ((9,), -20), ((10,), -11), ((1, 2), 25), ((1, 3), -56),
    ((1, 4), 24), ((1, 5), -56), ((1, 7), -32), ((1, 8), -16), ((1, 9), -8), ((1, 10), -4),
    ((2, 3), 26), ((2, 4), -56), ((2, 5), 25), ((2, 6), -4), ((2, 7), -96), ((2, 8), -48),
    ((2, 9), -24), ((2, 10), -12), ((3, 4), 25), ((3, 5), -56), ((3, 7), -32), ((3, 8), -16),
    ((3, 9), -8), ((3, 10), -4), ((4, 5), 25), ((4, 7), -96), ((4, 8), -48), ((4, 9), -24),
    ((4, 10), -12), ((5, 7), -32), ((5, 8), -16), ((5, 9), -8), ((5, 10), -4), ((7, 8), 64),
    ((7, 9), 32), ((7, 10), 16), ((8, 9), 16), ((8, 10), 8), ((9, 10), 4), ((1, 2, 3), -50),
    ((1, 2, 4), -16), ((1, 2, 5), -48), ((1, 3, 4), -48), ((1, 3, 5), 48), ((1, 3, 6), 4),
    ((1, 3, 7), 64), ((1, 3, 8), 32), ((1, 3, 9), 16), ((1, 3, 10), 8), ((1, 4, 5), -48),
    ((1, 5, 7), 64), ((1, 5, 8), 32), ((1, 5, 9), 16), ((1, 5, 10), 8), ((2, 3, 4), -18),
    ((2, 3, 5), -50), ((2, 4, 5), -18), ((2, 4, 7), 64), ((2, 4, 8), 32), ((2, 4, 9), 16),
    ((2, 4, 10), 8), ((3, 4, 5), -50), ((3, 5, 7), 64), ((3, 5, 8), 32), ((3, 5, 9), 16),
    ((3, 5, 10), 8), ((1, 2, 3, 4), 32), ((1, 2, 4, 5), 32), ((2, 3, 4, 5), 36),
]

# Back-step penalty for N = 6 with unit weight.
N6_BACK = [
    ((1, 2), 1), ((2, 3), 2), ((2, 5), 1), ((3, 4), 1), ((4, 5), 2), ((4, 7), 1), ((5, 6), 1),
    ((6, 7), 1), ((1, 2, 3), -2), ((2, 3, 4), -2), ((2, 3, 5), -2), ((2, 4, 5), -2),
    ((3, 4, 5), -2), ((4, 5, 6), -2), ((4, 5, 7), -2), ((4, 6, 7), -2), ((5, 6, 7), -2),
    ((2, 3, 4, 5), 4), ((4, 5, 6, 7), 4),
]

# Pair-interaction term for PSVKMA (MJ contacts).
PSVKMA_PAIR = [
    ((16,), 3), ((17,), 30), ((18,), 21), ((19,), 28), ((1, 17), -8), ((1, 18), -12),
    ((2, 16), -4), ((2, 17), -16), ((2, 18), -12), ((2, 19), -16), ((3, 17), -8),
    ((3, 18), -12), ((3, 19), -16), ((4, 17), -16), ((4, 18), -12), ((4, 19), -16),
    ((5, 17), -8), ((5, 18), -12), ((5, 19), -16), ((6, 17), -16), ((6, 19), -16),
    ((7, 17), -8), ((7, 19), -16), ((1, 3, 16), 4), ((1, 3, 17), 8), ((1, 3, 18), 12),
    ((1, 5, 17), 8), ((1, 5, 18), 12), ((1, 7, 17), 8), ((2, 4, 17), 8), ((2, 4, 18), 12),
    ((2, 4, 19), 16), ((2, 6, 17), 8), ((2, 6, 19), 16), ((3, 5, 17), 8), ((3, 5, 18), 12),
    ((3, 5, 19), 16), ((3, 7, 17), 8), ((3, 7, 19), 16), ((4, 6, 17), 8), ((4, 6, 19), 16),
    ((5, 7, 17), 8), ((5, 7, 19), 16),
]

# our variable -> reference variable; the reference numbers the omega bit before the slack bits
HPPHP_REMAP = {10: 6, 6: 7, 7: 8, 8: 9, 9: 10}
