"""Ancilla-free turn encoding built from half-adder circuits.

For residues ``i < j`` the number of turns taken in each direction between
them is summed in binary with a ripple of half adders.  Two residues coincide
when the counts in opposite directions agree digit by digit in both axes, and
they touch when the counts agree on one axis and differ by exactly one on the
other.  The result is an exact multilinear polynomial over the ``2N - 5``
info bits with no ancillae; locality grows quickly with ``N``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .encoding import Encoding
from .lattice import Instance
from .pbpoly import PBPoly
from .turn_ancilla import Penalties, choose_lambda, directional, info_role

MAX_N = 10

_OPPOSITE = {"x": ("x+", "x-"), "y": ("y+", "y-")}


def xor(p: PBPoly, q: PBPoly) -> PBPoly:
    return p + q - 2 * p * q


def xnor(p: PBPoly, q: PBPoly) -> PBPoly:
    return 1 - p - q + 2 * p * q


def half_adder(a, b) -> tuple[PBPoly, PBPoly]:
    """Sum and carry of two bits (polynomials, ints or numpy arrays)."""
    return xor(a, b), a * b


def _is_zero(x) -> bool:
    if isinstance(x, np.ndarray):
        return not x.any()
    return not x


def digit_width(n: int) -> int:
    """Binary digits needed to hold any count of ``n`` bits."""
    return n.bit_length()


@dataclass(frozen=True)
class SumString:
    """Binary digits (least significant first) of a turn count."""

    digits: tuple[PBPoly, ...]

    @property
    def width(self) -> int:
        return len(self.digits)

    def value(self, assignment) -> int:
        return sum(int(d.evaluate(assignment)) << r for r, d in enumerate(self.digits))


def _ripple(bits, zero) -> list:
    width = digit_width(len(bits))
    digits: list = []
    for b in bits:
        carry = b
        for r in range(len(digits)):
            digits[r], carry = half_adder(digits[r], carry)
            if _is_zero(carry):
                break
        if not _is_zero(carry):
            digits.append(carry)
    while len(digits) < width:
        digits.append(zero)
    # carries past the width vanish identically
    if not all(_is_zero(d) for d in digits[width:]):
        raise AssertionError("sum overflowed its digit width")
    return digits[:width]


def ripple_sum(bits) -> SumString:
    """Binary sum of a list of 0/1 polynomials, one half-adder ripple per bit."""
    digits = _ripple([PBPoly._coerce(b) for b in bits], PBPoly.zero())
    return SumString(tuple(PBPoly._coerce(d) for d in digits))


@lru_cache(maxsize=None)
def sum_string(i: int, j: int, dir: str) -> SumString:
    """Count of turns ``i .. j-1`` pointing in ``dir``."""
    if not 1 <= i < j:
        raise ValueError("need 1 <= i < j")
    return ripple_sum(directional(p, dir) for p in range(i, j))


def _support(i: int, j: int) -> list[int]:
    """Info bits read by turns ``i .. j-1``."""
    out = []
    for p in range(max(i, 2), j):
        out.extend([1] if p == 2 else [2 * p - 4, 2 * p - 3])
    return out


class _Table:
    """Truth-table view of the turns ``i .. j-1``; digits become numpy arrays."""

    def __init__(self, i: int, j: int):
        self.i, self.j = i, j
        self.vars = _support(i, j)
        idx = np.arange(1 << len(self.vars), dtype=np.int64)
        self.col = {v: (idx >> b) & 1 for b, v in enumerate(self.vars)}

    def turn(self, p: int):
        if p == 1:
            return 0, 1
        if p == 2:
            return 0, self.col[1]
        return self.col[2 * p - 4], self.col[2 * p - 3]

    def digits(self, dir: str) -> list:
        ones = np.ones(1 << len(self.vars), dtype=np.int64)
        bits = []
        for p in range(self.i, self.j):
            a, b = self.turn(p)
            d = {"x+": b * (1 - a), "x-": a * (1 - b), "y+": a * b, "y-": (1 - a) * (1 - b)}[dir]
            bits.append(d * ones)
        return _ripple(bits, 0 * ones)

    def to_poly(self, values: np.ndarray) -> PBPoly:
        return mobius(values, self.vars)


def mobius(values: np.ndarray, variables) -> PBPoly:
    """Multilinear polynomial taking ``values[x]`` at bit pattern ``x`` over ``variables``."""
    m = len(variables)
    c = np.array(values, dtype=np.int64).reshape((2,) * m if m else ())
    for ax in range(m):
        c = np.moveaxis(c, m - 1 - ax, 0).copy()
        c[1] -= c[0]
        c = np.moveaxis(c, 0, m - 1 - ax)
    flat = c.reshape(-1)
    terms = {}
    for x in np.flatnonzero(flat):
        terms[tuple(v for b, v in enumerate(variables) if (int(x) >> b) & 1)] = int(flat[x])
    return PBPoly(terms)


def _digits(i: int, j: int, dir: str, table: _Table | None):
    if table is None:
        return list(sum_string(i, j, dir).digits)
    return table.digits(dir)


def _axis_equal(i, j, axis, table=None):
    plus, minus = (_digits(i, j, d, table) for d in _OPPOSITE[axis])
    out = 1
    for a, b in zip(plus, minus):
        out = out * xnor(a, b)
    return out


def _differ_by_one(i, j, axis, table=None):
    sp, sm = (_digits(i, j, d, table) for d in _OPPOSITE[axis])
    w = len(sp)

    def xnor_from(start):
        out = 1
        for r in range(start, w):
            out = out * xnor(sp[r], sm[r])
        return out

    # lesser count even: only the lowest digit differs
    total = xor(sp[0], sm[0]) * xnor_from(1)
    # lesser count odd: digits 1..p flip, p being the rightmost 0 of the lesser count
    for p in range(2, w + 1):
        term = xor(sp[p - 2], sp[p - 1])
        for r in range(1, p - 1):
            term = term * xnor(sp[r - 1], sp[r])
        for r in range(1, p + 1):
            term = term * xor(sp[r - 1], sm[r - 1])
        total = total + term * xnor_from(p)
    return total


@lru_cache(maxsize=None)
def overlap_pair(i: int, j: int, symbolic: bool = False) -> PBPoly:
    """1 iff residues ``i`` and ``j`` occupy the same site.

    By default the circuit is evaluated on the truth table of its inputs and
    converted back exactly; ``symbolic=True`` expands the products directly.
    """
    if (j - i) % 2 or j - i < 2:
        raise ValueError("only residues an even number (>= 2) of bonds apart can overlap")
    if symbolic:
        return PBPoly._coerce(_axis_equal(i, j, "x") * _axis_equal(i, j, "y"))
    t = _Table(i, j)
    return t.to_poly(_axis_equal(i, j, "x", t) * _axis_equal(i, j, "y", t))


def e_overlap_total(N: int, lam, symbolic: bool = False) -> PBPoly:
    out = PBPoly.zero()
    for i in range(1, N - 1):
        for t in range(1, (N - i) // 2 + 1):
            out = out + overlap_pair(i, i + 2 * t, symbolic)
    return lam * out


@lru_cache(maxsize=None)
def adjacency(k: str, i: int, j: int, symbolic: bool = False) -> PBPoly:
    """1 iff residues ``i`` and ``j`` are neighbours along axis ``k``."""
    if k not in _OPPOSITE:
        raise ValueError(f"unknown axis {k!r}")
    if (j - i) % 2 == 0 or j - i < 3:
        raise ValueError("only residues an odd number (>= 3) of bonds apart can touch")
    other = "y" if k == "x" else "x"
    if symbolic:
        return PBPoly._coerce(_axis_equal(i, j, other) * _differ_by_one(i, j, k))
    t = _Table(i, j)
    return t.to_poly(_axis_equal(i, j, other, t) * _differ_by_one(i, j, k, t))


def e_pair_total(inst: Instance, symbolic: bool = False) -> PBPoly:
    out = PBPoly.zero()
    N = inst.N
    for i in range(1, N - 2):
        for t in range(1, (N - i - 1) // 2 + 1):
            j = 1 + i + 2 * t
            J = inst.j(i, j)
            if J:
                out = out + J * (adjacency("x", i, j, symbolic) + adjacency("y", i, j, symbolic))
    return out


@dataclass(frozen=True)
class CircuitLayout:
    N: int

    @property
    def info_bits(self) -> int:
        return 2 * self.N - 5

    @property
    def total_bits(self) -> int:
        return self.info_bits

    @property
    def info_vars(self) -> tuple[int, ...]:
        return tuple(range(1, self.info_bits + 1))

    def roles(self) -> list[dict]:
        return [info_role(v) for v in self.info_vars]


def encode_circuit(inst: Instance, penalties: Penalties | None = None, allow_large: bool = False) -> Encoding:
    N = inst.N
    if N < 4:
        raise ValueError("the turn encoding needs N >= 4")
    if N > MAX_N and not allow_large:
        raise ValueError(f"turn-circuit polynomials explode beyond N = {MAX_N}; pass allow_large=True to insist")
    pen = penalties or choose_lambda(inst)
    poly = e_overlap_total(N, pen.lambda_overlap) + e_pair_total(inst)
    return Encoding("turn-circuit", inst, poly, CircuitLayout(N), {"lambda_overlap": pen.lambda_overlap}, 0)
