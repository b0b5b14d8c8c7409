"""Turn encoding with slack and switch ancillae.

The fold is stored as ``2N - 5`` information bits.  Turn 1 is fixed to right
(``01``), turn 2 is ``0 q1`` (down or right) and turn ``j >= 3`` is the pair
``(q_{2j-4}, q_{2j-3})``.  The energy is the sum of three pieces:

* ``e_back``: penalty for a turn that reverses the previous one,
* ``e_overlap``: a squared slack equality ``(2^mu - g - alpha)^2`` for every
  pair of residues an even number of bonds apart (``g`` is the squared grid
  distance, so the term can only vanish when ``g >= 1``),
* ``e_pair``: ``omega * J * (2 - g)`` for every pair that can touch, where the
  switch ``omega`` is only worth turning on when ``g == 1``.

Ancillae are laid out after the info bits: slack registers for pairs sorted
by ``(i, j)``, then the switches.  Slack registers are read most significant
bit first.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Sequence

from .encoding import Encoding
from .lattice import Fold, Instance, can_interact, fold_to_coords
from .pbpoly import PBPoly

DIRECTIONS = ("x+", "x-", "y+", "y-")


def info_bits(N: int) -> int:
    return 2 * N - 5


def slack_width(d: int) -> int:
    """Smallest ``mu`` with ``2**mu >= d**2``, i.e. ``ceil(2 log2 d)``."""
    return (d * d - 1).bit_length()


@dataclass(frozen=True)
class Penalties:
    lambda_overlap: int
    lambda_back: int | None = None

    def __post_init__(self):
        if self.lambda_back is None:
            object.__setattr__(self, "lambda_back", self.lambda_overlap)
        if self.lambda_overlap <= 0:
            raise ValueError("penalties must be positive")
        if self.lambda_back != self.lambda_overlap:
            raise ValueError("lambda_back must equal lambda_overlap")

    def as_dict(self) -> dict:
        return {"lambda_overlap": self.lambda_overlap, "lambda_back": self.lambda_back}


@dataclass(frozen=True)
class TurnLayout:
    N: int
    info_bits: int
    slack_bits: dict = field(default_factory=dict)  # (i, j) -> (first var, width)
    omega_bits: dict = field(default_factory=dict)  # (i, j) -> var
    total_bits: int = 0

    @property
    def info_vars(self) -> tuple[int, ...]:
        return tuple(range(1, self.info_bits + 1))

    def slack_vars(self, i: int, j: int) -> tuple[int, ...]:
        c, mu = self.slack_bits[(i, j)]
        return tuple(range(c, c + mu))

    def roles(self) -> list[dict]:
        out = [info_role(v) for v in self.info_vars]
        for (i, j), (c, mu) in sorted(self.slack_bits.items()):
            for k in range(mu):
                out.append({"var": c + k, "role": "slack", "pair": [i, j], "k": k,
                            "weight": 1 << (mu - 1 - k)})
        for (i, j), v in sorted(self.omega_bits.items()):
            out.append({"var": v, "role": "omega", "pair": [i, j]})
        return out


def info_role(v: int) -> dict:
    if v == 1:
        return {"var": 1, "role": "info", "turn": 2, "bit": 2}
    turn = (v + 4) // 2 if v % 2 == 0 else (v + 3) // 2
    return {"var": v, "role": "info", "turn": turn, "bit": 1 if v % 2 == 0 else 2}


def build_layout(inst_or_N, interacting: Sequence[tuple[int, int]] | None = None) -> TurnLayout:
    """Allocate variables: info bits, slack registers, then switches."""
    if isinstance(inst_or_N, Instance):
        N = inst_or_N.N
        interacting = inst_or_N.interacting_pairs()
    else:
        N = int(inst_or_N)
        interacting = list(interacting or [])
    if N < 4:
        raise ValueError("the turn encoding needs N >= 4")
    nxt = info_bits(N) + 1
    slack = {}
    for i in range(1, N + 1):
        for j in range(i + 4, N + 1, 2):
            mu = slack_width(j - i)
            slack[(i, j)] = (nxt, mu)
            nxt += mu
    omega = {}
    for i, j in sorted(interacting):
        if not can_interact(i, j):
            raise ValueError(f"pair ({i}, {j}) can never be in contact")
        omega[(i, j)] = nxt
        nxt += 1
    return TurnLayout(N, info_bits(N), slack, omega, nxt - 1)


def bit_count(N: int, n_omega: int) -> int:
    """Closed-form total: ``2N - 5 + sum over even d >= 4 of (N - d) mu(d) + #omega``."""
    return info_bits(N) + sum((N - d) * slack_width(d) for d in range(4, N, 2)) + n_omega


# -- turn algebra -----------------------------------------------------------

def turn_bits(j: int) -> tuple[PBPoly, PBPoly]:
    """The two bits of turn ``j`` as polynomials (constants for the fixed prefix)."""
    if j == 1:
        return PBPoly.constant(0), PBPoly.constant(1)
    if j == 2:
        return PBPoly.constant(0), PBPoly.var(1)
    if j < 1:
        raise ValueError(f"turn index {j} out of range")
    return PBPoly.var(2 * j - 4), PBPoly.var(2 * j - 3)


def directional(j: int, dir: str) -> PBPoly:
    """Indicator that turn ``j`` points in direction ``dir``."""
    a, b = turn_bits(j)
    if dir == "x+":
        return b * (1 - a)
    if dir == "x-":
        return a * (1 - b)
    if dir == "y+":
        return a * b
    if dir == "y-":
        return (1 - a) * (1 - b)
    raise ValueError(f"unknown direction {dir!r}")


def e_back(N: int, pen: Penalties) -> PBPoly:
    lam = pen.lambda_back
    out = PBPoly.zero()
    for j in range(2, N - 1):
        a, b = turn_bits(j)
        c, d = turn_bits(j + 1)
        out = out + lam * ((2 * a * c - a - c) * (2 * b * d - b - d))
    return out


@lru_cache(maxsize=None)
def _positions(N: int) -> tuple[tuple[PBPoly, PBPoly], ...]:
    out = [(PBPoly.zero(), PBPoly.zero()), (PBPoly.constant(1), PBPoly.zero())]
    x = 1 + PBPoly.var(1)
    y = PBPoly.var(1) - 1
    for n in range(3, N + 1):
        if n > 3:
            k = n - 1
            x = x + directional(k, "x+") - directional(k, "x-")
            y = y + directional(k, "y+") - directional(k, "y-")
        out.append((x, y))
    return tuple(out)


def position(n: int, axis: str, N: int | None = None) -> PBPoly:
    """Coordinate of residue ``n`` (1-based) as a polynomial in the info bits."""
    if n < 1:
        raise ValueError("residue indices are 1-based")
    pos = _positions(max(n, N or n))[n - 1]
    if axis == "x":
        return pos[0]
    if axis == "y":
        return pos[1]
    raise ValueError(f"unknown axis {axis!r}")


@lru_cache(maxsize=None)
def g(i: int, j: int) -> PBPoly:
    """Squared grid distance between residues ``i`` and ``j``."""
    n = max(i, j)
    dx = position(i, "x", n) - position(j, "x", n)
    dy = position(i, "y", n) - position(j, "y", n)
    return dx * dx + dy * dy


def slack_value(layout: TurnLayout, i: int, j: int) -> PBPoly:
    c, mu = layout.slack_bits[(i, j)]
    return sum((PBPoly.monomial((c + k,), 1 << (mu - 1 - k)) for k in range(mu)), PBPoly.zero())


def e_overlap(layout: TurnLayout, pen: Penalties) -> PBPoly:
    lam = pen.lambda_overlap
    out = PBPoly.zero()
    for (i, j), (_, mu) in sorted(layout.slack_bits.items()):
        gamma = (1 << mu) - g(i, j) - slack_value(layout, i, j)
        out = out + lam * (gamma * gamma)
    return out


def e_pair(layout: TurnLayout, inst: Instance) -> PBPoly:
    out = PBPoly.zero()
    for (i, j), w in sorted(layout.omega_bits.items()):
        out = out + PBPoly.var(w) * inst.j(i, j) * (2 - g(i, j))
    return out


def choose_lambda(inst: Instance) -> Penalties:
    # +1 keeps the penalty strictly above the best possible pair reward
    return Penalties(1 + math.ceil(abs(inst.total_interaction())))


def encode(inst: Instance, penalties: Penalties | None = None) -> Encoding:
    pen = penalties or choose_lambda(inst)
    layout = build_layout(inst)
    poly = e_back(inst.N, pen) + e_overlap(layout, pen) + e_pair(layout, inst)
    return Encoding("turn-ancilla", inst, poly, layout, pen.as_dict(), 0)


# -- folds <-> bits -----------------------------------------------------------

def fold_to_info(fold: Sequence[str]) -> dict[int, int]:
    """Info-bit assignment of a fold with the fixed ``010`` prefix."""
    fold = tuple(fold)
    N = len(fold) + 1
    if fold[0] != "01" or fold[1][0] != "0":
        raise ValueError("fold does not start with the fixed prefix right, (down|right)")
    bits = {1: int(fold[1][1])}
    for j in range(3, N):
        a, b = fold[j - 1]
        bits[2 * j - 4] = int(a)
        bits[2 * j - 3] = int(b)
    return bits


def info_to_fold(assignment: Mapping[int, int] | Sequence[int], N: int) -> Fold:
    def bit(v):
        return int(assignment[v])

    turns = ["01", f"0{bit(1)}"]
    for j in range(3, N):
        turns.append(f"{bit(2 * j - 4)}{bit(2 * j - 3)}")
    return tuple(turns)


def canonical_completion(layout: TurnLayout, fold: Sequence[str], inst: Instance | None = None) -> dict[int, int]:
    """Info bits of ``fold`` plus the ancillae that zero every penalty.

    Slack gets ``alpha = 2^mu - g`` and each switch is on iff its pair is in
    contact.  Requires a self-avoiding fold.
    """
    bits = fold_to_info(fold)
    coords = fold_to_coords(fold)
    for (i, j), (c, mu) in layout.slack_bits.items():
        (xi, yi), (xj, yj) = coords[i - 1], coords[j - 1]
        alpha = (1 << mu) - ((xi - xj) ** 2 + (yi - yj) ** 2)
        if not 0 <= alpha < (1 << mu):
            raise ValueError(f"residues {i} and {j} overlap; no zero-penalty slack exists")
        for k in range(mu):
            bits[c + k] = (alpha >> (mu - 1 - k)) & 1
    for (i, j), w in layout.omega_bits.items():
        (xi, yi), (xj, yj) = coords[i - 1], coords[j - 1]
        bits[w] = int(abs(xi - xj) + abs(yi - yj) == 1)
    return bits
