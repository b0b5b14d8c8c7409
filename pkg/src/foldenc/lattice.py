"""Lattice heteropolymer instances and the brute-force folding oracle.

A fold of an ``N``-residue chain is a tuple of ``N - 1`` two-bit turn codes
using the compass ``00`` down, ``01`` right, ``10`` left, ``11`` up.  Residue 1
sits at the origin.  Contacts only count between residues at least three
bonds apart and an odd number of bonds apart (the square lattice is
bipartite, so even separations can never touch).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

COMPASS = {"00": (0, -1), "01": (1, 0), "10": (-1, 0), "11": (0, 1)}
TURN_NAMES = {"00": "down", "01": "right", "10": "left", "11": "up"}
_CODE_OF_STEP = {v: k for k, v in COMPASS.items()}

Fold = tuple[str, ...]
Conformation = list[tuple[int, int]]

# Integer contact energies for the pairs that can touch in the chain PSVKMA.
# Other residue pairs are not tabulated.
MJ_CONTACTS: dict[frozenset, int] = {
    frozenset("PK"): -1,
    frozenset("PA"): -2,
    frozenset("SM"): -3,
    frozenset("VA"): -4,
}


class InvalidFoldError(ValueError):
    pass


def can_interact(i: int, j: int) -> bool:
    """Residues ``i`` and ``j`` (1-based) can ever be lattice neighbours."""
    d = abs(i - j)
    return d >= 3 and d % 2 == 1


@dataclass(frozen=True)
class Instance:
    """A sequence plus a symmetric, non-positive interaction matrix.

    ``J`` is stored 0-based as an object array of exact numbers; use
    :meth:`j` for the masked 1-based accessor that the encoders rely on.
    """

    sequence: tuple[str, ...]
    J: np.ndarray = field(repr=False)
    dimension: int = 2
    name: str = ""

    def __post_init__(self):
        seq = tuple(self.sequence)
        object.__setattr__(self, "sequence", seq)
        n = len(seq)
        if n < 2:
            raise ValueError("an instance needs at least two residues")
        if self.dimension != 2:
            raise ValueError("only the square lattice (dimension 2) is supported")
        raw = np.asarray(self.J, dtype=object)
        if raw.shape != (n, n):
            raise ValueError(f"J must be {n}x{n}, got {raw.shape}")
        J = np.empty((n, n), dtype=object)
        for a in range(n):
            for b in range(n):
                J[a, b] = _exact(raw[a, b])
        for a in range(n):
            for b in range(n):
                if J[a, b] != J[b, a]:
                    raise ValueError("J must be symmetric")
                if a != b and J[a, b] > 0:
                    raise ValueError("interaction energies must be <= 0")
        J.setflags(write=False)
        object.__setattr__(self, "J", J)

    @property
    def N(self) -> int:
        return len(self.sequence)

    def j(self, i: int, k: int):
        """Masked interaction energy between residues ``i`` and ``k`` (1-based)."""
        if not can_interact(i, k):
            return 0
        return self.J[i - 1, k - 1]

    def interacting_pairs(self) -> list[tuple[int, int]]:
        """Pairs ``i < k`` that can touch and have a nonzero energy."""
        return [
            (i, k)
            for i in range(1, self.N + 1)
            for k in range(i + 3, self.N + 1, 2)
            if self.J[i - 1, k - 1] != 0
        ]

    def total_interaction(self):
        """Sum of all masked pair energies (a lower bound on any energy)."""
        return sum((self.j(i, k) for i, k in self.interacting_pairs()), 0)

    @classmethod
    def hp(cls, sequence: str) -> "Instance":
        seq = tuple(sequence.upper())
        if not set(seq) <= {"H", "P"}:
            raise ValueError("HP sequences use only the letters H and P")
        n = len(seq)
        J = [[-1 if (a != b and seq[a] == seq[b] == "H") else 0 for b in range(n)] for a in range(n)]
        return cls(seq, np.array(J, dtype=object), name=sequence)

    @classmethod
    def mj(cls, sequence: str) -> "Instance":
        seq = tuple(sequence.upper())
        n = len(seq)
        J = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(a + 1, n):
                if not can_interact(a + 1, b + 1):
                    continue
                key = frozenset((seq[a], seq[b]))
                if key not in MJ_CONTACTS:
                    raise KeyError(f"no contact energy tabulated for {seq[a]}-{seq[b]}")
                J[a][b] = J[b][a] = MJ_CONTACTS[key]
        return cls(seq, np.array(J, dtype=object), name=sequence)

    @classmethod
    def from_matrix(cls, sequence: Iterable[str], J) -> "Instance":
        seq = tuple(sequence)
        return cls(seq, np.array(J, dtype=object), name="".join(seq))


def _exact(x):
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, float):
        f = Fraction(x).limit_denominator(10**6)
        return f.numerator if f.denominator == 1 else f
    if isinstance(x, str):
        return _exact(Fraction(x))
    raise TypeError(f"cannot use {x!r} as an interaction energy")


# -- instance text format -------------------------------------------------

def parse_instance(text: str) -> Instance:
    """Parse the instance text format.

    The first non-comment line is the sequence.  It is followed either by
    ``model hp`` / ``model mj`` or by a line ``J`` and ``N`` rows of the lower
    triangle (row ``i`` holds ``J[i][1..i]``; the diagonal is ignored)::

        # HPPH with a single H-H contact energy
        HPPH
        J
        0
        0 0
        0 0 0
        -1 0 0 0
    """
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if len(lines) < 2:
        raise ValueError("instance file needs a sequence line and a model or J block")
    seq = lines[0].replace(" ", "")
    head = lines[1].split()
    if head[0].lower() == "model":
        model = head[1].lower() if len(head) > 1 else ""
        if model == "hp":
            return Instance.hp(seq)
        if model == "mj":
            return Instance.mj(seq)
        raise ValueError(f"unknown model {model!r}")
    if head[0].upper() != "J":
        raise ValueError(f"expected 'model ...' or 'J', got {lines[1]!r}")
    n = len(seq)
    rows = lines[2:]
    if len(rows) != n:
        raise ValueError(f"J block must have {n} rows, got {len(rows)}")
    J = [[0] * n for _ in range(n)]
    for a, row in enumerate(rows):
        vals = row.split()
        if len(vals) != a + 1:
            raise ValueError(f"J row {a + 1} must have {a + 1} entries")
        for b, v in enumerate(vals[:a]):
            J[a][b] = J[b][a] = _exact(v)
    return Instance(tuple(seq), np.array(J, dtype=object), name=seq)


def format_instance(inst: Instance) -> str:
    out = ["".join(inst.sequence), "J"]
    for a in range(inst.N):
        out.append(" ".join(str(inst.J[a, b]) for b in range(a + 1)))
    return "\n".join(out) + "\n"


# -- folds ------------------------------------------------------------------

def fold_to_coords(turns: Sequence[str]) -> Conformation:
    x = y = 0
    coords = [(0, 0)]
    for t in turns:
        dx, dy = COMPASS[t]
        x, y = x + dx, y + dy
        coords.append((x, y))
    return coords


def coords_to_fold(coords: Sequence[tuple[int, int]]) -> Fold:
    out = []
    for (x0, y0), (x1, y1) in zip(coords, coords[1:]):
        step = (x1 - x0, y1 - y0)
        if step not in _CODE_OF_STEP:
            raise ValueError(f"{(x0, y0)} -> {(x1, y1)} is not a unit lattice step")
        out.append(_CODE_OF_STEP[step])
    return tuple(out)


def is_saw(coords: Sequence[tuple[int, int]]) -> bool:
    return len(set(coords)) == len(coords)


def fold_names(turns: Sequence[str]) -> list[str]:
    return [TURN_NAMES[t] for t in turns]


def enumerate_saws(N: int, fix_symmetry: bool = True) -> list[Fold]:
    """All self-avoiding walks of ``N - 1`` steps, in lexicographic order.

    With ``fix_symmetry`` the first turn is right and the second is right or
    down, matching the ``010`` prefix of the turn encoding.
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    out: list[Fold] = []
    codes = sorted(COMPASS)

    def allowed(depth: int) -> list[str]:
        if not fix_symmetry:
            return codes
        if depth == 0:
            return ["01"]
        if depth == 1:
            return ["00", "01"]
        return codes

    def rec(turns: list[str], pos: tuple[int, int], seen: set):
        if len(turns) == N - 1:
            out.append(tuple(turns))
            return
        for t in allowed(len(turns)):
            dx, dy = COMPASS[t]
            nxt = (pos[0] + dx, pos[1] + dy)
            if nxt in seen:
                continue
            seen.add(nxt)
            turns.append(t)
            rec(turns, nxt, seen)
            turns.pop()
            seen.remove(nxt)

    rec([], (0, 0), {(0, 0)})
    return out


SYMMETRIES = (
    lambda x, y: (x, y),
    lambda x, y: (-y, x),
    lambda x, y: (-x, -y),
    lambda x, y: (y, -x),
    lambda x, y: (x, -y),
    lambda x, y: (-y, -x),
    lambda x, y: (-x, y),
    lambda x, y: (y, x),
)


def symmetric_images(coords: Sequence[tuple[int, int]]) -> list[Conformation]:
    """The 8 rotations/reflections of a conformation (residue 1 stays at the origin)."""
    x0, y0 = coords[0]
    rel = [(x - x0, y - y0) for x, y in coords]
    return [[s(x, y) for x, y in rel] for s in SYMMETRIES]


def canonical_fold(turns: Sequence[str]) -> Fold:
    """Representative of the symmetry orbit inside the fixed-prefix walk set."""
    coords = fold_to_coords(turns)
    cands = []
    for img in symmetric_images(coords):
        f = coords_to_fold(img)
        if f[0] == "01" and (len(f) < 2 or f[1] in ("00", "01")):
            cands.append(f)
    return min(cands)


def contacts(coords: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    """Non-bonded residue pairs (1-based) at lattice distance one."""
    where = {c: k for k, c in enumerate(coords, start=1)}
    out = []
    for k, (x, y) in enumerate(coords, start=1):
        for nb in ((x + 1, y), (x, y + 1)):
            h = where.get(nb)
            if h is not None and abs(h - k) > 1:
                out.append((min(k, h), max(k, h)))
    return sorted(out)


def native_energy(turns: Sequence[str], inst: Instance):
    coords = fold_to_coords(turns)
    if len(coords) != inst.N:
        raise ValueError(f"fold has {len(coords)} residues, instance has {inst.N}")
    return conformation_energy(coords, inst)


def conformation_energy(coords: Sequence[tuple[int, int]], inst: Instance):
    if not is_saw(coords):
        raise InvalidFoldError("conformation is not self-avoiding")
    return sum((inst.j(i, k) for i, k in contacts(coords)), 0)


def ground_truth(inst: Instance) -> tuple[object, list[Fold]]:
    """Exhaustive minimum energy and all symmetry-fixed folds achieving it."""
    if inst.N > 14:
        raise ValueError("exhaustive folding is limited to N <= 14")
    best = None
    folds: list[Fold] = []
    for f in enumerate_saws(inst.N, fix_symmetry=True):
        e = native_energy(f, inst)
        if best is None or e < best:
            best, folds = e, [f]
        elif e == best:
            folds.append(f)
    return best, folds
