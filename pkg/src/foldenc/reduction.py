"""Quadratization of pseudo-boolean polynomials and QUBO / Ising models.

A pair ``q_i q_j`` inside higher-order terms is replaced by a fresh variable
``q_n`` and the AND gadget ``delta (3 q_n + q_i q_j - 2 q_i q_n - 2 q_j q_n)``
is added.  The gadget is zero iff ``q_n = q_i q_j`` and at least ``delta``
otherwise.  Pairs are chosen greedily: the pair found in the most remaining
degree >= 3 terms wins, ties going to the lexicographically smallest pair.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .pbpoly import PBPoly, mask_of, vars_of

Pair = tuple[int, int]


def and_gadget(i: int, j: int, n: int, delta: int) -> PBPoly:
    if delta < 1:
        raise ValueError("delta must be a positive integer")
    return PBPoly({(n,): 3 * delta, (i, j): delta, (i, n): -2 * delta, (j, n): -2 * delta})


@dataclass
class CoverGraph:
    """Bipartite graph between high-order terms and the pairs inside them."""

    high_terms: list[tuple[int, ...]]
    candidates: dict[tuple[int, ...], list[Pair]]
    next_var: int = 1
    chosen: dict[Pair, int] = field(default_factory=dict)

    def is_covered(self) -> bool:
        return all(any(p in self.chosen for p in self.candidates[t]) for t in self.high_terms)


def _pairs(vs: Sequence[int]) -> list[Pair]:
    return [(vs[a], vs[b]) for a in range(len(vs)) for b in range(a + 1, len(vs))]


def build_cover(poly: PBPoly, next_var: int | None = None) -> CoverGraph:
    high = [vs for vs, _ in poly.terms() if len(vs) >= 3]
    return CoverGraph(
        high_terms=high,
        candidates={t: _pairs(t) for t in high},
        next_var=poly.max_var() + 1 if next_var is None else next_var,
    )


def _best_pair(masks: Iterable[int]) -> Pair | None:
    counts: dict[Pair, int] = {}
    for m in masks:
        vs = vars_of(m)
        if len(vs) < 3:
            continue
        for p in _pairs(vs):
            counts[p] = counts.get(p, 0) + 1
    if not counts:
        return None
    top = max(counts.values())
    return min(p for p, c in counts.items() if c == top)


def greedy_cover(g: CoverGraph) -> list[Pair]:
    """Pairs to collapse, in order, until no term of degree >= 3 remains.

    Substitution is simulated on the monomials, so a 4-local term that keeps
    a 3-local residue is covered again.  Pairs may contain earlier ancillae.
    """
    terms = {mask_of(t) for t in g.high_terms}
    out: list[Pair] = []
    n = g.next_var
    while True:
        pair = _best_pair(terms)
        if pair is None:
            break
        g.chosen[pair] = n
        pm = mask_of(pair)
        terms = {((m & ~pm) | (1 << n)) if m & pm == pm else m for m in terms}
        terms = {m for m in terms if m.bit_count() >= 3}
        out.append(pair)
        n += 1
    return out


def choose_delta(poly: PBPoly, pair: Pair) -> int:
    """``1 + sum |c|`` over the terms that mention either variable of ``pair``."""
    pm = mask_of(pair)
    return 1 + sum(abs(c) for m, c in poly.masks.items() if m & pm)


@dataclass(frozen=True)
class Gadget:
    i: int
    j: int
    n: int
    delta: int


@dataclass(frozen=True)
class ReductionMap:
    """How to lift an assignment of the original variables to the reduced model."""

    n_original: int
    gadgets: tuple[Gadget, ...]

    @property
    def n_total(self) -> int:
        return self.gadgets[-1].n if self.gadgets else self.n_original

    def extend(self, assignment: Mapping[int, int]) -> dict[int, int]:
        out = dict(assignment)
        for gd in self.gadgets:
            out[gd.n] = out[gd.i] * out[gd.j]
        return out

    def extend_array(self, bits: np.ndarray) -> np.ndarray:
        """Rows of original bits (column 0 unused) -> rows of all bits."""
        bits = np.asarray(bits)
        out = np.zeros((bits.shape[0], self.n_total + 1), dtype=np.int8)
        out[:, : bits.shape[1]] = bits
        for gd in self.gadgets:
            out[:, gd.n] = out[:, gd.i] & out[:, gd.j]
        return out

    def violated(self, assignment: Mapping[int, int]) -> list[Gadget]:
        return [g for g in self.gadgets if assignment[g.n] != assignment[g.i] * assignment[g.j]]


@dataclass(frozen=True)
class QuboModel:
    """``E(q) = q^T Q q + constant`` with ``Q`` upper triangular, 0-based rows."""

    n: int
    Q: np.ndarray
    constant: int = 0

    @classmethod
    def from_poly(cls, poly: PBPoly, n: int | None = None) -> "QuboModel":
        if poly.degree() > 2:
            raise ValueError("polynomial is not quadratic")
        if not poly.is_integral():
            raise ValueError("QUBO coefficients must be integers")
        n = poly.max_var() if n is None else n
        Q = np.zeros((n, n), dtype=np.int64)
        for vs, c in poly.terms():
            if len(vs) == 1:
                Q[vs[0] - 1, vs[0] - 1] += c
            elif len(vs) == 2:
                Q[vs[0] - 1, vs[1] - 1] += c
        return cls(n, Q, int(poly.const))

    def to_poly(self) -> PBPoly:
        terms = {(): self.constant}
        for a, b in zip(*np.nonzero(self.Q)):
            a, b = int(a), int(b)
            key = (a + 1,) if a == b else (a + 1, b + 1)
            terms[key] = int(self.Q[a, b])
        return PBPoly(terms)

    def energy(self, x: Sequence[int]) -> int:
        x = np.asarray(x, dtype=np.int64)
        return int(x @ self.Q @ x) + self.constant

    def energies(self, X: np.ndarray) -> np.ndarray:
        """Energies of the rows of a 0/1 matrix with ``n`` columns."""
        X = np.asarray(X, dtype=np.int64)
        return np.einsum("ri,ij,rj->r", X, self.Q, X) + self.constant


@dataclass(frozen=True)
class IsingModel:
    """``E(s) = h . s + sum_{i<j} J_ij s_i s_j + offset`` with spins ``s = 2q - 1``."""

    h: np.ndarray
    J: np.ndarray
    offset: float = 0.0

    @property
    def n(self) -> int:
        return len(self.h)

    def energy(self, s: Sequence[int]) -> float:
        s = np.asarray(s, dtype=float)
        return float(self.h @ s + s @ self.J @ s + self.offset)

    def energies(self, S: np.ndarray) -> np.ndarray:
        S = np.asarray(S, dtype=float)
        return S @ self.h + np.einsum("ri,ij,rj->r", S, self.J, S) + self.offset


def qubo_to_ising(m: QuboModel) -> IsingModel:
    Q = m.Q.astype(float)
    diag = np.diag(Q)
    off = np.triu(Q, 1)
    h = diag / 2 + (off.sum(axis=1) + off.sum(axis=0)) / 4
    offset = m.constant + diag.sum() / 2 + off.sum() / 4
    return IsingModel(h, off / 4, float(offset))


def reduce_to_2local(poly: PBPoly, nvars: int | None = None,
                     delta_rule: str = "objective") -> tuple[QuboModel, ReductionMap]:
    """Greedy quadratization; ancillae are numbered from ``nvars + 1``.

    ``delta_rule="objective"`` sizes each penalty from the substituted
    objective alone.  That is sound: a wrong ancilla can only shift the terms
    holding both collapsed variables, which are a subset of those counted.
    ``delta_rule="state"`` also counts the gadgets added so far, which is
    more conservative but compounds quickly.
    """
    if delta_rule not in ("objective", "state"):
        raise ValueError(f"unknown delta rule {delta_rule!r}")
    if not poly.is_integral():
        raise ValueError("reduction needs integer coefficients")
    n0 = poly.max_var() if nvars is None else nvars
    if poly.max_var() > n0:
        raise ValueError("polynomial uses variables beyond nvars")
    obj = poly
    penalty = PBPoly.zero()
    n = n0 + 1
    gadgets = []
    while True:
        pair = _best_pair(obj.masks)
        if pair is None:
            break
        delta = choose_delta(obj if delta_rule == "objective" else obj + penalty, pair)
        obj = obj.substitute_pair(*pair, n)
        penalty = penalty + and_gadget(*pair, n, delta)
        gadgets.append(Gadget(pair[0], pair[1], n, delta))
        n += 1
    return QuboModel.from_poly(obj + penalty, n - 1), ReductionMap(n0, tuple(gadgets))


# -- file formats -------------------------------------------------------------

def format_qubo(m: QuboModel) -> str:
    lines = [f"qubo {m.n} {m.constant}"]
    for a, b in sorted(zip(*np.nonzero(m.Q))):
        lines.append(f"{a + 1} {b + 1} {int(m.Q[a, b])}")
    return "\n".join(lines) + "\n"


def parse_qubo(text: str) -> QuboModel:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or lines[0][0] != "qubo":
        raise ValueError("missing 'qubo <n> <constant>' header")
    n, const = int(lines[0][1]), int(lines[0][2])
    Q = np.zeros((n, n), dtype=np.int64)
    for i, j, c in lines[1:]:
        i, j = int(i), int(j)
        if i > j:
            raise ValueError("QUBO entries must have i <= j")
        Q[i - 1, j - 1] += int(c)
    return QuboModel(n, Q, const)


def format_dense(m: QuboModel) -> str:
    """Whitespace-aligned dense matrix, one row per line."""
    width = max((len(str(int(v))) for v in m.Q.flat), default=1)
    rows = [" ".join(f"{int(v):>{width}d}" for v in row) for row in m.Q]
    return f"# constant {m.constant}\n" + "\n".join(rows) + "\n"


def format_ising(m: IsingModel) -> str:
    lines = [f"ising {m.n} {float(m.offset)!r}"]
    for i, v in enumerate(m.h):
        if v:
            lines.append(f"{i + 1} {i + 1} {float(v)!r}")
    for a, b in sorted(zip(*np.nonzero(m.J))):
        lines.append(f"{a + 1} {b + 1} {float(m.J[a, b])!r}")
    return "\n".join(lines) + "\n"
