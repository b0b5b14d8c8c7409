"""Weighted MAX-SAT (WCNF) and 0-1 ILP views of an integer polynomial.

A positive term ``c x1..xk`` costs ``c`` exactly when all its variables are
true, which is the falsification pattern of the clause ``(-x1 .. -xk)``.
A negative term ``-c x1..xk`` is written as ``c - c x1..xk``; the clause
``(-x1 .. -x(k-1) xk)`` covers the case where only the last variable is
false and the rest recurses on ``-c x1..x(k-1)`` until a unit clause remains.
The constants collected on the way go to ``offset`` so that
``cost + offset`` equals the polynomial on every assignment.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .pbpoly import PBPoly

Clause = tuple[int, tuple[int, ...]]


@dataclass
class WcnfProblem:
    nvars: int
    clauses: list[Clause] = field(default_factory=list)
    offset: int = 0

    def cost(self, assignment: Mapping[int, int] | Sequence[int]) -> int:
        total = self.offset
        for w, lits in self.clauses:
            if not any((assignment[abs(l)] == 1) == (l > 0) for l in lits):
                total += w
        return total

    def costs(self, X: np.ndarray) -> np.ndarray:
        """Costs of the rows of a 0/1 matrix (column ``v`` holds ``x_v``, column 0 unused)."""
        X = np.asarray(X).astype(bool)
        out = np.full(X.shape[0], self.offset, dtype=np.int64)
        for w, lits in self.clauses:
            sat = np.zeros(X.shape[0], dtype=bool)
            for l in lits:
                sat |= X[:, l] if l > 0 else ~X[:, -l]
            out[~sat] += w
        return out


def pb_to_wcnf(p: PBPoly, nvars: int | None = None) -> WcnfProblem:
    if not p.is_integral():
        raise ValueError("WCNF weights need integer coefficients")
    merged: dict[tuple[int, ...], int] = {}
    offset = p.const

    def emit(w: int, lits: tuple[int, ...]):
        if w <= 0:
            raise AssertionError("clause weights must be positive")
        merged[lits] = merged.get(lits, 0) + w

    for vs, c in p.terms():
        if not vs:
            continue
        if c > 0:
            emit(c, tuple(-v for v in vs))
            continue
        w = -c
        for k in range(len(vs), 1, -1):
            emit(w, tuple(-v for v in vs[: k - 1]) + (vs[k - 1],))
        emit(w, (vs[0],))
        offset -= w
    n = p.max_var() if nvars is None else nvars
    return WcnfProblem(n, [(w, lits) for lits, w in merged.items()], offset)


def wcnf_cost(w: WcnfProblem, a) -> int:
    return w.cost(a)


def wcnf_min(w: WcnfProblem) -> int:
    """Exact minimum cost (plus offset) by enumeration, up to 24 variables."""
    if w.nvars > 24:
        raise ValueError("enumeration is limited to 24 variables")
    idx = np.arange(1 << w.nvars, dtype=np.int64)
    X = np.zeros((len(idx), w.nvars + 1), dtype=np.int8)
    for v in range(1, w.nvars + 1):
        X[:, v] = (idx >> (v - 1)) & 1
    return int(w.costs(X).min())


def format_wcnf(w: WcnfProblem) -> str:
    lines = [f"c offset {w.offset}", f"p wcnf {w.nvars} {len(w.clauses)}"]
    for weight, lits in w.clauses:
        lines.append(" ".join(str(x) for x in (weight, *lits, 0)))
    return "\n".join(lines) + "\n"


def parse_wcnf(text: str) -> WcnfProblem:
    offset, nvars, clauses = 0, 0, []
    for ln in text.splitlines():
        tok = ln.split()
        if not tok:
            continue
        if tok[0] == "c":
            if len(tok) >= 3 and tok[1] == "offset":
                offset = int(tok[2])
            continue
        if tok[0] == "p":
            nvars = int(tok[2])
            continue
        vals = [int(t) for t in tok]
        if vals[-1] != 0:
            raise ValueError(f"clause line must end with 0: {ln!r}")
        clauses.append((vals[0], tuple(vals[1:-1])))
    return WcnfProblem(nvars, clauses, offset)


# -- 0-1 ILP ------------------------------------------------------------------------

@dataclass
class IlpProblem:
    """Minimize ``sum w_i y_i`` s.t. ``y_i + sum_pos x + sum_neg (1 - x) >= 1``."""

    nx: int
    weights: list[int] = field(default_factory=list)
    rows: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)  # (pos, neg)
    offset: int = 0

    @property
    def ny(self) -> int:
        return len(self.weights)


def wcnf_to_ilp(w: WcnfProblem) -> IlpProblem:
    rows = []
    for _, lits in w.clauses:
        rows.append((tuple(l for l in lits if l > 0), tuple(-l for l in lits if l < 0)))
    return IlpProblem(w.nvars, [wt for wt, _ in w.clauses], rows, w.offset)


def ilp_optimum(ilp: IlpProblem) -> int:
    """Optimal objective plus offset, solved with ``scipy.optimize.milp``."""
    from scipy.optimize import Bounds, LinearConstraint, milp

    if ilp.ny == 0:
        return ilp.offset
    n = ilp.nx + ilp.ny
    c = np.zeros(n)
    c[ilp.nx:] = ilp.weights
    A = np.zeros((ilp.ny, n))
    lb = np.zeros(ilp.ny)
    for i, (pos, neg) in enumerate(ilp.rows):
        A[i, ilp.nx + i] = 1
        for v in pos:
            A[i, v - 1] += 1
        for v in neg:
            A[i, v - 1] -= 1
        lb[i] = 1 - len(neg)
    res = milp(c, constraints=LinearConstraint(A, lb, np.inf),
               integrality=np.ones(n), bounds=Bounds(0, 1))
    if not res.success:
        raise RuntimeError(f"ILP solve failed: {res.message}")
    return int(round(res.fun)) + ilp.offset


def format_lp(ilp: IlpProblem) -> str:
    lines = [f"\\ offset {ilp.offset}", "Minimize"]
    obj = " + ".join(f"{w} y{i + 1}" for i, w in enumerate(ilp.weights))
    lines.append(f" obj: {obj}" if obj else " obj:")
    lines.append("Subject To")
    for i, (pos, neg) in enumerate(ilp.rows):
        parts = [f"y{i + 1}"] + [f"+ x{v}" for v in pos] + [f"- x{v}" for v in neg]
        lines.append(f" c{i + 1}: {' '.join(parts)} >= {1 - len(neg)}")
    lines.append("Binary")
    names = [f"x{v}" for v in range(1, ilp.nx + 1)] + [f"y{i + 1}" for i in range(ilp.ny)]
    for k in range(0, len(names), 10):
        lines.append(" " + " ".join(names[k:k + 10]))
    lines.append("End")
    return "\n".join(lines) + "\n"
