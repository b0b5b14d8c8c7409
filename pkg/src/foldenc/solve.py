"""Desk-scale solvers, decoders and oracle-backed verification.

``exhaustive_min`` enumerates the info bits and minimizes the remaining
ancillae exactly: it fixes variables whose sign is forced (dominance), splits
what is left into independent components and brute-forces each one.  The
diamond encoding is handled register by register instead, after checking
that its penalties rule out doubly occupied registers.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .diamond import DiamondLayout, decode_placement, placement_to_bits
from .encoding import Encoding
from .lattice import (Fold, Instance, coords_to_fold, conformation_energy, fold_to_coords,
                      ground_truth, is_saw, symmetric_images)
from .pbpoly import PBPoly, vars_of
from .reduction import IsingModel, QuboModel, ReductionMap
from .turn_ancilla import TurnLayout, canonical_completion, fold_to_info, info_to_fold
from .turn_circuit import CircuitLayout

BRUTE_LIMIT = 18
INFO_LIMIT = 20


@dataclass
class SolveResult:
    assignment: dict
    value: object
    fold: Fold | None = None
    coords: list | None = None
    valid: bool | None = None
    minimizers: list = field(default_factory=list)  # info-level assignments achieving the min
    restarts: list = field(default_factory=list)  # per-restart best values (annealer)

    def report(self) -> dict:
        return {
            "assignment": "".join(str(self.assignment[v]) for v in sorted(self.assignment)),
            "energy": _plain(self.value),
            "fold": list(self.fold) if self.fold else None,
            "coords": [list(c) for c in self.coords] if self.coords else None,
            "valid": self.valid,
        }

    def report_text(self) -> str:
        return json.dumps(self.report(), indent=1) + "\n"


def _plain(x):
    return int(x) if float(x).is_integer() else str(x)


# -- exact minimization of small residual polynomials ------------------------

def brute_force_min(p: PBPoly, variables: Sequence[int] | None = None, chunk: int = 1 << 18):
    """Flat enumeration: ``(min, list of argmin dicts)`` over ``variables``."""
    vs = list(p.variables() if variables is None else variables)
    if len(vs) > 26:
        raise ValueError("flat enumeration is limited to 26 variables")
    local = p.relabel({v: k + 1 for k, v in enumerate(vs)})
    best, arg = None, []
    total = 1 << len(vs)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        bits = np.zeros((len(idx), len(vs) + 1), dtype=np.int8)
        for k in range(len(vs)):
            bits[:, k + 1] = (idx >> (len(vs) - 1 - k)) & 1
        vals = local.evaluate_many(bits)
        m = vals.min()
        if best is None or m < best:
            best, arg = m, []
        if m == best:
            for r in np.flatnonzero(vals == m):
                arg.append({v: int(bits[r, k + 1]) for k, v in enumerate(vs)})
    return (p.const if best is None else best), arg


def _forced(p: PBPoly) -> dict[int, int]:
    """Variables whose best value does not depend on the others."""
    lo: dict[int, object] = {}
    hi: dict[int, object] = {}
    for m, c in p.masks.items():
        for v in vars_of(m):
            lo[v] = lo.get(v, 0) + min(c, 0)
            hi[v] = hi.get(v, 0) + max(c, 0)
    out = {}
    for v in lo:
        if lo[v] >= 0:
            out[v] = 0
        elif hi[v] <= 0:
            out[v] = 1
    return out


def _components(p: PBPoly) -> list[list[int]]:
    parent: dict[int, int] = {}

    def find(a):
        while parent.setdefault(a, a) != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for m in p.masks:
        vs = vars_of(m)
        for v in vs:
            find(v)
        for v in vs[1:]:
            parent[find(v)] = find(vs[0])
    groups: dict[int, list[int]] = {}
    for v in parent:
        groups.setdefault(find(v), []).append(v)
    return [sorted(g) for g in groups.values()]


def residual_min(p: PBPoly) -> tuple[object, dict[int, int]]:
    """Exact minimum of ``p`` over all its variables, with one minimizer."""
    fixed: dict[int, int] = {}
    while True:
        f = _forced(p)
        if not f:
            break
        fixed.update(f)
        p = p.restrict(f)
    value = p.const
    for comp in _components(p):
        sub = PBPoly._from_masks({m: c for m, c in p.masks.items() if m and vars_of(m)[0] in comp})
        if len(comp) <= BRUTE_LIMIT:
            v, args = brute_force_min(sub, comp)
            fixed.update(args[0])
        else:
            # branch on the busiest variable
            deg: dict[int, int] = {}
            for m in sub.masks:
                for x in vars_of(m):
                    deg[x] = deg.get(x, 0) + 1
            pivot = max(sorted(deg), key=deg.get)
            v0, a0 = residual_min(sub.restrict({pivot: 0}))
            v1, a1 = residual_min(sub.restrict({pivot: 1}))
            if v0 <= v1:
                v, arg = v0, {**a0, pivot: 0}
            else:
                v, arg = v1, {**a1, pivot: 1}
            fixed.update(arg)
        value += v
    return value, fixed


# -- structured exhaustion ---------------------------------------------------

def _info_vars(layout) -> tuple[int, ...]:
    if layout is None:
        return ()
    return tuple(layout.info_vars)


def exhaustive_min(p: PBPoly, layout=None, info_vars: Sequence[int] | None = None,
                   nvars: int | None = None) -> SolveResult:
    """Exact minimum, enumerating info bits and minimizing ancillae per pattern.

    ``layout`` (turn or diamond) supplies the info bits and the decoder;
    otherwise ``info_vars`` does, and with neither every variable is treated
    as an info bit.
    """
    if isinstance(layout, DiamondLayout):
        return diamond_min(p, layout)
    info = tuple(info_vars) if info_vars is not None else _info_vars(layout)
    if layout is None and info_vars is None:
        info = tuple(range(1, (nvars or p.max_var()) + 1))
    if len(info) > INFO_LIMIT:
        raise ValueError(f"{len(info)} info bits exceed the exhaustive limit of {INFO_LIMIT}")
    ancillae = sorted(set(p.variables()) - set(info))
    best, best_arg, mins = None, None, []
    for bits in itertools.product((0, 1), repeat=len(info)):
        a = dict(zip(info, bits))
        if ancillae:
            v, anc = residual_min(p.restrict(a))
        else:
            v, anc = p.evaluate({**a, **{x: 0 for x in p.variables() if x not in a}}), {}
        if best is None or v < best:
            best, mins = v, []
            best_arg = {**a, **anc}
        if v == best:
            mins.append(a)
    full = {v: 0 for v in range(1, max([p.max_var(), *info, 0]) + 1)}
    full.update(best_arg or {})
    res = SolveResult(full, best, minimizers=mins)
    if isinstance(layout, (TurnLayout, CircuitLayout)):
        attach_fold(res, layout.N)
    return res


def attach_fold(res: SolveResult, N: int) -> None:
    res.fold = info_to_fold(res.assignment, N)
    res.coords = fold_to_coords(res.fold)
    res.valid = is_saw(res.coords)


def info_values(p: PBPoly, info: Sequence[int]) -> dict[tuple[int, ...], object]:
    """Minimum over ancillae for every info pattern (the info-level spectrum)."""
    out = {}
    for bits in itertools.product((0, 1), repeat=len(info)):
        a = dict(zip(info, bits))
        out[bits] = residual_min(p.restrict(a))[0]
    return out


# -- diamond registers -------------------------------------------------------

def _register_tables(p: PBPoly, layout: DiamondLayout):
    """Unary and pairwise label tables; label 0 is the empty register."""
    regs = list(range(2, layout.N + 1))
    where = {}
    for k in regs:
        for s_idx, v in enumerate(layout.register(k)):
            where[v] = (k, s_idx + 1)
    U = {k: np.zeros(len(layout.sites[k]) + 1, dtype=object) for k in regs}
    P = {}
    for m, c in p.masks.items():
        vs = vars_of(m)
        if len(vs) == 1:
            k, s = where[vs[0]]
            U[k][s] += c
        elif len(vs) == 2:
            (k, s), (h, t) = where[vs[0]], where[vs[1]]
            if k == h:
                continue
            if k > h:
                k, h, s, t = h, k, t, s
            if (k, h) not in P:
                P[(k, h)] = np.zeros((len(layout.sites[k]) + 1, len(layout.sites[h]) + 1), dtype=object)
            P[(k, h)][s, t] += c
        elif len(vs) > 2:
            raise ValueError("diamond polynomials are quadratic")
    return regs, U, P, where


def one_hot_certificate(p: PBPoly, layout: DiamondLayout) -> bool:
    """True if no minimizer can set two bits of one register.

    For each bit, the total reward it can collect from other registers must
    stay below the smallest same-register penalty it pays.
    """
    reg_of = {}
    for k in range(2, layout.N + 1):
        for v in layout.register(k):
            reg_of[v] = k
    reward: dict[int, object] = {}
    intra: dict[int, object] = {}
    for m, c in p.masks.items():
        vs = vars_of(m)
        if len(vs) == 2 and reg_of[vs[0]] == reg_of[vs[1]]:
            for v in vs:
                intra[v] = min(intra.get(v, c), c)
            continue
        if c < 0:
            for v in vs:
                reward[v] = reward.get(v, 0) - c
    for k in range(2, layout.N + 1):
        reg = layout.register(k)
        if len(reg) < 2:
            continue
        for v in reg:
            if v not in intra or intra[v] <= reward.get(v, 0):
                return False
    return True


def diamond_min(p: PBPoly, layout: DiamondLayout, chunk: int = 1 << 16) -> SolveResult:
    """Exact minimum of a diamond polynomial over at-most-one-hot registers."""
    if p.degree() > 2:
        raise ValueError("diamond polynomials are quadratic")
    if not one_hot_certificate(p, layout):
        if layout.total_bits <= 24:
            v, args = brute_force_min(p, layout.info_vars)
            res = SolveResult(args[0], v, minimizers=args)
            attach_placement(res, layout)
            return res
        raise ValueError("penalties do not certify one-hot registers; raise lambda_one")
    regs, U, P, _ = _register_tables(p, layout)
    radix = [len(U[k]) for k in regs]
    total = int(np.prod(radix, dtype=object))
    Uf = {k: U[k].astype(np.int64) if _intlike(U[k]) else U[k] for k in regs}
    Pf = {kh: t.astype(np.int64) if _intlike(t) else t for kh, t in P.items()}
    best, labels_best = None, []
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        lab = {}
        rem = idx.copy()
        for k, r in zip(reversed(regs), reversed(radix)):
            lab[k] = rem % r
            rem //= r
        e = np.full(len(idx), p.const, dtype=Uf[regs[0]].dtype)
        for k in regs:
            e = e + Uf[k][lab[k]]
        for (k, h), t in Pf.items():
            e = e + t[lab[k], lab[h]]
        m = e.min()
        if best is None or m < best:
            best, labels_best = m, []
        if m == best:
            for r in np.flatnonzero(e == m):
                labels_best.append({k: int(lab[k][r]) for k in regs})
    mins = []
    for labels in labels_best:
        bits = {v: 0 for v in layout.info_vars}
        for k, s in labels.items():
            if s:
                bits[layout.register(k)[s - 1]] = 1
        mins.append(bits)
    res = SolveResult(mins[0], best if not isinstance(best, np.integer) else int(best), minimizers=mins)
    attach_placement(res, layout)
    return res


def _intlike(a: np.ndarray) -> bool:
    return all(isinstance(x, (int, np.integer)) for x in a.flat)


def attach_placement(res: SolveResult, layout: DiamondLayout) -> None:
    try:
        coords = decode_placement(res.assignment, layout)
    except ValueError:
        res.valid = False
        return
    res.coords = coords
    res.valid = is_saw(coords) and all(
        abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1 for a, b in zip(coords, coords[1:]))
    if res.valid:
        res.fold = coords_to_fold(coords)


# -- annealing -----------------------------------------------------------------

def default_schedule(m: QuboModel, sweeps: int = 10_000, t_cold: float = 0.1) -> np.ndarray:
    t_hot = max(float(np.abs(m.Q).sum()), t_cold)
    return np.geomspace(t_hot, t_cold, sweeps)


def anneal(m: QuboModel, schedule: Sequence[float] | None = None, seed: int = 0,
           restarts: int = 20, sweeps: int = 10_000) -> SolveResult:
    """Single-spin-flip Metropolis annealing, all restarts run side by side.

    Deterministic for a given seed.  Values include the constant.
    ``restarts`` holds the best value seen by each restart; the overall best
    (ties to the smallest bit string) is returned.
    """
    rng = np.random.default_rng(seed)
    n = m.n
    temps = default_schedule(m, sweeps) if schedule is None else np.asarray(schedule, dtype=float)
    if n == 0:
        return SolveResult({}, m.constant, restarts=[m.constant] * restarts)
    Q = m.Q.astype(np.float64)
    d = np.diag(Q).copy()
    S = Q + Q.T
    np.fill_diagonal(S, 0.0)
    X = rng.integers(0, 2, size=(restarts, n)).astype(np.float64)
    F = X @ S
    E = np.einsum("ri,ij,rj->r", X, Q, X)
    best_E = E.copy()
    best_X = X.copy()
    rows = np.arange(restarts)
    for T in temps:
        u = rng.random((n, restarts))
        for i in range(n):
            sign = 1.0 - 2.0 * X[:, i]
            dE = sign * (d[i] + F[:, i])
            acc = (dE <= 0) | (u[i] < np.exp(-np.maximum(dE, 0) / T))
            if not acc.any():
                continue
            r = rows[acc]
            X[r, i] += sign[acc]
            F[r] += np.outer(sign[acc], S[i])
            E[r] += dE[acc]
        better = E < best_E
        if better.any():
            best_E[better] = E[better]
            best_X[better] = X[better]
    # recompute exactly in integers to avoid drift
    Xi = best_X.astype(np.int64)
    vals = m.energies(Xi)
    order = sorted(range(restarts), key=lambda r: (vals[r], tuple(Xi[r])))
    b = order[0]
    assignment = {v + 1: int(Xi[b, v]) for v in range(n)}
    return SolveResult(assignment, int(vals[b]), restarts=[int(v) for v in vals])


# -- Ising ground states ---------------------------------------------------------

def ising_min(model: IsingModel, info: Sequence[int] | None = None) -> float:
    """Exact minimum energy; enumerates ``info`` spins (0-based) and brute-forces the rest."""
    n = model.n
    info = list(range(n) if info is None else info)
    rest = [i for i in range(n) if i not in set(info)]
    Jsym = model.J + model.J.T
    best = None
    for spins in itertools.product((-1, 1), repeat=len(info)):
        s = np.zeros(n)
        s[info] = spins
        base = model.h[info] @ np.asarray(spins, float) + s[info] @ model.J[np.ix_(info, info)] @ s[info]
        if rest:
            h_eff = model.h[rest] + Jsym[np.ix_(rest, info)] @ s[info]
            val = base + _ising_residual(h_eff, model.J[np.ix_(rest, rest)])
        else:
            val = base
        if best is None or val < best:
            best = val
    return float(best + model.offset)


def _ising_residual(h: np.ndarray, J: np.ndarray) -> float:
    """Exact min of ``h.s + s^T J s`` (``J`` strictly upper) by forcing and components."""
    h = h.copy()
    J = J.copy()
    alive = list(range(len(h)))
    total = 0.0
    changed = True
    while changed:
        changed = False
        Jsym = J + J.T
        for i in list(alive):
            coupling = np.abs(Jsym[i, alive]).sum()
            if abs(h[i]) >= coupling:
                s = -1.0 if h[i] > 0 else 1.0
                total += h[i] * s
                h[alive] += Jsym[alive, i] * s
                J[i, :] = 0
                J[:, i] = 0
                alive.remove(i)
                changed = True
    if not alive:
        return total
    Jsym = J + J.T
    adj = {i: [j for j in alive if j != i and Jsym[i, j] != 0] for i in alive}
    seen = set()
    for i in alive:
        if i in seen:
            continue
        comp, stack = [], [i]
        seen.add(i)
        while stack:
            a = stack.pop()
            comp.append(a)
            for b in adj[a]:
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        comp.sort()
        if len(comp) > 22:
            raise ValueError("Ising residual component too large for brute force")
        k = len(comp)
        idx = np.arange(1 << k)
        S = 1.0 - 2.0 * ((idx[:, None] >> np.arange(k)) & 1)
        e = S @ h[comp] + np.einsum("ri,ij,rj->r", S, J[np.ix_(comp, comp)], S)
        total += e.min()
    return total


# -- decoding and verification ----------------------------------------------------

def decode(assignment: Mapping[int, int], layout):
    """Turn layouts give a fold; diamond layouts give a placement (coordinates)."""
    if isinstance(layout, DiamondLayout):
        return decode_placement(assignment, layout)
    return info_to_fold(assignment, layout.N)


@dataclass
class VerifyReport:
    kind: str
    sequence: str
    min_value: object
    ground_energy: object
    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def summary(self) -> str:
        status = "pass" if self.passed else "FAIL"
        lines = [f"{self.kind} {self.sequence}: {status} (min {self.min_value}, ground truth {self.ground_energy})"]
        for name, ok in self.checks.items():
            lines.append(f"  {name}: {'ok' if ok else 'violated'}")
        lines.extend(f"  witness: {w}" for w in self.failures[:5])
        return "\n".join(lines)


def verify_encoding(inst: Instance, kind: str, cutoff: int | None = None, penalties=None) -> VerifyReport:
    """Check an encoding of ``inst`` against exhaustive folding.

    (a) the minimum equals the ground-truth energy, (b) every minimizer
    decodes to a ground-truth fold, (c) every ground-truth fold reaches the
    minimum.
    """
    from .diamond import encode_diamond
    from .turn_ancilla import encode
    from .turn_circuit import encode_circuit

    if kind == "turn-ancilla":
        enc = encode(inst, penalties)
    elif kind == "turn-circuit":
        enc = encode_circuit(inst, penalties)
    elif kind == "diamond":
        enc = encode_diamond(inst, cutoff, penalties)
    else:
        raise ValueError(f"unknown encoding {kind!r}")
    gt, gt_folds = ground_truth(inst)
    res = exhaustive_min(enc.poly, enc.layout)
    minimum = res.value + enc.constant
    rep = VerifyReport(kind, "".join(inst.sequence), minimum, gt)
    rep.checks["minimum equals ground truth"] = minimum == gt

    ok_b = True
    gt_set = set(gt_folds)
    for a in res.minimizers:
        try:
            if kind == "diamond":
                coords = decode_placement(a, enc.layout)
                fold = coords_to_fold(coords)
                good = is_saw(coords) and _canonical(fold) in gt_set and conformation_energy(coords, inst) == gt
            else:
                fold = info_to_fold(a, inst.N)
                good = fold in gt_set
        except ValueError as exc:
            good, fold = False, str(exc)
        if not good:
            ok_b = False
            rep.failures.append(("minimizer", fold))
    rep.checks["minimizers decode to ground-truth folds"] = ok_b

    ok_c = True
    if kind == "diamond":
        reached = {tuple(map(tuple, decode_placement(a, enc.layout))) for a in res.minimizers}
        for f in gt_folds:
            for img in symmetric_images(fold_to_coords(f)):
                key = tuple(map(tuple, img))
                try:
                    bits = placement_to_bits(img, enc.layout)
                except ValueError:
                    continue  # outside the cutoff
                if key not in reached or enc.poly.evaluate(bits) != res.value:
                    ok_c = False
                    rep.failures.append(("ground fold missed", f))
    else:
        found = {tuple(a[v] for v in sorted(a)) for a in res.minimizers}
        for f in gt_folds:
            bits = fold_to_info(f)
            if tuple(bits[v] for v in sorted(bits)) not in found:
                ok_c = False
                rep.failures.append(("ground fold missed", f))
            if kind == "turn-ancilla":
                full = canonical_completion(enc.layout, f, inst)
                if enc.poly.evaluate(full) != gt:
                    ok_c = False
                    rep.failures.append(("canonical completion off", f))
    rep.checks["ground-truth folds reach the minimum"] = ok_c
    return rep


def _canonical(fold: Fold) -> Fold:
    from .lattice import canonical_fold
    return canonical_fold(fold)


def lift(assignment: Mapping[int, int], rmap: ReductionMap) -> dict[int, int]:
    return rmap.extend(assignment)
