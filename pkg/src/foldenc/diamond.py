"""Diamond (one-hot site) encoding.

Residue 1 is pinned at the origin.  Residue ``k >= 2`` owns a register with
one bit per lattice point it could reach: Manhattan radius ``1 .. k-1`` (or
up to a cutoff) with the parity of ``k - 1``.  Sites are listed by radius and
then clockwise from north, so residues of equal parity share a common prefix
of site indices.  All energy terms are at most quadratic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .encoding import Encoding
from .lattice import Conformation, Instance
from .pbpoly import PBPoly

Site = tuple[int, int]


def _clockwise_key(site: Site):
    x, y = site
    return (abs(x) + abs(y), math.atan2(x, y) % (2 * math.pi))


def diamond_sites(k: int, cutoff: int | None = None) -> list[Site]:
    """Reachable non-origin sites of residue ``k`` in canonical order."""
    if k < 2:
        return []
    r = k - 1 if cutoff is None else min(k - 1, cutoff)
    pts = [
        (x, y)
        for x in range(-r, r + 1)
        for y in range(-r, r + 1)
        if 1 <= abs(x) + abs(y) <= r and (abs(x) + abs(y)) % 2 == (k - 1) % 2
    ]
    return sorted(pts, key=_clockwise_key)


def _adjacent(a: Site, b: Site) -> bool:
    return abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1


@dataclass(frozen=True)
class DiamondLayout:
    N: int
    cutoff: int | None
    sites: dict = field(default_factory=dict)  # k -> list of sites
    var_of: dict = field(default_factory=dict)  # (k, site) -> var
    total_bits: int = 0

    def register(self, k: int) -> list[int]:
        return [self.var_of[(k, s)] for s in self.sites[k]]

    def widths(self) -> list[int]:
        return [len(self.sites[k]) for k in range(2, self.N + 1)]

    @property
    def info_vars(self) -> tuple[int, ...]:
        return tuple(range(1, self.total_bits + 1))

    def site_of(self, var: int) -> tuple[int, Site]:
        for (k, s), v in self.var_of.items():
            if v == var:
                return k, s
        raise KeyError(var)

    def roles(self) -> list[dict]:
        out = []
        for k in range(2, self.N + 1):
            for s in self.sites[k]:
                out.append({"var": self.var_of[(k, s)], "role": "site", "amino": k, "x": s[0], "y": s[1]})
        return out


def build_layout(N: int, cutoff: int | None = None) -> DiamondLayout:
    if N < 2:
        raise ValueError("N must be at least 2")
    if cutoff is not None and cutoff < 1:
        raise ValueError("cutoff must be a positive radius")
    sites, var_of = {}, {}
    nxt = 1
    for k in range(2, N + 1):
        sites[k] = diamond_sites(k, cutoff)
        for s in sites[k]:
            var_of[(k, s)] = nxt
            nxt += 1
    return DiamondLayout(N, cutoff, sites, var_of, nxt - 1)


def e_one(layout: DiamondLayout, lam) -> PBPoly:
    terms = {}
    for k in range(2, layout.N + 1):
        reg = layout.register(k)
        for a in range(len(reg)):
            for b in range(a + 1, len(reg)):
                terms[(reg[a], reg[b])] = lam
    return PBPoly(terms)


def e_connect(layout: DiamondLayout, lam) -> PBPoly:
    # residue 2 is always bonded to the origin, so rewards start at k = 3
    terms = {(): lam * max(layout.N - 2, 0)}
    for k in range(3, layout.N + 1):
        for s in layout.sites[k]:
            for t in layout.sites[k - 1]:
                if _adjacent(s, t):
                    terms[(layout.var_of[(k - 1, t)], layout.var_of[(k, s)])] = -lam
    return PBPoly(terms)


def e_overlap_diamond(layout: DiamondLayout, lam) -> PBPoly:
    terms = {}
    for k in range(2, layout.N + 1):
        for h in range(k + 2, layout.N + 1, 2):
            for s in layout.sites[k]:
                if (h, s) in layout.var_of:
                    terms[(layout.var_of[(k, s)], layout.var_of[(h, s)])] = lam
    return PBPoly(terms)


def e_pair_diamond(layout: DiamondLayout, inst: Instance) -> PBPoly:
    if inst.N != layout.N:
        raise ValueError("layout and instance lengths differ")
    terms: dict = {}
    for k in range(1, layout.N + 1):
        for h in range(k + 3, layout.N + 1, 2):
            J = inst.j(k, h)
            if not J:
                continue
            for t in layout.sites[h]:
                if k == 1:
                    if _adjacent((0, 0), t):
                        key = (layout.var_of[(h, t)],)
                        terms[key] = terms.get(key, 0) + J
                    continue
                for s in layout.sites[k]:
                    if _adjacent(s, t):
                        key = (layout.var_of[(k, s)], layout.var_of[(h, t)])
                        terms[key] = terms.get(key, 0) + J
    return PBPoly(terms)


def choose_lambdas_diamond(inst: Instance) -> dict:
    """Penalties that make every minimizer a one-hot, connected, self-avoiding placement.

    A single site bit has at most 8 bond partners and at most 4 contact
    partners per interacting residue, so ``lambda_one`` exceeds every reward
    a surplus bit could collect.
    """
    s = math.ceil(abs(inst.total_interaction()))
    lam_c = 1 + s
    return {"lambda_one": 8 * lam_c + 4 * s + 1, "lambda_connect": lam_c, "lambda_overlap": lam_c}


def encode_diamond(inst: Instance, cutoff: int | None = None, penalties: Mapping | None = None) -> Encoding:
    pen = dict(choose_lambdas_diamond(inst))
    if penalties:
        pen.update({k: v for k, v in penalties.items() if v is not None})
    layout = build_layout(inst.N, cutoff)
    poly = (
        e_one(layout, pen["lambda_one"])
        + e_connect(layout, pen["lambda_connect"])
        + e_overlap_diamond(layout, pen["lambda_overlap"])
        + e_pair_diamond(layout, inst)
    )
    return Encoding("diamond", inst, poly, layout, pen, 0)


def decode_placement(assignment: Mapping[int, int] | Sequence[int], layout: DiamondLayout) -> Conformation:
    """Coordinates of every residue; raises if a register is not one-hot."""
    coords = [(0, 0)]
    for k in range(2, layout.N + 1):
        on = [s for s in layout.sites[k] if assignment[layout.var_of[(k, s)]]]
        if len(on) != 1:
            raise ValueError(f"register of residue {k} has {len(on)} bits set")
        coords.append(on[0])
    return coords


def placement_to_bits(coords: Sequence[Site], layout: DiamondLayout) -> dict[int, int]:
    bits = {v: 0 for v in layout.var_of.values()}
    if tuple(coords[0]) != (0, 0):
        raise ValueError("residue 1 must sit at the origin")
    for k, s in enumerate(coords[1:], start=2):
        key = (k, tuple(s))
        if key not in layout.var_of:
            raise ValueError(f"site {s} is outside the register of residue {k}")
        bits[layout.var_of[key]] = 1
    return bits
