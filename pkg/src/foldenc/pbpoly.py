"""Exact multilinear pseudo-boolean polynomials.

Variables are positive integers (1-based; index 0 is never used).  A monomial
is stored as an integer bitmask with bit ``v`` set for variable ``q_v``, which
makes the idempotent product ``q * q = q`` a plain bitwise OR.  Coefficients
are Python ints or :class:`fractions.Fraction`, so all arithmetic is exact.

Example
-------
>>> q1, q2 = PBPoly.var(1), PBPoly.var(2)
>>> p = (1 - q1) * q2
>>> p
PBPoly(q2 - q1*q2)
>>> p.evaluate({1: 0, 2: 1})
1
"""
from __future__ import annotations

import json
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

__all__ = [
    "PBPoly",
    "mask_of",
    "vars_of",
    "add",
    "mul",
    "evaluate",
    "degree",
    "substitute_pair",
    "dumps",
    "loads",
]


def mask_of(variables: Iterable[int]) -> int:
    mask = 0
    for v in variables:
        v = int(v)
        if v < 1:
            raise ValueError(f"variable indices are 1-based, got {v}")
        bit = 1 << v
        if mask & bit:
            raise ValueError(f"duplicate variable {v} in monomial")
        mask |= bit
    return mask


def vars_of(mask: int) -> tuple[int, ...]:
    """Sorted variable indices of a monomial mask."""
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def _normalize_coeff(c):
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _normalize_coeff(Fraction(c.numerator, c.denominator))
    if isinstance(c, np.integer):
        return int(c)
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


class PBPoly:
    """Immutable multilinear polynomial over binary variables."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Iterable[int], object] | None = None):
        acc: dict[int, object] = {}
        if terms:
            for vs, c in terms.items():
                m = mask_of(vs)
                acc[m] = acc.get(m, 0) + _normalize_coeff(c)
        self._terms = {m: c for m, c in acc.items() if c != 0}
        self._hash = None

    @classmethod
    def _from_masks(cls, terms: dict[int, object]) -> "PBPoly":
        p = cls.__new__(cls)
        p._terms = {m: c for m, c in terms.items() if c != 0}
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "PBPoly":
        return cls._from_masks({0: _normalize_coeff(c)})

    @classmethod
    def var(cls, v: int) -> "PBPoly":
        return cls._from_masks({mask_of((v,)): 1})

    @classmethod
    def monomial(cls, variables: Iterable[int], coeff=1) -> "PBPoly":
        return cls._from_masks({mask_of(variables): _normalize_coeff(coeff)})

    @classmethod
    def zero(cls) -> "PBPoly":
        return cls._from_masks({})

    # -- inspection ------------------------------------------------------

    @property
    def masks(self) -> Mapping[int, object]:
        """Raw ``{mask: coeff}`` view (read-only by convention)."""
        return self._terms

    def terms(self) -> list[tuple[tuple[int, ...], object]]:
        """Terms in canonical (lexicographic monomial) order."""
        return sorted(((vars_of(m), c) for m, c in self._terms.items()), key=lambda t: t[0])

    def __iter__(self) -> Iterator[tuple[tuple[int, ...], object]]:
        return iter(self.terms())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, variables: Iterable[int] = ()):
        return self._terms.get(mask_of(variables), 0)

    @property
    def const(self):
        return self._terms.get(0, 0)

    def degree(self) -> int:
        return max((m.bit_count() for m in self._terms), default=0)

    def variables(self) -> tuple[int, ...]:
        allm = 0
        for m in self._terms:
            allm |= m
        return vars_of(allm)

    def max_var(self) -> int:
        allm = 0
        for m in self._terms:
            allm |= m
        return max(allm.bit_length() - 1, 0)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    # -- arithmetic ------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "PBPoly":
        if isinstance(other, PBPoly):
            return other
        return PBPoly.constant(other)

    def __add__(self, other) -> "PBPoly":
        other = self._coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return PBPoly._from_masks(out)

    __radd__ = __add__

    def __neg__(self) -> "PBPoly":
        return PBPoly._from_masks({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "PBPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "PBPoly":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "PBPoly":
        if not isinstance(other, PBPoly):
            c = _normalize_coeff(other)
            return PBPoly._from_masks({m: c * v for m, v in self._terms.items()})
        out: dict[int, object] = {}
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = ma | mb
                out[m] = out.get(m, 0) + ca * cb
        return PBPoly._from_masks(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PBPoly":
        if k < 0:
            raise ValueError("negative powers are not defined")
        out = PBPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, PBPoly):
            return self._terms == other._terms
        try:
            return self._terms == PBPoly.constant(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- evaluation ------------------------------------------------------

    def evaluate(self, assignment: Mapping[int, int] | Sequence[int]):
        """Exact value at a 0/1 assignment.

        ``assignment`` is a mapping ``{var: bit}`` or a sequence indexed by
        variable (position 0 ignored).  Raises ``KeyError`` if a variable of
        the polynomial is not assigned.
        """
        on = 0
        if isinstance(assignment, Mapping):
            for v in self.variables():
                if v not in assignment:
                    raise KeyError(f"variable q{v} is not assigned")
            for v, b in assignment.items():
                if b not in (0, 1):
                    raise ValueError(f"q{v} = {b} is not a bit")
                if b:
                    on |= 1 << v
        else:
            if self.max_var() >= len(assignment):
                raise KeyError(f"variable q{self.max_var()} is not assigned")
            for v, b in enumerate(assignment):
                if v and b:
                    on |= 1 << v
        total = 0
        for m, c in self._terms.items():
            if on & m == m:
                total += c
        return total

    def evaluate_many(self, bits: np.ndarray) -> np.ndarray:
        """Vectorized evaluation over rows of a 0/1 matrix.

        ``bits[:, v]`` holds the value of ``q_v``; column 0 is ignored.
        Integer polynomials give an ``int64`` result, others ``object``.
        """
        bits = np.asarray(bits)
        if bits.ndim != 2:
            raise ValueError("bits must be a 2-D array")
        if self.max_var() >= bits.shape[1]:
            raise KeyError(f"variable q{self.max_var()} is not assigned")
        dtype = np.int64 if self.is_integral() else object
        out = np.zeros(bits.shape[0], dtype=dtype)
        b = bits.astype(bool, copy=False)
        for m, c in self._terms.items():
            vs = vars_of(m)
            if not vs:
                out += c
                continue
            col = b[:, vs[0]].copy()
            for v in vs[1:]:
                col &= b[:, v]
            out[col] += c
        return out

    def restrict(self, values: Mapping[int, int]) -> "PBPoly":
        """Partial evaluation: fix the given variables to bits."""
        on = off = 0
        for v, b in values.items():
            if b:
                on |= 1 << v
            else:
                off |= 1 << v
        fixed = on | off
        out: dict[int, object] = {}
        for m, c in self._terms.items():
            if m & off:
                continue
            r = m & ~fixed
            out[r] = out.get(r, 0) + c
        return PBPoly._from_masks(out)

    def substitute_pair(self, i: int, j: int, n: int) -> "PBPoly":
        """Replace ``q_i q_j`` by ``q_n`` inside every monomial holding both."""
        if i == j:
            raise ValueError("pair variables must differ")
        nbit = 1 << n
        for m in self._terms:
            if m & nbit:
                raise ValueError(f"q{n} already occurs in the polynomial")
        pair = (1 << i) | (1 << j)
        out: dict[int, object] = {}
        for m, c in self._terms.items():
            if m & pair == pair:
                m = (m & ~pair) | nbit
            out[m] = out.get(m, 0) + c
        return PBPoly._from_masks(out)

    def relabel(self, mapping: Mapping[int, int]) -> "PBPoly":
        """Rename variables; unmapped ones keep their index."""
        out: dict[int, object] = {}
        for m, c in self._terms.items():
            nm = mask_of(mapping.get(v, v) for v in vars_of(m))
            out[nm] = out.get(nm, 0) + c
        return PBPoly._from_masks(out)

    # -- formatting ------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for vs, c in self.terms():
            mono = "*".join(f"q{v}" for v in vs)
            if not vs:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self) -> str:
        return f"PBPoly({self})"

    def to_dict(self, nvars: int | None = None) -> dict:
        terms = [{"vars": list(vs), "coeff": _json_coeff(c)} for vs, c in self.terms() if vs]
        return {
            "nvars": self.max_var() if nvars is None else nvars,
            "constant": _json_coeff(self.const),
            "terms": terms,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "PBPoly":
        terms = {(): _parse_coeff(data.get("constant", 0))}
        p = cls(terms)
        acc = dict(p._terms)
        for t in data.get("terms", []):
            m = mask_of(t["vars"])
            acc[m] = acc.get(m, 0) + _parse_coeff(t["coeff"])
        return cls._from_masks(acc)


def _json_coeff(c):
    return c if isinstance(c, int) else f"{c.numerator}/{c.denominator}"


def _parse_coeff(c):
    if isinstance(c, str):
        return _normalize_coeff(Fraction(c))
    if isinstance(c, float):
        if not c.is_integer():
            raise ValueError(f"non-integral float coefficient {c!r}; write it as 'p/q'")
        return int(c)
    return _normalize_coeff(c)


def dumps(p: PBPoly, nvars: int | None = None) -> str:
    """Serialize to the polynomial text format (JSON, canonical term order)."""
    return json.dumps(p.to_dict(nvars), indent=1) + "\n"


def loads(text: str) -> PBPoly:
    return PBPoly.from_dict(json.loads(text))


def add(a: PBPoly, b: PBPoly) -> PBPoly:
    return a + b


def mul(a: PBPoly, b: PBPoly) -> PBPoly:
    return a * b


def evaluate(p: PBPoly, assignment):
    return p.evaluate(assignment)


def degree(p: PBPoly) -> int:
    return p.degree()


def substitute_pair(p: PBPoly, i: int, j: int, n: int) -> PBPoly:
    return p.substitute_pair(i, j, n)
