"""Shared generators and brute-force oracles for the tests."""
import random

import numpy as np

from foldenc.lattice import Instance
from foldenc.pbpoly import PBPoly


def all_bits(n: int) -> np.ndarray:
    """Every assignment of ``n`` bits as rows; column 0 is an unused pad."""
    idx = np.arange(1 << n, dtype=np.int64)
    X = np.zeros((1 << n, n + 1), dtype=np.int8)
    for v in range(1, n + 1):
        X[:, v] = (idx >> (v - 1)) & 1
    return X


def qubo_energies_all(m, chunk: int = 1 << 16):
    """All ``2^n`` rows (0-based columns) and their energies, by flat enumeration."""
    X = all_bits(m.n)[:, 1:]
    E = np.empty(len(X), dtype=np.int64)
    for s in range(0, len(X), chunk):
        E[s:s + chunk] = m.energies(X[s:s + chunk])
    return X, E


def random_instance(rng: random.Random, N: int, low: int = -3) -> Instance:
    J = [[0] * N for _ in range(N)]
    for a in range(N):
        for b in range(a + 1, N):
            J[a][b] = J[b][a] = rng.randint(low, 0)
    return Instance.from_matrix([chr(65 + k) for k in range(N)], J)


def random_poly(rng: random.Random, n: int, max_degree: int = 4, n_terms: int = 8,
                coeff: int = 9) -> PBPoly:
    terms = {(): rng.randint(-coeff, coeff)}
    for _ in range(n_terms):
        k = rng.randint(1, min(max_degree, n))
        vs = tuple(sorted(rng.sample(range(1, n + 1), k)))
        terms[vs] = terms.get(vs, 0) + rng.choice([c for c in range(-coeff, coeff + 1) if c])
    return PBPoly(terms)
