"""Small fixed-seed invariant suites over F_7 and F_10007."""

from __future__ import annotations

from itertools import product
from typing import Callable, Iterator

import numpy as np

from . import fieldarith as fa
from .groebner import Ideal, certify_gb, ideal_quotient, points_ideal, zerodim_degree
from .linsys import FatPointSystem, hilbert_function
from .multipoly import Ring
from .verify import dimension_audit, node_discriminant, plane_ring

SMALL, LARGE = 7, fa.DEFAULT_PRIME


def _cayley_hamilton(rng, p, trials=50):
    for _ in range(trials):
        n = int(rng.integers(1, 7))
        M = rng.integers(0, p, size=(n, n))
        chi = fa.charpoly(M, p)
        if len(chi) != n + 1 or chi[-1] != 1 or fa.matrix_poly_eval(chi, M, p).any():
            return False
    return True


def _rank_nullity(rng, p, trials=100):
    for _ in range(trials):
        M = rng.integers(0, p, size=(6, 8))
        r, K = fa.rank_and_kernel(M, p)
        if r + K.shape[0] != 8 or (K.size and fa.matmul(M, K.T, p).any()):
            return False
    return True


def _groebner_certified(rng, p, trials=10):
    R = Ring(p, ("x", "y", "z"))
    for _ in range(trials):
        gens = []
        for _ in range(3):
            d = int(rng.integers(1, 4))
            mons = [e for e in product(range(d + 1), repeat=3) if sum(e) <= d]
            terms = [(e, int(rng.integers(0, p))) for e in mons if rng.random() < 0.5]
            gens.append(R.from_terms(terms))
        gb = Ideal(R, gens).gb()
        if not certify_gb(gb) or not all(gb.contains(f) for f in gens):
            return False
    return True


def _quotient_of_points(rng, p, trials=10):
    """(I_S : I_T) = I_{S minus T} for reduced point sets in the plane."""
    A = Ring(p, ("x", "y"))
    for _ in range(trials):
        pts = list({tuple(int(c) for c in rng.integers(0, p, size=2)) for _ in range(8)})
        k = len(pts) // 2
        I_S, I_T = points_ideal(A, pts), points_ideal(A, pts[:k])
        oracle = points_ideal(A, pts[k:])
        for method in ("algebra", "elimination"):
            Q = ideal_quotient(I_S, I_T, method=method).gb()
            if not Q.same_ideal(oracle) or zerodim_degree(Q) != len(pts) - k:
                return False
    return True


def _node_tangents(p):
    H = plane_ring(p)
    x, y, z = H.gens()
    split = x * y * z + x ** 3 + y ** 3
    non_square = next(a for a in range(2, p) if pow(a, (p - 1) // 2, p) == p - 1)
    conjugate = (x * x - y * y * non_square) * z + x ** 3 + y ** 3
    origin = (0, 0, 1)
    return node_discriminant(split, origin) != 0 and node_discriminant(conjugate, origin) != 0


def _twelve_points_hilbert(rng, p):
    pts = set()
    while len(pts) < 12:
        pts.add((int(rng.integers(0, p)), int(rng.integers(0, p)), 1))
    return hilbert_function(FatPointSystem.simple(p, sorted(pts)), 8) == [0, 0, 0, 0, 3, 9, 16, 24, 33]


def run_selfcheck(seed: int = 0) -> Iterator[tuple[str, bool, str]]:
    suites: list[tuple[str, Callable[[np.random.Generator, int], bool], tuple[int, ...]]] = [
        ("cayley-hamilton", _cayley_hamilton, (SMALL, LARGE)),
        ("rank-nullity", _rank_nullity, (SMALL, LARGE)),
        ("groebner-certified", _groebner_certified, (SMALL, LARGE)),
        ("quotient-of-points", _quotient_of_points, (SMALL, LARGE)),
        ("node-tangents", lambda rng, p: _node_tangents(p), (SMALL, LARGE)),
        ("hilbert-12-points", _twelve_points_hilbert, (LARGE,)),
    ]
    for name, fn, primes in suites:
        for p in primes:
            rng = np.random.default_rng([seed, p])
            yield name, bool(fn(rng, p)), f"F_{p}"
    audit = dimension_audit()
    yield "dimension-audit", audit.ok, "exact"
