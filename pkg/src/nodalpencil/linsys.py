"""Linear systems of plane curves through simple and double points."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Sequence

import numpy as np

from . import fieldarith as fa
from .groebner import GroebnerBasis, Ideal
from .multipoly import Poly, Ring, monomial_basis

Point = tuple[int, int, int]


def normalize_point(pt: Sequence[int], p: int) -> Point:
    """Scale so the last nonzero coordinate is 1."""
    v = [int(c) % p for c in pt]
    for k in (2, 1, 0):
        if v[k]:
            inv = pow(v[k], -1, p)
            return tuple(c * inv % p for c in v)  # type: ignore[return-value]
    raise ValueError("(0,0,0) is not a projective point")


@dataclass
class FatPointSystem:
    """Projective points with multiplicity 1 (pass through) or 2 (node)."""

    p: int
    points: list[tuple[Point, int]] = field(default_factory=list)

    def __post_init__(self):
        seen = set()
        pts = []
        for pt, m in self.points:
            if m not in (1, 2):
                raise ValueError(f"unsupported multiplicity {m}")
            q = normalize_point(pt, self.p)
            if q in seen:
                raise ValueError(f"repeated point {q}")
            seen.add(q)
            pts.append((q, m))
        self.points = pts

    @classmethod
    def simple(cls, p: int, pts: Sequence[Sequence[int]]) -> FatPointSystem:
        return cls(p, [(tuple(q), 1) for q in pts])

    @classmethod
    def double(cls, p: int, pts: Sequence[Sequence[int]]) -> FatPointSystem:
        return cls(p, [(tuple(q), 2) for q in pts])

    def __add__(self, other: FatPointSystem) -> FatPointSystem:
        return FatPointSystem(self.p, self.points + other.points)

    def condition_count(self) -> int:
        return sum(1 if m == 1 else 3 for _, m in self.points)


@dataclass
class LinearSystem:
    degree: int
    basis: list[Poly]
    matrix: np.ndarray  # kernel basis rows over ``monomials``
    monomials: list[tuple[int, ...]]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def coordinates(self, f: Poly) -> np.ndarray:
        return np.array([f.coeff(m) for m in self.monomials], dtype=np.int64)

    def contains(self, f: Poly) -> bool:
        """Membership by rank: f lies in the span of the basis."""
        if self.dimension == 0:
            return f.is_zero()
        p = f.ring.p
        M = np.vstack([self.matrix, self.coordinates(f)])
        return fa.rank(M, p) == self.dimension


def condition_rows(S: FatPointSystem, d: int) -> np.ndarray:
    """Rows of the linear conditions imposed on degree-d forms by ``S``."""
    p = S.p
    mons = monomial_basis(d)
    rows = []
    for pt, m in S.points:
        k = max(i for i in range(3) if pt[i])  # chart coordinate, equal to 1
        others = [i for i in range(3) if i != k]
        rows.append([_mono_value(e, pt, p) for e in mons])
        if m == 2:
            for i in others:
                rows.append([_mono_deriv(e, pt, i, p) for e in mons])
    return np.array(rows, dtype=np.int64).reshape(len(rows), len(mons))


def _mono_value(e, pt, p):
    v = 1
    for a, c in zip(e, pt):
        if a:
            v = v * pow(c, a, p) % p
    return v


def _mono_deriv(e, pt, i, p):
    if e[i] == 0:
        return 0
    e2 = list(e)
    e2[i] -= 1
    return e[i] * _mono_value(e2, pt, p) % p


def ideal_rows(gb: GroebnerBasis, d: int, ring3: Ring) -> np.ndarray:
    """Rows expressing membership of a degree-d form in the ideal of ``gb``.

    Each monomial is mapped to the coefficients of its normal form; the form
    lies in the ideal iff the combined normal form vanishes.  A two-variable
    ideal is read in the chart z = 1.
    """
    mons = monomial_basis(d)
    chart = gb.ring.n == 2
    images = []
    for e in mons:
        m = ring3.monomial(e)
        if chart:
            m = m.dehomogenize(gb.ring)
        images.append(gb.normal_form(m).terms)
    keys = sorted({k for img in images for k in img})
    col = {k: i for i, k in enumerate(keys)}
    M = np.zeros((len(keys), len(mons)), dtype=np.int64)
    for j, img in enumerate(images):
        for k, c in img.items():
            M[col[k], j] = c
    return M


def linear_system(S: FatPointSystem, d: int, extra: Ideal | GroebnerBasis | None = None,
                  ring: Ring | None = None) -> LinearSystem:
    """Degree-d forms vanishing on ``S`` (and lying in ``extra`` if given)."""
    ring = ring or Ring(S.p)
    mons = monomial_basis(d)
    blocks = [condition_rows(S, d)]
    if extra is not None:
        gb = extra.gb() if isinstance(extra, Ideal) else extra
        blocks.append(ideal_rows(gb, d, ring))
    M = np.vstack([b for b in blocks if b.size] or [np.zeros((0, len(mons)), dtype=np.int64)])
    if M.shape[0] == 0:
        K = np.eye(len(mons), dtype=np.int64)
    else:
        _, K = fa.rank_and_kernel(M, S.p)
    basis = [ring.from_terms((m, int(c)) for m, c in zip(mons, row) if c) for row in K]
    return LinearSystem(d, basis, K, mons)


def hilbert_function(S: FatPointSystem, d_max: int) -> list[int]:
    """dim of the degree-d piece of the ideal of ``S`` for d = 0..d_max."""
    out = []
    for d in range(d_max + 1):
        rows = condition_rows(S, d)
        r = fa.rank(rows, S.p) if rows.size else 0
        out.append(comb(d + 2, 2) - r)
    return out


# --------------------------------------------------------------------------
# generator / syzygy counts in a degree window


def _shift_index(d: int) -> tuple[list[tuple[int, ...]], dict[tuple[int, ...], int]]:
    mons = monomial_basis(d)
    return mons, {e: i for i, e in enumerate(mons)}


def _times_var(vec: np.ndarray, d: int, var: int) -> np.ndarray:
    """Coordinates of x_var * f where f has degree d."""
    src, _ = _shift_index(d)
    _, dst = _shift_index(d + 1)
    out = np.zeros(comb(d + 3, 2), dtype=np.int64)
    for i, e in enumerate(src):
        if vec[i]:
            e2 = list(e)
            e2[var] += 1
            out[dst[tuple(e2)]] = vec[i]
    return out


def _times_mono(vec: np.ndarray, d: int, mono: tuple[int, ...]) -> np.ndarray:
    src, _ = _shift_index(d)
    dd = d + sum(mono)
    _, dst = _shift_index(dd)
    out = np.zeros(comb(dd + 2, 2), dtype=np.int64)
    for i, e in enumerate(src):
        if vec[i]:
            out[dst[tuple(a + b for a, b in zip(e, mono))]] = vec[i]
    return out


@dataclass
class ResolutionProfile:
    generators: dict[int, int]
    syzygies: dict[int, int]

    def matches_twelve_points(self) -> bool:
        """3 generators in degree 4, 2 first syzygies in degree 6, nothing else."""
        gens_ok = all(c == (3 if d == 4 else 0) for d, c in self.generators.items())
        syz_ok = all(c == (2 if d == 6 else 0) for d, c in self.syzygies.items())
        return gens_ok and syz_ok

    def to_json(self) -> dict:
        return {"generators": {str(d): c for d, c in sorted(self.generators.items())},
                "syzygies": {str(d): c for d, c in sorted(self.syzygies.items())}}


def generator_syzygy_profile(S: FatPointSystem, d_max: int = 8) -> ResolutionProfile:
    """Minimal generators and first syzygies of I_S by degree, up to ``d_max``.

    generators(d) = dim I_d - dim R_1 I_{d-1}; the syzygy count in degree d is
    the kernel of the map from the free module on the minimal generators onto
    I_d, minus what R_1 produces from the kernel one degree lower.
    """
    p = S.p
    pieces: dict[int, np.ndarray] = {}
    gens: list[tuple[int, np.ndarray]] = []  # (degree, coordinate vector)
    gen_counts: dict[int, int] = {}
    syz_counts: dict[int, int] = {}
    prev_kernel: np.ndarray | None = None
    prev_layout: list[tuple[int, int, int]] = []
    for d in range(d_max + 1):
        rows = condition_rows(S, d)
        K = fa.kernel(rows, p) if rows.size else np.eye(comb(d + 2, 2), dtype=np.int64)
        pieces[d] = K
        # R_1 * I_{d-1}
        if d > 0 and pieces[d - 1].shape[0]:
            prods = np.array([_times_var(v, d - 1, var) for v in pieces[d - 1] for var in range(3)])
            span = fa.row_space_basis(prods, p)
        else:
            span = np.zeros((0, comb(d + 2, 2)), dtype=np.int64)
        new = 0
        cur = span
        r = cur.shape[0]
        for v in K:
            test = np.vstack([cur, v]) if cur.size else v.reshape(1, -1)
            if fa.rank(test, p) > r:
                cur = fa.row_space_basis(test, p)
                r += 1
                gens.append((d, v))
                new += 1
        gen_counts[d] = new
        # syzygies: free module F_d = ⊕ R_{d - a_i}
        layout = []  # (generator index, monomial index, block offset)
        cols = []
        for gi, (a, vec) in enumerate(gens):
            if a > d:
                continue
            for mi, mono in enumerate(monomial_basis(d - a)):
                layout.append((gi, mi, a))
                cols.append(_times_mono(vec, a, mono))
        if cols:
            M = np.array(cols, dtype=np.int64).T
            Kd = fa.kernel(M, p)
        else:
            Kd = np.zeros((0, 0), dtype=np.int64)
        lifted = 0
        if prev_kernel is not None and prev_kernel.shape[0] and Kd.shape[0]:
            pos = {(gi, monomial_basis(d - a)[mi]): j for j, (gi, mi, a) in enumerate(layout)}
            prods = []
            for v in prev_kernel:
                for var in range(3):
                    w = np.zeros(len(layout), dtype=np.int64)
                    for j, (gi, mi, a) in enumerate(prev_layout):
                        if v[j]:
                            e = list(monomial_basis(d - 1 - a)[mi])
                            e[var] += 1
                            w[pos[(gi, tuple(e))]] = v[j]
                    prods.append(w)
            lifted = fa.rank(np.array(prods), p)
        syz_counts[d] = Kd.shape[0] - lifted
        prev_kernel, prev_layout = Kd, layout
    return ResolutionProfile(gen_counts, syz_counts)
