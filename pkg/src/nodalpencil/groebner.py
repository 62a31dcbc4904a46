"""Buchberger engine and zero-dimensional ideal toolkit.

Besides the textbook operations (normal form, reduced Groebner basis, ideal
quotient, saturation, elimination) this module carries a linear-algebra layer
for zero-dimensional ideals of an affine chart: the quotient algebra with its
multiplication operators, and :func:`ideal_from_functionals`, which returns the
reduced Groebner basis of the kernel of a monomial-stable family of linear
functionals.  Quotients and saturations of zero-dimensional ideals are routed
through that kernel computation; everything else goes through elimination.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import fieldarith as fa
from .multipoly import Poly, Ring, UniPoly, uni_gcd


class NotZeroDimensional(ValueError):
    pass


# --------------------------------------------------------------------------
# reduction core


@dataclass
class _Reducer:
    key: int
    exp: tuple[int, ...]
    tail: list[tuple[int, int]]  # (key offset from the lead, coefficient)

    @classmethod
    def of(cls, f: Poly) -> _Reducer:
        lk = f.lead_key()
        tail = [(k - lk, c) for k, c in f.terms.items() if k != lk]
        return cls(lk, f.ring.exp(lk), tail)


def _divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


class _Reduction:
    """Normal form against a growing list of monic reducers."""

    def __init__(self, ring: Ring):
        self.ring = ring
        self.reducers: list[_Reducer] = []
        self.active: list[int] = []
        self._hit: dict[int, int] = {}
        self._miss: set[int] = set()

    def add(self, f: Poly) -> int:
        self.reducers.append(_Reducer.of(f))
        self._miss.clear()
        return len(self.reducers) - 1

    def _find(self, k: int) -> _Reducer | None:
        i = self._hit.get(k)
        if i is not None:
            return self.reducers[i]
        if k in self._miss:
            return None
        e = self.ring.exp(k)
        for i in self.active:
            r = self.reducers[i]
            if r.key <= k and _divides(r.exp, e):
                self._hit[k] = i
                return r
        self._miss.add(k)
        return None

    def reduce(self, terms: dict[int, int], full: bool = True) -> dict[int, int]:
        p = self.ring.p
        f = dict(terms)
        heap = [-k for k in f]
        heapq.heapify(heap)
        rem: dict[int, int] = {}
        find = self._find
        while heap:
            k = -heapq.heappop(heap)
            c = f.pop(k, 0)
            if not c:
                continue
            r = find(k)
            if r is None:
                rem[k] = c
                if not full:
                    rem.update(f)
                    return rem
                continue
            for dk, cg in r.tail:
                nk = k + dk
                old = f.get(nk)
                if old is None:
                    f[nk] = (-c * cg) % p
                    heapq.heappush(heap, -nk)
                else:
                    v = (old - c * cg) % p
                    if v:
                        f[nk] = v
                    else:
                        del f[nk]
        return rem


# --------------------------------------------------------------------------
# ideals and Groebner bases


class Ideal:
    """Finitely generated ideal; generators are stored monic and nonzero."""

    def __init__(self, ring: Ring, generators: Sequence[Poly]):
        self.ring = ring
        gens = []
        for g in generators:
            if g.ring != ring:
                g = g.to_ring(ring)
            if g:
                gens.append(g.monic())
        self.generators = gens
        self._gb: GroebnerBasis | None = None

    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = buchberger(self)
        return self._gb

    def __repr__(self):
        return f"Ideal({self.ring}, {len(self.generators)} generators)"

    def contains(self, f: Poly) -> bool:
        return self.gb().contains(f)

    def is_unit(self) -> bool:
        return self.gb().is_unit()


@dataclass
class GroebnerBasis:
    ring: Ring
    elements: list[Poly]
    certified: bool = False
    _red: _Reduction | None = field(default=None, repr=False)
    _algebra: QuotientAlgebra | None = field(default=None, repr=False)

    def _reduction(self) -> _Reduction:
        if self._red is None:
            red = _Reduction(self.ring)
            for g in self.elements:
                red.active.append(red.add(g))
            self._red = red
        return self._red

    def normal_form(self, f: Poly) -> Poly:
        if f.ring != self.ring:
            f = f.to_ring(self.ring)
        return Poly(self.ring, self._reduction().reduce(f.terms))

    def contains(self, f: Poly) -> bool:
        return not self.normal_form(f)

    def contains_ideal(self, other: Ideal | GroebnerBasis) -> bool:
        gens = other.elements if isinstance(other, GroebnerBasis) else other.generators
        return all(self.contains(g) for g in gens)

    def is_unit(self) -> bool:
        return any(all(e == 0 for e in g.lead_exp()) for g in self.elements)

    def lead_exps(self) -> list[tuple[int, ...]]:
        return [g.lead_exp() for g in self.elements]

    def ideal(self) -> Ideal:
        I = Ideal(self.ring, self.elements)
        I._gb = self
        return I

    def same_ideal(self, other: GroebnerBasis) -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def is_zero_dimensional(self) -> bool:
        n = self.ring.n
        pure = set()
        for e in self.lead_exps():
            nz = [i for i in range(n) if e[i]]
            if len(nz) <= 1:
                pure.update(nz if nz else range(n))
        return len(pure) == n

    def algebra(self) -> QuotientAlgebra:
        if self._algebra is None:
            self._algebra = QuotientAlgebra(self)
        return self._algebra

    def to_json(self) -> list:
        return [g.to_json() for g in self.elements]


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def s_polynomial(f: Poly, g: Poly) -> Poly:
    ring = f.ring
    ef, eg = f.lead_exp(), g.lead_exp()
    L = _lcm(ef, eg)
    a = f.mul_monomial(tuple(x - y for x, y in zip(L, ef)), pow(f.lead_coeff(), -1, ring.p))
    b = g.mul_monomial(tuple(x - y for x, y in zip(L, eg)), pow(g.lead_coeff(), -1, ring.p))
    return a - b


def buchberger(I: Ideal, certify: bool = False) -> GroebnerBasis:
    """Reduced Groebner basis with the normal selection strategy.

    Pairs are pruned with the Gebauer-Moeller criteria and selected by
    (degree of lcm, term order of lcm, insertion index), so the result depends
    only on the input generators and their order.
    """
    ring = I.ring
    red = _Reduction(ring)
    polys: list[Poly] = []
    exps: list[tuple[int, ...]] = []
    G: list[int] = []
    B: list[tuple[int, int, int, tuple]] = []  # heap of (deg, key, serial, (i, j))
    serial = 0

    def pair_entry(i, j):
        nonlocal serial
        L = _lcm(exps[i], exps[j])
        serial += 1
        return (sum(L), ring.key(L), serial, (i, j))

    def update(h: int):
        nonlocal B, G
        eh = exps[h]
        C = [g for g in G]
        D: list[int] = []
        for idx, g1 in enumerate(C):
            L1 = _lcm(eh, exps[g1])
            if _coprime(eh, exps[g1]):
                D.append(g1)
                continue
            dominated = False
            for g2 in C[idx + 1:] + D:
                if _divides(_lcm(eh, exps[g2]), L1):
                    dominated = True
                    break
            if not dominated:
                D.append(g1)
        E = [g for g in D if not _coprime(eh, exps[g])]
        keep = []
        for entry in B:
            i, j = entry[3]
            Lij = _lcm(exps[i], exps[j])
            if (_divides(eh, Lij) and _lcm(eh, exps[i]) != Lij and _lcm(eh, exps[j]) != Lij):
                continue
            keep.append(entry)
        B = keep + [pair_entry(g, h) for g in E]
        heapq.heapify(B)
        G = [g for g in G if not _divides(eh, exps[g])] + [h]
        red.active = list(G)

    def add(f: Poly):
        f = f.monic()
        polys.append(f)
        exps.append(f.lead_exp())
        red.add(f)
        update(len(polys) - 1)

    # interreduce the input a little: sort by lead so smaller leads enter first
    gens = sorted((g for g in I.generators if g), key=lambda g: (g.total_degree(), g.lead_key()))
    for g in gens:
        r = Poly(ring, red.reduce(g.terms))
        if r:
            if all(e == 0 for e in r.lead_exp()):
                return GroebnerBasis(ring, [ring.one()], certified=True)
            add(r)

    while B:
        _, _, _, (i, j) = heapq.heappop(B)
        s = s_polynomial(polys[i], polys[j])
        r = Poly(ring, red.reduce(s.terms))
        if r:
            if all(e == 0 for e in r.lead_exp()):
                return GroebnerBasis(ring, [ring.one()], certified=True)
            add(r)

    basis = _interreduce(ring, [polys[g] for g in G])
    gb = GroebnerBasis(ring, basis)
    if certify:
        gb.certified = certify_gb(gb)
    return gb


def _interreduce(ring: Ring, elems: list[Poly]) -> list[Poly]:
    elems = sorted(elems, key=lambda g: g.lead_key())
    out = []
    for i, g in enumerate(elems):
        red = _Reduction(ring)
        for j, h in enumerate(elems):
            if j != i:
                red.active.append(red.add(h))
        lk = g.lead_key()
        tail = {k: c for k, c in g.terms.items() if k != lk}
        rem = red.reduce(tail)
        rem[lk] = g.terms[lk]
        out.append(Poly(ring, rem).monic())
    return out


def certify_gb(gb: GroebnerBasis) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    els = gb.elements
    for a in range(len(els)):
        for b in range(a + 1, len(els)):
            if gb.normal_form(s_polynomial(els[a], els[b])):
                return False
    return True


def is_reduced_gb(gb: GroebnerBasis) -> bool:
    leads = gb.lead_exps()
    for g in gb.elements:
        if g.lead_coeff() != 1:
            return False
        for e, _ in g.items():
            for i, L in enumerate(leads):
                if L != g.lead_exp() and _divides(L, e):
                    return False
    return True


def normal_form(f: Poly, G: GroebnerBasis) -> Poly:
    return G.normal_form(f)


def _as_ideal(I) -> Ideal:
    if isinstance(I, Ideal):
        return I
    if isinstance(I, GroebnerBasis):
        return I.ideal()
    raise TypeError(f"expected an ideal, got {type(I).__name__}")


# --------------------------------------------------------------------------
# zero-dimensional algebra


class QuotientAlgebra:
    """R/I for a zero-dimensional ideal given by its reduced Groebner basis."""

    def __init__(self, gb: GroebnerBasis):
        self.gb = gb
        ring = gb.ring
        self.ring = ring
        if not gb.is_zero_dimensional():
            raise NotZeroDimensional("standard monomials are infinite")
        leads = gb.lead_exps()
        seen = set()
        stack = [tuple([0] * ring.n)]
        std = []
        while stack:
            e = stack.pop()
            if e in seen:
                continue
            seen.add(e)
            if any(_divides(L, e) for L in leads):
                continue
            std.append(e)
            for i in range(ring.n):
                e2 = list(e)
                e2[i] += 1
                stack.append(tuple(e2))
        std.sort(key=ring.key)
        self.basis: list[tuple[int, ...]] = std
        self.index = {ring.key(e): i for i, e in enumerate(std)}
        self.dim = len(std)
        self._var_mats: list[np.ndarray] | None = None

    def vector(self, f: Poly) -> np.ndarray:
        """Coordinates of the normal form of ``f`` on the standard monomials."""
        nf = self.gb.normal_form(f)
        v = np.zeros(self.dim, dtype=np.int64)
        for k, c in nf.terms.items():
            v[self.index[k]] = c
        return v

    def element(self, v: np.ndarray) -> Poly:
        ring = self.ring
        return ring.from_terms((self.basis[i], int(c)) for i, c in enumerate(v) if c)

    def variable_matrices(self) -> list[np.ndarray]:
        if self._var_mats is None:
            mats = []
            for i in range(self.ring.n):
                M = np.zeros((self.dim, self.dim), dtype=np.int64)
                for j, e in enumerate(self.basis):
                    e2 = list(e)
                    e2[i] += 1
                    M[:, j] = self.vector(self.ring.monomial(e2))
                mats.append(M)
            self._var_mats = mats
        return self._var_mats

    def multiplication_matrix(self, f: Poly) -> np.ndarray:
        """Matrix of v -> NF(f * v) on the standard monomial basis."""
        if f.ring != self.ring:
            f = f.to_ring(self.ring)
        p = self.ring.p
        mats = self.variable_matrices()
        cache: dict[tuple[int, ...], np.ndarray] = {tuple([0] * self.ring.n): fa.identity(self.dim)}

        def mono(e):
            if e not in cache:
                i = next(k for k, v in enumerate(e) if v)
                e2 = list(e)
                e2[i] -= 1
                cache[e] = fa.matmul(mats[i], mono(tuple(e2)), p)
            return cache[e]

        acc = np.zeros((self.dim, self.dim), dtype=np.int64)
        for e, c in sorted(f.items()):
            acc = (acc + c * mono(e)) % p
        return acc

    def unit_inverse(self, f: Poly) -> np.ndarray | None:
        """Multiplication matrix of 1/f, or ``None`` if f is a zero divisor."""
        try:
            return fa.inverse(self.multiplication_matrix(f), self.ring.p)
        except ZeroDivisionError:
            return None


def multiplication_operator(A: QuotientAlgebra, f: Poly) -> np.ndarray:
    return A.multiplication_matrix(f)


def zerodim_degree(I, projective: bool = False) -> int:
    """Length of R/I for an affine zero-dimensional ideal.

    With ``projective=True`` the ideal must be homogeneous and the last
    variable a nonzerodivisor modulo I, which for grevlex means no leading term
    involves it.  The result is then the degree of the projective scheme: the
    number of standard monomials in the remaining variables.
    """
    gb = I if isinstance(I, GroebnerBasis) else _as_ideal(I).gb()
    if gb.is_unit():
        return 0
    if not projective:
        if not gb.is_zero_dimensional():
            raise NotZeroDimensional("ideal is not zero-dimensional")
        return gb.algebra().dim
    ring = gb.ring
    if ring.order != "grevlex" or not all(g.is_homogeneous() for g in gb.elements):
        raise ValueError("projective degree needs a homogeneous ideal in grevlex order")
    last = ring.n - 1
    if any(e[last] for e in gb.lead_exps()):
        raise NotZeroDimensional("last variable is a zero divisor; change coordinates first")
    sub = Ring(ring.p, ring.names[:last])
    leads = GroebnerBasis(sub, [sub.monomial(e[:last]) for e in gb.lead_exps()])
    if not leads.is_zero_dimensional():
        raise NotZeroDimensional("projective scheme of positive dimension")
    return QuotientAlgebra(leads).dim


@dataclass(frozen=True)
class Reducedness:
    status: str  # "REDUCED" | "NONREDUCED" | "UNDECIDED"
    degree: int
    attempts: int

    def __bool__(self):
        return self.status == "REDUCED"


def is_reduced_zerodim(I, rng: np.random.Generator, tries: int = 5) -> Reducedness:
    """One-sided reducedness test for an affine zero-dimensional ideal.

    A random linear form whose multiplication operator has a squarefree
    characteristic polynomial of full degree proves the algebra is reduced.
    A nonzero nilpotent built from the squarefree part of that polynomial proves
    it is not.  Otherwise the answer is UNDECIDED.
    """
    gb = I if isinstance(I, GroebnerBasis) else _as_ideal(I).gb()
    A = gb.algebra()
    p = gb.ring.p
    N = A.dim
    if N == 0:
        return Reducedness("REDUCED", 0, 0)
    mats = A.variable_matrices()
    for attempt in range(1, tries + 1):
        coeffs = [int(c) for c in rng.integers(1, p, size=len(mats))]
        M = np.zeros((N, N), dtype=np.int64)
        for c, T in zip(coeffs, mats):
            M = (M + c * T) % p
        chi = UniPoly(fa.charpoly(M, p), p)
        d = chi.derivative()
        if not d.is_zero() and uni_gcd(chi, d).degree == 0:
            return Reducedness("REDUCED", N, attempt)
        if d.is_zero():
            continue
        sqf = chi // uni_gcd(chi, d)
        S = fa.matrix_poly_eval(sqf.coeffs, M, p)
        if S.any():
            P = S.copy()
            for _ in range(N.bit_length() + 1):
                P = fa.matmul(P, P, p)
            if not P.any():
                return Reducedness("NONREDUCED", N, attempt)
    return Reducedness("UNDECIDED", N, tries)


# --------------------------------------------------------------------------
# kernels of linear functionals


def ideal_from_functionals(ring: Ring, v0: np.ndarray, shifts: Sequence[np.ndarray]) -> GroebnerBasis:
    """Reduced Groebner basis of {f : Phi(f) = 0}.

    ``Phi`` is determined by ``Phi(1) = v0`` and ``Phi(x_i * m) = shifts[i] @ Phi(m)``
    for monomials m; the kernel is then an ideal.  Monomials are visited in
    increasing term order (Buchberger-Moeller).
    """
    p = ring.p
    n = ring.n
    L = len(v0)
    E = np.zeros((0, L), dtype=np.int64)  # reduced echelon rows
    pivots: list[int] = []
    C = np.zeros((0, 0), dtype=np.int64)  # row combos over standard monomials
    std: list[tuple[int, ...]] = []
    leads: list[tuple[int, ...]] = []
    elements: list[Poly] = []
    images: dict[tuple[int, ...], np.ndarray] = {}
    zero = tuple([0] * n)
    images[zero] = np.asarray(v0, dtype=np.int64) % p
    heap = [(ring.key(zero), zero)]
    queued = {zero}
    while heap:
        _, e = heapq.heappop(heap)
        if any(_divides(Ld, e) for Ld in leads):
            continue
        v = images.pop(e)
        k = len(std)
        if pivots:
            a = v[pivots]
            w = (v - fa.matmul(a, E, p)) % p
            combo = (-fa.matmul(a, C, p)) % p
        else:
            w = v
            combo = np.zeros(0, dtype=np.int64)
        nz = np.flatnonzero(w)
        if nz.size == 0:
            # e minus its representation on standard monomials lies in the kernel
            terms = [(e, 1)] + [(std[i], int(c)) for i, c in enumerate(combo) if c]
            elements.append(ring.from_terms(terms))
            leads.append(e)
            continue
        q = int(nz[0])
        inv = pow(int(w[q]), -1, p)
        w = w * inv % p
        combo = np.concatenate([combo, [1]]) * inv % p
        C = np.hstack([C, np.zeros((C.shape[0], 1), dtype=np.int64)])
        col = E[:, q].copy()
        if col.any():
            E = (E - np.outer(col, w)) % p
            C = (C - np.outer(col, combo)) % p
        E = np.vstack([E, w])
        C = np.vstack([C, combo])
        pivots.append(q)
        std.append(e)
        del k
        for i in range(n):
            e2 = list(e)
            e2[i] += 1
            e2 = tuple(e2)
            if e2 not in queued:
                queued.add(e2)
                images[e2] = fa.matmul(shifts[i], v, p)
                heapq.heappush(heap, (ring.key(e2), e2))
        if L and len(std) > L:
            raise RuntimeError("functional image exceeded its dimension")
    elements.sort(key=lambda g: g.lead_key())
    return GroebnerBasis(ring, elements)


def points_ideal(ring: Ring, points: Sequence[Sequence[int]]) -> GroebnerBasis:
    """Vanishing ideal of affine points (chart coordinates)."""
    p = ring.p
    m = len(points)
    v0 = np.ones(m, dtype=np.int64)
    shifts = [np.diag([int(pt[i]) % p for pt in points]).astype(np.int64) for i in range(ring.n)]
    return ideal_from_functionals(ring, v0, shifts)


def _block_diag(mats: Sequence[np.ndarray]) -> np.ndarray:
    size = sum(M.shape[0] for M in mats)
    out = np.zeros((size, size), dtype=np.int64)
    o = 0
    for M in mats:
        k = M.shape[0]
        out[o:o + k, o:o + k] = M
        o += k
    return out


def _zerodim_quotient(gb: GroebnerBasis, J: Sequence[Poly]) -> GroebnerBasis:
    A = gb.algebra()
    mats = A.variable_matrices()
    v0 = np.concatenate([A.vector(j) for j in J]) if J else np.zeros(0, dtype=np.int64)
    shifts = [_block_diag([M] * len(J)) for M in mats]
    return ideal_from_functionals(gb.ring, v0, shifts)


def intersect(I, J) -> Ideal:
    """I ∩ J via elimination of an auxiliary variable t from tI + (1-t)J."""
    I, J = _as_ideal(I), _as_ideal(J)
    ring = I.ring
    big = Ring(ring.p, ("_t",) + ring.names, "elim", 1)
    t = big.gens()[0]
    idx = list(range(1, ring.n + 1))
    gens = [t * g.to_ring(big, idx) for g in I.generators]
    gens += [(big.one() - t) * g.to_ring(big, idx) for g in J.generators]
    gb = buchberger(Ideal(big, gens))
    keep = [g for g in gb.elements if all(e[0] == 0 for e, _ in g.items())]
    return Ideal(ring, [Poly.from_json(ring, [[e[1:], c] for e, c in g.to_json()]) for g in keep])


def divide_exact(f: Poly, g: Poly) -> Poly:
    ring = f.ring
    q = ring.zero()
    r = f
    ge = g.lead_exp()
    gi = pow(g.lead_coeff(), -1, ring.p)
    while r:
        e = r.lead_exp()
        if not _divides(ge, e):
            raise ArithmeticError("division is not exact")
        m = tuple(a - b for a, b in zip(e, ge))
        c = r.lead_coeff() * gi % ring.p
        q = q + ring.monomial(m, c)
        r = r - g.mul_monomial(m, c)
    return q


def quotient_by_element(I, j: Poly) -> Ideal:
    """(I : j) = (I ∩ (j)) / j."""
    I = _as_ideal(I)
    inter = intersect(I, Ideal(I.ring, [j]))
    return Ideal(I.ring, [divide_exact(g, j) for g in inter.generators])


def ideal_quotient(I, J, method: str = "auto") -> Ideal:
    """(I : J) = {f : f J ⊆ I}.

    ``method="elimination"`` intersects the quotients by each generator of J,
    each computed with an auxiliary elimination variable.  ``method="algebra"``
    (chosen automatically when I is zero-dimensional) takes the kernel of
    f -> (NF_I(f j))_j directly on the quotient algebra.
    """
    I, J = _as_ideal(I), _as_ideal(J)
    gb = I.gb()
    if not J.generators:
        return Ideal(I.ring, [I.ring.one()])
    if method == "auto":
        method = "algebra" if gb.is_zero_dimensional() else "elimination"
    if method == "algebra":
        return _zerodim_quotient(gb, J.generators).ideal()
    if J.gb().is_unit():
        return I
    result: Ideal | None = None
    for j in J.generators:
        Q = quotient_by_element(I, j)
        result = Q if result is None else intersect(result, Q)
    return Ideal(I.ring, result.gb().elements)


def saturate(I, J, method: str = "auto", max_steps: int = 1000) -> Ideal:
    """(I : J^∞) as the stable value of the iterated quotient."""
    cur = _as_ideal(I)
    J = _as_ideal(J)
    for _ in range(max_steps):
        nxt = ideal_quotient(cur, J, method)
        if nxt.gb().same_ideal(cur.gb()):
            return nxt
        cur = nxt
    raise RuntimeError("saturation did not stabilize")


def eliminate(I, keep: Sequence[str]) -> Ideal:
    """I ∩ F_p[keep], via a block order placing the other variables first."""
    I = _as_ideal(I)
    ring = I.ring
    drop = [v for v in ring.names if v not in keep]
    kept = [v for v in ring.names if v in keep]
    if not drop:
        return I
    big = Ring(ring.p, tuple(drop) + tuple(kept), "elim", len(drop))
    idx = [big.names.index(v) for v in ring.names]
    gb = buchberger(Ideal(big, [g.to_ring(big, idx) for g in I.generators]))
    sub = Ring(ring.p, tuple(kept))
    nd = len(drop)
    out = []
    for g in gb.elements:
        items = g.items()
        if all(not any(e[:nd]) for e, _ in items):
            out.append(sub.from_terms((e[nd:], c) for e, c in items))
    return Ideal(sub, out)


def ideals_equal(I, J) -> bool:
    """Equality by mutual normal-form containment of generators."""
    a, b = _as_ideal(I), _as_ideal(J)
    return a.gb().contains_ideal(b) and b.gb().contains_ideal(a)


def product_ideal(I, J) -> Ideal:
    I, J = _as_ideal(I), _as_ideal(J)
    return Ideal(I.ring, [a * b for a in I.generators for b in J.generators])


def functional_kernel_dim(ring: Ring, fn: Callable[[Poly], np.ndarray], basis: Sequence[Poly]) -> int:
    M = np.array([fn(b) for b in basis], dtype=np.int64).T
    return len(basis) - fa.rank(M, ring.p)
