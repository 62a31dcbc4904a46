"""Sparse multivariate polynomials over F_p, plus univariate and binary forms.

A monomial is stored as a single integer *key*: a fixed linear functional of
its exponent vector whose integer order is the ring's term order.  Because the
functional is linear, multiplying monomials is adding keys, which keeps the
reduction loops of the Groebner engine cheap.  Exponents must stay below
``EXP_BOUND``.
"""

from __future__ import annotations

from functools import lru_cache, reduce
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Sequence

EXP_BOUND = 1 << 12


class Ring:
    """Polynomial ring F_p[names] with a fixed term order.

    ``order`` is ``"grevlex"``, ``"lex"`` or ``"elim"``.  The elimination order
    compares the first ``block`` variables by grevlex and breaks ties with
    grevlex on the remaining ones.
    """

    def __init__(self, p: int, names: Sequence[str] = ("x", "y", "z"),
                 order: str = "grevlex", block: int | None = None):
        self.p = p
        self.names = tuple(names)
        self.n = len(self.names)
        self.order = order
        if order == "elim":
            if block is None or not 0 < block < self.n:
                raise ValueError("elimination order needs 0 < block < nvars")
        else:
            block = None
        self.block = block
        self.weights = self._weights()
        self._decode_cache: dict[int, tuple[int, ...]] = {}

    # -- order machinery -------------------------------------------------
    def _weights(self) -> tuple[int, ...]:
        B = EXP_BOUND
        if self.order == "grevlex":
            return _grevlex_weights(self.n)
        if self.order == "lex":
            return tuple(B ** (self.n - 1 - i) for i in range(self.n))
        if self.order == "elim":
            m = self.n - self.block
            scale = B ** (m + 2)
            return tuple(w * scale for w in _grevlex_weights(self.block)) + _grevlex_weights(m)
        raise ValueError(f"unknown order {self.order!r}")

    def key(self, exp: Sequence[int]) -> int:
        k = 0
        for e, w in zip(exp, self.weights):
            k += e * w
        if k not in self._decode_cache:
            self._decode_cache[k] = tuple(exp)
        return k

    def exp(self, key: int) -> tuple[int, ...]:
        e = self._decode_cache.get(key)
        if e is None:
            e = self._decode(key)
            self._decode_cache[key] = e
        return e

    def _decode(self, key: int) -> tuple[int, ...]:
        if self.order == "grevlex":
            return _grevlex_decode(key, self.n)
        if self.order == "lex":
            out = []
            for i in range(self.n):
                key, r = divmod(key, EXP_BOUND)
                out.append(r)
            return tuple(reversed(out))
        m = self.n - self.block
        scale = EXP_BOUND ** (m + 2)
        k1, k2 = divmod(key + scale // 2, scale)
        k2 -= scale // 2
        return _grevlex_decode(k1, self.block) + _grevlex_decode(k2, m)

    def sort_key(self, exp: Sequence[int]) -> int:
        return self.key(exp)

    # -- constructors -------------------------------------------------------
    def __repr__(self):
        tag = self.order if self.block is None else f"elim{self.block}"
        return f"Ring(F_{self.p}[{','.join(self.names)}], {tag})"

    def __eq__(self, other):
        return (isinstance(other, Ring) and self.p == other.p and self.names == other.names
                and self.order == other.order and self.block == other.block)

    def __hash__(self):
        return hash((self.p, self.names, self.order, self.block))

    def zero(self) -> Poly:
        return Poly(self, {})

    def one(self) -> Poly:
        return self.constant(1)

    def constant(self, c: int) -> Poly:
        c %= self.p
        return Poly(self, {0: c} if c else {})

    def gens(self) -> tuple[Poly, ...]:
        return tuple(self.monomial(tuple(int(i == j) for j in range(self.n))) for i in range(self.n))

    def gen(self, name: str) -> Poly:
        return self.gens()[self.names.index(name)]

    def monomial(self, exp: Sequence[int], coeff: int = 1) -> Poly:
        coeff %= self.p
        return Poly(self, {self.key(exp): coeff} if coeff else {})

    def from_terms(self, terms: Iterable[tuple[Sequence[int], int]]) -> Poly:
        d: dict[int, int] = {}
        p = self.p
        for exp, c in terms:
            k = self.key(exp)
            v = (d.get(k, 0) + c) % p
            if v:
                d[k] = v
            else:
                d.pop(k, None)
        return Poly(self, d)

    def parse(self, text: str) -> Poly:
        """Parse an expression such as ``"x^2 - 3*y*z + 1"``."""
        ns = dict(zip(self.names, self.gens()))
        value = eval(text.replace("^", "**"), {"__builtins__": {}}, ns)  # noqa: S307
        if isinstance(value, int):
            return self.constant(value)
        return value

    def with_order(self, order: str, block: int | None = None) -> Ring:
        return Ring(self.p, self.names, order, block)

    def monomial_basis(self, d: int) -> list[tuple[int, ...]]:
        return monomial_basis(d, self.n, self)


def _grevlex_weights(n: int) -> tuple[int, ...]:
    B = EXP_BOUND
    top = B ** n
    return (top,) + tuple(top - B ** (i - 1) for i in range(2, n + 1))


def _grevlex_decode(key: int, n: int) -> tuple[int, ...]:
    B = EXP_BOUND
    top = B ** n
    deg = -(-key // top)
    s = deg * top - key
    rest = []
    for i in range(2, n + 1):
        rest.append((s // B ** (i - 1)) % B)
    return (deg - sum(rest),) + tuple(rest)


def monomial_basis(d: int, n: int = 3, ring: Ring | None = None) -> list[tuple[int, ...]]:
    """All exponent vectors of total degree ``d`` in ``n`` variables, descending."""
    if d < 0:
        return []
    if ring is None or ring.order == "grevlex":
        return list(_grevlex_basis(d, n))
    return _basis(d, n, ring)


@lru_cache(maxsize=None)
def _grevlex_basis(d: int, n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(_basis(d, n, Ring(2, tuple(f"v{i}" for i in range(n)))))


def _basis(d: int, n: int, ring: Ring) -> list[tuple[int, ...]]:
    exps = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        exps.append(tuple(e))
    exps.sort(key=ring.key, reverse=True)
    assert len(exps) == comb(d + n - 1, n - 1)
    return exps


class Poly:
    """Sparse polynomial; ``terms`` maps monomial keys to nonzero residues."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict[int, int]):
        self.ring = ring
        self.terms = terms

    # -- inspection -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms as ``(exponent, coeff)`` pairs, descending in the term order."""
        ring = self.ring
        return [(ring.exp(k), self.terms[k]) for k in sorted(self.terms, reverse=True)]

    def lead_key(self) -> int:
        return max(self.terms)

    def lead_exp(self) -> tuple[int, ...]:
        return self.ring.exp(self.lead_key())

    def lead_coeff(self) -> int:
        return self.terms[self.lead_key()]

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(self.ring.exp(k)) for k in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(self.ring.exp(k)) for k in self.terms}) <= 1

    def coeff(self, exp: Sequence[int]) -> int:
        return self.terms.get(self.ring.key(exp), 0)

    def monic(self) -> Poly:
        if not self.terms:
            return self
        return self.scale(pow(self.lead_coeff(), -1, self.ring.p))

    # -- arithmetic -----------------------------------------------------------
    def _lift(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        return self.ring.constant(int(other))

    def __add__(self, other):
        other = self._lift(other)
        p = self.ring.p
        d = dict(self.terms)
        for k, c in other.terms.items():
            v = (d.get(k, 0) + c) % p
            if v:
                d[k] = v
            else:
                d.pop(k, None)
        return Poly(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Poly(self.ring, {k: p - c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c: int) -> Poly:
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {k: v * c % p for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(int(other))
        other = self._lift(other)
        p = self.ring.p
        d: dict[int, int] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = k1 + k2
                d[k] = (d.get(k, 0) + c1 * c2) % p
        return Poly(self.ring, {k: v for k, v in d.items() if v})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def mul_monomial(self, exp: Sequence[int], c: int = 1) -> Poly:
        shift = self.ring.key(exp)
        p = self.ring.p
        return Poly(self.ring, {k + shift: v * c % p for k, v in self.terms.items() if v * c % p})

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- calculus and evaluation -------------------------------------------
    def diff(self, var: int | str) -> Poly:
        i = self.ring.names.index(var) if isinstance(var, str) else var
        ring = self.ring
        p = ring.p
        out = []
        for k, c in self.terms.items():
            e = ring.exp(k)
            if e[i] and (e[i] * c) % p:
                e2 = list(e)
                e2[i] -= 1
                out.append((e2, e[i] * c))
        return ring.from_terms(out)

    def gradient(self) -> tuple[Poly, ...]:
        return tuple(self.diff(i) for i in range(self.ring.n))

    def evaluate(self, point: Sequence[int]) -> int:
        ring = self.ring
        p = ring.p
        pt = [int(v) % p for v in point]
        powers: list[dict[int, int]] = [{} for _ in pt]
        total = 0
        for k, c in self.terms.items():
            term = c
            for i, e in enumerate(ring.exp(k)):
                if e:
                    cache = powers[i]
                    v = cache.get(e)
                    if v is None:
                        v = cache[e] = pow(pt[i], e, p)
                    term = term * v % p
            total += term
        return total % p

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = point[0]
        return self.evaluate(point)

    def substitute(self, images: Sequence[Poly]) -> Poly:
        """Replace variable i by ``images[i]`` (all in one target ring)."""
        target = images[0].ring
        cache: list[dict[int, Poly]] = [{0: target.one()} for _ in images]

        def power(i, e):
            c = cache[i]
            if e not in c:
                c[e] = power(i, e - 1) * images[i]
            return c[e]

        out = target.zero()
        acc: dict[int, int] = {}
        p = target.p
        for k, c in self.terms.items():
            term = target.constant(c)
            for i, e in enumerate(self.ring.exp(k)):
                if e:
                    term = term * power(i, e)
            for kk, v in term.terms.items():
                acc[kk] = (acc.get(kk, 0) + v) % p
        out = Poly(target, {k: v for k, v in acc.items() if v})
        return out

    def to_ring(self, target: Ring, index_map: Sequence[int] | None = None) -> Poly:
        """Re-embed into ``target``; variable i goes to ``index_map[i]``."""
        if index_map is None:
            index_map = range(self.ring.n)
        terms = []
        for k, c in self.terms.items():
            e = [0] * target.n
            for i, ei in enumerate(self.ring.exp(k)):
                if ei:
                    e[index_map[i]] += ei
            terms.append((e, c))
        return target.from_terms(terms)

    def dehomogenize(self, target: Ring, var: int = -1) -> Poly:
        """Set variable ``var`` to 1 and land in ``target`` (one fewer variable)."""
        n = self.ring.n
        var %= n
        terms = []
        for k, c in self.terms.items():
            e = self.ring.exp(k)
            terms.append((e[:var] + e[var + 1:], c))
        return target.from_terms(terms)

    def homogenize(self, target: Ring, degree: int | None = None, var: int = -1) -> Poly:
        var %= target.n
        if degree is None:
            degree = self.total_degree()
        terms = []
        for k, c in self.terms.items():
            e = list(self.ring.exp(k))
            e.insert(var, degree - sum(e))
            if e[var] < 0:
                raise ValueError("degree too small to homogenize")
            terms.append((e, c))
        return target.from_terms(terms)

    # -- text encodings --------------------------------------------------------
    def to_json(self) -> list:
        return [[list(e), c] for e, c in self.items()]

    @classmethod
    def from_json(cls, ring: Ring, data) -> Poly:
        return ring.from_terms((tuple(e), int(c)) for e, c in data)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.items():
            factors = [str(c)] if (c != 1 or not any(e)) else []
            for name, k in zip(self.ring.names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({self})"


def poly_sum(polys: Iterable[Poly], ring: Ring) -> Poly:
    return reduce(lambda a, b: a + b, polys, ring.zero())


# --------------------------------------------------------------------------
# univariate polynomials and binary forms


class UniPoly:
    """Dense univariate polynomial over F_p, coefficients from degree 0 up."""

    __slots__ = ("coeffs", "p")

    def __init__(self, coeffs: Iterable[int], p: int):
        c = [int(v) % p for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = c
        self.p = p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def monic(self) -> UniPoly:
        if not self.coeffs:
            return self
        inv = pow(self.lead(), -1, self.p)
        return UniPoly([c * inv for c in self.coeffs], self.p)

    def __add__(self, other: UniPoly) -> UniPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + [0] * (n - len(self.coeffs))
        b = other.coeffs + [0] * (n - len(other.coeffs))
        return UniPoly([x + y for x, y in zip(a, b)], self.p)

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.p)

    def __sub__(self, other: UniPoly) -> UniPoly:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return UniPoly([c * other for c in self.coeffs], self.p)
        if not self.coeffs or not other.coeffs:
            return UniPoly([], self.p)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out, self.p)

    __rmul__ = __mul__

    def __divmod__(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        r = list(self.coeffs)
        dq = len(r) - len(other.coeffs)
        if dq < 0:
            return UniPoly([], p), self
        q = [0] * (dq + 1)
        inv = pow(other.lead(), -1, p)
        m = len(other.coeffs) - 1
        for k in range(dq, -1, -1):
            c = r[k + m] * inv % p
            q[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    r[k + j] = (r[k + j] - c * b) % p
        return UniPoly(q, p), UniPoly(r[:m], p)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((tuple(self.coeffs), self.p))

    def derivative(self) -> UniPoly:
        return UniPoly([k * c for k, c in enumerate(self.coeffs)][1:], self.p)

    def __call__(self, t: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * t + c) % self.p
        return acc

    def __repr__(self):
        return f"UniPoly({self.coeffs}, p={self.p})"


def uni_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def uni_squarefree(a: UniPoly) -> bool:
    """Squarefree over the algebraic closure.

    A nonconstant polynomial with vanishing derivative is a p-th power and
    therefore not squarefree.
    """
    if a.degree <= 0:
        return not a.is_zero()
    da = a.derivative()
    if da.is_zero():
        return False
    return uni_gcd(a, da).degree == 0


class BinaryForm:
    """Homogeneous form sum c_k t0^k t1^(d-k) of degree ``d``."""

    __slots__ = ("coeffs", "degree", "p")

    def __init__(self, coeffs: Sequence[int], degree: int, p: int):
        c = [int(v) % p for v in coeffs]
        if len(c) > degree + 1:
            if any(c[degree + 1:]):
                raise ValueError("coefficient beyond the form degree")
            c = c[: degree + 1]
        self.coeffs = c + [0] * (degree + 1 - len(c))
        self.degree = degree
        self.p = p

    def dehomogenize(self) -> UniPoly:
        return UniPoly(self.coeffs, self.p)

    def multiplicity_at_infinity(self) -> int:
        """Order of vanishing at (1:0), i.e. the power of t1 dividing the form."""
        for k in range(self.degree, -1, -1):
            if self.coeffs[k]:
                return self.degree - k
        return self.degree + 1

    def is_squarefree(self) -> bool:
        if not any(self.coeffs):
            return False
        return self.multiplicity_at_infinity() <= 1 and uni_squarefree(self.dehomogenize())

    def __eq__(self, other):
        return (isinstance(other, BinaryForm) and self.degree == other.degree
                and self.p == other.p and self.coeffs == other.coeffs)

    def __repr__(self):
        return f"BinaryForm(deg={self.degree}, {self.coeffs})"

    def __str__(self):
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c:
                parts.append(f"{c}*t0^{k}*t1^{self.degree - k}")
        return " + ".join(parts) or "0"


def binary_form_from_unipoly(b: UniPoly, degree: int) -> BinaryForm:
    if b.degree > degree:
        raise ValueError("univariate degree exceeds target form degree")
    return BinaryForm(b.coeffs, degree, b.p)
