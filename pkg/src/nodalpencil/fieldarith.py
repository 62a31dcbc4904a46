"""Exact arithmetic in F_p and dense linear algebra over it.

Matrices are plain ``numpy`` int64 arrays holding canonical residues.  The
modulus is capped below 2**31 so that a product of two residues always fits in
an int64 before reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

DEFAULT_PRIME = 10007
MAX_PRIME = 2**31 - 1
EXCLUDED_PRIMES = frozenset({2, 5})


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


class FieldError(ValueError):
    pass


def check_prime(p: int) -> int:
    """Validate ``p`` as a working characteristic and return it."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if p in EXCLUDED_PRIMES:
        raise FieldError(f"characteristic {p} divides a curve degree used by the construction")
    if p > MAX_PRIME:
        raise FieldError(f"prime {p} exceeds the supported bound {MAX_PRIME}")
    return p


def fe_inv(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("inverse of zero in F_%d" % p)
    return pow(a, -1, p)


@dataclass(frozen=True)
class PrimeField:
    p: int = DEFAULT_PRIME

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise FieldError(f"{self.p} is not prime")

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(value % self.p, self)

    def random(self, rng) -> FieldElement:
        return self(int(rng.integers(0, self.p)))


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: PrimeField

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.field.p:
            object.__setattr__(self, "value", self.value % self.field.p)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("mixing elements of different fields")
            return other.value
        return int(other)

    def __add__(self, other):
        return self.field(self.value + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self.field(self.value - self._coerce(other))

    def __rsub__(self, other):
        return self.field(self._coerce(other) - self.value)

    def __mul__(self, other):
        return self.field(self.value * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return self.field(-self.value)

    def inverse(self) -> FieldElement:
        return self.field(fe_inv(self.value, self.field.p))

    def __truediv__(self, other):
        return self * self.field(self._coerce(other)).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return self.field(pow(self.value, k, self.field.p))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field.p))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.field.p})"


# --------------------------------------------------------------------------
# dense matrices


def as_matrix(M, p: int) -> np.ndarray:
    A = np.array(M, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size else A.reshape(0, 0)
    return A % p


def matmul(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    inner = A.shape[-1] if A.ndim else 1
    if inner * (p - 1) ** 2 < 2**62:
        return (A @ B) % p
    return np.array((A.astype(object) @ B.astype(object)) % p, dtype=np.int64)


def rref(M, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with first-nonzero pivoting in column order.

    Returns the reduced matrix (zero rows at the bottom) and the pivot columns.
    """
    A = as_matrix(M, p).copy()
    m, n = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = A[r] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            A[rows] = (A[rows] - np.outer(col[rows], A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def rank(M, p: int) -> int:
    return len(rref(M, p)[1])


def row_space_basis(M, p: int) -> np.ndarray:
    """Nonzero rows of the reduced echelon form."""
    A, piv = rref(M, p)
    return A[: len(piv)]


def rank_and_kernel(M, p: int) -> tuple[int, np.ndarray]:
    """Rank and a right-kernel basis of ``M``.

    The kernel basis is returned as the rows of a matrix in reduced echelon
    form, so each vector's first nonzero coordinate is 1 and the order is
    canonical.
    """
    A = as_matrix(M, p)
    n = A.shape[1]
    R, piv = rref(A, p)
    free = [j for j in range(n) if j not in set(piv)]
    K = np.zeros((len(free), n), dtype=np.int64)
    for k, j in enumerate(free):
        K[k, j] = 1
        for i, c in enumerate(piv):
            K[k, c] = (-R[i, j]) % p
    if len(free):
        K = row_space_basis(K, p)
    return len(piv), K


def kernel(M, p: int) -> np.ndarray:
    return rank_and_kernel(M, p)[1]


def solve(M, b, p: int) -> np.ndarray | None:
    """One solution of ``M x = b``, or ``None`` if the system is inconsistent."""
    A = as_matrix(M, p)
    m, n = A.shape
    bb = np.asarray(b, dtype=np.int64).reshape(m, 1) % p
    R, piv = rref(np.hstack([A, bb]), p)
    if piv and piv[-1] == n:
        return None
    x = np.zeros(n, dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = R[i, n]
    return x


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def inverse(M, p: int) -> np.ndarray:
    A = as_matrix(M, p)
    n = A.shape[0]
    R, piv = rref(np.hstack([A, identity(n)]), p)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return R[:, n:]


def charpoly(M, p: int) -> list[int]:
    """Characteristic polynomial det(t*I - M), coefficients from t^0 upward.

    Similarity reduction to upper Hessenberg form followed by the standard
    determinant recurrence; valid in every characteristic.
    """
    H = as_matrix(M, p).copy()
    n = H.shape[0]
    if H.shape != (n, n):
        raise ValueError("charpoly needs a square matrix")
    for j in range(n - 2):
        nz = np.flatnonzero(H[j + 1 :, j])
        if nz.size == 0:
            continue
        i = j + 1 + int(nz[0])
        if i != j + 1:
            H[[i, j + 1]] = H[[j + 1, i]]
            H[:, [i, j + 1]] = H[:, [j + 1, i]]
        inv = pow(int(H[j + 1, j]), -1, p)
        for k in range(j + 2, n):
            u = int(H[k, j]) * inv % p
            if u:
                H[k] = (H[k] - u * H[j + 1]) % p
                H[:, j + 1] = (H[:, j + 1] + u * H[:, k]) % p
    h = [[int(v) for v in row] for row in H]
    # polys[m] = charpoly of the leading m x m block
    polys: list[list[int]] = [[1]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = [0] * (m + 1)
        hm = h[m - 1][m - 1]
        for k, c in enumerate(prev):
            cur[k + 1] = (cur[k + 1] + c) % p
            cur[k] = (cur[k] - hm * c) % p
        prod = 1
        for i in range(m - 1, 0, -1):
            prod = prod * h[i][i - 1] % p
            if prod == 0:
                break
            coef = h[i - 1][m - 1] * prod % p
            if coef:
                for k, c in enumerate(polys[i - 1]):
                    cur[k] = (cur[k] - coef * c) % p
        polys.append(cur)
    return polys[n]


def matrix_poly_eval(coeffs: list[int], M, p: int) -> np.ndarray:
    """Evaluate a polynomial (low-to-high coefficients) at a square matrix."""
    A = as_matrix(M, p)
    n = A.shape[0]
    acc = np.zeros((n, n), dtype=np.int64)
    for c in reversed(coeffs):
        acc = (matmul(acc, A, p) + c * identity(n)) % p
    return acc
