"""Randomized construction of a 12-nodal octic with a degree-8 pencil.

The data are chosen in reverse: points P (12) and R (5), a pencil of quintics
through P ∪ R, the residual scheme Q of the pencil's base locus, and finally
the unique octic singular at P and passing through Q.
"""

from __future__ import annotations

import logging
import zlib
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import fieldarith as fa
from . import verify as vf
from .certificate import Certificate
from .groebner import GroebnerBasis, Ideal, ideal_quotient, is_reduced_zerodim, zerodim_degree
from .linsys import FatPointSystem, LinearSystem, linear_system
from .multipoly import Poly, Ring

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConstructionConstants:
    g: int = 9
    d_cover: int = 8
    d_curve: int = 8
    d_quintic: int = 5
    delta: int = 12
    w: int = 32
    n_P: int = 12
    n_R: int = 5
    n_Q: int = 8
    bezout: int = 25

    def consistent(self) -> bool:
        return (self.delta == comb(self.d_curve - 1, 2) - self.g
                and self.w == 2 * self.g - 2 + 2 * self.d_cover
                and self.n_Q == self.bezout - self.n_P - self.n_R
                and self.bezout == self.d_quintic ** 2)


CONSTANTS = ConstructionConstants()
PENCIL_RETRIES = 3
POINT_TRIES = 10
UNIT_RETRIES = 3


class ConstructionError(RuntimeError):
    stage = "construction"


class RetryExhausted(ConstructionError):
    def __init__(self, message: str, certificate: Certificate | None = None):
        super().__init__(message)
        self.certificate = certificate


class DegenerateResidual(ConstructionError):
    stage = "residual_points"


class WrongDimension(ConstructionError):
    stage = "octic"


@dataclass
class Pencil:
    f1: Poly
    f2: Poly
    coefficients: np.ndarray  # 2 x dim(L) combination of the system's basis

    def swap_basis(self, c: int) -> Pencil:
        """Same pencil, basis (f1 + c f2, f2)."""
        coeffs = self.coefficients.copy()
        p = self.f1.ring.p
        coeffs[0] = (coeffs[0] + c * coeffs[1]) % p
        return Pencil(self.f1 + self.f2.scale(c), self.f2, coeffs)


@dataclass
class RunState:
    prime: int
    seed: int
    retries: dict[str, int] = field(default_factory=lambda: {
        "points": 0, "point_samples": 0, "pencil": 0, "unit_basis_change": 0})
    coordinate_change: list[list[int]] | None = None
    failures: list[str] = field(default_factory=list)


def check_rng(seed: int, name: str) -> np.random.Generator:
    """Independent stream for a named randomized check; shared with reverification."""
    return np.random.default_rng([seed, zlib.crc32(name.encode())])


# --------------------------------------------------------------------------
# step 1


def random_point(rng: np.random.Generator, p: int) -> tuple[int, int, int]:
    while True:
        v = [int(c) for c in rng.integers(0, p, size=3)]
        if any(v):
            break
    for k in (2, 1, 0):
        if v[k]:
            inv = pow(v[k], -1, p)
            return tuple(c * inv % p for c in v)  # type: ignore[return-value]
    raise AssertionError


def random_coordinate_change(rng: np.random.Generator, p: int) -> np.ndarray:
    while True:
        T = rng.integers(0, p, size=(3, 3)).astype(np.int64)
        if fa.rank(T, p) == 3:
            return T


def to_working(T: np.ndarray, pt, p: int) -> tuple[int, int, int] | None:
    w = fa.matmul(T, np.array(pt, dtype=np.int64).reshape(3, 1), p).ravel()
    if w[2] == 0:
        return None
    inv = pow(int(w[2]), -1, p)
    return (int(w[0]) * inv % p, int(w[1]) * inv % p, 1)


def sample_points(rng, p: int, T: np.ndarray, count: int, state: RunState | None = None):
    pts: list[tuple[int, int, int]] = []
    while len(pts) < count:
        w = to_working(T, random_point(rng, p), p)
        if state is not None:
            state.retries["point_samples"] += 1
        if w is None or w in pts:
            continue
        pts.append(w)
    return pts


def choose_points(rng, p: int, T: np.ndarray, state: RunState | None = None,
                  max_tries: int = POINT_TRIES):
    """Twelve nodes P and five extra base points R in general position.

    General position means h0(I_{P∪R}(5)) = 4 and h0(I_P^2(8)) = 9.  Points are
    drawn in the original coordinates and mapped by ``T`` into the working chart.
    """
    c = CONSTANTS
    for _ in range(max_tries):
        pts = sample_points(rng, p, T, c.n_P + c.n_R, state)
        P, R = pts[: c.n_P], pts[c.n_P:]
        h_pr = linear_system(FatPointSystem.simple(p, pts), c.d_quintic).dimension
        h_p2 = linear_system(FatPointSystem.double(p, P), c.d_curve).dimension
        if h_pr == 4 and h_p2 == 9:
            return P, R
        log.debug("point set rejected: h0 values %d, %d", h_pr, h_p2)
    raise RetryExhausted(f"no admissible point set in {max_tries} tries")


# --------------------------------------------------------------------------
# step 2


def choose_pencil(L: LinearSystem, rng, p: int, coefficients=None) -> Pencil:
    """Two independent random members of a 4-dimensional linear system.

    Explicit ``coefficients`` (a 2 x 4 matrix) are used when independent and
    otherwise replaced by a random draw.
    """
    if L.dimension != 4:
        raise WrongDimension(f"expected a 4-dimensional system of quintics, got {L.dimension}")
    C = np.array(coefficients, dtype=np.int64) % p if coefficients is not None else None
    while C is None or fa.rank(C, p) < 2:
        C = rng.integers(0, p, size=(2, L.dimension)).astype(np.int64)
    ring = L.basis[0].ring
    f1, f2 = (sum((b.scale(int(c)) for b, c in zip(L.basis, row)), ring.zero()) for row in C)
    return Pencil(f1, f2, C)


# --------------------------------------------------------------------------
# step 3


@dataclass
class ResidualReport:
    base_degree: int
    degree: int
    reduced: str
    disjoint: bool
    routes_agree: bool

    @property
    def ok(self) -> bool:
        c = CONSTANTS
        return (self.base_degree == c.bezout and self.degree == c.n_Q and self.reduced == "REDUCED"
                and self.disjoint and self.routes_agree)

    def to_json(self) -> dict:
        return {"base_degree": self.base_degree, "degree": self.degree, "reduced": self.reduced,
                "disjoint": self.disjoint, "routes_agree": self.routes_agree, "ok": self.ok}


def residual_points(pencil: Pencil, P, R, rng, strict: bool = True
                    ) -> tuple[GroebnerBasis, ResidualReport]:
    """I_Q = (f1, f2) : I_{P∪R}, computed in the chart z = 1.

    Degree 25 for (f1, f2) in the chart means no common factor and no base
    point at infinity.  The quotient is computed by elimination and re-derived
    on the quotient algebra; both must agree.
    """
    c = CONSTANTS
    p = pencil.f1.ring.p
    A = vf.chart_ring(p)
    base = Ideal(A, [pencil.f1.dehomogenize(A), pencil.f2.dehomogenize(A)])
    try:
        bdeg = zerodim_degree(base.gb())
    except ValueError:
        bdeg = -1
    if bdeg != c.bezout:
        rep = ResidualReport(bdeg, -1, "UNDECIDED", False, False)
        if strict:
            raise DegenerateResidual(f"pencil base scheme has chart degree {bdeg}")
        return GroebnerBasis(A, [A.one()]), rep
    IPR = vf.chart_ideal_of_points(list(P) + list(R), p)
    IQ = ideal_quotient(base, IPR, method="elimination").gb()
    alt = ideal_quotient(base, IPR, method="algebra").gb()
    agree = IQ.same_ideal(alt)
    deg = zerodim_degree(IQ)
    red = is_reduced_zerodim(IQ, rng).status if deg > 0 else "NONREDUCED"
    disjoint = all(any(g.evaluate(pt) for g in IQ.elements) for pt in vf.affine(list(P) + list(R), p))
    rep = ResidualReport(bdeg, deg, red, disjoint, agree)
    if strict and not rep.ok:
        raise DegenerateResidual(f"residual scheme: {rep.to_json()}")
    return IQ, rep


# --------------------------------------------------------------------------
# step 4


def octic(P, IQ: GroebnerBasis, p: int) -> tuple[Poly, LinearSystem]:
    """The octic singular at P through Q, normalized to leading coefficient 1."""
    L = linear_system(FatPointSystem.double(p, P), CONSTANTS.d_curve, extra=IQ)
    if L.dimension != 1:
        raise WrongDimension(f"h0(I_P^2 ∩ I_Q(8)) = {L.dimension}")
    return L.basis[0], L


# --------------------------------------------------------------------------
# driver


def _pencil_json(pencil: Pencil) -> dict:
    return {"f1": pencil.f1.to_json(), "f2": pencil.f2.to_json(),
            "coefficients": [[int(v) for v in row] for row in pencil.coefficients]}


def run_checks(p: int, seed: int, P, R, pencil: Pencil, IQ: GroebnerBasis, g: Poly,
               strict: bool = True) -> dict:
    """Every verification on a finished construction, in certificate form."""
    checks: dict = {}
    nodes = vf.verify_nodes(g, P, strict=strict)
    checks["nodes"] = nodes.to_json()
    checks["genus"] = vf.genus_check(nodes, P, p).to_json()
    checks["irreducibility"] = vf.irreducibility_evidence(P, p, strict=strict).to_json()
    ram = vf.ramification_analysis(g, pencil.f1, pencil.f2, P, IQ, R,
                                   check_rng(seed, "ramification"), strict=strict)
    checks["ramification"] = ram.to_json()
    rec = vf.recover_R(P, IQ, R, (pencil.f1, pencil.f2), check_rng(seed, "recover_R"), strict=strict)
    checks["recover_R"] = rec.to_json()
    checks["audit"] = vf.dimension_audit().to_json()
    return checks


def run_construction(prime: int = fa.DEFAULT_PRIME, seed: int = 0, retry_budget: int = 10) -> Certificate:
    """Run steps 1-4 with retries and all checks; return a SUCCESS certificate.

    Raises :class:`RetryExhausted` (carrying a FAILED certificate) when the
    budget of point-set restarts runs out.
    """
    p = fa.check_prime(prime)
    c = CONSTANTS
    state = RunState(p, seed)
    rng = np.random.default_rng(seed)
    H = vf.plane_ring(p)
    cert = Certificate(prime=p, seed=seed)
    last_stage = "choose_points"
    for attempt in range(retry_budget):
        state.retries["points"] = attempt
        T = random_coordinate_change(rng, p)
        state.coordinate_change = T.tolist()
        try:
            P, R = choose_points(rng, p, T, state)
        except RetryExhausted as exc:
            state.failures.append(f"choose_points: {exc}")
            last_stage = "choose_points"
            continue
        L4 = linear_system(FatPointSystem.simple(p, P + R), c.d_quintic, ring=H)
        for k in range(PENCIL_RETRIES):
            state.retries["pencil"] += 1
            pencil = choose_pencil(L4, rng, p)
            try:
                last_stage = "residual_points"
                IQ, res = residual_points(pencil, P, R, check_rng(seed, "residual"))
                last_stage = "octic"
                g, L8 = octic(P, IQ, p)
                last_stage = "verify"
                for u in range(UNIT_RETRIES + 1):
                    try:
                        checks = run_checks(p, seed, P, R, pencil, IQ, g)
                        break
                    except vf.UnitFailure:
                        if u == UNIT_RETRIES:
                            raise
                        state.retries["unit_basis_change"] += 1
                        pencil = pencil.swap_basis(int(rng.integers(1, p)))
            except (ConstructionError, vf.CheckFailure) as exc:
                state.failures.append(f"{last_stage}: {type(exc).__name__}: {exc}")
                log.info("attempt %d/%d failed at %s: %s", attempt, k, last_stage, exc)
                continue
            checks["residual"] = res.to_json()
            checks["dimensions"] = {
                "h0_I_PR_5": L4.dimension,
                "h0_I_P2_8": linear_system(FatPointSystem.double(p, P), c.d_curve).dimension,
                "h0_I_P2_IQ_8": L8.dimension,
                "h0_I_PQ_5": checks["recover_R"]["pencil_dimension"],
                "h0_I_P_5": checks["genus"]["adjoint_quintics"],
            }
            cert.fill(state, P, R, _pencil_json(pencil), IQ, g, checks)
            cert.status = "UNDECIDED" if _undecided(checks) else "SUCCESS"
            return cert
    cert.fill(state, None, None, None, None, None, {})
    cert.status = "FAILED"
    cert.failed_stage = last_stage
    raise RetryExhausted(f"retry budget {retry_budget} exhausted (last stage {last_stage})", cert)


def _undecided(checks: dict) -> bool:
    ram = checks.get("ramification", {})
    return ram.get("reduced") == "UNDECIDED" or (ram.get("squarefree") and ram.get("elimination_agrees") is False)
