"""Open-condition checks on a constructed (octic, pencil) pair.

Each check returns a report dataclass.  With ``strict=True`` (the default) a
failing report raises the matching :class:`CheckFailure` subclass instead.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from math import comb
from typing import Sequence

import numpy as np

from . import fieldarith as fa
from .groebner import (
    GroebnerBasis,
    Ideal,

    ideal_quotient,
    ideals_equal,
    intersect,
    is_reduced_zerodim,
    points_ideal,
    product_ideal,
    saturate,
    zerodim_degree,
)
from .linsys import FatPointSystem, generator_syzygy_profile, linear_system
from .multipoly import (
    BinaryForm,
    Poly,
    Ring,
    UniPoly,
    binary_form_from_unipoly,
    uni_gcd,
)

GENUS = 9
COVER_DEGREE = 8
CURVE_DEGREE = 8
ADJOINT_DEGREE = 5
NODES = 12
BRANCH_POINTS = 2 * GENUS - 2 + 2 * COVER_DEGREE
BEZOUT_QUINTICS = ADJOINT_DEGREE * ADJOINT_DEGREE


class CheckFailure(RuntimeError):
    check = "check"


class ExtraSingularity(CheckFailure):
    check = "nodes"


class NonOrdinaryNode(CheckFailure):
    check = "nodes"


class ProfileMismatch(CheckFailure):
    check = "irreducibility"


class RDisjointnessFailure(CheckFailure):
    check = "ramification"


class WrongRamificationDegree(CheckFailure):
    check = "ramification"


class NonReducedRamification(CheckFailure):
    check = "ramification"


class BranchCollision(CheckFailure):
    check = "ramification"


class UnitFailure(CheckFailure):
    check = "ramification"


class WrongPencilDimension(CheckFailure):
    check = "recover_R"


class CommonComponent(CheckFailure):
    check = "recover_R"


class BaseLocusDefect(CheckFailure):
    check = "recover_R"


class RecoveryMismatch(CheckFailure):
    check = "recover_R"


def chart_ring(p: int) -> Ring:
    return Ring(p, ("x", "y"))


def plane_ring(p: int) -> Ring:
    return Ring(p, ("x", "y", "z"))


def affine(points: Sequence[Sequence[int]], p: int) -> list[tuple[int, int]]:
    out = []
    for pt in points:
        if pt[2] % p == 0:
            raise ValueError(f"point {tuple(pt)} lies on z = 0")
        inv = pow(int(pt[2]), -1, p)
        out.append((pt[0] * inv % p, pt[1] * inv % p))
    return out


def chart_ideal_of_points(points, p: int) -> GroebnerBasis:
    return points_ideal(chart_ring(p), affine(points, p))


# --------------------------------------------------------------------------
# nodes


@dataclass
class NodeReport:
    nodes: list[dict]
    singular_degree: int
    support_matches: bool
    singular_at_infinity: bool
    expected: int = NODES

    @property
    def ordinary(self) -> bool:
        return all(n["ordinary"] for n in self.nodes)

    @property
    def ok(self) -> bool:
        return (self.singular_degree == self.expected and self.support_matches
                and not self.singular_at_infinity and self.ordinary)

    def check(self) -> NodeReport:
        # a cusp also inflates the singular scheme, so name the degenerate point first
        if not self.ordinary:
            bad = [n["point"] for n in self.nodes if not n["ordinary"]]
            raise NonOrdinaryNode(f"degenerate quadratic part at {bad}")
        if (self.singular_degree != self.expected or not self.support_matches
                or self.singular_at_infinity):
            raise ExtraSingularity(
                f"singular scheme degree {self.singular_degree}, support matches: "
                f"{self.support_matches}, singular at infinity: {self.singular_at_infinity}")
        return self

    def to_json(self) -> dict:
        return {"nodes": self.nodes, "singular_degree": self.singular_degree,
                "support_matches": self.support_matches,
                "singular_at_infinity": self.singular_at_infinity, "ok": self.ok}


def quadratic_part(f: Poly, point: Sequence[int]) -> tuple[int, int, int]:
    """(a, b, c) with f(px + u, py + v) = ... + a u^2 + b uv + c v^2 + ...

    ``f`` is a form in x, y, z and ``point`` has z = 1.
    """
    p = f.ring.p
    A = chart_ring(p)
    u, v = A.gens()
    px, py = affine([point], p)[0]
    local = f.dehomogenize(A).substitute([u + px, v + py])
    return local.coeff((2, 0)), local.coeff((1, 1)), local.coeff((0, 2))


def node_discriminant(f: Poly, point: Sequence[int]) -> int:
    a, b, c = quadratic_part(f, point)
    return (b * b - 4 * a * c) % f.ring.p


def singular_at_infinity(g: Poly) -> bool:
    """Whether the curve has a singular point on the line z = 0."""
    p = g.ring.p
    grads = g.gradient()
    if all(d.evaluate((1, 0, 0)) == 0 for d in grads):
        return True
    # remaining points (t : 1 : 0)
    unis = []
    for d in grads:
        coeffs = [0] * (d.total_degree() + 2)
        for e, c in d.items():
            if e[2] == 0:
                coeffs[e[0]] = (coeffs[e[0]] + c) % p
        unis.append(UniPoly(coeffs, p))
    gcd = uni_gcd(uni_gcd(unis[0], unis[1]), unis[2])
    if gcd.is_zero():
        return True
    return gcd.degree > 0


def verify_nodes(g: Poly, P: Sequence[Sequence[int]], expected: int = NODES,
                 strict: bool = True) -> NodeReport:
    """Singular scheme of the curve g = 0 equals the reduced set P; nodes ordinary."""
    p = g.ring.p
    A = chart_ring(p)
    J = Ideal(A, [d.dehomogenize(A) for d in g.gradient()])
    gbJ = J.gb()
    try:
        degree = zerodim_degree(gbJ)
    except ValueError:
        degree = -1
    IP = chart_ideal_of_points(P, p)
    support = degree >= 0 and gbJ.contains_ideal(IP) and IP.contains_ideal(gbJ)
    nodes = []
    for pt in P:
        a, b, c = quadratic_part(g, pt)
        disc = (b * b - 4 * a * c) % p
        nodes.append({"point": [int(v) for v in pt], "quadratic_part": [a, b, c],
                      "discriminant": disc, "ordinary": disc != 0})
    report = NodeReport(nodes, degree, support, singular_at_infinity(g), expected)
    return report.check() if strict else report


@dataclass
class GenusReport:
    nodes: int
    genus: int
    adjoint_quintics: int

    @property
    def ok(self) -> bool:
        return self.genus == GENUS and self.adjoint_quintics == self.genus

    def to_json(self) -> dict:
        return {**asdict(self), "ok": self.ok}


def genus_check(report: NodeReport, P: Sequence[Sequence[int]] | None = None,
                p: int | None = None, degree: int = CURVE_DEGREE) -> GenusReport:
    """Geometric genus from the degree-genus formula, cross-checked by adjoints.

    Quintics through the nodes cut the canonical system on the normalization,
    so their number must equal the genus.
    """
    n = len(report.nodes)
    genus = comb(degree - 1, 2) - n
    if P:
        adj = linear_system(FatPointSystem.simple(p, P), degree - 3).dimension
    else:
        adj = comb(degree - 1, 2)
    return GenusReport(n, genus, adj)


# --------------------------------------------------------------------------
# irreducibility evidence


@dataclass
class IrreducibilityReport:
    profile: dict
    matches: bool

    @property
    def ok(self) -> bool:
        return self.matches

    def to_json(self) -> dict:
        return {"profile": self.profile, "matches": self.matches, "ok": self.ok}


def irreducibility_evidence(P: Sequence[Sequence[int]], p: int,
                            strict: bool = True) -> IrreducibilityReport:
    prof = generator_syzygy_profile(FatPointSystem.simple(p, P), 8)
    rep = IrreducibilityReport(prof.to_json(), prof.matches_twelve_points())
    if strict and not rep.ok:
        raise ProfileMismatch(f"resolution profile {rep.profile}")
    return rep


# --------------------------------------------------------------------------
# ramification


def tangent_ramification_form(g: Poly, f1: Poly, f2: Poly) -> Poly:
    """(f1 grad f2 - f2 grad f1) . (grad g x X), of degree 17.

    Modulo g this equals (x^2 + y^2 + z^2) * jacobian / 5, so besides the
    ramification it also vanishes on the 16 points where the curve meets the
    isotropic conic.  Kept for comparison; the analysis uses the Jacobian.
    """
    X = g.ring.gens()
    gx, gy, gz = g.gradient()
    tangent = (gy * X[2] - gz * X[1], gz * X[0] - gx * X[2], gx * X[1] - gy * X[0])
    d1, d2 = f1.gradient(), f2.gradient()
    w = [f1 * b - f2 * a for a, b in zip(d1, d2)]
    return w[0] * tangent[0] + w[1] * tangent[1] + w[2] * tangent[2]


def ramification_form(g: Poly, f1: Poly, f2: Poly) -> Poly:
    """det(grad g, grad f1, grad f2), of degree 15.

    At a smooth point of the curve outside the base locus it vanishes exactly
    where d(f2/f1) restricted to the curve does (Euler relations, p != 5).
    """
    a, b, c = g.gradient(), f1.gradient(), f2.gradient()
    return (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]))


@dataclass
class RamificationReport:
    R_off_curve: bool
    pre_saturation_degree: int
    degree: int
    reduced: str
    f1_unit: bool
    branch_form: list[int] = field(default_factory=list)
    squarefree: bool = False
    elimination_agrees: bool | None = None
    expected: int = BRANCH_POINTS

    @property
    def ok(self) -> bool:
        return (self.R_off_curve and self.degree == self.expected and self.reduced == "REDUCED"
                and self.f1_unit and self.squarefree and len(self.branch_form) == self.expected + 1
                and self.elimination_agrees is True)

    @property
    def undecided(self) -> bool:
        return self.reduced == "UNDECIDED" or (self.squarefree and self.elimination_agrees is False)

    def check(self) -> RamificationReport:
        if not self.R_off_curve:
            raise RDisjointnessFailure("a point of R lies on the octic")
        if self.degree != self.expected:
            raise WrongRamificationDegree(f"ramification degree {self.degree}")
        if self.reduced == "NONREDUCED":
            raise NonReducedRamification("ramification scheme is not reduced")
        if not self.f1_unit:
            raise UnitFailure("f1 vanishes at a ramification point")
        if not self.squarefree and self.reduced == "REDUCED":
            raise BranchCollision("two ramification points share a branch point")
        return self

    def to_json(self) -> dict:
        return {"R_off_curve": self.R_off_curve, "pre_saturation_degree": self.pre_saturation_degree,
                "degree": self.degree, "reduced": self.reduced, "f1_unit": self.f1_unit,
                "branch_form": self.branch_form, "squarefree": self.squarefree,
                "elimination_agrees": self.elimination_agrees, "ok": self.ok}


def branch_eliminant(ram: GroebnerBasis, f1: Poly, f2: Poly, degree: int = BRANCH_POINTS) -> list[int]:
    """Binary forms of degree ``degree`` in (Ram + (t0 f1 - t1 f2)) ∩ F_p[t0, t1].

    b lies there iff sum_k b_k f2^k f1^(degree-k) reduces to zero modulo Ram,
    so the eliminant is the kernel of the matrix of those normal forms.  No
    inverse of f1 is needed.  Returns the coefficient list (b_k on t0^k
    t1^(degree-k)) scaled to b_degree = 1 when that is nonzero, or ``[]``
    unless the kernel is one-dimensional.
    """
    A = ram.ring
    p = A.p
    g1 = ram.normal_form(f1.dehomogenize(A))
    g2 = ram.normal_form(f2.dehomogenize(A))
    pow1, pow2 = [A.one()], [A.one()]
    for _ in range(degree):
        pow1.append(ram.normal_form(pow1[-1] * g1))
        pow2.append(ram.normal_form(pow2[-1] * g2))
    images = [ram.normal_form(pow2[k] * pow1[degree - k]).terms for k in range(degree + 1)]
    keys = sorted({key for img in images for key in img})
    row = {key: i for i, key in enumerate(keys)}
    M = np.zeros((len(keys), degree + 1), dtype=np.int64)
    for k, img in enumerate(images):
        for key, c in img.items():
            M[row[key], k] = c
    K = fa.kernel(M, p) if len(keys) else fa.identity(degree + 1)
    if K.shape[0] != 1:
        return []
    b = [int(c) for c in K[0]]
    if b[-1]:
        inv = pow(b[-1], -1, p)
        b = [c * inv % p for c in b]
    return b


def ramification_analysis(g: Poly, f1: Poly, f2: Poly, P, Q: GroebnerBasis, R,
                          rng: np.random.Generator, strict: bool = True,
                          cross_check: bool = True, expected: int = BRANCH_POINTS) -> RamificationReport:
    """Ram = ((g, J) : I_P^inf) : I_Q^inf and the branch form of f2/f1 on it."""
    p = g.ring.p
    A = chart_ring(p)
    r_off = all(g.evaluate(r) != 0 for r in R)
    h = ramification_form(g, f1, f2)
    base = Ideal(A, [g.dehomogenize(A), h.dehomogenize(A)])
    try:
        pre = zerodim_degree(base.gb())
    except ValueError:
        pre = -1
    IP = chart_ideal_of_points(P, p)
    if pre < 0:
        rep = RamificationReport(r_off, pre, -1, "UNDECIDED", False, expected=expected)
        return rep.check() if strict else rep
    ram = saturate(saturate(base, IP), Q)
    gb = ram.gb()
    deg = zerodim_degree(gb)
    red = is_reduced_zerodim(gb, rng).status if deg > 0 else "NONREDUCED"
    rep = RamificationReport(r_off, pre, deg, red, False, expected=expected)
    if deg != expected or red == "NONREDUCED":
        return rep.check() if strict else rep
    alg = gb.algebra()
    inv = alg.unit_inverse(f1.dehomogenize(A))
    if inv is None:
        return rep.check() if strict else rep
    rep.f1_unit = True
    phi = fa.matmul(alg.multiplication_matrix(f2.dehomogenize(A)), inv, p)
    chi = UniPoly(fa.charpoly(phi, p), p)
    form = binary_form_from_unipoly(chi, expected)
    rep.branch_form = form.coeffs
    rep.squarefree = form.is_squarefree()
    if cross_check:
        rep.elimination_agrees = branch_eliminant(gb, f1, f2, expected) == list(form.coeffs)
    return rep.check() if strict else rep


def branch_form_of(report: RamificationReport, p: int) -> BinaryForm:
    return BinaryForm(report.branch_form, len(report.branch_form) - 1, p)


# --------------------------------------------------------------------------
# birational inverse


@dataclass
class RecoveryReport:
    pencil_dimension: int
    base_degree: int
    base_reduced: str
    original_in_span: bool
    recovered: bool

    @property
    def ok(self) -> bool:
        return (self.pencil_dimension == 2 and self.base_degree == BEZOUT_QUINTICS
                and self.base_reduced == "REDUCED" and self.original_in_span and self.recovered)

    def check(self) -> RecoveryReport:
        if self.pencil_dimension != 2:
            raise WrongPencilDimension(f"h0(I_(P+Q)(5)) = {self.pencil_dimension}")
        if self.base_degree != BEZOUT_QUINTICS:
            raise CommonComponent(f"base scheme degree {self.base_degree} in the chart")
        if self.base_reduced != "REDUCED":
            raise BaseLocusDefect(f"base scheme reducedness {self.base_reduced}")
        if not (self.original_in_span and self.recovered):
            raise RecoveryMismatch("recovered residual differs from R")
        return self

    def to_json(self) -> dict:
        return {**asdict(self), "ok": self.ok}


def recover_R(P, Q: GroebnerBasis, R, pencil: tuple[Poly, Poly] | None,
              rng: np.random.Generator, strict: bool = True) -> RecoveryReport:
    """Rebuild R from the nodes P and the residual scheme Q alone."""
    p = Q.ring.p
    A = chart_ring(p)
    L = linear_system(FatPointSystem.simple(p, P), ADJOINT_DEGREE, extra=Q)
    dim = L.dimension
    if dim != 2:
        rep = RecoveryReport(dim, -1, "UNDECIDED", False, False)
        return rep.check() if strict else rep
    g1, g2 = (f.dehomogenize(A) for f in L.basis)
    base = Ideal(A, [g1, g2]).gb()
    try:
        bdeg = zerodim_degree(base)
    except ValueError:
        bdeg = -1
    red = is_reduced_zerodim(base, rng).status if bdeg == BEZOUT_QUINTICS else "UNDECIDED"
    in_span = pencil is None or all(L.contains(f) for f in pencil)
    recovered = False
    if bdeg == BEZOUT_QUINTICS:
        IP = chart_ideal_of_points(P, p)
        IPQ = intersect(IP, Q)
        IR = ideal_quotient(base, IPQ, method="elimination")
        recovered = ideals_equal(IR, chart_ideal_of_points(R, p))
    rep = RecoveryReport(dim, bdeg, red, in_span, recovered)
    return rep.check() if strict else rep


# --------------------------------------------------------------------------
# dimension audit


def rho(g: int, d: int, r: int) -> int:
    return g - (r + 1) * (g - d + r)


@dataclass
class DimensionAudit:
    genus: int
    degree: int
    rows: list[tuple[str, str, int, int]]

    @property
    def ok(self) -> bool:
        return all(v == e for _, _, v, e in self.rows)

    def to_json(self) -> dict:
        return {"genus": self.genus, "degree": self.degree,
                "rows": [{"quantity": q, "formula": f, "value": v, "expected": e}
                         for q, f, v, e in self.rows], "ok": self.ok}

    def table(self) -> str:
        w = max(len(q) for q, _, _, _ in self.rows)
        wf = max(len(f) for _, f, _, _ in self.rows)
        lines = [f"{'quantity'.ljust(w)}  {'formula'.ljust(wf)}  value  expected  status"]
        for q, f, v, e in self.rows:
            lines.append(f"{q.ljust(w)}  {f.ljust(wf)}  {v:5d}  {e:8d}  {'ok' if v == e else 'MISMATCH'}")
        lines.append(f"dim X2 = {self.value('dim X2')} {'=' if self.value('dim X2') == self.value('dim Y2') else '!='} "
                     f"{self.value('dim Y2')} = dim Y2")
        lines.append("audit " + ("passed" if self.ok else "FAILED"))
        return "\n".join(lines) + "\n"

    def value(self, name: str) -> int:
        return next(v for q, _, v, _ in self.rows if q == name)


def dimension_audit(g: int = GENUS, d: int = COVER_DEGREE, curve_degree: int = CURVE_DEGREE) -> DimensionAudit:
    """Integer bookkeeping behind the construction, against the reference values."""
    w = 2 * g - 2 + 2 * d
    delta = comb(curve_degree - 1, 2) - g
    n_q = 2 * g - 2 - d
    adj = curve_degree - 3
    n_r = adj * adj - delta - n_q
    hilb = 2 * (delta + n_r)
    grass = 2 * (4 - 2)
    severi = curve_degree * (curve_degree + 3) // 2 - 3 * delta + 2 * delta
    w1 = rho(g, d, 1)
    residual_pencil = (2 - (d - g + 1)) - 1
    rows = [
        ("w", "2g-2+2d", w, 32),
        ("dim H_{g,d}", "w", w, 32),
        ("delta", "C(d-1,2)-g", delta, 12),
        ("rho(g,d,2)", "g-3(g-d+2)", rho(g, d, 2), 0),
        ("rho(g,d,1)", "g-2(g-d+1)", w1, 5),
        ("dim G1_{g,d}", "w-3", w - 3, 3 * g - 3 + w1),
        ("dim W1_{g,d}", "2g+2d-5", 2 * g + 2 * d - 5, 29),
        ("dim U_{g,d}", "3d+g-1", 3 * curve_degree + g - 1, 32),
        ("dim U_{g,d} (conditions)", "d(d+3)/2-3delta+2delta", severi, 32),
        ("#Q", "2g-2-d", n_q, 8),
        ("#R", "25-delta-#Q", n_r, 5),
        ("dim Hilb_{P+R}", "2(#P+#R)", hilb, 34),
        ("dim G(2,4)", "2(4-2)", grass, 4),
        ("dim X2", "dim Hilb + dim G(2,4)", hilb + grass, 38),
        ("dim W1_8(C)", "rho(g,d,1)", w1, 5),
        ("dim |K-D|", "h0(D)-(d-g+1)-1", residual_pencil, 1),
        ("dim Y2", "dim U + dim W1_8(C) + dim |K-D|", 3 * curve_degree + g - 1 + w1 + residual_pencil, 38),
    ]
    return DimensionAudit(g, d, rows)
