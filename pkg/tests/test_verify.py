from __future__ import annotations

from math import comb

import numpy as np
import pytest

from nodalpencil import verify as vf
from nodalpencil.linsys import FatPointSystem, linear_system
from nodalpencil.multipoly import monomial_basis

from conftest import construction, unpack
from oracles import binary_roots, binary_substitute, fiber_scan, proportional

P_BIG = 10007
H = vf.plane_ring(P_BIG)


def non_residue(p):
    return next(n for n in range(2, p) if pow(n, (p - 1) // 2, p) == p - 1)


def random_form(rng, d, ring=H):
    return ring.from_terms((e, int(rng.integers(0, ring.p))) for e in monomial_basis(d))


# -- nodes ---------------------------------------------------------------------


def test_cusp_is_not_an_ordinary_node():
    x, y, z = H.gens()
    cusp = x ** 3 - y * y * z  # u^3 - v^2 in the chart
    assert vf.quadratic_part(cusp, (0, 0, 1)) == (0, 0, P_BIG - 1)
    assert vf.node_discriminant(cusp, (0, 0, 1)) == 0
    with pytest.raises(vf.NonOrdinaryNode):
        vf.verify_nodes(cusp, [(0, 0, 1)], expected=1)


@pytest.mark.parametrize("split", [True, False])
def test_nodal_cubics_are_ordinary(split):
    x, y, z = H.gens()
    n = 1 if split else non_residue(P_BIG)
    cubic = x * x * z - (y * y * z).scale(n) + x ** 3
    rep = vf.verify_nodes(cubic, [(0, 0, 1)], expected=1)
    assert rep.ok and rep.singular_degree == 1
    disc = rep.nodes[0]["discriminant"]
    assert disc == 4 * n % P_BIG
    # a square discriminant means rational tangents
    assert (pow(disc, (P_BIG - 1) // 2, P_BIG) == 1) == split


def test_product_of_two_conics_has_four_nodes():
    x, y, z = H.gens()
    c1 = x * x + (y * y).scale(2) - (z * z).scale(3)
    c2 = (x * x).scale(2) + y * y - (z * z).scale(3)
    quartic = c1 * c2
    pts = [(a % P_BIG, b % P_BIG, 1) for a in (1, -1) for b in (1, -1)]
    assert vf.verify_nodes(quartic, pts, expected=4).ok
    with pytest.raises(vf.ExtraSingularity):
        vf.verify_nodes(quartic, pts, expected=12)
    # one node left out of P
    rep = vf.verify_nodes(quartic, pts[:3], expected=3, strict=False)
    assert rep.singular_degree == 4 and not rep.support_matches
    with pytest.raises(vf.ExtraSingularity):
        rep.check()


def test_singularity_at_infinity_is_detected():
    x, y, z = H.gens()
    assert vf.singular_at_infinity(x * y * y - z ** 3)  # cusp at (1:0:0)
    assert vf.singular_at_infinity(x * x * y - z ** 3)  # cusp at (0:1:0)
    assert not vf.singular_at_infinity(x * x * z - y ** 3)  # cusp at (0:0:1)
    assert not vf.singular_at_infinity(x ** 3 + y ** 3 + z ** 3)


def test_octic_from_a_construction_has_twelve_ordinary_nodes(success_certificates):
    for cert in success_certificates:
        P, R, f1, f2, IQ, g = unpack(cert)
        rep = vf.verify_nodes(g, P)
        assert rep.singular_degree == 12 and len(rep.nodes) == 12
        for pt in P:
            assert g.evaluate(pt) == 0
            assert all(d.evaluate(pt) == 0 for d in g.gradient())


# -- genus ---------------------------------------------------------------------


def _report(n):
    return vf.NodeReport([{"ordinary": True}] * n, n, True, False, n)


def test_genus_from_node_count():
    assert vf.genus_check(_report(12)).genus == 9
    assert vf.genus_check(_report(0)).genus == 21 == comb(7, 2)


def test_adjoint_quintics_count_the_genus():
    rng = np.random.default_rng(0)
    pts = set()
    while len(pts) < 12:
        pts.add((int(rng.integers(0, P_BIG)), int(rng.integers(0, P_BIG)), 1))
    rep = vf.genus_check(_report(12), sorted(pts), P_BIG)
    assert rep.adjoint_quintics == 9 and rep.ok


# -- irreducibility ------------------------------------------------------------


def test_points_on_a_conic_fail_the_profile():
    pts = [(t, t * t % P_BIG, 1) for t in range(1, 13)]
    with pytest.raises(vf.ProfileMismatch):
        vf.irreducibility_evidence(pts, P_BIG)
    assert not vf.irreducibility_evidence(pts, P_BIG, strict=False).ok


# -- ramification --------------------------------------------------------------


def test_jacobian_and_tangent_forms_agree_modulo_the_curve():
    """5 h = (x^2 + y^2 + z^2) J - 8 g (N . X), with N = grad f1 x grad f2."""
    rng = np.random.default_rng(1)
    x, y, z = H.gens()
    for _ in range(3):
        g, f1, f2 = random_form(rng, 8), random_form(rng, 5), random_form(rng, 5)
        h = vf.tangent_ramification_form(g, f1, f2)
        J = vf.ramification_form(g, f1, f2)
        assert h.total_degree() == 17 and J.total_degree() == 15
        a, b = f1.gradient(), f2.gradient()
        N = (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])
        NX = N[0] * x + N[1] * y + N[2] * z
        assert h.scale(5) == (x * x + y * y + z * z) * J - (g * NX).scale(8)


def test_pre_saturation_degree_is_bezout(success_certificates):
    # deg g * deg J = 8 * 15, all in the chart for these seeds
    for cert in success_certificates[:3]:
        assert cert.checks["ramification"]["pre_saturation_degree"] == 120


def test_constructed_cover_is_simply_branched(success_certificates):
    for cert in success_certificates:
        ram = cert.checks["ramification"]
        assert ram["degree"] == 32 == 2 * 9 - 2 + 2 * 8
        assert len(ram["branch_form"]) == 33
        assert ram["squarefree"] and ram["reduced"] == "REDUCED"
        assert ram["elimination_agrees"] is True


def _elliptic_toy(seed, p=101):
    """Smooth cubic through 9 random points; conics through the first 4 of them."""
    rng = np.random.default_rng(seed)
    pts = set()
    while len(pts) < 9:
        pts.add((int(rng.integers(p)), int(rng.integers(p)), 1))
    pts = sorted(pts)
    B = pts[:4]
    cubics = linear_system(FatPointSystem.simple(p, pts), 3)
    assert cubics.dimension == 1
    E = cubics.basis[0]
    conics = linear_system(FatPointSystem.simple(p, B), 2)
    assert conics.dimension == 2
    f1, f2 = conics.basis
    assert vf.verify_nodes(E, [], expected=0).ok
    return E, f1, f2, B, rng


def _ramified_fibers(E, f1, f2, p):
    fibers = fiber_scan(dict(E.items()), dict(f1.items()), dict(f2.items()), p)
    return {t: pts[0] for t, pts in fibers.items() if len(pts) == 1}


@pytest.mark.parametrize("seed", [0, 1, 2, 3, 4, 5, 7])
def test_elliptic_double_cover_has_four_branch_points(seed):
    p = 101
    E, f1, f2, B, rng = _elliptic_toy(seed, p)
    rep = vf.ramification_analysis(E, f1, f2, [], vf.chart_ideal_of_points(B, p), [], rng,
                                   expected=4)
    assert rep.pre_saturation_degree == 3 * 4
    assert rep.ok and len(rep.branch_form) == 5
    assert set(binary_roots(rep.branch_form, p)) == set(_ramified_fibers(E, f1, f2, p))


def test_ramification_at_a_base_point_is_lost_by_saturation():
    # seed 6: the conic of the pencil tangent to E at a base point meets it there
    # to order 3, so one ramification point lies in B and saturation removes it
    p = 101
    E, f1, f2, B, rng = _elliptic_toy(6, p)
    rep = vf.ramification_analysis(E, f1, f2, [], vf.chart_ideal_of_points(B, p), [], rng,
                                   strict=False, expected=4)
    assert rep.pre_saturation_degree == 12
    assert rep.degree == 3 and not rep.ok
    ramified = _ramified_fibers(E, f1, f2, p)
    assert sum(pt in B for pt in ramified.values()) == 1
    with pytest.raises(vf.WrongRamificationDegree):
        rep.check()


def _random_basis_change(rng, p):
    while True:
        a, b, c, d = (int(v) for v in rng.integers(0, p, size=4))
        if (a * d - b * c) % p:
            return a, b, c, d


def test_branch_form_transforms_under_pencil_basis_change():
    p = 101
    E, f1, f2, B, rng = _elliptic_toy(0, p)
    IB = vf.chart_ideal_of_points(B, p)
    base = vf.ramification_analysis(E, f1, f2, [], IB, [], rng, expected=4)
    done = 0
    while done < 10:
        a, b, c, d = _random_basis_change(rng, p)
        g1, g2 = f1.scale(a) + f2.scale(b), f1.scale(c) + f2.scale(d)
        rep = vf.ramification_analysis(E, g1, g2, [], IB, [], rng, strict=False, expected=4)
        if not rep.f1_unit:
            continue  # the new f1 vanishes at a ramification point
        # old (t0 : t1) = (f2 : f1) in terms of the new coordinates
        expected = binary_substitute(base.branch_form, a, -c % p, -b % p, d, p)
        assert proportional(rep.branch_form, expected, p)
        assert rep.squarefree == base.squarefree
        done += 1


def test_branch_form_invariance_on_a_construction():
    cert = construction(0)
    P, R, f1, f2, IQ, g = unpack(cert)
    p = cert.prime
    rng = np.random.default_rng(5)
    base = cert.checks["ramification"]["branch_form"]
    for _ in range(2):
        a, b, c, d = _random_basis_change(rng, p)
        g1, g2 = f1.scale(a) + f2.scale(b), f1.scale(c) + f2.scale(d)
        rep = vf.ramification_analysis(g, g1, g2, P, IQ, R, rng)
        assert proportional(rep.branch_form, binary_substitute(base, a, -c % p, -b % p, d, p), p)
        assert rep.squarefree


def test_branch_eliminant_needs_the_right_degree():
    p = 101
    E, f1, f2, B, rng = _elliptic_toy(0, p)
    rep = vf.ramification_analysis(E, f1, f2, [], vf.chart_ideal_of_points(B, p), [], rng,
                                   expected=4)
    A = vf.chart_ring(p)
    ram = vf.saturate(vf.Ideal(A, [E.dehomogenize(A), vf.ramification_form(E, f1, f2).dehomogenize(A)]),
                      vf.chart_ideal_of_points(B, p)).gb()
    assert vf.branch_eliminant(ram, f1, f2, 4) == rep.branch_form
    # in degree 5 the kernel is 2-dimensional: b(t) t0 and b(t) t1
    assert vf.branch_eliminant(ram, f1, f2, 5) == []


def test_r_on_the_curve_is_rejected():
    cert = construction(1)
    P, R, f1, f2, IQ, g = unpack(cert)
    rep = vf.ramification_analysis(g, f1, f2, P, IQ, P[:1], np.random.default_rng(0), strict=False)
    assert not rep.R_off_curve and not rep.ok
    with pytest.raises(vf.RDisjointnessFailure):
        rep.check()


# -- recovery of R -------------------------------------------------------------


def test_recover_r_round_trip(success_certificates):
    for cert in success_certificates:
        P, R, f1, f2, IQ, g = unpack(cert)
        rep = vf.recover_R(P, IQ, R, (f1, f2), np.random.default_rng(0))
        assert rep.pencil_dimension == 2 > 21 - 20
        assert rep.base_degree == 25 and rep.recovered


def test_recover_r_detects_a_wrong_r():
    cert = construction(2)
    P, R, f1, f2, IQ, g = unpack(cert)
    wrong = R[:4] + [P[0]]
    with pytest.raises(vf.RecoveryMismatch):
        vf.recover_R(P, IQ, wrong, (f1, f2), np.random.default_rng(0))


def test_recover_r_with_an_extra_point():
    # a point off the base locus cuts the pencil down to a single quintic
    cert = construction(2)
    P, R, f1, f2, IQ, g = unpack(cert)
    extra = (1, 2, 1)
    assert f1.evaluate(extra) or f2.evaluate(extra)
    with pytest.raises(vf.WrongPencilDimension):
        vf.recover_R(P + [extra], IQ, R, None, np.random.default_rng(0))


# -- audit ---------------------------------------------------------------------


def test_audit_values():
    audit = vf.dimension_audit()
    assert audit.ok
    assert audit.value("dim X2") == 34 + 4 == 38
    assert audit.value("dim Y2") == 32 + 5 + 1 == 38
    assert audit.value("w") == 32
    assert audit.value("rho(g,d,2)") == 9 - 3 * (9 - 8 + 2) == 0
    assert audit.value("rho(g,d,1)") == 5
    assert audit.value("dim U_{g,d}") == 3 * 8 + 9 - 1
    assert vf.BRANCH_POINTS == 32


def test_audit_with_another_genus_fails():
    audit = vf.dimension_audit(g=10)
    assert not audit.ok
    assert "audit FAILED" in audit.table()


def test_rho_formula():
    for g in range(12):
        for d in range(1, 12):
            for r in range(3):
                assert vf.rho(g, d, r) == g - (r + 1) * (g - d + r)
