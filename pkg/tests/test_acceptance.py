"""Acceptance criteria 1-9, one PASS/FAIL line each.

Run alone with ``python3 -m pytest tests/test_acceptance.py -v`` (the lines
appear in the terminal summary) or ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from nodalpencil import verify as vf  # noqa: E402
from nodalpencil.certificate import reverify  # noqa: E402
from nodalpencil.linsys import FatPointSystem, generator_syzygy_profile, linear_system  # noqa: E402
from nodalpencil.pipeline import RetryExhausted, run_construction  # noqa: E402

from conftest import PRIME, construction, unpack  # noqa: E402
from oracles import GF, interpolation_forms  # noqa: E402

RESULTS: dict[int, str] = {}
FIXED_SEEDS = range(5)
TIME_LIMIT = 60.0


def report(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


def success_certificates(count: int = 20, max_seed: int = 40):
    out = []
    for seed in range(max_seed):
        try:
            cert = construction(seed)
        except RetryExhausted:
            continue
        if cert.status == "SUCCESS":
            out.append(cert)
        if len(out) == count:
            break
    return out


def test_criterion_1_end_to_end_construction():
    successes, slowest = 0, 0.0
    for seed in FIXED_SEEDS:
        t0 = time.perf_counter()
        try:
            cert = run_construction(PRIME, seed, 10)
            successes += cert.status == "SUCCESS"
        except RetryExhausted:
            pass
        slowest = max(slowest, time.perf_counter() - t0)
    report(1, successes >= 4 and slowest <= TIME_LIMIT,
           f"{successes}/5 seeds SUCCESS at p={PRIME}, slowest run {slowest:.2f}s (limit {TIME_LIMIT:.0f}s)")


def test_criterion_2_dimension_targets():
    certs = success_certificates()
    bad = []
    for cert in certs:
        P, R, f1, f2, IQ, g = unpack(cert)
        dims = (
            linear_system(FatPointSystem.simple(PRIME, P + R), 5).dimension,
            linear_system(FatPointSystem.double(PRIME, P), 8).dimension,
            linear_system(FatPointSystem.double(PRIME, P), 8, extra=IQ).dimension,
            linear_system(FatPointSystem.simple(PRIME, P), 5, extra=IQ).dimension,
        )
        # the purely point-based count once more by naive interpolation
        naive = len(interpolation_forms(P + R, 5, PRIME))
        if dims != (4, 9, 1, 2) or naive != 4:
            bad.append((cert.seed, dims, naive))
    report(2, len(certs) == 20 and not bad,
           f"h0 = (4, 9, 1, 2) on {len(certs) - len(bad)}/{len(certs)} SUCCESS runs" + (f" {bad}" if bad else ""))


def test_criterion_3_scheme_degrees():
    certs = success_certificates()
    bad = []
    for cert in certs:
        c = cert.checks
        got = (c["residual"]["base_degree"], c["residual"]["degree"], c["nodes"]["singular_degree"],
               c["ramification"]["degree"], len(c["ramification"]["branch_form"]) - 1,
               c["ramification"]["squarefree"])
        if got != (25, 8, 12, 32, 32, True):
            bad.append((cert.seed, got))
    report(3, len(certs) == 20 and not bad,
           f"degrees 25/8/12/32, branch form degree 32 squarefree on {len(certs) - len(bad)}/{len(certs)} runs")


def test_criterion_4_genus_cross_check():
    certs = success_certificates()
    bad = []
    for cert in certs:
        P = [tuple(q) for q in cert.points_P]
        adj = linear_system(FatPointSystem.simple(PRIME, P), 5).dimension
        genus = vf.genus_check(vf.verify_nodes(unpack(cert)[5], P)).genus
        if not adj == genus == 9:
            bad.append((cert.seed, adj, genus))
    report(4, len(certs) == 20 and not bad,
           f"h0(I_P(5)) = 9 = g on {len(certs) - len(bad)}/{len(certs)} runs")


def test_criterion_5_resolution_profile():
    rng = np.random.default_rng(5)
    hits = 0
    for _ in range(50):
        pts = set()
        while len(pts) < 12:
            pts.add((int(rng.integers(0, PRIME)), int(rng.integers(0, PRIME)), 1))
        prof = generator_syzygy_profile(FatPointSystem.simple(PRIME, sorted(pts)), 8)
        hits += prof.matches_twelve_points() and prof.syzygies.get(8, 0) == 0
    report(5, hits >= 48, f"{hits}/50 random 12-point sets have O(-4)^3 <- O(-6)^2 (need 48)")


def test_criterion_6_birational_round_trip():
    certs = success_certificates()
    recovered = 0
    for cert in certs:
        P, R, f1, f2, IQ, g = unpack(cert)
        rep = vf.recover_R(P, IQ, R, (f1, f2), np.random.default_rng(cert.seed), strict=False)
        recovered += rep.ok
    report(6, recovered == len(certs) == 20, f"I_R recovered exactly on {recovered}/{len(certs)} certificates")


def test_criterion_7_small_field_oracles():
    import test_fieldarith as tf
    import test_groebner as tg

    suites = {
        "quotient vs interpolation over F_7 (algebra)":
            lambda: tg.test_affine_quotient_matches_interpolation_oracle("algebra"),
        "quotient vs interpolation over F_7 (elimination)":
            lambda: tg.test_affine_quotient_matches_interpolation_oracle("elimination"),
        "homogeneous quotient vs interpolation over F_7": tg.test_homogeneous_quotient_matches_interpolation_oracle,
        "degree vs point counts over F_7, F_49, F_343":
            lambda: tg.test_projective_degree_matches_point_counts([GF(7, k) for k in (1, 2, 3)]),
        "Cayley-Hamilton over F_7": tf.test_cayley_hamilton_small_field,
        "Cayley-Hamilton over F_10007": lambda: [tf.test_cayley_hamilton_large_field(n) for n in (1, 2, 9, 32)],
        "S-polynomial certification": tg.test_certification_of_random_instances,
        "S-polynomial example": tg.test_s_polynomial_cancels_leads,
    }
    failed = []
    for name, run in suites.items():
        try:
            run()
        except AssertionError as exc:
            failed.append(f"{name}: {exc}")
    report(7, not failed, f"{len(suites) - len(failed)}/{len(suites)} oracle suites pass" + (f" {failed}" if failed else ""))


def test_criterion_8_determinism_and_reverification():
    identical = sum(run_construction(PRIME, s).dumps() == construction(s).dumps() for s in FIXED_SEEDS)
    certs = success_certificates()
    reproduced = sum(reverify(c).ok for c in certs)
    report(8, identical == len(FIXED_SEEDS) and reproduced == len(certs) == 20,
           f"{identical}/{len(FIXED_SEEDS)} replays byte-identical, {reproduced}/{len(certs)} certificates reverified")


def test_criterion_9_arithmetic_audit():
    a = vf.dimension_audit()
    values = {k: a.value(k) for k in ("dim X2", "dim Y2", "w", "rho(g,d,2)", "rho(g,d,1)", "dim U_{g,d}")}
    expected = {"dim X2": 38, "dim Y2": 38, "w": 32, "rho(g,d,2)": 0, "rho(g,d,1)": 5, "dim U_{g,d}": 32}
    report(9, a.ok and values == expected, ", ".join(f"{k} = {v}" for k, v in values.items()))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
