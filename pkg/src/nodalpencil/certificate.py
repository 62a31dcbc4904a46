"""Run certificates: canonical JSON records and re-verification from raw data."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

SCHEMA_VERSION = "1"

_FIELDS = ("schema_version", "prime", "seed", "status", "failed_stage", "retries", "failures",
           "coordinate_change", "points_P", "points_R", "pencil", "ideal_Q", "octic", "checks",
           "display")


class CertificateError(ValueError):
    pass


@dataclass
class Certificate:
    prime: int
    seed: int
    status: str = "FAILED"
    failed_stage: str | None = None
    retries: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    coordinate_change: list | None = None
    points_P: list = field(default_factory=list)
    points_R: list = field(default_factory=list)
    pencil: dict | None = None
    ideal_Q: list = field(default_factory=list)
    octic: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)
    display: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def fill(self, state, P, R, pencil_json, IQ, g, checks) -> None:
        self.retries = dict(state.retries)
        self.failures = list(state.failures)
        self.coordinate_change = state.coordinate_change
        self.points_P = [list(map(int, q)) for q in P] if P else []
        self.points_R = [list(map(int, q)) for q in R] if R else []
        self.pencil = pencil_json
        self.ideal_Q = IQ.to_json() if IQ is not None else []
        self.octic = g.to_json() if g is not None else []
        self.checks = checks
        self.display = {}
        if g is not None:
            from .multipoly import Poly
            from .verify import plane_ring
            H = plane_ring(self.prime)
            self.display = {
                "f1": str(Poly.from_json(H, pencil_json["f1"])),
                "f2": str(Poly.from_json(H, pencil_json["f2"])),
                "octic": str(g),
                "ideal_Q": [str(q) for q in IQ.elements],
            }

    def to_json(self) -> dict:
        return {name: getattr(self, name) for name in _FIELDS}

    @classmethod
    def from_json(cls, data: dict) -> Certificate:
        if not isinstance(data, dict):
            raise CertificateError("certificate must be a JSON object")
        missing = [f for f in _FIELDS if f not in data]
        if missing:
            raise CertificateError(f"missing fields: {missing}")
        if data["schema_version"] != SCHEMA_VERSION:
            raise CertificateError(f"unsupported schema version {data['schema_version']!r}")
        return cls(**{f: data[f] for f in _FIELDS})

    def dumps(self) -> str:
        return canonical_json(self.to_json())

    def __eq__(self, other):
        return isinstance(other, Certificate) and self.to_json() == other.to_json()


def canonical_json(obj: Any) -> str:
    return json.dumps(_plain(obj), sort_keys=True, indent=1, ensure_ascii=True,
                      allow_nan=False) + "\n"


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, float):
        raise CertificateError("floats are not allowed in certificates")
    return obj


def write_certificate(cert: Certificate, destination) -> int:
    data = cert.dumps().encode("utf-8")
    Path(destination).write_bytes(data)
    return len(data)


def read_certificate(path) -> Certificate:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateError(f"not valid JSON: {exc}") from exc
    return Certificate.from_json(data)


# --------------------------------------------------------------------------
# re-verification


@dataclass
class Verdict:
    check: str
    status: str  # REPRODUCED | TAMPERED | UNDECIDED
    detail: str = ""


@dataclass
class ReverifyResult:
    verdicts: list[Verdict]

    @property
    def status(self) -> str:
        states = {v.status for v in self.verdicts}
        if "TAMPERED" in states:
            return "TAMPERED"
        if "UNDECIDED" in states:
            return "UNDECIDED"
        return "REPRODUCED"

    @property
    def ok(self) -> bool:
        return self.status == "REPRODUCED"


def _compare(name: str, stored, recomputed) -> Verdict:
    stored = _plain(stored)
    recomputed = _plain(recomputed)
    if stored == recomputed:
        return Verdict(name, "REPRODUCED")
    diff = []
    if isinstance(stored, dict) and isinstance(recomputed, dict):
        diff = sorted(k for k in set(stored) | set(recomputed) if stored.get(k) != recomputed.get(k))
    return Verdict(name, "TAMPERED", f"differs in {diff}" if diff else "value differs")


def reverify(source) -> ReverifyResult:
    """Re-execute every check from the certificate's raw fields.

    Stored verdicts are only used for comparison.  ``source`` is a path or a
    :class:`Certificate`.
    """
    from . import fieldarith as fa
    from . import verify as vf
    from .linsys import FatPointSystem, linear_system
    from .multipoly import Poly
    from .pipeline import CONSTANTS, Pencil, check_rng, octic, residual_points, run_checks

    cert = source if isinstance(source, Certificate) else read_certificate(source)
    verdicts: list[Verdict] = []
    try:
        p = fa.check_prime(int(cert.prime))
    except fa.FieldError as exc:
        return ReverifyResult([Verdict("prime", "TAMPERED", str(exc))])

    if cert.status == "FAILED":
        ok = not cert.checks and cert.failed_stage is not None
        return ReverifyResult([Verdict("status", "REPRODUCED" if ok else "TAMPERED",
                                       "FAILED certificate carries no verdicts")])

    T = np.array(cert.coordinate_change, dtype=np.int64)
    if T.shape != (3, 3) or fa.rank(T, p) != 3:
        verdicts.append(Verdict("coordinate_change", "TAMPERED", "not an invertible 3x3 matrix"))
    P = [tuple(int(v) for v in q) for q in cert.points_P]
    R = [tuple(int(v) for v in q) for q in cert.points_R]
    pts = P + R
    shape_ok = (len(P) == CONSTANTS.n_P and len(R) == CONSTANTS.n_R and len(set(pts)) == len(pts)
                and all(len(q) == 3 and q[2] == 1 for q in pts))
    if not shape_ok:
        return ReverifyResult(verdicts + [Verdict("points", "TAMPERED", "malformed point data")])

    H = vf.plane_ring(p)
    A = vf.chart_ring(p)
    f1 = Poly.from_json(H, cert.pencil["f1"])
    f2 = Poly.from_json(H, cert.pencil["f2"])
    g = Poly.from_json(H, cert.octic)
    L4 = linear_system(FatPointSystem.simple(p, pts), CONSTANTS.d_quintic, ring=H)
    pencil_ok = (L4.dimension == 4 and L4.contains(f1) and L4.contains(f2)
                 and f1.total_degree() == 5 and f2.total_degree() == 5
                 and _independent(L4, f1, f2, p))
    verdicts.append(Verdict("pencil", "REPRODUCED" if pencil_ok else "TAMPERED"))
    pencil = Pencil(f1, f2, np.zeros((2, 4), dtype=np.int64))

    IQ, res = residual_points(pencil, P, R, check_rng(cert.seed, "residual"), strict=False)
    verdicts.append(_compare("residual", cert.checks.get("residual"), res.to_json()))
    stored_Q = vf.Ideal(A, [Poly.from_json(A, q) for q in cert.ideal_Q]) if cert.ideal_Q else None
    same_Q = stored_Q is not None and res.ok and stored_Q.gb().same_ideal(IQ)
    verdicts.append(Verdict("ideal_Q", "REPRODUCED" if same_Q else "TAMPERED"))

    if res.ok:
        try:
            g_re, L8 = octic(P, IQ, p)
            same_g = g_re == g
            h8 = L8.dimension
        except Exception:  # noqa: BLE001 - wrong dimension counts as tampering
            same_g, h8 = False, -1
    else:
        same_g, h8 = False, -1
    verdicts.append(Verdict("octic", "REPRODUCED" if same_g else "TAMPERED"))

    checks = run_checks(p, cert.seed, P, R, pencil, IQ, g, strict=False)
    for name in ("nodes", "genus", "irreducibility", "ramification", "recover_R", "audit"):
        verdicts.append(_compare(name, cert.checks.get(name), checks[name]))
    dims = {
        "h0_I_PR_5": L4.dimension,
        "h0_I_P2_8": linear_system(FatPointSystem.double(p, P), CONSTANTS.d_curve).dimension,
        "h0_I_P2_IQ_8": h8,
        "h0_I_PQ_5": checks["recover_R"]["pencil_dimension"],
        "h0_I_P_5": checks["genus"]["adjoint_quintics"],
    }
    verdicts.append(_compare("dimensions", cert.checks.get("dimensions"), dims))

    all_ok = all(checks[n]["ok"] for n in ("nodes", "genus", "irreducibility", "ramification", "recover_R"))
    expected_status = "SUCCESS" if all_ok and res.ok else cert.status
    ram = checks["ramification"]
    if ram["reduced"] == "UNDECIDED" or (ram["squarefree"] and ram["elimination_agrees"] is False):
        verdicts.append(Verdict("status", "UNDECIDED", "ramification test inconclusive"))
    elif cert.status != expected_status or (cert.status == "SUCCESS" and not all_ok):
        verdicts.append(Verdict("status", "TAMPERED", f"stored {cert.status}, recomputed {expected_status}"))
    else:
        verdicts.append(Verdict("status", "REPRODUCED"))
    return ReverifyResult(verdicts)


def _independent(L, f1, f2, p) -> bool:
    from .fieldarith import rank
    return rank(np.vstack([L.coordinates(f1), L.coordinates(f2)]), p) == 2
