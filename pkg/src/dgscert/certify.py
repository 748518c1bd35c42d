"""The DGS certification pipeline.

A verdict is a proof object, not a guess: DGS statuses are only issued when
every arithmetic fact they rest on has been established exactly, and the
full evidence chain (invariant factors, factorizations, per-prime reports)
travels with the verdict for offline audit.  Partial factorizations never
silently pass as squarefree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import specinv
from .errors import InvariantViolation
from .fpalg import MODULUS_CAP
from .graphcore import Graph
from .specinv import PhiReport
from .zlinalg import (
    FactorizationResult,
    SnfResult,
    determinant,
    factor_integer,
    smith_normal_form,
    verify_product_of_factors,
    walk_matrix,
)

STATUS_DGS_BY_MAIN = "DGS_BY_MAIN"
STATUS_DGS_BY_SQF = "DGS_BY_SQF"
STATUS_NOT_CONTROLLABLE = "NOT_CONTROLLABLE"
STATUS_CONDITION_FAILS = "CONDITION_FAILS"
STATUS_FACTORIZATION_INCOMPLETE = "FACTORIZATION_INCOMPLETE"

RULE_MAIN = "squarefree-dn-with-matching-degrees"
RULE_SQF = "odd-squarefree-half-determinant"

SQF_PASS = "PASS"
SQF_FAIL = "FAIL"
SQF_UNKNOWN = "UNKNOWN"
SQF_NOT_RUN = "NOT_RUN"

_CERTIFYING = (STATUS_DGS_BY_MAIN, STATUS_DGS_BY_SQF)


@dataclass(frozen=True)
class DgsVerdict:
    """Certification outcome plus the evidence that justifies it."""

    status: str
    rule: str | None
    n: int
    det_w: int
    snf: SnfResult
    dn_factorization: FactorizationResult | None
    per_prime: tuple[PhiReport, ...]
    failing_prime: int | None
    sqf_check: str
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def dn(self) -> int:
        return self.snf.dn

    @property
    def certified(self) -> bool:
        return self.status in _CERTIFYING

    def dn_squarefree(self) -> bool | None:
        if self.dn_factorization is None:
            return None
        return self.dn_factorization.squarefree()

    def to_json_dict(self) -> dict:
        fact = self.dn_factorization
        return {
            "status": self.status,
            "rule": self.rule,
            "n": self.n,
            "det_W": str(self.det_w),
            "snf": [str(d) for d in self.snf.factors],
            "dn": str(self.dn),
            "dn_factors": None if fact is None else [[str(p), e] for p, e in fact.prime_powers],
            "dn_cofactor": None if fact is None else str(fact.cofactor),
            "primes": [rep.to_json_dict() for rep in self.per_prime],
            "failing_prime": None if self.failing_prime is None else str(self.failing_prime),
            "notes": "; ".join(self.notes),
        }


def check_controllable(g: Graph) -> bool:
    """True iff the walk matrix is nonsingular."""
    return determinant(walk_matrix(g)) != 0


_ALL_STATUSES = (
    STATUS_DGS_BY_MAIN,
    STATUS_DGS_BY_SQF,
    STATUS_NOT_CONTROLLABLE,
    STATUS_CONDITION_FAILS,
    STATUS_FACTORIZATION_INCOMPLETE,
)

_POLY_KEYS = ("phi", "sfp_phi", "sqrt_phi", "m_p", "restricted")


def validate_verdict_dict(data: dict) -> None:
    """Structural check of a serialized verdict against the published schema
    (data/verdict_schema.json).  Raises ValueError on the first mismatch."""

    def fail(msg: str):
        raise ValueError(f"verdict schema violation: {msg}")

    expected_keys = {
        "status", "rule", "n", "det_W", "snf", "dn",
        "dn_factors", "dn_cofactor", "primes", "failing_prime", "notes",
    }
    if set(data) != expected_keys:
        fail(f"key set {sorted(data)} != {sorted(expected_keys)}")
    if data["status"] not in _ALL_STATUSES:
        fail(f"unknown status {data['status']!r}")
    if data["rule"] is not None and not isinstance(data["rule"], str):
        fail("rule must be a string or null")
    if not isinstance(data["n"], int) or not 1 <= data["n"] <= 64:
        fail("n out of range")
    for key in ("det_W", "dn"):
        if not isinstance(data[key], str) or not data[key].lstrip("-").isdigit():
            fail(f"{key} must be a decimal string")
    if not isinstance(data["snf"], list) or any(not isinstance(d, str) or not d.isdigit() for d in data["snf"]):
        fail("snf must be a list of decimal strings")
    if data["dn_factors"] is not None:
        for item in data["dn_factors"]:
            if not (isinstance(item, list) and len(item) == 2 and item[0].isdigit() and isinstance(item[1], int)):
                fail(f"bad dn_factors entry {item!r}")
    if data["dn_cofactor"] is not None and not data["dn_cofactor"].isdigit():
        fail("dn_cofactor must be a decimal string or null")
    for rep in data["primes"]:
        if set(rep) != {"p", "nullity", *_POLY_KEYS, "eq4_holds"}:
            fail(f"bad per-prime key set {sorted(rep)}")
        if not rep["p"].isdigit() or not isinstance(rep["nullity"], int):
            fail("bad per-prime types")
        if any(not isinstance(rep[k], str) for k in _POLY_KEYS):
            fail("polynomials must be display strings")
        if not isinstance(rep["eq4_holds"], bool):
            fail("eq4_holds must be boolean")
    if data["failing_prime"] is not None and not data["failing_prime"].isdigit():
        fail("failing_prime must be a decimal string or null")
    if not isinstance(data["notes"], str):
        fail("notes must be a string")


def _two_adic_valuation(x: int) -> int:
    v = 0
    while x % 2 == 0:
        x //= 2
        v += 1
    return v


def _odd_part(x: int) -> int:
    while x % 2 == 0:
        x //= 2
    return x


def _expected_sqf_shape(n: int, odd_det: int) -> tuple[int, ...]:
    if n == 1:
        return (1,)
    half = n // 2
    return (1,) * (n - half) + (2,) * (half - 1) + (2 * odd_det,)


def check_sqf_condition(g: Graph, effort: str = "default") -> tuple[str, dict]:
    """The half-determinant rule: PASS iff det W = +-2^floor(n/2) * b with b
    odd, squarefree and fully factored; UNKNOWN when b's factorization stays
    partial; FAIL otherwise.

    On PASS the invariant-factor chain must take the rigid shape
    [1, ..., 1, 2, ..., 2, 2b]; a mismatch is an internal error.
    """
    w = walk_matrix(g)
    det = determinant(w)
    if det == 0:
        raise ValueError("the half-determinant rule needs a controllable graph")
    snf = smith_normal_form(w)
    verify_product_of_factors(snf, det)
    return _sqf_condition_from_snf(g.n, det, snf, factor_integer(_odd_part(snf.dn), effort))


def _sqf_condition_from_snf(
    n: int, det: int, snf: SnfResult, odd_dn_factorization: FactorizationResult
) -> tuple[str, dict]:
    v2 = _two_adic_valuation(det)
    evidence: dict = {"v2_det": v2, "v2_required": n // 2}
    if v2 < n // 2:
        raise InvariantViolation("2-adic valuation of det W below floor(n/2)")
    if v2 > n // 2:
        return SQF_FAIL, evidence
    # the odd part of det W is prod of the odd parts of the invariant
    # factors, and every d_i divides d_n: squarefree forces the first n-1
    # odd parts to be 1 and the last to be squarefree
    if n >= 2 and _odd_part(snf.factors[-2]) != 1:
        evidence["repeated_odd_prime_before_dn"] = True
        return SQF_FAIL, evidence
    sf = odd_dn_factorization.squarefree()
    if sf is None:
        return SQF_UNKNOWN, evidence
    if not sf:
        return SQF_FAIL, evidence
    odd_det = _odd_part(abs(det))
    if snf.factors != _expected_sqf_shape(n, odd_det):
        raise InvariantViolation("squarefree half-determinant without the rigid invariant-factor shape")
    return SQF_PASS, evidence


def certify_dgs(g: Graph, effort: str = "default", autopass_report_limit: int | None = None) -> DgsVerdict:
    """Run the full certification pipeline on one graph.

    Steps: controllability, invariant factors, deterministic factorization
    of the last invariant factor d_n, squarefreeness of d_n, and for every
    odd prime factor the degree condition deg sfp = nullity (primes whose
    nullity is 1 satisfy it automatically).  The half-determinant rule runs
    alongside; it can never certify a graph the main rule misses, and that
    containment is enforced as an internal check.

    ``autopass_report_limit`` caps how many automatically passing primes
    still get a full per-prime evidence report; it never changes the verdict.
    """
    n = g.n
    w = walk_matrix(g)
    det = determinant(w)
    snf = smith_normal_form(w)
    notes: list[str] = []
    if det == 0:
        return DgsVerdict(
            STATUS_NOT_CONTROLLABLE, None, n, 0, snf, None, (), None, SQF_NOT_RUN,
            ("walk matrix is singular; no certification possible",),
        )
    verify_product_of_factors(snf, det)
    dn = snf.dn
    count_2mod4 = sum(1 for d in snf.factors if d % 4 == 2)
    if count_2mod4 > n // 2:
        raise InvariantViolation("more than floor(n/2) invariant factors are 2 mod 4")

    v2_dn = _two_adic_valuation(dn)
    odd_dn = _odd_part(dn)
    if v2_dn >= 2:
        # 4 | d_n settles everything without touching the odd part: d_n is
        # not squarefree, and the half-determinant rule is unreachable too
        # (it forces the rigid invariant-factor shape, whose last entry is
        # twice an odd number).  Skipping the factorization here makes the
        # large-order experiment runs several times faster.
        dn_fact = FactorizationResult(
            ((2, v2_dn),), odd_dn, "complete" if odd_dn == 1 else "partial"
        )
        notes.append("d_n is not squarefree: 2^2 divides it (odd part left unfactored)")
        notes.append(f"half-determinant rule: {SQF_FAIL}")
        return DgsVerdict(
            STATUS_CONDITION_FAILS, None, n, det, snf, dn_fact, (), 2, SQF_FAIL, tuple(notes)
        )

    odd_fact = factor_integer(odd_dn, effort)
    sqf_status, _ = _sqf_condition_from_snf(n, det, snf, odd_fact)

    dn_powers = (((2, v2_dn),) if v2_dn else ()) + odd_fact.prime_powers
    dn_fact = FactorizationResult(tuple(sorted(dn_powers)), odd_fact.cofactor, odd_fact.status)

    def finish(status: str, rule: str | None, reports, failing) -> DgsVerdict:
        if status != STATUS_DGS_BY_MAIN and sqf_status == SQF_PASS:
            raise InvariantViolation("half-determinant rule passed but the d_n rule did not")
        notes.append(f"half-determinant rule: {sqf_status}")
        return DgsVerdict(status, rule, n, det, snf, dn_fact, tuple(reports), failing, sqf_status, tuple(notes))

    if not dn_fact.is_complete and dn_fact.squarefree() is None:
        notes.append(f"unfactored cofactor {dn_fact.cofactor} blocks the squarefreeness decision")
        return finish(STATUS_FACTORIZATION_INCOMPLETE, None, (), None)
    if dn_fact.squarefree() is False:
        repeated = next(p for p, e in dn_fact.prime_powers if e >= 2)
        notes.append(f"d_n is not squarefree: {repeated}^2 divides it")
        return finish(STATUS_CONDITION_FAILS, None, (), repeated)

    if dn % 4 == 2:
        notes.append("d_n = 2 (mod 4): any conjugating rational orthogonal matrix has odd level")

    reports: list[PhiReport] = []
    autopass_reported = 0
    for p in odd_fact.primes():
        nullity_snf = sum(1 for d in snf.factors if d % p == 0)
        if p >= MODULUS_CAP:
            if nullity_snf == 1:
                notes.append(f"prime {p} exceeds the modulus cap; nullity 1 passes without a report")
                continue
            notes.append(f"prime {p} exceeds the modulus cap and needs the degree check; undecidable")
            return finish(STATUS_FACTORIZATION_INCOMPLETE, None, reports, p)
        if nullity_snf == 1 and autopass_report_limit is not None and autopass_reported >= autopass_report_limit:
            notes.append(f"prime {p}: nullity 1 passes automatically (report omitted)")
            continue
        rep = specinv.phi_report(g, p)
        if rep.nullity != nullity_snf:
            raise InvariantViolation(f"rank-based nullity {rep.nullity} disagrees with the invariant factors at p={p}")
        if nullity_snf == 1:
            if not rep.eq_degrees_match:
                raise InvariantViolation(f"nullity 1 must force a degree-1 squarefree part at p={p}")
            autopass_reported += 1
        reports.append(rep)
        if not rep.eq_degrees_match:
            return finish(STATUS_CONDITION_FAILS, None, reports, p)
    return finish(STATUS_DGS_BY_MAIN, RULE_MAIN, reports, None)
