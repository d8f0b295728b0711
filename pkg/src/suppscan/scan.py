"""Prime sweep orchestration: config handling, parallel evaluation, reports.

Per-prime work is embarrassingly parallel; records are merged in ascending-q
order so the output is identical for any worker count. Timing fields are
the only nondeterministic output and are excluded from every digest.
"""

import hashlib
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from importlib import resources

from .arith import primes_up_to, iter_primes
from .endo import (
    KIND_WEAK_FOUND,
    RelationCertificate,
    find_weak_relation,
    relation_holds,
    verify_no_medium_relation,
)
from .quotient import InvariantViolation, PrimeRecord, evaluate_prime, make_context
from .rational import HypothesisReport, RationalCurve, RationalPoint, validate_hypotheses

CSV_HEADER = "q,ord_R,ord_P,ord_Q,forward_holds,backward_holds,elapsed_us"

SKIP_WEIERSTRASS = "short-Weierstrass exclusion"
SKIP_DISCRIMINANT = "divides the discriminant"
SKIP_TORSION_PRIME = "equals the torsion prime p"

# Contexts feeding the relation search, and fresh ones for re-verification.
SEARCH_CONTEXTS = 8
FRESH_CONTEXTS = 10


class HypothesisFailure(Exception):
    """Raised when a config flunks validation; carries the full report."""

    def __init__(self, report: HypothesisReport):
        super().__init__("; ".join(report.failures) or "hypothesis validation failed")
        self.report = report


@dataclass(frozen=True)
class LabConfig:
    curve: RationalCurve
    R: RationalPoint
    R1: RationalPoint
    R2: RationalPoint
    p: int
    prime_bound: int
    naive_threshold: int
    entry_bound: int
    workers: int

    def to_dict(self) -> dict:
        return {
            "curve": [self.curve.a, self.curve.b],
            "R": [self.R.x, self.R.y, self.R.z],
            "R1": [self.R1.x, self.R1.y, self.R1.z],
            "R2": [self.R2.x, self.R2.y, self.R2.z],
            "p": self.p,
            "prime_bound": self.prime_bound,
            "naive_threshold": self.naive_threshold,
            "entry_bound": self.entry_bound,
            "workers": self.workers,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LabConfig":
        try:
            a, b = data["curve"]
            return cls(
                curve=RationalCurve(int(a), int(b)),
                R=RationalPoint(*map(int, data["R"])),
                R1=RationalPoint(*map(int, data["R1"])),
                R2=RationalPoint(*map(int, data["R2"])),
                p=int(data["p"]),
                prime_bound=int(data.get("prime_bound", 10_000)),
                naive_threshold=int(data.get("naive_threshold", 100_000)),
                entry_bound=int(data.get("entry_bound", 4)),
                workers=int(data.get("workers", 1)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed config: {exc}") from exc

    def digest(self) -> str:
        """Hash of the semantic content; the workers knob is a runtime detail."""
        semantic = {k: v for k, v in self.to_dict().items() if k != "workers"}
        return _sha256_of(semantic)

    def validate(self) -> HypothesisReport:
        return validate_hypotheses(self.curve, self.R, self.R1, self.R2, self.p)


def _sha256_of(obj) -> str:
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


@dataclass(frozen=True)
class ScanReport:
    config_digest: str
    records: tuple
    primes_scanned: int
    primes_skipped: tuple
    condition1_forward_rate: Fraction
    condition1_backward_rate: Fraction
    weak_relation: RelationCertificate
    medium_impossibility: RelationCertificate

    def to_dict(self, include_elapsed: bool = True) -> dict:
        records = []
        for r in self.records:
            row = {
                "q": r.q,
                "ord_R": r.ord_r,
                "ord_P": r.ord_p,
                "ord_Q": r.ord_q,
                "forward_holds": r.forward_holds,
                "backward_holds": r.backward_holds,
            }
            if include_elapsed:
                row["elapsed_us"] = r.elapsed_us
            records.append(row)
        return {
            "config_digest": self.config_digest,
            "primes_scanned": self.primes_scanned,
            "primes_skipped": [[q, reason] for q, reason in self.primes_skipped],
            "condition1_forward_rate": _rate_str(self.condition1_forward_rate),
            "condition1_backward_rate": _rate_str(self.condition1_backward_rate),
            "records": records,
            "weak_relation": self.weak_relation.to_dict(),
            "medium_impossibility": self.medium_impossibility.to_dict(),
        }

    def digest(self) -> str:
        """Content hash with all timing fields stripped."""
        return _sha256_of(self.to_dict(include_elapsed=False))


def _rate_str(rate: Fraction) -> str:
    return str(rate)


def classify_primes(config: LabConfig):
    """Split primes <= prime_bound into good ones and (prime, reason) skips."""
    disc = config.curve.discriminant()
    good, skipped = [], []
    for q in primes_up_to(config.prime_bound):
        if q in (2, 3):
            skipped.append((q, SKIP_WEIERSTRASS))
        elif q == config.p:
            skipped.append((q, SKIP_TORSION_PRIME))
        elif disc % q == 0:
            skipped.append((q, SKIP_DISCRIMINANT))
        else:
            good.append(q)
    return good, skipped


def iter_good_primes(config: LabConfig, start: int = 5):
    """Unbounded ascending stream of usable primes for this config."""
    disc = config.curve.discriminant()
    for q in iter_primes(start):
        if q in (2, 3) or q == config.p or disc % q == 0:
            continue
        yield q


def _scan_one(config: LabConfig, q: int) -> PrimeRecord:
    ctx = make_context(config.curve, config.R1, config.R2, config.p, q)
    return evaluate_prime(ctx, config.R)


def _relation_certificates(config: LabConfig):
    """Weak-relation search over the first good primes plus fresh re-checks."""
    stream = iter_good_primes(config)
    search_qs = [next(stream) for _ in range(SEARCH_CONTEXTS)]
    fresh_qs = [next(stream) for _ in range(FRESH_CONTEXTS)]

    def make(q):
        return make_context(config.curve, config.R1, config.R2, config.p, q)

    weak = find_weak_relation(
        config.p, [make(q) for q in search_qs], config.R, config.entry_bound
    )
    if weak.kind == KIND_WEAK_FOUND:
        fresh_ctxs = [make(q) for q in fresh_qs]
        ok = relation_holds(weak.k, weak.f, fresh_ctxs, config.R)
        if weak.transposed_f is not None:
            ok = ok and relation_holds(
                weak.transposed_k, weak.transposed_f, fresh_ctxs, config.R, transposed=True
            )
        if not ok:
            raise InvariantViolation(
                "weak relation failed re-verification at fresh primes"
            )
        weak = RelationCertificate(
            kind=weak.kind,
            p=weak.p,
            k=weak.k,
            f=weak.f,
            transposed_k=weak.transposed_k,
            transposed_f=weak.transposed_f,
            searched_primes=weak.searched_primes,
            verified_primes=tuple(fresh_qs),
        )
    medium = verify_no_medium_relation(config.p)
    return weak, medium


def run_scan(config: LabConfig, workers: int | None = None) -> ScanReport:
    """Full pipeline: validate, sweep primes, attach relation certificates.

    Output is deterministic for a fixed config regardless of worker count.
    """
    report = config.validate()
    if not report.ok:
        raise HypothesisFailure(report)
    workers = config.workers if workers is None else workers
    good, skipped = classify_primes(config)

    if workers > 1 and len(good) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunk = max(1, len(good) // (4 * workers))
            records = list(pool.map(partial(_scan_one, config), good, chunksize=chunk))
    else:
        records = [_scan_one(config, q) for q in good]
    records.sort(key=lambda r: r.q)

    # For a validated config the three orders must agree at every good prime;
    # anything else means a bug, not a finding.
    unequal = [r.q for r in records if not r.ord_p == r.ord_q == r.ord_r]
    if unequal:
        raise InvariantViolation(f"order equality broke at q in {unequal[:5]}")

    n = len(records)
    # Empty sweeps count as vacuously clean.
    forward = Fraction(sum(r.forward_holds for r in records), n) if n else Fraction(1)
    backward = Fraction(sum(r.backward_holds for r in records), n) if n else Fraction(1)
    weak, medium = _relation_certificates(config)
    return ScanReport(
        config_digest=config.digest(),
        records=tuple(records),
        primes_scanned=n,
        primes_skipped=tuple(skipped),
        condition1_forward_rate=forward,
        condition1_backward_rate=backward,
        weak_relation=weak,
        medium_impossibility=medium,
    )


def write_report(report: ScanReport, csv_path, json_path) -> None:
    """CSV of per-prime records plus the full JSON report."""
    lines = [CSV_HEADER]
    lines.extend(r.csv_row() for r in report.records)
    with open(csv_path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    payload = report.to_dict()
    payload["report_digest"] = report.digest()
    with open(json_path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def default_config() -> LabConfig:
    """The frozen configuration produced by search_curve(5)."""
    text = resources.files("suppscan").joinpath("data/default.json").read_text()
    return LabConfig.from_dict(json.loads(text))
