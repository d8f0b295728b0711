"""Integer 2x2 matrices acting on E x E and their descent to the quotient.

A matrix (a b; c d) acts on column vectors: (u, v) maps to (a*u + b*v,
c*u + d*v). It induces an endomorphism of the quotient by <(R1, R2)> exactly
when b, c = 0 and a = d = k mod p for some k; the finite shadow of that
criterion is kernel preservation at any good prime, and the two are checked
against each other in the test suite.
"""

from dataclasses import dataclass
from itertools import product

from .arith import is_prime
from .quotient import (
    QuotientContext,
    QuotientPoint,
    quotient_equal,
    quotient_scalar_mul,
)
from .rational import RationalPoint, reduce_coordinates

KIND_WEAK_FOUND = "weak_relation_found"
KIND_WEAK_NOT_FOUND = "weak_relation_not_found"
KIND_MEDIUM_IMPOSSIBLE = "medium_relation_impossible"

# Literal five-fold residue products are capped here; beyond it the count
# is taken exactly over k alone (the congruences are constant in a, b, c, d).
_LITERAL_RESIDUE_CAP = 200_000


@dataclass(frozen=True)
class EndoMatrix:
    a: int
    b: int
    c: int
    d: int

    @classmethod
    def scalar(cls, n: int) -> "EndoMatrix":
        return cls(n, 0, 0, n)

    @classmethod
    def identity(cls) -> "EndoMatrix":
        return cls.scalar(1)

    def compose(self, other: "EndoMatrix") -> "EndoMatrix":
        return EndoMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def entries(self) -> tuple:
        return self.a, self.b, self.c, self.d


@dataclass(frozen=True)
class DescentWitness:
    descends: bool
    k: int | None = None


def descends(m: EndoMatrix, p: int) -> DescentWitness:
    """Congruence criterion: b, c = 0 and a = d (mod p); then k = a mod p."""
    if not is_prime(p):
        raise ValueError(f"p = {p} must be prime")
    if m.b % p == 0 and m.c % p == 0 and (m.a - m.d) % p == 0:
        return DescentWitness(True, m.a % p)
    return DescentWitness(False)


def kernel_preserved(m: EndoMatrix, ctx: QuotientContext) -> bool:
    """Finite-level descent: the matrix maps (K1, K2) into its own cyclic span."""
    curve = ctx.curve
    image = (
        curve.add(curve.scalar_mul(m.a, ctx.k1), curve.scalar_mul(m.b, ctx.k2)),
        curve.add(curve.scalar_mul(m.c, ctx.k1), curve.scalar_mul(m.d, ctx.k2)),
    )
    return image in ctx.kernel()


def apply(m: EndoMatrix, s: QuotientPoint, ctx: QuotientContext) -> QuotientPoint:
    """Matrix action on a coset; requires descent so the action is well defined."""
    if not descends(m, ctx.p).descends:
        raise ValueError(f"matrix {m.entries()} does not descend mod {ctx.p}")
    curve = ctx.curve
    return QuotientPoint(
        curve.add(curve.scalar_mul(m.a, s.rep1), curve.scalar_mul(m.b, s.rep2)),
        curve.add(curve.scalar_mul(m.c, s.rep1), curve.scalar_mul(m.d, s.rep2)),
    )


@dataclass(frozen=True)
class RelationCertificate:
    """Outcome of a relation search or an impossibility derivation."""

    kind: str
    p: int
    k: int | None = None
    f: EndoMatrix | None = None
    transposed_k: int | None = None
    transposed_f: EndoMatrix | None = None
    reason: str = ""
    residue_solutions: int | None = None
    residue_tuples: int | None = None
    searched_primes: tuple = ()
    verified_primes: tuple = ()

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "p": self.p}
        if self.k is not None:
            out["k"] = self.k
        if self.f is not None:
            out["f"] = [[self.f.a, self.f.b], [self.f.c, self.f.d]]
        if self.transposed_k is not None:
            out["transposed_k"] = self.transposed_k
        if self.transposed_f is not None:
            out["transposed_f"] = [
                [self.transposed_f.a, self.transposed_f.b],
                [self.transposed_f.c, self.transposed_f.d],
            ]
        if self.reason:
            out["reason"] = self.reason
        if self.residue_solutions is not None:
            out["residue_solutions"] = self.residue_solutions
            out["residue_tuples"] = self.residue_tuples
        if self.searched_primes:
            out["searched_primes"] = list(self.searched_primes)
        if self.verified_primes:
            out["verified_primes"] = list(self.verified_primes)
        return out


def _signed_values(bound: int) -> list[int]:
    """0, 1, -1, 2, -2, ... up to +-bound; search order for matrix entries."""
    out = [0]
    for v in range(1, bound + 1):
        out.extend((v, -v))
    return out


def _context_images(ctxs, R: RationalPoint):
    """(ctx, P, Q) per context, P and Q the images of (R, 0) and (R, R)."""
    triples = []
    for ctx in ctxs:
        r = reduce_coordinates(R, ctx.curve.q)
        if not ctx.curve.contains(r):
            raise ValueError(f"R does not reduce onto the curve mod {ctx.curve.q}")
        triples.append((ctx, QuotientPoint(r, None), QuotientPoint(r, r)))
    return triples


def relation_holds(
    k: int, f: EndoMatrix, ctxs, R: RationalPoint, transposed: bool = False
) -> bool:
    """Check k*Q = f(P) (or k*P = f(Q) when transposed) at every context."""
    for ctx, P, Q in _context_images(ctxs, R):
        src, dst = (Q, P) if transposed else (P, Q)
        if not quotient_equal(ctx, apply(f, src, ctx), quotient_scalar_mul(ctx, k, dst)):
            return False
    return True


def find_weak_relation(
    p: int, ctxs, R: RationalPoint, entry_bound: int
) -> RelationCertificate:
    """Search the entry box for the smallest relation k*Q = f(P).

    Candidates run over k = 1 .. entry_bound and matrix entries ordered by
    absolute value (0, 1, -1, 2, -2, ...), nested (k, a, b, c, d); only
    matrices satisfying the descent congruences are tried, and a candidate
    must hold at every supplied context. The transposed orientation
    k*P = f(Q) is searched the same way and reported alongside.
    """
    if len(ctxs) < 3:
        raise ValueError("need at least 3 contexts to make the search meaningful")
    if entry_bound < 1:
        raise ValueError("entry_bound must be >= 1")
    triples = _context_images(ctxs, R)
    values = _signed_values(entry_bound)
    hit = None
    hit_t = None
    for k in range(1, entry_bound + 1):
        for a in values:
            for b in values:
                if b % p:
                    continue
                for c in values:
                    if c % p:
                        continue
                    for d in values:
                        if (a - d) % p:
                            continue
                        if hit is None or hit_t is None:
                            f = EndoMatrix(a, b, c, d)
                            if hit is None and _holds_all(k, f, triples, False):
                                hit = (k, f)
                            if hit_t is None and _holds_all(k, f, triples, True):
                                hit_t = (k, f)
        if hit and hit_t:
            break
    qs = tuple(ctx.curve.q for ctx in ctxs)
    if hit is None and hit_t is None:
        return RelationCertificate(
            kind=KIND_WEAK_NOT_FOUND,
            p=p,
            reason=f"no relation with |entries| <= {entry_bound} holds at all contexts",
            searched_primes=qs,
        )
    return RelationCertificate(
        kind=KIND_WEAK_FOUND if hit else KIND_WEAK_NOT_FOUND,
        p=p,
        k=hit[0] if hit else None,
        f=hit[1] if hit else None,
        transposed_k=hit_t[0] if hit_t else None,
        transposed_f=hit_t[1] if hit_t else None,
        searched_primes=qs,
    )


def _holds_all(k: int, f: EndoMatrix, triples, transposed: bool) -> bool:
    for ctx, P, Q in triples:
        src, dst = (Q, P) if transposed else (P, Q)
        if not quotient_equal(ctx, apply(f, src, ctx), quotient_scalar_mul(ctx, k, dst)):
            return False
    return True


def verify_no_medium_relation(p: int) -> RelationCertificate:
    """Prove no k and integer matrix give P = (k + p*matrix) Q plus torsion.

    Such a relation forces the integer system k + p*c + p*d = 0 and
    p*a + p*b + k = 1; subtracting, 1 = p*(a + b - c - d), impossible for a
    prime p >= 2. A residue brute force over all (k, a, b, c, d) mod p
    independently confirms there is no solution even mod p.
    """
    if not is_prime(p):
        raise ValueError(f"p = {p} must be prime")
    solutions, tuples = _count_residue_solutions(p)
    reason = (
        "second coordinate forces k + p*c + p*d = 0, hence k = 0 (mod p); "
        "first coordinate forces p*a + p*b + k = 1, hence k = 1 (mod p); "
        f"subtracting, 1 = p*(a + b - c - d), so p | 1: impossible for p = {p}. "
        f"Residue check: {solutions} of {tuples} tuples satisfy both congruences."
    )
    if solutions != 0 or 1 % p == 0:
        raise AssertionError("impossibility derivation failed; arithmetic is broken")
    return RelationCertificate(
        kind=KIND_MEDIUM_IMPOSSIBLE,
        p=p,
        reason=reason,
        residue_solutions=solutions,
        residue_tuples=tuples,
    )


def _count_residue_solutions(p: int) -> tuple[int, int]:
    """Solutions of {k + p(c+d) = 0, pa + pb + k = 1} over (Z/p)^5.

    Small p: literal product over all p^5 tuples. Large p: both congruences
    collapse mod p to conditions on k alone (p * anything vanishes), so the
    exact count is (number of admissible k) * p^4.
    """
    total = p**5
    if total <= _LITERAL_RESIDUE_CAP:
        count = 0
        rng = range(p)
        for k, a, b, c, d in product(rng, rng, rng, rng, rng):
            if (k + p * c + p * d) % p == 0 and (p * a + p * b + k) % p == 1:
                count += 1
        return count, total
    admissible = sum(1 for k in range(p) if k % p == 0 and k % p == 1 % p)
    return admissible * p**4, total
