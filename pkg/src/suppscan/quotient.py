"""The quotient of E x E by the cyclic subgroup generated by (R1, R2), mod q.

At a good prime the quotient surface is only ever touched through the image
of E(F_q) x E(F_q): a pair vanishes in the quotient exactly when it lands in
the reduced kernel. That finite shadow is all the order bookkeeping needs.
"""

import time
from dataclasses import dataclass
from math import lcm

from .arith import is_prime, sorted_divisors
from .finite import FiniteCurve, FinitePoint
from .rational import RationalCurve, RationalPoint, reduce_coordinates


class InvariantViolation(RuntimeError):
    """A structural guarantee failed; signals a bug or a mis-excluded prime."""


@dataclass(frozen=True)
class QuotientPoint:
    """A coset representative (rep1, rep2) in E(F_q)^2.

    Dataclass equality is representative equality; coset equality is
    quotient_equal(ctx, s, t).
    """

    rep1: FinitePoint
    rep2: FinitePoint


@dataclass(frozen=True)
class QuotientContext:
    """Reduction data at one good prime: the curve, the reduced kernel
    generators K1 = R1 mod q, K2 = R2 mod q, and the torsion prime p."""

    curve: FiniteCurve
    k1: FinitePoint
    k2: FinitePoint
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"kernel order p = {self.p} must be prime")
        for name, pt in (("K1", self.k1), ("K2", self.k2)):
            if not self.curve.contains(pt):
                raise InvariantViolation(f"{name} is not on the reduced curve")
            if pt is None or self.curve.scalar_mul(self.p, pt) is not None:
                raise InvariantViolation(f"{name} does not have exact order {self.p}")
        if self.k1 == self.k2:
            raise InvariantViolation("kernel generators coincide after reduction")
        # Independence of the reduced generators (automatic for p = 2).
        t = self.k1
        for _ in range(self.p - 1):
            if t == self.k2:
                raise InvariantViolation("K2 lies in the cyclic group generated by K1")
            t = self.curve.add(t, self.k1)
        pairs = []
        s, t = None, None
        for _ in range(self.p):
            pairs.append((s, t))
            s = self.curve.add(s, self.k1)
            t = self.curve.add(t, self.k2)
        object.__setattr__(self, "_kernel", tuple(pairs))
        object.__setattr__(self, "_kernel_set", frozenset(pairs))

    def kernel(self) -> tuple:
        """The p pairs i * (K1, K2), i = 0 .. p-1."""
        return self._kernel


def make_context(
    curve: RationalCurve, R1: RationalPoint, R2: RationalPoint, p: int, q: int
) -> QuotientContext:
    """Reduce the kernel data at q, checking q is usable first.

    Raises ValueError for a bad prime (q in {2, 3, p} or q | discriminant)
    and InvariantViolation if the reduced generators collapse, which cannot
    happen for valid input.
    """
    if q in (2, 3) or q == p or not is_prime(q):
        raise ValueError(f"bad prime {q}")
    if curve.discriminant() % q == 0:
        raise ValueError(f"bad prime {q}: divides the discriminant")
    finite = curve.reduce(q)
    return QuotientContext(finite, reduce_coordinates(R1, q), reduce_coordinates(R2, q), p)


def quotient_add(ctx: QuotientContext, s: QuotientPoint, t: QuotientPoint) -> QuotientPoint:
    return QuotientPoint(ctx.curve.add(s.rep1, t.rep1), ctx.curve.add(s.rep2, t.rep2))


def quotient_neg(ctx: QuotientContext, s: QuotientPoint) -> QuotientPoint:
    return QuotientPoint(ctx.curve.neg(s.rep1), ctx.curve.neg(s.rep2))


def quotient_scalar_mul(ctx: QuotientContext, n: int, s: QuotientPoint) -> QuotientPoint:
    return QuotientPoint(ctx.curve.scalar_mul(n, s.rep1), ctx.curve.scalar_mul(n, s.rep2))


def quotient_is_zero(ctx: QuotientContext, s: QuotientPoint) -> bool:
    """True iff the representative pair lies in the reduced kernel."""
    return (s.rep1, s.rep2) in ctx._kernel_set


def quotient_equal(ctx: QuotientContext, s: QuotientPoint, t: QuotientPoint) -> bool:
    return quotient_is_zero(ctx, quotient_add(ctx, s, quotient_neg(ctx, t)))


def quotient_order(ctx: QuotientContext, s: QuotientPoint, component_lcm: int = 0) -> int:
    """Smallest n >= 1 with n * s zero in the quotient.

    The order divides m * p, m the lcm of the component orders; divisors of
    m * p are tested ascending, so the result is deterministic. Callers that
    already know m can pass it to skip the two order computations.
    """
    m = component_lcm
    if m <= 0:
        m = lcm(ctx.curve.point_order(s.rep1), ctx.curve.point_order(s.rep2))
    for n in sorted_divisors(m * ctx.p):
        if quotient_is_zero(ctx, quotient_scalar_mul(ctx, n, s)):
            return n
    raise InvariantViolation("no annihilator among the divisors of m * p")


@dataclass(frozen=True)
class PrimeRecord:
    """Per-prime verdict: the three orders and both divisibility directions."""

    q: int
    ord_r: int
    ord_p: int
    ord_q: int
    forward_holds: bool  # ord_Q | ord_P, i.e. nP = 0 implies nQ = 0
    backward_holds: bool  # ord_P | ord_Q
    elapsed_us: int

    def csv_row(self) -> str:
        return (
            f"{self.q},{self.ord_r},{self.ord_p},{self.ord_q},"
            f"{str(self.forward_holds).lower()},{str(self.backward_holds).lower()},"
            f"{self.elapsed_us}"
        )


def evaluate_prime(ctx: QuotientContext, R: RationalPoint) -> PrimeRecord:
    """Orders of R, P = image (R, 0) and Q = image (R, R) at one prime."""
    start = time.perf_counter_ns()
    r = reduce_coordinates(R, ctx.curve.q)
    if not ctx.curve.contains(r):
        raise ValueError("R does not reduce onto the context curve")
    ord_r = ctx.curve.point_order(r)
    ord_p = quotient_order(ctx, QuotientPoint(r, None), component_lcm=ord_r)
    ord_q = quotient_order(ctx, QuotientPoint(r, r), component_lcm=ord_r)
    elapsed_us = (time.perf_counter_ns() - start) // 1000
    return PrimeRecord(
        q=ctx.curve.q,
        ord_r=ord_r,
        ord_p=ord_p,
        ord_q=ord_q,
        forward_holds=ord_p % ord_q == 0,
        backward_holds=ord_q % ord_p == 0,
        elapsed_us=elapsed_us,
    )
