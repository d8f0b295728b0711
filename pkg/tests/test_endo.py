import random
from itertools import product

import pytest

from suppscan.arith import primes_up_to
from suppscan.endo import (
    KIND_MEDIUM_IMPOSSIBLE,
    KIND_WEAK_FOUND,
    KIND_WEAK_NOT_FOUND,
    EndoMatrix,
    apply,
    descends,
    find_weak_relation,
    kernel_preserved,
    relation_holds,
    verify_no_medium_relation,
)
from suppscan.finite import FiniteCurve
from suppscan.quotient import QuotientContext, QuotientPoint, make_context, quotient_equal
from suppscan.rational import RationalCurve, RationalPoint

DEFAULT = RationalCurve(-21, -20)
R = RationalPoint(-3, 4)
R1 = RationalPoint(-4, 0)
R2 = RationalPoint(-1, 0)


def ctx_at(q):
    return make_context(DEFAULT, R1, R2, 2, q)


def contexts(n, start=5):
    out = []
    for q in primes_up_to(500):
        if q < start or q in (2, 3):
            continue
        out.append(ctx_at(q))
        if len(out) == n:
            return out
    raise AssertionError("not enough primes")


def full_p_torsion_context(p):
    """Smallest synthetic context whose curve has all p-torsion rational."""
    for q in primes_up_to(200):
        if q < 5 or q % p != 1:
            continue
        for a in range(q):
            for b in range(q):
                if (4 * a**3 + 27 * b**2) % q == 0:
                    continue
                curve = FiniteCurve(q, a, b)
                if curve.count_points_naive() % p**2:
                    continue
                tors = curve.p_torsion_points(p)
                if len(tors) != p * p:
                    continue
                k1 = tors[1]
                span = {curve.scalar_mul(i, k1) for i in range(p)}
                k2 = next(t for t in tors if t not in span)
                return QuotientContext(curve, k1, k2, p)
    raise AssertionError(f"no full {p}-torsion curve found in range")


def test_descends_examples():
    for p in (2, 3, 5, 97):
        w = descends(EndoMatrix.identity(), p)
        assert w.descends and w.k == 1
    assert not descends(EndoMatrix(0, 1, 1, 0), 2).descends  # swap matrix
    w = descends(EndoMatrix(2, 0, 2, 0), 2)
    assert w.descends and w.k == 0
    assert descends(EndoMatrix(0, 2, 0, 0), 2).descends


def test_descends_symbolic_across_primes():
    # p * (any matrix) descends with k = 0; adding k to the diagonal keeps it
    rng = random.Random(41)
    for p in (2, 3, 5, 7, 11, 97):
        for _ in range(20):
            a, b, c, d, k = (rng.randrange(-50, 51) for _ in range(5))
            scaled = descends(EndoMatrix(p * a, p * b, p * c, p * d), p)
            assert scaled.descends and scaled.k == 0
            m = EndoMatrix(k + p * a, p * b, p * c, k + p * d)
            w = descends(m, p)
            assert w.descends and w.k == k % p


def test_descent_closed_under_composition():
    rng = random.Random(43)
    for p in (2, 3, 5):
        for _ in range(30):
            m1 = EndoMatrix(*(rng.randrange(-20, 21) for _ in range(4)))
            m2 = EndoMatrix(*(rng.randrange(-20, 21) for _ in range(4)))
            w1, w2 = descends(m1, p), descends(m2, p)
            if w1.descends and w2.descends:
                w = descends(m1.compose(m2), p)
                assert w.descends
                assert w.k == (w1.k * w2.k) % p


def test_kernel_preserved_examples():
    ctx = ctx_at(5)
    assert kernel_preserved(EndoMatrix.identity(), ctx)
    assert not kernel_preserved(EndoMatrix(0, 1, 1, 0), ctx)
    assert kernel_preserved(EndoMatrix(2, 0, 2, 0), ctx)


def test_equivalence_all_residue_matrices_p2():
    for ctx in contexts(10):
        for a, b, c, d in product(range(2), repeat=4):
            m = EndoMatrix(a, b, c, d)
            assert kernel_preserved(m, ctx) == descends(m, 2).descends, (ctx.curve.q, m)


def test_equivalence_lifted_matrices_p2():
    rng = random.Random(47)
    for ctx in contexts(4):
        for _ in range(40):
            m = EndoMatrix(*(rng.randrange(-30, 31) for _ in range(4)))
            assert kernel_preserved(m, ctx) == descends(m, 2).descends


def test_equivalence_full_3_torsion():
    ctx = full_p_torsion_context(3)
    for a, b, c, d in product(range(3), repeat=4):
        m = EndoMatrix(a, b, c, d)
        assert kernel_preserved(m, ctx) == descends(m, 3).descends, m


def test_apply_examples():
    ctx = ctx_at(7)
    r = (R.x % 7, R.y % 7)
    P = QuotientPoint(r, None)
    assert apply(EndoMatrix.identity(), P, ctx) == P
    image = apply(EndoMatrix(2, 0, 2, 0), P, ctx)
    two_r = ctx.curve.scalar_mul(2, r)
    assert image == QuotientPoint(two_r, two_r)
    # p * identity acts as scalar multiplication by p
    assert apply(EndoMatrix.scalar(2), P, ctx) == QuotientPoint(two_r, None)
    with pytest.raises(ValueError):
        apply(EndoMatrix(0, 1, 1, 0), P, ctx)


def test_apply_additive_and_composes():
    rng = random.Random(53)
    ctx = ctx_at(11)
    pts = ctx.curve.enumerate_points()
    descending = [
        m
        for m in (
            EndoMatrix(*(rng.randrange(-6, 7) for _ in range(4))) for _ in range(200)
        )
        if descends(m, 2).descends
    ][:10]
    for _ in range(20):
        s = QuotientPoint(rng.choice(pts), rng.choice(pts))
        t = QuotientPoint(rng.choice(pts), rng.choice(pts))
        m1, m2 = rng.choice(descending), rng.choice(descending)
        from suppscan.quotient import quotient_add

        lhs = apply(m1, quotient_add(ctx, s, t), ctx)
        rhs = quotient_add(ctx, apply(m1, s, ctx), apply(m1, t, ctx))
        assert quotient_equal(ctx, lhs, rhs)
        lhs = apply(m1.compose(m2), s, ctx)
        rhs = apply(m1, apply(m2, s, ctx), ctx)
        assert quotient_equal(ctx, lhs, rhs)


def test_find_weak_relation_default_curve():
    cert = find_weak_relation(2, contexts(8), R, 4)
    assert cert.kind == KIND_WEAK_FOUND
    assert cert.k == 2
    assert cert.f == EndoMatrix(2, 0, 2, 0)
    assert cert.transposed_k == 2
    assert cert.transposed_f == EndoMatrix(0, 2, 0, 0)


def test_weak_relation_reverifies_at_fresh_primes():
    search = contexts(8)
    cert = find_weak_relation(2, search, R, 4)
    used = {c.curve.q for c in search}
    fresh = [ctx_at(q) for q in primes_up_to(200) if q >= 31 and q not in used][:10]
    assert len(fresh) == 10
    assert relation_holds(cert.k, cert.f, fresh, R)
    assert relation_holds(cert.transposed_k, cert.transposed_f, fresh, R, transposed=True)
    # and a deliberately wrong relation fails
    assert not relation_holds(1, EndoMatrix.identity(), fresh, R)


def test_find_weak_relation_small_bound_fails():
    cert = find_weak_relation(2, contexts(6), R, 1)
    assert cert.kind == KIND_WEAK_NOT_FOUND
    assert cert.k is None and cert.f is None


def test_find_weak_relation_preconditions():
    with pytest.raises(ValueError):
        find_weak_relation(2, contexts(2), R, 4)
    with pytest.raises(ValueError):
        find_weak_relation(2, contexts(3), R, 0)


def test_no_medium_relation_small_p():
    cert = verify_no_medium_relation(2)
    assert cert.kind == KIND_MEDIUM_IMPOSSIBLE
    assert cert.residue_solutions == 0
    assert cert.residue_tuples == 32
    assert "p | 1" in cert.reason or "1 = p" in cert.reason
    assert verify_no_medium_relation(3).residue_tuples == 243


def test_no_medium_relation_literal_count_matches_structured():
    # the structured count must agree with the literal product wherever both run
    from suppscan.endo import _count_residue_solutions

    for p in (2, 3, 5, 7, 11):
        literal = 0
        for k, a, b, c, d in product(range(p), repeat=5):
            if (k + p * c + p * d) % p == 0 and (p * a + p * b + k) % p == 1:
                literal += 1
        solutions, tuples = _count_residue_solutions(p)
        assert (solutions, tuples) == (literal, p**5)


def test_no_medium_relation_all_primes_to_97():
    for p in [p for p in primes_up_to(97)]:
        cert = verify_no_medium_relation(p)
        assert cert.kind == KIND_MEDIUM_IMPOSSIBLE
        assert cert.residue_solutions == 0
        assert cert.residue_tuples == p**5
    with pytest.raises(ValueError):
        verify_no_medium_relation(4)
