import cmath
import random
from fractions import Fraction

import pytest

from conftest import make_eta, primitive_eta, random_eta_matrix
from siegelift.exp_sums import (
    CyclotomicAccumulator,
    GaussSumValue,
    NonIntegralResult,
    b_r_bruteforce,
    b_r_reduced,
    bilinear_gauss_sum,
    odd_quadratic_gauss_sum,
    ramanujan_sum,
    tsum,
    two_adic_gauss_sum,
)
from siegelift.quad_space import BudgetExceeded, ZeroQ, local_invariants


def zeta_pow(num, mod):
    return cmath.exp(2j * cmath.pi * num / mod)


# ---------------------------------------------------------------------------
# Gauss sums against their literal definitions
# ---------------------------------------------------------------------------

def literal_bilinear(x, a, b, p, r):
    N = p ** r
    return sum(zeta_pow(x * u * v + a * v + b * u, N) for u in range(N) for v in range(N))


def test_bilinear_examples():
    assert bilinear_gauss_sum(0, 0, 0, 3, 1).to_complex() == pytest.approx(9)
    assert bilinear_gauss_sum(1, 0, 0, 3, 1).to_complex() == pytest.approx(3)
    v = bilinear_gauss_sum(1, 1, 1, 3, 1).to_complex()
    assert v == pytest.approx(3 * zeta_pow(-1, 3), abs=1e-12)
    assert v == pytest.approx(literal_bilinear(1, 1, 1, 3, 1), abs=1e-10)


@pytest.mark.parametrize("p,r", [(2, 1), (2, 2), (3, 1), (5, 1), (3, 2), (2, 3)])
def test_bilinear_matches_literal_sum(p, r):
    N = p ** r
    rng = random.Random(p * 1000 + r)
    triples = [(x, a, b) for x in range(N) for a in range(N) for b in range(N)]
    if len(triples) > 300:
        triples = rng.sample(triples, 300)
    for x, a, b in triples:
        got = bilinear_gauss_sum(x, a, b, p, r).to_complex()
        want = literal_bilinear(x, a, b, p, r)
        assert abs(got - want) < 1e-7 * max(1.0, abs(want))


def test_ramanujan_examples():
    assert ramanujan_sum(1, 0, 5) == 4
    assert ramanujan_sum(1, 1, 5) == -1
    assert ramanujan_sum(2, 5, 5) == -5


@pytest.mark.parametrize("p,t", [(2, 1), (2, 3), (3, 1), (3, 2), (5, 1), (5, 3)])
def test_ramanujan_literal(p, t):
    pt = p ** t
    for A in range(p ** (t + 1)):
        lit = sum(zeta_pow(c * A, pt) for c in range(pt) if c % p)
        assert abs(ramanujan_sum(t, A, p) - lit) < 1e-8


def literal_quadratic(x, a0, p, r):
    N = p ** r
    return sum(zeta_pow(x * u * u + 2 * a0 * u, N) for u in range(N))


def test_odd_quadratic_examples():
    g = odd_quadratic_gauss_sum(1, 0, 5, 1)
    assert g.abs_squared() == 5
    assert abs(g.to_complex() - literal_quadratic(1, 0, 5, 1)) < 1e-10
    assert odd_quadratic_gauss_sum(1, 0, 3, 2).to_complex() == pytest.approx(3)
    # x = 3 = 0 mod 3, r = 1: the j >= r branch requires p^r | a0
    assert odd_quadratic_gauss_sum(3, 1, 3, 1).is_zero
    assert abs(literal_quadratic(3, 1, 3, 1)) < 1e-10


@pytest.mark.parametrize("p,r", [(3, 1), (3, 2), (5, 1), (7, 1), (5, 2)])
def test_odd_quadratic_literal(p, r):
    N = p ** r
    for x in range(N):
        for a0 in range(N):
            got = odd_quadratic_gauss_sum(x, a0, p, r).to_complex()
            want = literal_quadratic(x, a0, p, r)
            assert abs(got - want) < 1e-7 * max(1.0, abs(want))


def test_two_adic_examples():
    assert two_adic_gauss_sum(4, 2, 2).to_complex() == pytest.approx(4)
    assert two_adic_gauss_sum(1, 0, 2).to_complex() == pytest.approx(2 + 2j)
    # (x=1, a=1, r=2): the literal sum is 2 - 2i (the source lemma's main
    # branch applies: 2^(j+1) = 2 does divide 2a = 2)
    got = two_adic_gauss_sum(1, 1, 2).to_complex()
    assert got == pytest.approx(literal_quadratic(1, 1, 2, 2), abs=1e-12)
    assert got == pytest.approx(2 - 2j)


@pytest.mark.parametrize("r", [1, 2, 3, 4, 5])
def test_two_adic_literal(r):
    N = 2 ** r
    for x in range(N):
        for a in range(N):
            got = two_adic_gauss_sum(x, a, r).to_complex()
            want = literal_quadratic(x, a, 2, r)
            assert abs(got - want) < 1e-7 * max(1.0, abs(want))


def test_tsum_examples():
    assert tsum(4, 16) == 8
    assert tsum(2, 2) == Fraction(-2)
    assert tsum(3, 3) == 0


@pytest.mark.parametrize("T", [2, 3, 4, 5, 6])
def test_tsum_literal(T):
    from siegelift.exact_arith import kronecker_symbol

    N = 2 ** T
    for m in range(N):
        lit = sum(
            zeta_pow(-x * m, N) * kronecker_symbol(2, x) ** T * (1 + 1j ** x)
            for x in range(N)
        )
        got = complex(float(tsum(T, m)), 0.0)
        assert abs(got - lit) < 1e-7, (T, m, got, lit)


# ---------------------------------------------------------------------------
# Cyclotomic accumulator
# ---------------------------------------------------------------------------

def test_accumulator_integer_reduction():
    acc = CyclotomicAccumulator(3, 1)
    acc.add(0, 21)
    acc.add(1, 30)
    acc.add(2, 30)
    assert acc.reduce_to_integer() == -9


def test_accumulator_rejects_irrational():
    acc = CyclotomicAccumulator(3, 1)
    acc.add(1, 1)
    with pytest.raises(NonIntegralResult):
        acc.reduce_to_integer()
    acc2 = CyclotomicAccumulator(2, 2)
    acc2.add(1, 1)  # a bare i
    with pytest.raises(NonIntegralResult):
        acc2.reduce_to_integer()


def test_gauss_value_multiplication():
    a = GaussSumValue(Fraction(2), 2, 1, 1, 8)
    b = GaussSumValue(Fraction(3), 2, 0, 3, 8)
    c = a * b
    assert c.scale == 12 and c.radicand == 1
    assert abs(c.to_complex() - a.to_complex() * b.to_complex()) < 1e-12


# ---------------------------------------------------------------------------
# The B_r oracles
# ---------------------------------------------------------------------------

def test_b_r_zero_r_is_one():
    assert b_r_bruteforce(primitive_eta(4, 7), 3, 0) == 1
    assert b_r_reduced(primitive_eta(3, 7), 2, 0) == 1


def test_b_r_even_first_coefficients():
    # n = 4 (m = 3): primitive eta, p coprime to q: B_1 = -p^(m-1);
    # p | q: B_1 = p^m - p^(m-1)
    assert b_r_bruteforce(primitive_eta(4, 1), 3, 1) == -9
    assert b_r_bruteforce(primitive_eta(4, 3), 3, 1) == 27 - 9
    assert b_r_reduced(primitive_eta(4, 1), 3, 1) == -9
    assert b_r_reduced(primitive_eta(4, 3), 3, 1) == 18


def test_b_r_odd_special_case():
    # q(eta) = 1 at p = 3: J = 1 + (q/p) p^(m-s), so B_1 = p^m = 9
    eta = make_eta(3, (1, 1, 1, 0, 0))
    assert eta.q == 1
    assert b_r_reduced(eta, 3, 1) == 9
    assert b_r_bruteforce(eta, 3, 1) == 9
    # nonresidue: q = 2 at p = 3 flips the sign
    eta2 = make_eta(3, (1, 0, 2, 0, 0))
    assert b_r_reduced(eta2, 3, 1) == -9


def test_b_r_rejects_zero_q():
    eta = make_eta(4, (1, 0, 0, 0, 0, 1))
    with pytest.raises(ZeroQ):
        b_r_bruteforce(eta, 2, 1)


def test_b_r_budget():
    with pytest.raises(BudgetExceeded):
        b_r_bruteforce(primitive_eta(10, 1), 5, 2, budget=1000)
    with pytest.raises(BudgetExceeded):
        b_r_reduced(primitive_eta(4, 1), 5, 9, budget=1000)


def test_b_r_tail_vanishes():
    # r > 2k + k' + 3 forces B_r = 0, any parity
    for n, p, q in ((3, 2, 5), (3, 3, 9), (4, 2, 12)):
        eta = primitive_eta(n, q)
        inv = local_invariants(eta, p)
        r = inv.d + 4
        assert b_r_reduced(eta, p, r) == 0


@pytest.mark.parametrize("p,r", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)])
def test_reduced_matches_bruteforce(p, r):
    count = 0
    for n in (4, 3):
        for eta in random_eta_matrix(n, p, 6, seed=17):
            if (p ** r) ** eta.space.dim > 20_000_000:
                continue
            assert b_r_reduced(eta, p, r) == b_r_bruteforce(eta, p, r)
            count += 1
    assert count >= 5


def test_b_r_depends_only_on_invariants_odd_p():
    # pairs with equal (k, k', q1 mod p^(r+2)) share B_r (p odd; the
    # 2-adic odd-dimension case genuinely needs more than the invariants)
    pairs_checked = 0
    for n in (4, 3):
        for p in (3, 5):
            for k in (0, 1):
                for kp in (0, 1, 2):
                    for u in (1, 2):
                        for r in (1, 2):
                            c = p ** kp * u
                            variants = []
                            sp_dim = n + 2
                            m = sp_dim // 2
                            v1 = [0] * sp_dim
                            v1[0], v1[m] = 1, c
                            variants.append(v1)
                            v2 = [0] * sp_dim
                            v2[1], v2[m + 1] = 1, c
                            variants.append(v2)
                            v3 = [0] * sp_dim
                            # same q spread over two hyperbolic pairs
                            v3[0], v3[m] = 1, c - 1
                            v3[1], v3[m + 1] = 1, 1
                            if c - 1 != 0 and (c - 1) % p:
                                variants.append(v3)
                            v4 = [0] * sp_dim
                            v4[0], v4[m] = 1, c + p ** (kp + r + 2)
                            variants.append(v4)
                            vals = set()
                            for v in variants:
                                eta = make_eta(n, [x * p ** k for x in v])
                                inv = local_invariants(eta, p)
                                assert (inv.k, inv.kprime) == (k, kp)
                                vals.add(b_r_reduced(eta, p, r))
                            assert len(vals) == 1, (n, p, k, kp, u, r, vals)
                            pairs_checked += len(variants) - 1
    assert pairs_checked >= 50
