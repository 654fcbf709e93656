import random
from fractions import Fraction

import pytest

from conftest import make_eta
from siegelift.exact_arith import kronecker_symbol, squarefree_decompose
from siegelift.quad_space import (
    BudgetExceeded,
    DiscDecomposition,
    EtaVector,
    SplitQuadraticSpace,
    ZeroQ,
    chi_eta,
    disc_decompose,
    enumerate_residue_vectors,
    local_invariants,
    qform,
)


def test_qform_examples():
    sp6 = SplitQuadraticSpace(4)  # dim 6, m = 3
    assert qform(sp6, (1, 0, 0, 1, 0, 0)) == 1
    sp5 = SplitQuadraticSpace(3)  # dim 5, m = 2, odd
    assert qform(sp5, (0, 0, 0, 0, 3)) == 9
    assert qform(sp6, (2, 3, 0, 5, 7, 0)) == 31  # 2*5 + 3*7


def test_qform_dimension_mismatch():
    with pytest.raises(ValueError):
        qform(SplitQuadraticSpace(4), (1, 2, 3))


def test_qform_antidiagonal_basis_change():
    # The split pairing (x_1..x_m, y_1..y_m) agrees with the antidiagonal
    # Gram matrix antidiag(1,...,1) (with a 2 in the center seat for odd
    # dimension) after reversing the second block of coordinates; the
    # permutation is documented in docs/FORMATS.md.
    rng = random.Random(11)
    for n in (4, 3, 5, 6):
        sp = SplitQuadraticSpace(n)
        m = sp.m
        for _ in range(50):
            v = [rng.randint(-6, 6) for _ in range(sp.dim)]
            if sp.parity == "even":
                anti = v[:m] + v[m:][::-1]
                gram = sum(anti[i] * anti[2 * m - 1 - i] for i in range(2 * m))
                assert qform(sp, v) == gram // 2 and gram % 2 == 0
            else:
                anti = v[:m] + [v[-1]] + v[m : 2 * m][::-1]
                gram = sum(anti[i] * anti[2 * m - i] for i in range(2 * m + 1)) + anti[m] ** 2
                assert 2 * qform(sp, v) == gram


def test_eta_vector_validation():
    sp = SplitQuadraticSpace(4)
    with pytest.raises(ValueError):
        EtaVector(sp, (0,) * 6)
    with pytest.raises(ValueError):
        EtaVector(sp, (1, 2))
    with pytest.raises(ValueError):
        SplitQuadraticSpace(2)


def test_local_invariants_examples():
    eta = make_eta(4, (1, 0, 0, 1, 0, 0))
    inv = local_invariants(eta, 3)
    assert (inv.k, inv.kprime, inv.q1) == (0, 0, 1)
    eta3 = make_eta(4, (3, 0, 0, 3, 0, 0))
    inv3 = local_invariants(eta3, 3)
    assert (inv3.k, inv3.kprime, inv3.q1) == (1, 0, 1)
    # odd: q(eta) = 5 at p = 5: 2k + k' odd => chi = 0
    eta5 = make_eta(3, (1, 0, 5, 0, 0))
    inv5 = local_invariants(eta5, 5)
    assert (inv5.k, inv5.kprime, inv5.q1, inv5.chi) == (0, 1, 1, 0)


def test_local_invariants_zero_q():
    eta = make_eta(4, (1, 0, 0, 0, 0, 1))  # q = 0 in split coordinates
    assert eta.q == 0
    with pytest.raises(ZeroQ):
        local_invariants(eta, 3)


def test_scaling_raises_k_by_one():
    rng = random.Random(2)
    for n in (4, 3, 5):
        sp = SplitQuadraticSpace(n)
        for p in (2, 3, 5):
            for _ in range(10):
                coords = [rng.randint(-4, 4) for _ in range(sp.dim)]
                eta = EtaVector(sp, tuple(coords)) if any(coords) else None
                if eta is None or eta.q == 0:
                    continue
                inv = local_invariants(eta, p)
                scaled = local_invariants(eta.scaled(p), p)
                assert scaled.k == inv.k + 1
                assert scaled.kprime == inv.kprime
                assert scaled.q1 == inv.q1


def test_disc_decompose_examples():
    d1 = disc_decompose(1)
    assert (d1.d_eta, d1.f_eta, d1.epsilon) == (1, 1, 1)
    d12 = disc_decompose(12)
    assert (d12.d_eta, d12.f_eta, d12.epsilon) == (3, 2, -1)
    d8 = disc_decompose(8)
    assert (d8.d_eta, d8.f_eta, d8.epsilon) == (8, 1, 1)


def test_disc_decompose_range():
    # d * f^2 = N with d the absolute value of a fundamental discriminant;
    # f is a half-integer exactly when v_2(N) = 1
    from siegelift.exact_arith import is_fundamental_discriminant

    for N in range(1, 10001):
        dec = disc_decompose(N)
        assert dec.d_eta * dec.f_eta ** 2 == N
        assert is_fundamental_discriminant(dec.signed_disc)
        v2 = (N & -N).bit_length() - 1
        if dec.f_eta.denominator != 1:
            assert v2 == 1 and dec.f_eta.denominator == 2


def test_chi_eta_examples():
    eta = make_eta(3, (1, 0, 1, 0, 0))  # q = 1
    inv = local_invariants(eta, 3)
    assert chi_eta(inv) == 1
    # p = 2, q1 = 1 mod 8, 2k+k' even: +1
    inv2 = local_invariants(make_eta(3, (1, 0, 9, 0, 0)), 2)
    assert chi_eta(inv2) == 1
    # p = 2, 2k+k' odd: 0
    inv2o = local_invariants(make_eta(3, (1, 0, 2, 0, 0)), 2)
    assert chi_eta(inv2o) == 0
    # the convention split at p = 2: q1 = 3 mod 4 gives 0 in validated
    # mode but a unit in the literal Kronecker mode
    inv3 = local_invariants(make_eta(3, (1, 0, 3, 0, 0)), 2)
    assert chi_eta(inv3, mode="validated") == 0
    assert chi_eta(inv3, mode="kronecker") == kronecker_symbol(3, 2) == -1


def test_chi_eta_from_disc():
    dec = disc_decompose(12)  # signed disc -3
    assert chi_eta(dec, 5) == kronecker_symbol(-3, 5)
    with pytest.raises(ValueError):
        chi_eta(dec)


def test_enumerate_residue_vectors_counts():
    assert sum(1 for _ in enumerate_residue_vectors(SplitQuadraticSpace(4), 2, 1)) == 2 ** 6
    assert sum(1 for _ in enumerate_residue_vectors(SplitQuadraticSpace(3), 3, 1)) == 3 ** 5
    assert (
        sum(1 for _ in enumerate_residue_vectors(SplitQuadraticSpace(4), 3, 2))
        == 9 ** 6
    )
    with pytest.raises(BudgetExceeded):
        list(enumerate_residue_vectors(SplitQuadraticSpace(10), 5, 3))


def test_enumerate_residue_vectors_unique():
    seen = set(enumerate_residue_vectors(SplitQuadraticSpace(3), 2, 1))
    assert len(seen) == 2 ** 5
