"""Exponential-sum primitives and the brute-force / reduced local-density oracles.

The sums B_r attached to a lattice vector eta are computed three ways
elsewhere in the package (brute force, Gauss-sum reduction, closed
form); this module owns the first two.  All root-of-unity arithmetic
is exact: sums are accumulated as integer coefficient vectors over
powers of a fixed prime-power root of unity, and reduced to an integer
with a certified basis argument instead of floating point.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .exact_arith import QuadExt, kronecker_symbol, squarefree_decompose
from .quad_space import BudgetExceeded, EtaVector, ZeroQ

__all__ = [
    "NonIntegralResult",
    "CyclotomicAccumulator",
    "GaussSumValue",
    "bilinear_gauss_sum",
    "odd_quadratic_gauss_sum",
    "two_adic_gauss_sum",
    "ramanujan_sum",
    "tsum",
    "b_r_bruteforce",
    "b_r_reduced",
]

DEFAULT_BRUTE_BUDGET = 20_000_000
DEFAULT_REDUCED_BUDGET = 5_000_000
_CHUNK = 1 << 20


class NonIntegralResult(ArithmeticError):
    """A sum that must be a rational integer failed its certification.

    This signals a pairing-convention or Gauss-sum bug, never data error.
    """


def _vp(x: int, p: int) -> int | None:
    if x == 0:
        return None
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _inv_mod(a: int, m: int) -> int:
    return pow(a, -1, m)


# ---------------------------------------------------------------------------
# Exact cyclotomic accumulation
# ---------------------------------------------------------------------------

class CyclotomicAccumulator:
    """Integer combination sum_c counts[c] * zeta^c, zeta = exp(2 pi i / p^r).

    Reduction to an integer uses the tower Z[zeta] = (+) zeta^c0 Z[omega]
    over 0 <= c0 < p^(r-1), omega = zeta^(p^(r-1)): the value is rational
    iff every column (counts[i*p^(r-1) + c0])_i with c0 > 0 is constant
    and, for c0 = 0, the entries with i >= 1 agree; the value is then
    counts[0] - counts[p^(r-1)].  This certifies integrality exactly.
    """

    def __init__(self, p: int, r: int):
        if r < 0:
            raise ValueError("need r >= 0")
        self.p = p
        self.r = r
        self.modulus = p ** r
        self._counts: dict[int, int] = {}

    def add(self, residue: int, weight: int = 1) -> None:
        c = residue % self.modulus
        w = self._counts.get(c, 0) + weight
        if w:
            self._counts[c] = w
        elif c in self._counts:
            del self._counts[c]

    def add_dense(self, counts) -> None:
        for c, w in enumerate(counts):
            if w:
                self.add(c, int(w))

    def reduce_to_integer(self) -> int:
        if self.r == 0:
            return self._counts.get(0, 0)
        p, M = self.p, self.p ** (self.r - 1)
        columns: dict[int, dict[int, int]] = {}
        for c, w in self._counts.items():
            i, c0 = divmod(c, M)
            columns.setdefault(c0, {})[i] = w
        for c0, col in columns.items():
            lo = 1 if c0 == 0 else 0
            vals = {col.get(i, 0) for i in range(lo, p)}
            if len(vals) > 1:
                raise NonIntegralResult(
                    f"coefficients not Galois-invariant at column {c0} (mod {self.modulus})"
                )
        a0 = self._counts.get(0, 0)
        a1 = self._counts.get(M, 0)
        return a0 - a1

    def to_complex(self) -> complex:
        M = self.modulus
        return sum(w * cmath.exp(2j * cmath.pi * c / M) for c, w in self._counts.items())


def _reduce_dense_counts(counts: np.ndarray, p: int, r: int) -> int:
    """Dense-array version of CyclotomicAccumulator.reduce_to_integer."""
    if r == 0:
        return int(counts[0])
    M = p ** (r - 1)
    A = counts.reshape(p, M)
    if not (A[1:] == A[1]).all():
        raise NonIntegralResult("counts not Galois-invariant (dense)")
    if M > 1 and not (A[0, 1:] == A[1, 1:]).all():
        raise NonIntegralResult("counts not Galois-invariant (dense)")
    return int(A[0, 0]) - int(A[1, 0])


# ---------------------------------------------------------------------------
# Exact Gauss-sum values
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GaussSumValue:
    """Exact value scale * sqrt(radicand) * i^i_power * e^(2 pi i num/mod).

    scale is a (typically integral) rational, radicand is squarefree.
    For odd primes the i_power is tied to the radicand p through the
    classical sign of the quadratic Gauss sum (i appears iff p = 3 mod 4);
    for p = 2 the eighth roots of unity are carried in the phase.
    """

    scale: Fraction
    radicand: int = 1
    i_power: int = 0
    phase_num: int = 0
    phase_mod: int = 1

    @classmethod
    def zero(cls) -> "GaussSumValue":
        return cls(Fraction(0))

    @classmethod
    def integer(cls, n: int) -> "GaussSumValue":
        return cls(Fraction(n))

    @property
    def is_zero(self) -> bool:
        return not self.scale

    def __mul__(self, other: "GaussSumValue") -> "GaussSumValue":
        if self.is_zero or other.is_zero:
            return GaussSumValue.zero()
        scale = self.scale * other.scale
        d, f = squarefree_decompose(self.radicand * other.radicand)
        scale *= f
        ipow = (self.i_power + other.i_power) % 4
        mod = self.phase_mod * other.phase_mod // gcd(self.phase_mod, other.phase_mod)
        num = (
            self.phase_num * (mod // self.phase_mod)
            + other.phase_num * (mod // other.phase_mod)
        ) % mod
        g = gcd(num, mod)
        if g:
            num, mod = num // g, mod // g
        return GaussSumValue(scale, d, ipow, num, mod)

    def to_complex(self) -> complex:
        if self.is_zero:
            return 0j
        val = float(self.scale) * self.radicand ** 0.5
        val = val * (1j ** self.i_power)
        return val * cmath.exp(2j * cmath.pi * self.phase_num / self.phase_mod)

    def abs_squared(self) -> Fraction:
        return self.scale * self.scale * self.radicand


def bilinear_gauss_sum(x: int, a: int, b: int, p: int, r: int) -> GaussSumValue:
    """sum_{u,v mod p^r} e(2 pi i (x u v + a v + b u)/p^r), exactly.

    Three cases: p^(2r) when x = 0 mod p^r and p^r | a, b; the single
    root-of-unity p^(r+j) e(-2 pi i a'b'x0^{-1} / p^(r-j)) when
    j = v_p(x) < r and p^j | a, b; zero otherwise.
    """
    if r < 1:
        raise ValueError("need r >= 1")
    N = p ** r
    x %= N
    j = _vp(x, p)
    if j is None or j >= r:
        if a % N == 0 and b % N == 0:
            return GaussSumValue.integer(N * N)
        return GaussSumValue.zero()
    pj = p ** j
    if a % pj or b % pj:
        return GaussSumValue.zero()
    T = p ** (r - j)
    x0 = x // pj
    num = (-(a // pj) * (b // pj) * _inv_mod(x0, T)) % T
    g = gcd(num, T)
    return GaussSumValue(Fraction(N * pj), 1, 0, num // g, T // g)


def odd_quadratic_gauss_sum(x: int, a0: int, p: int, r: int) -> GaussSumValue:
    """sum_u e(2 pi i (x u^2 + 2 a0 u)/p^r) for odd p, exactly.

    For j = v_p(x) < r the value is a phase times p^((r+j)/2), with an
    extra (x0/p) sqrt((-1/p)) sqrt(p) when r - j is odd.
    """
    if p == 2:
        raise ValueError("use two_adic_gauss_sum for p = 2")
    if r < 1:
        raise ValueError("need r >= 1")
    N = p ** r
    x %= N
    j = _vp(x, p)
    if j is None or j >= r:
        if a0 % N == 0:
            return GaussSumValue.integer(N)
        return GaussSumValue.zero()
    pj = p ** j
    if a0 % pj:
        return GaussSumValue.zero()
    T = p ** (r - j)
    c = x // pj
    a0p = a0 // pj
    num = (-(a0p * a0p) * _inv_mod(c, T)) % T
    g = gcd(num, T)
    num, mod = num // g, T // g
    if (r - j) % 2 == 0:
        return GaussSumValue(Fraction(p ** ((r + j) // 2)), 1, 0, num, mod)
    scale = Fraction(kronecker_symbol(c, p) * p ** ((r + j - 1) // 2))
    ipow = 1 if p % 4 == 3 else 0
    return GaussSumValue(scale, p, ipow, num, mod)


def two_adic_gauss_sum(x: int, a: int, r: int) -> GaussSumValue:
    """G(x, a) = sum_{u mod 2^r} e(2 pi i (x u^2 + 2 a u)/2^r), exactly.

    Cases: 2^r when v_2(x) >= r and 2^(r-1) | a; 2^r when v_2(x) = r - 1
    and 2^(r-1) exactly divides 2a; the eighth-root-of-unity value
    2^((r+j)/2) e(-2 pi i a'^2 x0^{-1}/2^(r-j)) (2/x0)^(r-j) (1 + i^x0)
    when j <= r - 2 and 2^j | a; zero otherwise.
    """
    if r < 1:
        raise ValueError("need r >= 1")
    N = 1 << r
    x %= N
    j = _vp(x, 2)
    if j is None or j >= r:
        if a % (N // 2) == 0:
            return GaussSumValue.integer(N)
        return GaussSumValue.zero()
    if j == r - 1:
        if _vp(2 * a, 2) == j:
            return GaussSumValue.integer(N)
        return GaussSumValue.zero()
    pj = 1 << j
    if a % pj:
        return GaussSumValue.zero()
    T = r - j
    Tmod = 1 << T
    x0 = x // pj
    ap = a // pj
    num = (-(ap * ap) * _inv_mod(x0, Tmod)) % Tmod
    # fold (1 + i^x0) = sqrt(2) * zeta_8^(+-1) and the power of sqrt(2)
    # from 2^((r+j)/2) into (scale, radicand 2, phase mod 8)
    eighth = 1 if x0 % 4 == 1 else -1
    kron = kronecker_symbol(2, x0) if T % 2 else 1
    sqrt2_exp = (r + j) + 1          # exponent of sqrt(2) overall
    scale = Fraction(kron * 2 ** (sqrt2_exp // 2))
    radicand = 2 if sqrt2_exp % 2 else 1
    mod = Tmod if Tmod % 8 == 0 else 8 * Tmod // gcd(Tmod, 8)
    num8 = (num * (mod // Tmod) + eighth * (mod // 8)) % mod
    g = gcd(num8, mod)
    return GaussSumValue(scale, radicand, 0, num8 // g, mod // g)


def ramanujan_sum(t: int, A: int, p: int) -> int:
    """sum over units c mod p^t of e(2 pi i c A / p^t).

    Equals p^t - p^(t-1), -p^(t-1) or 0 according to whether p^t | A,
    p^(t-1) exactly divides A, or not.
    """
    if t < 1:
        raise ValueError("need t >= 1")
    pt = p ** t
    if A % pt == 0:
        return pt - pt // p
    if A % (pt // p) == 0:
        return -(pt // p)
    return 0


def tsum(T: int, msum: int) -> QuadExt:
    """sum_x e(-2 pi i x m / 2^T) (2/x)^T (1 + i^x) over x mod 2^T.

    Closed evaluation: for even T the value is 2^T - 2^(T-1), -2^(T-1),
    2^(T-1) (-1/m'), or 0 by the 2-valuation of m; for odd T it is
    2^(T - 3/2) (2/m') (1 + (-1/m')) when 2^(T-3) exactly divides m,
    else 0 (m' the odd part of m).
    """
    if T < 2:
        raise ValueError("need T >= 2")
    v = _vp(msum, 2)
    if T % 2 == 0:
        if v is None or v >= T:
            return QuadExt(2 ** T - 2 ** (T - 1))
        if v == T - 1:
            return QuadExt(-(2 ** (T - 1)))
        if v == T - 2:
            m1 = msum >> (T - 2)
            return QuadExt(2 ** (T - 1) * kronecker_symbol(-1, m1))
        return QuadExt(0)
    if v is not None and v == T - 3:
        m1 = msum >> (T - 3)
        unit = kronecker_symbol(2, m1) * (1 + kronecker_symbol(-1, m1))
        # 2^(T - 3/2) = 2^(T-2) * sqrt(2)
        return QuadExt(0, unit * 2 ** (T - 2), 2)
    return QuadExt(0)


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------

def b_r_bruteforce(
    eta: EtaVector,
    p: int,
    r: int,
    budget: int = DEFAULT_BRUTE_BUDGET,
) -> int:
    """B_r by literal enumeration of u in V'(Z/p^r) with q(u) = 0 mod p^r.

    Accumulates e(2 pi i (eta, u)/p^r) as exact root-of-unity counts
    (vectorized in chunks) and certifies integrality of the total.
    """
    if eta.q == 0:
        raise ZeroQ("q(eta) = 0")
    if r == 0:
        return 1
    space = eta.space
    N = p ** r
    dim = space.dim
    total = N ** dim
    if total > budget:
        raise BudgetExceeded(f"{total} vectors exceed budget {budget}")
    m = space.m
    odd = space.parity == "odd"
    coords = np.array(eta.coords, dtype=np.int64) % N
    counts = np.zeros(N, dtype=np.int64)
    # pairing coefficient of u_i is b_i for i < m, a_i for m <= i < 2m,
    # and 2 a_0 for the diagonal coordinate
    pair_coeff = np.empty(dim, dtype=np.int64)
    pair_coeff[:m] = coords[m : 2 * m]
    pair_coeff[m : 2 * m] = coords[:m]
    if odd:
        pair_coeff[2 * m] = (2 * coords[2 * m]) % N
    strides = [N ** i for i in range(dim)]
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        g = np.arange(start, stop, dtype=np.int64)
        u = np.empty((stop - start, dim), dtype=np.int64)
        for i in range(dim):
            u[:, i] = (g // strides[i]) % N
        q = np.zeros(stop - start, dtype=np.int64)
        for i in range(m):
            q += u[:, i] * u[:, m + i]
            q %= N
        if odd:
            q += u[:, 2 * m] * u[:, 2 * m]
            q %= N
        mask = q == 0
        pairing = np.zeros(stop - start, dtype=np.int64)
        for i in range(dim):
            if pair_coeff[i]:
                pairing += pair_coeff[i] * u[:, i]
                pairing %= N
        counts += np.bincount(pairing[mask], minlength=N)
    return _reduce_dense_counts(counts, p, r)


# ---------------------------------------------------------------------------
# Reduced (Gauss-sum) oracle
# ---------------------------------------------------------------------------

def _accumulate_value(acc: CyclotomicAccumulator, val: GaussSumValue, p: int) -> None:
    """Expand an exact Gauss-sum value into integer cyclotomic counts."""
    if val.is_zero:
        return
    if val.scale.denominator != 1:
        raise NonIntegralResult("non-integral scale in reduced sum")
    scale = val.scale.numerator
    M = acc.modulus
    if M % val.phase_mod:
        raise NonIntegralResult(f"phase modulus {val.phase_mod} does not divide {M}")
    base = val.phase_num * (M // val.phase_mod)
    if val.radicand == 1:
        if val.i_power % 2:
            raise NonIntegralResult("stray factor of i")
        sign = -1 if val.i_power == 2 else 1
        acc.add(base, sign * scale)
        return
    if p != 2:
        # sqrt(p) * i^[p=3 mod 4] is the classical Gauss sum
        # g_p(1) = sum_t (t/p) zeta_p^t
        if val.radicand != p or val.i_power != (1 if p % 4 == 3 else 0):
            raise NonIntegralResult("unexpected surd in odd-prime reduced sum")
        step = M // p
        for t in range(1, p):
            acc.add(base + t * step, kronecker_symbol(t, p) * scale)
        return
    # p = 2: sqrt(2) = zeta_8 + zeta_8^(-1); i^k folds into the phase
    if val.radicand != 2:
        raise NonIntegralResult("unexpected surd in 2-adic reduced sum")
    if M % 8:
        raise NonIntegralResult("2-adic accumulator needs modulus divisible by 8")
    base = (base + val.i_power * (M // 4)) % M
    acc.add(base + M // 8, scale)
    acc.add(base - M // 8, scale)


def b_r_reduced(
    eta: EtaVector,
    p: int,
    r: int,
    budget: int = DEFAULT_REDUCED_BUDGET,
) -> int:
    """B_r via the x-sum of composed Gauss-sum factors, divided by p^r.

    For each residue class x mod p^r the product of the m bilinear
    factors (and the diagonal quadratic factor in odd dimension) is an
    exact root of unity times an integer; the x-sum is reduced with the
    cyclotomic certification and divided by p^r, both exactly.
    """
    if eta.q == 0:
        raise ZeroQ("q(eta) = 0")
    if r == 0:
        return 1
    N = p ** r
    if N > budget:
        raise BudgetExceeded(f"{N} residue classes exceed budget {budget}")
    space = eta.space
    m = space.m
    odd = space.parity == "odd"
    a = eta.coords[:m]
    b = eta.coords[m : 2 * m]
    a0 = eta.coords[2 * m] if odd else None
    acc_mod_r = r if p != 2 else max(r, 3)
    acc = CyclotomicAccumulator(p, acc_mod_r)
    for x in range(N):
        term = GaussSumValue.integer(1)
        if odd:
            if p == 2:
                term = two_adic_gauss_sum(x, a0, r)
            else:
                term = odd_quadratic_gauss_sum(x, a0, p, r)
            if term.is_zero:
                continue
        for i in range(m):
            factor = bilinear_gauss_sum(x, a[i], b[i], p, r)
            if factor.is_zero:
                term = GaussSumValue.zero()
                break
            term = term * factor
        if term.is_zero:
            continue
        _accumulate_value(acc, term, p)
    total = acc.reduce_to_integer()
    quo, rem = divmod(total, N)
    if rem:
        raise NonIntegralResult(f"x-sum {total} not divisible by p^r = {N}")
    return quo
