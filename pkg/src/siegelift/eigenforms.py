"""Level-one elliptic modular forms: q-expansions, Hecke operators, eigen data.

Expansions are exact (Fraction coefficients).  Eigenvalues are stored
unnormalized: lambda(m) is the integer coefficient of the normalized
eigenform, so the Satake relation reads
lambda(p)/p^((weight-1)/2) = alpha_p + alpha_p^-1 and is kept symbolic
(the half-integral power of p never becomes a float on exact paths).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact_arith import QuadExt, bernoulli_number

__all__ = [
    "QExpansion",
    "EigenformData",
    "UnsupportedWeight",
    "eisenstein_qexp",
    "delta_qexp",
    "miller_basis",
    "hecke_tp",
    "eigenform",
    "satake_hecke_power",
]

ONE_DIM_CUSP_WEIGHTS = (12, 16, 18, 20, 22, 26)


class UnsupportedWeight(ValueError):
    """Weight outside the supported (one-dimensional cusp space) range."""


@dataclass(frozen=True)
class QExpansion:
    """q-expansion a(0) + a(1) q + ... + a(N) q^N of a weight-k form."""

    weight: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def precision(self) -> int:
        return len(self.coeffs) - 1

    def a(self, n: int) -> Fraction:
        if n > self.precision:
            raise IndexError(f"coefficient {n} beyond precision {self.precision}")
        return self.coeffs[n]

    def __mul__(self, other: "QExpansion") -> "QExpansion":
        N = min(self.precision, other.precision)
        out = [Fraction(0)] * (N + 1)
        for i, ci in enumerate(self.coeffs[: N + 1]):
            if not ci:
                continue
            for j in range(N + 1 - i):
                cj = other.coeffs[j]
                if cj:
                    out[i + j] += ci * cj
        return QExpansion(self.weight + other.weight, tuple(out))

    def __add__(self, other: "QExpansion") -> "QExpansion":
        if self.weight != other.weight:
            raise ValueError("cannot add forms of different weights")
        N = min(self.precision, other.precision)
        return QExpansion(
            self.weight,
            tuple(self.coeffs[i] + other.coeffs[i] for i in range(N + 1)),
        )

    def scale(self, c) -> "QExpansion":
        c = Fraction(c)
        return QExpansion(self.weight, tuple(c * x for x in self.coeffs))

    def truncate(self, N: int) -> "QExpansion":
        return QExpansion(self.weight, self.coeffs[: N + 1])

    @property
    def valuation(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None


def _sigma(n: int, k: int) -> int:
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** k
            e = n // d
            if e != d:
                total += e ** k
        d += 1
    return total


def eisenstein_qexp(k: int, N: int) -> QExpansion:
    """E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n for k = 4 or 6."""
    if k not in (4, 6):
        raise UnsupportedWeight("only E_4 and E_6 generate the level-one ring")
    c = -Fraction(2 * k) / bernoulli_number(k)
    coeffs = [Fraction(1)] + [c * _sigma(n, k - 1) for n in range(1, N + 1)]
    return QExpansion(k, tuple(coeffs))


def delta_qexp(N: int) -> QExpansion:
    """The discriminant cusp form (E_4^3 - E_6^2)/1728, integer coefficients."""
    e4 = eisenstein_qexp(4, N)
    e6 = eisenstein_qexp(6, N)
    diff = e4 * e4 * e4 + (e6 * e6).scale(-1)
    out = diff.scale(Fraction(1, 1728))
    assert all(c.denominator == 1 for c in out.coeffs)
    return QExpansion(12, out.coeffs)


def _monomial_basis(k: int, N: int) -> list[QExpansion]:
    e4 = eisenstein_qexp(4, N)
    e6 = eisenstein_qexp(6, N)
    delta = delta_qexp(N)
    out = []
    for c in range(k // 12 + 1):
        rem = k - 12 * c
        for b in range(rem // 6 + 1):
            rest = rem - 6 * b
            if rest % 4:
                continue
            a = rest // 4
            out.append(QExpansion(k, _power_product(e4, a, e6, b, delta, c, N)))
    return out


def _power_product(e4, a, e6, b, delta, c, N):
    acc = QExpansion(0, (Fraction(1),) + (Fraction(0),) * N)
    for _ in range(a):
        acc = acc * e4
    for _ in range(b):
        acc = acc * e6
    for _ in range(c):
        acc = acc * delta
    return acc.coeffs


def dim_modular_forms(k: int) -> int:
    if k < 0 or k % 2:
        return 0
    if k % 12 == 2:
        return k // 12
    return k // 12 + 1


def miller_basis(k: int, N: int, cusp: bool = False) -> list[QExpansion]:
    """Echelonized basis of level-one weight-k forms, leading terms q^0, q^1, ...

    With cusp=True the constant-term row is dropped, leaving a basis of
    the cusp subspace.
    """
    if k % 2 or k < 4:
        raise UnsupportedWeight("weight must be even and >= 4")
    dim = dim_modular_forms(k)
    if N < dim:
        raise ValueError("precision too small to echelonize")
    rows = _monomial_basis(k, N)
    # Gaussian elimination to reduced echelon form by leading exponent.
    basis: list[QExpansion] = []
    for pivot in range(dim):
        cand = None
        for f in rows:
            if f.valuation == pivot:
                cand = f
                break
        if cand is None:
            continue
        cand = cand.scale(1 / cand.a(pivot))
        rows = [
            f + cand.scale(-f.a(pivot)) if f is not cand else f for f in rows
        ]
        rows = [f for f in rows if f.valuation is not None and f is not cand]
        basis.append(cand)
    # back-substitute to reduced echelon form
    for i in range(len(basis) - 1, -1, -1):
        for j in range(i):
            c = basis[j].a(i)
            if c:
                basis[j] = basis[j] + basis[i].scale(-c)
    assert len(basis) == dim
    if cusp:
        return [f for f in basis if f.valuation is not None and f.valuation >= 1]
    return basis


def hecke_tp(f: QExpansion, p: int) -> QExpansion:
    """(T_p f)(n) = a(pn) + p^(k-1) a(n/p); output precision floor(N/p)."""
    N_out = f.precision // p
    if N_out < 1:
        raise ValueError("insufficient precision for T_p")
    k = f.weight
    out = []
    for n in range(N_out + 1):
        c = f.a(p * n)
        if n % p == 0:
            c += Fraction(p) ** (k - 1) * f.a(n // p)
        out.append(c)
    return QExpansion(k, tuple(out))


@dataclass(frozen=True)
class EigenformData:
    """Normalized Hecke eigenform: weight and integral lambda(1..N)."""

    weight: int
    lambdas: tuple[int, ...]

    @property
    def precision(self) -> int:
        return len(self.lambdas)

    def lam(self, m: int) -> int:
        """lambda(m), extended by multiplicativity and the Hecke recursion
        beyond the stored range."""
        if m < 1:
            raise ValueError("index must be >= 1")
        if m <= self.precision:
            return self.lambdas[m - 1]
        total = 1
        mm = m
        d = 2
        while d * d <= mm:
            if mm % d == 0:
                e = 0
                while mm % d == 0:
                    mm //= d
                    e += 1
                total *= satake_hecke_power(self, d, e)
            d += 1
        if mm > 1:
            total *= satake_hecke_power(self, mm, 1)
        return total

    def satake_t(self, p: int) -> tuple[int, int]:
        """alpha_p + 1/alpha_p as the exact symbol (lambda(p), weight):
        the value is lambda(p) / p^((weight-1)/2), never materialized
        as a float on exact paths."""
        return (self.lam(p), self.weight)

    def satake_t_surd(self, p: int) -> QuadExt:
        """The same value exactly, as lambda(p) sqrt(p) / p^(weight/2)."""
        return QuadExt(0, Fraction(self.lam(p), p ** (self.weight // 2)), p)


def eigenform(k: int, N: int = 64) -> EigenformData:
    """The unique normalized cusp eigenform of weight k (dim S_k = 1).

    Built as Delta * E_{k-12} (a normalized generator of the
    one-dimensional cusp space, hence automatically an eigenform); the
    eigen property under T_2 and T_3 is asserted on the expansion.
    """
    if k not in ONE_DIM_CUSP_WEIGHTS:
        raise UnsupportedWeight(f"dim S_{k} != 1")
    N_build = max(N, 12)
    delta = delta_qexp(3 * N_build)
    rest = k - 12
    e4 = eisenstein_qexp(4, 3 * N_build)
    e6 = eisenstein_qexp(6, 3 * N_build)
    f = delta
    exps = {0: (0, 0), 4: (1, 0), 6: (0, 1), 8: (2, 0), 10: (1, 1), 14: (2, 1)}[rest]
    for _ in range(exps[0]):
        f = f * e4
    for _ in range(exps[1]):
        f = f * e6
    for p in (2, 3):
        tf = hecke_tp(f, p)
        lam_p = f.a(p)
        for nn in range(1, tf.precision + 1):
            assert tf.a(nn) == lam_p * f.a(nn), "eigen property failed"
    lambdas = []
    for m in range(1, N + 1):
        c = f.a(m)
        assert c.denominator == 1
        lambdas.append(c.numerator)
    assert lambdas[0] == 1
    return EigenformData(weight=k, lambdas=tuple(lambdas))


def satake_hecke_power(f: EigenformData, p: int, j: int) -> int:
    """lambda(p^j) from the recursion lam(p^(j+1)) = lam(p) lam(p^j)
    - p^(k-1) lam(p^(j-1))."""
    if j < 0:
        raise ValueError("power must be >= 0")
    if j == 0:
        return 1
    lam_p = f.lam(p) if p <= f.precision else None
    if lam_p is None:
        raise ValueError(f"lambda({p}) beyond stored precision")
    prev, cur = 1, lam_p
    pk = p ** (f.weight - 1)
    for _ in range(j - 1):
        prev, cur = cur, lam_p * cur - pk * prev
    return cur
