"""Exact rational, Laurent-polynomial and quadratic-surd arithmetic.

Everything in this module is exact: rationals are ``fractions.Fraction``,
Laurent polynomials carry Fraction (or quadratic-surd) coefficients with
finite support, and pi-powers are tracked symbolically.

Conventions fixed here once and used everywhere else:

* Bernoulli numbers use B_1 = -1/2 ("first" convention), so that
  zeta(1-j) = -B_j / j holds for j >= 2 and the generalized Bernoulli
  numbers defined through Bernoulli polynomials give
  L(1-j, chi) = -B_{j,chi} / j for every primitive chi (for the trivial
  character and j = 1 the finite-sum definition yields B_1(1) = +1/2,
  which is exactly what makes L(0, 1) = zeta(0) = -1/2 come out right).
* Half-integral pi exponents are stored as doubled integers.
* Radicands of quadratic surds are reduced to their squarefree kernel.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Iterator, Mapping, Union

Rational = Fraction

__all__ = [
    "Rational",
    "QuadExt",
    "LaurentPolynomial",
    "PiScaledRational",
    "InexactDivision",
    "NotSymmetric",
    "kronecker_symbol",
    "bernoulli_number",
    "bernoulli_polynomial",
    "is_fundamental_discriminant",
    "generalized_bernoulli",
    "dirichlet_L_negative",
    "zeta_rational_part",
    "squarefree_decompose",
    "laurent_divide_exact",
    "laurent_symmetric_rewrite",
]


class InexactDivision(ArithmeticError):
    """Laurent division left a nonzero remainder.

    Raised by :func:`laurent_divide_exact`; carries the remainder so the
    Siegel-series tests can report exactly how a factorization failed.
    """

    def __init__(self, remainder: "LaurentPolynomial"):
        super().__init__(f"division is inexact, remainder {remainder}")
        self.remainder = remainder


class NotSymmetric(ValueError):
    """A Laurent polynomial expected to satisfy P(X) = P(1/X) does not."""


# ---------------------------------------------------------------------------
# Kronecker symbol
# ---------------------------------------------------------------------------

def kronecker_symbol(a: int, n: int) -> int:
    """Full Kronecker symbol (a/n): n may be zero, negative or even.

    Matches the Legendre symbol when n is an odd prime, and uses the
    mod-8 rule (a/2) = 0, +1, -1 for a even, a = +-1 (8), a = +-3 (8).
    """
    a = int(a)
    n = int(n)
    if n == 0:
        return 1 if a in (1, -1) else 0
    k = 1
    if n < 0:
        n = -n
        if a < 0:
            k = -1
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 == 1 and a % 8 in (3, 5):
            k = -k
    # Jacobi symbol (a/n) for odd positive n via reciprocity.
    a %= n
    while a != 0:
        v = 0
        while a % 2 == 0:
            a //= 2
            v += 1
        if v % 2 == 1 and n % 8 in (3, 5):
            k = -k
        if a % 4 == 3 and n % 4 == 3:
            k = -k
        a, n = n % a, a
    return k if n == 1 else 0


# ---------------------------------------------------------------------------
# Bernoulli machinery
# ---------------------------------------------------------------------------

_BERNOULLI_CACHE: list[Fraction] = [Fraction(1)]


def bernoulli_number(j: int) -> Fraction:
    """B_j with the convention B_1 = -1/2, via the defining recurrence."""
    if j < 0:
        raise ValueError("Bernoulli index must be nonnegative")
    while len(_BERNOULLI_CACHE) <= j:
        m = len(_BERNOULLI_CACHE)
        # sum_{i<m+1, i<=m} C(m+1, i) B_i = 0  for m >= 1
        s = sum(Fraction(comb(m + 1, i)) * _BERNOULLI_CACHE[i] for i in range(m))
        _BERNOULLI_CACHE.append(-s / (m + 1))
    return _BERNOULLI_CACHE[j]


def bernoulli_polynomial(j: int, x: Fraction) -> Fraction:
    """B_j(x) = sum_i C(j,i) B_i x^(j-i), same B_1 = -1/2 convention."""
    x = Fraction(x)
    return sum(
        (Fraction(comb(j, i)) * bernoulli_number(i)) * x ** (j - i)
        for i in range(j + 1)
    )


def is_fundamental_discriminant(D: int) -> bool:
    """True for D = 1 and the discriminants of quadratic fields."""
    if D == 1:
        return True
    if D % 4 == 1:
        return _is_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and _is_squarefree(m)
    return False


def _is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        while n % d == 0:
            n //= d
        d += 1
    return True


def generalized_bernoulli(j: int, D: int) -> Fraction:
    """Generalized Bernoulli number B_{j,chi_D} for a fundamental D.

    Computed from the finite sum f^(j-1) * sum_{a=1..f} chi(a) B_j(a/f)
    with f = |D| and chi = kronecker_symbol(D, .).  For D = 1 this gives
    B_j(1), which equals B_j except at j = 1 where it is +1/2 (the sign
    flip is deliberate: it makes -B_{j,chi}/j equal L(1-j, chi) for the
    trivial character too).
    """
    if j < 1:
        raise ValueError("index must be >= 1")
    if not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a fundamental discriminant")
    f = abs(D)
    total = sum(
        kronecker_symbol(D, a) * bernoulli_polynomial(j, Fraction(a, f))
        for a in range(1, f + 1)
    )
    return Fraction(f) ** (j - 1) * total


def dirichlet_L_negative(one_minus_j: int, D: int) -> Fraction:
    """L(1-j, chi_D) = -B_{j,chi_D}/j exactly, for 1-j <= 0.

    D = 1 gives zeta(1-j); in particular zeta(0) = -1/2 and
    zeta(-2m) = 0 for m >= 1.
    """
    if one_minus_j > 0:
        raise ValueError("argument must be <= 0")
    j = 1 - one_minus_j
    return -generalized_bernoulli(j, D) / j


def zeta_rational_part(k: int) -> Fraction:
    """zeta(k) / pi^k for even k >= 2, as an exact rational.

    zeta(2m) = (-1)^(m+1) B_{2m} (2 pi)^(2m) / (2 (2m)!).
    """
    if k < 2 or k % 2 != 0:
        raise ValueError("closed form only for even k >= 2")
    m = k // 2
    return (
        Fraction((-1) ** (m + 1))
        * bernoulli_number(k)
        * Fraction(2) ** k
        / (2 * math.factorial(k))
    )


# ---------------------------------------------------------------------------
# Quadratic surds
# ---------------------------------------------------------------------------

def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write n > 0 as s * f^2 with s squarefree; returns (s, f)."""
    if n <= 0:
        raise ValueError("need a positive integer")
    s, f = 1, 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            if e % 2:
                s *= d
            f *= d ** (e // 2)
        d += 1
    return s * n, f


ScalarLike = Union[int, Fraction, "QuadExt"]


class QuadExt:
    """Exact element of the multi-quadratic tower: a finite sum
    ``sum_d c_d * sqrt(d)`` with squarefree positive radicands d and
    rational coefficients c_d.

    The common case is a single extension a + b*sqrt(d) (construct with
    ``QuadExt(a, b, d)``); products of local Siegel factors over several
    primes need the general form, which multiplication produces
    automatically via sqrt(d1)*sqrt(d2) = g*sqrt(d1*d2/g^2), g = gcd.
    """

    __slots__ = ("_terms",)

    def __init__(self, a: ScalarLike = 0, b: int | Fraction = 0, d: int = 1):
        if isinstance(a, QuadExt):
            if b != 0 or d != 1:
                raise TypeError("cannot combine a QuadExt with extra surd args")
            self._terms = dict(a._terms)
            return
        terms: dict[int, Fraction] = {}
        a = Fraction(a)
        if a:
            terms[1] = a
        b = Fraction(b)
        if b:
            if d <= 0:
                raise ValueError("radicand must be positive")
            s, f = squarefree_decompose(d)
            coeff = b * f
            if s in terms:
                coeff += terms[s]
            if coeff:
                terms[s] = coeff
            elif s in terms:
                del terms[s]
        self._terms = terms

    @classmethod
    def _raw(cls, terms: Mapping[int, Fraction]) -> "QuadExt":
        obj = cls.__new__(cls)
        obj._terms = {d: c for d, c in terms.items() if c}
        return obj

    @classmethod
    def sqrt_of(cls, n: int | Fraction) -> "QuadExt":
        """sqrt(n) for a positive rational n, as num/den surds."""
        n = Fraction(n)
        if n <= 0:
            raise ValueError("radicand must be positive")
        # sqrt(p/q) = sqrt(p*q)/q
        s, f = squarefree_decompose(n.numerator * n.denominator)
        return cls._raw({s: Fraction(f, n.denominator)})

    # -- inspection --------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return all(d == 1 for d in self._terms)

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self._terms.get(1, Fraction(0))

    @property
    def rational_part(self) -> Fraction:
        return self._terms.get(1, Fraction(0))

    @property
    def radicand(self) -> int:
        """The single nontrivial radicand, for values of shape a + b*sqrt(d)."""
        surds = [d for d in self._terms if d != 1]
        if not surds:
            return 1
        if len(surds) > 1:
            raise ValueError(f"{self} involves several radicands")
        return surds[0]

    @property
    def surd_part(self) -> Fraction:
        return self._terms.get(self.radicand, Fraction(0)) if self.radicand != 1 else Fraction(0)

    def terms(self) -> Iterator[tuple[int, Fraction]]:
        return iter(sorted(self._terms.items()))

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(x: ScalarLike) -> "QuadExt":
        return x if isinstance(x, QuadExt) else QuadExt(Fraction(x))

    def __add__(self, other: ScalarLike) -> "QuadExt":
        other = self._coerce(other)
        terms = dict(self._terms)
        for d, c in other._terms.items():
            terms[d] = terms.get(d, Fraction(0)) + c
        return QuadExt._raw(terms)

    __radd__ = __add__

    def __neg__(self) -> "QuadExt":
        return QuadExt._raw({d: -c for d, c in self._terms.items()})

    def __sub__(self, other: ScalarLike) -> "QuadExt":
        return self + (-self._coerce(other))

    def __rsub__(self, other: ScalarLike) -> "QuadExt":
        return self._coerce(other) + (-self)

    def __mul__(self, other: ScalarLike) -> "QuadExt":
        other = self._coerce(other)
        terms: dict[int, Fraction] = {}
        for d1, c1 in self._terms.items():
            for d2, c2 in other._terms.items():
                g = gcd(d1, d2)
                d = (d1 // g) * (d2 // g)
                c = c1 * c2 * g
                terms[d] = terms.get(d, Fraction(0)) + c
        return QuadExt._raw(terms)

    __rmul__ = __mul__

    def __truediv__(self, other: ScalarLike) -> "QuadExt":
        other = self._coerce(other)
        if other.is_rational:
            q = other.to_fraction()
            if not q:
                raise ZeroDivisionError
            return QuadExt._raw({d: c / q for d, c in self._terms.items()})
        if len(other._terms) == 1:
            # 1/(c*sqrt(d)) = sqrt(d)/(c*d)
            (d, c), = other._terms.items()
            return self * QuadExt._raw({d: Fraction(1, 1) / (c * d)})
        # a + b*sqrt(d): multiply by the conjugate
        if len(other._terms) == 2 and 1 in other._terms:
            a = other._terms[1]
            d = other.radicand
            b = other._terms[d]
            conj = QuadExt._raw({1: a, d: -b})
            norm = a * a - b * b * d
            if not norm:
                raise ZeroDivisionError
            return self * conj / norm
        raise NotImplementedError("division by a general multi-surd value")

    def __rtruediv__(self, other: ScalarLike) -> "QuadExt":
        return self._coerce(other) / self

    def __pow__(self, e: int) -> "QuadExt":
        if e < 0:
            return QuadExt(1) / self ** (-e)
        out = QuadExt(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QuadExt(other)
        if not isinstance(other, QuadExt):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self.is_rational:
            return hash(self.rational_part)
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __float__(self) -> float:
        return float(sum(float(c) * math.sqrt(d) for d, c in self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for d, c in sorted(self._terms.items()):
            parts.append(str(c) if d == 1 else f"{c}*sqrt({d})")
        return " + ".join(parts)


def _as_scalar(x: ScalarLike) -> Fraction | QuadExt:
    if isinstance(x, QuadExt):
        return x.to_fraction() if x.is_rational else x
    return Fraction(x)


def _scalar_is_zero(x: Fraction | QuadExt) -> bool:
    return not x


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

class LaurentPolynomial:
    """Laurent polynomial with exact coefficients and finite support.

    Coefficients are Fractions, or QuadExt values for the odd-prime
    normalized Siegel polynomials that live in Z[sqrt(p)].  Zero
    coefficients are never stored.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, ScalarLike] | Iterable[tuple[int, ScalarLike]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        self._coeffs: dict[int, Fraction | QuadExt] = {}
        for e, c in items:
            c = _as_scalar(c)
            if c:
                prev = self._coeffs.get(e)
                c = c if prev is None else _as_scalar(prev + c)
                if c:
                    self._coeffs[int(e)] = c
                elif e in self._coeffs:
                    del self._coeffs[int(e)]

    @classmethod
    def constant(cls, c: ScalarLike) -> "LaurentPolynomial":
        return cls({0: c})

    @classmethod
    def monomial(cls, c: ScalarLike, e: int) -> "LaurentPolynomial":
        return cls({e: c})

    @classmethod
    def zero(cls) -> "LaurentPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPolynomial":
        return cls({0: 1})

    # -- inspection ---------------------------------------------------------

    def items(self) -> list[tuple[int, Fraction | QuadExt]]:
        return sorted(self._coeffs.items())

    def coefficient(self, e: int) -> Fraction | QuadExt:
        return self._coeffs.get(e, Fraction(0))

    def __getitem__(self, e: int) -> Fraction | QuadExt:
        return self.coefficient(e)

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def min_exponent(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial")
        return min(self._coeffs)

    @property
    def max_exponent(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial")
        return max(self._coeffs)

    @property
    def degree(self) -> int:
        """Top exponent; only meaningful for ordinary polynomials."""
        return self.max_exponent

    def coefficients_list(self) -> list[Fraction | QuadExt]:
        """Dense coefficient list from exponent 0 up (requires min exp >= 0)."""
        if self.is_zero:
            return []
        if self.min_exponent < 0:
            raise ValueError("not an ordinary polynomial")
        return [self.coefficient(e) for e in range(self.max_exponent + 1)]

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "LaurentPolynomial | ScalarLike") -> "LaurentPolynomial":
        other = self._coerce(other)
        coeffs = dict(self._coeffs)
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        for e, c in other._coeffs.items():
            s = _as_scalar(coeffs.get(e, Fraction(0)) + c)
            if s:
                coeffs[e] = s
            elif e in coeffs:
                del coeffs[e]
        out._coeffs = coeffs
        return out

    __radd__ = __add__

    def __neg__(self) -> "LaurentPolynomial":
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out._coeffs = {e: -c for e, c in self._coeffs.items()}
        return out

    def __sub__(self, other: "LaurentPolynomial | ScalarLike") -> "LaurentPolynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other: "LaurentPolynomial | ScalarLike") -> "LaurentPolynomial":
        return self._coerce(other) + (-self)

    def __mul__(self, other: "LaurentPolynomial | ScalarLike") -> "LaurentPolynomial":
        other = self._coerce(other)
        coeffs: dict[int, Fraction | QuadExt] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                e = e1 + e2
                s = _as_scalar(coeffs.get(e, Fraction(0)) + c1 * c2)
                if s:
                    coeffs[e] = s
                elif e in coeffs:
                    del coeffs[e]
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out._coeffs = coeffs
        return out

    __rmul__ = __mul__

    @staticmethod
    def _coerce(x: "LaurentPolynomial | ScalarLike") -> "LaurentPolynomial":
        if isinstance(x, LaurentPolynomial):
            return x
        return LaurentPolynomial.constant(x)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, QuadExt)):
            other = LaurentPolynomial.constant(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __repr__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for e, c in self.items():
            if e == 0:
                parts.append(f"{c}")
            elif e == 1:
                parts.append(f"({c})*X")
            else:
                parts.append(f"({c})*X^{e}")
        return " + ".join(parts)

    # -- substitutions ------------------------------------------------------

    def shift(self, e: int) -> "LaurentPolynomial":
        """Multiply by X^e."""
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out._coeffs = {k + e: c for k, c in self._coeffs.items()}
        return out

    def compose_monomial(self, scale: ScalarLike, power: int) -> "LaurentPolynomial":
        """P(scale * X^power); power may be negative, scale must be invertible."""
        if power == 0:
            raise ValueError("power must be nonzero")
        scale = _as_scalar(scale)
        coeffs: dict[int, Fraction | QuadExt] = {}
        for e, c in self._coeffs.items():
            if isinstance(scale, QuadExt) or isinstance(c, QuadExt):
                factor = QuadExt._coerce(scale) ** e
            else:
                factor = scale ** e
            k = e * power
            s = _as_scalar(coeffs.get(k, Fraction(0)) + c * factor)
            if s:
                coeffs[k] = s
            elif k in coeffs:
                del coeffs[k]
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out._coeffs = coeffs
        return out

    def evaluate(self, x: ScalarLike) -> Fraction | QuadExt:
        """Exact value at a nonzero rational or surd point."""
        x = _as_scalar(x)
        if not x:
            raise ZeroDivisionError("Laurent polynomials cannot be evaluated at 0")
        total: Fraction | QuadExt = Fraction(0)
        for e, c in self._coeffs.items():
            if isinstance(x, QuadExt) or isinstance(c, QuadExt):
                term = QuadExt._coerce(c) * QuadExt._coerce(x) ** e
            else:
                term = c * x ** e
            total = _as_scalar(total + term)
        return total

    def is_symmetric(self) -> bool:
        """Whether P(X) = P(1/X)."""
        return all(self.coefficient(-e) == c for e, c in self._coeffs.items())

    def map_coefficients(self, fn) -> "LaurentPolynomial":
        return LaurentPolynomial({e: fn(c) for e, c in self._coeffs.items()})

    # -- serialization ------------------------------------------------------

    def to_pairs(self) -> list[tuple[int, str]]:
        """Sorted (exponent, coefficient-string) pairs for JSON output."""
        return [(e, str(c)) for e, c in self.items()]


def laurent_divide_exact(
    numer: LaurentPolynomial, denom: LaurentPolynomial
) -> LaurentPolynomial:
    """Exact quotient numer/denom; raises InexactDivision otherwise.

    The remainder check is the test signal for the Siegel-series
    factorization theorems, so it must never be weakened to a tolerance.
    """
    if denom.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if numer.is_zero:
        return LaurentPolynomial.zero()
    # Normalize to ordinary polynomials; track the exponent offset.
    s_num = numer.shift(-numer.min_exponent)
    s_den = denom.shift(-denom.min_exponent)
    offset = numer.min_exponent - denom.min_exponent
    rem = s_num
    out: dict[int, Fraction | QuadExt] = {}
    lead_e = s_den.max_exponent
    lead_c = s_den.coefficient(lead_e)
    while not rem.is_zero and rem.max_exponent >= lead_e:
        e = rem.max_exponent - lead_e
        c = rem.coefficient(rem.max_exponent)
        if isinstance(c, QuadExt) or isinstance(lead_c, QuadExt):
            q = QuadExt._coerce(c) / QuadExt._coerce(lead_c)
        else:
            q = c / lead_c
        out[e] = q
        rem = rem - s_den.compose_monomial(1, 1).shift(e) * q
    if not rem.is_zero:
        raise InexactDivision(rem.shift(denom.min_exponent))
    return LaurentPolynomial(out).shift(offset)


def laurent_symmetric_rewrite(P: LaurentPolynomial) -> LaurentPolynomial:
    """Rewrite a symmetric Laurent polynomial as a polynomial in t = X + 1/X.

    Returns R with R(X + 1/X) = P(X) identically; raises NotSymmetric if
    P(X) != P(1/X).  Uses rho_0 = 2, rho_1 = t, rho_{j+1} = t*rho_j -
    rho_{j-1}, so that rho_j(X + 1/X) = X^j + X^-j.
    """
    if not P.is_symmetric():
        raise NotSymmetric(f"{P} is not symmetric under X -> 1/X")
    if P.is_zero:
        return LaurentPolynomial.zero()
    top = P.max_exponent
    # rho polynomials in t, as LaurentPolynomials with exponents >= 0
    rho_prev = LaurentPolynomial.constant(2)
    rho = LaurentPolynomial.monomial(1, 1)
    t = LaurentPolynomial.monomial(1, 1)
    result = LaurentPolynomial.constant(P.coefficient(0))
    for j in range(1, top + 1):
        c = P.coefficient(j)
        if c:
            result = result + rho * c
        rho_prev, rho = rho, t * rho - rho_prev
    return result


# ---------------------------------------------------------------------------
# Exact pi-scaled values
# ---------------------------------------------------------------------------

class PiScaledRational:
    """An exact value scalar * pi^(pi2/2) with scalar rational or surd.

    The pi exponent is stored doubled so half-integral powers (the odd
    Eisenstein normalization pi^(l + 1/2)) stay in integer arithmetic.
    The zero value is canonical: scalar 0 with exponent 0.
    """

    __slots__ = ("scalar", "pi2")

    def __init__(self, scalar: ScalarLike, pi2: int = 0):
        scalar = _as_scalar(scalar)
        if not scalar:
            scalar, pi2 = Fraction(0), 0
        self.scalar = scalar
        self.pi2 = int(pi2)

    @property
    def is_zero(self) -> bool:
        return not self.scalar

    def __mul__(self, other: "PiScaledRational | ScalarLike") -> "PiScaledRational":
        if not isinstance(other, PiScaledRational):
            return PiScaledRational(self.scalar * _as_scalar(other), self.pi2)
        return PiScaledRational(self.scalar * other.scalar, self.pi2 + other.pi2)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PiScaledRational):
            return NotImplemented
        return self.scalar == other.scalar and (self.is_zero or self.pi2 == other.pi2)

    def __hash__(self) -> int:
        return hash((self.scalar, self.pi2))

    def __float__(self) -> float:
        return float(self.scalar) * math.pi ** (self.pi2 / 2)

    def __repr__(self) -> str:
        if self.is_zero:
            return "0"
        if self.pi2 == 0:
            return str(self.scalar)
        e = Fraction(self.pi2, 2)
        return f"({self.scalar}) * pi^{e}"

    def to_json_dict(self) -> dict:
        if isinstance(self.scalar, QuadExt):
            scalar = repr(self.scalar)
        else:
            scalar = f"{self.scalar.numerator}/{self.scalar.denominator}"
        return {"scalar": scalar, "pi_exp_times_2": self.pi2}
