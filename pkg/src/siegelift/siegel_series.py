"""Closed-form local densities, the finite series J, and the polynomials Q, Q-tilde.

The closed B_r formulas below are organized uniformly as a sum over the
valuation j of the auxiliary residue x: an "x = 0" boundary term, the
main j-sum with Ramanujan / twisted Gauss-sum evaluations on
A_j = q(eta)/p^(2j), and (for p = 2 in odd dimension) a j = r-1
boundary term whose sign depends on (q(eta) - a_0^2)/2^(2r-2) mod 2.
That sign factor is the one correction to the source displays that the
brute-force oracle forces; see the tests.

At p = 2 in odd dimension the character value chi(2) demanded by the
factorization J = (1 - X^2)/(1 - chi X) * Q is genuinely ambiguous in
the source material; extract_Q therefore runs a small candidate battery
and records which convention divides exactly with an integral,
functional-equation-satisfying quotient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact_arith import (
    InexactDivision,
    LaurentPolynomial,
    NotSymmetric,
    QuadExt,
    kronecker_symbol,
    laurent_divide_exact,
    laurent_symmetric_rewrite,
)
from .exp_sums import ramanujan_sum, tsum
from .quad_space import EtaVector, LocalInvariants, ZeroQ, local_invariants

__all__ = [
    "NonIntegralCoefficient",
    "SiegelLocalData",
    "b_r_closed",
    "local_J",
    "extract_Q",
    "closed_Q_even",
    "closed_Q_odd",
    "normalize_Qtilde",
    "check_functional_equation",
    "qtilde_value",
    "siegel_local_data",
]


class NonIntegralCoefficient(ArithmeticError):
    """A polynomial asserted to lie in Z[X] has a non-integer coefficient."""


def _vp(x: int, p: int) -> int | None:
    if x == 0:
        return None
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


# ---------------------------------------------------------------------------
# Closed-form B_r
# ---------------------------------------------------------------------------

def b_r_closed_even(k: int, kprime: int, m: int, p: int, r: int) -> int:
    """Even-dimension closed B_r from invariants alone (q1 never enters)."""
    if r == 0:
        return 1
    d = 2 * k + kprime
    total = p ** (2 * r * m - r) if r <= k else 0
    for j in range(0, min(k, r - 1) + 1):
        vA = d - 2 * j
        # ramanujan_sum only sees v_p(A_j)
        total += p ** (r * m - r + j * m) * ramanujan_sum(r - j, p ** vA, p)
    return total


def b_r_closed_odd(k: int, kprime: int, chi: int, m: int, p: int, r: int) -> int:
    """Odd-dimension closed B_r for p > 2, from invariants and chi = (q1/p)."""
    if p == 2:
        raise ValueError("the 2-adic odd case needs eta coordinates")
    if r == 0:
        return 1
    d = 2 * k + kprime
    total = p ** (2 * r * m) if r <= k else 0
    for j in range(0, min(k, r - 1) + 1):
        vA = d - 2 * j
        if (r - j) % 2 == 0:
            c = ramanujan_sum(r - j, p ** vA, p)
            # prefactor p^(rm + jm + (j-r)/2); exact since 2 | r-j
            total += p ** (r * m + j * m + (j - r) // 2) * c
        elif vA == r - j - 1:
            total += chi * p ** (r * m + j * m + (r - j - 1) // 2)
    return total


def b_r_closed(eta: EtaVector, p: int, r: int) -> int:
    """Closed-form B_r, O(k) arithmetic, no exponential sums.

    For p = 2 in odd dimension the value depends on eta beyond its
    invariants (k, k', q1): the two boundary terms see the coordinate
    valuations directly, which is exactly the case split of the source.
    """
    q = eta.q
    if q == 0:
        raise ZeroQ("q(eta) = 0")
    if r == 0:
        return 1
    space = eta.space
    m = space.m
    inv = local_invariants(eta, p)
    k = inv.k
    if space.parity == "even":
        return b_r_closed_even(k, inv.kprime, m, p, r)
    if p != 2:
        return b_r_closed_odd(k, inv.kprime, kronecker_symbol(inv.q1, p), m, p, r)
    # p = 2, odd dimension
    a_coords = eta.coords[: 2 * m]
    a0 = eta.coords[2 * m]
    v_ab = min((v for v in (_vp(c, 2) for c in a_coords) if v is not None), default=None)
    v_a0 = _vp(a0, 2)
    s2 = q - a0 * a0
    total = 0
    # x = 0 term: all bilinear coordinates divisible by 2^r, a0 by 2^(r-1)
    if (v_ab is None or v_ab >= r) and (v_a0 is None or v_a0 >= r - 1):
        total += 2 ** (2 * r * m)
    # j = r - 1 term: fires only when v_2(a0) = r - 2 exactly
    if (
        v_a0 is not None
        and v_a0 == r - 2
        and (v_ab is None or v_ab >= r - 1)
    ):
        sign = -1 if (s2 >> (2 * r - 2)) % 2 else 1
        total += sign * 2 ** ((2 * r - 1) * m)
    for j in range(0, min(k, r - 2) + 1):
        A_j = q >> (2 * j)
        t = tsum(r - j, A_j)
        if not t:
            continue
        # term = 2^(rm + jm + (j-r)/2) * tsum; assemble in QuadExt and
        # demand integrality
        term = t * QuadExt.sqrt_of(Fraction(1, 2 ** (r - j)))
        val = term.to_fraction() * 2 ** (r * m + j * m)
        if val.denominator != 1:
            raise NonIntegralCoefficient(f"closed B_{r} term at j={j} not integral")
        total += val.numerator
    return total


# ---------------------------------------------------------------------------
# The finite series J and Q extraction
# ---------------------------------------------------------------------------

def max_series_index(inv: LocalInvariants, parity: str, p: int) -> int:
    """Largest r with B_r possibly nonzero."""
    d = inv.d
    if parity == "even":
        return d + 1
    return d + 3 if p == 2 else d + 1


def local_J(eta: EtaVector, p: int) -> LaurentPolynomial:
    """J(s, eta) = sum_r B_r X_s^r as a polynomial in X_s = p^(-s)."""
    inv = local_invariants(eta, p)
    rmax = max_series_index(inv, eta.space.parity, p)
    coeffs = {}
    for r in range(rmax + 1):
        B = b_r_closed(eta, p, r)
        if B:
            coeffs[r] = Fraction(B)
    # the series genuinely terminates; nothing beyond rmax
    assert b_r_closed(eta, p, rmax + 1) == 0
    return LaurentPolynomial(coeffs)


def local_J_from_invariants(
    k: int, kprime: int, chi: int, m: int, parity: str, p: int
) -> LaurentPolynomial:
    """J from invariants alone (even parity, or odd parity with p > 2)."""
    d = 2 * k + kprime
    rmax = d + 1
    coeffs = {}
    for r in range(rmax + 1):
        if parity == "even":
            B = b_r_closed_even(k, kprime, m, p, r)
        else:
            B = b_r_closed_odd(k, kprime, chi, m, p, r)
        if B:
            coeffs[r] = Fraction(B)
    return LaurentPolynomial(coeffs)


def _J_in_X(J: LaurentPolynomial, m: int, p: int) -> LaurentPolynomial:
    """Rewrite J from X_s = p^(-s) to X = p^(m-s): coefficient r scales by p^(-rm)."""
    return LaurentPolynomial(
        {r: c * Fraction(1, p ** (r * m)) for r, c in J.items()}
    )


def _rational_factor(parity: str, p: int, chi: int) -> LaurentPolynomial:
    """The predicted factor J/Q as a polynomial in X."""
    if parity == "even":
        # 1 - p^(m-1-s) = 1 - X/p
        return LaurentPolynomial({0: 1, 1: Fraction(-1, p)})
    if chi == 0:
        return LaurentPolynomial({0: 1, 2: -1})
    # (1 - X^2)/(1 - chi X) = 1 + chi X
    return LaurentPolynomial({0: 1, 1: chi})


def _check_integral(Q: LaurentPolynomial) -> None:
    for e, c in Q.items():
        if not isinstance(c, Fraction) or c.denominator != 1:
            raise NonIntegralCoefficient(f"coefficient {c} at X^{e} is not an integer")


def extract_Q(
    J: LaurentPolynomial,
    inv: LocalInvariants,
    parity: str,
    m: int,
    chi: int | None = None,
) -> LaurentPolynomial:
    """Divide J by its predicted rational factor and return Q in X = p^(m-s).

    Raises InexactDivision when the factorization fails (the theorem
    violation signal) and NonIntegralCoefficient when the quotient
    leaves Z[X].  chi overrides the character value predicted by the
    invariants (used by the 2-adic convention battery).
    """
    p = inv.p
    JX = _J_in_X(J, m, p)
    use_chi = inv.chi if chi is None else chi
    factor = _rational_factor(parity, p, use_chi if use_chi is not None else 0)
    Q = laurent_divide_exact(JX, factor)
    _check_integral(Q)
    if not Q.is_zero and Q.min_exponent < 0:
        raise NonIntegralCoefficient("quotient is not an ordinary polynomial")
    return Q


def expected_degree(inv: LocalInvariants, parity: str, chi: int | None = None) -> int:
    d = inv.d
    if parity == "even":
        return d
    l = d // 2
    if inv.p == 2:
        use_chi = inv.chi if chi is None else chi
        return 2 * l + 2 if use_chi else 2 * l
    return 2 * l


def check_functional_equation(
    Q: LaurentPolynomial, inv: LocalInvariants, parity: str, p: int | None = None
) -> bool:
    """Coefficientwise functional equation of the extracted polynomial.

    Even: X^(2k+k') Q(1/X) = Q(X).  Odd: p^(a/2) X^a Q(1/(pX)) = Q(X)
    with a the degree of Q (always even for valid Q).
    """
    p = inv.p if p is None else p
    if Q.is_zero:
        return False
    if parity == "even":
        d = inv.d
        return Q.compose_monomial(1, -1).shift(d) == Q
    a = Q.degree
    if a % 2:
        return False
    flipped = Q.compose_monomial(Fraction(1, p), -1).shift(a) * Fraction(p) ** (a // 2)
    return flipped == Q


def closed_Q_even(inv: LocalInvariants, m: int) -> LaurentPolynomial:
    """The even-dimension coefficient bands: A_a = 1 + p^(m-1) + ... capped
    at min(a, k, 2k+k'-a) powers."""
    p, k, d = inv.p, inv.k, inv.d
    coeffs = {}
    for a in range(d + 1):
        cap = min(a, k, d - a)
        coeffs[a] = sum(Fraction(p) ** ((m - 1) * i) for i in range(cap + 1))
    return LaurentPolynomial(coeffs)


def closed_Q_odd(inv: LocalInvariants, m: int) -> LaurentPolynomial:
    """Odd-dimension closed coefficients for p > 2.

    2k+k' odd: Q_b = C(k, k', b) with the three parity-restricted bands.
    2k+k' even: Q_b = (-eps)^b C^eps(k, k', b), eps the local character.
    """
    p, k, kp, d = inv.p, inv.k, inv.kprime, inv.d
    if p == 2:
        raise ValueError("no closed odd-dimension bands at p = 2; use the series route")
    coeffs: dict[int, Fraction] = {}
    if d % 2 == 1:
        for b in range(d):
            if b < k:
                top = b
            elif b <= k + kp - 1:
                top = k
            else:
                top = d - 1 - b
            s = Fraction(0)
            for u in range(top + 1):
                if (b - u) % 2 == 0:
                    s += Fraction(p) ** (m * u + (b - u) // 2)
            coeffs[b] = s
        return LaurentPolynomial(coeffs)
    eps = inv.chi
    l = d // 2
    for b in range(d + 1):
        if b < k:
            top = b
        elif b <= k + kp:
            top = k
        else:
            top = 2 * l - b
        s = Fraction(0)
        for j in range(top + 1):
            s += Fraction((-eps) ** j) * Fraction(p) ** (j * m + (b - j) // 2)
        coeffs[b] = Fraction((-eps) ** b) * s
    return LaurentPolynomial(coeffs)


def normalize_Qtilde(
    Q: LaurentPolynomial, inv: LocalInvariants, parity: str, p: int | None = None
) -> LaurentPolynomial:
    """Symmetric normalization: even X^(2k+k') Q(X^-2); odd X^(-a/2) Q(p^(-1/2) X).

    Odd-dimension coefficients land in Z[sqrt(p)].  Raises NotSymmetric
    when the result fails Q~(X) = Q~(1/X), which would falsify the
    underlying functional equation.
    """
    p = inv.p if p is None else p
    if parity == "even":
        Qt = Q.compose_monomial(1, -2).shift(inv.d)
    else:
        a = Q.degree
        if a % 2:
            raise NotSymmetric("odd-degree local polynomial cannot be normalized")
        inv_sqrt_p = QuadExt.sqrt_of(Fraction(1, p))
        Qt = Q.compose_monomial(inv_sqrt_p, 1).shift(-(a // 2))
    if not Qt.is_symmetric():
        raise NotSymmetric(f"normalized polynomial is not symmetric: {Qt}")
    return Qt


def qtilde_value(Qtilde: LaurentPolynomial, t):
    """Exact Q~ at any point X with X + 1/X = t, via the symmetric rewrite."""
    R = laurent_symmetric_rewrite(Qtilde)
    return R.evaluate(t) if not R.is_zero else Fraction(0)


# ---------------------------------------------------------------------------
# Assembled local data
# ---------------------------------------------------------------------------

_CHI_BATTERY = (0, 1, -1)


@dataclass(frozen=True)
class SiegelLocalData:
    """Everything the lift needs about eta at one prime."""

    inv: LocalInvariants
    parity: str
    m: int
    J: LaurentPolynomial
    Q: LaurentPolynomial
    Qtilde: LaurentPolynomial
    degree: int
    chi_validated: int | None
    chi_candidates_passed: tuple[int, ...]
    functional_equation: bool
    case_flag: str | None


def _two_adic_case(eta: EtaVector) -> str | None:
    if eta.space.parity != "odd":
        return None
    m = eta.space.m
    v_ab = min(
        (v for v in (_vp(c, 2) for c in eta.coords[: 2 * m]) if v is not None),
        default=None,
    )
    v_a0 = _vp(eta.coords[2 * m], 2)
    if v_a0 is not None and (v_ab is None or v_ab > v_a0):
        return "case1"
    return "case2"


def siegel_local_data(eta: EtaVector, p: int) -> SiegelLocalData:
    """Build J, Q and Q~ for eta at p, validating the character convention.

    In the ambiguous 2-adic odd case every candidate chi is tried; a
    candidate passes when the division is exact with integral
    coefficients, nonnegative exponents, unit constant term and the
    functional equation.  The recorded chi is the passing candidate
    preferred in the order (validated-rule value, others).
    """
    space = eta.space
    parity = space.parity
    m = space.m
    inv = local_invariants(eta, p)
    J = local_J(eta, p)
    if parity == "even":
        Q = extract_Q(J, inv, parity, m)
        chi_passed: tuple[int, ...] = ()
        chi_val = None
    else:
        candidates = [inv.chi] + [c for c in _CHI_BATTERY if c != inv.chi]
        passed = []
        Q_by_chi = {}
        for c in candidates:
            try:
                Qc = extract_Q(J, inv, parity, m, chi=c)
            except (InexactDivision, NonIntegralCoefficient):
                continue
            if Qc.is_zero or Qc.coefficient(0) != 1:
                continue
            if not check_functional_equation(Qc, inv, parity, p):
                continue
            passed.append(c)
            Q_by_chi[c] = Qc
        if not passed:
            raise InexactDivision(J)
        chi_val = passed[0]
        chi_passed = tuple(passed)
        Q = Q_by_chi[chi_val]
    Qt = normalize_Qtilde(Q, inv, parity, p)
    fe = check_functional_equation(Q, inv, parity, p)
    return SiegelLocalData(
        inv=inv,
        parity=parity,
        m=m,
        J=J,
        Q=Q,
        Qtilde=Qt,
        degree=Q.degree if not Q.is_zero else 0,
        chi_validated=chi_val,
        chi_candidates_passed=chi_passed,
        functional_equation=fe,
        case_flag=_two_adic_case(eta) if p == 2 else None,
    )
