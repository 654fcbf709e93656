"""Fourier coefficients of the Eisenstein series and of the arithmetic lift.

The even-dimension lift coefficient is assembled prime by prime as

    A(eta) = prod_p [ p^(d_p (k-1)/2) * Qtilde_{eta,p}(alpha_p) ]

with d_p = v_p(q(eta)); each bracket is rewritten through the symmetric
basis (powers of alpha + 1/alpha) into an integer polynomial in the
Hecke eigenvalue lambda(p), so no half-integral power of p is ever
evaluated.  Odd dimension works in the exact surd tower instead and
asserts rationality at the end.

Exponent table for the s = l+1 specialization (the three normalizations
used by the source formulas, all derived from X = p^(m-s)):

    parity   argument of Q            argument of Qtilde
    even     p^(l - n/2)              p^((l - n/2)/2)
    odd      p^(l - (n+1)/2)          p^(l - n/2)

The even pair agrees identically through Qtilde(X) = X^d Q(X^-2) and the
functional equation; this is asserted in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .eigenforms import EigenformData, eigenform
from .exact_arith import (
    LaurentPolynomial,
    PiScaledRational,
    QuadExt,
    bernoulli_number,
    dirichlet_L_negative,
    laurent_symmetric_rewrite,
    zeta_rational_part,
)
from .quad_space import (
    DiscDecomposition,
    EtaVector,
    SplitQuadraticSpace,
    ZeroQ,
    disc_decompose,
)
from .siegel_series import SiegelLocalData, siegel_local_data

__all__ = [
    "LiftContext",
    "EulerFactor",
    "MissingC",
    "WeightOutOfRange",
    "OddParityUnsupported",
    "lift_context",
    "eisenstein_coefficient",
    "lift_coefficient_even",
    "lift_coefficient_odd",
    "lift_coefficient_odd_numeric",
    "fjc_series",
    "euler_factor_standard",
    "whittaker_weight_partial_sum",
]


class MissingC(KeyError):
    """The half-integral coefficient c(d_eta) is absent from the c-map."""


class WeightOutOfRange(ValueError):
    """The (n, l) pair violates the weight constraints of the construction."""


class OddParityUnsupported(ValueError):
    """Operation defined only on the even-parity exact path."""


def lift_weight(n: int, l: int) -> int:
    """Weight of the input elliptic eigenform: l - (n-2)/2 even, 2l - n + 1 odd."""
    if l <= n + 1 or l % 2:
        raise WeightOutOfRange("need l > n + 1 and l even")
    if n % 2 == 0:
        return l - (n - 2) // 2
    return 2 * l - n + 1


@dataclass
class LiftContext:
    """Everything fixed for one lift: the space, l, the eigenform and
    (odd parity) the map of half-integral coefficients c(m)."""

    space: SplitQuadraticSpace
    l: int
    f: EigenformData
    cmap: dict[int, Fraction] | None = None

    def __post_init__(self):
        k = lift_weight(self.space.n, self.l)
        if self.f.weight != k:
            raise WeightOutOfRange(
                f"eigenform weight {self.f.weight} != required {k}"
            )

    @property
    def n(self) -> int:
        return self.space.n

    @property
    def weight(self) -> int:
        return self.f.weight


def lift_context(
    n: int,
    l: int,
    precision: int = 64,
    cmap: dict[int, Fraction] | None = None,
) -> LiftContext:
    """Build the context, constructing the eigenform of the forced weight."""
    space = SplitQuadraticSpace(n)
    k = lift_weight(n, l)
    return LiftContext(space=space, l=l, f=eigenform(k, precision), cmap=cmap)


# ---------------------------------------------------------------------------
# Eisenstein coefficients
# ---------------------------------------------------------------------------

def _local_data_for(eta: EtaVector, include_two: bool) -> list[SiegelLocalData]:
    q = eta.q
    primes = set()
    qq = abs(q)
    d = 2
    while d * d <= qq:
        if qq % d == 0:
            primes.add(d)
            while qq % d == 0:
                qq //= d
        d += 1
    if qq > 1:
        primes.add(qq)
    if include_two:
        primes.add(2)
    return [siegel_local_data(eta, p) for p in sorted(primes)]


def eisenstein_coefficient(n: int, l: int, eta: EtaVector) -> PiScaledRational:
    """Exact Fourier coefficient of the weight-l Eisenstein series at eta.

    Even n: (pi^(2l+1-n/2) / zeta(l+1-n/2)) * prod_p Q_{eta,p}(p^(l-n/2)),
    an exact rational times pi^l.  Requires n = 2 mod 4 so the zeta
    argument is even (the only case with an elementary closed form).

    Odd n: the normalized form with the L-value at a nonpositive integer,
    C'_{l,n} L((n+1)/2 - l, chi_eta) f_eta^(l-n/2) prod Qtilde(p^(l-n/2)),
    an exact (rational times pi^(l+1/2)) value whenever v_2(q) != 1; the
    v_2(q) = 1 classes stay in Q(sqrt 2) and are returned as such.
    """
    if eta.q <= 0:
        raise ZeroQ("Eisenstein coefficients computed only for q(eta) > 0")
    if l <= n + 1 or l % 2:
        raise WeightOutOfRange("need l > n + 1 and l even")
    if n % 2 == 0:
        if (l + 1 - n // 2) % 2:
            raise WeightOutOfRange(
                "zeta(l+1-n/2) has no exact closed form for n = 0 mod 4"
            )
        locs = _local_data_for(eta, include_two=False)
        prod = Fraction(1)
        for loc in locs:
            val = loc.Q.evaluate(Fraction(loc.inv.p) ** (l - n // 2))
            prod *= val
        scalar = prod / zeta_rational_part(l + 1 - n // 2)
        return PiScaledRational(scalar, 2 * l)
    # odd n
    dec = disc_decompose(eta.q)
    Lval = dirichlet_L_negative((n + 1) // 2 - l, dec.signed_disc)
    if not Lval:
        return PiScaledRational(0, 0)
    j = 2 * l - n + 1
    cprime = (
        Fraction((-1) ** ((3 * n + 1) // 2))
        * Fraction(2) ** (l - (n - 1) // 2)
        * math.factorial(j)
        / (bernoulli_number(j) * math.factorial(l - (n + 1) // 2))
    )
    fpow = QuadExt.sqrt_of(Fraction(dec.f_eta) ** (2 * l - n))
    locs = _local_data_for(eta, include_two=True)
    prod: QuadExt | Fraction = QuadExt(1)
    for loc in locs:
        x = QuadExt.sqrt_of(Fraction(loc.inv.p) ** (2 * l - n))
        prod = prod * QuadExt(loc.Qtilde.evaluate(x))
    scalar = QuadExt(cprime) * QuadExt(Lval) * fpow * prod
    return PiScaledRational(scalar, 2 * l + 1)


# ---------------------------------------------------------------------------
# Lift coefficients
# ---------------------------------------------------------------------------

def _bracket_even(loc: SiegelLocalData, f: EigenformData) -> Fraction:
    """p^(d (k-1)/2) * Qtilde(alpha_p) as an exact polynomial in lambda(p)."""
    p = loc.inv.p
    d = loc.inv.d
    k = f.weight
    R = laurent_symmetric_rewrite(loc.Qtilde)
    lam = f.lam(p)
    total = Fraction(0)
    for i, c in R.items():
        if (d - i) % 2:
            raise ArithmeticError("parity violation in the symmetric rewrite")
        total += Fraction(c) * lam ** i * Fraction(p) ** (((d - i) // 2) * (k - 1))
    return total


def lift_coefficient_even(ctx: LiftContext, eta: EtaVector) -> Fraction:
    """A(eta) = q(eta)^((k-1)/2) prod_p Qtilde_{eta,p}(alpha_p), exactly.

    Integral output for integral eigenvalue data; the primitive-vector
    case collapses to the Hecke eigenvalue lambda(q(eta)).
    """
    if ctx.space.parity != "even":
        raise OddParityUnsupported("use lift_coefficient_odd")
    if eta.q <= 0:
        raise ZeroQ("lift coefficients are supported on q(eta) > 0")
    total = Fraction(1)
    for loc in _local_data_for(eta, include_two=False):
        total *= _bracket_even(loc, ctx.f)
    assert total.denominator == 1, "even lift coefficient must be integral"
    return total


def lift_coefficient_odd(ctx: LiftContext, eta: EtaVector) -> QuadExt:
    """A(eta) = c(d_eta) f_eta^((k-1)/2) prod_{p | q} Qtilde_{eta,p}(alpha_p).

    Computed in the exact surd tower; the result is rational whenever
    the surd cancellations close up (callers check .is_rational).  The
    product runs over p | q(eta) only, per the construction.
    """
    if ctx.space.parity != "odd":
        raise OddParityUnsupported("use lift_coefficient_even")
    if eta.q <= 0:
        raise ZeroQ("lift coefficients are supported on q(eta) > 0")
    if ctx.cmap is None:
        raise MissingC("no c-map loaded")
    dec = disc_decompose(eta.q)
    if dec.d_eta not in ctx.cmap:
        raise MissingC(f"c({dec.d_eta}) absent from the c-map")
    c0 = Fraction(ctx.cmap[dec.d_eta])
    k = ctx.weight
    fpow = QuadExt.sqrt_of(Fraction(dec.f_eta) ** (k - 1))
    total = QuadExt(c0) * fpow
    for loc in _local_data_for(eta, include_two=False):
        if loc.inv.d == 0:
            continue
        R = laurent_symmetric_rewrite(loc.Qtilde)
        t = ctx.f.satake_t_surd(loc.inv.p)
        total = total * QuadExt(R.evaluate(t))
    return total


def lift_coefficient_odd_numeric(ctx: LiftContext, eta: EtaVector, dps: int = 50):
    """50-digit numeric evaluation of the odd lift coefficient (mpmath)."""
    import mpmath as mp

    with mp.workdps(dps):
        if ctx.cmap is None:
            raise MissingC("no c-map loaded")
        dec = disc_decompose(eta.q)
        if dec.d_eta not in ctx.cmap:
            raise MissingC(f"c({dec.d_eta}) absent from the c-map")
        k = ctx.weight
        total = mp.mpf(ctx.cmap[dec.d_eta].numerator) / ctx.cmap[dec.d_eta].denominator
        total *= mp.power(mp.mpf(dec.f_eta.numerator) / dec.f_eta.denominator,
                          mp.mpf(k - 1) / 2)
        for loc in _local_data_for(eta, include_two=False):
            if loc.inv.d == 0:
                continue
            p = loc.inv.p
            t = mp.mpf(ctx.f.lam(p)) / mp.power(p, mp.mpf(k - 1) / 2)
            R = laurent_symmetric_rewrite(loc.Qtilde)
            val = mp.mpf(0)
            for i, c in R.items():
                cf = float(c) if isinstance(c, QuadExt) else c
                if isinstance(c, QuadExt):
                    cv = mp.mpf(0)
                    for dd, co in c.terms():
                        cv += (mp.mpf(co.numerator) / co.denominator) * mp.sqrt(dd)
                else:
                    cv = mp.mpf(c.numerator) / c.denominator
                val += cv * t ** i
            total *= val
        return total


# ---------------------------------------------------------------------------
# Fourier-Jacobi coefficient series
# ---------------------------------------------------------------------------

def fjc_series(
    ctx: LiftContext, S: int, xi_sigma: int = 0, cutoff: int = 30
) -> list[Fraction]:
    """Coefficients of the formal Fourier-Jacobi series of index S < 0.

    Entry N (1-based) is A(eta) for eta = (-N, 0, ..., 0, S) in split
    coordinates, q(eta) = N |S|; the xi-dependence enters only through
    the reindexing a = -N - S*xi_sigma and cancels from the values.  For
    S = -1 the output must be the eigenform's lambda sequence.
    """
    if ctx.space.parity != "even":
        raise OddParityUnsupported("the exact series path needs even parity")
    if S >= 0:
        raise ValueError("holomorphic normalization requires S < 0")
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    del xi_sigma  # only shifts the internal index a; see eta_{a,S,xi}
    space = ctx.space
    m = space.m
    out = []
    for N in range(1, cutoff + 1):
        coords = [0] * space.dim
        coords[0] = -N
        coords[m] = S
        eta = EtaVector(space, tuple(coords))
        out.append(lift_coefficient_even(ctx, eta))
    return out


# ---------------------------------------------------------------------------
# Standard L-function Euler factors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EulerFactor:
    """Local factor of the standard L-function at p, as the polynomial
    prod (1 - gamma T) over the Satake multiset, T = p^(-s)."""

    p: int
    degree: int
    poly: LaurentPolynomial = field(compare=False)

    def is_self_dual(self) -> bool:
        """Reciprocal-root multiset closed under inversion <=> palindromic."""
        return self.poly.compose_monomial(1, -1).shift(self.degree) == self.poly


def euler_factor_standard(ctx: LiftContext, p: int) -> EulerFactor:
    """Degree n+4 (even) / n+3 (odd) standard Euler polynomial at p.

    Even: Satake multiset {alpha^2, 1, alpha^-2} + {p^i : |i| <= n/2};
    the symmetric combination alpha^2 + alpha^-2 = lambda(p)^2/p^(k-1) - 2
    keeps all coefficients rational.  Odd: {alpha, 1/alpha} + the
    half-integral shifts {p^(n/2 - i)}, coefficients in Q(sqrt p).
    """
    n = ctx.n
    k = ctx.weight
    lam = ctx.f.lam(p)
    T = LaurentPolynomial.monomial(1, 1)
    one = LaurentPolynomial.one()
    if ctx.space.parity == "even":
        t2 = Fraction(lam * lam, p ** (k - 1))
        sym2 = LaurentPolynomial({0: 1, 1: -(t2 - 2), 2: 1})  # (1-a^2 T)(1-a^-2 T)
        poly = sym2 * (one - T)
        for i in range(-(n // 2), n // 2 + 1):
            poly = poly * (one - T * Fraction(p) ** (-i))
        degree = n + 4
    else:
        t = ctx.f.satake_t_surd(p)
        pair = LaurentPolynomial({0: 1, 1: -t, 2: 1})  # (1 - alpha T)(1 - T/alpha)
        poly = pair
        for i in range(n + 1):
            # shift p^(n/2 - i), a half-integral power
            shift = QuadExt.sqrt_of(Fraction(p) ** (n - 2 * i))
            poly = poly * LaurentPolynomial({0: 1, 1: -shift})
        degree = n + 3
    assert poly.coefficient(0) == 1 and poly.degree == degree
    return EulerFactor(p=p, degree=degree, poly=poly)


# ---------------------------------------------------------------------------
# Demo evaluation of the lifted form's Whittaker expansion
# ---------------------------------------------------------------------------

def whittaker_weight_partial_sum(
    ctx: LiftContext,
    t: float,
    cutoff: int,
    x1: float = 0.0,
    xn: float = 0.0,
    xprime_norm: float = 0.0,
    cfg=None,
):
    """Partial sum of A(eta) * W-profile(eta) over the diagonal family
    eta = (c, 0, ..., 0, S), c S <= cutoff, as 2l+1 numeric components.

    A demo-scale evaluator: the full Fourier expansion runs over all of
    V'(Z), but the diagonal rank-2 family is the one adapted to the
    Fourier-Jacobi coordinates and is finite per cutoff.
    """
    from .arch_num import QuadratureConfig, WhittakerPoint, whittaker_profile

    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    cfg = cfg or QuadratureConfig()
    l = ctx.l
    total = [0j] * (2 * l + 1)
    if cutoff == 0:
        return total
    space = ctx.space
    m = space.m
    for c in range(1, cutoff + 1):
        for S in range(1, cutoff // c + 1):
            coords = [0] * space.dim
            coords[0] = c
            coords[m] = S
            eta = EtaVector(space, tuple(coords))
            if ctx.space.parity == "even":
                A = lift_coefficient_even(ctx, eta)
            else:
                A = lift_coefficient_odd(ctx, eta)
            point = WhittakerPoint(a=float(c), S=float(S), t=t,
                                   x1=x1, xn=xn, xprime_norm=xprime_norm)
            prof = whittaker_profile(l, point, cfg)
            for i in range(2 * l + 1):
                total[i] += float(A) * prof[i]
    return total
