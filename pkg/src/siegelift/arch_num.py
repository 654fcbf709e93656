"""Numerical verification of the archimedean kernels: K-Bessel functions,
the generalized Whittaker profile, and the Gaussian-Bessel line integrals.

All quadrature is double precision adaptive Simpson with an error
estimate from Richardson halving; integrands here are entire and decay
like exp(-t^2) or faster, so a fixed truncation radius with a
documented bound suffices.  The closed forms for the line integrals
C(2r, lambda) are derived symbolically (exact Fraction-coefficient
polynomials) from the first-order recurrence in lambda, seeded at the
r = 0 value; the direct quadrature is the second, independent route.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "NonConvergence",
    "QuadratureConfig",
    "WhittakerPoint",
    "bessel_k",
    "bessel_k_series",
    "u_eta",
    "whittaker_profile",
    "integral_Iv",
    "appendix_recurrence_check",
    "appendix_C_closed",
    "c_closed_polynomials",
    "gamma_kernel_report",
]

_EULER_GAMMA = 0.5772156649015328606


class NonConvergence(RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-13
    max_subdivisions: int = 100_000
    truncation_radius: float = 8.0

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0 or self.truncation_radius <= 0:
            raise ValueError("tolerances and radius must be positive")


@dataclass(frozen=True)
class WhittakerPoint:
    """Evaluation point for the rank-2 Whittaker profile.

    a and S are the two nonzero split coordinates of eta (a S > 0), t
    the torus parameter, (x1, xn, xprime_norm) the Heisenberg slice.
    """

    a: float
    S: float
    t: float
    x1: float = 0.0
    xn: float = 0.0
    xprime_norm: float = 0.0

    def __post_init__(self):
        if self.a * self.S <= 0:
            raise ValueError("need a*S > 0")
        if self.t <= 0:
            raise ValueError("need t > 0")
        if self.xprime_norm < 0:
            raise ValueError("norm (x', x') must be >= 0")


# ---------------------------------------------------------------------------
# Adaptive Simpson
# ---------------------------------------------------------------------------

def _simpson(f, a, fa, b, fb, c, fc):
    return (b - a) / 6.0 * (fa + 4.0 * fc + fb)


def adaptive_simpson(f, a: float, b: float, cfg: QuadratureConfig, initial_panels: int = 16):
    """Adaptive Simpson with |S_half - S| / 15 error control; complex-safe.

    The interval is pre-partitioned into initial_panels panels so a
    localized integrand cannot hide from the first coarse samples.
    """
    budget = [cfg.max_subdivisions]

    def recurse(a, fa, b, fb, c, fc, whole, depth):
        if budget[0] <= 0:
            raise NonConvergence("subdivision budget exhausted")
        budget[0] -= 1
        m1 = 0.5 * (a + c)
        m2 = 0.5 * (c + b)
        f1 = f(m1)
        f2 = f(m2)
        left = _simpson(f, a, fa, c, fc, m1, f1)
        right = _simpson(f, c, fc, b, fb, m2, f2)
        err = abs(left + right - whole)
        scale = max(abs(left + right), 1.0) * cfg.rel_tol + cfg.abs_tol
        if err <= 15.0 * scale or depth > 48:
            return left + right + (left + right - whole) / 15.0
        return recurse(a, fa, c, fc, m1, f1, left, depth + 1) + recurse(
            c, fc, b, fb, m2, f2, right, depth + 1
        )

    total = 0.0 + 0.0j
    h = (b - a) / initial_panels
    for i in range(initial_panels):
        x0 = a + i * h
        x1 = x0 + h
        c = 0.5 * (x0 + x1)
        f0, f1, fc = f(x0), f(x1), f(c)
        whole = _simpson(f, x0, f0, x1, f1, c, fc)
        total += recurse(x0, f0, x1, f1, c, fc, whole, 0)
    return total


# ---------------------------------------------------------------------------
# K-Bessel
# ---------------------------------------------------------------------------

def bessel_k(v: int, y: float, cfg: QuadratureConfig | None = None) -> float:
    """K_v(y) = (1/2) int_0^inf e^(-y(t + 1/t)/2) t^v dt/t by quadrature.

    Uses the substitution t = e^u, giving int_0^inf e^(-y cosh u)
    cosh(v u) du; K_(-v) = K_v holds by construction.
    """
    if y <= 0:
        raise ValueError("need y > 0")
    cfg = cfg or QuadratureConfig()
    v = abs(v)

    # factor out e^(-y) so the integrand is O(1) at u = 0 even for large y
    def integrand(u: float) -> float:
        w = -y * (math.cosh(u) - 1.0)
        if w < -745.0:
            return 0.0
        c = math.cosh(v * u)
        return math.exp(w + math.log(c)) if c > 1e300 else math.exp(w) * c

    # truncation point: e^(-y (cosh U - 1)) cosh(vU) below the floor
    U = 1.0
    while U < 100.0:
        w = -y * (math.cosh(U) - 1.0) + abs(v) * U
        if w < math.log(cfg.abs_tol) - 10.0 - abs(v):
            break
        U += 1.0
    else:
        raise NonConvergence("failed to find a truncation point")
    return math.exp(-y) * adaptive_simpson(integrand, 0.0, U, cfg).real if y < 700 else 0.0


def bessel_k_series(v: int, y: float, terms: int = 80) -> float:
    """Independent ascending-series evaluation of K_v (integer v).

    Standard log-series; loses relative accuracy for large y through
    cancellation, so callers at y >> 10 should use high-precision
    arithmetic or the quadrature route instead.
    """
    n = abs(v)
    x = y

    def i_series(nn: int) -> float:
        s = 0.0
        for m in range(terms):
            s += (x / 2.0) ** (2 * m + nn) / (
                math.factorial(m) * math.factorial(m + nn)
            )
        return s

    if n == 0:
        total = -(math.log(x / 2.0) + _EULER_GAMMA) * i_series(0)
        h = 0.0
        for m in range(1, terms):
            h += 1.0 / m
            total += (x * x / 4.0) ** m / math.factorial(m) ** 2 * h
        return total

    def psi(kk: int) -> float:
        return -_EULER_GAMMA + sum(1.0 / i for i in range(1, kk))

    total = 0.5 * (x / 2.0) ** (-n) * sum(
        math.factorial(n - m - 1) / math.factorial(m) * (-x * x / 4.0) ** m
        for m in range(n)
    )
    total += (-1) ** (n + 1) * math.log(x / 2.0) * i_series(n)
    s2 = 0.0
    for m in range(terms):
        s2 += (
            (psi(m + 1) + psi(n + m + 1))
            * (x * x / 4.0) ** m
            / (math.factorial(m) * math.factorial(n + m))
        )
    total += (-1) ** n * 0.5 * (x / 2.0) ** n * s2
    return total


# ---------------------------------------------------------------------------
# Whittaker profile
# ---------------------------------------------------------------------------

def u_eta(point: WhittakerPoint, pollack_sqrt2: bool = False) -> complex:
    """The complex parameter u of the rank-2 profile at the given point:

    u = -2 pi i { (a t^2 + S) - i S t (x1 + xn) - S t^2 x1 xn
                  + S t^2 (x', x') }

    pollack_sqrt2 switches to the normalization with an extra sqrt(2)
    (the alternative convention for the quadratic form over R).
    """
    a, S, t = point.a, point.S, point.t
    bracket = complex(
        a * t * t + S - S * t * t * point.x1 * point.xn
        + S * t * t * point.xprime_norm,
        -S * t * (point.x1 + point.xn),
    )
    u = -2j * math.pi * bracket
    if pollack_sqrt2:
        u *= math.sqrt(2.0)
    return u


def whittaker_profile(
    l: int,
    point: WhittakerPoint,
    cfg: QuadratureConfig | None = None,
    ordering: str = "ours",
) -> list[complex]:
    """The 2l+1 components t^(l+1) (|u|/u)^v K_v(|u|), v = -l..l.

    ordering 'ours' lists the coefficient of [x^(l+v) y^(l-v)] at index
    l+v; 'alternate' flips v -> -v (the other basis-ordering convention
    in the source; tests only assert ordering-independent facts).
    """
    if l < 1:
        raise ValueError("need l >= 1")
    if ordering not in ("ours", "alternate"):
        raise ValueError("ordering must be 'ours' or 'alternate'")
    cfg = cfg or QuadratureConfig()
    u = u_eta(point)
    mag = abs(u)
    phase = abs(u) / u
    scale = point.t ** (l + 1)
    kv = {v: bessel_k(v, mag, cfg) for v in range(l + 1)}
    out = []
    for v in range(-l, l + 1):
        vv = v if ordering == "ours" else -v
        out.append(scale * phase ** vv * kv[abs(vv)])
    return out


# ---------------------------------------------------------------------------
# Appendix line integrals
# ---------------------------------------------------------------------------

def integral_Iv(
    v: int, r: int, mu: float, lam: float, cfg: QuadratureConfig | None = None
) -> complex:
    """I_v(r, mu, lambda) = int_R t^r e^(-t^2) (z/|z|)^v K_v(|z|) dt with
    z = (t + i lambda)^2 - mu."""
    if mu <= 0 or lam <= 0:
        raise ValueError("need mu, lambda > 0")
    cfg = cfg or QuadratureConfig()
    T = cfg.truncation_radius

    def integrand(t: float) -> complex:
        z = complex(t * t - lam * lam - mu, 2.0 * lam * t)
        mag = abs(z)
        phase = (z / mag) ** v
        return (t ** r) * math.exp(-t * t) * phase * bessel_k(v, mag, cfg)

    return adaptive_simpson(integrand, -T, T, cfg)


def appendix_recurrence_check(
    v: int,
    r: int,
    mu: float,
    lam: float,
    h: float = 1e-3,
    cfg: QuadratureConfig | None = None,
) -> float:
    """|d/dmu I_v - (I_{v+1} + I_{v-1})/2| with a central difference."""
    if h <= 0:
        raise ValueError("need h > 0")
    cfg = cfg or QuadratureConfig()
    dplus = integral_Iv(v, r, mu + h, lam, cfg)
    dminus = integral_Iv(v, r, mu - h, lam, cfg)
    lhs = (dplus - dminus) / (2.0 * h)
    rhs = 0.5 * (integral_Iv(v + 1, r, mu, lam, cfg) + integral_Iv(v - 1, r, mu, lam, cfg))
    return abs(lhs - rhs)


# -- closed form for C(2r, lambda) ------------------------------------------

def c_closed_polynomials(r: int) -> tuple[list[Fraction], list[Fraction]]:
    """Exact polynomials (p_r, q_r) with

        C(2r, lambda) = pi sqrt(2) E(lambda) p_r(lambda^2)
                        + pi lambda e^(-lambda^2) q_r(lambda^2),

    E(lambda) = e^(lambda^2) int_{sqrt(2) lambda}^inf e^(-u^2) du.

    Obtained by integrating the first-order recurrence
    (e^(-L^2) C(2r))' = -(2r-1) L e^(-L^2) C(2r-2) down from infinity
    (note: the RHS sign printed in the source ODE is flipped; the sign
    here is the one consistent with the source's own relations
    C + D = (r - 1/2) C(2r-2), dC/dL = -2 L D and with quadrature),
    seeded at p_0 = 1, q_0 = 0.  Writing G = e^(-L^2) E, the two
    reduction identities are

      int_L^inf s^(2i+1) G(s) ds
          = -L^(2i+2) G(L)/(2i+2) + sqrt(2)/(2i+2) M_i,
      M_i := int_L^inf s^(2i+2) e^(-2 s^2) ds
           = (L^(2i+1)/4) e^(-2 L^2) + ((2i+1)/4) M_(i-1),
      M_(-1) = G(L)/sqrt(2),

    which close the (E, lambda e^(-lambda^2)) basis.  Coefficient lists
    are in powers of x = lambda^2; deg p_r = r, deg q_r = r - 1.
    """
    if r < 0:
        raise ValueError("need r >= 0")
    p = [Fraction(1)]
    q: list[Fraction] = []
    for rr in range(1, r + 1):
        c = Fraction(2 * rr - 1)
        imax = max(len(p), len(q))
        # M_i = alpha_i(L) e^(-2L^2) + (beta_i / sqrt(2)) G(L), with
        # alpha_i = L * (poly in x); store the x-polynomial.
        alphas: list[list[Fraction]] = []
        betas: list[Fraction] = []
        a_prev: list[Fraction] = []
        b_prev = Fraction(1)
        for i in range(imax):
            a_i = [Fraction(0)] * (i + 1)
            a_i[i] = Fraction(1, 4)
            for j, cj in enumerate(a_prev):
                a_i[j] += Fraction(2 * i + 1, 4) * cj
            b_i = Fraction(2 * i + 1, 4) * b_prev
            alphas.append(a_i)
            betas.append(b_i)
            a_prev, b_prev = a_i, b_i
        new_p = [Fraction(0)] * (len(p) + 1)
        new_q = [Fraction(0)] * imax
        for i, Pi in enumerate(p):
            if not Pi:
                continue
            den = Fraction(1, 2 * i + 2)
            new_p[0] += c * Pi * den * betas[i]
            new_p[i + 1] += -c * Pi * den
            for j, aj in enumerate(alphas[i]):
                new_q[j] += c * Pi * 2 * den * aj
        for i, Ri in enumerate(q):
            if not Ri:
                continue
            new_p[0] += c * Ri * Fraction(1, 2) * betas[i]
            for j, aj in enumerate(alphas[i]):
                new_q[j] += c * Ri * aj
        while new_p and not new_p[-1]:
            new_p.pop()
        while new_q and not new_q[-1]:
            new_q.pop()
        p, q = new_p, new_q
    return p, q


def _poly_eval(coeffs: list[Fraction], x: float) -> float:
    total = 0.0
    for c in reversed(coeffs):
        total = total * x + float(c)
    return total


def _E_factor(lam: float) -> float:
    """E(lambda) = e^(lambda^2) int_(sqrt 2 lam)^inf e^(-u^2) du."""
    return math.exp(lam * lam) * 0.5 * math.sqrt(math.pi) * math.erfc(math.sqrt(2.0) * lam)


def appendix_C_closed(
    r: int, lam: float, cfg: QuadratureConfig | None = None
) -> dict:
    """C(2r, lambda) two ways: direct quadrature and the integrated
    recurrence (exact polynomials against E(lambda)).

    Returns a dict with both values, the polynomials, and the relative
    gap; the Gamma-kernel convention report for r = 0 lives in
    gamma_kernel_report.
    """
    if r < 0:
        raise ValueError("need r >= 0")
    if lam <= 0:
        raise ValueError("need lambda > 0")
    cfg = cfg or QuadratureConfig()
    T = cfg.truncation_radius

    def integrand(t: float) -> float:
        return (t ** (2 * r)) * math.exp(-t * t) * bessel_k(0, t * t + lam * lam, cfg)

    quad = adaptive_simpson(integrand, -T, T, cfg).real
    p, q = c_closed_polynomials(r)
    x = lam * lam
    closed = (
        math.pi * math.sqrt(2.0) * _E_factor(lam) * _poly_eval(p, x)
        + math.pi * lam * math.exp(-x) * _poly_eval(q, x)
    )
    gap = abs(quad - closed) / max(abs(quad), 1e-300)
    return {
        "r": r,
        "lambda": lam,
        "quadrature": quad,
        "closed": closed,
        "relative_gap": gap,
        "p_poly": [str(c) for c in p],
        "q_poly": [str(c) for c in q],
    }


def gamma_kernel_report(lam: float, cfg: QuadratureConfig | None = None) -> dict:
    """Resolve the incomplete-Gamma kernel reading of C(0, lambda).

    Candidates for C(0,lambda) = (pi/sqrt 2) Gamma(1/2, 2 lambda^2):
      literal    : Gamma(s, x) with kernel e^(-t^2) as printed
      standard   : conventional kernel e^(-t)
      *_exp      : the same times e^(lambda^2)
    Returns all four against the quadrature value; the winner is logged
    by the CLI and the tests.
    """
    cfg = cfg or QuadratureConfig()
    T = cfg.truncation_radius

    def integrand(t: float) -> float:
        return math.exp(-t * t) * bessel_k(0, t * t + lam * lam, cfg)

    quad = adaptive_simpson(integrand, -T, T, cfg).real
    x = 2.0 * lam * lam

    def gamma_literal(x0: float) -> float:
        return adaptive_simpson(
            lambda t: t ** (-0.5) * math.exp(-t * t), x0, x0 + 30.0, cfg
        ).real

    def gamma_standard(x0: float) -> float:
        return adaptive_simpson(
            lambda t: t ** (-0.5) * math.exp(-t), x0, x0 + 60.0, cfg
        ).real

    base = math.pi / math.sqrt(2.0)
    candidates = {
        "literal": base * gamma_literal(x),
        "standard": base * gamma_standard(x),
        "literal_exp": base * gamma_literal(x) * math.exp(lam * lam),
        "standard_exp": base * gamma_standard(x) * math.exp(lam * lam),
    }
    gaps = {k: abs(v - quad) / max(abs(quad), 1e-300) for k, v in candidates.items()}
    winner = min(gaps, key=gaps.get)
    return {
        "lambda": lam,
        "quadrature": quad,
        "candidates": candidates,
        "relative_gaps": gaps,
        "matching_convention": winner,
    }
