"""Split quadratic spaces, lattice vectors and their local invariants.

Vectors live in split (hyperbolic) coordinates: for even dimension
2m the form is q(x_1..x_m, y_1..y_m) = sum x_i y_i, for odd dimension
2m+1 it is q(u_1..u_m, v_1..v_m, u_0) = sum u_i v_i + u_0^2, with the
distinguished diagonal coordinate last.  The associated bilinear
pairing is (x, y) = q(x+y) - q(x) - q(y), so the diagonal coordinate
enters pairings with a factor 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

from .exact_arith import kronecker_symbol, squarefree_decompose

__all__ = [
    "SplitQuadraticSpace",
    "EtaVector",
    "LocalInvariants",
    "DiscDecomposition",
    "ZeroQ",
    "BudgetExceeded",
    "qform",
    "local_invariants",
    "disc_decompose",
    "chi_eta",
    "enumerate_residue_vectors",
]


class ZeroQ(ValueError):
    """q(eta) = 0: the rank-2 local theory does not apply."""


class BudgetExceeded(RuntimeError):
    """An enumeration or brute-force sum would exceed the configured budget."""


@dataclass(frozen=True)
class SplitQuadraticSpace:
    """Split quadratic space of dimension n + 2 (n >= 3).

    parity 'even' means n even, dim = 2m; parity 'odd' means n odd,
    dim = 2m + 1.
    """

    n: int

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("need n >= 3")

    @property
    def parity(self) -> str:
        return "even" if self.n % 2 == 0 else "odd"

    @property
    def dim(self) -> int:
        return self.n + 2

    @property
    def m(self) -> int:
        return (self.n + 2) // 2

    def __repr__(self) -> str:
        return f"SplitQuadraticSpace(n={self.n}, dim={self.dim}, {self.parity})"


def qform(space: SplitQuadraticSpace, coords: Sequence[int]) -> int:
    """q on split coordinates; integer-exact."""
    if len(coords) != space.dim:
        raise ValueError(f"expected {space.dim} coordinates, got {len(coords)}")
    m = space.m
    total = sum(coords[i] * coords[m + i] for i in range(m))
    if space.parity == "odd":
        total += coords[2 * m] ** 2
    return total


def pairing(space: SplitQuadraticSpace, x: Sequence[int], y: Sequence[int]) -> int:
    """Bilinear pairing (x, y) = q(x+y) - q(x) - q(y)."""
    m = space.m
    total = sum(x[i] * y[m + i] + x[m + i] * y[i] for i in range(m))
    if space.parity == "odd":
        total += 2 * x[2 * m] * y[2 * m]
    return total


@dataclass(frozen=True)
class EtaVector:
    """Integer vector in split coordinates, not identically zero."""

    space: SplitQuadraticSpace
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.space.dim:
            raise ValueError("coordinate length does not match the space")
        if not any(self.coords):
            raise ValueError("eta must be nonzero")

    @property
    def q(self) -> int:
        return qform(self.space, self.coords)

    def scaled(self, c: int) -> "EtaVector":
        return EtaVector(self.space, tuple(c * x for x in self.coords))

    @property
    def diagonal_coord(self) -> int | None:
        """The u_0 coordinate (odd parity only)."""
        if self.space.parity != "odd":
            return None
        return self.coords[-1]


def eta_vector(n: int, coords: Sequence[int]) -> EtaVector:
    return EtaVector(SplitQuadraticSpace(n), tuple(int(c) for c in coords))


def _vp(x: int, p: int) -> int | None:
    """p-adic valuation; None stands for +infinity (x = 0)."""
    if x == 0:
        return None
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


@dataclass(frozen=True)
class LocalInvariants:
    """Per-prime data of eta: p^k || eta, p^(2k+k') || q(eta), unit part q1.

    chi is the local Siegel-series character value at p (odd parity
    only; None for even parity, where no character enters).
    """

    p: int
    k: int
    kprime: int
    q1: int
    chi: int | None

    @property
    def d(self) -> int:
        """v_p(q(eta)) = 2k + k'."""
        return 2 * self.k + self.kprime


def local_invariants(eta: EtaVector, p: int, chi_mode: str = "validated") -> LocalInvariants:
    """Compute (k, k', q1, chi) of eta at p.  Raises ZeroQ when q(eta) = 0."""
    q = eta.q
    if q == 0:
        raise ZeroQ("q(eta) = 0 has no Siegel local data")
    vals = [_vp(c, p) for c in eta.coords]
    k = min(v for v in vals if v is not None)
    v = _vp(q, p)
    kprime = v - 2 * k
    if kprime < 0:
        raise AssertionError("v_p(q) >= 2 v_p(eta) must hold")
    q1 = q // p ** v
    chi = None
    if eta.space.parity == "odd":
        chi = _chi_local(p, 2 * k + kprime, q1, chi_mode)
    return LocalInvariants(p=p, k=k, kprime=kprime, q1=q1, chi=chi)


def _chi_local(p: int, d: int, q1: int, mode: str) -> int:
    if d % 2 == 1:
        return 0
    if p != 2:
        return kronecker_symbol(q1, p)
    if mode == "kronecker":
        # literal reading: (q1/2) whenever 2k+k' is even
        return kronecker_symbol(q1, 2)
    if mode == "validated":
        # character of Q(sqrt(q(eta))) at 2: zero unless q1 = 1 mod 4
        r = q1 % 8
        if r == 1:
            return 1
        if r == 5:
            return -1
        return 0
    raise ValueError(f"unknown chi mode {mode!r}")


def chi_eta(inv, p: int | None = None, mode: str = "validated") -> int:
    """Local character value at p, from LocalInvariants or DiscDecomposition.

    For LocalInvariants the prime is taken from the record.  The two
    modes at p = 2 reflect the convention split in the source formulas;
    'validated' is the one the exponential-sum oracle confirms (it is
    the Kronecker character of the real field Q(sqrt(q)), vanishing for
    q1 = 3 mod 4), 'kronecker' is the literal (q1/2) rule.
    """
    if isinstance(inv, LocalInvariants):
        return _chi_local(inv.p, inv.d, inv.q1, mode)
    if isinstance(inv, DiscDecomposition):
        if p is None:
            raise ValueError("a prime is required with a DiscDecomposition")
        return kronecker_symbol(inv.signed_disc, p)
    raise TypeError("expected LocalInvariants or DiscDecomposition")


@dataclass(frozen=True)
class DiscDecomposition:
    """q(eta) = d_eta * f_eta^2 with d_eta an absolute fundamental discriminant.

    epsilon is +1 when the odd part of N is 1 mod 4 and -1 otherwise;
    d_eta is |disc Q(sqrt(epsilon N))|.  f_eta is a positive rational:
    it is a half-integer (not an integer) exactly when v_2(N) = 1, where
    epsilon*N = 2 mod 4 is not congruent to a discriminant.
    """

    d_eta: int
    f_eta: Fraction
    epsilon: int

    @property
    def signed_disc(self) -> int:
        return self.epsilon * self.d_eta if self.epsilon < 0 else self.d_eta

    @property
    def conductor(self) -> int:
        return self.d_eta


def disc_decompose(N: int) -> DiscDecomposition:
    """Fundamental-discriminant decomposition of a positive integer."""
    if N < 1:
        raise ValueError("need N >= 1")
    N1 = N
    while N1 % 2 == 0:
        N1 //= 2
    eps = 1 if N1 % 4 == 1 else -1
    s, f = squarefree_decompose(N)
    # signed kernel of eps*N
    t = eps * s
    if t % 4 == 1:
        disc = t
    else:
        disc = 4 * t
        f = Fraction(f, 2)
    f = Fraction(f)
    assert disc * f * f == eps * N or abs(disc) * f * f == N
    return DiscDecomposition(d_eta=abs(disc), f_eta=f, epsilon=eps)


def enumerate_residue_vectors(
    space: SplitQuadraticSpace, p: int, r: int, budget: int = 20_000_000
) -> Iterator[tuple[int, ...]]:
    """All vectors of (Z/p^r)^dim, exactly once.  Guarded by the budget."""
    if r < 0:
        raise ValueError("need r >= 0")
    count = (p ** r) ** space.dim
    if count > budget:
        raise BudgetExceeded(f"{count} vectors exceed the budget {budget}")
    yield from product(range(p ** r), repeat=space.dim)
