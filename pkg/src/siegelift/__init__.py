"""Exact Siegel series, Eisenstein coefficients and Ikeda-type lifts
on split quadratic spaces, with brute-force oracles and a numerics
sidecar for the archimedean integral identities."""

from .exact_arith import (
    InexactDivision,
    LaurentPolynomial,
    NotSymmetric,
    PiScaledRational,
    QuadExt,
    Rational,
    bernoulli_number,
    dirichlet_L_negative,
    generalized_bernoulli,
    kronecker_symbol,
    laurent_divide_exact,
    laurent_symmetric_rewrite,
)
from .quad_space import (
    BudgetExceeded,
    DiscDecomposition,
    EtaVector,
    LocalInvariants,
    SplitQuadraticSpace,
    ZeroQ,
    chi_eta,
    disc_decompose,
    enumerate_residue_vectors,
    local_invariants,
    qform,
)
from .exp_sums import (
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

__version__ = "0.1.0"
