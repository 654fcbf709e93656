import random

import pytest

from siegelift.quad_space import EtaVector, SplitQuadraticSpace


def make_eta(n, coords):
    return EtaVector(SplitQuadraticSpace(n), tuple(coords))


def primitive_eta(n, q):
    """(1, 0...0, q, 0...0): a primitive vector with q(eta) = q."""
    space = SplitQuadraticSpace(n)
    coords = [0] * space.dim
    coords[0] = 1
    coords[space.m] = q
    return EtaVector(space, tuple(coords))


def random_eta_matrix(n, p, count, seed, kmax=2, kpmax=3):
    """Seeded eta vectors spanning k <= kmax, k' <= kpmax at p."""
    rng = random.Random(seed * 1_000_003 + n * 1009 + p)
    space = SplitQuadraticSpace(n)
    out = []
    guard = 0
    while len(out) < count and guard < 50 * count:
        guard += 1
        k = rng.randrange(kmax + 1)
        kp = rng.randrange(kpmax + 1)
        unit = rng.choice([1, 2, 3, 5, 7, 11, 13])
        coords = [0] * space.dim
        coords[0] = 1
        coords[space.m] = p ** kp * unit
        style = rng.randrange(3)
        if style == 1 and space.parity == "odd":
            # diagonal-coordinate flavored vectors (2-adic case split)
            coords = [0] * space.dim
            coords[-1] = rng.choice([1, 3, 5])
            coords[0] = rng.choice([0, 2, 4])
            coords[space.m] = rng.choice([0, 2, 6])
        elif style == 2:
            coords[1] = rng.randrange(4)
            coords[space.m + 1] = rng.randrange(4)
        eta = EtaVector(space, tuple(c * p ** k for c in coords))
        if eta.q > 0:
            out.append(eta)
    assert len(out) == count
    return out


@pytest.fixture(scope="session")
def delta_context():
    from siegelift.lift import lift_context

    return lift_context(10, 16, precision=64)
