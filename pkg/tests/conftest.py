import numpy as np
import pytest

from tiltbound import SymmetricDiscreteDistribution


def random_symmetric_distribution(
    rng: np.random.Generator,
    max_pairs: int = 10,
    x_high: float = 10.0,
    allow_zero_atom: bool = True,
) -> SymmetricDiscreteDistribution:
    """Random valid symmetric law: sorted atoms in (0, x_high], Dirichlet-ish weights."""
    n = int(rng.integers(1, max_pairs + 1))
    xs = np.sort(rng.uniform(1e-3, x_high, size=n))
    # enforce strict increase under float comparison
    for i in range(1, n):
        if xs[i] <= xs[i - 1]:
            xs[i] = np.nextafter(xs[i - 1], np.inf)
    weights = rng.uniform(0.05, 1.0, size=n)
    zero_mass = rng.uniform(0.0, 1.0) if (allow_zero_atom and rng.random() < 0.5) else 0.0
    total = weights.sum() + zero_mass
    weights /= total
    zero_mass /= total
    atoms = []
    if zero_mass > 0.0:
        atoms.append((0.0, float(zero_mass)))
    atoms.extend((float(x), float(p)) for x, p in zip(xs, weights))
    return SymmetricDiscreteDistribution(atoms)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260808)
