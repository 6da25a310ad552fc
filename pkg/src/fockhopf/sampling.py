"""Seeded random data for property checks.

Coefficients are drawn uniformly from a dyadic grid (multiples of 2^-bits) in
the square [-1, 1] x [-1, 1] of the complex plane.  On such a grid every
product and partial sum arising in the exact-defect identities is itself an
exact double, so reorderings of floating-point accumulation cannot break an
"exactly zero" contract; checks that only need a tolerance use a finer grid.
Every stream is derived from an explicit seed, so runs are reproducible.
"""

from __future__ import annotations

import zlib

import numpy as np

from .predual import Functional, from_rank_one
from .regular import FourierSeries
from .spaces import FockSpace, Vector
from .words import Alphabet, enumerate_words

EXACT_BITS = 4
FINE_BITS = 10


def rng_for(seed: int, *labels: object) -> np.random.Generator:
    """An independent generator derived from the seed and a stable label path."""
    entropy = [int(seed) & 0xFFFFFFFFFFFFFFFF]
    entropy.extend(zlib.crc32(str(label).encode("utf-8")) for label in labels)
    return np.random.default_rng(np.random.SeedSequence(entropy))


def dyadic_complex(rng: np.random.Generator, size: int | None = None, bits: int = FINE_BITS):
    """Complex samples with real/imag parts uniform on the dyadic grid in [-1, 1]."""
    scale = 1 << bits
    shape = () if size is None else (size,)
    re = rng.integers(-scale, scale + 1, size=shape)
    im = rng.integers(-scale, scale + 1, size=shape)
    out = (re + 1j * im) / scale
    return complex(out) if size is None else out.astype(np.complex128)


def random_series(
    rng: np.random.Generator, alphabet: Alphabet, degree: int, bits: int = FINE_BITS
) -> FourierSeries:
    """Fully supported random series of the given degree."""
    words = enumerate_words(alphabet, degree)
    values = dyadic_complex(rng, len(words), bits=bits)
    return FourierSeries(alphabet, dict(zip(words, values)))


def random_vector(rng: np.random.Generator, space, bits: int = FINE_BITS) -> Vector:
    return Vector(space, dyadic_complex(rng, space.dim, bits=bits))


def random_rank_one_functional(
    rng: np.random.Generator, space: FockSpace, pairs: int = 1, bits: int = FINE_BITS
) -> Functional:
    pair_list = [
        (random_vector(rng, space, bits=bits), random_vector(rng, space, bits=bits))
        for _ in range(pairs)
    ]
    return from_rank_one(space, pair_list)


def random_ball_point(
    rng: np.random.Generator, n: int, radius: float = 0.7, bits: int = 5
) -> tuple[complex, ...]:
    """A point of the open ball of the given radius, coordinates on a dyadic grid.

    The coarse default grid keeps monomial identities exact in double
    precision at the depths this package works with.  Rejection keeps the
    coordinates on the grid but its acceptance rate collapses in high
    dimension, so after a bounded number of attempts the sample is halved
    into the ball instead (halving a dyadic stays dyadic).
    """
    if not 0 < radius < 1:
        raise ValueError("radius must lie in (0, 1)")
    bound = radius**2
    coords = dyadic_complex(rng, n, bits=bits)
    for _ in range(64):
        if sum(abs(z) ** 2 for z in coords) < bound:
            return tuple(complex(z) for z in coords)
        coords = dyadic_complex(rng, n, bits=bits)
    while sum(abs(z) ** 2 for z in coords) >= bound:
        coords = coords / 2
    return tuple(complex(z) for z in coords)
