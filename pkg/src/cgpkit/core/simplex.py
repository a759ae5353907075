"""Uniform sampling on the probability simplex with a counter-based stream.

Sample ``k`` for a given seed is built from raw Philox words at a fixed
offset, ``k * words_per_sample``. Any contiguous range of samples can be
regenerated on its own without replaying the ones before it.
"""
from dataclasses import dataclass

import numpy as np

from ..exceptions import BadParameter

_U64 = 2**64
_INV_2_53 = 2.0**-53


@dataclass
class SimplexSampler:
    """Stream of uniform points on the (dim-1)-simplex.

    ``sample()`` returns the point at the current counter and advances it by
    one; ``at(k)`` and ``block(start, count)`` are pure lookups.
    """

    dim: int
    seed: int = 0
    counter: int = 0

    def __post_init__(self):
        if int(self.dim) < 2:
            raise BadParameter(f"simplex dimension must be >= 2, got {self.dim}")
        if not 0 <= int(self.seed) < _U64:
            raise BadParameter(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if int(self.counter) < 0:
            raise BadParameter("counter must be nonnegative")
        self.dim = int(self.dim)
        self.seed = int(self.seed)
        self.counter = int(self.counter)

    @property
    def words_per_sample(self) -> int:
        # Philox emits four 64-bit words per counter step
        return 4 * (-(-self.dim // 4))

    def block(self, start: int, count: int) -> np.ndarray:
        """Samples ``start, ..., start + count - 1`` as a ``(count, dim)`` array."""
        if start < 0 or count < 0:
            raise BadParameter("start and count must be nonnegative")
        width = self.words_per_sample
        bitgen = np.random.Philox(key=self.seed)
        bitgen.advance(start * (width // 4))
        raw = bitgen.random_raw(count * width).reshape(count, width)[:, : self.dim]
        u = ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * _INV_2_53
        e = -np.log(u)
        return e / e.sum(axis=1, keepdims=True)

    def at(self, k: int) -> np.ndarray:
        return self.block(k, 1)[0]

    def sample(self) -> np.ndarray:
        x = self.at(self.counter)
        self.counter += 1
        return x


def sample_simplex(sampler: SimplexSampler) -> np.ndarray:
    """Draw the next point from ``sampler`` (advances its counter by one)."""
    return sampler.sample()
