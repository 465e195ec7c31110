"""Deterministic counter-based random sampling (splitmix64 in counter mode).

The generator is pure integer arithmetic, so identical seeds produce
bit-identical sample sequences on every platform.  Each sample slot owns 8
consecutive 64-bit blocks; a sample at ``scale_bits`` consumes the top
``scale_bits`` bits of its slot, so enlarging the scale extends samples
bitwise instead of reshuffling the stream.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fixedpoint import DEFAULT_SCALE_BITS, FixedPoint

ALGORITHM_ID = "splitmix64-ctr/8"

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_DERIVE_SALT = 0x5851F42D4C957F2D
_BLOCKS_PER_SLOT = 8
_MAX_SCALE_BITS = 64 * _BLOCKS_PER_SLOT


def _mix(z: int) -> int:
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def _block(seed: int, index: int) -> int:
    """index-th 64-bit output of the stream with the given seed."""
    return _mix((seed + (index + 1) * _GAMMA) & _MASK64)


def derive_seed(base_seed: int, index: int) -> int:
    """Stable per-trial seed so parallel experiments are order-independent."""
    return _mix((base_seed ^ _DERIVE_SALT) + (index + 1) * _GAMMA)


@dataclass
class RngStream:
    """Counter-based stream; the counter counts consumed sample slots."""

    seed: int
    counter: int = field(default=0)

    def __post_init__(self) -> None:
        self.seed &= _MASK64
        if self.counter < 0:
            raise ValueError("counter must be nonnegative")

    def next_unit(self, scale_bits: int = DEFAULT_SCALE_BITS) -> FixedPoint:
        """Uniform sample in [0, 1) at the given scale; consumes one slot."""
        if scale_bits > _MAX_SCALE_BITS:
            raise ValueError(f"scale_bits > {_MAX_SCALE_BITS} not supported")
        slot = self.counter
        self.counter += 1
        nblocks = -(-scale_bits // 64)
        m = 0
        for j in range(nblocks):
            m = (m << 64) | _block(self.seed, slot * _BLOCKS_PER_SLOT + j)
        m >>= 64 * nblocks - scale_bits
        return FixedPoint(m, scale_bits)

    def sample_torus_point(self, scale_bits: int = DEFAULT_SCALE_BITS,
                           ) -> tuple[FixedPoint, FixedPoint]:
        """Uniform point of T^2; advances the counter by exactly 2."""
        x = self.next_unit(scale_bits)
        y = self.next_unit(scale_bits)
        return x, y
