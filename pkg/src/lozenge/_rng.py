"""xoshiro256** with splitmix64 seeding, in plain Python.

The compiled sampler implements the same generator bit for bit, so a seed
gives the same trajectory on either backend.
"""
from __future__ import annotations

MASK = (1 << 64) - 1
RNG_NAME = "xoshiro256**/splitmix64 v1"


def splitmix64(x: int):
    x = (x + 0x9E3779B97F4A7C15) & MASK
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return x, z ^ (z >> 31)


def seed_state(seed: int):
    x = seed & MASK
    out = []
    for _ in range(4):
        x, z = splitmix64(x)
        out.append(z)
    return out


def _rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & MASK


def next_u64(s):
    """Advance the 4-word state list in place and return the next output."""
    result = (_rotl((s[1] * 5) & MASK, 7) * 9) & MASK
    t = (s[1] << 17) & MASK
    s[2] ^= s[0]
    s[3] ^= s[1]
    s[1] ^= s[2]
    s[0] ^= s[3]
    s[2] ^= t
    s[3] = _rotl(s[3], 45)
    return result


def u64_to_unit(v: int) -> float:
    return (v >> 11) * (1.0 / 9007199254740992.0)
