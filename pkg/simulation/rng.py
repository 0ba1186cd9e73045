"""Portable random stream: xoshiro256++ seeded through splitmix64, Box-Muller normals.

The algorithms are fixed so that a seed gives the same matrix on every
platform and in every implementation that follows the same recipe.
"""
import numpy as np

MASK64 = (1 << 64) - 1


def splitmix64(state: int):
    """Return (next_state, output) of the splitmix64 generator."""
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


class Xoshiro256PlusPlus:
    def __init__(self, seed: int):
        state = int(seed) & MASK64
        words = []
        for _ in range(4):
            state, word = splitmix64(state)
            words.append(word)
        self.s = words

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self.s
        mixed = (s0 + s3) & MASK64
        result = ((((mixed << 23) | (mixed >> 41)) & MASK64) + s0) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = ((s3 << 45) | (s3 >> 19)) & MASK64
        self.s = [s0, s1, s2, s3]
        return result

    def u64_array(self, count: int) -> np.ndarray:
        s0, s1, s2, s3 = self.s
        out = [0] * count
        for index in range(count):
            mixed = (s0 + s3) & MASK64
            out[index] = ((((mixed << 23) | (mixed >> 41)) & MASK64) + s0) & MASK64
            t = (s1 << 17) & MASK64
            s2 ^= s0
            s3 ^= s1
            s1 ^= s2
            s0 ^= s3
            s2 ^= t
            s3 = ((s3 << 45) | (s3 >> 19)) & MASK64
        self.s = [s0, s1, s2, s3]
        return np.array(out, dtype=np.uint64)

    def uniforms(self, count: int) -> np.ndarray:
        """Doubles in [0, 1) from the top 53 bits of each output."""
        return (self.u64_array(count) >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))

    def normals(self, count: int) -> np.ndarray:
        """count standard normals; pair p uses uniforms (2p, 2p+1), cosine branch first."""
        pairs = (count + 1) // 2
        u = self.uniforms(2 * pairs)
        radius = np.sqrt(-2.0 * np.log(1.0 - u[0::2]))
        angle = 2.0 * np.pi * u[1::2]
        out = np.empty(2 * pairs)
        out[0::2] = radius * np.cos(angle)
        out[1::2] = radius * np.sin(angle)
        return out[:count]
