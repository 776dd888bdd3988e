"""Deterministic random streams for level generation and replay.

Every recorded session must replay bit-for-bit on any platform, so the
generator is pinned here instead of using the interpreter's default:

* stream: Marsaglia xorshift64* (shifts 12 / 25 / 27, multiplier
  0x2545F4914F6CDD1D), 64-bit state, state zero forbidden
* seeding: one splitmix64 step over the user seed; a zero result is
  replaced by the splitmix64 increment constant
* bounded draws: plain modulo reduction (``next_u64() % n``)
* shuffling: Fisher-Yates from the tail using ``below(i + 1)``

Changing any of these constants invalidates every stored session log.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1

# splitmix64 increment ("golden gamma") and output-mixing multipliers.
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

_XSS_MULT = 0x2545F4914F6CDD1D


def splitmix64(state: int) -> tuple[int, int]:
    """Advance a splitmix64 state once; returns (new_state, output)."""
    state = (state + _GAMMA) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    z = z ^ (z >> 31)
    return state, z


def mix64(value: int) -> int:
    """One splitmix64 output for ``value``; used to spread raw seeds."""
    return splitmix64(value & _MASK64)[1]


def derive_seed(root: int, index: int) -> int:
    """Child seed for stream ``index`` of ``root`` (level seeds etc.)."""
    return mix64((root ^ ((index + 1) * _GAMMA)) & _MASK64)


class GameRng:
    """Pinned xorshift64* stream seeded through splitmix64."""

    def __init__(self, seed: int):
        state = mix64(seed & _MASK64)
        self._state = state if state != 0 else _GAMMA

    def next_u64(self) -> int:
        s = self._state
        s ^= s >> 12
        s ^= (s << 25) & _MASK64
        s ^= s >> 27
        self._state = s
        return (s * _XSS_MULT) & _MASK64

    def below(self, n: int) -> int:
        """Integer in [0, n). Modulo reduction, pinned for replay."""
        if n <= 0:
            raise ValueError("bound must be positive")
        return self.next_u64() % n

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle driven by this stream."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
