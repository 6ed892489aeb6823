"""Pure-Python single-site Metropolis loop (fallback for the compiled core)."""
from __future__ import annotations

from ._rng import next_u64, u64_to_unit


def run_chain(vals, offs, lev_of, pos_of, d, steps, q, state):
    """Run ``steps`` proposals in place on the flat level array ``vals``.

    ``offs[k]`` is the start of level k (size d+k); ``lev_of``/``pos_of`` map a
    movable-dot index to its level and position.  Returns the number of
    accepted moves.  ``state`` (4 words) is advanced in place.
    """
    n = len(lev_of)
    if n == 0:
        return 0
    accepted = 0
    for _ in range(steps):
        r = next_u64(state)
        j = (r >> 1) % n
        k = lev_of[j]
        i = pos_of[j]
        cur = vals[offs[k] + i]
        if r & 1:
            v = cur + 1
        else:
            v = cur - 1
            if q < 1.0 and not u64_to_unit(next_u64(state)) < q:
                continue
        b = offs[k - 1]
        size_below = d + k - 1
        if i < size_below and v < vals[b + i]:
            continue
        if i >= 1 and v >= vals[b + i - 1]:
            continue
        a = offs[k + 1]
        if v > vals[a + i] or v <= vals[a + i + 1]:
            continue
        vals[offs[k] + i] = v
        accepted += 1
    return accepted
