# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled single-site Metropolis loop; same generator and draw order as _sampler_py."""
from libc.stdint cimport uint64_t, int64_t


cdef inline uint64_t rotl(uint64_t x, int k) nogil:
    return (x << k) | (x >> (64 - k))


cdef inline uint64_t next_u64(uint64_t* s) nogil:
    cdef uint64_t result = rotl(s[1] * 5, 7) * 9
    cdef uint64_t t = s[1] << 17
    s[2] ^= s[0]
    s[3] ^= s[1]
    s[1] ^= s[2]
    s[0] ^= s[3]
    s[2] ^= t
    s[3] = rotl(s[3], 45)
    return result


def run_chain(int64_t[::1] vals, int64_t[::1] offs, int64_t[::1] lev_of, int64_t[::1] pos_of,
              int64_t d, int64_t steps, double q, uint64_t[::1] state):
    cdef int64_t n = lev_of.shape[0]
    cdef int64_t accepted = 0
    cdef int64_t step, j, k, i, cur, v, b, a
    cdef uint64_t r
    cdef uint64_t s[4]
    cdef double u
    if n == 0:
        return 0
    for j in range(4):
        s[j] = state[j]
    with nogil:
        for step in range(steps):
            r = next_u64(s)
            j = <int64_t>((r >> 1) % <uint64_t>n)
            k = lev_of[j]
            i = pos_of[j]
            cur = vals[offs[k] + i]
            if r & 1:
                v = cur + 1
            else:
                v = cur - 1
                if q < 1.0:
                    u = <double>(next_u64(s) >> 11) * (1.0 / 9007199254740992.0)
                    if not u < q:
                        continue
            b = offs[k - 1]
            if i < d + k - 1 and v < vals[b + i]:
                continue
            if i >= 1 and v >= vals[b + i - 1]:
                continue
            a = offs[k + 1]
            if v > vals[a + i] or v <= vals[a + i + 1]:
                continue
            vals[offs[k] + i] = v
            accepted += 1
    for j in range(4):
        state[j] = s[j]
    return accepted
