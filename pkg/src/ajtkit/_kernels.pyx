# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled search kernels for p <= 127.

Mirror of _kernels_py: same functions, same traversal order, two 64-bit limbs
glued into a 128-bit mask. The visited table is open addressing with linear
probing; key 0 is the empty slot sentinel (every reachable state contains
{0, 1}, so 0 never occurs as a key).
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memset

cdef extern from *:
    """
    typedef unsigned __int128 ajt_u128;
    static inline int ajt_popcount128(ajt_u128 x) {
        return __builtin_popcountll((unsigned long long)x)
             + __builtin_popcountll((unsigned long long)(x >> 64));
    }
    static inline int ajt_ctz128(ajt_u128 x) {
        unsigned long long lo = (unsigned long long)x;
        if (lo) return __builtin_ctzll(lo);
        return 64 + __builtin_ctzll((unsigned long long)(x >> 64));
    }
    static inline unsigned long long ajt_mix64(unsigned long long z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    """
    ctypedef unsigned long long u128 "ajt_u128"
    int popcount128 "ajt_popcount128"(u128 x) nogil
    int ctz128 "ajt_ctz128"(u128 x) nogil
    unsigned long long mix64 "ajt_mix64"(unsigned long long z) nogil

ctypedef unsigned long long u64


cdef inline u128 _from_obj(object mask):
    cdef u64 lo = <u64> (mask & 0xFFFFFFFFFFFFFFFF)
    cdef u64 hi = <u64> (mask >> 64)
    return ((<u128> hi) << 64) | (<u128> lo)


cdef inline object _to_obj(u128 m):
    cdef u64 lo = <u64> m
    cdef u64 hi = <u64> (m >> 64)
    if hi:
        return (int(hi) << 64) | int(lo)
    return int(lo)


cdef inline u128 _rotl(u128 mask, int s, int p, u128 full) nogil:
    if s == 0:
        return mask
    return ((mask << s) | (mask >> (p - s))) & full


cdef inline u128 _witness(u128 a, int p, u128 full) nogil:
    cdef u128 w = 0
    cdef int d
    cdef int half = (p - 1) // 2
    for d in range(1, half + 1):
        w |= _rotl(a, d, p, full) & _rotl(a, p - d, p, full)
        if (a & ~w) == 0:
            break
    return a & w


cdef inline Py_ssize_t _slot(u128 key, Py_ssize_t cap) nogil:
    cdef u64 h = mix64((<u64> key) ^ (mix64(<u64> (key >> 64)) | 1))
    return <Py_ssize_t> (h & <u64> (cap - 1))


cdef int _visited_add(u128** keys, Py_ssize_t* cap, Py_ssize_t* used, u128 key) except -1:
    """Insert key; return 1 if newly added, 0 if already present."""
    cdef Py_ssize_t i, j, newcap
    cdef u128* fresh
    cdef u128 k
    if (used[0] + 1) * 10 >= cap[0] * 6:
        newcap = cap[0] * 2
        fresh = <u128*> malloc(newcap * sizeof(u128))
        if fresh == NULL:
            raise MemoryError()
        memset(fresh, 0, newcap * sizeof(u128))
        for i in range(cap[0]):
            k = keys[0][i]
            if k != 0:
                j = _slot(k, newcap)
                while fresh[j] != 0:
                    j = (j + 1) & (newcap - 1)
                fresh[j] = k
        free(keys[0])
        keys[0] = fresh
        cap[0] = newcap
    i = _slot(key, cap[0])
    while keys[0][i] != 0:
        if keys[0][i] == key:
            return 0
        i = (i + 1) & (cap[0] - 1)
    keys[0][i] = key
    used[0] += 1
    return 1


def s1_witness_mask(mask, int p):
    """Elements a of the set with a centered progression a-d, a, a+d inside it."""
    if p < 3 or p > 127:
        raise ValueError("compiled kernel supports 3 <= p <= 127")
    cdef u128 full = ((<u128> 1) << p) - 1
    return _to_obj(_witness(_from_obj(mask), p, full))


def s1_exhaust(int p, int limit, long long node_budget):
    """Same contract and traversal order as the pure twin."""
    if p < 5 or p > 127:
        raise ValueError("compiled kernel supports 5 <= p <= 127")
    if limit < 2:
        return (0, True, 0)
    cdef u128 full = ((<u128> 1) << p) - 1
    cdef int half = (p - 1) // 2
    cdef long long nodes = 0
    cdef u128 a, w, uncovered, child
    cdef u128 kids[64]
    cdef Py_ssize_t i
    cdef int nkids, d, e, lo_i, hi_i
    cdef int found = 0
    cdef u128 result = 0
    cdef int out_of_budget = 0

    cdef Py_ssize_t cap = 1 << 16
    cdef Py_ssize_t used = 0
    cdef u128* keys = <u128*> malloc(cap * sizeof(u128))
    if keys == NULL:
        raise MemoryError()
    memset(keys, 0, cap * sizeof(u128))

    cdef Py_ssize_t scap = 1 << 12
    cdef Py_ssize_t sp = 0
    cdef u128* stack = <u128*> malloc(scap * sizeof(u128))
    cdef u128* grown
    if stack == NULL:
        free(keys)
        raise MemoryError()

    try:
        _visited_add(&keys, &cap, &used, <u128> 3)
        stack[0] = <u128> 3
        sp = 1
        while sp > 0:
            sp -= 1
            a = stack[sp]
            nodes += 1
            if nodes > node_budget:
                out_of_budget = 1
                break
            w = _witness(a, p, full)
            uncovered = a & ~w
            if uncovered == 0:
                found = 1
                result = a
                break
            e = ctz128(uncovered)
            nkids = 0
            for d in range(1, half + 1):
                lo_i = e - d
                if lo_i < 0:
                    lo_i += p
                hi_i = e + d
                if hi_i >= p:
                    hi_i -= p
                child = a | ((<u128> 1) << lo_i) | ((<u128> 1) << hi_i)
                if popcount128(child) <= limit:
                    if _visited_add(&keys, &cap, &used, child):
                        kids[nkids] = child
                        nkids += 1
            if sp + nkids > scap:
                while sp + nkids > scap:
                    scap *= 2
                grown = <u128*> malloc(scap * sizeof(u128))
                if grown == NULL:
                    raise MemoryError()
                for i in range(sp):
                    grown[i] = stack[i]
                free(stack)
                stack = grown
            # push in reverse so pops see ascending d, like the pure twin
            for d in range(nkids - 1, -1, -1):
                stack[sp] = kids[d]
                sp += 1
    finally:
        free(keys)
        free(stack)

    if found:
        return (_to_obj(result), True, int(nodes))
    if out_of_budget:
        return (0, False, int(nodes))
    return (0, True, int(nodes))
