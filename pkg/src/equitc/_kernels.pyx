# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: tensor-product term multiplication and GF(2) elimination."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()

DEF MAXSLOTS = 64


def tensor_mul_pairs(const int64_t[::1] ka, const int64_t[::1] ca,
                     const int64_t[::1] kb, const int64_t[::1] cb,
                     const int64_t[::1] radix, const int64_t[::1] stride,
                     const int64_t[::1] poff, const int64_t[::1] doff,
                     const int64_t[::1] prod_idx, const int64_t[::1] prod_coef,
                     const int64_t[::1] degs, bint signed, int64_t modulus):
    cdef Py_ssize_t na = ka.shape[0], nb = kb.shape[0], ns = radix.shape[0]
    cdef Py_ssize_t i, j, s, cnt = 0
    cdef int64_t u, v, p, coef, key, suffix, parity, r
    if ns > MAXSLOTS:
        raise ValueError("too many tensor slots")
    da_np = np.empty((na, ns), dtype=np.int64)
    db_np = np.empty((nb, ns), dtype=np.int64)
    cdef int64_t[:, ::1] da = da_np
    cdef int64_t[:, ::1] db = db_np
    for i in range(na):
        for s in range(ns):
            da[i, s] = (ka[i] // stride[s]) % radix[s]
    for j in range(nb):
        for s in range(ns):
            db[j, s] = (kb[j] // stride[s]) % radix[s]
    keys_np = np.empty(na * nb, dtype=np.int64)
    coefs_np = np.empty(na * nb, dtype=np.int64)
    cdef int64_t[::1] keys = keys_np
    cdef int64_t[::1] coefs = coefs_np
    for i in range(na):
        for j in range(nb):
            coef = ca[i] * cb[j]
            key = 0
            suffix = 0
            parity = 0
            for s in range(ns - 1, -1, -1):
                u = da[i, s]
                v = db[j, s]
                r = radix[s]
                p = prod_idx[poff[s] + u * r + v]
                if p < 0:
                    coef = 0
                    break
                coef *= prod_coef[poff[s] + u * r + v]
                if signed:
                    parity ^= (degs[doff[s] + v] * suffix) & 1
                    suffix += degs[doff[s] + u]
                key += p * stride[s]
            if coef == 0:
                continue
            if parity:
                coef = -coef
            if modulus:
                coef %= modulus
                if coef < 0:
                    coef += modulus
                if coef == 0:
                    continue
            keys[cnt] = key
            coefs[cnt] = coef
            cnt += 1
    return keys_np[:cnt], coefs_np[:cnt]


def gf2_rref(cnp.ndarray m not None):
    """Reduced row echelon form over GF(2) of a 0/1 matrix; returns (rref, pivots)."""
    cdef Py_ssize_t rows = m.shape[0], cols = m.shape[1]
    cdef Py_ssize_t words = (cols + 63) // 64
    cdef Py_ssize_t i, j, w, r = 0, c, piv
    cdef uint64_t bit, tmp
    packed_np = np.zeros((rows, words), dtype=np.uint64)
    cdef uint64_t[:, ::1] packed = packed_np
    cdef cnp.uint8_t[:, :] src = np.ascontiguousarray(m, dtype=np.uint8) & 1
    for i in range(rows):
        for j in range(cols):
            if src[i, j]:
                packed[i, j >> 6] |= (<uint64_t>1) << (j & 63)
    pivots = []
    for c in range(cols):
        if r >= rows:
            break
        w = c >> 6
        bit = (<uint64_t>1) << (c & 63)
        piv = -1
        for i in range(r, rows):
            if packed[i, w] & bit:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(words):
                tmp = packed[r, j]
                packed[r, j] = packed[piv, j]
                packed[piv, j] = tmp
        for i in range(rows):
            if i != r and (packed[i, w] & bit):
                for j in range(w, words):
                    packed[i, j] ^= packed[r, j]
        pivots.append(c)
        r += 1
    out_np = np.zeros((r, cols), dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] out = out_np
    for i in range(r):
        for j in range(cols):
            if (packed[i, j >> 6] >> (j & 63)) & 1:
                out[i, j] = 1
    return out_np, pivots
