"""numpy implementations of the hot loops; same signatures as ``_kernels``."""
import numpy as np


def tensor_mul_pairs(ka, ca, kb, cb, radix, stride, poff, doff, prod_idx, prod_coef,
                     degs, signed, modulus):
    ns = len(radix)
    if len(ka) == 0 or len(kb) == 0:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    da = (ka[:, None] // stride[None, :]) % radix[None, :]
    db = (kb[:, None] // stride[None, :]) % radix[None, :]
    coef = ca[:, None] * cb[None, :]
    key = np.zeros_like(coef)
    parity = np.zeros_like(coef)
    suffix = np.zeros((len(ka), 1), dtype=np.int64)
    for s in range(ns - 1, -1, -1):
        u = da[:, s][:, None]
        v = db[:, s][None, :]
        flat = poff[s] + u * radix[s] + v
        p = prod_idx[flat]
        coef = np.where(p < 0, 0, coef * prod_coef[flat])
        if signed:
            parity ^= (degs[doff[s] + v] * suffix) & 1
            suffix = suffix + degs[doff[s] + u]
        key = key + np.where(p < 0, 0, p) * stride[s]
    coef = np.where(parity == 1, -coef, coef)
    if modulus:
        coef = coef % modulus
    mask = coef != 0
    return key[mask].astype(np.int64), coef[mask].astype(np.int64)


def gf2_rref(m):
    a = (np.asarray(m, dtype=np.uint8) & 1).astype(bool)
    rows, cols = a.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r >= rows:
            break
        hits = np.nonzero(a[r:, c])[0]
        if len(hits) == 0:
            continue
        piv = r + hits[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        a[others] ^= a[r]
        pivots.append(c)
        r += 1
    return a[:r].astype(np.uint8), pivots
