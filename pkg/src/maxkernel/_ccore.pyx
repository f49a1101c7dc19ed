# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels; mirrors ``_fallback`` call for call."""

import numpy as np
from libc.stdint cimport int64_t, uint64_t

cdef extern from *:
    int __builtin_clzll(unsigned long long) nogil

DEF MAXV = 160
DEF MAXM = 64


cdef struct FieldC:
    int p
    int m
    int64_t N
    const int64_t* exp
    const int64_t* log
    const int64_t* zech


cdef inline int64_t fadd(FieldC* F, int64_t x, int64_t y) noexcept nogil:
    cdef int64_t lx, k, z
    if F.p == 2:
        return x ^ y
    if x == 0:
        return y
    if y == 0:
        return x
    lx = F.log[x]
    k = F.log[y] - lx
    if k < 0:
        k += F.N
    z = F.zech[k]
    if z < 0:
        return 0
    return F.exp[lx + z]


cdef inline int64_t inv_mod(int64_t a, int64_t p) noexcept nogil:
    cdef int64_t t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


cdef int rank_c(int p, int m, const int64_t* cols, int ncols) noexcept nogil:
    cdef uint64_t basis[MAXM]
    cdef int64_t mat[MAXV][MAXM]
    cdef int i, j, c, r, piv, bit
    cdef uint64_t v
    cdef int64_t x, inv, f
    if p == 2:
        for i in range(m):
            basis[i] = 0
        r = 0
        for i in range(ncols):
            v = <uint64_t>cols[i]
            while v:
                bit = 63 - __builtin_clzll(v)
                if basis[bit] == 0:
                    basis[bit] = v
                    r += 1
                    break
                v ^= basis[bit]
        return r
    for i in range(ncols):
        x = cols[i]
        for j in range(m):
            mat[i][j] = x % p
            x = x // p
    r = 0
    for c in range(m):
        piv = -1
        for i in range(r, ncols):
            if mat[i][c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(m):
                x = mat[r][j]
                mat[r][j] = mat[piv][j]
                mat[piv][j] = x
        inv = inv_mod(mat[r][c], p)
        for j in range(c, m):
            mat[r][j] = mat[r][j] * inv % p
        for i in range(r + 1, ncols):
            f = mat[i][c]
            if f != 0:
                for j in range(c, m):
                    mat[i][j] = (mat[i][j] - f * mat[r][j]) % p
                    if mat[i][j] < 0:
                        mat[i][j] += p
        r += 1
        if r == ncols:
            break
    return r


cdef void load(FieldC* F, ctx, const int64_t[::1] exp, const int64_t[::1] log,
               const int64_t[::1] zech):
    F.p = ctx.p
    F.m = ctx.m
    F.N = ctx.N
    F.exp = &exp[0]
    F.log = &log[0]
    F.zech = &zech[0]


def rank_fp(cols, int p, int m):
    cdef int64_t[::1] arr = np.ascontiguousarray(cols, dtype=np.int64)
    cdef int n = arr.shape[0]
    if n == 0:
        return 0
    if m > MAXM or n > MAXV or (p == 2 and m > 63):
        from . import _fallback
        return _fallback.rank_fp(list(cols), p, m)
    return rank_c(p, m, &arr[0], n)


def trinomial_nullities(ctx, plan, int64_t a):
    cdef FieldC F
    cdef const int64_t[::1] exp = ctx.exp_np
    cdef const int64_t[::1] log = ctx.log_np
    cdef const int64_t[::1] zech = ctx.zech_np
    cdef const int64_t[::1] lt = plan.lt_np
    cdef const int64_t[::1] lst = plan.lst_np
    cdef const int64_t[::1] negcd = plan.negcd_np
    load(&F, ctx, exp, log, zech)
    cdef int m = F.m, i
    cdef int64_t order = ctx.order, b, lb, la
    cdef int64_t base[MAXM]
    cdef int64_t cols[MAXM]
    out = np.empty(order, dtype=np.int64)
    cdef int64_t[::1] o = out
    with nogil:
        for i in range(m):
            if a != 0:
                la = F.log[a]
                base[i] = fadd(&F, F.exp[la + lt[i]], negcd[i])
            else:
                base[i] = negcd[i]
        o[0] = m - rank_c(F.p, m, base, m)
        for b in range(1, order):
            lb = F.log[b]
            for i in range(m):
                cols[i] = fadd(&F, base[i], F.exp[lb + lst[i]])
            o[b] = m - rank_c(F.p, m, cols, m)
    return out


def pair_nullities(ctx, plan, avals, bvals):
    cdef FieldC F
    cdef const int64_t[::1] exp = ctx.exp_np
    cdef const int64_t[::1] log = ctx.log_np
    cdef const int64_t[::1] zech = ctx.zech_np
    cdef const int64_t[::1] lt = plan.lt_np
    cdef const int64_t[::1] lst = plan.lst_np
    cdef const int64_t[::1] negcd = plan.negcd_np
    cdef const int64_t[::1] av = np.ascontiguousarray(avals, dtype=np.int64)
    cdef const int64_t[::1] bv = np.ascontiguousarray(bvals, dtype=np.int64)
    load(&F, ctx, exp, log, zech)
    cdef int m = F.m, i
    cdef Py_ssize_t k, count = av.shape[0]
    cdef int64_t a, b, la, lb
    cdef int64_t cols[MAXM]
    out = np.empty(count, dtype=np.int64)
    cdef int64_t[::1] o = out
    with nogil:
        for k in range(count):
            a = av[k]
            b = bv[k]
            for i in range(m):
                cols[i] = negcd[i]
            if a != 0:
                la = F.log[a]
                for i in range(m):
                    cols[i] = fadd(&F, cols[i], F.exp[la + lt[i]])
            if b != 0:
                lb = F.log[b]
                for i in range(m):
                    cols[i] = fadd(&F, cols[i], F.exp[lb + lst[i]])
            o[k] = m - rank_c(F.p, m, cols, m)
    return out


def vector_criterion_bs(ctx, plan, int64_t a):
    if a == 0:
        return []
    cdef FieldC F
    cdef const int64_t[::1] exp = ctx.exp_np
    cdef const int64_t[::1] log = ctx.log_np
    cdef const int64_t[::1] zech = ctx.zech_np
    cdef const int64_t[::1] sig = plan.sig_np
    load(&F, ctx, exp, log, zech)
    cdef int d = plan.d, n = ctx.n, i, r
    cdef int64_t N = F.N, order = ctx.order, b, lb, ll, top, second, la
    cdef int64_t las[256]
    cdef int64_t w[MAXM]
    cdef int ok
    if n > 256 or d > MAXM:
        from . import _fallback
        return _fallback.vector_criterion_bs(ctx, plan, a)
    la = F.log[a]
    for i in range(n):
        las[i] = la * sig[i] % N
    found = []
    for b in range(order):
        lb = F.log[b] if b != 0 else -1
        for r in range(d):
            w[r] = 0
        w[0] = 1
        for i in range(n - 1, -1, -1):
            if w[d - 1] != 0:
                ll = F.log[w[d - 1]]
                top = F.exp[las[i] + ll]
                second = F.exp[lb * sig[i] % N + ll] if b != 0 else 0
            else:
                top = 0
                second = 0
            for r in range(d - 1, 1, -1):
                w[r] = w[r - 1]
            w[1] = fadd(&F, w[0], second)
            w[0] = top
        ok = w[0] == 1
        for r in range(1, d):
            if w[r] != 0:
                ok = 0
        if ok:
            found.append(b)
    return found


def orbit_rank_histogram(ctx, basis, int64_t size):
    cdef FieldC F
    cdef const int64_t[::1] exp = ctx.exp_np
    cdef const int64_t[::1] log = ctx.log_np
    cdef const int64_t[::1] zech = ctx.zech_np
    load(&F, ctx, exp, log, zech)
    cdef int k = len(basis), j
    if 2 * k > MAXV:
        from . import _fallback
        return _fallback.orbit_rank_histogram(ctx, basis, size)
    cdef int64_t vecs[MAXV]
    cdef int64_t lv[MAXV]
    cdef int64_t i, N = F.N
    for j in range(k):
        vecs[j] = basis[j]
        lv[j] = F.log[vecs[j]]
    hist = np.zeros(2 * k + 1, dtype=np.int64)
    cdef int64_t[::1] hv = hist
    with nogil:
        for i in range(1, size):
            for j in range(k):
                vecs[k + j] = F.exp[(lv[j] + i) % N]
            hv[rank_c(F.p, F.m, vecs, 2 * k)] += 1
    return [int(x) for x in hist]
