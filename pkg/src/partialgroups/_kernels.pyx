# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled word sweeps.

Port of ``_kernels_py`` with the same visiting order, counters and
first-failure bookkeeping.  The axiom sweep additionally carries prefix
states, prefix products and suffix states down the walk instead of
recomputing them for every word.  The sweeps run without the GIL.
"""

from libc.string cimport memset

import numpy as np

from ._kernels_py import AXIOMS, LEMMAS

cdef enum:
    MAXW = 160
    MAXD = 16


cdef struct Ctx:
    int n
    int e
    int max_len
    int powers
    const int* inv
    const int* binary
    const int* trans
    const unsigned char* unknown
    const int* conj
    const int* dec_x
    const int* dec_n
    # per-depth data of the current walk: automaton state and left-folded
    # product of the prefix of that length, and the state reached by each
    # suffix of it
    int st[MAXD]
    int pf[MAXD]
    int ss[MAXD][MAXD]


cdef struct Rec:
    long long inst
    long long skip
    int failed
    int cex_len
    int aux_len
    int cex[MAXW]
    int aux[4]


cdef inline int member(Ctx* c, const int* w, int k) noexcept nogil:
    cdef int s = 0
    cdef int i
    for i in range(k):
        s = c.trans[s * c.n + w[i]]
        if s < 0:
            return 0
    if c.unknown[s]:
        return -1
    return 1


cdef inline int fold(Ctx* c, const int* w, int k) noexcept nogil:
    cdef int p, i
    if k == 0:
        return c.e
    p = w[0]
    for i in range(1, k):
        p = c.binary[p * c.n + w[i]]
        if p < 0:
            return -1
    return p


cdef inline void fail(Rec* r, const int* w, int k, int a0, int a1, int na) noexcept nogil:
    cdef int i
    if r.failed:
        return
    r.failed = 1
    r.cex_len = k
    for i in range(k):
        r.cex[i] = w[i]
    r.aux_len = na
    r.aux[0] = a0
    r.aux[1] = a1


cdef inline void check(Ctx* c, Rec* r, const int* t, int tl, int expected,
                       const int* w, int k, int a0, int a1, int na) noexcept nogil:
    cdef int m
    r.inst += 1
    m = member(c, t, tl)
    if m < 0:
        r.skip += 1
    elif m == 0 or fold(c, t, tl) != expected:
        fail(r, w, k, a0, a1, na)


cdef inline int state_kind(Ctx* c, int s) noexcept nogil:
    if s < 0:
        return 0
    if c.unknown[s]:
        return -1
    return 1


cdef void axiom_word(Ctx* c, Rec* R, const int* w, int k) noexcept nogil:
    # Same checks as the reference, but memberships and products of the
    # contracted words resume from the prefix data kept by ``walk``.
    cdef int t[MAXW]
    cdef int i, j, q, m, pv, pw, tl, s, p
    pw = c.pf[k]
    for i in range(1, k):
        R[0].inst += 1
        m = state_kind(c, c.ss[k][i])
        if m < 0:
            R[0].skip += 1
        elif m == 0:
            fail(&R[0], w, k, i, 0, 1)
    for i in range(k + 1):
        pv = c.e
        for j in range(i, k + 1):
            if j == i + 1:
                pv = w[i]
            elif j > i + 1 and pv >= 0:
                pv = c.binary[pv * c.n + w[j - 1]]
            R[2].inst += 1
            if pv < 0:
                fail(&R[2], w, k, i, j, 2)
                continue
            s = c.trans[c.st[i] * c.n + pv]
            q = j
            while s >= 0 and q < k:
                s = c.trans[s * c.n + w[q]]
                q += 1
            m = state_kind(c, s)
            if m < 0:
                R[2].skip += 1
                continue
            if m == 0:
                fail(&R[2], w, k, i, j, 2)
                continue
            if i == 0:
                p = pv
            else:
                p = c.pf[i]
                if p >= 0:
                    p = c.binary[p * c.n + pv]
            q = j
            while p >= 0 and q < k:
                p = c.binary[p * c.n + w[q]]
                q += 1
            if p != pw:
                fail(&R[2], w, k, i, j, 2)
    R[3].inst += 1
    tl = 0
    for q in range(k - 1, -1, -1):
        t[tl] = c.inv[w[q]]
        tl += 1
    for q in range(k):
        t[tl] = w[q]
        tl += 1
    m = member(c, t, tl)
    if m < 0:
        R[3].skip += 1
    elif m == 0 or fold(c, t, tl) != c.e:
        fail(&R[3], w, k, 0, 0, 0)


cdef void lemma_word(Ctx* c, Rec* R, const int* w, int k) noexcept nogil:
    cdef int t[MAXW]
    cdef int winv[MAXW]
    cdef int i, q, r2, tl, pu, pv, pw, m, ln, ok, same, single
    pw = fold(c, w, k)
    if pw < 0:
        R[0].inst += 1
        fail(&R[0], w, k, k, 0, 1)
        return
    for q in range(k):
        winv[q] = c.inv[w[k - 1 - q]]
    for i in range(k + 1):
        pu = fold(c, w, i)
        pv = fold(c, w + i, k - i)
        if pu < 0 or pv < 0:
            R[0].inst += 1
            fail(&R[0], w, k, i, 0, 1)
            continue
        t[0] = pu
        t[1] = pv
        check(c, &R[0], t, 2, pw, w, k, i, 0, 1)
        tl = 0
        for q in range(i - 1, -1, -1):
            t[tl] = c.inv[w[q]]
            tl += 1
        for q in range(k):
            t[tl] = w[q]
            tl += 1
        check(c, &R[1], t, tl, pv, w, k, i, 0, 2)
        tl = 0
        for q in range(k):
            t[tl] = w[q]
            tl += 1
        for q in range(k - 1, i - 1, -1):
            t[tl] = c.inv[w[q]]
            tl += 1
        check(c, &R[1], t, tl, pu, w, k, i, 1, 2)
    same = 1
    for q in range(k):
        if winv[q] != w[q]:
            same = 0
            break
    if same:
        for m in range(c.powers + 1):
            for q in range(m):
                t[q] = pw
            if member(c, t, m) == 0:
                R[2].inst += 1
                fail(&R[2], w, k, m, 0, 1)
                continue
            single = fold(c, t, m)
            tl = 0
            for q in range(m):
                for r2 in range(k):
                    t[tl] = w[r2]
                    tl += 1
            check(c, &R[2], t, tl, single, w, k, m, 0, 1)
    for i in range(k + 1):
        tl = 0
        for q in range(i):
            t[tl] = w[q]
            tl += 1
        t[tl] = c.e
        tl += 1
        for q in range(i, k):
            t[tl] = w[q]
            tl += 1
        check(c, &R[3], t, tl, pw, w, k, i, 0, 1)
    t[0] = c.e
    tl = 1
    for q in range(k):
        t[tl] = w[q]
        t[tl + 1] = c.e
        tl += 2
    check(c, &R[3], t, tl, pw, w, k, k + 1, 0, 1)
    R[6].inst += 1
    m = member(c, winv, k)
    if m < 0:
        R[6].skip += 1
    elif m == 0 or fold(c, winv, k) != c.inv[pw]:
        fail(&R[6], w, k, 0, 0, 0)
    for i in range(k):
        for ln in range(1, (k - i) // 2 + 1):
            ok = 1
            for q in range(ln):
                if w[i + ln + q] != c.inv[w[i + ln - 1 - q]]:
                    ok = 0
                    break
            if ok:
                tl = 0
                for q in range(i):
                    t[tl] = w[q]
                    tl += 1
                for q in range(i + 2 * ln, k):
                    t[tl] = w[q]
                    tl += 1
                check(c, &R[7], t, tl, pw, w, k, i, ln, 2)


cdef inline void extend(Ctx* c, int k, int g, int t) noexcept nogil:
    cdef int i, u
    c.st[k + 1] = t
    if k == 0:
        c.pf[1] = g
    elif c.pf[k] < 0:
        c.pf[k + 1] = -1
    else:
        c.pf[k + 1] = c.binary[c.pf[k] * c.n + g]
    for i in range(k):
        u = c.ss[k][i]
        c.ss[k + 1][i] = -1 if u < 0 else c.trans[u * c.n + g]
    c.ss[k + 1][k] = c.trans[g]


cdef void walk(Ctx* c, Rec* R, int* w, int k, int s, int mode) noexcept nogil:
    cdef int g, t
    if mode == 0:
        axiom_word(c, R, w, k)
    else:
        lemma_word(c, R, w, k)
    if k == c.max_len:
        return
    for g in range(c.n):
        t = c.trans[s * c.n + g]
        if t < 0 or c.unknown[t]:
            continue
        w[k] = g
        extend(c, k, g, t)
        walk(c, R, w, k + 1, t, mode)


cdef void sd3_word(Ctx* c, Rec* r, const int* w, int k) noexcept nogil:
    cdef int wx[MAXW]
    cdef int wn[MAXW]
    cdef int t[2]
    cdef int i, y, cc, mw, mx, mn, split, px, pn
    r.inst += 1
    mw = member(c, w, k)
    for i in range(k):
        wx[i] = c.dec_x[w[i]]
    mx = member(c, wx, k)
    if mw < 0 or mx < 0:
        r.skip += 1
        return
    split = 0
    if mx == 1:
        for i in range(k):
            y = fold(c, wx + i + 1, k - i - 1)
            cc = c.conj[y * c.n + c.dec_n[w[i]]] if y >= 0 else -1
            if cc < 0:
                fail(r, w, k, 4, i, 2)
                return
            wn[i] = cc
        mn = member(c, wn, k)
        if mn < 0:
            r.skip += 1
            return
        split = mn == 1
    if (mw == 1) != split:
        fail(r, w, k, 1 if mw == 1 else 2, 0, 1)
        return
    if mw == 1:
        px = fold(c, wx, k)
        pn = fold(c, wn, k)
        if px < 0 or pn < 0:
            fail(r, w, k, 3, 0, 1)
            return
        t[0] = px
        t[1] = pn
        if member(c, t, 2) != 1 or c.binary[px * c.n + pn] != fold(c, w, k):
            fail(r, w, k, 3, 0, 1)


cdef void sd3_walk(Ctx* c, Rec* r, int* w, int k) noexcept nogil:
    cdef int g
    sd3_word(c, r, w, k)
    if k == c.max_len:
        return
    for g in range(c.n):
        w[k] = g
        sd3_walk(c, r, w, k + 1)


cdef object _result(Rec* r):
    if not r.failed:
        return [r.inst, r.skip, None, None]
    return [
        r.inst,
        r.skip,
        tuple([r.cex[i] for i in range(r.cex_len)]),
        tuple([r.aux[i] for i in range(r.aux_len)]),
    ]


def _i32(a):
    return np.ascontiguousarray(a, dtype=np.int32)


def axiom_sweep(inv, binary, trans, unknown, int e, int max_len):
    cdef const int[::1] inv_v = _i32(inv)
    cdef const int[:, ::1] bin_v = _i32(binary)
    cdef const int[:, ::1] tr_v = _i32(trans)
    cdef const unsigned char[::1] un_v = np.ascontiguousarray(unknown, dtype=np.uint8)
    cdef Ctx c
    cdef Rec R[4]
    cdef int w[MAXW]
    cdef int g, m
    memset(&c, 0, sizeof(Ctx))
    memset(R, 0, sizeof(R))
    c.n = inv_v.shape[0]
    c.e = e
    c.max_len = max_len
    c.inv = &inv_v[0]
    c.binary = &bin_v[0, 0]
    c.trans = &tr_v[0, 0]
    c.unknown = &un_v[0]
    c.pf[0] = e
    with nogil:
        for g in range(c.n):
            w[0] = g
            R[0].inst += 1
            m = member(&c, w, 1)
            if m < 0:
                R[0].skip += 1
            elif m == 0:
                fail(&R[0], w, 1, 0, 0, 0)
            R[1].inst += 1
            if fold(&c, w, 1) != g:
                fail(&R[1], w, 1, 0, 0, 0)
        walk(&c, R, w, 0, 0, 0)
    return {name: _result(&R[i]) for i, name in enumerate(AXIOMS)}


def lemma_sweep(inv, binary, trans, unknown, int e, int max_len, words=None, int powers=3):
    cdef const int[::1] inv_v = _i32(inv)
    cdef const int[:, ::1] bin_v = _i32(binary)
    cdef const int[:, ::1] tr_v = _i32(trans)
    cdef const unsigned char[::1] un_v = np.ascontiguousarray(unknown, dtype=np.uint8)
    cdef Ctx c
    cdef Rec R[8]
    cdef int w[MAXW]
    cdef int t[MAXW]
    cdef int f, m, q, tl, mm, wi, k
    cdef const int[:, ::1] words_v
    cdef const int[::1] lens_v
    cdef Py_ssize_t nwords = 0
    memset(&c, 0, sizeof(Ctx))
    memset(R, 0, sizeof(R))
    c.n = inv_v.shape[0]
    c.e = e
    c.max_len = max_len
    c.powers = powers
    c.inv = &inv_v[0]
    c.binary = &bin_v[0, 0]
    c.trans = &tr_v[0, 0]
    c.unknown = &un_v[0]
    if words is not None:
        lens = np.array([len(x) for x in words], dtype=np.int32)
        width = max(1, int(lens.max()) if len(lens) else 1)
        if width > MAXW // 4:
            raise ValueError("explicit words are too long for the compiled sweep")
        arr = np.zeros((max(1, len(words)), width), dtype=np.int32)
        for i, x in enumerate(words):
            arr[i, : len(x)] = x
        words_v = arr
        lens_v = lens if len(lens) else np.zeros(1, dtype=np.int32)
        nwords = len(words)
    with nogil:
        for m in range(max_len + 1):
            for q in range(m):
                t[q] = c.e
            R[4].inst += 1
            mm = member(&c, t, m)
            if mm < 0:
                R[4].skip += 1
            elif mm == 0 or fold(&c, t, m) != c.e:
                fail(&R[4], t, m, 0, 0, 0)
        for f in range(c.n):
            for m in range(powers + 1):
                tl = 0
                for q in range(m):
                    t[tl] = c.inv[f]
                    t[tl + 1] = c.e
                    t[tl + 2] = f
                    tl += 3
                R[5].inst += 1
                mm = member(&c, t, tl)
                if mm < 0:
                    R[5].skip += 1
                elif mm == 0 or fold(&c, t, tl) != c.e:
                    fail(&R[5], t, tl, 0, 0, 0)
    if words is None:
        with nogil:
            walk(&c, R, w, 0, 0, 1)
    else:
        with nogil:
            for wi in range(nwords):
                k = lens_v[wi]
                for q in range(k):
                    w[q] = words_v[wi, q]
                if member(&c, w, k) == 1:
                    lemma_word(&c, R, w, k)
    return {name: _result(&R[i]) for i, name in enumerate(LEMMAS)}


def sd3_sweep(binary, trans, unknown, conj, dec_x, dec_n, int e, int max_len):
    cdef const int[:, ::1] bin_v = _i32(binary)
    cdef const int[:, ::1] tr_v = _i32(trans)
    cdef const unsigned char[::1] un_v = np.ascontiguousarray(unknown, dtype=np.uint8)
    cdef const int[:, ::1] conj_v = _i32(conj)
    cdef const int[::1] dx_v = _i32(dec_x)
    cdef const int[::1] dn_v = _i32(dec_n)
    cdef Ctx c
    cdef Rec r
    cdef int w[MAXW]
    memset(&c, 0, sizeof(Ctx))
    memset(&r, 0, sizeof(Rec))
    c.n = bin_v.shape[0]
    c.e = e
    c.max_len = max_len
    c.binary = &bin_v[0, 0]
    c.trans = &tr_v[0, 0]
    c.unknown = &un_v[0]
    c.conj = &conj_v[0, 0]
    c.dec_x = &dx_v[0]
    c.dec_n = &dn_v[0]
    with nogil:
        sd3_walk(&c, &r, w, 0)
    return _result(&r)
