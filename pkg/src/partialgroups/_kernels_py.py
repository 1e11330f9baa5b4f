"""Pure-Python word sweeps.

Reference implementation of the hot loops; ``_kernels.pyx`` is a line-by-line
port.  Both visit words in the same order (depth first, letters ascending)
and keep the first failure per check, so their results are identical.

Tables are plain nested lists of ints: ``binary[a][b]`` (-1 undefined),
``trans[s][g]`` (-1 dead), ``unknown[s]`` (truthy when membership is not
determined), ``inv[g]``.  A result per check is
``[instances, skipped, counterexample_word | None, aux | None]``.
"""

from __future__ import annotations

import sys

AXIOMS = ("PG1", "PG2", "PG3", "PG4")
LEMMAS = (
    "fold",
    "cancel",
    "self-inverse-powers",
    "identity-insertion",
    "identity-words",
    "conjugate-identity-powers",
    "inverse-word",
    "cancel-middle",
)
SD3_REASONS = {
    1: "defined but a split part is not",
    2: "split parts defined but the word is not",
    3: "product does not split",
    4: "twisting conjugation undefined",
}

sys.setrecursionlimit(max(sys.getrecursionlimit(), 10_000))


def _member(trans, unknown, w):
    s = 0
    for g in w:
        s = trans[s][g]
        if s < 0:
            return 0
    return -1 if unknown[s] else 1


def _fold(binary, e, w):
    if not w:
        return e
    p = w[0]
    for g in w[1:]:
        p = binary[p][g]
        if p < 0:
            return -1
    return p


def _new(names):
    return {k: [0, 0, None, None] for k in names}


def _fail(res, key, word, aux=()):
    if res[key][2] is None:
        res[key][2] = tuple(word)
        res[key][3] = tuple(aux)


def _walk(trans, unknown, n, max_len, visit):
    """Depth-first over words with live, determined states up to ``max_len``."""
    word = []

    def rec(s):
        visit(tuple(word))
        if len(word) == max_len:
            return
        row = trans[s]
        for g in range(n):
            t = row[g]
            if t < 0 or unknown[t]:
                continue
            word.append(g)
            rec(t)
            word.pop()

    rec(0)


def axiom_sweep(inv, binary, trans, unknown, e, max_len):
    n = len(inv)
    res = _new(AXIOMS)
    for g in range(n):
        r = res["PG1"]
        r[0] += 1
        m = _member(trans, unknown, (g,))
        if m < 0:
            r[1] += 1
        elif m == 0:
            _fail(res, "PG1", (g,))
        res["PG2"][0] += 1
        if _fold(binary, e, (g,)) != g:
            _fail(res, "PG2", (g,))

    def visit(w):
        k = len(w)
        pw = _fold(binary, e, w)
        r = res["PG1"]
        for i in range(1, k):
            r[0] += 1
            m = _member(trans, unknown, w[i:])
            if m < 0:
                r[1] += 1
            elif m == 0:
                _fail(res, "PG1", w, (i,))
        r = res["PG3"]
        for i in range(k + 1):
            for j in range(i, k + 1):
                r[0] += 1
                pv = _fold(binary, e, w[i:j])
                if pv < 0:
                    _fail(res, "PG3", w, (i, j))
                    continue
                t = w[:i] + (pv,) + w[j:]
                m = _member(trans, unknown, t)
                if m < 0:
                    r[1] += 1
                elif m == 0 or _fold(binary, e, t) != pw:
                    _fail(res, "PG3", w, (i, j))
        r = res["PG4"]
        r[0] += 1
        t = tuple(inv[g] for g in reversed(w)) + w
        m = _member(trans, unknown, t)
        if m < 0:
            r[1] += 1
        elif m == 0 or _fold(binary, e, t) != e:
            _fail(res, "PG4", w)

    _walk(trans, unknown, n, max_len, visit)
    return res


def _lemma_word(res, inv, binary, trans, unknown, e, w, powers):
    k = len(w)
    pw = _fold(binary, e, w)
    if pw < 0:
        res["fold"][0] += 1
        _fail(res, "fold", w, (k,))
        return
    winv = tuple(inv[g] for g in reversed(w))

    def check(key, t, expected, aux=()):
        r = res[key]
        r[0] += 1
        m = _member(trans, unknown, t)
        if m < 0:
            r[1] += 1
        elif m == 0 or _fold(binary, e, t) != expected:
            _fail(res, key, w, aux)

    for i in range(k + 1):
        u, v = w[:i], w[i:]
        pu, pv = _fold(binary, e, u), _fold(binary, e, v)
        if pu < 0 or pv < 0:
            res["fold"][0] += 1
            _fail(res, "fold", w, (i,))
        else:
            check("fold", (pu, pv), pw, (i,))
            uinv = tuple(inv[g] for g in reversed(u))
            vinv = tuple(inv[g] for g in reversed(v))
            check("cancel", uinv + u + v, pv, (i, 0))
            check("cancel", u + v + vinv, pu, (i, 1))
    if winv == w:
        for m in range(powers + 1):
            single = (pw,) * m
            r = res["self-inverse-powers"]
            if _member(trans, unknown, single) == 0:
                r[0] += 1
                _fail(res, "self-inverse-powers", w, (m,))
                continue
            check("self-inverse-powers", w * m, _fold(binary, e, single), (m,))
    for i in range(k + 1):
        check("identity-insertion", w[:i] + (e,) + w[i:], pw, (i,))
    spread = [e]
    for g in w:
        spread += [g, e]
    check("identity-insertion", tuple(spread), pw, (k + 1,))
    r = res["inverse-word"]
    r[0] += 1
    m = _member(trans, unknown, winv)
    if m < 0:
        r[1] += 1
    elif m == 0 or _fold(binary, e, winv) != inv[pw]:
        _fail(res, "inverse-word", w)
    for i in range(k):
        for ln in range(1, (k - i) // 2 + 1):
            v = w[i : i + ln]
            if w[i + ln : i + 2 * ln] == tuple(inv[g] for g in reversed(v)):
                check("cancel-middle", w[:i] + w[i + 2 * ln :], pw, (i, ln))


def lemma_sweep(inv, binary, trans, unknown, e, max_len, words=None, powers=3):
    n = len(inv)
    res = _new(LEMMAS)
    for m in range(max_len + 1):
        r = res["identity-words"]
        r[0] += 1
        t = (e,) * m
        mm = _member(trans, unknown, t)
        if mm < 0:
            r[1] += 1
        elif mm == 0 or _fold(binary, e, t) != e:
            _fail(res, "identity-words", t)
    for f in range(n):
        for m in range(powers + 1):
            r = res["conjugate-identity-powers"]
            r[0] += 1
            t = (inv[f], e, f) * m
            mm = _member(trans, unknown, t)
            if mm < 0:
                r[1] += 1
            elif mm == 0 or _fold(binary, e, t) != e:
                _fail(res, "conjugate-identity-powers", t)

    def visit(w):
        _lemma_word(res, inv, binary, trans, unknown, e, w, powers)

    if words is None:
        _walk(trans, unknown, n, max_len, visit)
    else:
        for w in words:
            if _member(trans, unknown, w) == 1:
                visit(tuple(w))
    return res


def sd3_sweep(binary, trans, unknown, conj, dec_x, dec_n, e, max_len):
    n = len(binary)
    res = [0, 0, None, None]
    word = []

    def visit(w):
        res[0] += 1
        mw = _member(trans, unknown, w)
        wx = tuple(dec_x[g] for g in w)
        mx = _member(trans, unknown, wx)
        if mw < 0 or mx < 0:
            res[1] += 1
            return
        wn = None
        if mx == 1:
            wn = []
            for i, g in enumerate(w):
                y = _fold(binary, e, wx[i + 1 :])
                c = conj[y][dec_n[g]] if y >= 0 else -1
                if c < 0:
                    if res[2] is None:
                        res[2], res[3] = w, (4, i)
                    return
                wn.append(c)
            mn = _member(trans, unknown, wn)
            if mn < 0:
                res[1] += 1
                return
            split = mn == 1
        else:
            split = False
        if (mw == 1) != split:
            if res[2] is None:
                res[2], res[3] = w, (1 if mw == 1 else 2,)
            return
        if mw == 1:
            px, pn = _fold(binary, e, wx), _fold(binary, e, wn)
            if px < 0 or pn < 0 or _member(trans, unknown, (px, pn)) != 1 or binary[px][pn] != _fold(binary, e, w):
                if res[2] is None:
                    res[2], res[3] = w, (3,)

    def rec():
        visit(tuple(word))
        if len(word) == max_len:
            return
        for g in range(n):
            word.append(g)
            rec()
            word.pop()

    rec()
    return res
