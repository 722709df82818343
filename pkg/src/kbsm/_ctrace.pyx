# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled loop tracing and brute-force state sum (see ``_pytrace`` for the reference)."""

from libc.stdlib cimport malloc, free
from libc.string cimport memmove, memcpy

cdef enum:
    CUP = 0
    CAP = 1
    OVER = 2
    UNDER = 3
    PUNCT = 4


class KernelError(ValueError):
    pass


cdef struct Buf:
    int *conn
    int *letter
    int *stack
    int *word      # traced letters, concatenated
    int *start     # loop offsets into word
    int *seen
    int cap_seg
    int cap_stack
    int cap_word


cdef int _alloc(Buf *b, int nseg, int nstack, int nword) except -1:
    b.cap_seg = nseg
    b.cap_stack = nstack
    b.cap_word = nword
    b.conn = <int *> malloc(2 * nseg * sizeof(int))
    b.letter = <int *> malloc(2 * nseg * sizeof(int))
    b.stack = <int *> malloc((nstack + 2) * sizeof(int))
    b.word = <int *> malloc((nword + 1) * sizeof(int))
    b.start = <int *> malloc((nseg + 2) * sizeof(int))
    b.seen = <int *> malloc((nseg + 1) * sizeof(int))
    if not (b.conn and b.letter and b.stack and b.word and b.start and b.seen):
        _free(b)
        raise MemoryError()
    return 0


cdef void _free(Buf *b):
    free(b.conn)
    free(b.letter)
    free(b.stack)
    free(b.word)
    free(b.start)
    free(b.seen)


cdef int _trace(Buf *b, int n, int *ops, int *args, int *levels, int *nloops) except -2:
    """Trace a crossingless column list; fills b.word / b.start, returns total letters."""
    cdef int nseg = 0, sp = 0, i, j, op, a, lv, s1, s2, old, s, s0, e, st, nw = 0, nl = 0, lt
    for i in range(n):
        op = ops[i]
        a = args[i]
        if op == CUP:
            s1 = nseg
            s2 = nseg + 1
            nseg += 2
            b.conn[2 * s1] = 2 * s2
            b.conn[2 * s2] = 2 * s1
            b.conn[2 * s1 + 1] = -1
            b.conn[2 * s2 + 1] = -1
            b.letter[2 * s1] = 0
            b.letter[2 * s1 + 1] = 0
            b.letter[2 * s2] = 0
            b.letter[2 * s2 + 1] = 0
            memmove(&b.stack[a + 2], &b.stack[a], (sp - a) * sizeof(int))
            b.stack[a] = s1
            b.stack[a + 1] = s2
            sp += 2
        elif op == CAP:
            s1 = b.stack[a]
            s2 = b.stack[a + 1]
            b.conn[2 * s1 + 1] = 2 * s2 + 1
            b.conn[2 * s2 + 1] = 2 * s1 + 1
            memmove(&b.stack[a], &b.stack[a + 2], (sp - a - 2) * sizeof(int))
            sp -= 2
        elif op == PUNCT:
            lv = levels[i]
            for j in range(lv):
                old = b.stack[j]
                s = nseg
                nseg += 1
                b.conn[2 * s] = 2 * old + 1
                b.conn[2 * s + 1] = -1
                b.letter[2 * s] = -a
                b.letter[2 * s + 1] = 0
                b.conn[2 * old + 1] = 2 * s
                b.letter[2 * old + 1] = a
                b.stack[j] = s
        else:
            raise KernelError("crossing column in a crossingless trace")
    if sp != 0:
        raise KernelError("word is not closed")
    for s in range(nseg):
        b.seen[s] = 0
    for s0 in range(nseg):
        if b.seen[s0]:
            continue
        b.start[nl] = nw
        nl += 1
        st = 2 * s0
        e = st
        while True:
            b.seen[e >> 1] = 1
            e ^= 1
            lt = b.letter[e]
            if lt != 0:
                b.word[nw] = lt
                nw += 1
            e = b.conn[e]
            if e == st:
                break
    b.start[nl] = nw
    nloops[0] = nl
    return nw


cdef inline int _key(int x):
    if x > 0:
        return 2 * x
    return -2 * x + 1


cdef int _reduce_inplace(int *w, int L):
    """Free and cyclic reduction in place; returns the new length (word starts at w)."""
    cdef int top = 0, i, lo, hi
    for i in range(L):
        if top > 0 and w[top - 1] == -w[i]:
            top -= 1
        else:
            w[top] = w[i]
            top += 1
    lo = 0
    hi = top
    while hi - lo >= 2 and w[lo] == -w[hi - 1]:
        lo += 1
        hi -= 1
    if lo > 0:
        memmove(w, &w[lo], (hi - lo) * sizeof(int))
    return hi - lo


cdef int _cmp_rot(int *a, int ra, int *b, int rb, int L):
    cdef int k, x, y
    for k in range(L):
        x = _key(a[(ra + k) % L])
        y = _key(b[(rb + k) % L])
        if x != y:
            return -1 if x < y else 1
    return 0


cdef void _canonical_inplace(int *w, int L, int *tmp):
    """Overwrite w with its minimal rotation over w and its inverse."""
    cdef int k, best_src = 0, best_rot = 0
    cdef int *src
    for k in range(L):
        tmp[k] = -w[L - 1 - k]
    for k in range(1, L):
        if _cmp_rot(w, k, w, best_rot, L) < 0:
            best_rot = k
    for k in range(L):
        if _cmp_rot(tmp, k, w if best_src == 0 else tmp, best_rot, L) < 0:
            best_src = 1
            best_rot = k
    src = w if best_src == 0 else tmp
    for k in range(L):
        tmp[L + k] = src[(best_rot + k) % L]
    memcpy(w, &tmp[L], L * sizeof(int))


cdef int _cmp_loops(int *w, int oa, int la, int ob, int lb):
    cdef int k, x, y
    if la != lb:
        return -1 if la < lb else 1
    for k in range(la):
        x = _key(w[oa + k])
        y = _key(w[ob + k])
        if x != y:
            return -1 if x < y else 1
    return 0


def trace(ops, args, levels):
    """Return the raw letter cycle of every closed loop of a crossingless word."""
    cdef int n = len(ops), i, nl = 0, k, total_lv = 0, nseg
    cdef Buf b
    cdef int *cops = <int *> malloc((n + 1) * sizeof(int))
    cdef int *cargs = <int *> malloc((n + 1) * sizeof(int))
    cdef int *clev = <int *> malloc((n + 1) * sizeof(int))
    try:
        for i in range(n):
            cops[i] = ops[i]
            cargs[i] = args[i]
            clev[i] = levels[i]
            if cops[i] == PUNCT:
                total_lv += clev[i]
        nseg = 2 * n + total_lv + 2
        _alloc(&b, nseg, 2 * n + 2, total_lv + 2)
        try:
            _trace(&b, n, cops, cargs, clev, &nl)
            out = []
            for i in range(nl):
                out.append(tuple([b.word[k] for k in range(b.start[i], b.start[i + 1])]))
            return out
        finally:
            _free(&b)
    finally:
        free(cops)
        free(cargs)
        free(clev)


def state_sum(ops, args, levels):
    """Compiled twin of ``_pytrace.state_sum``."""
    cdef int n = len(ops), i, j, c = 0, r, bit, use_a, aexp, nl = 0, nw, ntriv, L, k, m, t
    cdef long long mask, nstates
    cdef int total_lv = 0, nseg
    cdef Buf b
    cdef int *cops = <int *> malloc((n + 1) * sizeof(int))
    cdef int *cargs = <int *> malloc((n + 1) * sizeof(int))
    cdef int *clev = <int *> malloc((n + 1) * sizeof(int))
    cdef int *rops = <int *> malloc((2 * n + 1) * sizeof(int))
    cdef int *rargs = <int *> malloc((2 * n + 1) * sizeof(int))
    cdef int *rlev = <int *> malloc((2 * n + 1) * sizeof(int))
    cdef int *lo_off
    cdef int *lo_len
    cdef int *order
    cdef int *tmp
    cdef int *key
    cdef int keylen
    acc = {}
    try:
        for i in range(n):
            cops[i] = ops[i]
            cargs[i] = args[i]
            clev[i] = levels[i]
            if cops[i] == OVER or cops[i] == UNDER:
                c += 1
            elif cops[i] == PUNCT:
                total_lv += clev[i]
        if c > 40:
            raise KernelError("too many crossings")
        nseg = 4 * n + total_lv + 2
        _alloc(&b, nseg, 4 * n + 2, total_lv + 2)
        lo_off = <int *> malloc((nseg + 1) * sizeof(int))
        lo_len = <int *> malloc((nseg + 1) * sizeof(int))
        order = <int *> malloc((nseg + 1) * sizeof(int))
        tmp = <int *> malloc((2 * total_lv + 4) * sizeof(int))
        key = <int *> malloc((3 + nseg + total_lv + 2) * sizeof(int))
        try:
            nstates = (<long long> 1) << c
            for mask in range(nstates):
                r = 0
                bit = 0
                aexp = 0
                for i in range(n):
                    if cops[i] == OVER or cops[i] == UNDER:
                        use_a = not ((mask >> bit) & 1)
                        bit += 1
                        aexp += 1 if use_a else -1
                        if use_a == (cops[i] == OVER):
                            rops[r] = CAP
                            rargs[r] = cargs[i]
                            rlev[r] = 0
                            rops[r + 1] = CUP
                            rargs[r + 1] = cargs[i]
                            rlev[r + 1] = 0
                            r += 2
                    else:
                        rops[r] = cops[i]
                        rargs[r] = cargs[i]
                        rlev[r] = clev[i]
                        r += 1
                nw = _trace(&b, r, rops, rargs, rlev, &nl)
                ntriv = 0
                m = 0
                for i in range(nl):
                    L = _reduce_inplace(&b.word[b.start[i]], b.start[i + 1] - b.start[i])
                    if L == 0:
                        ntriv += 1
                    else:
                        _canonical_inplace(&b.word[b.start[i]], L, tmp)
                        lo_off[m] = b.start[i]
                        lo_len[m] = L
                        m += 1
                # insertion sort of loops by (length, letter order)
                for i in range(m):
                    order[i] = i
                for i in range(1, m):
                    t = order[i]
                    j = i - 1
                    while j >= 0 and _cmp_loops(b.word, lo_off[order[j]], lo_len[order[j]], lo_off[t], lo_len[t]) > 0:
                        order[j + 1] = order[j]
                        j -= 1
                    order[j + 1] = t
                keylen = 0
                key[keylen] = aexp
                key[keylen + 1] = ntriv
                key[keylen + 2] = m
                keylen = 3
                for i in range(m):
                    t = order[i]
                    key[keylen] = lo_len[t]
                    keylen += 1
                    for k in range(lo_len[t]):
                        key[keylen] = b.word[lo_off[t] + k]
                        keylen += 1
                kb = (<char *> key)[:keylen * sizeof(int)]
                acc[kb] = acc.get(kb, 0) + 1
        finally:
            free(lo_off)
            free(lo_len)
            free(order)
            free(tmp)
            free(key)
            _free(&b)
    finally:
        free(cops)
        free(cargs)
        free(clev)
        free(rops)
        free(rargs)
        free(rlev)
    return {_decode(kb): cnt for kb, cnt in acc.items()}


def _decode(bytes kb):
    cdef const int *p = <const int *> (<const char *> kb)
    cdef int aexp = p[0], ntriv = p[1], m = p[2], pos = 3, i, L
    classes = []
    for i in range(m):
        L = p[pos]
        pos += 1
        classes.append(tuple([p[pos + k] for k in range(L)]))
        pos += L
    return (aexp, ntriv, tuple(classes))
