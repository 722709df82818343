"""Pure-Python loop tracing and brute-force state sum.

Mirrors ``_ctrace.pyx`` exactly; used when the compiled module is missing or
when ``KBSM_PURE_PYTHON=1``.

Columns are integer-encoded: op in {0 cup, 1 cap, 2 over, 3 under, 4 punct},
``args`` holds the position (or puncture index) and ``levels`` the punct level.
"""

CUP, CAP, OVER, UNDER, PUNCT = 0, 1, 2, 3, 4


class KernelError(ValueError):
    pass


def trace(ops, args, levels):
    """Return the raw letter cycle of every closed loop of a crossingless word."""
    conn = []
    letter = []
    stack = []
    for op, a, lv in zip(ops, args, levels):
        if op == CUP:
            s1 = len(conn) >> 1
            s2 = s1 + 1
            conn += [2 * s2, -1, 2 * s1, -1]
            letter += [0, 0, 0, 0]
            stack[a:a] = [s1, s2]
        elif op == CAP:
            s1, s2 = stack[a], stack[a + 1]
            conn[2 * s1 + 1] = 2 * s2 + 1
            conn[2 * s2 + 1] = 2 * s1 + 1
            del stack[a:a + 2]
        elif op == PUNCT:
            for j in range(lv):
                old = stack[j]
                s = len(conn) >> 1
                conn += [2 * old + 1, -1]
                letter += [-a, 0]
                conn[2 * old + 1] = 2 * s
                letter[2 * old + 1] = a
                stack[j] = s
        else:
            raise KernelError("crossing column in a crossingless trace")
    if stack:
        raise KernelError("word is not closed")
    nseg = len(conn) >> 1
    seen = bytearray(nseg)
    loops = []
    for s0 in range(nseg):
        if seen[s0]:
            continue
        word = []
        start = 2 * s0
        e = start
        while True:
            seen[e >> 1] = 1
            e ^= 1
            lt = letter[e]
            if lt:
                word.append(lt)
            e = conn[e]
            if e == start:
                break
        loops.append(tuple(word))
    return loops


def _key(x):
    return 2 * x if x > 0 else -2 * x + 1


def canonical_word(w):
    """Cyclically reduced, rotation- and inversion-minimal form; ``()`` if trivial."""
    out = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    i, j = 0, len(out)
    while j - i >= 2 and out[i] == -out[j - 1]:
        i += 1
        j -= 1
    r = out[i:j]
    if not r:
        return ()
    inv = [-x for x in reversed(r)]
    best = None
    for cand in (r, inv):
        keys = [_key(x) for x in cand]
        for k in range(len(cand)):
            rot = keys[k:] + keys[:k]
            if best is None or rot < best[0]:
                best = (rot, cand[k:] + cand[:k])
    return tuple(best[1])


def _resolve(ops, args, levels, crossings, mask):
    """Columns of the crossingless state selected by ``mask`` plus its A-exponent.

    Bit 0 picks the A-smoothing: cap-cup for ``over``, identity for ``under``.
    """
    r_ops, r_args, r_levels = [], [], []
    aexp = 0
    bit = 0
    for op, a, lv in zip(ops, args, levels):
        if op == OVER or op == UNDER:
            use_a = not (mask >> bit) & 1
            bit += 1
            aexp += 1 if use_a else -1
            if use_a == (op == OVER):
                r_ops += [CAP, CUP]
                r_args += [a, a]
                r_levels += [0, 0]
        else:
            r_ops.append(op)
            r_args.append(a)
            r_levels.append(lv)
    return r_ops, r_args, r_levels, aexp


def state_sum(ops, args, levels):
    """Enumerate every crossing state; count them by (A-exponent, trivial loops, classes).

    Returns ``{(aexp, ntrivial, classes): count}`` with ``classes`` a tuple of
    canonical words sorted by (length, letter order).
    """
    ops, args, levels = list(ops), list(args), list(levels)
    crossings = [j for j, op in enumerate(ops) if op in (OVER, UNDER)]
    acc = {}
    for mask in range(1 << len(crossings)):
        r_ops, r_args, r_levels, aexp = _resolve(ops, args, levels, crossings, mask)
        ntriv = 0
        classes = []
        for loop in trace(r_ops, r_args, r_levels):
            c = canonical_word(loop)
            if c:
                classes.append(c)
            else:
                ntriv += 1
        classes.sort(key=lambda w: (len(w), [_key(x) for x in w]))
        key = (aexp, ntriv, tuple(classes))
        acc[key] = acc.get(key, 0) + 1
    return acc
