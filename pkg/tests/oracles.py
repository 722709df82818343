"""Independent reference computations used by the tests.

Nothing here imports the diagram machinery: multicurves are rebuilt from
free-group automorphisms, polynomials are checked with sympy, and bracket
values come from textbook closed forms.
"""

from itertools import product

import sympy

A = sympy.Symbol("A")


def key(x):
    return 2 * x if x > 0 else -2 * x + 1


def canon(w):
    """Cyclically reduced, rotation and inversion minimal form (``()`` if trivial)."""
    out = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    while len(out) >= 2 and out[0] == -out[-1]:
        out = out[1:-1]
    if not out:
        return ()
    cands = []
    for c in (out, [-x for x in reversed(out)]):
        for k in range(len(c)):
            r = c[k:] + c[:k]
            cands.append(([key(x) for x in r], tuple(r)))
    return min(cands)[1]


def artin(i, inverse=False):
    """Half twist of punctures i, i+1 acting on the free group (fixes x1...xn)."""

    def img(x):
        a = abs(x)
        if a == i:
            w = (i + 1,) if inverse else (i, i + 1, -i)
        elif a == i + 1:
            w = (-(i + 1), i, i + 1) if inverse else (i,)
        else:
            w = (a,)
        return w if x > 0 else tuple(-y for y in reversed(w))

    def apply(word):
        return tuple(y for x in word for y in img(x))

    return apply


def nonperipheral_curves(n, max_len, slack=3):
    """Simple closed curves around exactly two punctures of P_n, as canonical words.

    Breadth-first orbit of x1x2 under the braid group, exploring words up to
    ``slack * max_len`` letters.  For n = 3 every non-peripheral simple curve
    is of this type.
    """
    moves = [artin(i, inv) for i in range(1, n) for inv in (False, True)]
    start = canon((1, 2))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            for mv in moves:
                c = canon(mv(w))
                if c and len(c) <= slack * max_len and c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return {w for w in seen if len(w) <= max_len}


def side_switches(w, s):
    L = len(w)
    return sum(1 for j in range(L) if (abs(w[j]) <= s) != (abs(w[(j + 1) % L]) <= s))


def multicurves_p3(max_len, split=None, max_grading=None):
    """All multicurves of P_3 up to total length ``max_len`` as sorted word tuples.

    A multicurve on the 4-holed sphere is some parallel copies of a single
    non-peripheral curve plus peripheral curves.
    """
    peri = [canon((1,)), canon((2,)), canon((3,)), canon((1, 2, 3))]
    cores = sorted(nonperipheral_curves(3, max_len))
    out = set()
    for counts in product(range(max_len + 1), repeat=4):
        base = [w for w, c in zip(peri, counts) for _ in range(c)]
        blen = sum(map(len, base))
        if blen > max_len:
            continue
        options = [()] + [tuple([g] * e) for g in cores for e in range(1, (max_len - blen) // len(g) + 1)]
        for extra in options:
            comps = base + list(extra)
            if split is not None and max_grading is not None:
                if sum(side_switches(w, split) for w in comps) > max_grading:
                    continue
            out.add(tuple(sorted(comps, key=lambda w: (len(w), [key(x) for x in w]))))
    return out


def multicurves_p2(max_len):
    """x1^a x2^b (x1x2)^c: the pair of pants has only boundary-parallel curves."""
    out = set()
    for a, b, c in product(range(max_len + 1), repeat=3):
        if a + b + 2 * c <= max_len:
            comps = [(1,)] * a + [(2,)] * b + [(1, 2)] * c
            out.add(tuple(sorted(comps, key=lambda w: (len(w), [key(x) for x in w]))))
    return out
