"""Kauffman bracket reduction of diagram words to the multicurve basis.

``reduce`` sweeps the word left to right, carrying a linear combination of
partial crossingless states.  A state records, for every live wire, the wire
it is joined to through the part already swept and the free-group word read
along that arc, plus the multiset of nontrivial loops already closed off.
Identical states are merged as soon as they appear, which keeps the sweep far
below the ``2^c`` cost of brute force.

Crossing convention: at ``over p`` the over-strand runs from lower-left to
upper-right, so the A-smoothing is the cap-cup (the two left ends joined) and
the A^-1-smoothing keeps both wires straight.  ``under p`` swaps the roles.
With this choice a positive curl evaluates to ``-A^3``.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Mapping, Optional, Sequence

from . import kernel
from .ring import QA, ZA, LaurentPoly, Ring, delta
from .surfaceword import (
    CAP,
    CUP,
    OVER,
    PUNCT,
    UNDER,
    Column,
    CurveClass,
    DiagramWord,
    Multicurve,
    ValidationError,
    _canonical,
    _keyseq,
    canonical_multicurve,
    invert,
    validate,
)

__all__ = [
    "SkeinVector",
    "TooManyCrossings",
    "reduce",
    "reduce_in_order",
    "state_sum_oracle",
    "writhe",
    "random_word",
]


class TooManyCrossings(ValueError):
    pass


class SkeinVector:
    """Finite linear combination of multicurves with coefficients in one ring."""

    __slots__ = ("ring", "_terms")

    def __init__(self, terms: Optional[Mapping[Multicurve, object]] = None, ring: Ring = ZA):
        self.ring = ring
        self._terms = {}
        for m, c in (terms or {}).items():
            c = ring.coerce(c)
            if c:
                self._terms[m] = c

    @classmethod
    def basis(cls, m: Multicurve, ring: Ring = ZA) -> "SkeinVector":
        return cls({m: 1}, ring)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def support(self) -> list[Multicurve]:
        return sorted(self._terms, key=Multicurve.sort_key)

    def __getitem__(self, m: Multicurve):
        return self._terms.get(m, self.ring.zero)

    def __contains__(self, m: Multicurve):
        return m in self._terms

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "SkeinVector") -> "SkeinVector":
        self._check(other)
        t = dict(self._terms)
        for m, c in other._terms.items():
            v = t[m] + c if m in t else c
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return SkeinVector._from(t, self.ring)

    def __neg__(self):
        return SkeinVector._from({m: -c for m, c in self._terms.items()}, self.ring)

    def __sub__(self, other: "SkeinVector") -> "SkeinVector":
        return self + (-other)

    def scale(self, c) -> "SkeinVector":
        c = self.ring.coerce(c)
        if not c:
            return SkeinVector(ring=self.ring)
        return SkeinVector._from({m: v * c for m, v in self._terms.items()}, self.ring)

    def __rmul__(self, c):
        return self.scale(c)

    def to_ring(self, ring: Ring) -> "SkeinVector":
        """Map coefficients along Z[A, A^-1] -> F(A) (or back, when all are polynomial)."""
        return SkeinVector({m: ring.coerce(c) for m, c in self._terms.items()}, ring)

    def __eq__(self, other):
        if not isinstance(other, SkeinVector):
            return NotImplemented
        return self.ring is other.ring and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def _check(self, other):
        if self.ring is not other.ring:
            raise TypeError(f"mixing rings {self.ring} and {other.ring}")

    @classmethod
    def _from(cls, terms: dict, ring: Ring) -> "SkeinVector":
        v = cls.__new__(cls)
        v.ring = ring
        v._terms = terms
        return v

    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"{_paren(str(c))} * {m}" for m, c in self.items())

    def __repr__(self):
        return f"SkeinVector({str(self)!r}, ring={self.ring})"


def _paren(text: str) -> str:
    return f"({text})" if " " in text else text


# sweep engine


def _prepend(x: int, w: tuple) -> tuple:
    if w and w[0] == -x:
        return w[1:]
    return (x,) + w


def _append(w: tuple, x: int) -> tuple:
    if w and w[-1] == -x:
        return w[:-1]
    return w + (x,)


def _concat(u: tuple, v: tuple) -> tuple:
    i = 0
    n = min(len(u), len(v))
    while i < n and u[len(u) - 1 - i] == -v[i]:
        i += 1
    return u[: len(u) - i] + v[i:]


def _class_key(w: tuple) -> tuple:
    return (len(w), _keyseq(w))


def _cup(ends: tuple, p: int) -> tuple:
    moved = [(q + 2 if q >= p else q, w) for q, w in ends]
    return tuple(moved[:p]) + ((p + 1, ()), (p, ())) + tuple(moved[p:])


def _cap(ends: tuple, closed: tuple, p: int):
    """Join wires p, p+1. Returns (ends, closed, trivial_loop_count)."""
    (q1, w1), (q2, w2) = ends[p], ends[p + 1]
    rest = list(ends)
    triv = 0
    if q1 == p + 1:
        c = _canonical(w1)
        if c is None:
            triv = 1
        else:
            closed = tuple(sorted(closed + (c,), key=_class_key))
    else:
        w = _concat(invert(w1), w2)
        rest[q1] = (q2, w)
        rest[q2] = (q1, invert(w))
    del rest[p : p + 2]
    ends = tuple((q - 2 if q > p + 1 else q, w) for q, w in rest)
    return ends, closed, triv


def _punct(ends: tuple, i: int, level: int) -> tuple:
    e = list(ends)
    for j in range(level):
        q, w = e[j]
        e[j] = (q, _prepend(-i, w))
        qq, ww = e[q]
        e[q] = (qq, _append(ww, i))
    return tuple(e)


def _times_delta(c):
    return -(c.shift(2) + c.shift(-2))


def _accumulate(acc: dict, key, c):
    old = acc.get(key)
    if old is None:
        acc[key] = c
    else:
        s = old + c
        if s:
            acc[key] = s
        else:
            del acc[key]


def _sweep(columns: Sequence[Column], ring: Ring) -> dict:
    states = {((), ()): ring.one}
    for col in columns:
        op, p = col.op, col.arg
        new: dict = {}
        if op == CUP:
            for (ends, closed), c in states.items():
                _accumulate(new, (_cup(ends, p), closed), c)
        elif op == CAP:
            for (ends, closed), c in states.items():
                ends2, closed2, triv = _cap(ends, closed, p)
                _accumulate(new, (ends2, closed2), _times_delta(c) if triv else c)
        elif op == PUNCT:
            for (ends, closed), c in states.items():
                _accumulate(new, (_punct(ends, p, col.level), closed), c)
        else:
            a_cc = op == OVER  # A-smoothing is cap-cup for over, identity for under
            for (ends, closed), c in states.items():
                ends2, closed2, triv = _cap(ends, closed, p)
                cc = _times_delta(c) if triv else c
                _accumulate(new, (_cup(ends2, p), closed2), cc.shift(1 if a_cc else -1))
                _accumulate(new, (ends, closed), c.shift(-1 if a_cc else 1))
        states = new
    return states


def _check_valid(word: DiagramWord):
    violations = validate(word)
    if violations:
        raise ValidationError(violations)


@lru_cache(maxsize=4096)
def _reduce_cached(word: DiagramWord, ring_name: str) -> SkeinVector:
    ring = QA if ring_name == "QA" else ZA
    states = _sweep(word.columns, ring)
    terms = {}
    for (ends, closed), c in states.items():
        m = canonical_multicurve(CurveClass(w) for w in closed)
        terms[m] = c
    return SkeinVector._from(terms, ring)


def reduce(word: DiagramWord, ring: Ring = ZA, order: Optional[Sequence[int]] = None) -> SkeinVector:
    """Expand ``word`` in the multicurve basis over ``ring``.

    With ``order`` (a permutation of crossing indices, counted left to right)
    the crossings are resolved recursively in that order instead of by the
    sweep; the result is the same.
    """
    _check_valid(word)
    if order is not None:
        return reduce_in_order(word, ring, order)
    return _reduce_cached(word, ring.name)


# recursive smoothing in a prescribed order


_ID = "id"
_CC = "capcup"


@lru_cache(maxsize=1 << 14)
def _leaf(surface, cols: tuple) -> tuple:
    ops, args, levels = [], [], []
    for c in cols:
        if c.op == _ID:
            continue
        if c.op == _CC:
            ops += [kernel.CAP, kernel.CUP]
            args += [c.arg, c.arg]
            levels += [0, 0]
            continue
        ops.append({CUP: kernel.CUP, CAP: kernel.CAP, PUNCT: kernel.PUNCT}[c.op])
        args.append(c.arg)
        levels.append(c.level if c.op == PUNCT else 0)
    ntriv, classes = 0, []
    for loop in kernel.trace(ops, args, levels):
        w = _canonical(loop)
        if w is None:
            ntriv += 1
        else:
            classes.append(CurveClass(w))
    return ntriv, canonical_multicurve(classes)


def reduce_in_order(word: DiagramWord, ring: Ring, order: Sequence[int]) -> SkeinVector:
    xs = word.crossings
    if sorted(order) != list(range(len(xs))):
        raise ValueError("order must be a permutation of the crossing indices")
    dlt = ring.coerce(delta())
    memo: dict = {}

    def rec(cols: tuple, depth: int) -> SkeinVector:
        hit = memo.get(cols)
        if hit is not None:
            return hit
        if depth == len(order):
            ntriv, m = _leaf(word.surface, cols)
            out = SkeinVector({m: _pow(dlt, ntriv, ring)}, ring)
        else:
            j = xs[order[depth]]
            c = cols[j]
            cc = cols[:j] + (Column(_CC, c.arg),) + cols[j + 1 :]
            ident = cols[:j] + (Column(_ID, 0),) + cols[j + 1 :]
            a_cc = c.op == OVER
            v_cc = rec(cc, depth + 1).scale(LaurentPoly.monomial(1, 1 if a_cc else -1))
            v_id = rec(ident, depth + 1).scale(LaurentPoly.monomial(1, -1 if a_cc else 1))
            out = v_cc + v_id
        memo[cols] = out
        return out

    return rec(word.columns, 0)


def _pow(x, n: int, ring: Ring):
    out = ring.one
    for _ in range(n):
        out = out * x
    return out


def state_sum_oracle(word: DiagramWord, ring: Ring = ZA, max_crossings: int = 20) -> SkeinVector:
    """Brute-force expansion over all ``2^c`` crossing states (no recursion, no caching)."""
    _check_valid(word)
    c = word.crossing_count()
    if c > max_crossings:
        raise TooManyCrossings(f"{c} crossings exceed the oracle limit {max_crossings}")
    counts = kernel.state_sum(*word.encode())
    dlt = delta()
    acc: dict = {}
    for (aexp, ntriv, classes), cnt in counts.items():
        m = canonical_multicurve(CurveClass(w) for w in classes)
        coeff = LaurentPoly.monomial(cnt, aexp) * (dlt ** ntriv)
        acc[m] = acc.get(m, LaurentPoly()) + coeff
    return SkeinVector({m: ring.coerce(v) for m, v in acc.items()}, ring)


# writhe


def writhe(word: DiagramWord) -> int:
    """Sum of crossing signs for an arbitrary orientation of each component.

    Only meaningful per component (self-crossings); for links the sign of
    mixed crossings depends on the chosen orientations.
    """
    conn: list[int] = []
    event: list = []
    stack: list[int] = []

    def seg():
        s = len(conn) >> 1
        conn.extend((-1, -1))
        event.extend((None, None))
        return s

    for j, c in enumerate(word.columns):
        if c.op == CUP:
            s1, s2 = seg(), seg()
            conn[2 * s1], conn[2 * s2] = 2 * s2, 2 * s1
            stack[c.arg : c.arg] = [s1, s2]
        elif c.op == CAP:
            s1, s2 = stack[c.arg], stack[c.arg + 1]
            conn[2 * s1 + 1], conn[2 * s2 + 1] = 2 * s2 + 1, 2 * s1 + 1
            del stack[c.arg : c.arg + 2]
        elif c.op in (OVER, UNDER):
            p = c.arg
            lo, hi = stack[p], stack[p + 1]
            n_hi, n_lo = seg(), seg()  # n_hi continues lo upward, n_lo continues hi downward
            conn[2 * lo + 1], conn[2 * n_hi] = 2 * n_hi, 2 * lo + 1
            conn[2 * hi + 1], conn[2 * n_lo] = 2 * n_lo, 2 * hi + 1
            event[2 * lo + 1] = event[2 * n_hi] = (j, 0)
            event[2 * hi + 1] = event[2 * n_lo] = (j, 1)
            stack[p], stack[p + 1] = n_lo, n_hi
    seen = set()
    dirs: dict = {}
    nseg = len(conn) >> 1
    for s0 in range(nseg):
        if s0 in seen:
            continue
        start = e = 2 * s0
        while True:
            seen.add(e >> 1)
            e ^= 1
            ev = event[e]
            if ev is not None:
                forward = e & 1  # leaving through a right end means moving left to right
                j, kind = ev
                dx = 1 if forward else -1
                dy = dx if kind == 0 else -dx
                dirs.setdefault(j, {})[kind] = (dx, dy)
            e = conn[e]
            if e == start:
                break
    total = 0
    for j, d in dirs.items():
        over_kind = 0 if word.columns[j].op == OVER else 1
        o, u = d[over_kind], d[1 - over_kind]
        cross = o[0] * u[1] - o[1] * u[0]
        total += 1 if cross > 0 else -1
    return total


# random words for property tests


def random_word(rng: random.Random, n: int = 2, crossings: int = 6, max_width: int = 6, cups: int = 3) -> DiagramWord:
    """A random valid word on ``n`` punctures with exactly ``crossings`` crossing columns."""
    from .surfaceword import SurfaceSpec

    cols: list[Column] = []
    w = 0
    left_x, left_p, left_cup = crossings, list(range(1, n + 1)), cups
    while left_x or left_p or left_cup or w:
        choices = []
        if left_cup and w + 2 <= max_width:
            choices += ["cup"] * 2
        if w >= 2 and left_x:
            choices += ["x"] * 3
        if left_p:
            choices.append("p")
        if w >= 2 and not left_cup and not left_x and not left_p:
            choices = ["cap"]
        elif w >= 2 and (not left_x or rng.random() < 0.15):
            choices.append("cap")
        if not choices:
            # need wires for the remaining crossings
            choices = ["cup"]
            left_cup += 1
        kind = rng.choice(choices)
        if kind == "cup":
            cols.append(Column(CUP, rng.randint(0, w)))
            w += 2
            left_cup -= 1
        elif kind == "cap":
            cols.append(Column(CAP, rng.randint(0, w - 2)))
            w -= 2
        elif kind == "x":
            cols.append(Column(rng.choice((OVER, UNDER)), rng.randint(0, w - 2)))
            left_x -= 1
        else:
            cols.append(Column(PUNCT, left_p.pop(0), rng.randint(0, w)))
    return DiagramWord(SurfaceSpec(n), tuple(cols))
