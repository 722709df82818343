"""Exact coefficient arithmetic: integer Laurent polynomials in ``A`` and their
fraction field.

``LaurentPoly`` is a sparse map ``exponent -> int``. ``RatFunc`` is a
normalized quotient of two Laurent polynomials.  Both are immutable and
hashable, so they can be used as dictionary keys and shared between threads.

>>> A = LaurentPoly.gen()
>>> (A**6 - 1) * (A**2 - 1)
LaurentPoly('A^8 - A^6 - A^2 + 1')
>>> RatFunc(A**4 - 1, A**2 - 1)
RatFunc('A^2 + 1')
"""

from __future__ import annotations

import re
from math import gcd
from typing import Iterable, Mapping, Union

__all__ = [
    "LaurentPoly",
    "RatFunc",
    "Ring",
    "ZA",
    "QA",
    "NotDivisible",
    "DivisionByZero",
    "is_unit",
    "divide_exact",
    "delta",
]


class NotDivisible(ArithmeticError):
    """Raised when an exact division in Z[A, A^-1] has a remainder."""


class DivisionByZero(ZeroDivisionError):
    pass


class LaurentPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Mapping[int, int], int, None] = None):
        if terms is None:
            t = {}
        elif isinstance(terms, int):
            t = {0: terms} if terms else {}
        else:
            t = {int(e): int(c) for e, c in terms.items() if c}
        self._terms = t
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        # caller guarantees no zero coefficients
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def gen(cls) -> "LaurentPoly":
        return cls._raw({1: 1})

    @classmethod
    def monomial(cls, coeff: int, exp: int) -> "LaurentPoly":
        return cls._raw({exp: coeff} if coeff else {})

    @classmethod
    def from_dense(cls, coeffs: Iterable[int], shift: int = 0) -> "LaurentPoly":
        return cls._raw({i + shift: c for i, c in enumerate(coeffs) if c})

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Parse the canonical rendering back, e.g. ``'A^8 - A^6 - 2A^-2 + 1'``."""
        s = text.replace(" ", "").replace("*", "")
        if s in ("", "0"):
            return cls()
        if s[0] not in "+-":
            s = "+" + s
        terms: dict[int, int] = {}
        pos = 0
        pat = re.compile(r"([+-])(\d*)(A(?:\^(-?\d+))?)?")
        while pos < len(s):
            m = pat.match(s, pos)
            if m is None or m.end() == pos or (not m.group(2) and not m.group(3)):
                raise ValueError(f"cannot parse Laurent polynomial {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            c = int(m.group(2)) if m.group(2) else 1
            e = (int(m.group(4)) if m.group(4) else 1) if m.group(3) else 0
            terms[e] = terms.get(e, 0) + sign * c
            pos = m.end()
        return cls(terms)

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def min_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return min(self._terms)

    def max_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return max(self._terms)

    def leading_coeff(self) -> int:
        return self._terms[self.max_exp()]

    def coeff(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    def content(self) -> int:
        g = 0
        for c in self._terms.values():
            g = gcd(g, c)
        return g

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``A**k``."""
        if k == 0:
            return self
        return LaurentPoly._raw({e + k: c for e, c in self._terms.items()})

    def bar(self) -> "LaurentPoly":
        """The involution ``A -> A^-1``."""
        return LaurentPoly._raw({-e: c for e, c in self._terms.items()})

    def to_dense(self) -> tuple[int, list[int]]:
        """Return ``(min_exp, coeffs)`` with coefficients listed from ``min_exp`` up."""
        lo, hi = self.min_exp(), self.max_exp()
        out = [0] * (hi - lo + 1)
        for e, c in self._terms.items():
            out[e - lo] = c
        return lo, out

    # arithmetic

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._terms:
            return self
        t = dict(self._terms)
        for e, c in other._terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return LaurentPoly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return LaurentPoly._raw({})
        if len(b) == 1:
            (eb, cb), = b.items()
            return LaurentPoly._raw({e + eb: c * cb for e, c in a.items()})
        if len(a) == 1:
            (ea, ca), = a.items()
            return LaurentPoly._raw({e + ea: c * ca for e, c in b.items()})
        t: dict[int, int] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                t[e] = t.get(e, 0) + ca * cb
        return LaurentPoly._raw({e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) == 1:
                (e, c), = self._terms.items()
                if c in (1, -1):
                    return LaurentPoly._raw({-e * (-n): c ** (-n)})
            raise NotDivisible(f"{self} is not a unit")
        result = LaurentPoly(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        if isinstance(other, RatFunc):
            return other == self
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                mono = "A" if e == 1 else f"A^{e}"
                body = mono if mag == 1 else f"{mag}{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"


def is_unit(a: LaurentPoly) -> bool:
    """True iff ``a == ±A^m``, the units of Z[A, A^-1]."""
    t = a._terms
    if len(t) != 1:
        return False
    (c,) = t.values()
    return c in (1, -1)


# dense integer polynomials, lowest degree first


def _trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _dense_divmod(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    """Division in Z[x]; raises NotDivisible if a quotient coefficient is fractional."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(a) - 1 < db:
        return [], _trim(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c == 0:
            continue
        if c % lb:
            raise NotDivisible
        f = c // lb
        q[i - db] = f
        for j in range(db + 1):
            a[i - db + j] -= f * b[j]
    return _trim(q), _trim(a[:db])


def _dense_content(p: list[int]) -> int:
    g = 0
    for c in p:
        g = gcd(g, c)
    return g


def _dense_primitive(p: list[int]) -> list[int]:
    c = _dense_content(p)
    if p[-1] < 0:
        c = -c
    return [x // c for x in p]


def _pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        la = a[-1]
        a = [x * lb for x in a]
        for j in range(db + 1):
            a[da - db + j] -= la * b[j]
        _trim(a)
    return a


def _dense_gcd_primitive(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd of two nonzero polynomials in Z[x] (positive leading coefficient)."""
    a, b = _dense_primitive(a), _dense_primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _pseudo_rem(a, b)
        a, b = b, (_dense_primitive(r) if r else [])
    return a


def divide_exact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Return ``q`` with ``a == q * b`` in Z[A, A^-1].

    Raises ``NotDivisible`` if no such ``q`` exists and ``DivisionByZero`` if
    ``b`` is zero.
    """
    if b.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    if a.is_zero():
        return LaurentPoly()
    ea, da = a.to_dense()
    eb, db = b.to_dense()
    try:
        q, r = _dense_divmod(da, db)
    except NotDivisible:
        raise NotDivisible(f"{a} is not divisible by {b}") from None
    if r:
        raise NotDivisible(f"{a} is not divisible by {b}")
    return LaurentPoly.from_dense(q, ea - eb)


class RatFunc:
    """An element of the rational function field F(A) in normalized form.

    The denominator has lowest exponent 0 and positive leading coefficient,
    numerator and denominator share no common integer content, and their
    polynomial parts are coprime.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Union[LaurentPoly, int], den: Union[LaurentPoly, int] = 1):
        if isinstance(num, int):
            num = LaurentPoly(num)
        if isinstance(den, int):
            den = LaurentPoly(den)
        self.num, self.den = _normalize(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> "RatFunc":
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == _ONE

    def shift(self, k: int) -> "RatFunc":
        if k == 0:
            return self
        return RatFunc._raw(self.num.shift(k), self.den)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, LaurentPoly):
            return RatFunc._raw(other, _ONE)
        if isinstance(other, int):
            return RatFunc._raw(LaurentPoly(other), _ONE)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            if self.den == _ONE:
                return RatFunc._raw(self.num + other.num, _ONE)
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == _ONE and other.den == _ONE:
            return RatFunc._raw(self.num * other.num, _ONE)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by zero in F(A)")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def inverse(self) -> "RatFunc":
        return RatFunc(1) / self

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den)) if self.den != _ONE else hash(self.num)
        return self._hash

    def __bool__(self):
        return not self.num.is_zero()

    def __str__(self):
        if self.den == _ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFunc({str(self)!r})"


_ONE = LaurentPoly(1)


def _normalize(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if den.is_zero():
        raise DivisionByZero("zero denominator")
    if num.is_zero():
        return LaurentPoly(), _ONE
    eden, d = den.to_dense()
    enum, n = num.to_dense()
    shift = enum - eden
    if len(d) > 1 and len(n) > 1:
        g = _dense_gcd_primitive(n, d)
        if len(g) > 1:
            n, _ = _dense_divmod(n, g)
            d, _ = _dense_divmod(d, g)
    c = gcd(_dense_content(n), _dense_content(d))
    if d[-1] < 0:
        c = -c
    if c != 1:
        n = [x // c for x in n]
        d = [x // c for x in d]
    return LaurentPoly.from_dense(n, shift), LaurentPoly.from_dense(d)


class Ring:
    """Coefficient context for a computation: ``ZA`` = Z[A, A^-1], ``QA`` = F(A)."""

    def __init__(self, name: str, is_field: bool):
        self.name = name
        self.is_field = is_field

    def coerce(self, x):
        if self.is_field:
            if isinstance(x, RatFunc):
                return x
            return RatFunc._raw(x if isinstance(x, LaurentPoly) else LaurentPoly(x), _ONE)
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return LaurentPoly(x)
        if isinstance(x, RatFunc) and x.is_polynomial():
            return x.num
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def __repr__(self):
        return self.name

    def __reduce__(self):
        return (ring_by_name, (self.name,))


ZA = Ring("ZA", is_field=False)
QA = Ring("QA", is_field=True)


def ring_by_name(name: str) -> Ring:
    try:
        return {"ZA": ZA, "QA": QA}[name]
    except KeyError:
        raise ValueError(f"unknown ring {name!r}; expected ZA or QA") from None


def delta() -> LaurentPoly:
    """The value ``-A^2 - A^-2`` of a trivial circle."""
    return LaurentPoly._raw({2: -1, -2: -1})
