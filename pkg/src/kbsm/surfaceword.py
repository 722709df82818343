"""Framed-link diagrams in the n-punctured disk and the multicurve basis.

A diagram is a left-to-right word of columns acting on a stack of wires
(position 0 at the bottom):

``cup p``      insert two new wires at positions p, p+1, joined on the left
``cap p``      join the wires at p, p+1 and remove them
``over p``     wires p and p+1 swap; the wire coming from p passes over
``under p``    same, the wire coming from p passes under
``punct i l``  puncture i sits at level l: wires 0..l-1 run below it and cross
               its cut arc (the vertical segment from the puncture down to
               the boundary) at this column

Reading the cut arcs met by a closed wire loop gives a word in the free
generators ``x_1..x_n`` of the fundamental group of the punctured disk.  For a
crossingless diagram the cyclically reduced, unoriented word is a complete
key for the isotopy class of each component.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, NamedTuple, Optional, Sequence

from . import kernel

__all__ = [
    "SurfaceSpec",
    "Column",
    "DiagramWord",
    "CurveClass",
    "Multicurve",
    "EMPTY",
    "ParseError",
    "WordSyntaxError",
    "ValidationError",
    "NotCrossingless",
    "parse_word",
    "format_word",
    "validate",
    "trace_loops",
    "normalize_class",
    "canonical_multicurve",
    "grading",
    "class_grading",
    "free_reduce",
    "invert",
]

CUP, CAP, OVER, UNDER, PUNCT = "cup", "cap", "over", "under", "punct"
OPCODES = {CUP: kernel.CUP, CAP: kernel.CAP, OVER: kernel.OVER, UNDER: kernel.UNDER, PUNCT: kernel.PUNCT}


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None, col: Optional[int] = None):
        self.line, self.col = line, col
        where = f"line {line}, col {col}: " if line is not None else ""
        super().__init__(where + message)


class WordSyntaxError(ParseError):
    """Unknown token or wrong number of arguments."""


class ValidationError(ParseError):
    """The word parsed but breaks a diagram invariant."""

    def __init__(self, violations: Sequence[str], line=None, col=None):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations), line, col)


class NotCrossingless(ValueError):
    pass


@dataclass(frozen=True)
class SurfaceSpec:
    n: int
    split: Optional[int] = None

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("puncture count must be >= 0")
        if self.split is not None and not 0 < self.split < self.n:
            raise ValueError(f"split must satisfy 0 < s < n, got s={self.split}, n={self.n}")


class Column(NamedTuple):
    op: str
    arg: int
    level: int = -1

    def __str__(self):
        if self.op == PUNCT:
            return f"punct {self.arg} {self.level}"
        return f"{self.op} {self.arg}"


def cup(p: int) -> Column:
    return Column(CUP, p)


def cap(p: int) -> Column:
    return Column(CAP, p)


def over(p: int) -> Column:
    return Column(OVER, p)


def under(p: int) -> Column:
    return Column(UNDER, p)


def punct(i: int, level: int) -> Column:
    return Column(PUNCT, i, level)


@dataclass(frozen=True)
class DiagramWord:
    surface: SurfaceSpec
    columns: tuple[Column, ...] = ()

    def __post_init__(self):
        if not isinstance(self.columns, tuple):
            object.__setattr__(self, "columns", tuple(self.columns))

    def __len__(self):
        return len(self.columns)

    @property
    def crossings(self) -> list[int]:
        return [j for j, c in enumerate(self.columns) if c.op in (OVER, UNDER)]

    def crossing_count(self) -> int:
        return sum(1 for c in self.columns if c.op in (OVER, UNDER))

    def widths(self) -> list[int]:
        """Stack size before each column, plus the final size."""
        w, out = 0, [0]
        for c in self.columns:
            if c.op == CUP:
                w += 2
            elif c.op == CAP:
                w -= 2
            out.append(w)
        return out

    def punct_index(self, i: int) -> int:
        for j, c in enumerate(self.columns):
            if c.op == PUNCT and c.arg == i:
                return j
        raise KeyError(f"no puncture {i} in word")

    def split_slice(self) -> int:
        """Time-slice index of C: the slice right after ``punct s``."""
        if self.surface.split is None:
            raise ValueError("word has no split")
        return self.punct_index(self.surface.split) + 1

    def replace(self, start: int, stop: int, cols: Iterable[Column]) -> "DiagramWord":
        return DiagramWord(self.surface, self.columns[:start] + tuple(cols) + self.columns[stop:])

    def insert(self, at: int, cols: Iterable[Column]) -> "DiagramWord":
        return self.replace(at, at, cols)

    def encode(self) -> tuple[list[int], list[int], list[int]]:
        ops = [OPCODES[c.op] for c in self.columns]
        args = [c.arg for c in self.columns]
        levels = [c.level if c.op == PUNCT else 0 for c in self.columns]
        return ops, args, levels

    def __str__(self):
        return format_word(self)


# text format

_TOKEN = re.compile(r"\S+")
_ARITY = {CUP: 1, CAP: 1, OVER: 1, UNDER: 1, PUNCT: 2, "split": 1, "surface": 1}


def parse_word(text: str, check: bool = True) -> DiagramWord:
    """Parse the text format; ``/`` separates statements within a line, ``#`` starts a comment.

    >>> w = parse_word("surface 1 / cup 0 / punct 1 1 / cap 0")
    >>> w.columns
    (Column(op='cup', arg=0, level=-1), Column(op='punct', arg=1, level=1), Column(op='cap', arg=0, level=-1))
    """
    n: Optional[int] = None
    split: Optional[int] = None
    cols: list[Column] = []
    col_pos: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        offset = 0
        for stmt in line.split("/"):
            toks = [(m.group(), offset + m.start() + 1) for m in _TOKEN.finditer(stmt)]
            offset += len(stmt) + 1
            if not toks:
                continue
            (kw, kcol), rest = toks[0], toks[1:]
            if kw not in _ARITY:
                raise WordSyntaxError(f"unknown token {kw!r}", lineno, kcol)
            if len(rest) != _ARITY[kw]:
                raise WordSyntaxError(f"{kw!r} takes {_ARITY[kw]} argument(s), got {len(rest)}", lineno, kcol)
            vals = []
            for tok, tcol in rest:
                try:
                    vals.append(int(tok))
                except ValueError:
                    raise WordSyntaxError(f"expected an integer, got {tok!r}", lineno, tcol) from None
            if kw == "surface":
                if n is not None:
                    raise WordSyntaxError("duplicate 'surface' header", lineno, kcol)
                if vals[0] < 0:
                    raise WordSyntaxError("puncture count must be >= 0", lineno, rest[0][1])
                n = vals[0]
                continue
            if n is None:
                raise WordSyntaxError("file must start with 'surface N'", lineno, kcol)
            if kw == "split":
                if split is not None:
                    raise WordSyntaxError("'split' given more than once", lineno, kcol)
                if cols:
                    raise WordSyntaxError("'split' must precede every column", lineno, kcol)
                split = vals[0]
                continue
            cols.append(Column(kw, *vals))
            col_pos.append((lineno, kcol))
    if n is None:
        raise WordSyntaxError("missing 'surface N' header", 1, 1)
    try:
        surface = SurfaceSpec(n, split)
    except ValueError as exc:
        raise ValidationError([str(exc)]) from None
    word = DiagramWord(surface, tuple(cols))
    if check:
        violations = validate(word)
        if violations:
            first = _first_bad_column(violations)
            line, col = col_pos[first] if first is not None and first < len(col_pos) else (None, None)
            raise ValidationError(violations, line, col)
    return word


def _first_bad_column(violations: Sequence[str]) -> Optional[int]:
    for v in violations:
        m = re.match(r"column (\d+)", v)
        if m:
            return int(m.group(1))
    return None


def format_word(word: DiagramWord) -> str:
    lines = [f"surface {word.surface.n}"]
    if word.surface.split is not None:
        lines.append(f"split {word.surface.split}")
    lines.extend(str(c) for c in word.columns)
    return "\n".join(lines) + "\n"


def validate(word: DiagramWord) -> list[str]:
    """Return the list of invariant violations; an empty list means valid."""
    out: list[str] = []
    n, s = word.surface.n, word.surface.split
    w = 0
    seen: list[int] = []
    for j, c in enumerate(word.columns):
        if c.op == CUP:
            if not 0 <= c.arg <= w:
                out.append(f"column {j}: cup {c.arg} out of range for {w} wires")
                break
            w += 2
        elif c.op in (CAP, OVER, UNDER):
            if not 0 <= c.arg <= w - 2:
                out.append(f"column {j}: {c.op} {c.arg} out of range for {w} wires")
                break
            if c.op == CAP:
                w -= 2
        elif c.op == PUNCT:
            if not 1 <= c.arg <= n:
                out.append(f"column {j}: puncture {c.arg} not in 1..{n}")
            elif seen and c.arg <= seen[-1]:
                out.append(f"column {j}: puncture order ({c.arg} after {seen[-1]})")
            if not 0 <= c.level <= w:
                out.append(f"column {j}: punct level {c.level} out of range for {w} wires")
                break
            seen.append(c.arg)
        else:
            out.append(f"column {j}: unknown column {c.op!r}")
            break
    else:
        if w != 0:
            out.append(f"not closed: {w} live wire(s) after the last column")
    if sorted(set(seen)) != list(range(1, n + 1)) or len(seen) != len(set(seen)):
        missing = sorted(set(range(1, n + 1)) - set(seen))
        if missing:
            out.append(f"missing puncture column(s) {missing}")
        if len(seen) != len(set(seen)):
            out.append("puncture order: a puncture appears twice")
    if s is not None and not 0 < s < n:
        out.append(f"split {s} outside 0 < s < {n}")
    return out


# words in the free group

def invert(w: Sequence[int]) -> tuple[int, ...]:
    return tuple(-x for x in reversed(w))


def free_reduce(w: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(w: Iterable[int]) -> tuple[int, ...]:
    r = free_reduce(w)
    i, j = 0, len(r)
    while j - i >= 2 and r[i] == -r[j - 1]:
        i += 1
        j -= 1
    return r[i:j]


def _letter_key(x: int) -> int:
    # x1 < x1^-1 < x2 < x2^-1 < ...
    return 2 * x if x > 0 else -2 * x + 1


def _keyseq(w: Sequence[int]) -> tuple[int, ...]:
    return tuple(_letter_key(x) for x in w)


@dataclass(frozen=True)
class CurveClass:
    """Unoriented conjugacy class of a cyclically reduced word, stored canonically."""

    word: tuple[int, ...]
    sort_key: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "sort_key", (len(self.word), _keyseq(self.word)))

    def __lt__(self, other: "CurveClass"):
        return self.sort_key < other.sort_key

    def letters(self) -> set[int]:
        return {abs(x) for x in self.word}

    def __str__(self):
        return "".join(f"x{x}" if x > 0 else f"x{-x}^-1" for x in self.word)


@lru_cache(maxsize=1 << 16)
def _canonical(w: tuple[int, ...]) -> Optional[tuple[int, ...]]:
    r = cyclic_reduce(w)
    if not r:
        return None
    best, best_key = None, None
    for cand in (r, invert(r)):
        for k in range(len(cand)):
            rot = cand[k:] + cand[:k]
            key = _keyseq(rot)
            if best_key is None or key < best_key:
                best, best_key = rot, key
    return best


def normalize_class(cycle: Sequence[int]) -> Optional[CurveClass]:
    """Cyclically reduce and canonicalize; ``None`` means the loop is contractible.

    >>> normalize_class((1, -1)) is None
    True
    >>> str(normalize_class((2, 1))), str(normalize_class((-1, -2)))
    ('x1x2', 'x1x2')
    """
    c = _canonical(tuple(cycle))
    return None if c is None else CurveClass(c)


@dataclass(frozen=True, order=False)
class Multicurve:
    components: tuple[CurveClass, ...] = ()

    def __post_init__(self):
        comps = tuple(sorted(self.components))
        object.__setattr__(self, "components", comps)

    def __len__(self):
        return len(self.components)

    def length(self) -> int:
        return sum(len(c.word) for c in self.components)

    def sort_key(self) -> tuple:
        return (self.length(), len(self.components), tuple(c.sort_key for c in self.components))

    def __lt__(self, other: "Multicurve"):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return "{" + "; ".join(str(c) for c in self.components) + "}"

    @classmethod
    def from_words(cls, *words: Sequence[int]) -> "Multicurve":
        comps = []
        for w in words:
            c = normalize_class(w)
            if c is None:
                raise ValueError(f"word {w} is contractible")
            comps.append(c)
        return cls(tuple(comps))


EMPTY = Multicurve(())


def canonical_multicurve(classes: Iterable[CurveClass]) -> Multicurve:
    return Multicurve(tuple(classes))


def class_grading(c: CurveClass, s: int) -> int:
    """Cyclic count of side switches between letters ``<= s`` and ``> s``."""
    w = c.word
    L = len(w)
    return sum(1 for j in range(L) if (abs(w[j]) <= s) != (abs(w[(j + 1) % L]) <= s))


def grading(m: Multicurve, s: int) -> int:
    """Geometric intersection number of ``m`` with the separating arc after puncture ``s``."""
    return sum(class_grading(c, s) for c in m.components)


def cut_arc_grading(m: Multicurve, i: int) -> int:
    """Number of letters ``x_i^{±1}``: intersections with the cut arc of puncture ``i``."""
    return sum(1 for c in m.components for x in c.word if abs(x) == i)


def is_one_sided(c: CurveClass, s: int) -> bool:
    return class_grading(c, s) == 0


def trace_loops(word: DiagramWord) -> list[tuple[int, ...]]:
    """Raw letter cycles of a crossingless word, one per closed loop."""
    if word.crossing_count():
        raise NotCrossingless("trace_loops needs a crossingless word")
    return kernel.trace(*word.encode())
