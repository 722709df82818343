"""Handle-slide relations for a 2-handle attached along the boundary of a meridian disk.

The disk is ``C x I`` for a vertical arc ``C`` in the diagram.  A parallel copy
of its boundary projects to a thin oval around ``C``: it crosses each strand
through ``C`` twice, over on the way up and under on the way down.  Three
moves are built from that oval:

* encircle slide -- the oval alone, i.e. a trivial circle slid over the handle;
* full slide -- the topmost strand through ``C`` band-summed with the oval;
* band slide -- any closed fragment ``gamma`` band-summed to a chosen wire.

A slice is addressed by ``(index, enclosed)``: the oval is inserted before
column ``index`` and surrounds the bottom ``enclosed`` wires there.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .bracket import SkeinVector, reduce
from .ring import ZA, Ring, delta
from .surfaceword import (
    CAP,
    CUP,
    OVER,
    UNDER,
    Column,
    DiagramWord,
    cap,
    cup,
    over,
    validate,
)

__all__ = [
    "NoSplit",
    "OddGrading",
    "BandObstructed",
    "NoComponent",
    "SlideSpec",
    "meridian_oval",
    "split_slice",
    "cut_arc_slice",
    "encircle_slide",
    "full_slide",
    "u_modification",
    "band_slide",
    "relation_encircle",
    "relation_slide",
    "wire_components",
]


class NoSplit(ValueError):
    pass


class OddGrading(ValueError):
    pass


class BandObstructed(ValueError):
    pass


class NoComponent(ValueError):
    pass


@dataclass(frozen=True)
class SlideSpec:
    kind: str  # "encircle", "full" or "band"
    index: int
    enclosed: int = 0
    gamma: tuple[Column, ...] = ()
    band_at: int = -1  # band goes in after gamma[band_at]
    band_pos: int = 0  # saddle between wires band_pos, band_pos + 1


def meridian_oval(enclosed: int) -> tuple[Column, ...]:
    """Oval around the bottom ``enclosed`` wires: over going up, under coming down."""
    up = [over(p) for p in range(1, enclosed + 1)]
    down = [over(p) for p in range(enclosed, 0, -1)]  # bundle wire over the oval
    return (cup(0), *up, *down, cap(0))


def split_slice(word: DiagramWord) -> tuple[int, int]:
    """The slice ``C`` right after ``punct s`` and its wire count."""
    if word.surface.split is None:
        raise NoSplit("word has no split")
    idx = word.split_slice()
    return idx, word.widths()[idx]


def cut_arc_slice(word: DiagramWord, i: int) -> tuple[int, int]:
    """The cut arc of puncture ``i``: just before its column, enclosing the wires below it."""
    j = word.punct_index(i)
    return j, word.columns[j].level


def _check_slice(word: DiagramWord, index: int, enclosed: int):
    if not 0 <= index <= len(word.columns):
        raise ValueError(f"slice index {index} out of range")
    w = word.widths()[index]
    if not 0 <= enclosed <= w:
        raise ValueError(f"cannot enclose {enclosed} of {w} wires")


def encircle_slide(word: DiagramWord, index: Optional[int] = None, enclosed: Optional[int] = None) -> DiagramWord:
    """Insert the meridian oval at the slice (default: the split slice, all its wires)."""
    if index is None:
        index, k = split_slice(word)
        enclosed = k if enclosed is None else enclosed
    elif enclosed is None:
        enclosed = word.widths()[index]
    _check_slice(word, index, enclosed)
    return word.insert(index, meridian_oval(enclosed))


def _oval_band(enclosed: int, skip_top: bool) -> tuple[Column, ...]:
    """Oval band-summed with the wire just above the enclosed bundle, or with its top wire.

    With ``skip_top`` the oval surrounds ``enclosed - 1`` wires and the band
    reaches the wire above it; otherwise it surrounds all ``enclosed`` wires
    and the band reaches the topmost of them, so that strand also passes
    through its own oval.
    """
    k = enclosed - 1 if skip_top else enclosed
    up = [over(p) for p in range(1, k + 1)]
    down = [over(p) for p in range(k, 0, -1)]
    # after cup(0) and the climb, the oval's top is at k+1 (full) or k (skip_top),
    # directly below or above the chosen strand
    band_pos = enclosed
    return (cup(0), *up, cap(band_pos), cup(band_pos), *down, cap(0))


def _slide_at(word: DiagramWord, index: int, enclosed: int, skip_top: bool) -> DiagramWord:
    _check_slice(word, index, enclosed)
    if enclosed < 1:
        raise NoComponent("no strand through the slice to slide")
    return word.insert(index, _oval_band(enclosed, skip_top))


def full_slide(word: DiagramWord, index: Optional[int] = None, enclosed: Optional[int] = None,
               require_even: bool = True) -> DiagramWord:
    """Slide the topmost strand through ``C`` over the 2-handle.

    Only even strand counts ``k >= 2`` are accepted unless ``require_even`` is
    turned off (used for cut-arc slices, where any ``k >= 1`` occurs).
    """
    if index is None:
        index, enclosed = split_slice(word)
    elif enclosed is None:
        enclosed = word.widths()[index]
    if require_even and (enclosed < 2 or enclosed % 2):
        raise OddGrading(f"slide needs an even number k >= 2 of strands, got k={enclosed}")
    return _slide_at(word, index, enclosed, skip_top=False)


def u_modification(word: DiagramWord, index: Optional[int] = None, enclosed: Optional[int] = None,
                   require_even: bool = True) -> DiagramWord:
    """The topmost strand through ``C`` makes one loop around the other ``k - 1`` strands."""
    if index is None:
        index, enclosed = split_slice(word)
    elif enclosed is None:
        enclosed = word.widths()[index]
    if require_even and (enclosed < 2 or enclosed % 2):
        raise OddGrading(f"modification needs an even number k >= 2 of strands, got k={enclosed}")
    return _slide_at(word, index, enclosed, skip_top=True)


def wire_components(word: DiagramWord) -> list[list[int]]:
    """Component label of every wire at every time-slice (crossings followed through)."""
    parent: list[int] = []

    def new():
        parent.append(len(parent))
        return len(parent) - 1

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    stack: list[int] = []
    slices = [list(stack)]
    for c in word.columns:
        if c.op == CUP:
            s = new()
            stack[c.arg : c.arg] = [s, s]
        elif c.op == CAP:
            union(stack[c.arg], stack[c.arg + 1])
            del stack[c.arg : c.arg + 2]
        elif c.op in (OVER, UNDER):
            stack[c.arg], stack[c.arg + 1] = stack[c.arg + 1], stack[c.arg]
        slices.append(list(stack))
    return [[find(s) for s in sl] for sl in slices]


def band_slide(word: DiagramWord, spec: SlideSpec) -> DiagramWord:
    """Band-sum a wire of ``word`` with a closed fragment ``gamma`` inserted at ``spec.index``.

    The saddle (``cap p`` then ``cup p``) goes in right after ``gamma[band_at]``
    and must join a wire of ``gamma`` with a wire of a different component.
    """
    if spec.kind != "band":
        raise ValueError("band_slide needs a SlideSpec of kind 'band'")
    if not word.columns or not any(c.op == CUP for c in word.columns):
        raise NoComponent("cannot slide the empty link")
    _check_slice(word, spec.index, 0)
    gamma = tuple(spec.gamma)
    if not gamma or gamma[0].op != CUP:
        raise ValueError("gamma must start with a cup")
    joined = word.insert(spec.index, gamma)
    bad = validate(joined)
    if bad:
        raise ValueError(f"gamma does not fit at slice {spec.index}: {bad[0]}")
    comps = wire_components(joined)
    at = spec.index + spec.band_at + 1
    gamma_id = comps[spec.index + 1][gamma[0].arg]
    before = set(comps[spec.index])
    if gamma_id in before:
        raise ValueError("gamma must be a new component")
    if set(comps[spec.index + len(gamma)]) != before:
        raise ValueError("gamma must close up and leave the other wires in place")
    sl = comps[at]
    p = spec.band_pos
    if not 0 <= p < len(sl) - 1:
        raise BandObstructed(f"band position {p} out of range at slice {at}")
    pair = {sl[p], sl[p + 1]}
    if gamma_id not in pair or len(pair) != 2:
        raise BandObstructed(f"wires {p}, {p + 1} at slice {at} are not gamma and another component")
    cols = gamma[: spec.band_at + 1] + (cap(p), cup(p)) + gamma[spec.band_at + 1 :]
    return word.insert(spec.index, cols)


def relation_encircle(word: DiagramWord, index: Optional[int] = None, enclosed: Optional[int] = None,
                      ring: Ring = ZA) -> SkeinVector:
    """``reduce(encircle_slide(word)) - (-A^2 - A^-2) * reduce(word)``."""
    slid = encircle_slide(word, index, enclosed)
    return reduce(slid, ring) - reduce(word, ring).scale(delta())


def relation_slide(word: DiagramWord, index: int, enclosed: int, ring: Ring = ZA,
                   require_even: bool = False) -> SkeinVector:
    """``reduce(word) - reduce(full_slide(word))``: the handle-slide relation of its top strand."""
    slid = full_slide(word, index, enclosed, require_even=require_even)
    return reduce(word, ring) - reduce(slid, ring)
