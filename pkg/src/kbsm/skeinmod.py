"""Cutoff presentations of skein modules obtained by adding one 2-handle.

Two preset families are supported:

``connsum(n, m)``
    ``P_{n+m} x I`` with a 2-handle along the boundary of the separating
    meridian disk ``C x I`` (``C`` between punctures ``n`` and ``n+1``).  The
    result is the connected sum of two handlebodies of genus ``n`` and ``m``.
    One encircle relation is generated per generator of grading ``k > 0``.

``s1xs2``
    The solid torus ``P_1 x I`` with a 2-handle along the boundary of its
    meridian disk (the cut arc of the puncture times ``I``), giving
    ``S^1 x S^2`` minus a ball.  One slide relation per generator ``x^a``.

Generators are multicurves carrying a crossingless witness word in minimal
position: the wire count at the stored slice equals the grading.  Witnesses
come from an exhaustive search over crossingless words in the normal form
"caps, then cups" between consecutive punctures, with every free-group
cancellation rejected (a cancellation is a bigon with a cut arc).  The
search is bounded by a total letter budget and a width cap, both recorded in
the report.
"""

from __future__ import annotations

import concurrent.futures as cf
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .bracket import SkeinVector, _cap, _concat, _cup, _punct, reduce
from .ring import QA, ZA, LaurentPoly, RatFunc, Ring, is_unit
from .sliding import SlideSpec, band_slide, meridian_oval, relation_encircle
from .surfaceword import (
    EMPTY,
    CurveClass,
    DiagramWord,
    Multicurve,
    SurfaceSpec,
    _canonical,
    cap,
    cup,
    cut_arc_grading,
    grading,
    invert,
    punct,
)

__all__ = [
    "Preset",
    "Generator",
    "GeneratorRegistry",
    "PresentationReport",
    "CutoffTooLarge",
    "PivotCollision",
    "RegistryNotClosed",
    "enumerate_multicurves",
    "seed_generators",
    "assemble_relations",
    "eliminate",
    "quotient",
    "tensor_compare",
    "torsion_witnesses",
    "ucp_check",
    "monotone_check",
]

REPORT_HEADER = "# kbsm-report v1"
DEFAULT_MAX_REGISTRY = 10_000
DEFAULT_MAX_CROSSINGS = 20


class CutoffTooLarge(ValueError):
    pass


class PivotCollision(ArithmeticError):
    pass


class RegistryNotClosed(RuntimeError):
    pass


@dataclass(frozen=True)
class Preset:
    kind: str  # "connsum" or "s1xs2"
    n: int = 1
    m: int = 1

    def __post_init__(self):
        if self.kind not in ("connsum", "s1xs2"):
            raise ValueError(f"unknown preset {self.kind!r}")
        if self.kind == "connsum" and (self.n < 1 or self.m < 1):
            raise ValueError("connsum needs n, m >= 1")

    @classmethod
    def connsum(cls, n: int, m: int) -> "Preset":
        return cls("connsum", n, m)

    @classmethod
    def s1xs2(cls) -> "Preset":
        return cls("s1xs2", 1, 0)

    @property
    def label(self) -> str:
        return f"connsum({self.n},{self.m})" if self.kind == "connsum" else "s1xs2"

    @property
    def surface(self) -> SurfaceSpec:
        if self.kind == "connsum":
            return SurfaceSpec(self.n + self.m, self.n)
        return SurfaceSpec(1)

    def grading(self, mc: Multicurve) -> int:
        if self.kind == "connsum":
            return grading(mc, self.n)
        return cut_arc_grading(mc, 1)

    def length_bound(self, K: int) -> int:
        return K * (self.n + self.m)

    def max_crossings(self, K: int) -> int:
        """Crossings in the largest relation word at cutoff K."""
        return 2 * K


@dataclass(frozen=True)
class Generator:
    curve: Multicurve
    grading: int
    witness: DiagramWord
    index: int  # slice where the meridian disk is met
    enclosed: int  # wires through it there (== grading)

    def sort_key(self):
        return (self.grading, self.curve.sort_key())


# witness search


def _letters(ends) -> int:
    return sum(len(w) for q, (p, w) in enumerate(ends) if q < p)


def _try_cap(ends, closed, p):
    (q1, w1), (q2, w2) = ends[p], ends[p + 1]
    if q1 == p + 1:
        c = _canonical(w1)
        if c is None or len(c) != len(w1):
            return None
    elif len(_concat(invert(w1), w2)) != len(w1) + len(w2):
        return None
    elif (not w2 and q2 == p + 2) or (not w1 and q1 == p - 1):
        return None  # cap cancels an empty cup next to it: a removable zigzag
    e2, c2, triv = _cap(ends, closed, p)
    return e2, c2


def _min_next_level(ends) -> int:
    """Empty cups must dip below the next puncture, so its level is at least this."""
    top = -1
    for j, (q, w) in enumerate(ends):
        if q == j + 1 and not w:
            top = j
    return top + 1


def _try_punct(ends, i, level):
    e2 = _punct(ends, i, level)
    for j, (q, w) in enumerate(ends):
        if j < q:
            if q == j + 1 and not w and j >= level:
                return None  # an empty cup passing above: it can start after this puncture
            grow = (j < level) + (q < level)
            if len(e2[j][1]) != len(w) + grow:
                return None
    return e2


class _Search:
    """Breadth-first closure over partial crossingless states, first witness wins."""

    def __init__(self, max_letters: int, max_width: int):
        self.L = max_letters
        self.W = max_width

    def closure(self, states: dict, make_move) -> dict:
        out = dict(states)
        frontier = list(states.items())
        while frontier:
            nxt = []
            for key, val in frontier:
                for k2, v2 in make_move(key, val):
                    if k2 not in out:
                        out[k2] = v2
                        nxt.append((k2, v2))
            frontier = nxt
        return out

    def caps(self, key, val):
        ends, closed, cw = key
        cols, slice_ = val
        for p in range(len(ends) - 1):
            r = _try_cap(ends, closed, p)
            if r is not None:
                yield (r[0], r[1], cw), (cols + (cap(p),), slice_)

    def cups(self, key, val):
        ends, closed, cw = key
        cols, slice_ = val
        if len(ends) + 2 > self.W:
            return
        used = _letters(ends) + sum(map(len, closed))
        for p in range(len(ends) + 1):
            e2 = _cup(ends, p)
            if used + _min_next_level(e2) > self.L:
                continue
            yield (e2, closed, cw), (cols + (cup(p),), slice_)


def enumerate_multicurves(surface: SurfaceSpec, max_letters: int, max_width: int,
                          meridian: Optional[tuple[str, int]] = None, max_cw: Optional[int] = None) -> dict:
    """Crossingless witnesses for every multicurve reachable within the bounds.

    ``meridian`` selects where the wire count ``cw`` is measured: ``("split", s)``
    for the slice between punctures ``s`` and ``s+1`` (after the caps there),
    ``("arc", i)`` for the cut arc of puncture ``i``.  Returns
    ``{multicurve: (word, index, cw)}`` keeping, per multicurve, the first
    witness of smallest ``cw`` in search order.
    """
    search = _Search(max_letters, max_width)
    n = surface.n
    states = {((), (), 0): ((), None)}
    states = search.closure(states, search.cups)
    for i in range(1, n + 1):
        new: dict = {}
        for (ends, closed, cw), (cols, sl) in states.items():
            for level in range(len(ends) + 1):
                e2 = _try_punct(ends, i, level)
                if e2 is None or _letters(e2) + sum(map(len, closed)) > max_letters:
                    continue
                cw2, sl2 = cw, sl
                if meridian == ("arc", i):
                    cw2, sl2 = level, len(cols)
                key = (e2, closed, cw2)
                if key not in new:
                    new[key] = (cols + (punct(i, level),), sl2)
        states = search.closure(new, search.caps)
        if meridian == ("split", i):
            staged = {}
            for (ends, closed, cw), (cols, sl) in states.items():
                if max_cw is not None and len(ends) > max_cw:
                    continue
                staged[(ends, closed, len(ends))] = (cols, len(cols))
            states = staged
        if i < n:
            states = search.closure(states, search.cups)
    found: dict = {}
    for (ends, closed, cw), (cols, sl) in states.items():
        if ends:
            continue
        mc = Multicurve(tuple(CurveClass(w) for w in closed))
        word = DiagramWord(surface, cols)
        best = found.get(mc)
        if best is None or cw < best[2]:
            found[mc] = (word, sl if sl is not None else 0, cw)
    return found


@dataclass
class GeneratorRegistry:
    preset: Preset
    cutoff: int
    max_letters: int
    max_width: int
    entries: dict = field(default_factory=dict)

    @property
    def surface(self) -> SurfaceSpec:
        return self.preset.surface

    def __contains__(self, mc: Multicurve) -> bool:
        return mc in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, mc: Multicurve) -> Generator:
        return self.entries[mc]

    def generators(self) -> list[Generator]:
        """Grading-sorted, then by multicurve order."""
        return sorted(self.entries.values(), key=Generator.sort_key)

    def curves(self) -> list[Multicurve]:
        return [g.curve for g in self.generators()]

    def seed_family(self) -> str:
        return (f"crossingless minimal-position witnesses, grading <= {self.cutoff}, "
                f"total letters <= {self.max_letters}, width <= {self.max_width}")


def seed_generators(preset: Preset, K: int, max_registry: int = DEFAULT_MAX_REGISTRY,
                    max_crossings: int = DEFAULT_MAX_CROSSINGS, max_width: Optional[int] = None) -> GeneratorRegistry:
    """All basis multicurves of grading <= K and total length <= K*(n+m), with witnesses."""
    if K < 0:
        raise ValueError("cutoff K must be >= 0")
    if preset.max_crossings(K) > max_crossings:
        raise CutoffTooLarge(f"K={K} needs {preset.max_crossings(K)} crossings > guard {max_crossings}")
    L = preset.length_bound(K)
    W = max_width if max_width is not None else max(2, 2 * L)
    mer = ("split", preset.n) if preset.kind == "connsum" else ("arc", 1)
    found = enumerate_multicurves(preset.surface, L, W, mer, max_cw=K)
    reg = GeneratorRegistry(preset, K, L, W)
    for mc, (word, idx, cw) in found.items():
        g = preset.grading(mc)
        if g > K or cw != g:
            continue
        reg.entries[mc] = Generator(mc, g, word, idx, cw)
        if len(reg.entries) > max_registry:
            raise CutoffTooLarge(f"registry exceeds {max_registry} entries at K={K}")
    return reg


# relations


def _relation(preset: Preset, g: Generator, ring: Ring) -> SkeinVector:
    if preset.kind == "connsum":
        return relation_encircle(g.witness, g.index, g.enclosed, ring)
    spec = SlideSpec("band", g.index, g.enclosed, meridian_oval(g.enclosed), band_at=g.enclosed, band_pos=g.enclosed)
    return reduce(g.witness, ring) - reduce(band_slide(g.witness, spec), ring)


def _relation_job(args):
    preset, g, ring_name = args
    from .ring import ring_by_name

    return _relation(preset, g, ring_by_name(ring_name))


def assemble_relations(reg: GeneratorRegistry, ring: Ring = QA, workers: int = 1,
                       check_closed: bool = True) -> list[tuple[Multicurve, SkeinVector]]:
    """One relation per generator of positive grading, tagged with its source, in generator order."""
    sources = [g for g in reg.generators() if g.grading > 0]
    if workers > 1 and len(sources) > 1:
        with cf.ProcessPoolExecutor(max_workers=workers) as ex:
            vecs = list(ex.map(_relation_job, [(reg.preset, g, ring.name) for g in sources], chunksize=4))
    else:
        vecs = [_relation(reg.preset, g, ring) for g in sources]
    rels = [(g.curve, v) for g, v in zip(sources, vecs)]
    if check_closed:
        missing = sorted({m for _, v in rels for m in v.support() if m not in reg}, key=Multicurve.sort_key)
        if missing:
            raise RegistryNotClosed("relation terms without a registered witness: " + ", ".join(map(str, missing[:5])))
    return rels


@dataclass
class Pivot:
    source: Multicurve
    curve: Multicurve
    coeff: object  # coefficient on the pivot as computed, before any normalization
    unit: bool


@dataclass
class PresentationReport:
    preset: Preset
    cutoff: int
    ring: Ring
    seed_family: str
    generators: list
    relations: list
    pivots: list
    survivors: list

    def torsion(self) -> list[Pivot]:
        return [p for p in self.pivots if not p.unit]

    def to_text(self) -> str:
        out = [REPORT_HEADER, "[PARAMETERS]", f"preset = {self.preset.label}", f"K = {self.cutoff}",
               f"ring = {self.ring.name}", f"scope = at cutoff K={self.cutoff}", f"seed_family = {self.seed_family}",
               "[GENERATORS]"]
        for g in self.generators:
            out.append(f"k={g.grading} {g.curve}")
        out.append("[RELATIONS]")
        for (src, vec), piv in zip(self.relations, self.pivots):
            out.append(f"source={src} pivot={piv.curve} coeff={piv.coeff} : {vec}")
        out.append("[SURVIVORS]")
        out.extend(str(m) for m in self.survivors)
        out.append("[WITNESSES]")
        for p in self.torsion():
            out.append(f"{p.curve} : {p.coeff}")
        return "\n".join(out) + "\n"


def _as_poly(c) -> LaurentPoly:
    if isinstance(c, LaurentPoly):
        return c
    if isinstance(c, RatFunc) and c.is_polynomial():
        return c.num
    return None


def _is_unit_coeff(c, ring: Ring) -> bool:
    if ring.is_field:
        return bool(c)
    p = _as_poly(c)
    if p is None:
        return False
    return is_unit(p)


def eliminate(relations: Sequence[tuple[Multicurve, SkeinVector]], reg: GeneratorRegistry,
              ring: Optional[Ring] = None) -> PresentationReport:
    """Graded elimination: each relation's pivot is its largest (grading, order) generator.

    Over F(A) a later relation whose pivot is already taken is reduced against
    the earlier one; over Z[A, A^-1] that would need division, so a shared
    pivot raises ``PivotCollision``.
    """
    if ring is None:
        ring = relations[0][1].ring if relations else QA
    order = {g.curve: g.sort_key() for g in reg.generators()}

    def lead(v: SkeinVector):
        return max(v.support(), key=lambda m: order.get(m, (reg.preset.grading(m), m.sort_key())))

    rows: dict = {}
    pivots = []
    for src, vec in relations:
        raw_piv = lead(vec) if not vec.is_zero() else None
        raw_coeff = vec[raw_piv] if raw_piv is not None else ring.zero
        v = vec
        while not v.is_zero():
            p = lead(v)
            if p not in rows:
                break
            if not ring.is_field:
                raise PivotCollision(f"relations sourced at {rows[p][0]} and {src} share pivot {p}")
            _, pv = rows[p]
            v = v - pv.scale(v[p] / pv[p])
        if v.is_zero():
            pivots.append(Pivot(src, raw_piv if raw_piv is not None else EMPTY, raw_coeff, True))
            continue
        p = lead(v)
        rows[p] = (src, v)
        coeff = v[p] if p != raw_piv else raw_coeff
        pivots.append(Pivot(src, p, coeff, _is_unit_coeff(coeff, ring)))
    survivors = [g.curve for g in reg.generators() if g.curve not in rows]
    return PresentationReport(reg.preset, reg.cutoff, ring, reg.seed_family(), reg.generators(),
                              list(relations), pivots, survivors)


def quotient(preset: Preset, K: int, ring: Ring = QA, workers: int = 1, **guards) -> PresentationReport:
    reg = seed_generators(preset, K, **guards)
    return eliminate(assemble_relations(reg, ring, workers), reg, ring)


# checks


@dataclass
class Comparison:
    ok: bool
    pairs: list
    counterexamples: list

    def __bool__(self):
        return self.ok


def _split_curve(mc: Multicurve, n: int):
    left, right = [], []
    for c in mc.components:
        letters = {abs(x) for x in c.word}
        if max(letters) <= n:
            left.append(c)
        elif min(letters) > n:
            right.append(CurveClass(tuple(x - n if x > 0 else x + n for x in c.word)))
        else:
            return None
    return Multicurve(tuple(left)), Multicurve(tuple(right))


def tensor_compare(report: PresentationReport, n: int, m: int) -> Comparison:
    """Survivors must be exactly the pairs (left multicurve in P_n, right one in P_m) within the length bound."""
    L = report.preset.length_bound(report.cutoff)
    W = max(2, 2 * L)
    left = enumerate_multicurves(SurfaceSpec(n), L, W)
    right = enumerate_multicurves(SurfaceSpec(m), L, W)
    expected = {(a, b) for a in left for b in right if a.length() + b.length() <= L}
    pairs, bad = [], []
    seen = set()
    for s in report.survivors:
        sp = _split_curve(s, n)
        if sp is None or sp not in expected:
            bad.append(s)
        else:
            pairs.append((s, sp))
            seen.add(sp)
    for a, b in sorted(expected - seen, key=lambda ab: (ab[0].sort_key(), ab[1].sort_key())):
        bad.append((a, b))
    return Comparison(not bad, pairs, bad)


def torsion_witnesses(report_or_relations, reg: Optional[GeneratorRegistry] = None) -> list[tuple[Multicurve, LaurentPoly]]:
    """Non-unit pivot coefficients of a Z[A, A^-1] presentation."""
    if isinstance(report_or_relations, PresentationReport):
        report = report_or_relations
    else:
        rels = list(report_or_relations)
        if not rels:
            return []
        report = eliminate(rels, reg, ZA)
    return [(p.curve, p.coeff) for p in report.torsion()]


def ucp_check(preset: Preset, K: int) -> bool:
    """Relations over Z[A, A^-1], pushed into F(A), equal the ones computed over F(A)."""
    reg = seed_generators(preset, K)
    za = assemble_relations(reg, ZA)
    qa = assemble_relations(reg, QA)
    return len(za) == len(qa) and all(s1 == s2 and v1.to_ring(QA) == v2 for (s1, v1), (s2, v2) in zip(za, qa))


def monotone_check(preset: Preset, K: int, ring: Ring = QA) -> bool:
    """Raising the cutoff to K+1 keeps the old generators and does not change their fate."""
    lo = quotient(preset, K, ring)
    hi = quotient(preset, K + 1, ring)
    gens_lo = {g.curve for g in lo.generators}
    gens_hi = {g.curve for g in hi.generators}
    if not gens_lo <= gens_hi:
        return False
    return {s for s in hi.survivors if s in gens_lo} == set(lo.survivors)
