"""Named self-check suites run by ``skein verify``."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .bracket import SkeinVector, reduce, random_word, reduce_in_order, state_sum_oracle
from .ring import QA, ZA, LaurentPoly, delta, divide_exact, is_unit
from .skeinmod import Preset, assemble_relations, eliminate, quotient, seed_generators, tensor_compare
from .sliding import OddGrading, full_slide, relation_encircle, u_modification
from .surfaceword import EMPTY, DiagramWord, parse_word

__all__ = ["Check", "SUITES", "run_suite", "KINK_POS", "KINK_NEG", "witness_z"]

KINK_POS = "surface 0 / cup 0 / cup 2 / under 1 / cap 2 / cap 0"
KINK_NEG = "surface 0 / cup 0 / cup 2 / over 1 / cap 2 / cap 0"


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


def witness_z(k: int) -> DiagramWord:
    """``k/2`` parallel copies of the curve around both punctures of P_2, split 1."""
    c = k // 2
    cols = [f"cup {j}" for j in range(c)] + [f"punct 1 {c}", f"punct 2 {c}"] + [f"cap {j}" for j in reversed(range(c))]
    return parse_word("surface 2\nsplit 1\n" + "\n".join(cols))


def _lp(text: str) -> LaurentPoly:
    return LaurentPoly.parse(text)


def leading_form(k: int) -> LaurentPoly:
    """``A^{2k+2} + A^{-2k-2} - A^2 - A^-2``."""
    return LaurentPoly({2 * k + 2: 1, -2 * k - 2: 1, 2: -1, -2: -1})


def factored_form(k: int) -> LaurentPoly:
    """``A^{-2k-2} (A^{2k+4} - 1)(A^{2k} - 1)``."""
    return (LaurentPoly({2 * k + 4: 1, 0: -1}) * LaurentPoly({2 * k: 1, 0: -1})).shift(-2 * k - 2)


def unit_multiple(a: LaurentPoly, b: LaurentPoly) -> bool:
    """``a = ±A^m b`` for some m."""
    if not a or not b:
        return a == b
    try:
        return is_unit(divide_exact(a, b))
    except ArithmeticError:
        return False


def suite_framing(rng) -> list[Check]:
    dlt = SkeinVector({EMPTY: delta()})
    pos = reduce(parse_word(KINK_POS))
    neg = reduce(parse_word(KINK_NEG))
    return [
        Check("positive kink = -A^3 * unknot", pos == dlt.scale(_lp("-A^3")), str(pos)),
        Check("negative kink = -A^-3 * unknot", neg == dlt.scale(_lp("-A^-3")), str(neg)),
    ]


def suite_coeff(rng) -> list[Check]:
    out = []
    for k in (2, 4):
        z = witness_z(k)
        rel = relation_encircle(z)
        mc = reduce(z).support()[0]
        lead = rel[mc]
        ok = unit_multiple(lead, leading_form(k)) and unit_multiple(lead, factored_form(k))
        out.append(Check(f"leading coefficient k={k}", ok, str(lead)))
    ident = all(leading_form(k) == factored_form(k) for k in range(1, 9))
    out.append(Check("A^(2k+2)+A^(-2k-2)-A^2-A^-2 = A^(-2k-2)(A^(2k+4)-1)(A^(2k)-1), k=1..8", ident))
    return out


def suite_slide(rng) -> list[Check]:
    out = []
    A6 = LaurentPoly.monomial(1, 6)
    for k in (2, 4):
        z = witness_z(k)
        diff = reduce(full_slide(z)) - reduce(u_modification(z)).scale(A6)
        out.append(Check(f"slide(z_{k}) - A^6 u(z_{k}) = 0", diff.is_zero(), str(diff)))
    odd = parse_word("surface 2\nsplit 1\ncup 0\npunct 1 1\npunct 2 1\ncap 0")
    try:
        full_slide(odd, odd.split_slice(), 1)
        out.append(Check("odd k rejected", False, "no error"))
    except OddGrading:
        out.append(Check("odd k rejected", True))
    return out


def suite_tensor(rng) -> list[Check]:
    out = []
    for n, m in ((1, 1), (2, 1)):
        rep = quotient(Preset.connsum(n, m), 2, QA)
        cmp = tensor_compare(rep, n, m)
        out.append(Check(f"connsum({n},{m}) K=2 survivors = tensor basis", cmp.ok,
                         f"{len(cmp.pairs)} pairs" if cmp.ok else f"counterexample {cmp.counterexamples[0]}"))
    reg = seed_generators(Preset.connsum(1, 1), 2)
    bare = eliminate([], reg, QA)
    cmp = tensor_compare(bare, 1, 1)
    out.append(Check("negative control without relations fails", not cmp.ok,
                     f"counterexample {cmp.counterexamples[0]}" if cmp.counterexamples else ""))
    return out


def suite_s1xs2(rng) -> list[Check]:
    rep = quotient(Preset.s1xs2(), 3, QA)
    ok = rep.survivors == [EMPTY]
    return [Check("s1xs2 K=3 survivors = {}", ok, ", ".join(map(str, rep.survivors)))]


def suite_ucp(rng) -> list[Check]:
    out = []
    for preset, K in ((Preset.connsum(1, 1), 2), (Preset.s1xs2(), 3)):
        reg = seed_generators(preset, K)
        za = assemble_relations(reg, ZA)
        qa = assemble_relations(reg, QA)
        ok = [v.to_ring(QA) for _, v in za] == [v for _, v in qa]
        out.append(Check(f"UCP {preset.label} K={K}", ok))
    bad = None
    for _ in range(30):
        w = random_word(rng, rng.randint(1, 3), rng.randint(0, 6))
        if reduce(w, ZA).to_ring(QA) != reduce(w, QA):
            bad = w
            break
    out.append(Check("UCP on random words", bad is None, "" if bad is None else str(bad).replace("\n", " / ")))
    return out


def suite_confluence(rng) -> list[Check]:
    bad = None
    for _ in range(100):
        w = random_word(rng, rng.randint(1, 3), rng.randint(0, 8))
        order = list(range(w.crossing_count()))
        rng.shuffle(order)
        if reduce_in_order(w, ZA, order) != reduce(w):
            bad = w
            break
    return [Check("random resolution orders agree (100 words, <= 8 crossings)", bad is None,
                  "" if bad is None else str(bad).replace("\n", " / "))]


def suite_oracle(rng) -> list[Check]:
    bad = None
    for _ in range(40):
        w = random_word(rng, rng.randint(1, 3), rng.randint(0, 12))
        if state_sum_oracle(w) != reduce(w):
            bad = w
            break
    return [Check("sweep = brute-force state sum (40 words, <= 12 crossings)", bad is None,
                  "" if bad is None else str(bad).replace("\n", " / "))]


SUITES: dict[str, Callable[[random.Random], list[Check]]] = {
    "framing": suite_framing,
    "coeff-k": suite_coeff,
    "slide": suite_slide,
    "tensor": suite_tensor,
    "s1xs2": suite_s1xs2,
    "ucp": suite_ucp,
    "confluence": suite_confluence,
    "oracle": suite_oracle,
}


def run_suite(name: str, seed: int = 0) -> list[Check]:
    return SUITES[name](random.Random(seed))
