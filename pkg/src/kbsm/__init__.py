"""Kauffman bracket skein modules of thickened punctured disks and their handle quotients."""

from .bracket import SkeinVector, reduce, reduce_in_order, state_sum_oracle, writhe
from .kernel import BACKEND
from .ring import QA, ZA, LaurentPoly, RatFunc, Ring, delta, is_unit
from .skeinmod import (
    GeneratorRegistry,
    Preset,
    PresentationReport,
    assemble_relations,
    eliminate,
    quotient,
    seed_generators,
    tensor_compare,
    torsion_witnesses,
    ucp_check,
)
from .sliding import band_slide, encircle_slide, full_slide, relation_encircle, u_modification
from .surfaceword import CurveClass, DiagramWord, Multicurve, SurfaceSpec, parse_word

__all__ = [
    "BACKEND",
    "CurveClass",
    "DiagramWord",
    "GeneratorRegistry",
    "LaurentPoly",
    "Multicurve",
    "PresentationReport",
    "Preset",
    "QA",
    "RatFunc",
    "Ring",
    "SkeinVector",
    "SurfaceSpec",
    "ZA",
    "assemble_relations",
    "band_slide",
    "delta",
    "eliminate",
    "encircle_slide",
    "full_slide",
    "is_unit",
    "parse_word",
    "quotient",
    "reduce",
    "reduce_in_order",
    "relation_encircle",
    "seed_generators",
    "state_sum_oracle",
    "tensor_compare",
    "torsion_witnesses",
    "u_modification",
    "ucp_check",
    "writhe",
]
