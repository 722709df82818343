import pytest
from hypothesis import given
from hypothesis import strategies as st

from kbsm.surfaceword import (
    EMPTY,
    Column,
    CurveClass,
    DiagramWord,
    Multicurve,
    NotCrossingless,
    SurfaceSpec,
    ValidationError,
    WordSyntaxError,
    cap,
    cup,
    cut_arc_grading,
    format_word,
    free_reduce,
    grading,
    invert,
    is_one_sided,
    normalize_class,
    parse_word,
    punct,
    trace_loops,
    validate,
)
from oracles import canon

letters = st.integers(1, 3).flatmap(lambda i: st.sampled_from([i, -i]))
words = st.lists(letters, max_size=10).map(tuple)


def test_parse_example_and_roundtrip():
    text = "surface 2\nsplit 1\ncup 0\npunct 1 1\npunct 2 1  # around both\ncap 0\n"
    w = parse_word(text)
    assert w.surface == SurfaceSpec(2, 1)
    assert w.columns == (cup(0), punct(1, 1), punct(2, 1), cap(0))
    assert parse_word(format_word(w)) == w
    assert parse_word("surface 2 / split 1 / cup 0 / punct 1 1 / punct 2 1 / cap 0") == w


def test_widths_and_slices():
    w = parse_word("surface 2 / split 1 / cup 0 / cup 1 / punct 1 2 / punct 2 2 / cap 1 / cap 0")
    assert w.widths() == [0, 2, 4, 4, 4, 2, 0]
    assert w.split_slice() == 3
    assert w.punct_index(2) == 3
    assert len(w) == 6


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("surface 1\ncup 0\nfoo 1\n", 3, 1),
        ("surface 1\ncup\n", 2, 1),
        ("surface 1\ncup x\n", 2, 5),
        ("cup 0\n", 1, 1),
        ("surface 1\nsurface 2\n", 2, 1),
        ("surface 2\ncup 0\nsplit 1\n", 3, 1),
    ],
)
def test_syntax_errors_carry_position(text, line, col):
    with pytest.raises(WordSyntaxError) as err:
        parse_word(text)
    assert (err.value.line, err.value.col) == (line, col)


@pytest.mark.parametrize(
    "text,needle",
    [
        ("surface 1\ncup 0\npunct 1 1\n", "not closed"),
        ("surface 2\ncup 0\npunct 2 1\npunct 1 1\ncap 0\n", "puncture order"),
        ("surface 2\ncup 0\npunct 1 1\ncap 0\n", "missing puncture"),
        ("surface 1\ncup 1\npunct 1 0\ncap 0\n", "column 0"),
        ("surface 1\ncup 0\npunct 1 3\ncap 0\n", "column 1"),
        ("surface 1\ncup 0\nover 1\npunct 1 0\ncap 0\n", "column 1"),
    ],
)
def test_validation_errors(text, needle):
    with pytest.raises(ValidationError) as err:
        parse_word(text)
    assert any(needle in v for v in err.value.violations)


def test_split_must_be_interior():
    with pytest.raises(ValidationError):
        parse_word("surface 2\nsplit 2\ncup 0\npunct 1 1\npunct 2 1\ncap 0\n")
    with pytest.raises(ValueError):
        SurfaceSpec(1, 1)


def test_unchecked_parse_allows_invalid():
    w = parse_word("surface 1\ncup 0\n", check=False)
    assert validate(w)


def test_free_words():
    assert free_reduce((1, 2, -2, -1, 3)) == (3,)
    assert invert((1, -2)) == (2, -1)
    assert normalize_class((1, -1)) is None
    assert str(normalize_class((2, 1))) == "x1x2"
    assert str(normalize_class((-2, 1))) == "x1x2^-1"


@given(words)
def test_canonical_class_matches_oracle(w):
    c = normalize_class(w)
    ref = canon(w)
    assert (c is None) == (ref == ())
    if c is not None:
        assert c.word == ref


@given(words, st.integers(0, 9))
def test_class_is_conjugation_and_inversion_invariant(w, k):
    c = normalize_class(w)
    rot = w[k % len(w):] + w[: k % len(w)] if w else w
    assert normalize_class(rot) == c
    assert normalize_class(invert(w)) == c
    assert normalize_class((3,) + w + (-3,)) == c


@given(st.lists(words.filter(lambda w: canon(w) != ()), max_size=4))
def test_multicurve_order_independent(ws):
    m1 = Multicurve.from_words(*ws)
    m2 = Multicurve.from_words(*reversed(ws))
    assert m1 == m2 and hash(m1) == hash(m2)
    assert m1.length() == sum(len(canon(w)) for w in ws)


def test_multicurve_rendering_and_order():
    assert str(EMPTY) == "{}"
    m = Multicurve.from_words((1, 2), (1,))
    assert str(m) == "{x1; x1x2}"
    assert EMPTY < Multicurve.from_words((1,)) < Multicurve.from_words((2,)) < m
    with pytest.raises(ValueError):
        Multicurve.from_words((1, -1))


def test_grading():
    m = Multicurve.from_words((1, 2))
    assert grading(m, 1) == 2
    assert grading(Multicurve.from_words((1, 2), (1, 2)), 1) == 4
    assert grading(Multicurve.from_words((1,), (2,)), 1) == 0
    assert grading(Multicurve.from_words((1, 2, 3, -2)), 2) == 2
    assert cut_arc_grading(Multicurve.from_words((1,), (1,), (1,)), 1) == 3
    assert is_one_sided(CurveClass((1, 2)), 2)


@given(st.lists(words.filter(lambda w: canon(w) != ()), min_size=1, max_size=3), st.integers(1, 2))
def test_grading_is_even_and_additive(ws, s):
    m = Multicurve.from_words(*ws)
    assert grading(m, s) % 2 == 0
    assert grading(m, s) == sum(grading(Multicurve.from_words(w), s) for w in ws)


def test_trace_loops():
    w = parse_word("surface 2 / cup 0 / punct 1 1 / punct 2 1 / cap 0")
    (loop,) = trace_loops(w)
    assert normalize_class(loop) == CurveClass((1, 2))
    with pytest.raises(NotCrossingless):
        trace_loops(DiagramWord(SurfaceSpec(0), (cup(0), Column("over", 0), cap(0))))
