"""Localizations of finite categories: zigzag words and calculi of fractions."""

from .category import (
    FiniteCategory,
    Functor,
    LocalizationError,
    Report,
    check_functor,
    compose,
    make_category,
    opposite,
    validate_category,
)
from .fileformat import load, parse, serialize
from .fractions import (
    LeftFractions,
    Symbol,
    build_fraction_category,
    build_right_fraction_category,
    check_left_fraction_axioms,
    fraction_dotted,
    lf_equiv,
)
from .words import LocalizedPresentation, parse_word, words_equal

__all__ = [
    "FiniteCategory",
    "Functor",
    "LeftFractions",
    "LocalizationError",
    "LocalizedPresentation",
    "Report",
    "Symbol",
    "build_fraction_category",
    "build_right_fraction_category",
    "check_functor",
    "check_left_fraction_axioms",
    "compose",
    "fraction_dotted",
    "lf_equiv",
    "load",
    "make_category",
    "opposite",
    "parse",
    "parse_word",
    "serialize",
    "validate_category",
    "words_equal",
]
