"""Stylometric analysis of news corpora: features, statistics and a linear SVM."""

from ._stylo import (
    InputError,
    ModelFormatError,
    NumericalError,
    StyloError,
    __version__,
    agreement,
    analyze_text,
    cohens_d,
    count_syllables,
    extract,
    feature_names,
    incomplete_beta,
    match_word,
    one_way_anova,
    readability_from_counts,
    run,
)

__all__ = [
    "InputError",
    "ModelFormatError",
    "NumericalError",
    "StyloError",
    "__version__",
    "agreement",
    "analyze_text",
    "cohens_d",
    "count_syllables",
    "extract",
    "feature_names",
    "incomplete_beta",
    "match_word",
    "one_way_anova",
    "readability_from_counts",
    "run",
]
