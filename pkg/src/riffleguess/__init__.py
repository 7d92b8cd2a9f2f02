"""Exact and asymptotic analysis of no-feedback card guessing after riffle shuffles."""

from .errors import CapacityError, DomainError
from .transition import (
    Backend,
    DeckConfig,
    ExactLimits,
    ProbMatrix,
    k_shuffle_matrix,
    row_pmf,
    shuffle_powers,
    single_shuffle_matrix,
    single_shuffle_prob,
)
from .strategy import (
    Provenance,
    ScoreReport,
    Strategy,
    asymptotic_expected,
    closed_form_strategy,
    exact_strategy,
    expected_score,
    literal_box_strategy,
    score_report,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError", "DomainError",
    "Backend", "DeckConfig", "ExactLimits", "ProbMatrix", "k_shuffle_matrix", "row_pmf",
    "shuffle_powers", "single_shuffle_matrix", "single_shuffle_prob",
    "Provenance", "ScoreReport", "Strategy", "asymptotic_expected", "closed_form_strategy",
    "exact_strategy", "expected_score", "literal_box_strategy", "score_report",
]
