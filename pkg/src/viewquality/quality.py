"""Overall view quality: the product of the three sub-scores, with quality labels.

The multiplicative form means one bad dimension sinks the whole view: a large
window onto a wall scores 0 no matter how clear the glazing is.  Optional
per-dimension weights let a rater emphasise one dimension, but their product
must stay 1 so weighted and unweighted scores remain comparable.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import DomainError

WEIGHT_PRODUCT_TOL = 1e-9


class QualityLabel(enum.Enum):
    INSUFFICIENT = "Insufficient"
    SUFFICIENT = "Sufficient"
    GOOD = "Good"
    EXCELLENT = "Excellent"


def label(value: float) -> QualityLabel:
    """Quality label for a score in [0, 1]. Band edges belong to the band above."""
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"score must be in [0, 1] to label, got {value}")
    if value < 0.125:
        return QualityLabel.INSUFFICIENT
    if value < 0.375:
        return QualityLabel.SUFFICIENT
    if value < 0.75:
        return QualityLabel.GOOD
    return QualityLabel.EXCELLENT


@dataclass(frozen=True)
class QualityScore:
    """Overall score for one observer/window pair.

    ``value`` is the raw weighted product and may exceed 1 when weights are in
    play; the label always reflects the value clamped to [0, 1].
    """

    v_content: float
    v_access: float
    v_clarity: float
    k_content: float = 1.0
    k_access: float = 1.0
    k_clarity: float = 1.0

    @property
    def value(self) -> float:
        return (self.k_content * self.v_content) * (self.k_access * self.v_access) * (self.k_clarity * self.v_clarity)

    @property
    def clamped_value(self) -> float:
        return min(1.0, max(0.0, self.value))

    @property
    def label(self) -> QualityLabel:
        return label(self.clamped_value)


def _check_subscores(v_content: float, v_access: float, v_clarity: float) -> None:
    for name, v in (("v_content", v_content), ("v_access", v_access), ("v_clarity", v_clarity)):
        if not 0.0 <= v <= 1.0:
            raise DomainError(f"{name} must be in [0, 1], got {v}")


def view_quality(v_content: float, v_access: float, v_clarity: float) -> QualityScore:
    """Unweighted overall score: the plain product of the three sub-scores."""
    return view_quality_weighted(v_content, v_access, v_clarity, (1.0, 1.0, 1.0))


def view_quality_weighted(
    v_content: float,
    v_access: float,
    v_clarity: float,
    weights: tuple[float, float, float],
) -> QualityScore:
    """Weighted overall score.

    Args:
        weights: (k_content, k_access, k_clarity); each positive, product
            within 1e-9 of 1.

    Raises:
        DomainError: a sub-score is outside [0, 1] or a weight is not positive.
        ValueError: the weight product is not 1, reported with its value.
    """
    _check_subscores(v_content, v_access, v_clarity)
    k_content, k_access, k_clarity = weights
    for name, k in (("k_content", k_content), ("k_access", k_access), ("k_clarity", k_clarity)):
        if not k > 0.0:
            raise DomainError(f"{name} must be positive, got {k}")
    product = k_content * k_access * k_clarity
    if abs(product - 1.0) > WEIGHT_PRODUCT_TOL:
        raise ValueError(f"weight product must equal 1 (within {WEIGHT_PRODUCT_TOL}), got {product!r}")
    return QualityScore(v_content, v_access, v_clarity, k_content, k_access, k_clarity)
