"""Fuzzy TOPSIS engine over triangular fuzzy ratings.

Multi-rater grids are aggregated per cell as (min of lower bounds, mean of
peaks, max of upper bounds), normalized by a linear scale transformation,
weighted by fuzzy criterion weights, and ranked by summed vertex distances to
the fuzzy ideal and anti-ideal.

The cost reported here is d_minus / (d_plus + d_minus) — the closeness
coefficient — so the cheapest action for an attacker has the HIGHEST cost
value and receives rank 1. That is the opposite orientation from the crisp
engine; reports label each cost column with its defining formula.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .classic import ActionRanking, CriterionKind, CriterionSpec, RankingResult
from .tfn import TFN, LinguisticScale, TriangularFuzzyNumber


@dataclass(frozen=True)
class FuzzyDecisionMatrix:
    """Alternatives x criteria grid of TFNs plus per-criterion fuzzy weights."""

    alternatives: tuple[str, ...]
    criteria: tuple[CriterionSpec, ...]
    cells: tuple[tuple[TriangularFuzzyNumber, ...], ...]  # [alternative][criterion]
    weights: Optional[tuple[TriangularFuzzyNumber, ...]] = None

    def __post_init__(self) -> None:
        if len(self.cells) != len(self.alternatives):
            raise ValueError("one cell row per alternative required")
        for row in self.cells:
            if len(row) != len(self.criteria):
                raise ValueError("one cell per criterion required in every row")
        if self.weights is not None and len(self.weights) != len(self.criteria):
            raise ValueError("one weight per criterion required")

    def column(self, j: int) -> list[TriangularFuzzyNumber]:
        return [row[j] for row in self.cells]

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.alternatives), len(self.criteria))


@dataclass(frozen=True)
class RatingPanel:
    """Linguistic rating grids from N decision makers over one set of
    alternatives and criteria, plus each rater's criterion-weight labels."""

    decision_makers: tuple[str, ...]
    alternatives: tuple[str, ...]
    criteria: tuple[CriterionSpec, ...]
    ratings: Mapping[str, Mapping[str, Mapping[str, str]]]  # rater -> alt -> crit -> label
    weight_labels: Mapping[str, Mapping[str, str]]  # rater -> crit -> label

    def __post_init__(self) -> None:
        if not self.decision_makers:
            raise ValueError("rating panel needs at least one decision maker")
        if len(set(self.decision_makers)) != len(self.decision_makers):
            raise ValueError("decision maker names must be unique")
        crit_ids = [c.id for c in self.criteria]
        for dm in self.decision_makers:
            grid = self.ratings.get(dm)
            if grid is None:
                raise ValueError(f"decision maker {dm!r} has no rating grid")
            if set(grid) != set(self.alternatives):
                raise ValueError(f"rating grid of {dm!r} does not cover the alternatives")
            for alt in self.alternatives:
                if set(grid[alt]) != set(crit_ids):
                    raise ValueError(
                        f"rating grid of {dm!r} for {alt!r} does not cover the criteria"
                    )
            wrow = self.weight_labels.get(dm)
            if wrow is None or set(wrow) != set(crit_ids):
                raise ValueError(f"criterion weight labels of {dm!r} do not cover the criteria")


def aggregate_ratings(panel: RatingPanel, scale: LinguisticScale) -> FuzzyDecisionMatrix:
    """Pool the raters: per cell take (min a, mean b, max c) across raters,
    and aggregate each criterion's weight labels the same way."""

    def pool(tfns: Sequence[TriangularFuzzyNumber]) -> TriangularFuzzyNumber:
        return TFN(
            min(t.a for t in tfns),
            sum(t.b for t in tfns) / len(tfns),
            max(t.c for t in tfns),
        )

    rows = []
    for alt in panel.alternatives:
        row = []
        for spec in panel.criteria:
            row.append(pool([scale[panel.ratings[dm][alt][spec.id]] for dm in panel.decision_makers]))
        rows.append(tuple(row))

    weights = tuple(
        pool([scale[panel.weight_labels[dm][spec.id]] for dm in panel.decision_makers])
        for spec in panel.criteria
    )
    return FuzzyDecisionMatrix(
        alternatives=panel.alternatives,
        criteria=panel.criteria,
        cells=tuple(rows),
        weights=weights,
    )


def normalize_fuzzy(matrix: FuzzyDecisionMatrix) -> FuzzyDecisionMatrix:
    """Linear-scale normalization into [0, 1] componentwise.

    Benefit criterion: divide every component by the column's largest upper
    bound. Cost criterion: divide the column's componentwise minima (min a,
    min b, min c) by the cell's own upper bound, which keeps the triplet
    ordered and inside [0, 1].
    """
    m, n = matrix.shape
    cols: list[list[TriangularFuzzyNumber]] = []
    for j, spec in enumerate(matrix.criteria):
        col = matrix.column(j)
        if spec.kind is CriterionKind.BENEFIT:
            c_max = max(t.c for t in col)
            if c_max <= 0:
                raise ValueError(
                    f"benefit criterion {spec.id!r} has no positive upper bound; cannot normalize"
                )
            cols.append([TFN(t.a / c_max, t.b / c_max, t.c / c_max) for t in col])
        else:
            if any(t.c <= 0 for t in col):
                raise ValueError(
                    f"cost criterion {spec.id!r} has a cell with nonpositive upper bound; "
                    "cannot normalize"
                )
            a_min = min(t.a for t in col)
            b_min = min(t.b for t in col)
            c_min = min(t.c for t in col)
            cols.append([TFN(a_min / t.c, b_min / t.c, c_min / t.c) for t in col])
    rows = tuple(tuple(cols[j][i] for j in range(n)) for i in range(m))
    return FuzzyDecisionMatrix(matrix.alternatives, matrix.criteria, rows, matrix.weights)


def apply_weights(
    matrix: FuzzyDecisionMatrix,
    weights: Optional[Sequence[TriangularFuzzyNumber]] = None,
) -> FuzzyDecisionMatrix:
    """Multiply each column by its criterion weight (componentwise TFN product)."""
    w = tuple(weights) if weights is not None else matrix.weights
    if w is None:
        raise ValueError("no weights supplied and the matrix carries none")
    if len(w) != len(matrix.criteria):
        raise ValueError(f"expected {len(matrix.criteria)} weights, got {len(w)}")
    for spec, t in zip(matrix.criteria, w):
        if t.a < 0:
            raise ValueError(f"weight for criterion {spec.id!r} has a negative component: {t}")
    rows = tuple(
        tuple(cell * w[j] for j, cell in enumerate(row)) for row in matrix.cells
    )
    return FuzzyDecisionMatrix(matrix.alternatives, matrix.criteria, rows, weights=None)


def fuzzy_ideals(
    weighted: FuzzyDecisionMatrix,
) -> tuple[list[TriangularFuzzyNumber], list[TriangularFuzzyNumber]]:
    """Per criterion: ideal = crisp max of upper bounds, anti-ideal = crisp min
    of lower bounds (degenerate TFNs)."""
    fpis, fnis = [], []
    for j in range(len(weighted.criteria)):
        col = weighted.column(j)
        fpis.append(TFN.crisp(max(t.c for t in col)))
        fnis.append(TFN.crisp(min(t.a for t in col)))
    return fpis, fnis


def cost_benefit(d_plus: float, d_minus: float) -> tuple[float, float]:
    """Closeness coefficients from the two accumulated distances.

    cost = d_minus / (d_plus + d_minus), benefit = d_plus / (d_plus + d_minus);
    they sum to 1. Both distances zero (fully degenerate matrix) maps to
    (0.5, 0.5).
    """
    denom = d_plus + d_minus
    if denom == 0.0:
        return 0.5, 0.5
    return d_minus / denom, d_plus / denom


COST_DEFINITION_FUZZY = "d_minus / (d_plus + d_minus)"


def rank_fuzzy(weighted: FuzzyDecisionMatrix) -> RankingResult:
    """Rank a weighted normalized fuzzy matrix.

    d_plus / d_minus accumulate the per-criterion vertex distances to the
    ideal / anti-ideal as plain sums. Rank 1 goes to the highest cost value
    (the closeness coefficient), ties broken by action id.
    """
    fpis, fnis = fuzzy_ideals(weighted)
    d_plus, d_minus, costs, benefits = [], [], [], []
    for i, row in enumerate(weighted.cells):
        dp = sum(cell.distance(fpis[j]) for j, cell in enumerate(row))
        dmi = sum(cell.distance(fnis[j]) for j, cell in enumerate(row))
        if dp + dmi == 0.0:
            warnings.warn(
                f"alternative {weighted.alternatives[i]!r} has zero distance to both "
                "ideals (degenerate matrix); cost defined as 0.5",
                stacklevel=2,
            )
        cost, benefit = cost_benefit(dp, dmi)
        d_plus.append(dp)
        d_minus.append(dmi)
        costs.append(cost)
        benefits.append(benefit)

    order = sorted(
        range(len(costs)), key=lambda i: (-costs[i], weighted.alternatives[i])
    )
    ranks = {i: pos + 1 for pos, i in enumerate(order)}
    entries = tuple(
        ActionRanking(
            action=weighted.alternatives[i],
            d_plus=d_plus[i],
            d_minus=d_minus[i],
            cost=costs[i],
            benefit=benefits[i],
            rank=ranks[i],
        )
        for i in range(len(costs))
    )
    return RankingResult(
        engine="fuzzy",
        cost_definition=COST_DEFINITION_FUZZY,
        cost_orientation="higher cost = cheaper action for the attacker",
        entries=entries,
    )


def rank_panel(panel: RatingPanel, scale: LinguisticScale) -> RankingResult:
    """Full pipeline: aggregate, normalize, weight, rank."""
    aggregated = aggregate_ratings(panel, scale)
    return rank_fuzzy(apply_weights(normalize_fuzzy(aggregated)))
