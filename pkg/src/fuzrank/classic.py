"""Crisp TOPSIS engine: pairwise-comparison weighting via the principal
eigenvector, vector normalization, and closeness-to-ideal ranking.

The cost reported here is d_plus / (d_plus + d_minus) — the similarity to the
worst condition — so the cheapest action for an attacker has the LOWEST cost
and receives rank 1.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np


EIGEN_TOL = 1e-10
EIGEN_MAX_ITER = 10_000

#: Saaty random consistency indices by matrix size.
_RANDOM_INDEX = {1: 0.0, 2: 0.0, 3: 0.58, 4: 0.90, 5: 1.12,
                 6: 1.24, 7: 1.32, 8: 1.41, 9: 1.45, 10: 1.49}


class CriterionKind(Enum):
    BENEFIT = "benefit"
    COST = "cost"


class CriterionLayer(Enum):
    TARGET = "target"
    CRITERIA = "criteria"
    INDICATOR = "indicator"


@dataclass(frozen=True)
class CriterionSpec:
    id: str
    kind: CriterionKind = CriterionKind.BENEFIT
    weight: Optional[object] = None  # numeric for crisp runs, label for fuzzy runs
    layer: CriterionLayer = CriterionLayer.CRITERIA


class ConvergenceError(RuntimeError):
    pass


class PairwiseMatrix:
    """Square positive comparison matrix with unit diagonal.

    Reciprocity (cells[j][i] == 1/cells[i][j]) is required by default;
    pass allow_non_reciprocal=True to skip that check — the principal
    eigenvector is still well defined for any positive matrix.
    """

    def __init__(self, cells, allow_non_reciprocal: bool = False):
        m = np.asarray(cells, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"pairwise matrix must be square, got shape {m.shape}")
        if not np.all(m > 0):
            raise ValueError("pairwise matrix entries must all be positive")
        if not np.allclose(np.diagonal(m), 1.0, atol=1e-9, rtol=0):
            raise ValueError("pairwise matrix diagonal must be all ones")
        if not allow_non_reciprocal and not np.allclose(m * m.T, 1.0, atol=1e-9, rtol=0):
            raise ValueError(
                "pairwise matrix is not reciprocal (cells[j][i] != 1/cells[i][j]); "
                "pass allow_non_reciprocal=True to accept it anyway"
            )
        self.cells = m
        self.cells.setflags(write=False)

    @property
    def n(self) -> int:
        return self.cells.shape[0]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PairwiseMatrix):
            return NotImplemented
        return np.array_equal(self.cells, other.cells)

    def __repr__(self) -> str:
        return f"PairwiseMatrix(n={self.n})"


class DecisionMatrix:
    """Alternatives x criteria table of nonnegative scores."""

    def __init__(self, alternatives: Sequence[str], criteria: Sequence[CriterionSpec], cells):
        m = np.asarray(cells, dtype=float)
        if m.shape != (len(alternatives), len(criteria)):
            raise ValueError(
                f"cells shape {m.shape} does not match "
                f"{len(alternatives)} alternatives x {len(criteria)} criteria"
            )
        if np.any(m < 0):
            raise ValueError("decision matrix cells must be nonnegative")
        if len(set(alternatives)) != len(alternatives):
            raise ValueError("alternative ids must be unique")
        self.alternatives = list(alternatives)
        self.criteria = list(criteria)
        self.cells = m
        self.cells.setflags(write=False)

    @property
    def shape(self) -> tuple[int, int]:
        return self.cells.shape

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DecisionMatrix):
            return NotImplemented
        return (
            self.alternatives == other.alternatives
            and self.criteria == other.criteria
            and np.array_equal(self.cells, other.cells)
        )


@dataclass(frozen=True)
class ActionRanking:
    action: str
    d_plus: float
    d_minus: float
    cost: float
    benefit: float
    rank: int


@dataclass(frozen=True)
class RankingResult:
    engine: str
    cost_definition: str
    cost_orientation: str
    entries: tuple[ActionRanking, ...]

    def by_rank(self) -> list[ActionRanking]:
        return sorted(self.entries, key=lambda e: e.rank)

    def entry(self, action: str) -> ActionRanking:
        for e in self.entries:
            if e.action == action:
                return e
        raise KeyError(action)

    @property
    def minimum_effort_action(self) -> str:
        return self.by_rank()[0].action


def principal_eigen(matrix: PairwiseMatrix) -> tuple[float, np.ndarray]:
    """Dominant eigenpair by power iteration: (lambda_max, weights summing to 1).

    Start vector is the column-sum-normalized row average, the classic
    pairwise-comparison approximation; Perron-Frobenius guarantees
    convergence for positive matrices.
    """
    m = matrix.cells
    col_normed = m / m.sum(axis=0, keepdims=True)
    w = col_normed.mean(axis=1)
    w /= w.sum()

    for _ in range(EIGEN_MAX_ITER):
        nxt = m @ w
        nxt /= nxt.sum()
        if np.max(np.abs(nxt - w)) < EIGEN_TOL:
            w = nxt
            break
        w = nxt
    else:
        residual = float(np.max(np.abs(m @ w - w * ((m @ w) / w).mean())))
        raise ConvergenceError(
            f"power iteration did not converge in {EIGEN_MAX_ITER} iterations "
            f"(residual {residual:.3e})"
        )

    lambda_max = float(np.mean((m @ w) / w))
    return lambda_max, w


def consistency_ratio(matrix: PairwiseMatrix, lambda_max: Optional[float] = None) -> float:
    """Saaty consistency ratio CR = CI / RI; 0 for n <= 2."""
    n = matrix.n
    if lambda_max is None:
        lambda_max, _ = principal_eigen(matrix)
    ri = _RANDOM_INDEX.get(n, 1.49)
    if ri == 0.0:
        return 0.0
    ci = (lambda_max - n) / (n - 1)
    return ci / ri


def derive_weights(matrix: PairwiseMatrix) -> np.ndarray:
    """Eigenvector weights, warning when the comparisons look inconsistent."""
    lambda_max, w = principal_eigen(matrix)
    cr = consistency_ratio(matrix, lambda_max)
    if cr > 0.1:
        warnings.warn(
            f"pairwise comparisons are inconsistent (CR = {cr:.3f} > 0.1); "
            "weights may be unreliable",
            stacklevel=2,
        )
    return w


def combinatorial_weights(
    parent_weights: Sequence[float],
    child_weights: Optional[Sequence[Sequence[float]]] = None,
) -> np.ndarray:
    """Flatten a two-layer weight hierarchy into indicator-level weights.

    Each child vector is scaled by its parent's weight and the results are
    concatenated. With no child layer the parent vector passes through.
    """
    parent = np.asarray(parent_weights, dtype=float)
    if parent.ndim != 1 or parent.size == 0:
        raise ValueError("parent weights must be a nonempty vector")
    if not np.isclose(parent.sum(), 1.0, atol=1e-9):
        raise ValueError(f"parent weights must sum to 1, got {parent.sum()!r}")
    if child_weights is None:
        return parent.copy()
    if len(child_weights) != parent.size:
        raise ValueError(
            f"need one child weight vector per parent: {parent.size} parents, "
            f"{len(child_weights)} child vectors"
        )
    flat: list[float] = []
    for p, children in zip(parent, child_weights):
        sub = np.asarray(children, dtype=float)
        if sub.ndim != 1 or sub.size == 0:
            raise ValueError("each child weight vector must be a nonempty vector")
        if not np.isclose(sub.sum(), 1.0, atol=1e-9):
            raise ValueError(f"child weights must sum to 1, got {sub.sum()!r}")
        flat.extend(p * sub)
    return np.asarray(flat)


def normalize(matrix: DecisionMatrix) -> DecisionMatrix:
    """Scale each criterion column to unit Euclidean norm."""
    norms = np.sqrt((matrix.cells ** 2).sum(axis=0))
    if np.any(norms == 0):
        dead = [matrix.criteria[j].id for j in np.flatnonzero(norms == 0)]
        raise ValueError(f"cannot normalize all-zero column(s): {', '.join(dead)}")
    return DecisionMatrix(matrix.alternatives, matrix.criteria, matrix.cells / norms)


def ideal_solutions(weighted: DecisionMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Best and worst per-criterion values: (max, min) for benefit, flipped for cost."""
    e_plus = np.empty(weighted.shape[1])
    e_minus = np.empty(weighted.shape[1])
    for j, spec in enumerate(weighted.criteria):
        col = weighted.cells[:, j]
        if spec.kind is CriterionKind.BENEFIT:
            e_plus[j], e_minus[j] = col.max(), col.min()
        else:
            e_plus[j], e_minus[j] = col.min(), col.max()
    return e_plus, e_minus


COST_DEFINITION_CLASSIC = "d_plus / (d_plus + d_minus)"


def rank_classic(matrix: DecisionMatrix, weights: Sequence[float]) -> RankingResult:
    """Full crisp pipeline: normalize, weight, measure L2 distance to the
    ideal and anti-ideal, and rank by similarity to the worst condition
    (lowest cost first)."""
    w = np.asarray(weights, dtype=float)
    if w.shape != (matrix.shape[1],):
        raise ValueError(f"expected {matrix.shape[1]} weights, got {w.shape}")
    if np.any(w < 0):
        raise ValueError("criterion weights must be nonnegative")
    if not np.isclose(w.sum(), 1.0, atol=1e-9):
        raise ValueError(f"criterion weights must sum to 1, got {w.sum()!r}")

    weighted = DecisionMatrix(
        matrix.alternatives, matrix.criteria, normalize(matrix).cells * w
    )
    e_plus, e_minus = ideal_solutions(weighted)
    d_plus = np.sqrt(((weighted.cells - e_plus) ** 2).sum(axis=1))
    d_minus = np.sqrt(((weighted.cells - e_minus) ** 2).sum(axis=1))

    costs = np.empty(len(matrix.alternatives))
    for i in range(len(costs)):
        denom = d_plus[i] + d_minus[i]
        if denom == 0.0:
            warnings.warn(
                f"alternative {matrix.alternatives[i]!r} is indistinguishable from "
                "both ideals (all alternatives identical?); cost defined as 0.5",
                stacklevel=2,
            )
            costs[i] = 0.5
        else:
            costs[i] = d_plus[i] / denom

    order = sorted(range(len(costs)), key=lambda i: (costs[i], matrix.alternatives[i]))
    ranks = {i: pos + 1 for pos, i in enumerate(order)}
    entries = tuple(
        ActionRanking(
            action=matrix.alternatives[i],
            d_plus=float(d_plus[i]),
            d_minus=float(d_minus[i]),
            cost=float(costs[i]),
            benefit=float(1.0 - costs[i]),
            rank=ranks[i],
        )
        for i in range(len(costs))
    )
    return RankingResult(
        engine="classic",
        cost_definition=COST_DEFINITION_CLASSIC,
        cost_orientation="lower cost = cheaper action for the attacker",
        entries=entries,
    )
