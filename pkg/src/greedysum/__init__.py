"""greedysum: thresholding greedy algorithm with Cesaro and de la
Vallee-Poussin summability over concrete Banach sequence-space norms,
greedy-type constant estimation with certified witnesses, and desk-scale
verification of the exact identities and inequality chains."""

from .errors import BudgetError, DomainError, InputError
from .vectors import CoefVector, SignPattern
from .spaces import (
    AlphaConstants,
    SpaceSpec,
    alpha_constants,
    default_catalog,
    dual_norm,
    dual_norm_method,
    norm,
    norm_rows,
)
from .greedy import (
    ENUMERATE,
    GreedyOrdering,
    LOWEST_INDEX_FIRST,
    cesaro_sum,
    dominates,
    greedy_orderings,
    greedy_sets,
    greedy_sum,
    indicator_sum,
    osc,
    projection,
    shifted_ordering,
    threshold_set,
    vp_sum,
)

__version__ = "0.1.0"
