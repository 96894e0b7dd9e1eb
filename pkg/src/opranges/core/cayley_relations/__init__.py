from .relation import (
    NonnegRelation,
    form_sum,
    form_value,
    from_cayley,
    from_operator,
    graph_product,
    relation_from_form,
)
from .cayley_models import (
    ChainFamiliesReport,
    ChainFamilyStep,
    CompletionReport,
    EulerResult,
    EulerRow,
    EulerSweepReport,
    SplitNReport,
    SplitPairReport,
    TrotterResult,
    TrotterRow,
    TrotterSweepReport,
)
from .semigroups import euler_approx, euler_sweep, semigroup, trotter_product, trotter_sweep
from .splitting import chain_families, complete_pair, split_n, split_pair

__all__ = [
    "ChainFamiliesReport",
    "ChainFamilyStep",
    "CompletionReport",
    "EulerResult",
    "EulerRow",
    "EulerSweepReport",
    "NonnegRelation",
    "SplitNReport",
    "SplitPairReport",
    "TrotterResult",
    "TrotterRow",
    "TrotterSweepReport",
    "chain_families",
    "complete_pair",
    "euler_approx",
    "euler_sweep",
    "form_sum",
    "form_value",
    "from_cayley",
    "from_operator",
    "graph_product",
    "relation_from_form",
    "semigroup",
    "split_n",
    "split_pair",
    "trotter_product",
    "trotter_sweep",
]
