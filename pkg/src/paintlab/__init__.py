"""paintlab: a laboratory for the on-line list-colouring (paint-correct) game.

Exact solvers for small graphs, randomized corrector strategies for the
three density regimes of G(n,p), adversarial painters, and a reproducible
experiment harness.
"""

from .graph import ComponentClass, Graph, LazyGnp, gnp
from .engine import GameState, Outcome, Phase, Transcript, play, replay
from .solver import (
    chromatic_number,
    choice_number,
    is_choosable,
    is_list_colourable,
    is_paintable,
    optimal_corrector,
    optimal_painter,
    paintability,
)
from .indsets import (
    ExtractionReport,
    Partition,
    find_independent_of_size,
    greedy_independent_set,
    k0,
    medium_partition_dense,
    medium_partition_typed,
    type_weights,
)
from .strategies import (
    Regime,
    SetClass,
    StrategyParams,
    classify_set,
    dense_corrector,
    full_set_painter,
    list_adversary_painter,
    low_eraser_painter,
    make_corrector,
    make_painter,
    random_painter,
    sparse_corrector,
    tree_corrector,
    unicyclic_corrector,
    very_sparse_corrector,
)
from .bounds import RegimeBounds, chain_bounds, chi_asymptotic, constant_factor, phi, regime_bounds
from .experiments import (
    BudgetRule,
    ExperimentConfig,
    chain_check,
    ratio_sweep,
    run_experiment,
)

__version__ = "0.1.0"
