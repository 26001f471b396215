"""Certified goodness bounds for word sequences over finite preordered alphabets.

Given a decidable preorder on a finite alphabet and an infinite sequence of
words over it, the top-level functional computes a bound below which two of
the words must embed, then certifies the bound by brute force before
reporting it. The bound is extracted by playing a sequential game whose
selection functions build stagewise approximations to a minimal bad
sequence, controlled by a pigeonhole subsequence realizer.
"""

from .errors import (
    BudgetExhaustedError,
    ContractViolationError,
    InstanceSpecError,
    SoundnessViolationError,
)
from .eps import (
    Budget,
    GameInstance,
    SelectionFamily,
    SpectorReport,
    TraceLog,
    eps,
    eps_literal,
    paused_gc,
    reclaim_run_garbage,
    spector_check,
)
from .instance import (
    InstanceSpec,
    build_stream,
    instance_to_dict,
    load_instance,
    parse_instance,
    to_higman_instance,
)
from .mbs import (
    MbsApproximation,
    MbsContext,
    a_pred,
    check_badness_transfer,
    check_minimality,
    check_nesting,
    check_selection_contract,
    family,
    mbs_run,
    selection,
    zero_witness,
    zero_ypair,
)
from .ramsey import (
    DEFAULT_SCAN_CAP,
    PigeonholeRealizer,
    RamseyRealizer,
    pigeonhole_realizer,
    pigeonhole_realizer_scored,
)
from .realizer import (
    BoundReport,
    Budgets,
    HigmanInstance,
    gamma,
    omega_phi_psi,
    phi_counterexample,
    splice,
)
from .selftest import (
    SelftestCaps,
    SelftestReport,
    random_instance_spec,
    random_preorder,
    random_table_game,
    random_word,
    run_selftest,
)
from .streams import (
    Stream,
    YPair,
    canonical_extension,
    constant_stream,
    initial_segment,
    periodic_stream,
    prepend,
    psmin,
    smin,
)
from .wqo import (
    EMPTY_WORD,
    GoodPair,
    Preorder,
    Word,
    diagonals,
    find_good_pair,
    ft_lt,
    theta,
    validate_preorder,
    word_embeds,
)

__version__ = "0.1.0"
