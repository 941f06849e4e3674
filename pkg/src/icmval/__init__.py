"""Tournament equity models and their statistical validation.

Exact and simulated chip-model equity, a rank-order baseline, dataset
ingestion into validated snapshots, and the paired-error and residual
experiments that score the model against observed finishes.
"""

from .baseline import baseline_equity
from .exact import (
    ExactConfig,
    ExactLimitError,
    finish_probabilities,
    finish_probabilities_naive,
    icm_equity,
)
from .ingest import (
    IngestError,
    IngestReport,
    RawEvent,
    build_snapshots,
    dedupe_events,
    load_events,
    run_ingest,
)
from .mc import (
    McConfig,
    finish_probabilities_mc,
    icm_equity_mc,
    sample_finish_order,
    simulate_prize_draws,
)
from .model import (
    EquityVector,
    FinishMatrix,
    ModelError,
    PayoutLadder,
    SnapshotRecord,
    StackDistribution,
    normalize_payouts,
    normalize_stacks,
)
from .stats import (
    PairedErrorReport,
    StratumReport,
    ZeroVarianceError,
    experiment1,
    experiment2,
    one_sample_t_two_sided,
    paired_t_one_sided,
    stratify_quartiles,
)
from .synthetic import generate_events, generate_snapshots
from .tdist import student_t_sf

__version__ = "0.1.0"

__all__ = [
    "EquityVector",
    "ExactConfig",
    "ExactLimitError",
    "FinishMatrix",
    "IngestError",
    "IngestReport",
    "McConfig",
    "ModelError",
    "PairedErrorReport",
    "PayoutLadder",
    "RawEvent",
    "SnapshotRecord",
    "StackDistribution",
    "StratumReport",
    "ZeroVarianceError",
    "baseline_equity",
    "build_snapshots",
    "dedupe_events",
    "experiment1",
    "experiment2",
    "finish_probabilities",
    "finish_probabilities_mc",
    "finish_probabilities_naive",
    "generate_events",
    "generate_snapshots",
    "icm_equity",
    "icm_equity_mc",
    "load_events",
    "normalize_payouts",
    "normalize_stacks",
    "one_sample_t_two_sided",
    "paired_t_one_sided",
    "run_ingest",
    "sample_finish_order",
    "simulate_prize_draws",
    "stratify_quartiles",
    "student_t_sf",
]
