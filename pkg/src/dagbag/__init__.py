"""Bootstrap-aggregated structure learning of Gaussian DAG models.

Pipeline: simulate (or load) data, hill-climb DAGs on bootstrap resamples,
aggregate the ensemble by minimizing an average structural Hamming distance,
and evaluate against ground truth on skeleton edges, v-structures and moral
edges.
"""

__version__ = "0.1.0"

from .aggregate import (
    AggregationResult,
    SelectionTable,
    aggregate,
    aggregation_score,
    aggregation_score_exact,
    gshd_distance,
    selection_frequencies,
    shd_aggregate,
)
from .bootstrap import (
    Ensemble,
    EnsembleProvenance,
    bootstrap_resample,
    learn_ensemble,
    read_ensemble,
    write_ensemble,
)
from .data import Dataset, dataset_from_values, load_table, standardize_columns, write_table
from .errors import (
    CycleError,
    DagbagError,
    DataFormatError,
    DegenerateResample,
    DimensionMismatch,
    DuplicateEdge,
    EnsembleFitError,
    InfeasibleConstraints,
    MissingEdge,
    SingularDesign,
    TooManyEdges,
)
from .evaluate import EvalReport, evaluate, learning_curve, write_curve, write_report
from .graph import (
    Dag,
    OpKind,
    Operation,
    SkeletonGraph,
    VStructure,
    ancestors,
    apply_operation,
    descendants,
    is_acyclic,
    is_i_equivalent,
    moral_graph,
    read_edgelist,
    skeleton,
    v_structures,
    write_edgelist,
)
from .scores import (
    GramCache,
    ScoreKind,
    neighborhood_rss,
    neighborhood_score,
    penalty_per_edge,
    total_score,
)
from .search import (
    Constraints,
    DeltaCache,
    SearchTrace,
    StopReason,
    TraceStep,
    hill_climb,
    propagate_acyclic_status,
    random_restart,
    refresh_deltas,
    stale_operations,
    touched_neighborhoods,
    write_trace,
)
from .simulate import (
    Noise,
    NodeRecord,
    SimConfig,
    SimResult,
    generate_random_dag,
    simulate,
    write_sim_record,
)

__all__ = [name for name in dir() if not name.startswith("_")]
