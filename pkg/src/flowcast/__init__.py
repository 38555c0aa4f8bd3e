"""Analytics for rolling-horizon collaborative forecast data.

Core pieces: dialogue-panel ingestion, Box-Cox/KS preprocessing, a
graphical lasso solver, the expanding-window partial-correlation network,
information decomposition, continuum canonical correlation, and synthetic
panels with planted structure for recovery testing.
"""

from .ccc import CccSolution, alpha_sweep, cca_oracle, ccc_objective, ccc_solve, pca_oracle, pls_oracle
from .decompose import (
    EventDecomposition,
    InformationFlowNetwork,
    decompose_event,
    decompose_network,
    markov_score,
)
from .ewggm import DirectedEdgeSet, InformationFlowMatrix, expanding_window, select_edges
from .glasso import (
    PrecisionMatrix,
    empirical_covariance,
    graphical_lasso,
    kkt_certificate,
    partial_correlation_via_regression,
    partial_correlations,
)
from .panel import (
    DialoguePanel,
    EventId,
    EventKind,
    EventSequence,
    event_sequence,
    load_csv,
    loads_csv,
    observation_matrix,
    save_csv,
)
from .preprocess import (
    TransformConfig,
    apply_box_cox,
    box_cox,
    box_cox_vector,
    ks_normality,
    normality_report,
    standardize_columns,
    unstandardize_columns,
)
from .synth import PlantedEdge, SyntheticSpec, generate, markov_spec, recovery_report

__version__ = "0.1.0"

__all__ = [
    "CccSolution",
    "DialoguePanel",
    "DirectedEdgeSet",
    "EventDecomposition",
    "EventId",
    "EventKind",
    "EventSequence",
    "InformationFlowMatrix",
    "InformationFlowNetwork",
    "PlantedEdge",
    "PrecisionMatrix",
    "SyntheticSpec",
    "TransformConfig",
    "alpha_sweep",
    "apply_box_cox",
    "box_cox",
    "box_cox_vector",
    "cca_oracle",
    "ccc_objective",
    "ccc_solve",
    "decompose_event",
    "decompose_network",
    "empirical_covariance",
    "event_sequence",
    "expanding_window",
    "generate",
    "graphical_lasso",
    "kkt_certificate",
    "ks_normality",
    "load_csv",
    "loads_csv",
    "markov_score",
    "markov_spec",
    "normality_report",
    "observation_matrix",
    "partial_correlation_via_regression",
    "partial_correlations",
    "pca_oracle",
    "pls_oracle",
    "recovery_report",
    "save_csv",
    "select_edges",
    "standardize_columns",
    "unstandardize_columns",
]
