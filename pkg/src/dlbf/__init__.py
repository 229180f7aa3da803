"""Deletable Bloom filter: data structure, analytical model and simulation harness."""

from . import analysis
from .analysis import (
    ModelParams,
    ModelPoint,
    cell_probabilities,
    deletability_curve,
    deletability_probability,
    fpr_dlbf,
    fpr_sbf,
    model_point,
)
from .bitarray import BitArray
from .errors import (
    BadMagicError,
    ConfigurationError,
    DimensionMismatchError,
    FilterFormatError,
    InvalidParamsError,
    RegionCountWarning,
    TruncatedPayloadError,
    UnknownHashSchemeError,
    VersionMismatchError,
)
from .filters import DeletableBloomFilter, FilterParams, RemoveOutcome, StandardBloomFilter, region_of
from .hashing import index_set
from .oracle import OracleModel, reference_oracle
from .serialization import deserialize, serialize
from .simulation import (
    AggregateResult,
    ExperimentConfig,
    TrialResult,
    generate_elements,
    run_experiment,
    run_sbf_baseline,
    run_trial,
)

__version__ = "0.1.0"
