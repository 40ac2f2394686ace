"""Texture attributes and content-based retrieval for seismic-style images."""

from .clbp import ClbpConfig, clbp_codes, clbp_descriptor, clbp_histogram
from .curvelet import CurveletCoeffs, forward, inverse, num_orientations, num_scales
from .descriptor import (
    BinLayout,
    DescriptorSet,
    Histogram,
    aggregate_distance,
    coeff_histogram,
    kld,
    squared_chord,
    to_similarity,
)
from .imagecore import load_image, load_manifest, normalize
from .lri import LriConfig, lri_descriptor, lri_indices
from .retrieval import (
    RankedList,
    auc,
    average_precision,
    bench_pair_time,
    compute_metrics,
    mean_average_precision,
    precision_at_n,
    retrieval_accuracy,
    run_retrieval,
)
# the seisim function itself is not re-exported to keep the submodule
# accessible as seistex.seisim
from .seisim import discontinuity_map, dm_similarity, stsim1_image, stsim1_pair, subband_stats
from .steerable import PyramidDecomposition, SteerableConfig, build_pyramid, reconstruct
from .synthgen import SynthSpec, generate, generate_dataset

__version__ = "0.1.0"
