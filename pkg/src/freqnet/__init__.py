"""Image classification through trainable radial frequency-domain filters.

The pipeline slices an image into a quadtree block pyramid, takes the
centered 2D DFT magnitude of every block, pools spectrum cells into radial
rings, multiplies each ring by a trainable non-negative weight, and feeds
the stacked ring coefficients to a small fully connected softmax
classifier. Everything trains end-to-end with plain backpropagation.
"""

from .config import RunConfig, config_from_dict, config_from_json_file, seed_streams
from .dataset import (
    LabeledIndex,
    load_image,
    resize,
    scan_dataset,
    split_dataset,
)
from .errors import (
    CheckpointError,
    ConfigError,
    DatasetError,
    DecodeError,
    EmptyDatasetError,
    FreqNetError,
)
from .freq_filter import (
    FrequencyFilterBank,
    clamp_nonnegative,
    filter_backward,
    filter_forward,
    init_filter_bank,
    ring_sums,
)
from .mlp import (
    ForwardTrace,
    MlpGrads,
    MlpParams,
    backward,
    cross_entropy,
    forward,
    init_xavier,
    softmax,
)
from .model import FreqNetModel, build_model, layer_sizes_for, load_model, save_model
from .pooling import (
    DISCARDED,
    RingIndexMap,
    build_ring_map,
    feature_length,
    ring_counts_per_block,
)
from .slicing import BlockPyramid, block_count, pyramid_block_sides, slice_pyramid
from .spectral import dft2d, dft2d_naive, magnitude_centered
from .synth import generate_dataset, make_grating, parse_class_spec, save_pgm
from .trainer import (
    EpochStats,
    MomentumState,
    TrainReport,
    TrainResult,
    effective_lr,
    evaluate,
    extract_features,
    init_momentum,
    predict_proba,
    sgd_step,
    train,
    write_confusion_csv,
)

__version__ = "0.1.0"
