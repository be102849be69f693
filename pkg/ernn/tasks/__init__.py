"""Package with the sequence tasks and their datasets."""

from ernn.tasks.csv_io import load_csv_sequences, save_csv_sequences
from ernn.tasks.dataset import (
    NormalizationStats,
    SequenceDataset,
    TaskKinds,
    TaskSpec,
    split_normalize,
)
from ernn.tasks.generators import gen_noise_padded, gen_random_walk
from ernn.tasks.loader import load_task, sample_batch
