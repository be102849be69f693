"""Package training the recurrent classifiers."""

from ernn.train.checkpoint import (
    Checkpoint,
    load_checkpoint,
    save_checkpoint,
)
from ernn.train.config import TrainConfig
from ernn.train.loss import accuracy, cross_entropy, mean_cross_entropy
from ernn.train.metrics import METRICS_HEADER, EpochMetrics
from ernn.train.optimizer import AdamState, adam_step, lr_schedule
from ernn.train.trainer import Evaluation, evaluate, evaluate_model, fit
