"""Module evaluating the classification losses and accuracies."""

import numpy as np

from ernn.autodiff.rules import softmax_cross_entropy
from ernn.helpers.type_hints import Array


def cross_entropy(logits: Array, label: int) -> float:
    """Compute -log softmax(logits)[label] with a stable log-sum-exp.

    Args:
        logits (Array): C logits
        label (int): Class index

    Raises:
        RejectedInputException: The label is not a class index.

    Returns:
        float: Loss
    """
    losses, _ = softmax_cross_entropy(
        np.asarray(logits, dtype=np.float64)[np.newaxis],
        np.array([label]),
    )

    return float(losses[0])


def mean_cross_entropy(logits: Array, labels: Array) -> float:
    """Compute the mean loss of a batch.

    Args:
        logits (Array): B×C logits
        labels (Array): B class indices

    Returns:
        float: Mean loss
    """
    losses, _ = softmax_cross_entropy(logits, labels)

    return float(np.mean(losses))


def accuracy(logits: Array, labels: Array) -> float:
    """Compute the rate of arg-max predictions matching the labels.

    Args:
        logits (Array): B×C logits
        labels (Array): B class indices

    Returns:
        float: Accuracy in [0, 1]
    """
    if len(labels) == 0:
        return 0.0

    return float(np.mean(np.argmax(logits, axis=-1) == labels))
