"""Package loading the experiment configurations."""

from ernn.config.config import (
    ConfigurationKey,
    ExperimentConfig,
    PointKinds,
    StartKinds,
)
