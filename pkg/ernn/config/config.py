"""Module implementing the experiment configuration."""
import math
import typing
from enum import Enum

from ernn.autodiff.activations import ActivationKinds
from ernn.cells.params import CellKinds, ModelSpec
from ernn.equilibrium.analysis import AnalysisSpec, UInit, WInit
from ernn.helpers.data_type import (
    BooleanDataType,
    DataType,
    FloatDataType,
    IntegerDataType,
    StringDataType,
    enum_data_type,
)
from ernn.helpers.exceptions import (
    ConfigFileNotExistsException,
    InvalidConfigStructureException,
    InvalidConfigValueException,
    InvalidDataValueToConvertException,
    MalformedFileException,
    NotPlainDictionaryException,
    RejectedInputException,
    UnknownConfigKeyException,
    YAMLFileNotExistsException,
)
from ernn.helpers.type_hints import FlatConfig
from ernn.helpers.yaml_parser import load_from_file
from ernn.logger import get_logger
from ernn.tasks.dataset import TaskKinds, TaskSpec
from ernn.train.config import TrainConfig

logger = get_logger()

Validator = typing.Callable[[typing.Any], bool]


class StartKinds(Enum):
    """Enumeration for the initial iterates of the fixed-point analysis."""

    ZERO = "zero"
    ORACLE = "oracle"


class PointKinds(Enum):
    """Enumeration for the sources of the stability evaluation points."""

    DATASET = "dataset"
    GAUSSIAN = "gaussian"


def positive(value: typing.Any) -> bool:
    """Check a number to be strictly positive and finite.

    Args:
        value (typing.Any): Number

    Returns:
        bool: Result
    """
    return bool(math.isfinite(value) and value > 0)


def non_negative(value: typing.Any) -> bool:
    """Check a number to be positive or zero, and finite.

    Args:
        value (typing.Any): Number

    Returns:
        bool: Result
    """
    return bool(math.isfinite(value) and value >= 0)


def finite(value: typing.Any) -> bool:
    """Check a number to be finite.

    Args:
        value (typing.Any): Number

    Returns:
        bool: Result
    """
    return bool(math.isfinite(value))


def fraction(value: typing.Any) -> bool:
    """Check a number to lie strictly between 0 and 1.

    Args:
        value (typing.Any): Number

    Returns:
        bool: Result
    """
    return bool(0 < value < 1)


class ConfigurationKey:
    """Class for storing data about each key in the configuration."""

    key: str
    data_type: typing.Type[DataType]
    default_value: typing.Any
    validator: typing.Optional[Validator]
    optional: bool

    def __init__(
        self,
        key: str,
        data_type: typing.Type[DataType],
        default_value: typing.Any = None,
        validator: typing.Optional[Validator] = None,
        optional: bool = False,
    ) -> None:
        """Initialize the instance.

        Args:
            key (str): Key path in the configuration file
            data_type (typing.Type[DataType]): Value type
            default_value (typing.Any): Default value when the key is not
                specified. Defaults to None.
            validator (Validator, optional): Range check of the value.
                Defaults to None.
            optional (bool): Whether the key may stay unset. Defaults to
                False.
        """
        self.key = key
        self.data_type = data_type
        self.default_value = default_value
        self.validator = validator
        self.optional = optional


class ExperimentConfig:
    """Class storing the validated settings of one command run."""

    configuration: FlatConfig

    class ConfigurationKeys(Enum):
        """Enumeration for all the keys from the configuration file."""

        MODEL_KIND = ConfigurationKey(
            "model.kind", enum_data_type(CellKinds), CellKinds.ERNN
        )
        MODEL_HIDDEN_DIM = ConfigurationKey(
            "model.hidden_dim", IntegerDataType, 16, positive
        )
        MODEL_RANK = ConfigurationKey(
            "model.rank", IntegerDataType, 4, positive
        )
        MODEL_K_STEPS = ConfigurationKey(
            "model.k_steps", IntegerDataType, 3, positive
        )
        MODEL_ACTIVATION = ConfigurationKey(
            "model.activation",
            enum_data_type(ActivationKinds),
            ActivationKinds.RELU,
        )
        MODEL_GAMMA = ConfigurationKey(
            "model.gamma", FloatDataType, 1.0, positive
        )
        MODEL_ETA_INIT = ConfigurationKey(
            "model.eta_init", FloatDataType, 1e-2, finite
        )
        MODEL_PER_STEP_ETA = ConfigurationKey(
            "model.per_step_eta", BooleanDataType, False
        )
        MODEL_PROJECTION = ConfigurationKey(
            "model.projection", BooleanDataType, True
        )
        TRAIN_LR = ConfigurationKey("train.lr", FloatDataType, 1e-2, positive)
        TRAIN_BATCH_SIZE = ConfigurationKey(
            "train.batch_size", IntegerDataType, 128, positive
        )
        TRAIN_EPOCHS = ConfigurationKey(
            "train.epochs", IntegerDataType, 30, non_negative
        )
        TRAIN_LR_HALVE_EVERY = ConfigurationKey(
            "train.lr_halve_every", IntegerDataType, 10, positive
        )
        TRAIN_WALL_CLOCK = ConfigurationKey(
            "train.wall_clock", BooleanDataType, False
        )
        TRAIN_BPTT_PROBE = ConfigurationKey(
            "train.bptt_probe", BooleanDataType, True
        )
        DATA_TASK = ConfigurationKey(
            "data.task", enum_data_type(TaskKinds), TaskKinds.NOISE_PADDED
        )
        DATA_SEQ_LEN = ConfigurationKey(
            "data.seq_len", IntegerDataType, 200, positive
        )
        DATA_INPUT_DIM = ConfigurationKey(
            "data.input_dim", IntegerDataType, 4, positive
        )
        DATA_CLASSES = ConfigurationKey(
            "data.classes", IntegerDataType, 2, lambda value: value >= 2
        )
        DATA_INFORMATIVE_STEPS = ConfigurationKey(
            "data.informative_steps", IntegerDataType, 10, positive
        )
        DATA_NOISE_STD = ConfigurationKey(
            "data.noise_std", FloatDataType, 1.0, non_negative
        )
        DATA_CSV_PATH = ConfigurationKey("data.csv_path", StringDataType, "")
        DATA_CSV_HEADER = ConfigurationKey(
            "data.csv_header", BooleanDataType, False
        )
        DATA_TRAIN_SIZE = ConfigurationKey(
            "data.train_size", IntegerDataType, 2000, positive
        )
        DATA_TEST_SIZE = ConfigurationKey(
            "data.test_size", IntegerDataType, 1000, positive
        )
        DATA_TRAIN_FRACTION = ConfigurationKey(
            "data.train_fraction", FloatDataType, 0.8, fraction
        )
        DATA_RANDOM_OFFSET = ConfigurationKey(
            "data.random_offset", BooleanDataType, False
        )
        DATA_WALK_VARIANCE = ConfigurationKey(
            "data.walk_variance", FloatDataType, 10.0, non_negative
        )
        ANALYSIS_ACTIVATION = ConfigurationKey(
            "analysis.activation",
            enum_data_type(ActivationKinds),
            ActivationKinds.TANH,
        )
        ANALYSIS_ETA = ConfigurationKey(
            "analysis.eta", FloatDataType, 1.0, non_negative
        )
        ANALYSIS_U_NORM = ConfigurationKey(
            "analysis.u_norm", FloatDataType, 0.5, non_negative
        )
        ANALYSIS_U_INIT = ConfigurationKey(
            "analysis.u_init", enum_data_type(UInit), UInit.RANDOM
        )
        ANALYSIS_W_INIT = ConfigurationKey(
            "analysis.w_init", enum_data_type(WInit), WInit.RANDOM
        )
        ANALYSIS_BIAS = ConfigurationKey(
            "analysis.bias", FloatDataType, 0.0, finite
        )
        ANALYSIS_INPUT_VALUE = ConfigurationKey(
            "analysis.input_value", FloatDataType, None, finite, optional=True
        )
        ANALYSIS_START = ConfigurationKey(
            "analysis.start", enum_data_type(StartKinds), StartKinds.ZERO
        )
        ANALYSIS_POINTS = ConfigurationKey(
            "analysis.points", enum_data_type(PointKinds), PointKinds.DATASET
        )
        ANALYSIS_SAMPLES = ConfigurationKey(
            "analysis.samples", IntegerDataType, 100, positive
        )
        ANALYSIS_ITERATIONS = ConfigurationKey(
            "analysis.iterations", IntegerDataType, 10, positive
        )
        SEED = ConfigurationKey("seed", IntegerDataType, 0, non_negative)

    def __init__(
        self,
        filename: typing.Optional[str] = None,
        overrides: typing.Optional[FlatConfig] = None,
    ) -> None:
        """Load and validate a configuration.

        Args:
            filename (str, optional): Configuration file. Defaults to None,
                case in which every key takes its default value.
            overrides (FlatConfig, optional): Values taking precedence over
                the file, such as the seed given on the command line

        Raises:
            ConfigFileNotExistsException: The file does not exist.
            InvalidConfigStructureException: The file is not a flat mapping.
            UnknownConfigKeyException: A key is not known.
            InvalidConfigValueException: A value has a wrong type or range.
        """
        loaded_config: FlatConfig = {}
        if filename:
            try:
                loaded_config = load_from_file(filename)
            except YAMLFileNotExistsException as exception:
                raise ConfigFileNotExistsException(filename) from exception
            except (
                NotPlainDictionaryException,
                MalformedFileException,
            ) as exception:
                raise InvalidConfigStructureException(filename) from exception
            logger.debug("The configuration %s was loaded.", filename)
        loaded_config.update(overrides or {})

        known_keys = {key.value.key for key in self.ConfigurationKeys}
        for key in loaded_config:
            if key not in known_keys:
                raise UnknownConfigKeyException(key)

        self.configuration = {}
        for key in self.ConfigurationKeys:
            config_key: ConfigurationKey = key.value
            value = loaded_config.get(
                config_key.key, config_key.default_value
            )
            self.configuration[config_key.key] = self.__validate(
                config_key, value
            )

    @staticmethod
    def __validate(
        config_key: ConfigurationKey, value: typing.Any
    ) -> typing.Any:
        key_type = config_key.data_type
        if value is None and config_key.optional:
            return None

        # If a value is specified, try to convert it to its real type
        if not key_type.validate_data(value):
            try:
                value = key_type.convert_string(value)
            except InvalidDataValueToConvertException as exception:
                raise InvalidConfigValueException(
                    f"{config_key.key} = {value!r}"
                ) from exception
        value = key_type.normalize(value)

        if config_key.validator and not config_key.validator(value):
            raise InvalidConfigValueException(f"{config_key.key} = {value!r}")

        return value

    def __getitem__(self, key: str) -> typing.Any:
        """Get the value of a key path.

        Args:
            key (str): Key path, such as train.lr

        Raises:
            UnknownConfigKeyException: The key is not known.

        Returns:
            typing.Any: Value
        """
        if key not in self.configuration:
            raise UnknownConfigKeyException(key)

        return self.configuration[key]

    @property
    def seed(self) -> int:
        """Seed of every generator of the run."""
        return typing.cast(int, self.configuration["seed"])

    def model_spec(self) -> ModelSpec:
        """Build the model structure.

        Returns:
            ModelSpec: Structure
        """
        return ModelSpec(
            kind=self["model.kind"],
            activation=self["model.activation"],
            hidden_dim=self["model.hidden_dim"],
            input_dim=self["data.input_dim"],
            classes=self["data.classes"],
            rank=self["model.rank"],
            k_steps=self["model.k_steps"],
            gamma=self["model.gamma"],
            eta_init=self["model.eta_init"],
            projection=self["model.projection"],
            per_step_eta=self["model.per_step_eta"],
            seq_len=self["data.seq_len"],
        )

    def task_spec(self) -> TaskSpec:
        """Build the task description.

        Raises:
            InvalidConfigValueException: The task settings are inconsistent.

        Returns:
            TaskSpec: Task
        """
        try:
            return TaskSpec(
                kind=self["data.task"],
                seq_len=self["data.seq_len"],
                input_dim=self["data.input_dim"],
                classes=self["data.classes"],
                informative_steps=self["data.informative_steps"],
                noise_std=self["data.noise_std"],
                seed=self.seed,
                random_offset=self["data.random_offset"],
                walk_variance=self["data.walk_variance"],
                csv_path=self["data.csv_path"],
                csv_header=self["data.csv_header"],
                train_size=self["data.train_size"],
                test_size=self["data.test_size"],
                train_fraction=self["data.train_fraction"],
            )
        except RejectedInputException as exception:
            raise InvalidConfigValueException(
                f"data.{exception.details}"
            ) from exception

    def train_config(self) -> TrainConfig:
        """Build the training settings.

        Returns:
            TrainConfig: Settings
        """
        return TrainConfig(
            model=self.model_spec(),
            task=self.task_spec(),
            lr=self["train.lr"],
            batch_size=self["train.batch_size"],
            epochs=self["train.epochs"],
            lr_halve_every=self["train.lr_halve_every"],
            seed=self.seed,
            wall_clock=self["train.wall_clock"],
            bptt_probe=self["train.bptt_probe"],
        )

    def analysis_spec(
        self, kind: CellKinds = CellKinds.ERNN
    ) -> AnalysisSpec:
        """Build the settings of an analysis cell.

        Args:
            kind (CellKinds): Cell kind. Defaults to ERNN.

        Returns:
            AnalysisSpec: Settings
        """
        return AnalysisSpec(
            kind=kind,
            activation=self["analysis.activation"],
            hidden_dim=self["model.hidden_dim"],
            input_dim=self["data.input_dim"],
            gamma=self["model.gamma"],
            eta=self["analysis.eta"],
            iterations=self["analysis.iterations"],
            u_norm=self["analysis.u_norm"],
            u_init=self["analysis.u_init"],
            w_init=self["analysis.w_init"],
            bias=self["analysis.bias"],
            input_value=self["analysis.input_value"],
            projection=self["model.projection"],
        )
