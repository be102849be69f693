"""Module defining exceptions."""

import typing


class ERNNException(Exception):
    """Class defining a generic ERNN exception."""

    EXCEPTIONS_SUFFIX = "Exception"

    def __init_subclass__(
        cls: typing.Type["ERNNException"],
    ) -> None:
        """Verify if the child name has a standard suffix.

        Raises:
            ERNNException: The name does not ends with the standard suffix.
        """
        super().__init_subclass__()

        if not cls.__name__.endswith(cls.EXCEPTIONS_SUFFIX):
            raise ERNNException(
                message=(
                    "The exception name needs to end with the suffix"
                    f' "{cls.EXCEPTIONS_SUFFIX}".'
                )
            )

    def __init__(
        self, details: typing.Optional[str] = None, message: str = None
    ) -> None:
        """Initialize the ERNNException instance.

        The message is implicitly taken from class' docstring. The details,
        if any, are appended to it.

        Args:
            details (str): Context of the failure, such as the offending key,
                node or row. Defaults to None.
            message (str): Alternative way to specify the message
        """
        if self.__doc__ and self.__doc__ != ERNNException.__doc__:
            message = self.__doc__
        elif message is None:
            message = details or ""
            details = None

        message = message.replace("\n", "")
        if details:
            message = f"{message.rstrip('.')}: {details}"

        self.details = details
        super().__init__(message)


class RejectedInputException(ERNNException):
    """The provided input violates the operation's preconditions."""


class DimensionMismatchException(RejectedInputException):
    """The dimensions of the operands do not match."""


class NumericException(ERNNException):
    """A numerical computation failed."""


class SingularMatrixException(NumericException):
    """The matrix is singular to working precision."""


class NumericOverflowException(NumericException):
    """A computed value is not finite."""


class NonConvergenceException(NumericException):
    """The iterative method did not converge within its budget."""

    def __init__(
        self,
        details: typing.Optional[str] = None,
        partial_result: typing.Any = None,
    ) -> None:
        """Initialize the instance.

        Args:
            details (str): Context of the failure. Defaults to None.
            partial_result (typing.Any): Best result reached before giving
                up. Defaults to None.
        """
        super().__init__(details)

        self.partial_result = partial_result


class TrainingDivergedException(NumericOverflowException):
    """The training run produced non-finite values and was aborted."""

    def __init__(
        self,
        details: typing.Optional[str] = None,
        checkpoint: typing.Any = None,
    ) -> None:
        """Initialize the instance.

        Args:
            details (str): Context of the failure. Defaults to None.
            checkpoint (typing.Any): Last checkpoint with finite values.
                Defaults to None.
        """
        super().__init__(details)

        self.checkpoint = checkpoint


class TapeStateException(ERNNException):
    """The tape is not in the state required by the operation."""


class ParserException(ERNNException):
    """The parsing process failed."""


class CSVParseException(ParserException):
    """The CSV sequence file is invalid."""


class MalformedFileException(ParserException):
    """The file is truncated or is not a valid document."""


class CheckpointException(ERNNException):
    """The checkpoint could not be loaded."""


class SchemaVersionException(CheckpointException):
    """The checkpoint schema version is not supported."""


class ShapeMismatchException(CheckpointException):
    """An array stored in the checkpoint has an unexpected shape."""


class DataTypeException(ERNNException):
    """The data type handling process failed."""


class EnumTypeNotSetException(DataTypeException):
    """The child type was not set in the data type using enumerations."""


class InvalidDataValueToConvertException(DataTypeException):
    """The provided value is not a stringified version of the set type."""


class InvalidBooleanValueException(DataTypeException):
    """The value does not correspond to any boolean value."""


class PlainYAMLException(ERNNException):
    """The plain YAML handling failed."""


class YAMLFileNotExistsException(PlainYAMLException):
    """The provided YAML file does not exists."""


class NotPlainDictionaryException(PlainYAMLException):
    """The dictionary is not a plain YAML representation."""


class ConfigException(ERNNException):
    """An error occurred when processing the experiment configuration."""


class ConfigFileNotExistsException(ConfigException):
    """The configuration file does not exist."""


class InvalidConfigStructureException(ConfigException):
    """The configuration needs to be a flat mapping of key paths to values."""


class UnknownConfigKeyException(ConfigException):
    """The configuration contains an unknown key."""


class InvalidConfigValueException(ConfigException):
    """A key in the configuration has an invalid value."""


class FilesException(ERNNException):
    """An error occurred when processing a file."""


class FileNotExistsException(FilesException):
    """The provided file does not exists."""


class ImproperPermissionsException(FilesException):
    """The permissions are not elevated enough to manipulate the file."""


class CLIException(ERNNException):
    """An error occurred in the CLI module."""


class CheckFailedException(CLIException):
    """A verification check failed."""
