"""Module for storing wrapped data types.

The configuration values arrive either already typed, from YAML scalars, or as
strings, from quoted YAML scalars. Each data type knows how to check the former
and parse the latter.
"""
import typing
from enum import Enum

from typeguard import check_type

from ernn.helpers.exceptions import (
    EnumTypeNotSetException,
    InvalidBooleanValueException,
    InvalidDataValueToConvertException,
)

BOOLEAN_SPELLINGS = {"true": True, "false": False}


def str_to_bool(string: str) -> bool:
    """Convert a string into a boolean.

    Args:
        string (str): String, case-insensitive

    Raises:
        InvalidBooleanValueException: The specified boolean value is invalid.

    Returns:
        bool: Boolean
    """
    value = BOOLEAN_SPELLINGS.get(string.lower())
    if value is None:
        raise InvalidBooleanValueException(string)

    return value


class InnerDataType(Enum):
    """Enumeration for possible types for a piece of data."""

    BOOLEAN = "boolean"
    INTEGER = "integer"
    FLOAT = "float"
    STRING = "string"
    ENUM = "enum"


class DataType:
    """Class for wrapping the data types.

    The subclasses are never instantiated. They set the inner type, the
    annotation checked by typeguard and, when the default identity does not
    fit, the parser of stringified values.
    """

    INNER_TYPE: InnerDataType
    PYTHON_ANNOTATION: typing.Any
    BASE_ENUM: typing.Type[Enum]
    ACCEPTS_BOOLEANS: bool = True

    def __init_subclass__(cls: typing.Type["DataType"]) -> None:
        """Check the child class after definition.

        Raises:
            EnumTypeNotSetException: The enumeration type is not provided.
        """
        super().__init_subclass__()

        if cls.INNER_TYPE == InnerDataType.ENUM and not getattr(
            cls, "BASE_ENUM", None
        ):
            raise EnumTypeNotSetException(cls.__name__)

    @classmethod
    def parse(cls: typing.Type["DataType"], string: str) -> typing.Any:
        """Parse a string, raising the parser's own errors.

        Args:
            string (str): String

        Returns:
            typing.Any: Parsed value
        """
        return string

    @classmethod
    def convert_string(
        cls: typing.Type["DataType"], string: str
    ) -> typing.Union[bool, int, float, str, Enum]:
        """Convert a string into its original representation.

        Args:
            string (str): Stringified data value

        Raises:
            InvalidDataValueToConvertException: The provided value is invalid.

        Returns:
            typing.Union[bool, int, float, str, Enum]: Converted value
        """
        if not isinstance(string, str):
            raise InvalidDataValueToConvertException(repr(string))

        try:
            return cls.parse(string)
        except (ValueError, InvalidBooleanValueException) as exception:
            raise InvalidDataValueToConvertException(
                f"{string!r} as {cls.INNER_TYPE.value}"
            ) from exception

    @classmethod
    def validate_data(cls: typing.Type["DataType"], data: typing.Any) -> bool:
        """Validate if a piece of data is of a type.

        Args:
            data (typing.Any): Verified data

        Returns:
            bool: Boolean indicating if the data corresponds to the set type
        """
        if isinstance(data, bool) and not cls.ACCEPTS_BOOLEANS:
            return False

        try:
            check_type("value", data, cls.PYTHON_ANNOTATION)
        except TypeError:
            return False

        return True

    @classmethod
    def normalize(
        cls: typing.Type["DataType"], data: typing.Any
    ) -> typing.Any:
        """Bring an already valid value to its canonical Python type.

        Args:
            data (typing.Any): Valid value

        Returns:
            typing.Any: Canonical value
        """
        return data


class BooleanDataType(DataType):
    """Data type for boolean."""

    INNER_TYPE = InnerDataType.BOOLEAN
    PYTHON_ANNOTATION = bool

    @classmethod
    def parse(cls: typing.Type[DataType], string: str) -> bool:
        """Parse 'true' or 'false', in any case.

        Args:
            string (str): String

        Returns:
            bool: Boolean
        """
        return str_to_bool(string)


class IntegerDataType(DataType):
    """Data type for integer."""

    INNER_TYPE = InnerDataType.INTEGER
    PYTHON_ANNOTATION = int
    ACCEPTS_BOOLEANS = False

    @classmethod
    def parse(cls: typing.Type[DataType], string: str) -> int:
        """Parse a decimal integer.

        Args:
            string (str): String

        Returns:
            int: Integer
        """
        return int(string)


class FloatDataType(DataType):
    """Data type for real numbers, integers included."""

    INNER_TYPE = InnerDataType.FLOAT
    PYTHON_ANNOTATION = typing.Union[int, float]
    ACCEPTS_BOOLEANS = False

    @classmethod
    def parse(cls: typing.Type[DataType], string: str) -> float:
        """Parse a real, scientific notation included.

        Args:
            string (str): String

        Returns:
            float: Real
        """
        return float(string)

    @classmethod
    def normalize(cls: typing.Type[DataType], data: typing.Any) -> float:
        """Turn integers into reals.

        Args:
            data (typing.Any): Valid value

        Returns:
            float: Real
        """
        return float(data)


class StringDataType(DataType):
    """Data type for strings."""

    INNER_TYPE = InnerDataType.STRING
    PYTHON_ANNOTATION = str


class EnumDataType(DataType):
    """Data type for enumerations, subclassed once per enumeration."""

    INNER_TYPE = InnerDataType.ENUM
    PYTHON_ANNOTATION = Enum
    BASE_ENUM = Enum

    @classmethod
    def parse(cls: typing.Type[DataType], string: str) -> Enum:
        """Look the value up in the enumeration.

        Args:
            string (str): Value of a member

        Returns:
            Enum: Member
        """
        return cls.BASE_ENUM(string)

    @classmethod
    def validate_data(cls: typing.Type[DataType], data: typing.Any) -> bool:
        """Check the membership in the enumeration.

        Args:
            data (typing.Any): Verified data

        Returns:
            bool: Boolean indicating if the data is a member
        """
        return isinstance(data, cls.BASE_ENUM)


def enum_data_type(base_enum: typing.Type[Enum]) -> typing.Type[DataType]:
    """Create a data type accepting the values of an enumeration.

    Args:
        base_enum (typing.Type[Enum]): Enumeration

    Returns:
        typing.Type[DataType]: Data type class
    """
    return type(
        f"{base_enum.__name__}DataType",
        (EnumDataType,),
        {"BASE_ENUM": base_enum, "PYTHON_ANNOTATION": base_enum},
    )
