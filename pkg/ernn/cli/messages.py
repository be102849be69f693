"""Module for storing the messages printed in the CLI."""

import dataclasses
import typing
from enum import Enum

from rich.emoji import Emoji
from rich.text import Text

from ernn.helpers.exceptions import CLIException


class MessageTypes(Enum):
    """Types of messages."""

    OUTPUT = "output"
    WARNING = "warning"
    ERROR = "error"
    SUCCESS = "success"


@dataclasses.dataclass(frozen=True)
class MessageStyle:
    """Decoration shared by the messages of one type."""

    severity: int
    emoji_id: str
    text_style: str = ""


MESSAGE_STYLES: typing.Dict[MessageTypes, MessageStyle] = {
    MessageTypes.OUTPUT: MessageStyle(0, "page_facing_up", "dim"),
    MessageTypes.WARNING: MessageStyle(10, "warning", "yellow"),
    MessageTypes.ERROR: MessageStyle(100, "stop_sign", "bold red"),
    MessageTypes.SUCCESS: MessageStyle(1000, "white_check_mark", "green"),
}


class Message:
    """Class for storing a message printed in the CLI."""

    message_type: MessageTypes
    style: MessageStyle
    message_as_rich_text: Text

    def __init__(
        self, message_type: MessageTypes, style: MessageStyle, message: str
    ) -> None:
        """Initialize the object.

        Args:
            message_type (MessageTypes): Type
            style (MessageStyle): Severity, emoji and text style of the type
            message (str): Message
        """
        self.message_type = message_type
        self.style = style
        self.message_as_rich_text = Text(message, style=style.text_style)

    @property
    def severity(self) -> int:
        """Numerical severity level."""
        return self.style.severity

    def to_text(self) -> Text:
        """Convert the message into its rich representation.

        Returns:
            Text: rich representation
        """
        return Text.assemble(
            str(Emoji(self.style.emoji_id)), " ", self.message_as_rich_text
        )

    def to_str(self) -> str:
        """Convert the message into its string representation.

        Returns:
            str: String representation
        """
        return self.to_text().plain


class MessageFactory:
    """Factory for creating CLI messages."""

    def create_message(
        self, message_type: MessageTypes, message: str
    ) -> Message:
        """Create a message based on its type.

        Args:
            message_type (MessageTypes): Type of message
            message (str): Message

        Raises:
            UnknownMessageTypeException: The provided type is unknown.

        Returns:
            Message: Constructed message
        """
        style = MESSAGE_STYLES.get(message_type)
        if style is None:
            raise UnknownMessageTypeException(str(message_type))

        return Message(message_type, style, message)


class UnknownMessageTypeException(CLIException):
    """The provided message type is unknown."""
