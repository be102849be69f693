"""Package storing the ERNN codebase."""

VERSION = "0.1.0"
