"""Module for dealing with YAML files.

JSON documents are valid YAML flow mappings, so the experiment configurations
written with JSON syntax are read here too.
"""
import os
import typing

import yaml

from ernn.helpers.exceptions import (
    MalformedFileException,
    NotPlainDictionaryException,
    YAMLFileNotExistsException,
)


def __is_plain_dict(dictionary: typing.Any) -> bool:
    if not isinstance(dictionary, dict):
        return False

    for key, value in dictionary.items():
        # Check the keys to be strings
        if not isinstance(key, str):
            return False

        # Check the values to be scalars
        if not (isinstance(value, (bool, int, float, str)) or value is None):
            return False

    return True


def load_from_file(filename: str) -> dict:
    """Load a plain dictionary from a YAML file.

    Args:
        filename (str): YAML filename

    Raises:
        YAMLFileNotExistsException: The file does not exists.
        MalformedFileException: The content is not valid YAML.
        NotPlainDictionaryException: The read dictionary is not plain.

    Returns:
        dict: Plain dictionary
    """
    if not os.path.isfile(filename):
        raise YAMLFileNotExistsException(filename)

    with open(filename, mode="r", encoding="utf-8") as yaml_file:
        raw_content = yaml_file.read()

    try:
        content = yaml.safe_load(raw_content)
    except yaml.YAMLError as exception:
        raise MalformedFileException(filename) from exception

    if content is None:
        content = {}

    if not __is_plain_dict(content):
        raise NotPlainDictionaryException(filename)

    return content
