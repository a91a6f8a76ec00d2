"""
Miscellaneous tools for supporting core functionality.
"""

import json
from pathlib import Path
from typing import Optional

import tomlkit
from tomlkit.exceptions import ParseError

###################################################################################################
### Path management
###################################################################################################

DEFAULT_RUN_SETTINGS = "run_config.json"
DEFAULT_TIMING = "timing.json"
DEFAULT_GROUP = "group.json"
DEFAULT_PARTITION = "partition.json"
DEFAULT_CONSTANTS = "constants.json"
DEFAULT_SCHEME = "scheme.json"
DEFAULT_TENSOR = "tensor.json"
DEFAULT_AUTOMORPHISMS = "automorphisms.json"
DEFAULT_AUDIT = "audit.json"
DEFAULT_REPORT = "report.json"


def check_path(directory: str | Path):
    """
    Check whether the path at a given directory exists. If not, create it.

    Parameters:
        directory: Complete directory address.

    Raises:
        PermissionError: if the directory cannot be created.
    """
    try:
        Path(directory).mkdir(parents=True, exist_ok=True)
    except OSError as err:
        e = f"Directory `{directory}` is not writable ({err.strerror})."
        raise PermissionError(e)


def check_source(source: str | Path) -> bool:
    """
    Check whether a source file exists.

    Parameters:
        source: Complete directory and file address.

    Raises:
        FileNotFoundError: if the source does not exist.

    Returns:
        `True` if it exists.
    """
    if Path(source).exists():
        return True
    else:
        e = f"Source at `{source}` not found."
        raise FileNotFoundError(e)


def suffixed(filename: str, suffix: Optional[str] = None) -> str:
    """
    Insert a suffix before the file extension, e.g. `scheme.json` -> `scheme-12.json`.
    """
    if not suffix:
        return filename
    stem, _, extension = filename.rpartition(".")
    return f"{stem}-{suffix}.{extension}"


###################################################################################################
### JSON and TOML get and set
###################################################################################################


def load_json(source: str | Path) -> dict:
    """
    Load and return a JSON file, if it exists.

    Parameters:
        source: Filename to open, including path.

    Raises:
        ValueError: if not a valid json file.
        FileNotFoundError: if not a valid source.

    Returns:
        The decoded dictionary.
    """
    check_source(source)
    with open(source, "r") as f:
        try:
            return json.load(f)
        except json.decoder.JSONDecodeError as err:
            e = f"File at `{source}` not valid json ({err.msg})."
            raise ValueError(e)


def save_json(data: dict, source: str | Path, overwrite: Optional[bool] = False, indent: Optional[int] = None) -> bool:
    """
    Save a dictionary as a json file. Keys are sorted so that identical data always produces identical
    bytes.

    Parameters:
        data: Dictionary to be saved.
        source: Path to filename to open.
        overwrite: True to overwrite existing file.
        indent: Optional indentation. Large arrays are kept compact by default.

    Raises:
        FileExistsError: if the file exists and not `overwrite`.

    Returns:
        `True` if saved.
    """
    if Path(source).exists() and not overwrite:
        e = f"`{source}` already exists. Set `overwrite` to `True`."
        raise FileExistsError(e)
    with open(source, "w") as f:
        json.dump(data, f, indent=indent, sort_keys=True, default=str)
        f.write("\n")
    return True


def load_toml(source: str | Path) -> dict:
    """
    Load a TOML settings file as a plain dictionary.

    Parameters:
        source: Filename to open, including path.

    Raises:
        ValueError: if the file is not valid TOML.
        FileNotFoundError: if not a valid source.

    Returns:
        The decoded dictionary.
    """
    check_source(source)
    with open(source, "r") as f:
        try:
            return tomlkit.parse(f.read()).unwrap()
        except ParseError as err:
            e = f"File at `{source}` not valid toml ({err})."
            raise ValueError(e)
