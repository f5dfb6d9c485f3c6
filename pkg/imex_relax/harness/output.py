"""
CSV artifacts. Each file starts with `#` comment lines holding metadata and
the resolved config as YAML, so a table can be reproduced from the file alone.
"""

import csv
import io
import os
from typing import Dict, List, Sequence, Tuple

import numpy as np
import yaml

import imex_relax.utils as utils
from imex_relax.version import __version__

CONFIG_MARKER = "config:"


def format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.10e}"
    return str(value)


def header_lines(metadata: Dict = None, config: Dict = None) -> List[str]:
    lines = [f"# imex-relax {__version__}"]
    for key, value in (metadata or {}).items():
        lines.append(f"# {key}: {value}")
    if config is not None:
        lines.append(f"# {CONFIG_MARKER}")
        dumped = yaml.safe_dump(config, sort_keys=False, default_flow_style=False)
        lines.extend(f"#   {line}" for line in dumped.splitlines())
    return lines


def write_csv(
    filename: str,
    columns: Sequence[str],
    rows,
    metadata: Dict = None,
    config: Dict = None,
) -> str:
    """
    Write rows under a header naming the columns. Floats use scientific
    notation with ten digits after the point.
    """
    buffer = io.StringIO()
    for line in header_lines(metadata, config):
        buffer.write(line + "\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(value) for value in row])
    utils.mkdir_p(os.path.dirname(filename))
    utils.write_file(buffer.getvalue(), filename)
    return filename


def write_profile(filename: str, columns: Dict[str, np.ndarray], **kwargs) -> str:
    """
    Column-oriented variant for solution profiles: {"x": x, "u": u, ...}.
    """
    names = list(columns)
    arrays = [np.asarray(columns[name]) for name in names]
    return write_csv(filename, names, zip(*arrays), **kwargs)


def read_csv(filename: str) -> Tuple[Dict, List[str], List[List[str]]]:
    """
    (config, columns, rows) of a file written by write_csv; rows stay strings.
    """
    comments, body = [], []
    for line in utils.read_file(filename).splitlines():
        (comments if line.startswith("#") else body).append(line)

    config = None
    for k, line in enumerate(comments):
        if line[1:].strip() == CONFIG_MARKER:
            block = "\n".join(entry[4:] for entry in comments[k + 1 :])
            config = yaml.safe_load(block)
            break

    reader = list(csv.reader(body))
    if not reader:
        return config, [], []
    return config, reader[0], reader[1:]
