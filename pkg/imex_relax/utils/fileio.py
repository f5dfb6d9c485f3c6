import json
import os

import yaml


def read_json(filename):
    """
    Read json from file
    """
    return json.loads(read_file(filename))


def read_yaml(filename):
    """
    Read yaml from file
    """
    with open(filename, "r") as fd:
        content = yaml.safe_load(fd)
    return content


def write_yaml(obj, filename):
    with open(filename, "w") as fd:
        yaml.safe_dump(obj, fd, sort_keys=False)


def load_config(source):
    """
    Load a config mapping. Accepts a dict, a path to YAML or JSON, or a
    YAML/JSON string.
    """
    if isinstance(source, dict):
        return source
    if isinstance(source, str) and not os.path.exists(source):
        return yaml.safe_load(source)
    if str(source).endswith(".json"):
        return read_json(source)
    return read_yaml(source)


def read_file(filename):
    with open(filename, "r") as fd:
        content = fd.read()
    return content


def write_file(content, filename):
    with open(filename, "w") as fd:
        fd.write(content)


def mkdir_p(dirname):
    """
    Create a directory (and parents) if it does not exist, return the path.
    """
    if dirname:
        os.makedirs(dirname, exist_ok=True)
    return dirname
