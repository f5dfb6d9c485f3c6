import json
from typing import Any, Dict

import numpy

from imex_relax.errors import ImexRelaxError
from imex_relax.logger import logger


def jsonable(value):
    """
    Convert numpy scalars and arrays (possibly nested) into plain Python.
    """
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, numpy.ndarray):
        return value.tolist()
    if isinstance(value, numpy.generic):
        return value.item()
    return value


class Result:
    """
    Standardized return object for CLI commands and tool-server functions.

    The return code follows the CLI convention: 0 success, 2 validation
    error, 3 numerical blow-up, 1 anything else.
    """

    def __init__(
        self, content: Any = None, returncode: int = 0, stderr: str = "", metadata: Dict = None
    ):
        self.returncode = returncode
        self.stdout = ""
        self.data = None
        self.stderr = stderr
        self.metadata = jsonable(metadata or {})
        self.parse(content)

    @classmethod
    def from_dict(cls, response: Dict):
        """
        Rebuild a Result from the to_dict() form returned by the tools.
        """
        result = cls(
            response.get("data"),
            returncode=response.get("returncode", 0),
            stderr=response.get("stderr", ""),
            metadata=response.get("metadata"),
        )
        if response.get("data") is None and response.get("stdout"):
            result.stdout = response["stdout"]
        return result

    @classmethod
    def from_error(cls, error: Exception, metadata: Dict = None):
        metadata = dict(metadata or {})
        metadata["error_type"] = type(error).__name__
        for attr in ["step", "time", "residual", "iterations"]:
            if getattr(error, attr, None) is not None:
                metadata[attr] = getattr(error, attr)
        return cls(error, metadata=metadata)

    def parse(self, content):
        """
        Parse content into the unified interface.
        """
        if isinstance(content, Exception):
            self.returncode = getattr(content, "exit_code", 1)
            if not isinstance(content, ImexRelaxError):
                self.returncode = 1
            self.stderr = str(content)

        elif isinstance(content, (dict, list)):
            self.data = jsonable(content)
            self.stdout = json.dumps(self.data, indent=2)

        elif content is not None:
            self.stdout = str(content)

    @property
    def is_success(self):
        return self.returncode == 0

    def render(self) -> str:
        """
        Render the result as text and print it as a panel.
        """
        status = "SUCCESS" if self.is_success else "FAILURE"
        logfunc = logger.success if self.is_success else logger.failure
        sections = [f"STATUS: {status} (Exit Code {self.returncode})"]

        if self.stdout.strip():
            sections.append(f"--- OUTPUT ---\n{self.stdout.strip()}")
        if self.stderr.strip():
            sections.append(f"--- ERROR ---\n{self.stderr.strip()}")
        if self.metadata:
            sections.append(f"--- METADATA ---\n{json.dumps(self.metadata, indent=2)}")

        result = "\n\n".join(sections)
        if not logger.quiet:
            logfunc(result)
        return result

    def to_dict(self) -> dict:
        return {
            "returncode": self.returncode,
            "data": self.data,
            "stdout": self.stdout if self.data is None else "",
            "stderr": self.stderr,
            "metadata": self.metadata,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())
