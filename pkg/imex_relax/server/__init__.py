from fastmcp import FastMCP
from fastmcp.tools.tool import Tool

import imex_relax.version as version
from imex_relax.logger import logger
from imex_relax.registry import TOOLS


def register_with(server_instance):
    """
    Register the imex-relax tools with a FastMCP server instance.
    """
    if not hasattr(server_instance, "add_tool"):
        raise TypeError("Server instance must support .add_tool()")
    for func in TOOLS:
        server_instance.add_tool(Tool.from_function(func))
        logger.debug(f"registered tool {func.__name__}")
    return server_instance


def get_server(mask_error_details=False):
    mcp = FastMCP(
        name="IMEX Relax",
        instructions="Tools for asymptotic-preserving IMEX Runge-Kutta schemes "
        "on 1-D hyperbolic relaxation systems.",
        version=version.__version__,
        mask_error_details=mask_error_details,
        # Throw up if we accidentally define a tool with the same name
        on_duplicate_tools="error",
    )
    return register_with(mcp)
