#!/usr/bin/env python3
import argparse
import sys

from imex_relax.logger import logger, setup_logger

from . import get_server


def get_parser():
    parser = argparse.ArgumentParser(
        prog="imex-relax-mcp",
        description="Serve the imex-relax tools over MCP.",
    )
    parser.add_argument(
        "--transport",
        default="stdio",
        choices=["stdio", "http"],
        help="Transport to serve on (defaults to stdio).",
    )
    parser.add_argument("--host", default="0.0.0.0", help="Host for the http transport.")
    parser.add_argument("--port", default=8089, type=int, help="Port for the http transport.")
    parser.add_argument("--debug", action="store_true", default=False, help="Debug logging.")
    return parser


def main(argv=None):
    args = get_parser().parse_args(argv)
    # stdout belongs to the protocol when serving over stdio
    setup_logger(quiet=args.transport == "stdio", debug=args.debug)
    mcp = get_server()
    try:
        if args.transport == "http":
            logger.info(f"serving imex-relax tools on {args.host}:{args.port}")
            mcp.run(transport="http", host=args.host, port=args.port)
        else:
            mcp.run()
    except KeyboardInterrupt:
        logger.info("shutting down")
        sys.exit(0)


if __name__ == "__main__":
    main()
