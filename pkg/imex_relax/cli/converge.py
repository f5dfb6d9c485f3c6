import os

from imex_relax.cli import format_cell
from imex_relax.errors import ImexRelaxError
from imex_relax.harness import convergence_preset, run_convergence_study
from imex_relax.harness.presets import CONVERGENCE_TABLEAUS
from imex_relax.logger import logger
from imex_relax.result import Result


def main(args, parser):
    tableaus = args.tableaus or list(CONVERGENCE_TABLEAUS)
    metadata = {"preset": args.preset, "tableaus": tableaus, "cells": args.cells}
    try:
        report = run_convergence_study(
            convergence_preset(args.preset), tableaus, cells=args.cells, workers=args.workers
        )
    except ImexRelaxError as e:
        return Result.from_error(e, metadata=metadata)

    rows = [[format_cell(value) for value in row] for row in report.table_rows()]
    logger.table(f"Convergence ({args.preset})", report.columns(), rows)
    if args.out:
        filename = report.write(os.path.join(args.out, f"{args.preset}-convergence.csv"))
        logger.info(f"wrote {filename}")
        metadata["files"] = [filename]
    return Result(report.to_dict(), metadata=metadata)
