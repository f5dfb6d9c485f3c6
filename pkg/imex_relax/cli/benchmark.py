from imex_relax.cli import format_cell
from imex_relax.errors import ImexRelaxError
from imex_relax.harness import run_benchmark
from imex_relax.logger import logger
from imex_relax.result import Result


def main(args, parser):
    metadata = {"test_id": args.test_id}
    try:
        report = run_benchmark(
            args.test_id, out=args.out, fine_dx=args.fine_dx, workers=args.workers
        )
    except ImexRelaxError as e:
        return Result.from_error(e, metadata=metadata)

    rows = [
        [
            panel.name,
            format_cell(panel.errors.get("l1_u")),
            format_cell(panel.errors.get("l1_v")),
            format_cell(panel.checks["new_extrema"]),
        ]
        for panel in report.panels
    ]
    logger.table(report.title, ["panel", "L1 u", "L1 v", "new extrema"], rows)
    if report.convergence is not None:
        convergence = report.convergence
        table = [[format_cell(value) for value in row] for row in convergence.table_rows()]
        logger.table("Convergence", convergence.columns(), table)
    for filename in report.files:
        logger.debug(f"wrote {filename}")
    metadata["files"] = report.files
    return Result(report.to_dict(), metadata=metadata)
