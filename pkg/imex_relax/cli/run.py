from imex_relax.errors import ImexRelaxError
from imex_relax.harness import build_experiment, load_config
from imex_relax.harness.tool import run_experiment
from imex_relax.logger import logger
from imex_relax.result import Result


def main(args, parser):
    if not args.progress:
        return Result.from_dict(run_experiment(args.config))

    # Progress is logged by the integrator as the run advances
    try:
        experiment = build_experiment(load_config(args.config))
        trajectory = experiment.run(progress=True)
        files = experiment.write_outputs(trajectory)
    except ImexRelaxError as e:
        return Result.from_error(e, metadata={"config": args.config})
    for filename in files:
        logger.info(f"wrote {filename}")
    final = trajectory.final
    data = {"t": final.t, "u": final.u, "v": final.v, "diagnostics": trajectory.diagnostics}
    return Result(data, metadata={"name": experiment.config.name, "files": files})
