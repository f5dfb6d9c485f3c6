import imex_relax.harness.tool as harness
import imex_relax.tableaux as tableaux

TOOLS = [
    # tableau inspection
    tableaux.tableau_check,
    tableaux.tableau_list,
    # model and speed evaluation
    harness.equilibrium_state,
    harness.characteristic_speed_bounds,
    # experiments
    harness.run_experiment,
    harness.convergence_study,
    harness.benchmark,
]
