from typing import Callable, Tuple

import numpy as np

from imex_relax.errors import IterationError


def fixed_point(
    update: Callable[[np.ndarray], np.ndarray],
    x0,
    tol: float = 1e-12,
    max_iter: int = 100,
) -> Tuple[np.ndarray, int]:
    """
    Iterate x <- update(x) until successive iterates differ by at most tol
    in the max norm. Returns the last iterate and the number of updates.
    """
    x = np.asarray(x0, dtype=float)
    residual = np.inf
    for iteration in range(1, max_iter + 1):
        x_next = np.asarray(update(x), dtype=float)
        residual = float(np.max(np.abs(x_next - x))) if x_next.size else 0.0
        x = x_next
        if not np.isfinite(residual):
            break
        if residual <= tol:
            return x, iteration
    raise IterationError(
        f"fixed point iteration did not converge: residual {residual:.3e} "
        f"after {iteration} iterations",
        residual=residual,
        iterations=iteration,
    )
