from dataclasses import dataclass

import numpy as np
import scipy.linalg

from imex_relax.errors import SolverError, StructuralError

RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class BandedMatrix:
    """
    Row-oriented band storage: diagonals[k + lower, i] = M[i, i + k].

    For cyclic matrices the column index wraps, i + k is taken modulo n.
    For acyclic matrices entries whose column falls outside [0, n) must be zero.
    """

    diagonals: np.ndarray
    lower: int
    upper: int
    cyclic: bool = False

    def __post_init__(self):
        diagonals = np.array(self.diagonals, dtype=float, ndmin=2)
        diagonals.setflags(write=False)
        object.__setattr__(self, "diagonals", diagonals)
        if diagonals.shape[0] != self.lower + self.upper + 1:
            raise StructuralError(
                f"expected {self.lower + self.upper + 1} stored diagonals, got {diagonals.shape[0]}"
            )
        if self.lower < 0 or self.upper < 0:
            raise StructuralError("bandwidths must be nonnegative")
        if self.cyclic and self.n <= self.lower + self.upper:
            raise StructuralError(f"a cyclic matrix of size {self.n} is too small for its band")

    @property
    def n(self) -> int:
        return self.diagonals.shape[1]

    @property
    def offsets(self):
        return range(-self.lower, self.upper + 1)

    @classmethod
    def identity(cls, n: int, lower: int = 1, upper: int = 1, cyclic: bool = False):
        diagonals = np.zeros((lower + upper + 1, n))
        diagonals[lower] = 1.0
        return cls(diagonals, lower, upper, cyclic)

    @classmethod
    def from_dense(cls, dense, lower: int, upper: int, cyclic: bool = False):
        dense = np.asarray(dense, dtype=float)
        n = dense.shape[0]
        rows = np.arange(n)
        diagonals = np.zeros((lower + upper + 1, n))
        for k in range(-lower, upper + 1):
            cols = rows + k
            if cyclic:
                diagonals[k + lower] = dense[rows, cols % n]
            else:
                inside = (cols >= 0) & (cols < n)
                diagonals[k + lower, inside] = dense[rows[inside], cols[inside]]
        return cls(diagonals, lower, upper, cyclic)

    def diagonal(self, k: int = 0) -> np.ndarray:
        return self.diagonals[k + self.lower]

    def matvec(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.zeros(self.n)
        rows = np.arange(self.n)
        for k in self.offsets:
            cols = rows + k
            if self.cyclic:
                out += self.diagonals[k + self.lower] * x[cols % self.n]
            else:
                inside = (cols >= 0) & (cols < self.n)
                out[inside] += self.diagonals[k + self.lower, inside] * x[cols[inside]]
        return out

    def to_dense(self) -> np.ndarray:
        dense = np.zeros((self.n, self.n))
        rows = np.arange(self.n)
        for k in self.offsets:
            cols = rows + k
            if self.cyclic:
                np.add.at(dense, (rows, cols % self.n), self.diagonals[k + self.lower])
            else:
                inside = (cols >= 0) & (cols < self.n)
                dense[rows[inside], cols[inside]] = self.diagonals[k + self.lower, inside]
        return dense

    def is_diagonally_dominant(self) -> bool:
        """
        Strict diagonal dominance by rows, or else by columns.
        """
        diag = np.abs(self.diagonal(0))
        off = np.abs(self.diagonals).sum(axis=0) - diag
        if np.all(diag > off):
            return True
        column_sums = np.zeros(self.n)
        rows = np.arange(self.n)
        for k in self.offsets:
            cols = rows + k
            if self.cyclic:
                np.add.at(column_sums, cols % self.n, np.abs(self.diagonals[k + self.lower]))
            else:
                inside = (cols >= 0) & (cols < self.n)
                np.add.at(
                    column_sums, cols[inside], np.abs(self.diagonals[k + self.lower, inside])
                )
        return bool(np.all(diag > column_sums - diag))

    def scaled(self, row_scale, col_scale=None, identity_shift: float = 0.0):
        """
        identity_shift * I + diag(row_scale) M diag(col_scale), as a new band.
        """
        row_scale = np.broadcast_to(np.asarray(row_scale, dtype=float), (self.n,))
        diagonals = self.diagonals * row_scale[None, :]
        if col_scale is not None:
            col_scale = np.broadcast_to(np.asarray(col_scale, dtype=float), (self.n,))
            rows = np.arange(self.n)
            for k in self.offsets:
                cols = rows + k
                cols = cols % self.n if self.cyclic else np.clip(cols, 0, self.n - 1)
                diagonals[k + self.lower] = diagonals[k + self.lower] * col_scale[cols]
        diagonals[self.lower] = diagonals[self.lower] + identity_shift
        return BandedMatrix(diagonals, self.lower, self.upper, self.cyclic)

    def _solve_banded_format(self) -> np.ndarray:
        """
        Rearranged into the column-oriented layout of scipy.linalg.solve_banded.
        """
        ab = np.zeros((self.lower + self.upper + 1, self.n))
        for k in self.offsets:
            row = self.upper - k
            if k >= 0:
                ab[row, k:] = self.diagonals[k + self.lower, : self.n - k]
            else:
                ab[row, : self.n + k] = self.diagonals[k + self.lower, -k:]
        return ab

    def _acyclic_part(self) -> "BandedMatrix":
        diagonals = np.array(self.diagonals)
        rows = np.arange(self.n)
        for k in self.offsets:
            cols = rows + k
            outside = (cols < 0) | (cols >= self.n)
            diagonals[k + self.lower, outside] = 0.0
        return BandedMatrix(diagonals, self.lower, self.upper, cyclic=False)

    def _corners(self):
        """
        Wrapped entries of a cyclic matrix as (row, col, value) triples.
        """
        rows = np.arange(self.n)
        corners = []
        for k in self.offsets:
            cols = rows + k
            outside = (cols < 0) | (cols >= self.n)
            for i in rows[outside]:
                value = self.diagonals[k + self.lower, i]
                if value != 0.0:
                    corners.append((int(i), int(cols[i] % self.n), float(value)))
        return corners


def _solve_acyclic(m: BandedMatrix, rhs: np.ndarray) -> np.ndarray:
    try:
        return scipy.linalg.solve_banded(
            (m.lower, m.upper), m._solve_banded_format(), rhs, check_finite=True
        )
    except (np.linalg.LinAlgError, ValueError) as e:
        raise SolverError(f"banded factorization failed: {e}")


def banded_solve(m: BandedMatrix, rhs, check_dominance: bool = True) -> np.ndarray:
    """
    Solve m x = rhs. Cyclic systems use a Woodbury correction of the acyclic
    factorization, with the wrapped entries as a low-rank update.
    """
    rhs = np.asarray(rhs, dtype=float)
    if rhs.shape != (m.n,):
        raise StructuralError(f"right hand side has shape {rhs.shape}, expected ({m.n},)")
    if check_dominance and not m.is_diagonally_dominant():
        raise SolverError("matrix is not strictly diagonally dominant")

    if not m.cyclic:
        x = _solve_acyclic(m, rhs)
    else:
        corners = m._corners()
        base = m._acyclic_part()
        if not corners:
            x = _solve_acyclic(base, rhs)
        else:
            # M = B + U V^T, one column of U per row holding wrapped entries
            rows = sorted({row for row, _, _ in corners})
            U = np.zeros((m.n, len(rows)))
            Vt = np.zeros((len(rows), m.n))
            for position, row in enumerate(rows):
                U[row, position] = 1.0
            for row, col, value in corners:
                Vt[rows.index(row), col] += value

            y = _solve_acyclic(base, rhs)
            Z = _solve_acyclic(base, U)
            capacitance = np.eye(len(rows)) + Vt @ Z
            try:
                correction = np.linalg.solve(capacitance, Vt @ y)
            except np.linalg.LinAlgError as e:
                raise SolverError(f"cyclic correction is singular: {e}")
            x = y - Z @ correction

    residual = float(np.max(np.abs(m.matvec(x) - rhs))) if m.n else 0.0
    scale = float(np.max(np.abs(rhs))) if m.n else 0.0
    if not np.all(np.isfinite(x)) or residual > RESIDUAL_TOL * max(scale, 1e-300):
        raise SolverError(f"banded solve residual {residual:.3e} exceeds tolerance")
    return x
