"""
The builtin IMEX pairs. Rational entries are written as fractions and
converted once; ARS222 and CK222 carry irrational entries computed in
working precision.
"""

import math
from fractions import Fraction as F

import numpy as np

from imex_relax.errors import TableauLookupError

from .tableau import ImexPair, RKTableau


def _tableau(rows, weights):
    """
    Build a tableau from lower-triangular rows (shorter rows are zero padded).
    The abscissae are the row sums.
    """
    s = len(weights)
    a = np.zeros((s, s))
    for i, row in enumerate(rows):
        a[i, : len(row)] = [float(value) for value in row]
    b = np.array([float(value) for value in weights])
    return RKTableau(a=a, b=b, c=a.sum(axis=1))


def ars111():
    explicit = _tableau([[], [1]], [1, 0])
    implicit = _tableau([[], [0, 1]], [0, 1])
    return ImexPair("ARS111", explicit, implicit, declared_order=1, declared_counts=(1, 1))


def ars222():
    gamma = 1.0 - 1.0 / math.sqrt(2.0)
    delta = 1.0 - 1.0 / (2.0 * gamma)
    explicit = _tableau([[], [gamma], [delta, 1.0 - delta]], [delta, 1.0 - delta, 0.0])
    implicit = _tableau([[], [0.0, gamma], [0.0, 1.0 - gamma, gamma]], [0.0, 1.0 - gamma, gamma])
    return ImexPair("ARS222", explicit, implicit, declared_order=2, declared_counts=(2, 2))


def ck222():
    root2 = math.sqrt(2.0)
    explicit = _tableau([[], [F(2, 3)], [F(1, 4), F(3, 4)]], [F(1, 4), F(3, 4), 0])
    last = [0.75 - root2 / 4.0, -0.75 + 3.0 * root2 / 4.0, 1.0 - root2 / 2.0]
    implicit = _tableau([[], [-1.0 / 3.0 + root2 / 2.0, 1.0 - root2 / 2.0], last], last)
    return ImexPair("CK222", explicit, implicit, declared_order=2, declared_counts=(2, 2))


def bpr442():
    explicit = _tableau(
        [
            [],
            [F(1, 4)],
            [F(13, 4), F(-3)],
            [F(1, 4), 0, F(1, 2)],
            [0, F(1, 3), F(1, 6), F(1, 2)],
        ],
        [0, F(1, 3), F(1, 6), F(1, 2), 0],
    )
    last = [0, F(11, 24), F(1, 6), F(1, 8), F(1, 4)]
    implicit = _tableau(
        [
            [],
            [0, F(1, 4)],
            [0, 0, F(1, 4)],
            [0, F(1, 24), F(11, 24), F(1, 4)],
            last,
        ],
        last,
    )
    return ImexPair("BPR442", explicit, implicit, declared_order=2, declared_counts=(4, 4))


def bpr343():
    explicit = _tableau(
        [
            [],
            [1],
            [F(4, 9), F(2, 9)],
            [F(1, 4), 0, F(3, 4)],
            [F(1, 4), 0, F(3, 4), 0],
        ],
        [F(1, 4), 0, F(3, 4), 0, 0],
    )
    last = [F(1, 4), 0, F(3, 4), F(-1, 2), F(1, 2)]
    implicit = _tableau(
        [
            [],
            [F(1, 2), F(1, 2)],
            [F(5, 18), F(-1, 9), F(1, 2)],
            [F(1, 2), 0, 0, F(1, 2)],
            last,
        ],
        last,
    )
    return ImexPair("BPR343", explicit, implicit, declared_order=3, declared_counts=(3, 4))


BUILTINS = {
    "ARS111": ars111,
    "ARS222": ars222,
    "CK222": ck222,
    "BPR442": bpr442,
    "BPR343": bpr343,
}


def builtin_names():
    return list(BUILTINS)


def builtin(name: str) -> ImexPair:
    """
    Look up a builtin pair by identifier (case-insensitive).
    """
    key = str(name).upper()
    if key not in BUILTINS:
        raise TableauLookupError(
            f"unknown tableau {name!r}; valid identifiers are {', '.join(BUILTINS)}"
        )
    return BUILTINS[key]()
