from .banded import BandedMatrix, banded_solve
from .iterate import fixed_point
