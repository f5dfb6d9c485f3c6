from .fileio import *
from .timer import Timer
