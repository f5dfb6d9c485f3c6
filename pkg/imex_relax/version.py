__version__ = "0.0.1"
AUTHOR = "Vanessa Sochat"
AUTHOR_EMAIL = "vsoch@users.noreply.github.com"
NAME = "imex-relax"
PACKAGE_URL = "https://github.com/converged-computing/imex-relax"
KEYWORDS = "imex, runge-kutta, asymptotic preserving, relaxation systems, weno, diffusion, mcp"
DESCRIPTION = "Asymptotic-preserving IMEX Runge-Kutta solvers for 1-D hyperbolic relaxation systems"
LICENSE = "LICENSE"


INSTALL_REQUIRES = (
    ("numpy", {"min_version": "1.22"}),
    ("scipy", {"min_version": "1.8"}),
    ("matplotlib", {"min_version": "3.5"}),
    ("pydantic", {"min_version": "2.0"}),
    ("fastmcp", {"max_version": "2.14.7"}),
    ("rich", {"min_version": None}),
    ("pyyaml", {"min_version": None}),
    # Expression grammar for custom models
    ("ply", {"min_version": None}),
)

TESTS_REQUIRES = (
    ("pytest", {"min_version": "4.6.2"}),
    ("pytest-asyncio", {"min_version": None}),
)
INSTALL_REQUIRES_ALL = INSTALL_REQUIRES + TESTS_REQUIRES
