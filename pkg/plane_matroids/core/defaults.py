"""Tunable limits and defaults shared by the core modules and the CLI."""

# search
DEFAULT_BUDGET = 10_000_000
DEFAULT_WORKERS = 1
MAX_SEARCH_ELEMENTS = 14
PROGRESS_INTERVAL = 100_000

# fields and planes
MAX_FIELD_DEGREE = 8
MAX_PLANE_ORDER = 32

# complex realizability check
COMPLEX_TOL_ZERO = 1e-9
COMPLEX_TOL_NONZERO = 1e-6
COMPLEX_MAX_N = 24
