from typing import Tuple

# degree bound used by every degreewise computation when none is given
DEFAULT_MAX_DEGREE = 4
# environment variable that overrides DEFAULT_MAX_DEGREE for the command line
MAX_DEGREE_ENV = "REESKIT_MAX_DEGREE"

DEFAULT_ORDER = "grevlex"
ORDERS: Tuple[str, ...] = ("grevlex", "lex")

# generator letters of symmetric algebras (Sym(M)=A[S]/xS) and Rees algebras
# (R(M)=A[U]/(xU,U^2)); fall back to indexed names when these run out
SYM_LETTERS = "STUVWXYZ"
REES_LETTERS = "UVWXYZ"
INDEXED_PREFIX = "T"

# name of the base ring in rendered presentations, e.g. A[U] / (x*U, U^2)
DEFAULT_RING_NAME = "A"

RESULTS_SCHEMA_VERSION = "1.0"

# command line exit codes
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_VERIFICATION = 4
