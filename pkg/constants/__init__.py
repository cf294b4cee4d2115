from pathlib import Path
from dataclasses import dataclass
from typing import List


@dataclass
class BundledBackend:
    """Class describing a backend fixture shipped with the project"""

    # Backend id used on the command line
    backend_id: str
    # Path of the structure file, relative to DATA_DIR
    filename: str
    # Either "group" or "hopf"
    kind: str


# ---------------------------------
# Project Constants.
# ---------------------------------

# The root directory of this project.
ROOT_DIR = Path(__file__).parent.parent
# Hand-authored fixture files.
DATA_DIR = ROOT_DIR / "data"
# Structure files that can be named directly with --backend.
BUNDLED_BACKENDS: List[BundledBackend] = [
    BundledBackend(backend_id="vect", filename="vect.hopf", kind="hopf"),
    BundledBackend(backend_id="vect-1", filename="trivial.group", kind="group"),
    BundledBackend(backend_id="vect-z2", filename="z2.group", kind="group"),
    BundledBackend(backend_id="vect-s3", filename="s3.group", kind="group"),
    BundledBackend(backend_id="hopf-z2", filename="kz2.hopf", kind="hopf"),
    BundledBackend(backend_id="hopf-s3", filename="ks3.hopf", kind="hopf"),
    BundledBackend(backend_id="hopf-h4", filename="h4.hopf", kind="hopf"),
]

assert len({b.backend_id for b in BUNDLED_BACKENDS}) == len(BUNDLED_BACKENDS)

# ---------------------------------
# Exact arithmetic.
# ---------------------------------

# Default scalar field.
DEFAULT_FIELD = "QQ"
# Matrices with more entries than this are stored sparse.
DENSE_ENTRY_LIMIT = 10_000
# Prime fields below this characteristic are refused.
MIN_PRIME_CHARACTERISTIC = 5

# ---------------------------------
# Randomized suites and solvers.
# ---------------------------------

# Seed used whenever --seed is not given.
DEFAULT_SEED = 20240611
# Bound on numerators of random exact scalars.
RANDOM_SCALAR_BOUND = 9
# Random candidates tried when searching for a representing element.
REPRESENTABILITY_ATTEMPTS = 8
# Half-braiding spaces above this dimension are not solved for exact points.
HALFBRAIDING_SOLVE_LIMIT = 8
# Halvings of the offset tried when placing the coupons that turn a seam crossing around.
TURNAROUND_ATTEMPTS = 24

assert RANDOM_SCALAR_BOUND > 1
assert MIN_PRIME_CHARACTERISTIC >= 5

# ---------------------------------
# Command line.
# ---------------------------------

EXIT_ACCEPT = 0
EXIT_REJECT = 1
EXIT_INPUT_ERROR = 2
EXIT_INVARIANT_BREACH = 3

# Level name of the structured event log.
EVENTS_LEVEL = "EVENTS"
# Severity of the structured event log.
EVENTS_LEVEL_NO = 38
