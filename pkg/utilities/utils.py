import hashlib
from pathlib import Path
from typing import List, Tuple

import numpy as np


def make_rng(seed: int) -> np.random.Generator:
    """Returns the generator every randomized choice of a run draws from.

    Raises:
        ValueError: If the seed is negative.
    """
    if seed < 0:
        raise ValueError(f"Seeds are non-negative integers, got {seed}.")
    return np.random.default_rng(seed)


def file_digest(path: Path) -> str:
    """SHA-256 of a file's bytes, echoed in reports so identical inputs are recognizable."""
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def split_terms(spec: str) -> List[Tuple[str, str]]:
    """Splits "2:a.json,-1/3:b.json" into (weight, path) pairs.

    Raises:
        ValueError: If a term has no weight.
    """
    terms = []
    for part in spec.split(","):
        if not part.strip():
            continue
        weight, sep, path = part.strip().partition(":")
        if not sep or not weight or not path:
            raise ValueError(f"Term {part!r} is not written weight:path.")
        terms.append((weight, path))
    if not terms:
        raise ValueError("No terms given.")
    return terms
