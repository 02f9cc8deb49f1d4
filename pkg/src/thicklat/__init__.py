"""Lattices of thick subcategories: spectra, spatial approximations and comparisons."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    CONFLUENT,
    FiniteLattice,
    Flag,
    LatticeMap,
    bounded_sublattice,
    certify,
    check_map,
    find_diamond_obstruction,
    fixed_sublattice,
    from_covers,
    is_isomorphic,
    opposite,
    product,
)
from .errors import LatticeError  # noqa: E402
from .spectra import FiniteSpace, fspcnt, open_set_lattice, spcnt  # noqa: E402
from .adjunctions import classify, free_frame_d, omega  # noqa: E402
from .compare import hochster_dual, mspec  # noqa: E402

__all__ = [
    "CONFLUENT", "FiniteLattice", "FiniteSpace", "Flag", "LatticeError", "LatticeMap",
    "bounded_sublattice", "certify", "check_map", "classify", "find_diamond_obstruction",
    "fixed_sublattice", "free_frame_d", "from_covers", "fspcnt", "hochster_dual",
    "is_isomorphic", "mspec", "omega", "open_set_lattice", "opposite", "product", "spcnt",
]
