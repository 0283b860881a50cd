"""Ground-truth engines: brute-force permutation check and brute-force
compositional inversion.  Every closed-form result in this package is
cross-validated against these."""

from . import _kernels
from .errors import NotAPermutation
from .polyring import MapTable


def is_permutation(table: MapTable) -> bool:
    """True iff the table hits every rank exactly once (occupancy check)."""
    return _kernels.is_permutation(table.values)


def brute_inverse(table: MapTable) -> MapTable:
    """Inverse table of a bijection: U with U(T(a)) = T(U(a)) = a for all a."""
    inv = _kernels.invert_table(table.values)
    if inv is None:
        raise NotAPermutation("table is not a bijection")
    return MapTable(table.field, inv)
