"""Frobenius eigen-decomposition machinery on a tower F_{q^d} over F_q.

For a primitive d-th root of unity w in F_q (d dividing q - 1), the context
holds the d sparse polynomials

    P_i(x) = x**(q**(d-1)) + w**i * x**(q**(d-2)) + ... + w**(i*(d-1)) * x,

one per eigenvalue w**i of the q-power Frobenius.  Their key behaviors,
verified pointwise by identity_checks, are the eigen property
P_i(x)**q = w**i * P_i(x), the composition collapse of P_j with powers of
P_i, the annihilation of base-field functions of P_0 by every P_j with
j >= 1, and the reconstruction identity x = (1/d) * sum w**i * P_i(x).  The
image of each P_i is a punctured line {0} plus a nonzero representative
scaled by every base-field unit.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from . import _kernels
from .errors import InternalError, NoSuchRoot, RangeError
from .fields import Field
from .polyring import MapTable, Poly


@dataclass(frozen=True)
class ImageLine:
    """Image of one projector: {0} union representative * (base-field units)."""

    index: int
    elements: frozenset[int]
    representative: int


class LinearizedContext:
    """Projector family on a tower top F_{q^d}; requires q = 1 (mod d)."""

    def __init__(self, top: Field):
        if top.subfield is None or not top.is_top:
            raise RangeError("context requires a tower top F_{q^d} over F_q")
        d = top.degree
        if d < 2:
            raise RangeError("tower degree must be at least 2")
        base = top.subfield
        if (base.size - 1) % d != 0:
            raise NoSuchRoot(
                f"degree {d} does not divide {base.size - 1}; no root of unity")
        self.field = top
        self.base = base
        self.degree = d
        self.root = base.primitive_root_of_unity(d)  # order exactly d, in F_q
        self._tables: dict[int, MapTable] = {}

    @property
    def base_size(self) -> int:
        return self.base.size

    def root_power(self, e: int) -> int:
        """Rank of root**e; valid in both levels (subfield ranks embed as-is)."""
        return self.base.pow(self.root.rank, e)

    def projector(self, i: int) -> Poly:
        """The i-th eigen projector as a sparse reduced polynomial over the top."""
        d = self.degree
        if not (0 <= i <= d - 1):
            raise RangeError(f"projector index {i} outside [0, {d - 1}]")
        q = self.base_size
        terms = {q ** (d - 1 - j): self.root_power(i * j) for j in range(d)}
        return Poly.from_terms(self.field, terms)

    def projector_table(self, i: int) -> MapTable:
        if i not in self._tables:
            self._tables[i] = self.projector(i).tabulate()
        return self._tables[i]

    def image_line(self, i: int) -> ImageLine:
        """Enumerate the i-th projector image and certify its line structure."""
        top, base = self.field, self.base
        values = self.projector_table(i).values
        elements = frozenset(values)
        if len(elements) != base.size:
            raise InternalError(f"projector {i} image has size {len(elements)}")
        if i == 0 and elements != frozenset(range(base.size)):
            raise InternalError("projector 0 image is not the embedded base field")
        rep = min(v for v in elements if v)
        scaled = {0} | {top.mul(rep, c) for c in range(1, base.size)}
        if scaled != elements:
            raise InternalError(f"projector {i} image is not a scaled line")
        wi = self.root_power(i)
        for v in elements:
            if v and top.frobenius_rank(v) != top.mul(wi, v):
                raise InternalError(f"image member {v} fails the eigen property")
        return ImageLine(index=i, elements=elements, representative=rep)

    # -- pointwise identity checks -----------------------------------------

    def eigen_check(self, i: int) -> bool:
        """P_i(x)**q = w**i * P_i(x) pointwise."""
        top = self.field
        t = self.projector_table(i).values
        lhs = _kernels.compose_tables(top.frobenius_table(), t)
        rhs = _kernels.scale_table(self.root_power(i), t, top.exp, top.log)
        return lhs == rhs

    def compose_power_check(self, i: int, j: int, m: int) -> bool:
        """P_j composed with P_i**m collapses to d * w**(-j) * P_i**m when
        j = i*m (mod d) and to zero otherwise, pointwise."""
        if m < 1:
            raise RangeError("power must be positive")
        top = self.field
        ti = self.projector_table(i).values
        tj = self.projector_table(j).values
        power = _kernels.pointwise_pow(ti, m, top.exp, top.log)
        lhs = _kernels.compose_tables(tj, power)
        if (i * m - j) % self.degree == 0:
            c = self.base.mul(self.base.from_int(self.degree), self.root_power(-j))
            rhs = _kernels.scale_table(c, power, top.exp, top.log)
        else:
            rhs = [0] * top.size
        return lhs == rhs

    def annihilates_check(self, j: int, g: Poly) -> bool:
        """P_j composed with g(P_0) is identically zero for every j >= 1 and
        every polynomial g over the base field."""
        if not (1 <= j <= self.degree - 1):
            raise RangeError("annihilation check needs 1 <= j <= d-1")
        if g.field is not self.base:
            raise RangeError("g must live on the base field")
        t0 = self.projector_table(0).values
        tj = self.projector_table(j).values
        # P_0 values land in the embedded base field, so g's action memoizes
        gval = {v: g.eval_rank(v) for v in set(t0)}
        return all(tj[gval[v]] == 0 for v in t0)

    def identity_checks(self, i: int, j: int, m: int, g: Poly) -> dict[str, bool | None]:
        """Per-clause verdicts; the annihilation clause needs j >= 1."""
        return {
            "eigen": self.eigen_check(i),
            "compose_power": self.compose_power_check(i, j, m),
            "annihilate": self.annihilates_check(j, g) if j >= 1 else None,
        }

    def reconstruction_check(self) -> bool:
        """x = (1/d) * sum over i of w**i * P_i(x), pointwise."""
        top = self.field
        acc = [0] * top.size
        for i in range(self.degree):
            scaled = _kernels.scale_table(self.root_power(i),
                                          self.projector_table(i).values,
                                          top.exp, top.log)
            acc = _kernels.add_tables(acc, scaled, top.exp, top.log, top.zech)
        inv_d = top.inv(top.from_int(self.degree))
        acc = _kernels.scale_table(inv_d, acc, top.exp, top.log)
        return acc == list(range(top.size))


@functools.lru_cache(maxsize=None)
def context(top: Field) -> LinearizedContext:
    """Cached context per tower; contexts are immutable and shareable."""
    return LinearizedContext(top)
