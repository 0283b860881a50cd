"""Univariate polynomials over one field level and the composition ring of
maps (polynomials modulo x**Q - x under addition and composition).

Poly is a canonical ascending coefficient sequence (no trailing zeros; the
zero polynomial is the empty sequence).  Reduction folds every exponent
e >= 1 into [1, Q-1] by e -> ((e - 1) mod (Q - 1)) + 1, which preserves the
induced map exactly (including at zero).  Reduced polynomials of degree < Q
are in bijection with maps of the field, so polynomial equality is defined on
reduced forms, and map equality (tables) coincides with it by interpolation
uniqueness; both comparisons are exposed separately.

Poly and MapTable are immutable values; everything here is a pure function of
its inputs.
"""

from __future__ import annotations

import json
from typing import Iterable, Mapping

from . import _kernels
from .errors import LevelMismatch, RangeError
from .fields import Field, FieldElement, field_spec


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable[int | FieldElement] = ()):
        ranks = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                if c.field is not field:
                    raise LevelMismatch("coefficient from a different field level")
                ranks.append(c.rank)
            else:
                if not (0 <= c < field.size):
                    raise RangeError(f"coefficient rank {c} out of range for {field!r}")
                ranks.append(c)
        while ranks and ranks[-1] == 0:
            ranks.pop()
        self.field = field
        self.coeffs = tuple(ranks)

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_terms(cls, field: Field, terms: Mapping[int, int]) -> "Poly":
        if not terms:
            return cls(field)
        out = [0] * (max(terms) + 1)
        for e, c in terms.items():
            if e < 0:
                raise RangeError("negative exponent")
            out[e] = field.add(out[e], c)
        return cls(field, out)

    @classmethod
    def x(cls, field: Field) -> "Poly":
        return cls(field, (0, 1))

    @classmethod
    def constant(cls, field: Field, c: int) -> "Poly":
        return cls(field, (c,))

    @classmethod
    def monomial(cls, field: Field, e: int, c: int = 1) -> "Poly":
        return cls.from_terms(field, {e: c})

    # -- basics ------------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "Poly") -> None:
        if not isinstance(other, Poly) or other.field is not self.field:
            raise LevelMismatch("polynomials over different field levels")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        f = self.field
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Poly(f, [f.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0)
                        for i in range(n)])

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        return self + other.scale(self.field.neg_one)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        f = self.field
        acc: dict[int, int] = {}
        for i, ca in enumerate(self.coeffs):
            if ca == 0:
                continue
            for j, cb in enumerate(other.coeffs):
                if cb:
                    k = i + j
                    acc[k] = f.add(acc.get(k, 0), f.mul(ca, cb))
        return Poly.from_terms(f, acc)

    def scale(self, c: int) -> "Poly":
        f = self.field
        return Poly(f, [f.mul(c, x) for x in self.coeffs])

    # -- composition ring ---------------------------------------------------

    def reduced(self) -> "Poly":
        """Fold exponents modulo the x**Q - x relation; map-preserving."""
        f = self.field
        qm1 = f.size - 1
        acc: dict[int, int] = {}
        for e, c in enumerate(self.coeffs):
            if c == 0:
                continue
            e2 = e if e == 0 else (e - 1) % qm1 + 1
            acc[e2] = f.add(acc.get(e2, 0), c)
        return Poly.from_terms(f, acc)

    def compose(self, other: "Poly") -> "Poly":
        """Reduced representative of self(other(x)) in the composition ring."""
        self._check(other)
        f = self.field
        g = other.reduced()
        acc = Poly(f)
        for c in reversed(self.coeffs):
            acc = (acc * g).reduced()
            if c:
                acc = acc + Poly.constant(f, c)
        return acc

    def pow_mod(self, m: int) -> "Poly":
        """Reduced m-th power (polynomial product, not composition)."""
        if m < 0:
            raise RangeError("polynomial powers must be non-negative")
        acc = Poly.constant(self.field, 1)
        base = self.reduced()
        while m:
            if m & 1:
                acc = (acc * base).reduced()
            base = (base * base).reduced()
            m >>= 1
        return acc

    # -- evaluation ----------------------------------------------------------

    def eval_rank(self, x: int) -> int:
        f = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, x), c)
        return acc

    def evaluate(self, a: FieldElement) -> FieldElement:
        if a.field is not self.field:
            raise LevelMismatch("point from a different field level")
        return FieldElement(self.field, self.eval_rank(a.rank))

    def tabulate(self) -> "MapTable":
        f = self.field
        r = self.reduced()
        nnz = sum(1 for c in r.coeffs if c)
        if nnz * 3 < len(r.coeffs):
            exps = [e for e, c in enumerate(r.coeffs) if c]
            cs = [c for c in r.coeffs if c]
            values = _kernels.tabulate_sparse(exps, cs, f.exp, f.log, f.zech)
        else:
            values = _kernels.tabulate_dense(list(r.coeffs), f.exp, f.log, f.zech)
        return MapTable(f, values)

    # -- comparisons and text forms ------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field is other.field and self.reduced().coeffs == other.reduced().coeffs

    def __hash__(self):
        return hash((id(self.field), self.reduced().coeffs))

    def same_map(self, other: "Poly") -> bool:
        """Equality as maps, decided by comparing tables."""
        self._check(other)
        return self.tabulate().values == other.tabulate().values

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        return ",".join(str(c) for c in self.coeffs)

    @classmethod
    def from_text(cls, field: Field, text: str) -> "Poly":
        return cls(field, [int(c) for c in text.strip().split(",")])

    def to_json(self) -> str:
        return json.dumps({"field": self.field.spec_text, "coeffs": list(self.coeffs)})

    @classmethod
    def from_json(cls, doc: str) -> "Poly":
        data = json.loads(doc)
        return cls(field_spec(data["field"]).field, data["coeffs"])

    def __repr__(self):
        return f"Poly({self.to_text()} over {self.field!r})"


class MapTable:
    """A total map of one field level: entry n is the image rank of unrank(n)."""

    __slots__ = ("field", "values")

    def __init__(self, field: Field, values: Iterable[int]):
        vals = list(values)
        if len(vals) != field.size:
            raise RangeError(f"table length {len(vals)} != field size {field.size}")
        for v in vals:
            if not (0 <= v < field.size):
                raise RangeError(f"table entry {v} out of range")
        self.field = field
        self.values = vals

    @classmethod
    def identity(cls, field: Field) -> "MapTable":
        return cls(field, range(field.size))

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)

    def apply(self, a: FieldElement) -> FieldElement:
        if a.field is not self.field:
            raise LevelMismatch("argument from a different field level")
        return FieldElement(self.field, self.values[a.rank])

    def compose(self, inner: "MapTable") -> "MapTable":
        """self after inner: n -> self[inner[n]]."""
        if inner.field is not self.field:
            raise LevelMismatch("tables over different field levels")
        return MapTable(self.field, _kernels.compose_tables(self.values, inner.values))

    def image(self) -> frozenset[int]:
        return frozenset(self.values)

    @property
    def is_identity(self) -> bool:
        return all(v == n for n, v in enumerate(self.values))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MapTable):
            return NotImplemented
        return self.field is other.field and self.values == other.values

    def __hash__(self):
        return hash((id(self.field), tuple(self.values)))

    def __repr__(self):
        return f"MapTable({self.values} over {self.field!r})"


def evaluate(f: Poly, a: FieldElement) -> FieldElement:
    return f.evaluate(a)


def reduce_mod_qx(f: Poly) -> Poly:
    return f.reduced()


def compose(f: Poly, g: Poly) -> Poly:
    return f.compose(g)


def tabulate(f: Poly) -> MapTable:
    return f.tabulate()


def interpolate(table: MapTable) -> Poly:
    """The unique reduced polynomial inducing the table."""
    f = table.field
    coeffs = _kernels.interpolate(table.values, f.exp, f.log, f.zech, f.neg_one)
    return Poly(f, coeffs)
