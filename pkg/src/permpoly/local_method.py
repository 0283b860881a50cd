"""Bijectivity criteria for maps of a finite field and assembly of
compositional inverses from commuting diagram legs.

Everything operates on maps-as-tables: surjectivity and fiber checks are then
exact and total, and the sets S involved are always materialized as image
sets (or as the domain of an explicitly supplied association), never
represented independently.  All checks are pure and deterministic; when a
fiber violation is reported, it is the fiber of the first colliding element
in rank order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .errors import ArityError, DiagramMismatch, LevelMismatch, PreconditionFailed
from .fields import FieldElement
from .oracle import is_permutation
from .polyring import MapTable


@dataclass(frozen=True)
class DiagramLeg:
    """One commuting triangle leg: psi composed with f equals phi, with both
    maps landing in the stated codomain subset."""

    psi: MapTable
    phi: MapTable
    codomain: frozenset[int]

    def __post_init__(self):
        if self.psi.field is not self.phi.field:
            raise LevelMismatch("leg maps over different field levels")
        if not self.psi.image() <= self.codomain:
            raise DiagramMismatch("psi image escapes the leg codomain")
        if not self.phi.image() <= self.codomain:
            raise DiagramMismatch("phi image escapes the leg codomain")


class Recombinator:
    """A t-ary field-valued operation used to recombine diagram legs.

    Programmatic use may pass any callable on field elements; the optional
    term list ((coefficient rank, exponent vector) pairs, meaning
    sum c * prod y_i**e_i) is the only serializable form.
    """

    __slots__ = ("arity", "_fn", "terms", "field")

    def __init__(self, arity: int, fn: Callable[..., FieldElement],
                 terms=None, field=None):
        self.arity = arity
        self._fn = fn
        self.terms = terms
        self.field = field

    def __call__(self, *args: FieldElement) -> FieldElement:
        if len(args) != self.arity:
            raise ArityError(f"expected {self.arity} arguments, got {len(args)}")
        return self._fn(*args)

    @classmethod
    def from_terms(cls, field, arity: int, terms) -> "Recombinator":
        terms = tuple((int(c), tuple(int(e) for e in es)) for c, es in terms)
        for _, es in terms:
            if len(es) != arity:
                raise ArityError("exponent vector length must equal the arity")

        def fn(*args: FieldElement) -> FieldElement:
            acc = 0
            for c, es in terms:
                term = c
                for a, e in zip(args, es):
                    if e:
                        term = field.mul(term, field.pow(a.rank, e))
                acc = field.add(acc, term)
            return FieldElement(field, acc)

        return cls(arity, fn, terms=terms, field=field)

    def to_json_terms(self) -> list:
        if self.terms is None:
            raise ValueError("recombinator has no serializable term form")
        return [[c, list(es)] for c, es in self.terms]


@dataclass(frozen=True)
class LocalVerdict:
    bijective: bool
    surjective: bool
    failing_fiber: frozenset[int] | None


def check_local_criterion(f: MapTable, psi: MapTable) -> LocalVerdict:
    """Bijectivity test of f through a surjection psi onto its own image S:
    phi = psi after f must be surjective onto S and f must be injective on
    every phi-fiber."""
    if f.field is not psi.field:
        raise LevelMismatch("f and psi over different field levels")
    phi = [psi.values[v] for v in f.values]
    surjective = set(phi) >= psi.image()
    seen: dict[int, dict[int, int]] = {}
    failing = None
    for a, s in enumerate(phi):
        fa = f.values[a]
        fiber_seen = seen.setdefault(s, {})
        if fa in fiber_seen:
            failing = frozenset(x for x, sx in enumerate(phi) if sx == s)
            break
        fiber_seen[fa] = a
    return LocalVerdict(bijective=surjective and failing is None,
                        surjective=surjective, failing_fiber=failing)


@dataclass(frozen=True)
class AgwVerdict:
    commutes: bool
    h_bijective: bool
    fibers_injective: bool
    f_bijective: bool
    lambda_surjective: bool


def check_agw(f: MapTable, lam: MapTable, lam_bar: MapTable,
              h: Mapping[int, int], mode: str = "lemma") -> AgwVerdict:
    """Commuting-square bijectivity test: lam_bar after f = h after lam.

    mode "lemma": S is the image of lam and the bijectivity of h is a
    reported conjunct.  mode "corollary": S is the domain of the supplied
    (required bijective) h, and the surjectivity of lam onto S is the derived
    conjunct instead.  Non-commuting inputs are not an instance at all and
    raise DiagramMismatch.
    """
    if f.field is not lam.field or f.field is not lam_bar.field:
        raise LevelMismatch("maps over different field levels")
    s_image = set(lam.values)
    s_bar = set(lam_bar.values)
    if mode == "lemma":
        s_set = s_image
        missing = s_set - set(h)
        if missing:
            raise DiagramMismatch(f"h undefined on {sorted(missing)[0]}")
        if len(s_set) != len(s_bar):
            raise DiagramMismatch("S and S-bar have different sizes")
    elif mode == "corollary":
        s_set = set(h)
        if not s_image <= s_set:
            raise DiagramMismatch("lam image escapes the domain of h")
        if len(set(h.values())) != len(s_set):
            raise PreconditionFailed("h_bijective", "h must be bijective in corollary mode")
        # the hypothesis set: lam_bar must be onto the h image
        if s_bar != set(h.values()):
            raise PreconditionFailed("lambda_bar_surjective",
                                     "lam_bar is not onto the image of h")
    else:
        raise ValueError(f"unknown mode {mode!r}")

    for a in range(f.field.size):
        if lam_bar.values[f.values[a]] != h[lam.values[a]]:
            raise DiagramMismatch(f"square does not commute at rank {a}")

    h_values = [h[s] for s in s_set]
    h_bijective = len(set(h_values)) == len(s_set) and set(h_values) <= s_bar

    fibers_injective = True
    seen: dict[int, set[int]] = {}
    for a, s in enumerate(lam.values):
        fa = f.values[a]
        bucket = seen.setdefault(s, set())
        if fa in bucket:
            fibers_injective = False
            break
        bucket.add(fa)

    return AgwVerdict(
        commutes=True,
        h_bijective=h_bijective,
        fibers_injective=fibers_injective,
        f_bijective=is_permutation(f),
        lambda_surjective=s_image == s_set,
    )


def verify_legs(f: MapTable, legs: Sequence[DiagramLeg]) -> bool:
    """True iff psi(f(a)) = phi(a) for every element and every leg."""
    for leg in legs:
        if leg.psi.field is not f.field:
            raise LevelMismatch("leg over a different field level")
        fv = f.values
        psi, phi = leg.psi.values, leg.phi.values
        if any(psi[fv[a]] != phi[a] for a in range(f.field.size)):
            return False
    return True


def verify_recombinator(rec: Recombinator, phis: Sequence[MapTable]) -> bool:
    """True iff rec(phi_1(a), ..., phi_t(a)) = a for every field element."""
    if len(phis) != rec.arity:
        raise ArityError(f"recombinator arity {rec.arity}, got {len(phis)} maps")
    field = phis[0].field
    for a in range(field.size):
        args = tuple(FieldElement(field, t.values[a]) for t in phis)
        if rec(*args).rank != a:
            return False
    return True


def assemble_inverse(rec: Recombinator, psis: Sequence[MapTable]) -> MapTable:
    """Pointwise table a -> rec(psi_1(a), ..., psi_t(a)).

    When verify_legs and verify_recombinator both pass for a bijective f and
    the result inverts f against the oracle, the commuting-diagram hypothesis
    held; the caller owns those checks.
    """
    if len(psis) != rec.arity:
        raise ArityError(f"recombinator arity {rec.arity}, got {len(psis)} maps")
    field = psis[0].field
    out = []
    for a in range(field.size):
        args = tuple(FieldElement(field, t.values[a]) for t in psis)
        out.append(rec(*args).rank)
    return MapTable(field, out)
