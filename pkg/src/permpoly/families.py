"""Five permutation-polynomial families: constructors, necessary-and-
sufficient condition checkers, and closed-form compositional inverses, each
cross-validated against the brute-force oracle before being returned.

Families
  cyclotomic   f = x**r * h(x**s) on F_q, s = (q-1)/ell
  twist        f = f1 * h(lam) on the punctured field F_q^* (table form only)
  linearized   f = g(P_0) + sum u_t * P_t**m_t on a tower F_{q^d}
  cpp          the linearized family with all exponents 1, checked for
               complete permutation (f and f + x both bijective)
  trace        f = x**q - x + g(Tr) on a tower F_{q^n}

Inverse formulas take g**(-1) from the oracle (never symbolically) and every
returned inverse is verified to compose to the identity; a failed
verification raises InternalError, which the CLI maps to exit code 3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import (InternalError, LevelMismatch, NoBezout, NotAPermutation,
                     PreconditionFailed, RangeError)
from .fields import Field, FieldElement
from .linearized import LinearizedContext
from .local_method import DiagramLeg, Recombinator
from .oracle import brute_inverse, is_permutation
from .polyring import MapTable, Poly, interpolate


@dataclass(frozen=True)
class VerificationReport:
    """Named condition checks for one family instance."""

    conditions: tuple[tuple[str, bool], ...]
    notes: tuple[str, ...] = ()

    @property
    def is_pp(self) -> bool:
        return all(holds for _, holds in self.conditions)

    def holds(self, name: str) -> bool:
        for n, h in self.conditions:
            if n == name:
                return h
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "conditions": [{"name": n, "holds": h} for n, h in self.conditions],
            "is_pp": self.is_pp,
            "notes": list(self.notes),
        }


def bezout(r: int, s: int) -> tuple[int, int]:
    """The pair (a, b) with a*s + b*r = 1, normalized to 0 <= a < r for r > 1
    (and to (0, 1) for r = 1); b may be negative."""
    if math.gcd(r, s) != 1:
        raise NoBezout(f"gcd({r}, {s}) != 1")
    if r == 1:
        return 0, 1
    old_r, cur = s, r
    old_a, a = 1, 0
    while cur:
        qt = old_r // cur
        old_r, cur = cur, old_r - qt * cur
        old_a, a = a, old_a - qt * a
    # old_a * s = 1 (mod r); shift a into [0, r) keeping a*s + b*r = 1
    av = old_a % r
    bv = (1 - av * s) // r
    assert av * s + bv * r == 1
    return av, bv


# ---------------------------------------------------------------------------
# cyclotomic family: f = x^r h(x^s)
# ---------------------------------------------------------------------------

class CyclotomicParams:
    """Parameters of f = x**r * h(x**s) with s = (q-1)/ell, plus the induced
    map g(y) = y**r * h(y)**s on the subgroup of ell-th roots of unity."""

    __slots__ = ("field", "r", "ell", "h", "s", "subgroup", "g_map")

    def __init__(self, field: Field, r: int, ell: int, h: Poly):
        if r < 1:
            raise RangeError("r must be >= 1")
        if ell < 1 or (field.size - 1) % ell != 0:
            raise RangeError(f"ell must divide {field.size - 1}")
        if h.field is not field:
            raise LevelMismatch("h must live on the same field")
        self.field = field
        self.r = r
        self.ell = ell
        self.h = h
        self.s = (field.size - 1) // ell
        step = (field.size - 1) // ell
        self.subgroup = frozenset(field.exp[(step * j) % (field.size - 1)]
                                  for j in range(ell))
        self.g_map = {y: field.mul(field.pow(y, r), field.pow(h.eval_rank(y), self.s))
                      for y in self.subgroup}

    @property
    def poly(self) -> Poly:
        """f = x**r * h(x**s) as a polynomial (unreduced)."""
        return Poly.from_terms(self.field,
                               {self.r + self.s * i: c
                                for i, c in enumerate(self.h.coeffs) if c})


def cyclotomic_check(params: CyclotomicParams) -> VerificationReport:
    gcd_rs = math.gcd(params.r, params.s) == 1
    permutes = set(params.g_map.values()) == set(params.subgroup)
    return VerificationReport((("gcd_rs", gcd_rs), ("g_permutes_mu", permutes)))


def _cyclotomic_ginv(params: CyclotomicParams) -> tuple[dict[int, int], Poly]:
    """Inverse of the subgroup map, as a dict and as the polynomial extension
    that is zero off the subgroup."""
    ginv = {v: y for y, v in params.g_map.items()}
    table = [0] * params.field.size
    for v, y in ginv.items():
        table[v] = y
    return ginv, interpolate(MapTable(params.field, table))


def cyclotomic_inverse(params: CyclotomicParams) -> Poly:
    """Closed-form compositional inverse
    f**(-1) = ginv(x**s)**a * x**b * h(ginv(x**s))**(-b), a*s + b*r = 1,
    with ginv the polynomial extension of the inverted subgroup map that is
    zero off the subgroup, evaluated as a map on the punctured field with
    0 -> 0 and then interpolated to reduced form.
    """
    if not cyclotomic_check(params).is_pp:
        raise NotAPermutation("cyclotomic conditions fail")
    f = params.field
    _, ginv_poly = _cyclotomic_ginv(params)
    a, b = bezout(params.r, params.s)
    values = [0] * f.size
    for x in range(1, f.size):
        v = ginv_poly.eval_rank(f.pow(x, params.s))
        hv = params.h.eval_rank(v)
        values[x] = f.mul(f.mul(f.pow(v, a), f.pow(x, b)), f.pow(hv, -b))
    inv_poly = interpolate(MapTable(f, values))
    _verify_inverse(params.poly.tabulate(), MapTable(f, values))
    return inv_poly


def cyclotomic_legs(params: CyclotomicParams) -> tuple[list[DiagramLeg], Recombinator]:
    """Diagram legs (psi_1 = ginv(x**s), phi_1 = x**s) and
    (psi_2 = x, phi_2 = f), with recombinator y1**a * (y2 / h(y1))**b."""
    f = params.field
    ginv, _ = _cyclotomic_ginv(params)
    a, b = bezout(params.r, params.s)
    q = f.size
    phi1 = MapTable(f, [f.pow(x, params.s) for x in range(q)])
    psi1 = MapTable(f, [ginv[f.pow(x, params.s)] if x else 0 for x in range(q)])
    s1 = params.subgroup | {0}
    leg1 = DiagramLeg(psi=psi1, phi=phi1, codomain=frozenset(s1))
    leg2 = DiagramLeg(psi=MapTable.identity(f), phi=params.poly.tabulate(),
                      codomain=frozenset(range(q)))

    def fn(y1: FieldElement, y2: FieldElement) -> FieldElement:
        if y2.rank == 0:
            return FieldElement(f, 0)
        hv = params.h.eval_rank(y1.rank)
        out = f.mul(f.pow(y1.rank, a), f.pow(f.div(y2.rank, hv), b))
        return FieldElement(f, out)

    return [leg1, leg2], Recombinator(2, fn)


# ---------------------------------------------------------------------------
# multiplicative twist on the punctured field: f = f1 * h(lam)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TwistParams:
    """Twist of a bijection f1 of F_q^* by a factor h read through a
    surjection lam; all maps are dicts over nonzero ranks (no zero extension).

    g must make the square commute: lam_bar(f(x)) = g(lam(x)) with
    f = f1 * h(lam)."""

    field: Field
    f1: Mapping[int, int]
    lam: Mapping[int, int]
    lam_bar: Mapping[int, int]
    g: Mapping[int, int]
    h: Mapping[int, int]


def twist_map(params: TwistParams) -> dict[int, int]:
    """The twisted map f = f1 * h(lam) on nonzero ranks."""
    f = params.field
    carrier = range(1, f.size)
    for name, m in (("f1", params.f1), ("lam", params.lam), ("lam_bar", params.lam_bar)):
        missing = [x for x in carrier if x not in m]
        if missing:
            raise PreconditionFailed("maps_total", f"{name} undefined at rank {missing[0]}")
    out = {}
    for x in carrier:
        s = params.lam[x]
        if s not in params.h:
            raise PreconditionFailed("h_total", f"h undefined at {s}")
        if params.h[s] == 0:
            raise PreconditionFailed("h_nonzero", f"h({s}) = 0")
        out[x] = f.mul(params.f1[x], params.h[s])
    return out


def twist_inverse(params: TwistParams) -> dict[int, int]:
    """Inverse of the twisted map: a -> f1**(-1)(a / h(g**(-1)(lam_bar(a)))).

    Checks every stated precondition by name before computing, and verifies
    the result inverts f on the carrier."""
    f = params.field
    carrier = list(range(1, f.size))
    fmap = twist_map(params)
    for x in carrier:
        s = params.lam[x]
        if s not in params.g:
            raise PreconditionFailed("commutes", f"g undefined at {s}")
        if params.lam_bar[fmap[x]] != params.g[s]:
            raise PreconditionFailed("commutes", f"square fails at rank {x}")
    if len(set(params.g.values())) != len(params.g):
        raise PreconditionFailed("g_bijective", "g is not injective")
    if sorted(params.f1.values()) != carrier:
        raise PreconditionFailed("f1_bijective", "f1 is not a bijection of the carrier")
    if sorted(fmap.values()) != carrier:
        raise PreconditionFailed("f_bijective", "f is not a bijection of the carrier")
    ginv = {v: s for s, v in params.g.items()}
    f1inv = {v: x for x, v in params.f1.items()}
    out = {}
    for a in carrier:
        w = ginv.get(params.lam_bar[a])
        if w is None:
            raise InternalError(f"lam_bar({a}) not in the image of g")
        if w not in params.h or params.h[w] == 0:
            raise PreconditionFailed("h_nonzero", f"h({w}) unusable on the inverse path")
        out[a] = f1inv[f.div(a, params.h[w])]
    for x in carrier:
        if out[fmap[x]] != x:
            raise InternalError(f"twist inverse fails at rank {x}")
    return out


# ---------------------------------------------------------------------------
# linearized family: f = g(P_0) + sum u_t P_t^{m_t} on F_{q^d}
# ---------------------------------------------------------------------------

class LinearizedFamilyParams:
    """Parameters (g, u_1..u_{d-1}, m_1..m_{d-1}) over a projector context."""

    __slots__ = ("ctx", "g", "u", "m")

    def __init__(self, ctx: LinearizedContext, g: Poly,
                 u: Sequence[int], m: Sequence[int]):
        d = ctx.degree
        if g.field is not ctx.base:
            raise LevelMismatch("g must live on the base field")
        if len(u) != d - 1 or len(m) != d - 1:
            raise RangeError(f"need {d - 1} twist coefficients and exponents")
        if any(not (0 <= c < ctx.base.size) for c in u):
            raise RangeError("u entries must be base-field ranks")
        if any(mi < 1 for mi in m):
            raise RangeError("exponents must be positive")
        self.ctx = ctx
        self.g = g
        self.u = tuple(int(c) for c in u)
        self.m = tuple(int(mi) for mi in m)


def linearized_build(params: LinearizedFamilyParams) -> Poly:
    """f = g(P_0) + sum u_t * P_t**m_t, reduced over the tower top."""
    ctx = params.ctx
    top = ctx.field
    f = Poly(top, params.g.coeffs).compose(ctx.projector(0))
    for t in range(1, ctx.degree):
        ut = params.u[t - 1]
        if ut:
            f = f + ctx.projector(t).pow_mod(params.m[t - 1]).scale(ut)
    return f.reduced()


def linearized_check(params: LinearizedFamilyParams) -> VerificationReport:
    ctx = params.ctx
    d, base = ctx.degree, ctx.base
    residues = {0} | {(i * params.m[i - 1]) % d for i in range(1, d)}
    complete = len(residues) == d
    u_nonzero = all(params.u)
    prod_m = math.prod(params.m)
    gcd_m = math.gcd(prod_m, base.size - 1) == 1
    g_pp = is_permutation(params.g.tabulate())
    return VerificationReport((
        ("complete_residue", complete),
        ("u_nonzero", u_nonzero),
        ("gcd_m", gcd_m),
        ("g_pp", g_pp),
    ))


def _linearized_inverse_pieces(params: LinearizedFamilyParams):
    """Shared scalars of the closed-form inverse: per-leg target index j,
    exponent r_i with m_i * r_i = 1 (mod d(q-1)), and scale
    (d * u_i * w**(-j))**(-r_i)."""
    ctx = params.ctx
    d, base = ctx.degree, ctx.base
    modulus = d * (base.size - 1)
    pieces = []
    for i in range(1, d):
        m_i = params.m[i - 1]
        j = (i * m_i) % d
        r_i = pow(m_i, -1, modulus)
        c = base.mul(base.mul(base.from_int(d), params.u[i - 1]), ctx.root_power(-j))
        pieces.append((i, j, r_i, base.pow(c, -r_i)))
    return pieces


def linearized_inverse(params: LinearizedFamilyParams) -> Poly:
    """Closed-form inverse
    f**(-1) = (1/d) * (ginv(P_0 / d) + sum w**i (d u_i w**(-j))**(-r_i) P_j**(r_i)),
    with ginv taken from the oracle over the base field."""
    if not linearized_check(params).is_pp:
        raise NotAPermutation("linearized conditions fail")
    ctx = params.ctx
    top, base, d = ctx.field, ctx.base, ctx.degree
    inv_d = base.inv(base.from_int(d))
    ginv = interpolate(brute_inverse(params.g.tabulate()))
    acc = Poly(top, ginv.coeffs).compose(ctx.projector(0).scale(inv_d))
    for i, j, r_i, c in _linearized_inverse_pieces(params):
        coeff = base.mul(ctx.root_power(i), c)
        acc = acc + ctx.projector(j).pow_mod(r_i).scale(coeff)
    result = acc.scale(inv_d).reduced()
    _verify_inverse(linearized_build(params).tabulate(), result.tabulate())
    return result


def linearized_legs(params: LinearizedFamilyParams) -> tuple[list[DiagramLeg], Recombinator]:
    """One leg per projector: phi_i = P_i, psi_0 = ginv(P_0 / d),
    psi_i = (d u_i w**(-j))**(-r_i) * P_j**(r_i); recombinator
    (1/d) * sum w**i * y_i in serializable term form."""
    from . import _kernels

    ctx = params.ctx
    top, base, d = ctx.field, ctx.base, ctx.degree
    inv_d = base.inv(base.from_int(d))
    gmap = brute_inverse(params.g.tabulate())
    t0 = ctx.projector_table(0)
    psi0 = MapTable(top, [gmap.values[base.mul(v, inv_d)] for v in t0.values])
    legs = [DiagramLeg(psi=psi0, phi=t0, codomain=frozenset(range(base.size)))]
    for i, j, r_i, c in _linearized_inverse_pieces(params):
        tj = ctx.projector_table(j).values
        powed = _kernels.pointwise_pow(tj, r_i, top.exp, top.log)
        psi = MapTable(top, _kernels.scale_table(c, powed, top.exp, top.log))
        legs.append(DiagramLeg(psi=psi, phi=ctx.projector_table(i),
                               codomain=ctx.image_line(i).elements))
    terms = [(base.mul(inv_d, ctx.root_power(i)),
              tuple(1 if k == i else 0 for k in range(d))) for i in range(d)]
    return legs, Recombinator.from_terms(top, d, terms)


def cpp_check(params: LinearizedFamilyParams, u0: int = 0) -> VerificationReport:
    """Complete-permutation conditions for f = g(P_0) + sum u_i P_i with all
    exponents 1; u0 (the optional P_0 twist coefficient) is folded into g."""
    if any(mi != 1 for mi in params.m):
        raise PreconditionFailed("m_all_one", "cpp form requires all exponents 1")
    ctx = params.ctx
    base, d = ctx.base, ctx.degree
    g2 = params.g + Poly.from_terms(base, {1: u0}) if u0 else params.g
    d_rank = base.from_int(d)
    product_nonzero = True
    for i in range(1, d):
        ui = params.u[i - 1]
        factor = base.add(1, base.mul(base.mul(d_rank, ui), ctx.root_power(-i)))
        if ui == 0 or factor == 0:
            product_nonzero = False
            break
    g_pp = is_permutation(g2.tabulate())
    dgx = g2.scale(d_rank) + Poly.x(base)
    dg_plus_x_pp = is_permutation(dgx.tabulate())
    return VerificationReport((
        ("product_nonzero", product_nonzero),
        ("g_pp", g_pp),
        ("dg_plus_x_pp", dg_plus_x_pp),
    ))


# ---------------------------------------------------------------------------
# trace family: f = x^q - x + g(Tr) on F_{q^n}
# ---------------------------------------------------------------------------

class TraceFamilyParams:
    """Parameters (tower F_{q^n} with n > 1, g over F_q)."""

    __slots__ = ("field", "g")

    def __init__(self, top: Field, g: Poly):
        if top.subfield is None or not top.is_top:
            raise RangeError("trace family requires a tower top F_{q^n}")
        if top.degree < 2:
            raise RangeError("tower degree must exceed 1")
        if g.field is not top.subfield:
            raise LevelMismatch("g must live on the base field")
        self.field = top
        self.g = g

    @property
    def n(self) -> int:
        return self.field.degree


def _trace_poly(top: Field) -> Poly:
    q = top.subfield.size
    return Poly.from_terms(top, {q ** i: 1 for i in range(top.degree)})


def trace_build(params: TraceFamilyParams) -> Poly:
    """f = x**q - x + g(Tr), reduced."""
    top = params.field
    q = top.subfield.size
    head = Poly.from_terms(top, {q: 1, 1: top.neg_one})
    return (head + Poly(top, params.g.coeffs).compose(_trace_poly(top))).reduced()


def trace_check(params: TraceFamilyParams) -> VerificationReport:
    base = params.field.subfield
    gcd_nq = math.gcd(params.n, base.size) == 1
    g_pp = is_permutation(params.g.tabulate())
    return VerificationReport((("gcd_nq", gcd_nq), ("g_pp", g_pp)),
                              notes=("formula_corrected",))


def _trace_inverse_shifted(params: TraceFamilyParams, shift: int) -> Poly:
    """Closed-form inverse with reconstruction exponents q**(i-1+shift).

    shift = 0 satisfies sum i*(x**q - x)**(q**(i-1)) = n*x - Tr(x) and is the
    implemented form; shift = 1 is a regression hook for the mis-indexed
    variant, which does not invert.
    """
    top = params.field
    base = top.subfield
    n, q = params.n, base.size
    inv_n = base.inv(base.from_int(n))
    ginv = interpolate(brute_inverse(params.g.tabulate()))
    tr_over_n = _trace_poly(top).scale(inv_n)
    acc = Poly(top, ginv.coeffs).compose(tr_over_n)
    u = Poly.x(top) - tr_over_n
    for i in range(1, n + 1):
        ci = top.from_int(i)
        if ci:
            acc = acc + u.pow_mod(q ** (i - 1 + shift)).scale(ci)
    return acc.scale(inv_n).reduced()


def trace_inverse(params: TraceFamilyParams) -> Poly:
    """f**(-1) = (1/n) * (ginv(Tr/n) + sum i * (x - Tr/n)**(q**(i-1))),
    verified against the brute-force inverse before returning."""
    if not trace_check(params).is_pp:
        raise NotAPermutation("trace-family conditions fail")
    result = _trace_inverse_shifted(params, 0)
    _verify_inverse(trace_build(params).tabulate(), result.tabulate())
    return result


def trace_legs(params: TraceFamilyParams) -> tuple[list[DiagramLeg], Recombinator]:
    """Legs (psi_1 = ginv(Tr/n), phi_1 = Tr) and (psi_2 = x, phi_2 = f);
    recombinator (1/n) * (y1 + sum i*(y2 - g(y1))**(q**(i-1)))."""
    top = params.field
    base = top.subfield
    n, q = params.n, base.size
    inv_n = base.inv(base.from_int(n))
    gmap = brute_inverse(params.g.tabulate())
    traces = [top.rel_trace_rank(a) for a in range(top.size)]
    phi1 = MapTable(top, traces)
    psi1 = MapTable(top, [gmap.values[base.mul(t, inv_n)] for t in traces])
    legs = [
        DiagramLeg(psi=psi1, phi=phi1, codomain=frozenset(range(q))),
        DiagramLeg(psi=MapTable.identity(top), phi=trace_build(params).tabulate(),
                   codomain=frozenset(range(top.size))),
    ]
    g_top = Poly(top, params.g.coeffs)
    inv_n_el = FieldElement(top, inv_n)

    def fn(y1: FieldElement, y2: FieldElement) -> FieldElement:
        w = y2 - g_top.evaluate(y1)
        acc = y1
        for i in range(1, n + 1):
            acc = acc + w ** (q ** (i - 1)) * i
        return acc * inv_n_el

    return legs, Recombinator(2, fn)


def _verify_inverse(f_table: MapTable, inv_table: MapTable) -> None:
    """Both compositions must be the identity; a mismatch is a bug, reported
    with the first failing element rank."""
    fv, iv = f_table.values, inv_table.values
    for a in range(len(fv)):
        if iv[fv[a]] != a or fv[iv[a]] != a:
            raise InternalError(f"closed form fails to invert at rank {a}")
