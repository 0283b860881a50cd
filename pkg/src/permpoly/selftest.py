"""Condensed self-verification sweep behind the `selftest` CLI verb.

Each check is a fast, seeded version of one of the package's invariants; a
failure here indicates a broken build, not bad input.
"""

from __future__ import annotations

import random

from . import _kernels
from ._kernels import pure as _pure_kernels
from .families import (CyclotomicParams, LinearizedFamilyParams, TraceFamilyParams,
                       cpp_check, cyclotomic_check, cyclotomic_inverse,
                       linearized_build, linearized_check, linearized_inverse,
                       trace_build, trace_check, trace_inverse)
from .fields import field_spec, prime_field, tower
from .linearized import context
from .local_method import Recombinator, assemble_inverse, verify_legs, verify_recombinator
from .local_method import DiagramLeg
from .oracle import brute_inverse, is_permutation
from .polyring import MapTable, Poly, interpolate


def _random_pp(field, rng) -> MapTable:
    vals = list(range(field.size))
    rng.shuffle(vals)
    return MapTable(field, vals)


def _field_laws(field, rng, samples=400) -> bool:
    n = field.size
    for _ in range(samples):
        a, b, c = rng.randrange(n), rng.randrange(n), rng.randrange(n)
        if field.add(a, b) != field.add(b, a):
            return False
        if field.mul(field.mul(a, b), c) != field.mul(a, field.mul(b, c)):
            return False
        if field.mul(a, field.add(b, c)) != field.add(field.mul(a, b), field.mul(a, c)):
            return False
    return all(field.pow(a, n - 1) == 1 for a in range(1, n))


def _roundtrip(field, rng, count=20) -> bool:
    for _ in range(count):
        f = Poly(field, [rng.randrange(field.size) for _ in range(rng.randrange(1, field.size + 3))])
        if interpolate(f.tabulate()) != f.reduced():
            return False
    return True


def _composition(field, rng, count=10) -> bool:
    for _ in range(count):
        f = Poly(field, [rng.randrange(field.size) for _ in range(rng.randrange(1, 8))])
        g = Poly(field, [rng.randrange(field.size) for _ in range(rng.randrange(1, 8))])
        left = f.compose(g).tabulate()
        if left != f.tabulate().compose(g.tabulate()):
            return False
    return True


def _oracle_roundtrip(field, rng, count=10) -> bool:
    for _ in range(count):
        t = _random_pp(field, rng)
        u = brute_inverse(t)
        if not (t.compose(u).is_identity and u.compose(t).is_identity):
            return False
    return True


def _degenerate_witness(field, rng, count=5) -> bool:
    for _ in range(count):
        t = _random_pp(field, rng)
        inv = brute_inverse(t)
        leg = DiagramLeg(psi=inv, phi=MapTable.identity(field),
                         codomain=frozenset(range(field.size)))
        rec = Recombinator(1, lambda y: y)
        if not (verify_legs(t, [leg]) and verify_recombinator(rec, [leg.phi])):
            return False
        if assemble_inverse(rec, [leg.psi]) != inv:
            return False
    return True


def _kernel_agreement(field, rng) -> bool:
    coeffs = [rng.randrange(field.size) for _ in range(field.size)]
    args = (field.exp, field.log, field.zech)
    tab_a = _kernels.tabulate_dense(coeffs, *args)
    tab_p = _pure_kernels.tabulate_dense(coeffs, *args)
    if tab_a != tab_p:
        return False
    return (_kernels.interpolate(tab_a, *args, field.neg_one)
            == _pure_kernels.interpolate(tab_p, *args, field.neg_one))


def run() -> list[tuple[str, bool]]:
    rng = random.Random(20240917)
    F3, F5, F7 = prime_field(3), prime_field(5), prime_field(7)
    F25 = field_spec("5^2:1,1,1").field
    F49 = field_spec("7^2:1,0,1").field
    F9t = tower(F3, 2)
    T25 = tower(F5, 2)

    results: list[tuple[str, bool]] = []

    def check(name, fn):
        try:
            ok = bool(fn())
        except Exception:
            ok = False
        results.append((name, ok))

    check("field_laws_gf25", lambda: _field_laws(F25, rng))
    check("zech_matches_structural_gf49",
          lambda: all(F49.add(a, b) == F49._sadd(a, b)
                      for a, b in ((rng.randrange(49), rng.randrange(49)) for _ in range(400))))
    check("interpolation_roundtrip_gf9", lambda: _roundtrip(F9t, rng))
    check("composition_soundness_gf25", lambda: _composition(F25, rng))
    check("oracle_roundtrip_gf7", lambda: _oracle_roundtrip(F7, rng))
    check("degenerate_witness_gf9", lambda: _degenerate_witness(F9t, rng))

    def cyc():
        p = CyclotomicParams(F7, r=1, ell=2, h=Poly(F7, (3, 1)))
        return (cyclotomic_check(p).is_pp
                and cyclotomic_inverse(p).tabulate() == brute_inverse(p.poly.tabulate()))
    check("cyclotomic_q7", cyc)

    def lin():
        lp = LinearizedFamilyParams(context(T25), Poly.x(F5), u=(1,), m=(1,))
        f = linearized_build(lp)
        ok = linearized_check(lp).is_pp and is_permutation(f.tabulate())
        ok = ok and linearized_inverse(lp).tabulate() == brute_inverse(f.tabulate())
        return ok and cpp_check(lp).is_pp
    check("linearized_q5_d2", lin)

    def tra():
        tp = TraceFamilyParams(F9t, Poly.x(F3))
        f = trace_build(tp)
        return (trace_check(tp).is_pp
                and trace_inverse(tp).tabulate() == brute_inverse(f.tabulate()))
    check("trace_q3_n2", tra)

    check("kernel_backends_agree_gf25", lambda: _kernel_agreement(F25, rng))
    return results
