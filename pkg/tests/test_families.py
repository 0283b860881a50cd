import math

import pytest

from conftest import make_rng
from permpoly.errors import (NoBezout, NotAPermutation,
                             PreconditionFailed, RangeError)
from permpoly.families import (CyclotomicParams, LinearizedFamilyParams,
                               TraceFamilyParams, TwistParams, bezout, cpp_check,
                               cyclotomic_check, cyclotomic_inverse, cyclotomic_legs,
                               linearized_build, linearized_check, linearized_inverse,
                               linearized_legs, trace_build, trace_check,
                               trace_inverse, trace_legs, twist_inverse, twist_map,
                               _trace_inverse_shifted)
from permpoly.fields import prime_field, tower
from permpoly.linearized import context
from permpoly.local_method import assemble_inverse, verify_legs, verify_recombinator
from permpoly.oracle import brute_inverse, is_permutation
from permpoly.polyring import Poly

F3 = prime_field(3)
F5 = prime_field(5)
F7 = prime_field(7)
T9 = tower(F3, 2)
T25 = tower(F5, 2)


def test_bezout_examples():
    assert bezout(3, 4) == (1, -1)
    assert bezout(1, 3) == (0, 1)
    with pytest.raises(NoBezout):
        bezout(2, 4)


def test_bezout_normalization_property():
    rng = make_rng(41)
    checked = 0
    while checked < 200:
        r, s = rng.randrange(1, 60), rng.randrange(1, 60)
        if math.gcd(r, s) != 1:
            continue
        a, b = bezout(r, s)
        assert a * s + b * r == 1
        if r > 1:
            assert 0 <= a < r
        checked += 1


# -- cyclotomic --------------------------------------------------------------

def test_cyclotomic_worked_example_q7():
    p = CyclotomicParams(F7, r=1, ell=2, h=Poly(F7, (3, 1)))
    # the subgroup map: 1 -> 4^3 = 1, 6 -> 6 * 2^3 = 48 = 6
    assert p.g_map == {1: 1, 6: 6}
    rep = cyclotomic_check(p)
    assert rep.holds("gcd_rs") and rep.holds("g_permutes_mu") and rep.is_pp
    ft = p.poly.tabulate()
    assert is_permutation(ft)
    inv = cyclotomic_inverse(p)
    assert ft[1] == 4 and inv.tabulate()[4] == 1
    assert inv.tabulate() == brute_inverse(ft)


def test_cyclotomic_collapse_q7():
    p = CyclotomicParams(F7, r=3, ell=3, h=Poly(F7, (1,)))
    rep = cyclotomic_check(p)
    assert rep.holds("gcd_rs")
    assert not rep.holds("g_permutes_mu")     # 1, 2, 4 all cube to 1
    assert not is_permutation(p.poly.tabulate())
    with pytest.raises(NotAPermutation):
        cyclotomic_inverse(p)


def test_cyclotomic_gcd_violation():
    p = CyclotomicParams(F5, r=2, ell=2, h=Poly(F5, (1,)))
    assert not cyclotomic_check(p).holds("gcd_rs")
    assert not is_permutation(p.poly.tabulate())


def test_cyclotomic_monomial_case():
    # h = 1: f = x^r with inverse x^(r^-1 mod q-1)
    p = CyclotomicParams(F7, r=5, ell=2, h=Poly(F7, (1,)))
    inv = cyclotomic_inverse(p)
    assert inv == Poly.from_terms(F7, {pow(5, -1, 6): 1})
    ident = CyclotomicParams(F7, r=1, ell=2, h=Poly(F7, (1,)))
    assert cyclotomic_inverse(ident) == Poly.x(F7)


def test_cyclotomic_subgroup_inverse_extension():
    # the polynomial extension of the inverted subgroup map matches the map on
    # the subgroup and is zero everywhere else
    p = CyclotomicParams(F7, r=1, ell=3, h=Poly.from_terms(F7, {2: 1}))
    assert cyclotomic_check(p).is_pp
    from permpoly.families import _cyclotomic_ginv
    ginv, ginv_poly = _cyclotomic_ginv(p)
    for y in range(7):
        expect = ginv[y] if y in p.subgroup else 0
        assert ginv_poly.eval_rank(y) == expect


def test_cyclotomic_legs_assemble():
    p = CyclotomicParams(F7, r=1, ell=2, h=Poly(F7, (3, 1)))
    legs, rec = cyclotomic_legs(p)
    ft = p.poly.tabulate()
    assert verify_legs(ft, legs)
    assert verify_recombinator(rec, [leg.phi for leg in legs])
    assert assemble_inverse(rec, [leg.psi for leg in legs]) == brute_inverse(ft)


def test_cyclotomic_param_validation():
    with pytest.raises(RangeError):
        CyclotomicParams(F7, r=0, ell=2, h=Poly(F7, (1,)))
    with pytest.raises(RangeError):
        CyclotomicParams(F7, r=1, ell=4, h=Poly(F7, (1,)))


# -- twist -------------------------------------------------------------------

def test_twist_constant_factor_degenerates_to_f1():
    f1 = {x: F5.pow(x, 3) for x in range(1, 5)}
    lam = {x: 1 for x in range(1, 5)}
    p = TwistParams(F5, f1=f1, lam=lam, lam_bar=lam, g={1: 1}, h={1: 1})
    inv = twist_inverse(p)
    f1inv = {v: x for x, v in f1.items()}
    assert inv == f1inv


def test_twist_scaled_cube():
    f1 = {x: F5.pow(x, 3) for x in range(1, 5)}
    lam = {x: 1 for x in range(1, 5)}
    p = TwistParams(F5, f1=f1, lam=lam, lam_bar=lam, g={1: 1}, h={1: 2})
    fm = twist_map(p)
    inv = twist_inverse(p)
    for x in range(1, 5):
        assert fm[x] == F5.mul(2, F5.pow(x, 3))
        assert inv[fm[x]] == x
        assert inv[x] == F5.pow(F5.div(x, 2), 3)


def test_twist_reproduces_cyclotomic_inverse():
    p = CyclotomicParams(F7, r=1, ell=2, h=Poly(F7, (3, 1)))
    lam = {x: F7.pow(x, 3) for x in range(1, 7)}
    tw = TwistParams(F7, f1={x: x for x in range(1, 7)}, lam=lam, lam_bar=lam,
                     g=dict(p.g_map), h={y: F7.add(y, 3) for y in p.subgroup})
    inv = twist_inverse(tw)
    cyc = cyclotomic_inverse(p).tabulate()
    assert all(inv[a] == cyc[a] for a in range(1, 7))


def test_twist_precondition_names():
    f1 = {x: x for x in range(1, 5)}
    lam = {x: 1 for x in range(1, 5)}
    with pytest.raises(PreconditionFailed) as err:
        twist_inverse(TwistParams(F5, f1=f1, lam=lam, lam_bar=lam, g={1: 1}, h={1: 0}))
    assert err.value.condition == "h_nonzero"
    squash = {x: 1 for x in range(1, 5)}
    with pytest.raises(PreconditionFailed) as err:
        twist_inverse(TwistParams(F5, f1=squash, lam=lam, lam_bar=lam, g={1: 1}, h={1: 1}))
    assert err.value.condition == "f1_bijective"
    with pytest.raises(PreconditionFailed) as err:
        twist_inverse(TwistParams(F5, f1=f1, lam=lam, lam_bar=lam, g={1: 2}, h={1: 1}))
    assert err.value.condition == "commutes"


# -- linearized ---------------------------------------------------------------

def test_linearized_worked_example_q5_d2():
    ctx = context(T25)
    p = LinearizedFamilyParams(ctx, Poly.x(F5), u=(1,), m=(1,))
    f = linearized_build(p)
    assert f == Poly.from_terms(T25, {5: 2})           # both projectors sum to 2x^5
    rep = linearized_check(p)
    assert rep.is_pp and is_permutation(f.tabulate())
    inv = linearized_inverse(p)
    assert inv == Poly.from_terms(T25, {5: 3})
    assert inv.tabulate() == brute_inverse(f.tabulate())


def test_linearized_single_projector_term():
    ctx = context(T25)
    p = LinearizedFamilyParams(ctx, Poly.x(F5), u=(0,), m=(1,))
    assert linearized_build(p) == Poly.from_terms(T25, {5: 1, 1: 1})
    assert not linearized_check(p).holds("u_nonzero")
    assert not is_permutation(linearized_build(p).tabulate())
    zero = LinearizedFamilyParams(ctx, Poly(F5), u=(0,), m=(1,))
    assert linearized_build(zero).is_zero


def test_linearized_incomplete_residues():
    ctx = context(T25)
    p = LinearizedFamilyParams(ctx, Poly.x(F5), u=(1,), m=(2,))
    assert not linearized_check(p).holds("complete_residue")
    assert not is_permutation(linearized_build(p).tabulate())


def test_linearized_linear_map_instance():
    # all exponents 1 and g = x keeps f base-linear; inverse matches brute force
    ctx = context(T25)
    for u1 in (2, 3, 4):
        p = LinearizedFamilyParams(ctx, Poly.x(F5), u=(u1,), m=(1,))
        if not linearized_check(p).is_pp:
            continue
        f = linearized_build(p)
        assert linearized_inverse(p).tabulate() == brute_inverse(f.tabulate())


def test_linearized_exponent_inverse_is_least_positive():
    ctx = context(T25)
    p = LinearizedFamilyParams(ctx, Poly.x(F5), u=(1,), m=(3,))
    # m*r = 1 mod d(q-1) = 8 and r is the least positive solution
    from permpoly.families import _linearized_inverse_pieces
    (i, j, r, c), = _linearized_inverse_pieces(p)
    assert (3 * r) % 8 == 1 and 0 < r < 8


def test_linearized_legs_assemble():
    ctx = context(T25)
    p = LinearizedFamilyParams(ctx, Poly(F5, (1, 2)), u=(3,), m=(3,))
    rep = linearized_check(p)
    f = linearized_build(p)
    assert rep.is_pp == is_permutation(f.tabulate())
    if rep.is_pp:
        legs, rec = linearized_legs(p)
        assert verify_legs(f.tabulate(), legs)
        assert verify_recombinator(rec, [leg.phi for leg in legs])
        assert assemble_inverse(rec, [leg.psi for leg in legs]) == \
            linearized_inverse(p).tabulate()


def test_linearized_param_validation():
    ctx = context(T25)
    with pytest.raises(RangeError):
        LinearizedFamilyParams(ctx, Poly.x(F5), u=(1, 1), m=(1,))
    with pytest.raises(RangeError):
        LinearizedFamilyParams(ctx, Poly.x(F5), u=(1,), m=(0,))


# -- complete permutation (cpp) ----------------------------------------------

def test_cpp_worked_example():
    ctx = context(T25)
    p = LinearizedFamilyParams(ctx, Poly.x(F5), u=(1,), m=(1,))
    rep = cpp_check(p)
    assert rep.is_pp
    f = linearized_build(p)
    assert is_permutation(f.tabulate())
    assert is_permutation((f + Poly.x(T25)).tabulate())


def test_cpp_product_vanishes():
    ctx = context(T25)
    p = LinearizedFamilyParams(ctx, Poly.x(F5), u=(3,), m=(1,))
    rep = cpp_check(p)
    assert not rep.holds("product_nonzero")   # 1 + 2*3*4 = 25 = 0
    f = linearized_build(p)
    assert is_permutation(f.tabulate())
    assert not is_permutation((f + Poly.x(T25)).tabulate())


def test_cpp_dg_plus_x_failure():
    # g = 2x is a permutation but d*g + x = 5x vanishes
    ctx = context(T25)
    p = LinearizedFamilyParams(ctx, Poly(F5, (0, 2)), u=(1,), m=(1,))
    rep = cpp_check(p)
    assert rep.holds("g_pp") and not rep.holds("dg_plus_x_pp")
    f = linearized_build(p)
    assert is_permutation(f.tabulate())
    assert not is_permutation((f + Poly.x(T25)).tabulate())


def test_cpp_u0_folds_into_g():
    ctx = context(T25)
    p = LinearizedFamilyParams(ctx, Poly.x(F5), u=(1,), m=(1,))
    rep = cpp_check(p, u0=2)
    folded = LinearizedFamilyParams(ctx, Poly(F5, (0, 3)), u=(1,), m=(1,))
    assert rep.conditions == cpp_check(folded).conditions


def test_cpp_requires_unit_exponents():
    ctx = context(T25)
    p = LinearizedFamilyParams(ctx, Poly.x(F5), u=(1,), m=(3,))
    with pytest.raises(PreconditionFailed):
        cpp_check(p)


# -- trace --------------------------------------------------------------------

def test_trace_worked_example_q3_n2():
    p = TraceFamilyParams(T9, Poly.x(F3))
    f = trace_build(p)
    assert f == Poly.from_terms(T9, {3: 2})
    rep = trace_check(p)
    assert rep.is_pp and "formula_corrected" in rep.notes
    inv = trace_inverse(p)
    assert inv == Poly.from_terms(T9, {3: 2})
    assert inv.tabulate() == brute_inverse(f.tabulate())


def test_trace_reconstruction_identity_exhaustive():
    # sum i*(x^q - x)^(q^(i-1)) equals n*x - Tr(x) pointwise on the towers
    # behind the trace family; checked before trusting the closed form
    for base, n in ((F3, 2), (F5, 2)):
        top = tower(base, n)
        q = base.size
        head = Poly.from_terms(top, {q: 1, 1: top.neg_one})
        acc = Poly(top)
        for i in range(1, n + 1):
            acc = acc + head.pow_mod(q ** (i - 1)).scale(top.from_int(i))
        for a in range(top.size):
            tr = top.rel_trace_rank(a)
            expect = top.sub(top.mul(top.from_int(n), a), tr)
            assert acc.eval_rank(a) == expect


def test_trace_shifted_exponents_fail_to_invert():
    p = TraceFamilyParams(T9, Poly.x(F3))
    f = trace_build(p)
    bad = _trace_inverse_shifted(p, 1)
    assert bad == Poly.from_terms(T9, {1: 2})          # collapses to 2x
    assert not f.compose(bad).same_map(Poly.x(T9))


def test_trace_gcd_failure():
    T27 = tower(F3, 3)
    p = TraceFamilyParams(T27, Poly.x(F3))
    rep = trace_check(p)
    assert not rep.holds("gcd_nq")
    assert not is_permutation(trace_build(p).tabulate())


def test_trace_non_pp_g():
    p = TraceFamilyParams(T25, Poly.from_terms(F5, {2: 1}))
    rep = trace_check(p)
    assert not rep.holds("g_pp")
    assert not is_permutation(trace_build(p).tabulate())
    constant = TraceFamilyParams(T25, Poly(F5, (3,)))
    assert not trace_check(constant).is_pp
    assert not is_permutation(trace_build(constant).tabulate())
    zero_g = TraceFamilyParams(T25, Poly(F5))
    assert not is_permutation(trace_build(zero_g).tabulate())


def test_trace_q5_scaled_g():
    p = TraceFamilyParams(T25, Poly(F5, (0, 2)))
    f = trace_build(p)
    assert trace_check(p).is_pp
    assert trace_inverse(p).tabulate() == brute_inverse(f.tabulate())


def test_trace_legs_assemble():
    p = TraceFamilyParams(T9, Poly(F3, (1, 2)))
    f = trace_build(p)
    assert trace_check(p).is_pp
    legs, rec = trace_legs(p)
    assert verify_legs(f.tabulate(), legs)
    assert verify_recombinator(rec, [leg.phi for leg in legs])
    assert assemble_inverse(rec, [leg.psi for leg in legs]) == \
        trace_inverse(p).tabulate()


def test_trace_requires_proper_tower():
    with pytest.raises(RangeError):
        TraceFamilyParams(F5, Poly.x(F5))


def test_report_dict_shape():
    p = CyclotomicParams(F7, r=1, ell=2, h=Poly(F7, (3, 1)))
    d = cyclotomic_check(p).to_dict()
    assert d == {"conditions": [{"name": "gcd_rs", "holds": True},
                                {"name": "g_permutes_mu", "holds": True}],
                 "is_pp": True, "notes": []}
