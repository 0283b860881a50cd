import pytest

from permpoly.errors import NoSuchRoot, RangeError
from permpoly.fields import prime_field, tower
from permpoly.linearized import LinearizedContext, context
from permpoly.polyring import Poly

F5 = prime_field(5)
F7 = prime_field(7)
T25 = tower(F5, 2)
T49 = tower(F7, 2)
T343 = tower(F7, 3)


def test_context_requires_divisibility():
    with pytest.raises(NoSuchRoot):
        context(tower(F5, 3))   # 3 does not divide 5 - 1
    with pytest.raises(RangeError):
        LinearizedContext(F5)               # not a tower top


def test_projector_coefficients_d2():
    ctx = context(T25)
    p0, p1 = ctx.projector(0), ctx.projector(1)
    assert p0.coeffs[5] == 1 and p0.coeffs[1] == 1            # x^5 + x
    assert p1.coeffs[5] == 1 and p1.coeffs[1] == F5.size - 1  # x^5 - x
    with pytest.raises(RangeError):
        ctx.projector(2)


def test_projector_coefficients_d3_q7():
    ctx = context(T343)
    assert ctx.root.rank == 2
    p1 = ctx.projector(1)
    assert p1.coeffs[49] == 1 and p1.coeffs[7] == 2 and p1.coeffs[1] == 4


def test_image_lines_q5_d2():
    ctx = context(T25)
    line0 = ctx.image_line(0)
    assert line0.elements == frozenset(range(5))   # embedded base field
    line1 = ctx.image_line(1)
    assert len(line1.elements) == 5                # enumerated size q
    # structure: {0} plus the representative scaled by every base unit
    rep = line1.representative
    assert line1.elements == {0} | {T25.mul(rep, c) for c in range(1, 5)}
    assert rep == min(v for v in line1.elements if v)


def test_image_line_eigen_property():
    for ctx in (context(T25), context(T343)):
        for i in range(ctx.degree):
            line = ctx.image_line(i)
            wi = ctx.root_power(i)
            for v in line.elements:
                if v:
                    assert ctx.field.frobenius_rank(v) == ctx.field.mul(wi, v)


def test_eigen_clause_exhaustive_q5_d2():
    ctx = context(T25)
    top = ctx.field
    t1 = ctx.projector_table(1)
    w = ctx.root_power(1)
    for a in range(25):
        v = t1.values[a]
        assert top.pow(v, 5) == top.mul(w, v)
    assert ctx.eigen_check(1)


def test_compose_power_clause_d2_manual_cross_check():
    # i = j = m = 1: applying projector 1 to its own values scales by d*w^(-1)
    ctx = context(T25)
    top = ctx.field
    p1 = ctx.projector(1)
    c = top.mul(top.from_int(2), top.inv(ctx.root_power(1)))
    for a in range(25):
        v = p1.eval_rank(a)
        assert p1.eval_rank(v) == top.mul(c, v)
    assert ctx.compose_power_check(1, 1, 1)


def test_annihilation_clause():
    ctx = context(T25)
    for g in (Poly.x(F5), Poly(F5, (1, 1)), Poly.from_terms(F5, {2: 1}), Poly(F5, (3,))):
        assert ctx.annihilates_check(1, g)
    with pytest.raises(RangeError):
        ctx.annihilates_check(0, Poly.x(F5))


def test_identity_checks_verdict_shape():
    ctx = context(T25)
    v = ctx.identity_checks(1, 1, 1, Poly.x(F5))
    assert v == {"eigen": True, "compose_power": True, "annihilate": True}
    v0 = ctx.identity_checks(0, 0, 2, Poly.x(F5))
    assert v0["annihilate"] is None and v0["eigen"] and v0["compose_power"]


@pytest.mark.parametrize("top", [T25, T49, T343])
def test_reconstruction_identity(top):
    assert context(top).reconstruction_check()


def test_full_clause_grid_q7_d2():
    ctx = context(T49)
    gs = [Poly.x(F7), Poly(F7, (1, 1)), Poly.from_terms(F7, {2: 1})]
    for i in range(2):
        assert ctx.eigen_check(i)
        for j in range(2):
            for m in range(1, 5):
                assert ctx.compose_power_check(i, j, m)
    for g in gs:
        assert ctx.annihilates_check(1, g)
