import random

import pytest
import sympy

from dioph_embed import VarContext, exact_div, parse_polynomial, substitute
from dioph_embed.divfam import (
    DegenerateConstants,
    SizeLimitExceeded,
    build_families,
    build_w_phat,
    shift_decompose,
)

from .conftest import random_poly, to_sympy

X1 = VarContext(["x1"])
X12 = VarContext(["x1", "x2"])


def P(text, ctx):
    return parse_polynomial(text, ctx)


def test_shift_of_a_variable_is_u():
    ctx = VarContext(["x1", "x2"])
    Q = P("x1*x2 - 4", ctx)
    R = shift_decompose(P("x1", ctx), Q, "u")
    assert R == P("u", R.ctx)


def test_shift_of_constant_is_zero():
    R = shift_decompose(P("5", X1), P("x1^2", X1), "u")
    assert R.is_zero()


def test_shift_square():
    R = shift_decompose(P("x1^2", X1), P("x1", X1), "u")
    assert R == P("2*u*x1 + u^2*x1", VarContext(["x1", "u"]))


def test_shift_with_zero_q():
    assert shift_decompose(P("x1^3 + 1", X1), P("0", X1), "u").is_zero()


def test_shift_requires_fresh_variable():
    with pytest.raises(ValueError):
        shift_decompose(P("x1", X1), P("x1", X1), "x1")


def test_shift_identity_random(rng):
    ctx = VarContext(["x1", "x2", "x3"])
    for _ in range(30):
        Pp = random_poly(rng, ctx, 4, 4, coeff_bits=16)
        Q = random_poly(rng, ctx, 3, 3, coeff_bits=16)
        R = shift_decompose(Pp, Q, "u")
        big = R.ctx
        u = big.var("u")
        shifted = substitute(Pp.embed(big), {x: big.var(x) + u * Q.embed(big) for x in ctx.names}, big)
        assert (shifted - Pp - Q * R).is_zero()


def test_base_case_constant_one():
    fam = build_families([1])
    assert fam.H == (P("x1", X1),)
    assert fam.P == P("x1 + 1", X1)


def test_base_case_three():
    fam = build_families([3])
    assert fam.H[0] == P("x1", X1)
    assert fam.P == P("x1 + 3", X1)


def test_one_inductive_step_by_hand():
    fam = build_families([3, 6])
    assert fam.H[1] == P("1 + x1*x2", X12)
    assert fam.P == P("x1 + 3 + x1*(x1-3)*x2", X12)
    assert exact_div(fam.P - 6, fam.H[1]) == P("x1 - 3", X12)
    assert fam.P - 6 == P("(x1-3)*(1+x1*x2)", X12)


def test_w_phat_small():
    f1 = build_w_phat(1)
    assert (f1.H[0], f1.P) == (P("x1", X1), P("x1 + 3", X1))
    f2 = build_w_phat(2)
    assert f2.H[1] == P("1 + x1*x2", X12)
    assert f2.P == P("x1 + 3 + x1*(x1-3)*x2", X12)


def _check_family(fam):
    syms = sympy.symbols(list(fam.varnames))
    P_sym = to_sympy(fam.P, syms)
    for k, (c, H) in enumerate(zip(fam.constants, fam.H), start=1):
        exact_div(fam.P - c, H)
        # independent check through sympy's division
        _, r = sympy.div(P_sym - sympy.Rational(c.numerator, c.denominator), to_sympy(H, syms))
        assert r.is_zero
        for later in fam.varnames[k:]:
            assert H.degree_in(later) == 0
    last = fam.varnames[-1]
    assert fam.H[-1].degree_in(last) > 0
    assert fam.P.degree_in(last) > 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_w_phat_certificates(n):
    _check_family(build_w_phat(n))


def test_random_constants():
    rng = random.Random(11)
    for _ in range(4):
        m = rng.randint(1, 3)
        cs = rng.sample(range(-20, 21), m)
        _check_family(build_families(cs))


def test_rational_constants():
    from fractions import Fraction

    _check_family(build_families([Fraction(1, 2), Fraction(-3, 4)]))


def test_duplicate_constants_rejected():
    with pytest.raises(DegenerateConstants):
        build_families([3, 3])


def test_size_cap():
    with pytest.raises(SizeLimitExceeded):
        build_w_phat(4)


def test_term_counts_nondecreasing():
    counts = build_w_phat(3).term_counts
    assert all(a <= b for a, b in zip(counts, counts[1:]))


def test_json_export():
    doc = build_w_phat(2).to_json()
    assert doc == {"constants": [3, 6], "H": ["x1", "x1*x2 + 1"], "P": "x1^2*x2 - 3*x1*x2 + x1 + 3"}
