import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import strategies as st

from dioph_embed import Polynomial, VarContext


def random_poly(rng: random.Random, ctx: VarContext, max_deg: int, nterms: int, coeff_bits: int = 64):
    terms = {}
    n = len(ctx)
    for _ in range(nterms):
        budget = rng.randint(0, max_deg)
        m = [0] * n
        for _ in range(budget):
            m[rng.randrange(n)] += 1
        c = rng.randint(-(2 ** (coeff_bits - 1)), 2 ** (coeff_bits - 1))
        terms[tuple(m)] = terms.get(tuple(m), 0) + c
    return Polynomial(ctx, terms)


@st.composite
def polys(draw, ctx: VarContext, max_deg=8, max_terms=6, rational=False):
    n = len(ctx)
    k = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(k):
        m = draw(st.lists(st.integers(0, max_deg), min_size=n, max_size=n))
        while sum(m) > max_deg:
            i = m.index(max(m))
            m[i] -= 1
        if rational:
            c = Fraction(draw(st.integers(-50, 50)), draw(st.integers(1, 12)))
        else:
            c = draw(st.integers(-(2**63), 2**63))
        terms[tuple(m)] = c
    return Polynomial(ctx, terms)


def to_sympy(p: Polynomial, symbols=None):
    syms = symbols or sympy.symbols(list(p.ctx.names))
    if not isinstance(syms, (list, tuple)):
        syms = [syms]
    expr = sympy.Integer(0)
    for m, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, m):
            term *= s**e
        expr += term
    return sympy.Poly(expr, *syms) if syms else expr


def from_sympy(expr, ctx: VarContext) -> Polynomial:
    syms = sympy.symbols(list(ctx.names))
    poly = sympy.Poly(sympy.expand(expr), *syms)
    return Polynomial(ctx, {m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})


@pytest.fixture
def rng():
    return random.Random(20240917)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
